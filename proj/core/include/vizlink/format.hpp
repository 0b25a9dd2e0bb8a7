#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <type_traits>

#include "vizlink/vector_types.hpp"

namespace vizlink {

enum class ComponentKind : std::uint8_t { SignedInt, UnsignedInt, Float };

/// Element layout of a raw buffer: `components` scalars of `bit_width` bits.
struct FormatDescription {
  ComponentKind kind = ComponentKind::Float;
  std::uint8_t bit_width = 32;
  std::uint8_t components = 1;

  std::size_t bytesPerElement() const noexcept {
    return static_cast<std::size_t>(components) * bit_width / 8;
  }

  template <class T>
  static FormatDescription make();

  friend bool operator==(const FormatDescription&, const FormatDescription&) = default;
};

/// Validating constructor. Throws InvalidFormat for combinations such as an
/// 8-bit float or a component count outside 1..4.
FormatDescription makeFormat(ComponentKind kind, int bit_width, int components);

std::string toString(const FormatDescription& format);

namespace detail {

template <class T>
struct FormatTraits;

template <class Scalar, int N>
struct ScalarFormat {
  static constexpr ComponentKind kind = std::is_floating_point_v<Scalar> ? ComponentKind::Float
                                        : std::is_signed_v<Scalar>       ? ComponentKind::SignedInt
                                                                         : ComponentKind::UnsignedInt;
  static constexpr int bits = sizeof(Scalar) * 8;
  static constexpr int components = N;
};

template <> struct FormatTraits<float> : ScalarFormat<float, 1> {};
template <> struct FormatTraits<double> : ScalarFormat<double, 1> {};
template <> struct FormatTraits<std::int8_t> : ScalarFormat<std::int8_t, 1> {};
template <> struct FormatTraits<std::uint8_t> : ScalarFormat<std::uint8_t, 1> {};
template <> struct FormatTraits<std::int16_t> : ScalarFormat<std::int16_t, 1> {};
template <> struct FormatTraits<std::uint16_t> : ScalarFormat<std::uint16_t, 1> {};
template <> struct FormatTraits<std::int32_t> : ScalarFormat<std::int32_t, 1> {};
template <> struct FormatTraits<std::uint32_t> : ScalarFormat<std::uint32_t, 1> {};
template <> struct FormatTraits<std::int64_t> : ScalarFormat<std::int64_t, 1> {};
template <> struct FormatTraits<std::uint64_t> : ScalarFormat<std::uint64_t, 1> {};
template <> struct FormatTraits<char> : ScalarFormat<std::int8_t, 1> {};
template <> struct FormatTraits<float2> : ScalarFormat<float, 2> {};
template <> struct FormatTraits<float3> : ScalarFormat<float, 3> {};
template <> struct FormatTraits<float4> : ScalarFormat<float, 4> {};
template <> struct FormatTraits<double2> : ScalarFormat<double, 2> {};
template <> struct FormatTraits<double3> : ScalarFormat<double, 3> {};
template <> struct FormatTraits<double4> : ScalarFormat<double, 4> {};
template <> struct FormatTraits<int2> : ScalarFormat<std::int32_t, 2> {};
template <> struct FormatTraits<int3> : ScalarFormat<std::int32_t, 3> {};
template <> struct FormatTraits<int4> : ScalarFormat<std::int32_t, 4> {};
template <> struct FormatTraits<uint2> : ScalarFormat<std::uint32_t, 2> {};
template <> struct FormatTraits<uint3> : ScalarFormat<std::uint32_t, 3> {};
template <> struct FormatTraits<uint4> : ScalarFormat<std::uint32_t, 4> {};

}  // namespace detail

template <class T>
FormatDescription FormatDescription::make() {
  using Traits = detail::FormatTraits<T>;
  return FormatDescription{Traits::kind, static_cast<std::uint8_t>(Traits::bits),
                           static_cast<std::uint8_t>(Traits::components)};
}

}  // namespace vizlink

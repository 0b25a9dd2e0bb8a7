#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>

#include "vizlink/pipeline.hpp"

namespace vizlink::detail {

using Vec4Fn = float4 (*)(const std::byte* base, std::size_t element);

template <class Scalar, int N>
float4 readVec4(const std::byte* base, std::size_t element) {
  const Scalar* p = reinterpret_cast<const Scalar*>(base) + element * N;
  float4 out{0, 0, 0, 1};
  out.x = static_cast<float>(p[0]);
  if constexpr (N > 1) out.y = static_cast<float>(p[1]);
  if constexpr (N > 2) out.z = static_cast<float>(p[2]);
  if constexpr (N > 3) out.w = static_cast<float>(p[3]);
  return out;
}

/// Converting reader for the float formats views accept; nullptr otherwise.
inline Vec4Fn selectVec4Reader(const FormatDescription& f) {
  if (f.kind != ComponentKind::Float) return nullptr;
  if (f.bit_width == 32) {
    switch (f.components) {
      case 1: return &readVec4<float, 1>;
      case 2: return &readVec4<float, 2>;
      case 3: return &readVec4<float, 3>;
      case 4: return &readVec4<float, 4>;
      default: return nullptr;
    }
  }
  if (f.bit_width == 64) {
    switch (f.components) {
      case 1: return &readVec4<double, 1>;
      case 2: return &readVec4<double, 2>;
      case 3: return &readVec4<double, 3>;
      case 4: return &readVec4<double, 4>;
      default: return nullptr;
    }
  }
  return nullptr;
}

inline std::uint32_t readIndex(const std::byte* base, std::size_t index_size, std::size_t i) {
  switch (index_size) {
    case 1: return static_cast<std::uint32_t>(reinterpret_cast<const std::uint8_t*>(base)[i]);
    case 2: return static_cast<std::uint32_t>(reinterpret_cast<const std::uint16_t*>(base)[i]);
    default: return reinterpret_cast<const std::uint32_t*>(base)[i];
  }
}

/// Reads element `e` of a bound property through its optional indirection.
/// Elements whose index is out of range report false and are skipped.
class PropertyReader {
 public:
  PropertyReader() = default;
  explicit PropertyReader(const PropertyBinding& binding)
      : binding_(binding), fn_(selectVec4Reader(binding.format)) {}

  bool present() const { return binding_.present() && fn_ != nullptr; }

  bool read(std::size_t e, float4& out) const {
    std::size_t source_index = e;
    if (binding_.indexed()) {
      if (e >= binding_.index_count) return false;
      source_index = readIndex(binding_.index_data, binding_.index_size, e);
    }
    if (source_index >= binding_.size) return false;
    out = fn_(binding_.data, source_index);
    return true;
  }

 private:
  PropertyBinding binding_;
  Vec4Fn fn_ = nullptr;
};

}  // namespace vizlink::detail

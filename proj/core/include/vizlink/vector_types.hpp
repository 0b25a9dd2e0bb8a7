#pragma once

#include <cstdint>

// Plain vector aggregates with the memory layout of the usual device vector
// types, so simulation buffers can be described without conversion.
namespace vizlink {

struct float2 { float x, y; };
struct float3 { float x, y, z; };
struct float4 { float x, y, z, w; };
struct double2 { double x, y; };
struct double3 { double x, y, z; };
struct double4 { double x, y, z, w; };
struct int2 { std::int32_t x, y; };
struct int3 { std::int32_t x, y, z; };
struct int4 { std::int32_t x, y, z, w; };
struct uint2 { std::uint32_t x, y; };
struct uint3 { std::uint32_t x, y, z; };
struct uint4 { std::uint32_t x, y, z, w; };

static_assert(sizeof(float3) == 12);
static_assert(sizeof(float4) == 16);
static_assert(sizeof(double2) == 16);
static_assert(sizeof(double3) == 24);

constexpr bool operator==(const float2& a, const float2& b) { return a.x == b.x && a.y == b.y; }
constexpr bool operator==(const float3& a, const float3& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z;
}
constexpr bool operator==(const float4& a, const float4& b) {
  return a.x == b.x && a.y == b.y && a.z == b.z && a.w == b.w;
}

struct Extent3 {
  std::uint32_t x = 1, y = 1, z = 1;
};

}  // namespace vizlink

#pragma once

#include <array>
#include <cstddef>
#include <numbers>

#include "vizlink/vector_types.hpp"

namespace vizlink {

/// Column-major 4x4 matrix.
struct Mat4 {
  std::array<float, 16> m{};

  static Mat4 identity();
  float& at(int row, int col) { return m[static_cast<std::size_t>(col * 4 + row)]; }
  float at(int row, int col) const { return m[static_cast<std::size_t>(col * 4 + row)]; }
  float4 operator*(const float4& v) const;
  Mat4 operator*(const Mat4& rhs) const;
  /// Throws InvalidValue when the matrix is singular.
  Mat4 inverse() const;
};

struct BoundingBox {
  float3 lo{0, 0, 0};
  float3 hi{0, 0, 0};
};

/// Orbit camera: the eye sits at `distance` from `target` along the direction
/// given by yaw (about +y) and pitch (elevation). yaw = pitch = 0 looks down -z.
struct Camera {
  static constexpr float kPitchLimit = std::numbers::pi_v<float> / 2 - 1e-3f;

  float3 target{0, 0, 0};
  float distance = 1;
  float yaw = 0;
  float pitch = 0;
  float fov_y = std::numbers::pi_v<float> / 4;
  float near_plane = 0.1f;
  float far_plane = 100;

  float3 eye() const;
  Mat4 view() const;
  Mat4 projection(float aspect) const;
  Mat4 viewProjection(float aspect) const { return projection(aspect) * view(); }

  /// Radians per pixel of drag and log-distance per scroll unit.
  static constexpr float kDragGain = 0.005f;
  static constexpr float kScrollGain = 0.1f;

  void drag(float dx, float dy);
  void scroll(float dz);
  void clampPitch();

  /// Camera framing `box` entirely; 3D content gets an oblique angle.
  static Camera fit(const BoundingBox& box, bool three_dimensional, float aspect);
};

}  // namespace vizlink

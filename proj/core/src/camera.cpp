#include "vizlink/camera.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "vizlink/error.hpp"

namespace vizlink {

namespace {

using EMat = Eigen::Matrix4f;

EMat toEigen(const Mat4& a) { return Eigen::Map<const EMat>(a.m.data()); }

Mat4 fromEigen(const EMat& e) {
  Mat4 out;
  Eigen::Map<EMat>(out.m.data()) = e;
  return out;
}

Eigen::Vector3f vec(const float3& v) { return {v.x, v.y, v.z}; }

}  // namespace

Mat4 Mat4::identity() { return fromEigen(EMat::Identity()); }

float4 Mat4::operator*(const float4& v) const {
  float4 r{};
  r.x = at(0, 0) * v.x + at(0, 1) * v.y + at(0, 2) * v.z + at(0, 3) * v.w;
  r.y = at(1, 0) * v.x + at(1, 1) * v.y + at(1, 2) * v.z + at(1, 3) * v.w;
  r.z = at(2, 0) * v.x + at(2, 1) * v.y + at(2, 2) * v.z + at(2, 3) * v.w;
  r.w = at(3, 0) * v.x + at(3, 1) * v.y + at(3, 2) * v.z + at(3, 3) * v.w;
  return r;
}

Mat4 Mat4::operator*(const Mat4& rhs) const { return fromEigen(toEigen(*this) * toEigen(rhs)); }

Mat4 Mat4::inverse() const {
  // perspective matrices with a close near plane lose too much in float
  Eigen::Matrix4d inv;
  bool invertible = false;
  toEigen(*this).cast<double>().computeInverseWithCheck(inv, invertible, 1e-12);
  if (!invertible) fail(Errc::InvalidValue, "matrix is not invertible");
  return fromEigen(inv.cast<float>());
}

float3 Camera::eye() const {
  const float cp = std::cos(pitch);
  return float3{target.x + distance * cp * std::sin(yaw), target.y + distance * std::sin(pitch),
                target.z + distance * cp * std::cos(yaw)};
}

Mat4 Camera::view() const {
  const Eigen::Vector3f e = vec(eye());
  const Eigen::Vector3f t = vec(target);
  const Eigen::Vector3f f = (t - e).normalized();
  // pitch is clamped away from the poles so +y is never parallel to f
  const Eigen::Vector3f s = f.cross(Eigen::Vector3f::UnitY()).normalized();
  const Eigen::Vector3f u = s.cross(f);
  EMat m = EMat::Identity();
  m.block<1, 3>(0, 0) = s.transpose();
  m.block<1, 3>(1, 0) = u.transpose();
  m.block<1, 3>(2, 0) = -f.transpose();
  m(0, 3) = -s.dot(e);
  m(1, 3) = -u.dot(e);
  m(2, 3) = f.dot(e);
  return fromEigen(m);
}

Mat4 Camera::projection(float aspect) const {
  const float f = 1.0f / std::tan(fov_y / 2);
  EMat p = EMat::Zero();
  p(0, 0) = f / aspect;
  p(1, 1) = f;
  p(2, 2) = (far_plane + near_plane) / (near_plane - far_plane);
  p(2, 3) = 2 * far_plane * near_plane / (near_plane - far_plane);
  p(3, 2) = -1;
  return fromEigen(p);
}

void Camera::clampPitch() { pitch = std::clamp(pitch, -kPitchLimit, kPitchLimit); }

void Camera::drag(float dx, float dy) {
  yaw += kDragGain * dx;
  pitch += kDragGain * dy;
  clampPitch();
}

void Camera::scroll(float dz) { distance *= std::exp(-kScrollGain * dz); }

Camera Camera::fit(const BoundingBox& box, bool three_dimensional, float aspect) {
  Camera cam;
  cam.target = float3{(box.lo.x + box.hi.x) / 2, (box.lo.y + box.hi.y) / 2,
                      (box.lo.z + box.hi.z) / 2};
  const float hx = (box.hi.x - box.lo.x) / 2;
  const float hy = (box.hi.y - box.lo.y) / 2;
  const float hz = (box.hi.z - box.lo.z) / 2;
  float radius = std::sqrt(hx * hx + hy * hy + hz * hz);
  if (!(radius > 0)) radius = 1;
  const float half_fov = cam.fov_y / 2;
  if (three_dimensional) {
    const float fov_min = std::min(half_fov, std::atan(std::tan(half_fov) * aspect));
    cam.distance = radius / std::sin(fov_min) * 1.05f;
    cam.yaw = std::numbers::pi_v<float> / 6;
    cam.pitch = std::numbers::pi_v<float> / 8;
  } else {
    // frame the xy rectangle edge to edge
    const float need = std::max(hy, hx / aspect);
    cam.distance = (need > 0 ? need : radius) / std::tan(half_fov) * 1.02f + hz;
  }
  cam.near_plane = cam.distance * 1e-2f;
  cam.far_plane = cam.distance + radius * 4 + 1;
  return cam;
}

}  // namespace vizlink

#include <cmath>
#include <numbers>

#include <spdlog/spdlog.h>

#include "vizlink/samples/mesh.hpp"

namespace vizlink::samples {

std::vector<float3> computeSmoothNormals(std::span<const float3> vertices,
                                         std::span<const std::uint32_t> triangles) {
  std::vector<double3> sum(vertices.size(), double3{0, 0, 0});
  for (std::size_t t = 0; t + 2 < triangles.size(); t += 3) {
    const std::uint32_t ia = triangles[t], ib = triangles[t + 1], ic = triangles[t + 2];
    const float3 a = vertices[ia], b = vertices[ib], c = vertices[ic];
    const double ux = b.x - a.x, uy = b.y - a.y, uz = b.z - a.z;
    const double vx = c.x - a.x, vy = c.y - a.y, vz = c.z - a.z;
    // unnormalized cross product: twice the face area along the normal
    const double3 n{uy * vz - uz * vy, uz * vx - ux * vz, ux * vy - uy * vx};
    for (std::uint32_t i : {ia, ib, ic}) {
      sum[i].x += n.x;
      sum[i].y += n.y;
      sum[i].z += n.z;
    }
  }
  std::vector<float3> normals(vertices.size());
  std::size_t degenerate = 0;
  for (std::size_t i = 0; i < sum.size(); ++i) {
    const double len = std::sqrt(sum[i].x * sum[i].x + sum[i].y * sum[i].y + sum[i].z * sum[i].z);
    if (len <= 1e-20) {
      normals[i] = float3{0, 0, 1};
      ++degenerate;
      continue;
    }
    normals[i] = float3{static_cast<float>(sum[i].x / len), static_cast<float>(sum[i].y / len),
                        static_cast<float>(sum[i].z / len)};
  }
  if (degenerate > 0) {
    spdlog::warn("{} vertex normal(s) undefined, using (0, 0, 1)", degenerate);
  }
  return normals;
}

void breatheDeform(std::span<const float3> rest, std::span<const float3> normals, float scale,
                   std::span<float3> out) {
  for (std::size_t i = 0; i < rest.size(); ++i) {
    out[i] = float3{rest[i].x + scale * normals[i].x, rest[i].y + scale * normals[i].y,
                    rest[i].z + scale * normals[i].z};
  }
}

void breatheDeform(const Device& device, std::span<const float3> rest,
                   std::span<const float3> normals, float scale, std::span<float3> out) {
  device.dispatchEach(rest.size(), [&](std::size_t i) {
    out[i] = float3{rest[i].x + scale * normals[i].x, rest[i].y + scale * normals[i].y,
                    rest[i].z + scale * normals[i].z};
  });
}

float varyAngle(float& degrees, float amplitude, float step) {
  degrees = std::fmod(degrees + step, 360.0f);
  if (degrees < 0) degrees += 360.0f;
  return amplitude * std::sin(degrees * std::numbers::pi_v<float> / 180.0f);
}

}  // namespace vizlink::samples

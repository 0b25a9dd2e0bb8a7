#include "vizlink/samples/nbody.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vizlink/error.hpp"
#include "vizlink/rng.hpp"

namespace vizlink::samples {

namespace {

constexpr std::uint64_t kInitStream = 64;

inline float3 accelerate(std::span<const float4> read, std::size_t i, float eps2) {
  const float4 pi = read[i];
  float ax = 0, ay = 0, az = 0;
  for (std::size_t j = 0; j < read.size(); ++j) {
    if (j == i) continue;
    const float4 pj = read[j];
    const float dx = pj.x - pi.x, dy = pj.y - pi.y, dz = pj.z - pi.z;
    const float dist2 = dx * dx + dy * dy + dz * dz + eps2;
    const float inv = 1.0f / std::sqrt(dist2);
    const float s = pj.w * inv * inv * inv;
    ax += dx * s;
    ay += dy * s;
    az += dz * s;
  }
  return float3{ax, ay, az};
}

inline void integrateBody(std::span<const float4> read, std::span<float4> write,
                          std::span<float4> vel, std::size_t i, float dt, float damping,
                          float eps2) {
  const float3 a = accelerate(read, i, eps2);
  float4 v = vel[i];
  v.x = (v.x + a.x * dt) * damping;
  v.y = (v.y + a.y * dt) * damping;
  v.z = (v.z + a.z * dt) * damping;
  vel[i] = v;
  const float4 p = read[i];
  write[i] = float4{p.x + v.x * dt, p.y + v.y * dt, p.z + v.z * dt, p.w};
}

}  // namespace

void validateNBodyParams(const NBodyParams& p) {
  if (p.n == 0) fail(Errc::InvalidConfig, "body count must be >= 1");
  if (!(p.dt > 0)) fail(Errc::InvalidConfig, "time step must be > 0");
  if (!(p.damping > 0 && p.damping <= 1)) fail(Errc::InvalidConfig, "damping must lie in (0, 1]");
  if (!(p.softening_squared > 0)) fail(Errc::InvalidConfig, "softening must be > 0");
  if (!(p.mass > 0)) fail(Errc::InvalidConfig, "mass must be > 0");
  if (!(p.radius > 0)) fail(Errc::InvalidConfig, "radius must be > 0");
}

NBodyInit makeNBodyInit(const NBodyParams& p) {
  validateNBodyParams(p);
  NBodyInit init;
  init.positions.resize(p.n);
  init.velocities.resize(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    // uniform in the ball: cube-root radius, uniform direction
    const float r = p.radius * std::cbrt(rng::uniform(p.seed, kInitStream, i, 0));
    const float cos_t = 2 * rng::uniform(p.seed, kInitStream + 1, i, 0) - 1;
    const float phi = 2 * std::numbers::pi_v<float> * rng::uniform(p.seed, kInitStream + 2, i, 0);
    const float sin_t = std::sqrt(std::max(0.0f, 1 - cos_t * cos_t));
    const float x = r * sin_t * std::cos(phi), y = r * sin_t * std::sin(phi), z = r * cos_t;
    init.positions[i] = float4{x, y, z, p.mass};
    init.velocities[i] = float4{-y * 0.2f, x * 0.2f, 0, 0};
  }
  return init;
}

void nbodyIntegrate(std::span<const float4> read, std::span<float4> write,
                    std::span<float4> velocities, float dt, float damping,
                    float softening_squared) {
  for (std::size_t i = 0; i < read.size(); ++i) {
    integrateBody(read, write, velocities, i, dt, damping, softening_squared);
  }
}

void nbodyIntegrate(const Device& device, std::span<const float4> read, std::span<float4> write,
                    std::span<float4> velocities, float dt, float damping,
                    float softening_squared) {
  device.dispatchEach(read.size(), [&](std::size_t i) {
    integrateBody(read, write, velocities, i, dt, damping, softening_squared);
  });
}

float3 nbodyAcceleration(std::span<const float4> positions, std::size_t i, float softening_squared) {
  return accelerate(positions, i, softening_squared);
}

double3 totalMomentum(std::span<const float4> positions, std::span<const float4> velocities) {
  double3 m{0, 0, 0};
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const double w = positions[i].w;
    m.x += w * velocities[i].x;
    m.y += w * velocities[i].y;
    m.z += w * velocities[i].z;
  }
  return m;
}

}  // namespace vizlink::samples

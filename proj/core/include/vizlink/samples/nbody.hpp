#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vizlink/device.hpp"
#include "vizlink/vector_types.hpp"

// All-pairs gravitational N-body with ping-pong position buffers. Positions
// carry the body mass in w.
namespace vizlink::samples {

struct NBodyParams {
  std::size_t n = 4096;
  float dt = 0.016f;
  float damping = 0.995f;
  float softening_squared = 0.01f;  // eps^2
  float mass = 1;
  float radius = 1;  // initial cloud radius
  std::uint64_t seed = 0;
};

/// Throws InvalidConfig.
void validateNBodyParams(const NBodyParams& params);

struct NBodyInit {
  std::vector<float4> positions;   // xyz + mass
  std::vector<float4> velocities;  // xyz, w unused
};

/// Bodies uniform in a ball of the given radius with a small rotational
/// velocity about +z; deterministic in seed.
NBodyInit makeNBodyInit(const NBodyParams& params);

/// One step: a_i = sum_j m_j (p_j - p_i) / (|p_j - p_i|^2 + eps^2)^(3/2),
/// v_i <- (v_i + a_i dt) * damping, write_i <- read_i + v_i dt (mass kept).
/// `read` is never written.
void nbodyIntegrate(std::span<const float4> read, std::span<float4> write,
                    std::span<float4> velocities, float dt, float damping,
                    float softening_squared);
/// Device twin: one work item per body.
void nbodyIntegrate(const Device& device, std::span<const float4> read, std::span<float4> write,
                    std::span<float4> velocities, float dt, float damping,
                    float softening_squared);

/// Acceleration of body i alone, for reference checks.
float3 nbodyAcceleration(std::span<const float4> positions, std::size_t i, float softening_squared);

/// Total momentum sum m_i v_i, accumulated in double.
double3 totalMomentum(std::span<const float4> positions, std::span<const float4> velocities);

}  // namespace vizlink::samples

#include "vizlink/bench/bench.hpp"
#include "vizlink/rng.hpp"

namespace vizlink::bench {

namespace {

// Draw streams: 0..2 place the points, 16..18 move them.
constexpr std::uint64_t kInitStream = 0;
constexpr std::uint64_t kStepStream = 16;

inline float3 initialPosition(std::uint64_t seed, std::size_t i, float extent) {
  return float3{rng::uniform(seed, kInitStream + 0, i, 0) * extent,
                rng::uniform(seed, kInitStream + 1, i, 0) * extent,
                rng::uniform(seed, kInitStream + 2, i, 0) * extent};
}

inline void step(float3& p, std::size_t i, float sigma, std::uint64_t iteration,
                 std::uint64_t seed) {
  p.x += sigma * rng::normal(seed, kStepStream + 0, i, iteration);
  p.y += sigma * rng::normal(seed, kStepStream + 1, i, iteration);
  p.z += sigma * rng::normal(seed, kStepStream + 2, i, iteration);
}

}  // namespace

std::vector<float3> initRandomPositions(std::uint64_t seed, std::size_t n, float extent) {
  std::vector<float3> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = initialPosition(seed, i, extent);
  return out;
}

void initRandomPositions(const Device& device, std::span<float3> out, std::uint64_t seed,
                         float extent) {
  float3* data = out.data();
  device.dispatchEach(out.size(), [=](std::size_t i) { data[i] = initialPosition(seed, i, extent); });
}

void brownianStep(std::span<float3> positions, float sigma, std::uint64_t iteration,
                  std::uint64_t seed) {
  if (!(sigma > 0)) return;
  for (std::size_t i = 0; i < positions.size(); ++i) step(positions[i], i, sigma, iteration, seed);
}

void brownianStep(const Device& device, std::span<float3> positions, float sigma,
                  std::uint64_t iteration, std::uint64_t seed) {
  if (!(sigma > 0)) return;
  float3* data = positions.data();
  device.dispatchEach(positions.size(),
                      [=](std::size_t i) { step(data[i], i, sigma, iteration, seed); });
}

}  // namespace vizlink::bench

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, index, counter), so parallel kernels and their host
// references produce the same values regardless of scheduling.
namespace vizlink::rng {

constexpr std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                             std::uint64_t counter) {
  std::uint64_t x = splitmix(seed);
  x = splitmix(x ^ (stream * 0xD1B54A32D192ED03ull));
  x = splitmix(x ^ (index * 0xAEF17502108EF2D9ull));
  return splitmix(x ^ (counter * 0xDB4F0B9175AE2165ull));
}

/// Uniform in [0, 1) with 24 bits of resolution.
constexpr float uniform(std::uint64_t bits) {
  return static_cast<float>(bits >> 40) * (1.0f / 16777216.0f);
}

/// Uniform in (0, 1], safe as a logarithm argument.
constexpr float uniformOpen(std::uint64_t bits) {
  return static_cast<float>((bits >> 40) + 1) * (1.0f / 16777216.0f);
}

inline float uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                     std::uint64_t counter) {
  return uniform(hash(seed, stream, index, counter));
}

/// Standard normal draw (Box-Muller, cosine branch).
inline float normal(std::uint64_t seed, std::uint64_t stream, std::uint64_t index,
                    std::uint64_t counter) {
  const std::uint64_t h = hash(seed, stream, index, counter);
  const float u1 = uniformOpen(h);
  const float u2 = uniform(splitmix(h));
  return std::sqrt(-2.0f * std::log(u1)) * std::cos(2.0f * std::numbers::pi_v<float> * u2);
}

}  // namespace vizlink::rng

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vizlink/marker_math.hpp"

// Per-shape and per-style specializations shared by the host reference
// (marker_math.cpp) and the marker pipelines (raster.cpp).
namespace vizlink::detail {

template <MarkerShape Shape>
inline float shapeDistance(float x, float y, float radius) {
  if constexpr (Shape == MarkerShape::Disc) {
    return std::sqrt(x * x + y * y) - radius;
  } else if constexpr (Shape == MarkerShape::Diamond) {
    return (std::abs(x) + std::abs(y) - radius) * (1.0f / std::numbers::sqrt2_v<float>);
  } else {
    // head (left half of a diamond) unioned with a shaft, mirrored so the
    // tip sits at +x
    const float size = 2 * radius;
    const float mx = -x;
    const float ay = std::abs(y);
    const float diamond = std::abs(mx) + ay - size / 2;
    const float head_clip = std::max(std::abs(mx + size / 2), ay) - size / 2;
    const float shaft = std::max(std::abs(mx - size / 6) - size / 4, ay - size / 4);
    return std::min(shaft, std::max(0.75f * diamond, head_clip));
  }
}

inline float coverageRamp(float distance, float band) {
  return std::clamp(0.5f - distance / band, 0.0f, 1.0f);
}

template <MarkerStyle Style>
inline MarkerCoverage styleCoverage(float sdf, float linewidth, float band) {
  MarkerCoverage out;
  if constexpr (Style == MarkerStyle::Filled || Style == MarkerStyle::Outlined) {
    out.fill = coverageRamp(sdf, band);
  }
  if constexpr (Style == MarkerStyle::Stroked || Style == MarkerStyle::Outlined) {
    out.stroke = coverageRamp(std::abs(sdf) - linewidth / 2, band);
  }
  return out;
}

}  // namespace vizlink::detail

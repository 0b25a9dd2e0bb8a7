#pragma once

#include "vizlink/vector_types.hpp"

namespace vizlink {

enum class MarkerShape { Disc, Diamond, Arrow };
enum class MarkerStyle { Filled, Stroked, Outlined };

struct MarkerStyleParams {
  MarkerShape shape = MarkerShape::Disc;
  MarkerStyle style = MarkerStyle::Filled;
  float linewidth = 0;       // pixels, required > 0 for Stroked and Outlined
  float antialias_band = 1;  // pixels
};

/// Host reference of the marker signed distance (pixels). Negative inside.
/// `p` is in marker-local pixels with the marker centered at the origin; the
/// arrow points along +x.
float markerSDF(MarkerShape shape, float2 p, float radius);

struct MarkerCoverage {
  float fill = 0;    // coverage of the fill color
  float stroke = 0;  // coverage of the stroke color (drawn over the fill)

  float alpha() const { return fill > stroke ? fill : stroke; }
};

/// Antialiased coverage of a pixel at signed distance `sdf`. The falloff is
/// linear across a band of width `antialias_band` centered on the edge.
MarkerCoverage markerCoverage(float sdf, const MarkerStyleParams& style);

/// Throws InvalidValue for a non-positive band or a stroke style without
/// line width.
void validateMarkerStyle(const MarkerStyleParams& style);

}  // namespace vizlink

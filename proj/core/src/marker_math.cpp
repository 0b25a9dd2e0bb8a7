#include "vizlink/marker_math.hpp"

#include "marker_kernels.hpp"
#include "vizlink/error.hpp"

namespace vizlink {

float markerSDF(MarkerShape shape, float2 p, float radius) {
  switch (shape) {
    case MarkerShape::Disc: return detail::shapeDistance<MarkerShape::Disc>(p.x, p.y, radius);
    case MarkerShape::Diamond: return detail::shapeDistance<MarkerShape::Diamond>(p.x, p.y, radius);
    case MarkerShape::Arrow: return detail::shapeDistance<MarkerShape::Arrow>(p.x, p.y, radius);
  }
  return 0;
}

MarkerCoverage markerCoverage(float sdf, const MarkerStyleParams& style) {
  const float lw = style.linewidth;
  const float band = style.antialias_band;
  switch (style.style) {
    case MarkerStyle::Filled: return detail::styleCoverage<MarkerStyle::Filled>(sdf, lw, band);
    case MarkerStyle::Stroked: return detail::styleCoverage<MarkerStyle::Stroked>(sdf, lw, band);
    case MarkerStyle::Outlined: return detail::styleCoverage<MarkerStyle::Outlined>(sdf, lw, band);
  }
  return {};
}

void validateMarkerStyle(const MarkerStyleParams& style) {
  if (!(style.antialias_band > 0)) fail(Errc::InvalidValue, "antialias band must be > 0");
  if (style.style != MarkerStyle::Filled && !(style.linewidth > 0)) {
    fail(Errc::InvalidValue, "stroked and outlined markers need linewidth > 0");
  }
}

}  // namespace vizlink

// Built-in pipeline set. Each pipeline is the host rasterizer counterpart of
// one shader variant: it reads properties straight from the bound allocation
// memory and falls back to the view's uniform defaults for absent ones.

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "marker_kernels.hpp"
#include "property_reader.hpp"
#include "vizlink/error.hpp"
#include "vizlink/pipeline.hpp"

namespace vizlink {

namespace {

using detail::PropertyReader;

constexpr float kMinClipW = 1e-6f;

struct ScreenPoint {
  float x, y, depth;
};

struct Projector {
  Mat4 vp;
  float width, height;
  float3 scale;
  bool flat;  // 2D domain: z forced to 0

  bool project(const float4& pos, ScreenPoint& out) const {
    const float4 world{pos.x * scale.x, pos.y * scale.y, flat ? 0.0f : pos.z * scale.z, 1.0f};
    const float4 clip = vp * world;
    if (clip.w <= kMinClipW) return false;
    const float inv_w = 1.0f / clip.w;
    const float nz = clip.z * inv_w;
    if (nz < -1.0f || nz > 1.0f) return false;
    out.x = (clip.x * inv_w * 0.5f + 0.5f) * width;
    out.y = (0.5f - clip.y * inv_w * 0.5f) * height;
    out.depth = nz * 0.5f + 0.5f;
    return true;
  }
};

Projector makeProjector(const FrameUniforms& u, const ViewDescription& d) {
  return Projector{u.view_projection, u.viewport_width, u.viewport_height, d.scale,
                   d.domain == DomainType::Domain2D};
}

std::uint8_t toByte(float v) {
  return static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0f, 1.0f) * 255.0f));
}

/// Source-over blend of a straight-alpha color into the RGBA8 target.
void blend(DrawTarget& t, std::size_t pixel, const float4& c, float alpha) {
  std::uint8_t* dst = t.color.data() + pixel * 4;
  if (alpha >= 1.0f) {
    dst[0] = toByte(c.x);
    dst[1] = toByte(c.y);
    dst[2] = toByte(c.z);
    dst[3] = 255;
    return;
  }
  const float inv = 1.0f - alpha;
  dst[0] = toByte(c.x * alpha + dst[0] / 255.0f * inv);
  dst[1] = toByte(c.y * alpha + dst[1] / 255.0f * inv);
  dst[2] = toByte(c.z * alpha + dst[2] / 255.0f * inv);
  dst[3] = toByte(alpha + dst[3] / 255.0f * inv);
}

float4 lerp(const float4& a, const float4& b, float t) {
  return float4{a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t, a.z + (b.z - a.z) * t,
                a.w + (b.w - a.w) * t};
}

std::string describeCommon(const ShaderVariantKey& key) {
  std::ostringstream out;
  out << "variant " << key.name() << "\n";
  out << "  position: float" << int(key.position_bits) << "x" << int(key.position_components)
      << (key.position_bits == 64 ? " (converted to float32 at read)" : "")
      << (key.position_indexed ? ", indexed" : "") << "\n";
  out << "  color: "
      << (key.color_components ? "buffer float32x" + std::to_string(key.color_components)
                               : std::string("uniform default_color"))
      << (key.color_indexed ? ", indexed" : "") << "\n";
  out << "  size: " << (key.has_size ? "buffer float32" : "uniform default_size")
      << (key.size_indexed ? ", indexed" : "") << "\n";
  out << "  rotation: " << (key.has_rotation ? "buffer float32 (radians)" : "none")
      << (key.rotation_indexed ? ", indexed" : "") << "\n";
  return out.str();
}

template <MarkerShape Shape, MarkerStyle Style>
class MarkerPipeline final : public RenderPipeline {
 public:
  using RenderPipeline::RenderPipeline;

  void draw(DrawTarget& t, const FrameUniforms& u, const DrawCall& call) const override {
    const ViewDescription& desc = *call.description;
    const ViewBindings& b = *call.bindings;
    const Projector proj = makeProjector(u, desc);
    const PropertyReader position(b[PropertyType::Position]);
    const PropertyReader color(b[PropertyType::Color]);
    const PropertyReader size(b[PropertyType::Size]);
    const PropertyReader rotation(b[PropertyType::Rotation]);
    MarkerOptions options;
    if (const auto* o = std::get_if<MarkerOptions>(&desc.options)) options = *o;
    const float band = options.antialias > 0 ? options.antialias : 1.0f;
    const float linewidth = desc.linewidth;
    const int w = t.width;
    const int h = t.height;

    for (std::size_t e = 0; e < b.element_count; ++e) {
      float4 pos;
      if (!position.read(e, pos)) continue;
      ScreenPoint sp;
      if (!proj.project(pos, sp)) continue;

      float4 fill = call.state.default_color;
      if (color.present()) {
        float4 c;
        if (!color.read(e, c)) continue;
        fill = c;
      }
      float diameter = call.state.default_size;
      if (size.present()) {
        float4 s;
        if (!size.read(e, s)) continue;
        diameter = s.x;
      }
      const float radius = diameter * 0.5f;
      if (!(radius > 0)) continue;
      float cos_a = 1, sin_a = 0;
      if constexpr (Shape == MarkerShape::Arrow) {
        if (rotation.present()) {
          float4 r;
          if (rotation.read(e, r)) {
            cos_a = std::cos(r.x);
            sin_a = std::sin(r.x);
          }
        }
      }

      const float reach = radius + band + linewidth * 0.5f;
      const int x0 = std::max(0, static_cast<int>(std::floor(sp.x - reach)));
      const int x1 = std::min(w - 1, static_cast<int>(std::ceil(sp.x + reach)));
      const int y0 = std::max(0, static_cast<int>(std::floor(sp.y - reach)));
      const int y1 = std::min(h - 1, static_cast<int>(std::ceil(sp.y + reach)));
      for (int py = y0; py <= y1; ++py) {
        // marker-local frame with +y up
        const float ly = sp.y - (static_cast<float>(py) + 0.5f);
        for (int px = x0; px <= x1; ++px) {
          const float lx = static_cast<float>(px) + 0.5f - sp.x;
          float qx = lx, qy = ly;
          if constexpr (Shape == MarkerShape::Arrow) {
            qx = lx * cos_a + ly * sin_a;
            qy = -lx * sin_a + ly * cos_a;
          }
          const float sdf = detail::shapeDistance<Shape>(qx, qy, radius);
          const MarkerCoverage cov = detail::styleCoverage<Style>(sdf, linewidth, band);
          const float a = cov.alpha();
          if (a <= 0.0f) continue;
          const std::size_t pixel = static_cast<std::size_t>(py) * static_cast<std::size_t>(w) +
                                    static_cast<std::size_t>(px);
          if (!(sp.depth < t.depth[pixel])) continue;
          float4 c = fill;
          float alpha = cov.fill;
          if constexpr (Style != MarkerStyle::Filled) {
            // stroke drawn over the fill
            const float s = cov.stroke;
            const float total = s + cov.fill * (1 - s);
            const float4 sc = options.stroke_color;
            c = float4{(sc.x * s + fill.x * cov.fill * (1 - s)) / total,
                       (sc.y * s + fill.y * cov.fill * (1 - s)) / total,
                       (sc.z * s + fill.z * cov.fill * (1 - s)) / total, 1};
            alpha = total;
          }
          blend(t, pixel, c, alpha * fill.w);
          if (a >= 0.5f) t.depth[pixel] = sp.depth;
        }
      }
    }
  }

  std::string source() const override {
    static constexpr const char* shapes[] = {"disc", "diamond", "arrow"};
    static constexpr const char* styles[] = {"filled", "stroked", "outlined"};
    return describeCommon(key()) + "  entry: marker_" + shapes[static_cast<int>(Shape)] + "_" +
           styles[static_cast<int>(Style)] +
           " (screen-aligned quad, per-pixel signed distance, linear antialias band)\n";
  }
};

/// Clips the segment to the rectangle [lo, hi]^2 (Liang-Barsky). Returns
/// false when nothing remains.
bool clipSegment(ScreenPoint& a, ScreenPoint& b, float xlo, float ylo, float xhi, float yhi) {
  float t0 = 0, t1 = 1;
  const float dx = b.x - a.x, dy = b.y - a.y;
  const float p[4] = {-dx, dx, -dy, dy};
  const float q[4] = {a.x - xlo, xhi - a.x, a.y - ylo, yhi - a.y};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0) {
      if (q[i] < 0) return false;
      continue;
    }
    const float r = q[i] / p[i];
    if (p[i] < 0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  const ScreenPoint start = a;
  a = ScreenPoint{start.x + dx * t0, start.y + dy * t0, start.depth + (b.depth - start.depth) * t0};
  b = ScreenPoint{start.x + dx * t1, start.y + dy * t1, start.depth + (b.depth - start.depth) * t1};
  return true;
}

class EdgePipeline final : public RenderPipeline {
 public:
  using RenderPipeline::RenderPipeline;

  void draw(DrawTarget& t, const FrameUniforms& u, const DrawCall& call) const override {
    const ViewDescription& desc = *call.description;
    const ViewBindings& b = *call.bindings;
    const Projector proj = makeProjector(u, desc);
    const PropertyReader position(b[PropertyType::Position]);
    const PropertyReader color(b[PropertyType::Color]);
    const int thickness = std::max(1, static_cast<int>(std::lround(desc.linewidth)));
    const std::size_t n = b.element_count;

    auto endpoint = [&](std::size_t e, ScreenPoint& sp, float4& c) {
      float4 pos;
      if (!position.read(e, pos) || !proj.project(pos, sp)) return false;
      c = call.state.default_color;
      if (color.present() && !color.read(e, c)) return false;
      return true;
    };
    auto segment = [&](std::size_t ea, std::size_t eb) {
      ScreenPoint a, bpt;
      float4 ca, cb;
      if (!endpoint(ea, a, ca) || !endpoint(eb, bpt, cb)) return;
      drawLine(t, a, bpt, ca, cb, thickness);
    };

    if (key().topology == EdgeTopology::TriangleLoops) {
      for (std::size_t tri = 0; tri + 2 < n; tri += 3) {
        segment(tri, tri + 1);
        segment(tri + 1, tri + 2);
        segment(tri + 2, tri);
      }
    } else {
      for (std::size_t e = 0; e + 1 < n; e += 2) segment(e, e + 1);
    }
  }

  std::string source() const override {
    return describeCommon(key()) + "  entry: edges_" +
           (key().topology == EdgeTopology::TriangleLoops ? "triangle_loops" : "segments") +
           " (DDA lines, depth interpolated)\n";
  }

 private:
  static void drawLine(DrawTarget& t, ScreenPoint a, ScreenPoint b, const float4& ca,
                       const float4& cb, int thickness) {
    const float pad = static_cast<float>(thickness);
    const ScreenPoint orig_a = a;
    const float full_len = std::hypot(b.x - a.x, b.y - a.y);
    if (!clipSegment(a, b, -pad, -pad, static_cast<float>(t.width) + pad,
                     static_cast<float>(t.height) + pad)) {
      return;
    }
    const float dx = b.x - a.x, dy = b.y - a.y;
    const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(dx), std::abs(dy)))));
    const int half = (thickness - 1) / 2;
    for (int i = 0; i <= steps; ++i) {
      const float s = static_cast<float>(i) / static_cast<float>(steps);
      const float x = a.x + dx * s;
      const float y = a.y + dy * s;
      const float depth = a.depth + (b.depth - a.depth) * s;
      const float along =
          full_len > 0 ? std::hypot(x - orig_a.x, y - orig_a.y) / full_len : 0.0f;
      const float4 c = lerp(ca, cb, std::clamp(along, 0.0f, 1.0f));
      const int cx = static_cast<int>(std::floor(x));
      const int cy = static_cast<int>(std::floor(y));
      for (int oy = -half; oy < thickness - half; ++oy) {
        for (int ox = -half; ox < thickness - half; ++ox) {
          const int px = cx + ox, py = cy + oy;
          if (px < 0 || py < 0 || px >= t.width || py >= t.height) continue;
          const std::size_t pixel = static_cast<std::size_t>(py) * static_cast<std::size_t>(t.width) +
                                    static_cast<std::size_t>(px);
          if (!(depth < t.depth[pixel])) continue;
          blend(t, pixel, c, c.w);
          t.depth[pixel] = depth;
        }
      }
    }
  }
};

/// Flat-colored triangle with perspective-correct depth (screen-space linear
/// in NDC z).
void fillTriangle(DrawTarget& t, const ScreenPoint& a, const ScreenPoint& b, const ScreenPoint& c,
                  const float4& color) {
  const float area = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
  if (area == 0) return;
  const float inv_area = 1.0f / area;
  const int x0 = std::max(0, static_cast<int>(std::floor(std::min({a.x, b.x, c.x}))));
  const int x1 = std::min(t.width - 1, static_cast<int>(std::ceil(std::max({a.x, b.x, c.x}))));
  const int y0 = std::max(0, static_cast<int>(std::floor(std::min({a.y, b.y, c.y}))));
  const int y1 = std::min(t.height - 1, static_cast<int>(std::ceil(std::max({a.y, b.y, c.y}))));
  for (int py = y0; py <= y1; ++py) {
    const float y = static_cast<float>(py) + 0.5f;
    for (int px = x0; px <= x1; ++px) {
      const float x = static_cast<float>(px) + 0.5f;
      const float w0 = ((b.x - x) * (c.y - y) - (b.y - y) * (c.x - x)) * inv_area;
      const float w1 = ((c.x - x) * (a.y - y) - (c.y - y) * (a.x - x)) * inv_area;
      const float w2 = 1.0f - w0 - w1;
      if (w0 < 0 || w1 < 0 || w2 < 0) continue;
      const float depth = w0 * a.depth + w1 * b.depth + w2 * c.depth;
      const std::size_t pixel = static_cast<std::size_t>(py) * static_cast<std::size_t>(t.width) +
                                static_cast<std::size_t>(px);
      if (!(depth < t.depth[pixel])) continue;
      blend(t, pixel, color, color.w);
      t.depth[pixel] = depth;
    }
  }
}

template <bool ThreeD>
class VoxelPipeline final : public RenderPipeline {
 public:
  using RenderPipeline::RenderPipeline;

  void draw(DrawTarget& t, const FrameUniforms& u, const DrawCall& call) const override {
    const ViewDescription& desc = *call.description;
    const ViewBindings& b = *call.bindings;
    const Projector proj = makeProjector(u, desc);
    const PropertyReader position(b[PropertyType::Position]);
    const PropertyReader color(b[PropertyType::Color]);
    const PropertyReader size(b[PropertyType::Size]);

    for (std::size_t e = 0; e < b.element_count; ++e) {
      float4 pos;
      if (!position.read(e, pos)) continue;
      float4 c = call.state.default_color;
      if (color.present() && !color.read(e, c)) continue;
      float side = call.state.default_size;
      if (size.present()) {
        float4 s;
        if (!size.read(e, s)) continue;
        side = s.x;
      }
      const float h = side * 0.5f;
      if constexpr (!ThreeD) {
        std::array<ScreenPoint, 4> q;
        const float4 corners[4] = {{pos.x - h, pos.y - h, 0, 1},
                                   {pos.x + h, pos.y - h, 0, 1},
                                   {pos.x + h, pos.y + h, 0, 1},
                                   {pos.x - h, pos.y + h, 0, 1}};
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) ok = proj.project(corners[i], q[static_cast<std::size_t>(i)]);
        if (!ok) continue;
        fillTriangle(t, q[0], q[1], q[2], c);
        fillTriangle(t, q[0], q[2], q[3], c);
      } else {
        std::array<ScreenPoint, 8> q;
        bool ok = true;
        for (int i = 0; i < 8 && ok; ++i) {
          const float4 corner{pos.x + ((i & 1) ? h : -h), pos.y + ((i & 2) ? h : -h),
                              pos.z + ((i & 4) ? h : -h), 1};
          ok = proj.project(corner, q[static_cast<std::size_t>(i)]);
        }
        if (!ok) continue;
        static constexpr int faces[6][4] = {{0, 1, 3, 2}, {4, 5, 7, 6}, {0, 1, 5, 4},
                                            {2, 3, 7, 6}, {0, 2, 6, 4}, {1, 3, 7, 5}};
        for (const auto& f : faces) {
          fillTriangle(t, q[f[0]], q[f[1]], q[f[2]], c);
          fillTriangle(t, q[f[0]], q[f[2]], q[f[3]], c);
        }
      }
    }
  }

  std::string source() const override {
    return describeCommon(key()) + (ThreeD ? "  entry: voxels_cube (12 flat triangles)\n"
                                           : "  entry: voxels_square (2 flat triangles)\n");
  }
};

template <MarkerShape Shape>
std::unique_ptr<RenderPipeline> makeMarker(const ShaderVariantKey& key) {
  switch (key.style) {
    case MarkerStyle::Filled: return std::make_unique<MarkerPipeline<Shape, MarkerStyle::Filled>>(key);
    case MarkerStyle::Stroked: return std::make_unique<MarkerPipeline<Shape, MarkerStyle::Stroked>>(key);
    case MarkerStyle::Outlined:
      return std::make_unique<MarkerPipeline<Shape, MarkerStyle::Outlined>>(key);
  }
  return nullptr;
}

class DefaultPipelineFactory final : public PipelineFactory {
 public:
  std::unique_ptr<RenderPipeline> build(const ShaderVariantKey& key) override {
    const bool position_ok = (key.position_bits == 32 || key.position_bits == 64) &&
                             key.position_components >= 2 && key.position_components <= 4;
    if (!position_ok) fail(Errc::InvalidDescription, "cannot build variant " + key.name());
    switch (key.view_type) {
      case ViewType::Markers:
        switch (key.shape) {
          case MarkerShape::Disc: return makeMarker<MarkerShape::Disc>(key);
          case MarkerShape::Diamond: return makeMarker<MarkerShape::Diamond>(key);
          case MarkerShape::Arrow: return makeMarker<MarkerShape::Arrow>(key);
        }
        break;
      case ViewType::Edges:
        return std::make_unique<EdgePipeline>(key);
      case ViewType::Voxels:
        if (key.domain == DomainType::Domain3D) return std::make_unique<VoxelPipeline<true>>(key);
        return std::make_unique<VoxelPipeline<false>>(key);
    }
    fail(Errc::InvalidDescription, "cannot build variant " + key.name());
  }
};

}  // namespace

std::unique_ptr<PipelineFactory> makeDefaultPipelineFactory() {
  return std::make_unique<DefaultPipelineFactory>();
}

}  // namespace vizlink

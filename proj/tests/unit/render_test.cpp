#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"
#include "vizlink/marker_math.hpp"
#include "vizlink/view.hpp"

using namespace vizlink;
using vizlink::testing::headlessConfig;
using vizlink::testing::pointView;

namespace {

/// Screen position (pixels, y down) of a world point under the engine camera.
float2 screenOf(const Engine& engine, float3 p) {
  const auto& cfg = engine.config();
  const float aspect = static_cast<float>(cfg.width) / static_cast<float>(cfg.height);
  const float4 c = engine.camera().viewProjection(aspect) * float4{p.x, p.y, p.z, 1};
  return {(c.x / c.w * 0.5f + 0.5f) * static_cast<float>(cfg.width),
          (0.5f - c.y / c.w * 0.5f) * static_cast<float>(cfg.height)};
}

std::array<int, 4> rgbaAt(const Image& img, float2 s) {
  const std::uint8_t* p = img.pixel(static_cast<int>(s.x), static_cast<int>(s.y));
  return {p[0], p[1], p[2], p[3]};
}

}  // namespace

TEST(Render, FilledDiscMatchesHostCoverage) {
  auto engine = createInstance(headlessConfig(64, 64));
  auto a = allocLinear(*engine, sizeof(float2));
  writeFromHost<float2>(a.handle, std::vector<float2>{{0.25f, -0.5f}});
  ViewDescription desc;
  desc.domain = DomainType::Domain2D;
  desc.element_count = 1;
  desc.default_size = 40;
  desc.properties[PropertyType::Position] =
      PropertyDescription{a.handle, 1, FormatDescription::make<float2>(), std::nullopt};
  auto view = createView(*engine, desc);
  engine->renderFrame();
  const Image img = engine->capture();
  const float2 c = screenOf(*engine, {0.25f, -0.5f, 0});
  const MarkerStyleParams style{};
  float worst = 0;
  for (int y = 0; y < 64; ++y) {
    for (int x = 0; x < 64; ++x) {
      const float2 local{x + 0.5f - c.x, c.y - (y + 0.5f)};
      const float expected = markerCoverage(markerSDF(MarkerShape::Disc, local, 20), style).alpha();
      worst = std::max(worst, std::abs(img.pixel(x, y)[0] / 255.0f - expected));
    }
  }
  EXPECT_LE(worst, 1.0f / 255.0f);
}

TEST(Render, DefaultColorAppliesOnlyWithoutColorProperty) {
  auto engine = createInstance(headlessConfig(48, 48));
  auto a = allocLinear(*engine, sizeof(float3));
  writeFromHost<float3>(a.handle, std::vector<float3>{{0, 0, 0}});
  ViewDescription desc = pointView(a.handle, 1);
  desc.default_size = 10;
  auto view = createView(*engine, desc);
  view->setDefaultColor({1, 0, 0, 1});
  engine->renderFrame();
  const float2 c = screenOf(*engine, {0, 0, 0});
  EXPECT_EQ(rgbaAt(engine->capture(), c), (std::array<int, 4>{255, 0, 0, 255}));

  auto colors = allocLinear(*engine, sizeof(float4));
  writeFromHost<float4>(colors.handle, std::vector<float4>{{0, 1, 0, 1}});
  desc.properties[PropertyType::Color] =
      PropertyDescription{colors.handle, 1, FormatDescription::make<float4>(), std::nullopt};
  destroyView(*engine, view);
  auto colored = createView(*engine, desc);
  engine->renderFrame();
  const auto before = rgbaAt(engine->capture(), c);
  colored->setDefaultColor({0, 0, 1, 1});
  engine->renderFrame();
  EXPECT_EQ(rgbaAt(engine->capture(), c), before);
  EXPECT_EQ(before, (std::array<int, 4>{0, 255, 0, 255}));
}

TEST(Render, DoublePositionsAreConvertedAtRead) {
  auto engine = createInstance(headlessConfig(48, 48));
  auto a = allocLinear(*engine, 2 * sizeof(double2));
  writeFromHost<double2>(a.handle, std::vector<double2>{{0, 0}, {1, 1}});
  ViewDescription desc;
  desc.domain = DomainType::Domain2D;
  desc.element_count = 2;
  desc.default_size = 6;
  desc.properties[PropertyType::Position] =
      PropertyDescription{a.handle, 2, FormatDescription::make<double2>(), std::nullopt};
  auto view = createView(*engine, desc);
  engine->renderFrame();
  const Image img = engine->capture();
  EXPECT_EQ(rgbaAt(img, screenOf(*engine, {0, 0, 0}))[0], 255);
  EXPECT_EQ(rgbaAt(img, screenOf(*engine, {1, 1, 0}))[0], 255);
  EXPECT_EQ(rgbaAt(img, screenOf(*engine, {0.5f, 0.5f, 0}))[0], 0);
}

TEST(Render, VoxelLatticeUsesIndexedColormap) {
  auto engine = createInstance(headlessConfig(64, 64));
  const std::vector<float4> palette{{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
  auto colors = allocLinear(*engine, palette.size() * sizeof(float4));
  writeFromHost<float4>(colors.handle, palette);
  auto lattice = allocLinear(*engine, 4 * sizeof(std::int32_t));
  writeFromHost<std::int32_t>(lattice.handle, std::vector<std::int32_t>{2, 0, 1, 2});

  ViewDescription desc;
  desc.view_type = ViewType::Voxels;
  desc.domain = DomainType::Domain2D;
  desc.element_count = 4;
  desc.extent = {2, 2, 1};
  desc.properties[PropertyType::Position] = makeStructuredGrid(*engine, {2, 2, 1});
  desc.properties[PropertyType::Color] = PropertyDescription{
      colors.handle, palette.size(), FormatDescription::make<float4>(),
      IndexDescription{lattice.handle, 4, sizeof(std::int32_t)}};
  auto view = createView(*engine, desc);
  engine->renderFrame();
  const Image img = engine->capture();
  EXPECT_EQ(rgbaAt(img, screenOf(*engine, {0, 0, 0})), (std::array<int, 4>{0, 0, 255, 255}));
  EXPECT_EQ(rgbaAt(img, screenOf(*engine, {1, 0, 0})), (std::array<int, 4>{255, 0, 0, 255}));
  EXPECT_EQ(rgbaAt(img, screenOf(*engine, {0, 1, 0})), (std::array<int, 4>{0, 255, 0, 255}));
  EXPECT_EQ(rgbaAt(img, screenOf(*engine, {1, 1, 0})), (std::array<int, 4>{0, 0, 255, 255}));
  // squares of side default_size touch: the midpoint between cells is covered
  EXPECT_EQ(rgbaAt(img, screenOf(*engine, {0.5f, 0.5f, 0}))[3], 255);
}

TEST(Render, IndexedTriangleWireframe) {
  auto engine = createInstance(headlessConfig(64, 64));
  auto verts = allocLinear(*engine, 3 * sizeof(float3));
  writeFromHost<float3>(verts.handle, std::vector<float3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  auto idx = allocLinear(*engine, 3 * sizeof(std::uint32_t));
  writeFromHost<std::uint32_t>(idx.handle, std::vector<std::uint32_t>{0, 1, 2});
  ViewDescription desc;
  desc.view_type = ViewType::Edges;
  desc.domain = DomainType::Domain2D;
  desc.element_count = 3;
  desc.linewidth = 1;
  desc.properties[PropertyType::Position] = PropertyDescription{
      verts.handle, 3, FormatDescription::make<float3>(), IndexDescription{idx.handle, 3, 4}};
  auto view = createView(*engine, desc);
  EXPECT_EQ(makeVariantKey(desc).topology, EdgeTopology::TriangleLoops);
  engine->renderFrame();
  const Image img = engine->capture();
  // all three edges, including the closing one from vertex 2 back to 0
  EXPECT_GT(rgbaAt(img, screenOf(*engine, {0.5f, 0, 0}))[0], 0);
  EXPECT_GT(rgbaAt(img, screenOf(*engine, {0.5f, 0.5f, 0}))[0], 0);
  EXPECT_GT(rgbaAt(img, screenOf(*engine, {0, 0.5f, 0}))[0], 0);
  EXPECT_EQ(rgbaAt(img, screenOf(*engine, {0.25f, 0.25f, 0}))[0], 0);
}

TEST(Render, SharedAllocationBacksSeveralViews) {
  auto engine = createInstance(headlessConfig(48, 48));
  auto a = allocLinear(*engine, 2 * sizeof(float3));
  writeFromHost<float3>(a.handle, std::vector<float3>{{0, 0, 0}, {1, 1, 1}});
  ViewDescription dots = pointView(a.handle, 2);
  dots.default_size = 8;
  auto markers = createView(*engine, dots);
  ViewDescription edges = pointView(a.handle, 2);
  edges.view_type = ViewType::Edges;
  edges.linewidth = 1;
  auto lines = createView(*engine, edges);
  EXPECT_EQ(a.handle->viewReferences(), 2u);
  destroyView(*engine, lines);
  const FrameStats stats = engine->renderFrame();
  ASSERT_EQ(stats.visible_views.size(), 1u);
  EXPECT_EQ(rgbaAt(engine->capture(), screenOf(*engine, {1, 1, 1}))[0], 255);
}

#include <gtest/gtest.h>

#include <cstring>
#include <filesystem>

#include "test_support.hpp"
#include "vizlink/error.hpp"
#include "vizlink/samples/runner.hpp"

using namespace vizlink;
using namespace vizlink::samples;

namespace {

RunOptions quickRun(std::size_t iterations) {
  RunOptions o;
  o.width = 96;
  o.height = 96;
  o.headless = true;
  o.iterations = iterations;
  return o;
}

void expectCleanShutdown(const SampleReport& r, std::size_t iterations) {
  EXPECT_EQ(r.iterations_completed, iterations);
  EXPECT_EQ(r.counters.critical_sections_completed, iterations);
  EXPECT_EQ(r.counters.frames_started_during_critical, 0u);
  EXPECT_GT(r.counters.frames_presented, 0u);
  EXPECT_EQ(r.registry.liveAllocations(), 0u);
  EXPECT_EQ(r.registry.liveViews(), 0u);
}

}  // namespace

TEST(Samples, PottsRunIsDeterministic) {
  PottsParams p;
  p.L = 32;
  p.seed = 5;
  const SampleReport a = runPotts(p, quickRun(8));
  expectCleanShutdown(a, 8);
  ASSERT_EQ(a.final_buffer.size(), 32u * 32u * sizeof(std::int32_t));
  EXPECT_EQ(runPotts(p, quickRun(8)).final_buffer, a.final_buffer);

  // the visualized grid equals the packed halves after the same number of sweeps
  PottsState s = makePottsState(p);
  for (int i = 0; i < 8; ++i) {
    pottsUpdate(s, CellSet::White);
    pottsUpdate(s, CellSet::Black);
  }
  std::vector<std::int32_t> grid(32 * 32);
  pottsWriteGrid(s.white, s.black, grid, 32);
  EXPECT_EQ(std::memcmp(grid.data(), a.final_buffer.data(), a.final_buffer.size()), 0);
}

TEST(Samples, NBodyPingPongNeverShowsBothBuffers) {
  NBodyParams p;
  p.n = 256;
  const SampleReport r = runNBody(p, quickRun(40));
  expectCleanShutdown(r, 40);
  ASSERT_EQ(r.view_ids.size(), 2u);
  EXPECT_EQ(countPingPongViolations(r.frames, r.view_ids[0], r.view_ids[1]), 0u);
  EXPECT_EQ(runNBody(p, quickRun(40)).final_buffer, r.final_buffer);
}

TEST(Samples, PingPongCounterFlagsBadFrames) {
  std::vector<FrameStats> frames(3);
  frames[0].visible_views = {1};
  frames[1].visible_views = {1, 2};
  frames[2].visible_views = {};
  EXPECT_EQ(countPingPongViolations(frames, 1, 2), 2u);
}

TEST(Samples, MeshBreathesAlongNormals) {
  MeshParams p;
  p.obj = std::filesystem::path(VIZLINK_TEST_ASSETS) / "meshes" / "icosphere.obj";
  p.amplitude = 0.1f;
  p.step_degrees = 30;
  const SampleReport r = runMesh(p, quickRun(4));
  expectCleanShutdown(r, 4);

  const Mesh mesh = loadObj(p.obj);
  // the last iteration deformed with the scale produced by the third angle step
  float degrees = 0, scale = 0;
  for (int i = 0; i < 3; ++i) scale = varyAngle(degrees, p.amplitude, p.step_degrees);
  std::vector<float3> expected(mesh.vertices.size());
  breatheDeform(mesh.rest_positions, mesh.normals, scale, expected);
  ASSERT_EQ(r.final_buffer.size(), expected.size() * sizeof(float3));
  EXPECT_EQ(std::memcmp(expected.data(), r.final_buffer.data(), r.final_buffer.size()), 0);
}

TEST(Samples, WindowCloseEndsAnUnboundedRun) {
  auto counters = std::make_shared<vizlink::testing::ScriptedSurface::Counters>();
  RunOptions o = quickRun(0);
  o.headless = false;
  o.surface_factory = [counters] { return std::make_unique<vizlink::testing::ScriptedSurface>(5, counters); };
  NBodyParams p;
  p.n = 64;
  const SampleReport r = runNBody(p, o);
  EXPECT_GT(r.iterations_completed, 0u);
  EXPECT_GE(counters->presented.load(), 5u);
}

TEST(Samples, HeadlessRunsNeedABudget) {
  NBodyParams p;
  p.n = 8;
  try {
    runNBody(p, quickRun(0));
    FAIL() << "expected InvalidConfig";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InvalidConfig);
  }
}

#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <thread>

#include "test_support.hpp"
#include "vizlink/bench/bench.hpp"
#include "vizlink/error.hpp"

using namespace vizlink;
using namespace std::chrono_literals;
using vizlink::testing::headlessConfig;
using vizlink::testing::pointView;

namespace {

template <class F>
Errc codeOf(F&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidConfig;
}

/// Number of (critical section, frame read) span pairs that intersect.
std::size_t overlaps(const SyncTrace& trace) {
  std::size_t count = 0;
  for (const auto& c : trace.critical_sections)
    for (const auto& f : trace.frame_reads)
      if (f.begin < c.end && c.begin < f.end) ++count;
  return count;
}

void spinFor(std::chrono::microseconds d) {
  const auto until = std::chrono::steady_clock::now() + d;
  while (std::chrono::steady_clock::now() < until) {
  }
}

/// Engine with a point cloud large enough that frames take measurable time.
struct Scene {
  InstanceHandle engine;
  LinearAllocation points;
  ViewHandle view;

  explicit Scene(std::size_t n, EngineConfig config = headlessConfig(128, 128)) {
    engine = createInstance(config);
    points = allocLinear(*engine, n * sizeof(float3));
    bench::initRandomPositions(engine->device(), {points.as<float3>(), n}, 9, 1.0f);
    auto desc = pointView(points.handle, n);
    desc.extent = {1, 1, 1};
    view = createView(*engine, desc);
  }
};

}  // namespace

TEST(Sync, DisplayRunsEachStepInItsOwnSection) {
  auto engine = createInstance(headlessConfig());
  engine->display(0, [](std::size_t) { FAIL(); });
  EXPECT_EQ(engine->syncCounters().critical_sections_completed, 0u);
  engine->destroy();

  Scene scene(2000);
  std::size_t calls = 0;
  scene.engine->setTracing(true);
  scene.engine->display(100, [&](std::size_t i) {
    EXPECT_EQ(i, calls);
    EXPECT_EQ(scene.engine->phase(), SyncPhase::ComputeCritical);
    ++calls;
  });
  EXPECT_EQ(calls, 100u);
  EXPECT_EQ(scene.engine->phase(), SyncPhase::RenderTurn);
  EXPECT_EQ(scene.engine->displayMode(), DisplayMode::AutoDisplay);
  const auto counters = scene.engine->syncCounters();
  EXPECT_EQ(counters.critical_sections_completed, 100u);
  EXPECT_EQ(counters.frames_started_during_critical, 0u);
  scene.engine->destroy();
  EXPECT_EQ(overlaps(scene.engine->syncTrace()), 0u);
}

TEST(Sync, ProtocolErrors) {
  auto engine = createInstance(headlessConfig());
  EXPECT_EQ(codeOf([&] { engine->prepareViews(); }), Errc::NotDisplaying);
  EXPECT_EQ(codeOf([&] { engine->updateViews(); }), Errc::NoOpenCriticalSection);
  engine->displayAsync();
  EXPECT_EQ(codeOf([&] { engine->displayAsync(); }), Errc::AlreadyDisplaying);
  EXPECT_EQ(codeOf([&] { engine->display(1, {}); }), Errc::AlreadyDisplaying);
  EXPECT_EQ(codeOf([&] { engine->renderFrame(); }), Errc::AlreadyDisplaying);
  EXPECT_EQ(codeOf([&] { engine->updateViews(); }), Errc::NoOpenCriticalSection);
  engine->prepareViews();
  EXPECT_EQ(codeOf([&] { engine->prepareViews(); }), Errc::NestedCriticalSection);
  EXPECT_EQ(codeOf([&] { engine->setSyncEnabled(false); }), Errc::InCriticalSection);
  engine->updateViews();
  EXPECT_NO_THROW(engine->setSyncEnabled(false));
}

TEST(Sync, UserSectionsNeedTheAsyncDisplay) {
  auto engine = createInstance(headlessConfig());
  engine->display(1, [](std::size_t) {});
  EXPECT_EQ(codeOf([&] { engine->prepareViews(); }), Errc::NotDisplaying);
}

TEST(Sync, WritesInASectionAreVisibleAfterUpdate) {
  auto engine = createInstance(headlessConfig());
  auto a = allocLinear(*engine, 1024 * sizeof(float));
  engine->displayAsync();
  engine->prepareViews();
  float* data = a.as<float>();
  engine->device().dispatchEach(1024, [&](std::size_t i) { data[i] = static_cast<float>(i); });
  // inside the section the readback already reflects the writes
  EXPECT_EQ(readToHostAs<float>(a.handle)[1023], 1023.0f);
  engine->updateViews();
  const auto values = readToHostAs<float>(a.handle);
  for (std::size_t i = 0; i < values.size(); ++i) ASSERT_EQ(values[i], static_cast<float>(i));
}

TEST(Sync, SectionsNeverOverlapFrameReads) {
  Scene scene(50'000);
  Engine& engine = *scene.engine;
  engine.setTracing(true);
  engine.displayAsync();
  std::mt19937 gen(21);
  std::uniform_int_distribution<int> step_us(0, 3000);
  for (int i = 0; i < 150; ++i) {
    engine.prepareViews();
    spinFor(std::chrono::microseconds(step_us(gen)));
    engine.updateViews();
    if (i % 3 == 0) std::this_thread::sleep_for(std::chrono::microseconds(step_us(gen)));
  }
  engine.destroy();
  const auto counters = engine.syncCounters();
  EXPECT_EQ(counters.frames_started_during_critical, 0u);
  EXPECT_EQ(counters.critical_sections_completed, 150u);
  EXPECT_GT(counters.frames_presented, 0u);
  const SyncTrace trace = engine.syncTrace();
  EXPECT_EQ(trace.critical_sections.size(), 150u);
  EXPECT_FALSE(trace.frame_reads.empty());
  EXPECT_EQ(overlaps(trace), 0u);
}

TEST(Sync, DesynchronizedSectionsDoNotStallTheRenderLoop) {
  Scene scene(5000);
  Engine& engine = *scene.engine;
  engine.setSyncEnabled(false);
  engine.displayAsync();
  for (int i = 0; i < 40; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    engine.prepareViews();
    EXPECT_LT(std::chrono::steady_clock::now() - t0, 50ms);
    std::this_thread::sleep_for(3ms);
    engine.updateViews();
  }
  engine.destroy();
  const auto counters = engine.syncCounters();
  EXPECT_EQ(counters.critical_sections_completed, 40u);
  EXPECT_GT(counters.frames_started_during_critical, 0u);
}

TEST(Sync, FrameLimiterHoldsTheTarget) {
  auto config = headlessConfig(32, 32);
  config.target_fps = 60;
  auto engine = createInstance(config);
  engine->displayAsync();
  std::this_thread::sleep_for(300ms);
  const auto before = engine->syncCounters().frames_presented;
  const auto t0 = std::chrono::steady_clock::now();
  std::this_thread::sleep_for(1500ms);
  const auto after = engine->syncCounters().frames_presented;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double fps = static_cast<double>(after - before) / seconds;
  EXPECT_NEAR(fps, 60, 6);

  engine->setTargetFPS(0);
  std::this_thread::sleep_for(100ms);
  const auto u0 = engine->syncCounters().frames_presented;
  std::this_thread::sleep_for(500ms);
  EXPECT_GT(static_cast<double>(engine->syncCounters().frames_presented - u0) / 0.5, 144);
  engine->destroy();
}

TEST(Sync, CountersOnlyGrow) {
  Scene scene(1000);
  Engine& engine = *scene.engine;
  engine.displayAsync();
  SyncCounters last{};
  for (int i = 0; i < 30; ++i) {
    engine.prepareViews();
    engine.updateViews();
    std::this_thread::sleep_for(1ms);
    const SyncCounters now = engine.syncCounters();
    EXPECT_GE(now.frames_presented, last.frames_presented);
    EXPECT_EQ(now.critical_sections_completed, last.critical_sections_completed + 1);
    last = now;
  }
}

#include "vizlink/bench/bench.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>

#include <spdlog/spdlog.h>

#include "vizlink/error.hpp"
#include "vizlink/shared_memory.hpp"
#include "vizlink/view.hpp"

namespace vizlink::bench {

std::string_view toString(BenchMode mode) {
  switch (mode) {
    case BenchMode::Base: return "base";
    case BenchMode::Sync: return "sync";
    case BenchMode::Desync: return "desync";
    case BenchMode::HostCopy: return "hostcopy";
  }
  return "?";
}

BenchMode parseMode(std::string_view text) {
  for (BenchMode m : {BenchMode::Base, BenchMode::Sync, BenchMode::Desync, BenchMode::HostCopy}) {
    if (text == toString(m)) return m;
  }
  fail(Errc::InvalidConfig, "unknown mode '" + std::string(text) +
                                "' (expected base, sync, desync or hostcopy)");
}

Resolution parseResolution(std::string_view text) {
  if (text == "fhd") return {1920, 1080};
  if (text == "qhd") return {2560, 1440};
  if (text == "uhd") return {3840, 2160};
  const auto x = text.find('x');
  Resolution r{0, 0};
  if (x != std::string_view::npos) {
    const auto w = std::from_chars(text.data(), text.data() + x, r.width);
    const auto h = std::from_chars(text.data() + x + 1, text.data() + text.size(), r.height);
    if (w.ec == std::errc{} && w.ptr == text.data() + x && h.ec == std::errc{} &&
        h.ptr == text.data() + text.size() && r.width > 0 && r.height > 0) {
      return r;
    }
  }
  fail(Errc::InvalidConfig, "bad resolution '" + std::string(text) + "' (fhd, qhd, uhd or WxH)");
}

void validateBenchConfig(const BenchConfig& c) {
  if (c.n == 0) fail(Errc::InvalidConfig, "n must be >= 1");
  if (c.iterations == 0) fail(Errc::InvalidConfig, "iterations must be >= 1");
  if (c.resolution.width < 1 || c.resolution.height < 1) {
    fail(Errc::InvalidConfig, "resolution must be at least 1x1");
  }
  if (!(c.target_fps >= 0)) fail(Errc::InvalidConfig, "target fps must be >= 0");
  if (!(c.extent > 0)) fail(Errc::InvalidConfig, "extent must be > 0");
  if (!(c.sigma >= 0)) fail(Errc::InvalidConfig, "sigma must be >= 0");
  if (!(c.point_size > 0)) fail(Errc::InvalidConfig, "point size must be > 0");
}

double percentile(std::vector<double> values, double p) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  const double rank = std::ceil(std::clamp(p, 0.0, 100.0) / 100.0 * static_cast<double>(values.size()));
  const auto index = static_cast<std::size_t>(std::max(rank, 1.0)) - 1;
  return values[std::min(index, values.size() - 1)];
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) { return std::chrono::duration<double>(d).count(); }

/// Timing of the measured part of the iteration loop.
struct LoopTiming {
  double compute_s = 0;  // summed kernel (or host step + upload) time after warm-up
  double begin_s = 0;    // engine clock at the end of warm-up
  double end_s = 0;      // engine clock after the last iteration
};

std::size_t warmupIterations(const BenchConfig& c) {
  return std::min(c.warmup_iterations, c.iterations / 5);
}

BenchRecord runBase(const BenchConfig& c) {
  Device device = openDevice(c.device_index);
  auto buffer = device.allocate(c.n * sizeof(float3), MemoryCategory::Plain);
  std::span<float3> positions{reinterpret_cast<float3*>(buffer->data()), c.n};
  initRandomPositions(device, positions, c.seed, c.extent);

  const float sigma = c.effectiveSigma();
  const std::size_t warm = warmupIterations(c);
  double compute = 0;
  Clock::time_point begin = Clock::now();
  for (std::size_t i = 0; i < c.iterations; ++i) {
    if (i == warm) begin = Clock::now();
    const auto t0 = Clock::now();
    brownianStep(device, positions, sigma, i, c.seed);
    if (i >= warm) compute += seconds(Clock::now() - t0);
  }
  const double elapsed = seconds(Clock::now() - begin);

  BenchRecord r;
  r.mode = BenchMode::Base;
  r.n = c.n;
  r.width = c.resolution.width;
  r.height = c.resolution.height;
  r.target_fps = c.target_fps;
  r.compute_time_total_s = compute;
  r.elapsed_total_s = elapsed;
  const auto mem = sampleMemoryUsage(nullptr);
  r.graphics_mem_bytes = mem.graphics_mem_bytes;
  r.device_mem_total_bytes = mem.device_mem_total_bytes;
  r.iterations_completed = c.iterations;
  return r;
}

BenchRecord runRendered(const BenchConfig& c) {
  EngineConfig ec;
  ec.width = c.resolution.width;
  ec.height = c.resolution.height;
  ec.target_fps = c.target_fps;
  ec.headless = c.headless;
  ec.seed = c.seed;
  ec.device_index = c.device_index;
  ec.frame_output = c.frame_output;
  ec.sync_mode = c.mode == BenchMode::Desync ? SyncMode::Desynchronized : SyncMode::Synchronized;
  Engine engine(ec);

  auto alloc = allocLinear(engine, c.n * sizeof(float3));
  std::span<float3> device_positions{alloc.as<float3>(), c.n};
  std::vector<float3> host_positions;
  if (c.mode == BenchMode::HostCopy) {
    host_positions = initRandomPositions(c.seed, c.n, c.extent);
    writeFromHost<float3>(alloc.handle, host_positions);
  } else {
    initRandomPositions(engine.device(), device_positions, c.seed, c.extent);
  }

  ViewDescription desc;
  desc.view_type = ViewType::Markers;
  desc.domain = DomainType::Domain3D;
  desc.element_count = c.n;
  desc.extent = {c.extent, c.extent, c.extent};
  desc.default_color = {0.35f, 0.75f, 1.0f, 1.0f};
  desc.default_size = c.point_size;
  desc.properties[PropertyType::Position] =
      PropertyDescription{alloc.handle, c.n, FormatDescription::make<float3>(), std::nullopt};
  desc.options = MarkerOptions{};
  auto view = createView(engine, desc);

  if (c.mode == BenchMode::Desync) engine.setSyncEnabled(false);

  const float sigma = c.effectiveSigma();
  const std::size_t warm = warmupIterations(c);
  LoopTiming timing;
  const double display_t0 = engine.now();
  engine.displayAsync();
  timing.begin_s = engine.now();
  for (std::size_t i = 0; i < c.iterations; ++i) {
    if (i == warm) timing.begin_s = engine.now();
    double step_s = 0;
    if (c.mode == BenchMode::HostCopy) {
      const auto t0 = Clock::now();
      brownianStep(std::span<float3>(host_positions), sigma, i, c.seed);
      step_s += seconds(Clock::now() - t0);
      engine.prepareViews();
      const auto t1 = Clock::now();
      writeFromHost<float3>(alloc.handle, host_positions);
      step_s += seconds(Clock::now() - t1);
      engine.updateViews();
    } else {
      engine.prepareViews();
      const auto t0 = Clock::now();
      brownianStep(engine.device(), device_positions, sigma, i, c.seed);
      step_s = seconds(Clock::now() - t0);
      engine.updateViews();
    }
    if (i >= warm) timing.compute_s += step_s;
    if (!engine.isRunning()) {
      fail(Errc::DeviceLost, "display closed after " + std::to_string(i + 1) + " iterations");
    }
  }
  timing.end_s = engine.now();

  const auto frames = engine.frameStats();
  const std::size_t warm_frames = std::min(c.warmup_frames, frames.size() / 5);
  const double window_begin = timing.begin_s - display_t0;
  const double window_end = timing.end_s - display_t0;
  std::vector<double> frame_times;
  for (std::size_t f = warm_frames; f < frames.size(); ++f) {
    const auto& fs = frames[f];
    if (fs.start_time_s >= window_begin && fs.start_time_s < window_end) {
      frame_times.push_back(fs.frame_time_ms);
    }
  }
  double measured_begin = window_begin;
  if (warm_frames < frames.size()) {
    measured_begin = std::max(measured_begin, frames[warm_frames].start_time_s);
  }
  double fps = 0;
  if (window_end > measured_begin && !frame_times.empty()) {
    fps = static_cast<double>(frame_times.size()) / (window_end - measured_begin);
  } else if (window_end > 0 && !frames.empty()) {
    fps = static_cast<double>(frames.size()) / window_end;
  }

  if (!c.dump_shaders.empty()) {
    const auto written = engine.pipelines().dump(c.dump_shaders);
    spdlog::info("wrote {} shader variant(s) to {}", written, c.dump_shaders.string());
  }

  BenchRecord r;
  r.mode = c.mode;
  r.n = c.n;
  r.width = c.resolution.width;
  r.height = c.resolution.height;
  r.target_fps = c.target_fps;
  r.measured_fps = fps;
  r.frame_time_p50_ms = percentile(frame_times, 50);
  r.frame_time_p99_ms = percentile(frame_times, 99);
  r.compute_time_total_s = timing.compute_s;
  r.elapsed_total_s = timing.end_s - timing.begin_s;
  const auto mem = sampleMemoryUsage(&engine);
  r.graphics_mem_bytes = mem.graphics_mem_bytes;
  r.device_mem_total_bytes = mem.device_mem_total_bytes;
  r.iterations_completed = c.iterations;

  destroyView(engine, view);
  engine.destroy();
  return r;
}

}  // namespace

BenchRecord runBenchmark(const BenchConfig& config) {
  validateBenchConfig(config);
  const BenchRecord record = config.mode == BenchMode::Base ? runBase(config) : runRendered(config);
  if (!config.out_path.empty()) writeCsv(std::span(&record, 1), config.out_path);
  return record;
}

}  // namespace vizlink::bench

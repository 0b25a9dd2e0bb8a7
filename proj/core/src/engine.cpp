#include "vizlink/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include <spdlog/spdlog.h>

#include "engine_state.hpp"
#include "env.hpp"
#include "property_reader.hpp"
#include "vizlink/error.hpp"

namespace vizlink {

namespace {

std::atomic<std::uint64_t> g_next_instance_id{1};

}  // namespace

void validateConfig(const EngineConfig& config) {
  if (config.width < 1 || config.height < 1) {
    fail(Errc::InvalidConfig, "surface must be at least 1x1, got " + std::to_string(config.width) +
                                  "x" + std::to_string(config.height));
  }
  if (!(config.target_fps >= 0) || !std::isfinite(config.target_fps)) {
    fail(Errc::InvalidConfig, "target_fps must be a finite value >= 0");
  }
}

namespace detail {

EngineState::EngineState(const EngineConfig& cfg, Device dev, std::unique_ptr<Surface> surf)
    : id(g_next_instance_id.fetch_add(1)),
      config(cfg),
      device(std::move(dev)),
      surface(std::move(surf)),
      pipelines(makeDefaultPipelineFactory()),
      framebuffer(device, cfg.width, cfg.height) {
  sync_enabled = cfg.sync_mode == SyncMode::Synchronized;
  target_fps.store(cfg.target_fps);
}

void EngineState::checkAlive() const {
  if (destroyed.load()) fail(Errc::InvalidHandle, "instance was destroyed");
}

void EngineState::fitCameraIfNeeded(const std::vector<DrawItem>& items) {
  std::lock_guard lock(camera_mutex);
  if (camera_fitted || items.empty()) return;

  constexpr float inf = std::numeric_limits<float>::infinity();
  BoundingBox box{{inf, inf, inf}, {-inf, -inf, -inf}};
  bool three_d = false;
  auto include = [&](float x, float y, float z) {
    box.lo = {std::min(box.lo.x, x), std::min(box.lo.y, y), std::min(box.lo.z, z)};
    box.hi = {std::max(box.hi.x, x), std::max(box.hi.y, y), std::max(box.hi.z, z)};
  };
  for (const auto& item : items) {
    const ViewDescription& d = item.view->description();
    const bool flat = d.domain == DomainType::Domain2D;
    three_d = three_d || !flat;
    const float3 s = d.scale;
    if (d.extent.x > 0 || d.extent.y > 0 || d.extent.z > 0) {
      include(0, 0, 0);
      include(d.extent.x * s.x, d.extent.y * s.y, flat ? 0 : d.extent.z * s.z);
      continue;
    }
    // bounds pass over the bound positions, read in place
    const auto& bindings = ViewAccess::resources(*item.view)->bindings;
    const PropertyReader reader(bindings[PropertyType::Position]);
    if (!reader.present()) continue;
    for (std::size_t e = 0; e < bindings.element_count; ++e) {
      float4 p;
      if (!reader.read(e, p)) continue;
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) continue;
      include(p.x * s.x, p.y * s.y, flat ? 0 : p.z * s.z);
    }
  }
  if (!(box.lo.x <= box.hi.x)) return;  // nothing finite to frame yet
  const float aspect = static_cast<float>(config.width) / static_cast<float>(config.height);
  camera = Camera::fit(box, three_d, aspect);
  fitted_camera = camera;
  camera_fitted = true;
}

FrameStats EngineState::drawFrame(std::unique_lock<std::mutex>* sync_lock, double started_at) {
  std::unique_lock<std::mutex> own_lock;
  if (sync_lock == nullptr) {
    own_lock = std::unique_lock(sync_mutex);
    reading = true;
    ++counters.frames_started;
    sync_lock = &own_lock;
  }
  // snapshot under the sync lock, then read buffers without it
  const auto read_begin = Clock::now();
  std::vector<DrawItem> items;
  items.reserve(views.size());
  FrameStats stats;
  stats.sim_iteration = counters.critical_sections_completed;
  for (const auto& view : views) {
    const ViewState& published = ViewAccess::published(*view);
    if (!published.visible) continue;
    items.push_back(DrawItem{view, published});
    stats.visible_views.push_back(view->id());
  }
  sync_lock->unlock();

  auto finishReads = [&] {
    sync_lock->lock();
    reading = false;
    if (tracing) trace.frame_reads.push_back({secondsSince(read_begin), now()});
    sync_cv.notify_all();
    sync_lock->unlock();
  };

  {
    std::lock_guard frame_lock(frame_mutex);
    try {
      fitCameraIfNeeded(items);
      FrameUniforms uniforms;
      {
        std::lock_guard cam_lock(camera_mutex);
        const float aspect = static_cast<float>(config.width) / static_cast<float>(config.height);
        uniforms.view_projection = camera.viewProjection(aspect);
      }
      uniforms.viewport_width = static_cast<float>(config.width);
      uniforms.viewport_height = static_cast<float>(config.height);

      framebuffer.clear();
      DrawTarget target = framebuffer.target();
      for (const auto& item : items) {
        const auto& res = ViewAccess::resources(*item.view);
        const DrawCall call{&item.view->description(), item.state, &res->bindings};
        res->pipeline->draw(target, uniforms, call);
      }
    } catch (...) {
      finishReads();
      throw;
    }
    finishReads();
    surface->present(framebuffer.view());
  }
  const auto done = Clock::now();

  stats.presented = true;
  stats.frame_time_ms =
      std::max(std::chrono::duration<double, std::milli>(done - read_begin).count(), 1e-6);
  stats.start_time_s = secondsSince(read_begin) - started_at;
  {
    std::lock_guard lock(sync_mutex);
    ++counters.frames_presented;
  }
  {
    std::lock_guard lock(metrics_mutex);
    stats.frame_index = next_frame_index++;
    if (frames.size() < kMaxRecordedFrames) frames.push_back(stats);
  }
  return stats;
}

void EngineState::applyInput(const InputEvent& event) {
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, DragEvent>) {
          std::lock_guard lock(camera_mutex);
          camera.drag(e.dx, e.dy);
        } else if constexpr (std::is_same_v<T, ScrollEvent>) {
          std::lock_guard lock(camera_mutex);
          camera.scroll(e.dz);
        } else if constexpr (std::is_same_v<T, KeyEvent>) {
          if (e.code == 'R' || e.code == 'r') {
            std::lock_guard lock(camera_mutex);
            camera = fitted_camera;
          }
        } else {
          running = false;
          std::lock_guard lock(sync_mutex);
          stop_requested = true;
          sync_cv.notify_all();
        }
      },
      event);
}

}  // namespace detail

// Engine --------------------------------------------------------------------

Engine::Engine(const EngineConfig& config, std::unique_ptr<Surface> surface) {
  validateConfig(config);
  EngineConfig effective = config;
  if (detail::envFlag("VIZ_HEADLESS")) effective.headless = true;
  Device device = openDevice(effective.device_index, effective.device_memory_budget);
  if (!surface) {
    if (effective.headless) {
      surface = std::make_unique<OffscreenSurface>();
    } else {
      surface = createWindowSurface(effective.width, effective.height);
    }
  }
  effective.headless = surface->headless();
  state_ = std::make_shared<detail::EngineState>(effective, std::move(device), std::move(surface));
  spdlog::debug("instance {} created: {}x{}, device '{}'", state_->id, effective.width,
                effective.height, state_->device.info().name);
}

Engine::~Engine() {
  try {
    destroy();
  } catch (const std::exception& e) {
    spdlog::error("instance teardown failed: {}", e.what());
  }
}

std::uint64_t Engine::id() const noexcept { return state_->id; }
const EngineConfig& Engine::config() const noexcept { return state_->config; }
Device& Engine::device() { return state_->device; }
const Device& Engine::device() const { return state_->device; }
bool Engine::headless() const noexcept { return state_->config.headless; }

bool Engine::isRunning() const noexcept {
  return state_->running.load() && !state_->destroyed.load();
}

void Engine::destroy() {
  auto& s = *state_;
  if (s.destroyed.exchange(true)) return;
  s.running = false;
  s.stopDisplay();

  if (!s.config.frame_output.empty() && s.next_frame_index > 0) {
    try {
      std::lock_guard lock(s.frame_mutex);
      writePpm(s.framebuffer.toImage(), s.config.frame_output);
    } catch (const std::exception& e) {
      spdlog::error("could not write final frame: {}", e.what());
    }
  }

  {
    std::lock_guard lock(s.sync_mutex);
    const auto views = s.views;
    for (const auto& view : views) detail::releaseView(s, *view);
  }
  {
    std::lock_guard lock(s.registry_mutex);
    for (auto& [id, alloc] : s.allocations) {
      detail::AllocationAccess::buffer(*alloc).reset();
      ++s.registry.allocations_freed;
    }
    s.allocations.clear();
  }
  {
    std::lock_guard lock(s.frame_mutex);
    s.framebuffer.release();
    s.surface.reset();
  }
}

void Engine::display(std::size_t iterations, const std::function<void(std::size_t)>& step) {
  state_->startDisplay(DisplayMode::AutoDisplay);
  for (std::size_t i = 0; i < iterations; ++i) {
    state_->beginCritical(false);
    try {
      if (step) step(i);
    } catch (...) {
      state_->endCritical();
      throw;
    }
    state_->endCritical();
  }
}

void Engine::displayAsync() { state_->startDisplay(DisplayMode::AsyncDisplay); }
void Engine::prepareViews() { state_->beginCritical(true); }
void Engine::updateViews() { state_->endCritical(); }

void Engine::setTargetFPS(double fps) {
  if (!(fps >= 0) || !std::isfinite(fps)) fail(Errc::InvalidValue, "target fps must be >= 0");
  state_->target_fps.store(fps);
  std::lock_guard lock(state_->sync_mutex);
  state_->sync_cv.notify_all();
}

double Engine::targetFPS() const noexcept { return state_->target_fps.load(); }

void Engine::setSyncEnabled(bool enabled) {
  std::lock_guard lock(state_->sync_mutex);
  if (state_->phase == SyncPhase::ComputeCritical) {
    fail(Errc::InCriticalSection, "synchronization cannot change inside a critical section");
  }
  state_->sync_enabled = enabled;
  state_->sync_cv.notify_all();
}

bool Engine::syncEnabled() const noexcept {
  std::lock_guard lock(state_->sync_mutex);
  return state_->sync_enabled;
}

DisplayMode Engine::displayMode() const {
  std::lock_guard lock(state_->sync_mutex);
  return state_->mode;
}

SyncPhase Engine::phase() const {
  std::lock_guard lock(state_->sync_mutex);
  return state_->phase;
}

SyncCounters Engine::syncCounters() const {
  std::lock_guard lock(state_->sync_mutex);
  return state_->counters;
}

FrameStats Engine::renderFrame() {
  auto& s = *state_;
  s.checkAlive();
  {
    std::lock_guard lock(s.sync_mutex);
    if (s.mode != DisplayMode::Idle) {
      fail(Errc::AlreadyDisplaying, "the render loop owns presentation while displaying");
    }
  }
  auto stats = s.drawFrame(nullptr, 0.0);
  std::vector<InputEvent> events;
  {
    std::lock_guard lock(s.frame_mutex);
    if (s.surface) s.surface->pollEvents(events);
  }
  for (const auto& e : events) s.applyInput(e);
  return stats;
}

void Engine::handleInput(const InputEvent& event) { state_->applyInput(event); }

Camera Engine::camera() const {
  std::lock_guard lock(state_->camera_mutex);
  return state_->camera;
}

Image Engine::capture() const {
  std::lock_guard lock(state_->frame_mutex);
  return state_->framebuffer.toImage();
}

std::vector<FrameStats> Engine::frameStats() const {
  std::lock_guard lock(state_->metrics_mutex);
  return state_->frames;
}

PipelineCache& Engine::pipelines() { return state_->pipelines; }

RegistryCounters Engine::registryCounters() const {
  std::lock_guard lock(state_->registry_mutex);
  return state_->registry;
}

CopyCounters Engine::copyCounters() const {
  return CopyCounters{state_->render_copy_bytes.load(), state_->host_upload_bytes.load(),
                      state_->host_readback_bytes.load()};
}

MemoryUsage Engine::memoryUsage() const {
  MemoryUsage usage = sampleProcessMemory();
  usage.graphics_bytes = state_->device.memory().graphicsBytes();
  std::lock_guard lock(state_->frame_mutex);
  if (state_->surface) usage.graphics_bytes += state_->surface->stagingBytes();
  return usage;
}

void Engine::setTracing(bool enabled) {
  std::lock_guard lock(state_->sync_mutex);
  if (enabled && !state_->tracing) state_->trace = SyncTrace{};
  state_->tracing = enabled;
}

SyncTrace Engine::syncTrace() const {
  std::lock_guard lock(state_->sync_mutex);
  return state_->trace;
}

double Engine::now() const { return state_->now(); }

InstanceHandle createInstance(int width, int height) {
  EngineConfig config;
  config.width = width;
  config.height = height;
  return std::make_unique<Engine>(config);
}

InstanceHandle createInstance(const EngineConfig& config) { return std::make_unique<Engine>(config); }

MemoryUsage sampleProcessMemory() {
  MemoryUsage usage;
  std::ifstream status("/proc/self/status");
  std::string key;
  while (status >> key) {
    if (key == "VmRSS:") {
      std::size_t kib = 0;
      if (status >> kib) {
        usage.device_total_bytes = kib * 1024;
        usage.device_total_available = true;
      }
      break;
    }
    status.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
  }
  return usage;
}

}  // namespace vizlink

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "vizlink/camera.hpp"
#include "vizlink/device.hpp"
#include "vizlink/pipeline.hpp"
#include "vizlink/renderer.hpp"
#include "vizlink/surface.hpp"

namespace vizlink {

enum class SyncMode { Synchronized, Desynchronized };

struct EngineConfig {
  int width = 1920;
  int height = 1080;
  double target_fps = 0;  // 0 = unlimited
  bool headless = false;
  SyncMode sync_mode = SyncMode::Synchronized;
  std::uint64_t seed = 0;
  std::optional<std::size_t> device_index;  // overrides VIZ_DEVICE_INDEX
  std::size_t device_memory_budget = 0;     // 0 = whole device
  /// When set, the last frame is written there as a P6 pixmap at teardown.
  std::filesystem::path frame_output;
};

/// Throws InvalidConfig.
void validateConfig(const EngineConfig& config);

enum class DisplayMode { Idle, AutoDisplay, AsyncDisplay };
enum class SyncPhase { RenderTurn, ComputeCritical };

struct SyncCounters {
  std::uint64_t frames_presented = 0;
  std::uint64_t frames_started = 0;
  std::uint64_t critical_sections_completed = 0;
  std::uint64_t frames_started_during_critical = 0;
};

struct RegistryCounters {
  std::uint64_t allocations_created = 0;
  std::uint64_t allocations_freed = 0;
  std::uint64_t views_created = 0;
  std::uint64_t views_destroyed = 0;

  std::uint64_t liveAllocations() const { return allocations_created - allocations_freed; }
  std::uint64_t liveViews() const { return views_created - views_destroyed; }
};

/// Byte counters of every path that moves allocation contents.
struct CopyCounters {
  std::uint64_t render_copy_bytes = 0;  // allocation -> render resources; the draw path never copies
  std::uint64_t host_upload_bytes = 0;
  std::uint64_t host_readback_bytes = 0;
};

struct MemoryUsage {
  std::size_t graphics_bytes = 0;  // framebuffers, shared allocations, per-view resources
  std::size_t device_total_bytes = 0;
  bool device_total_available = false;
};

/// Time span on the engine's monotonic clock, seconds since instance creation.
struct TimeSpan {
  double begin = 0;
  double end = 0;
};

/// Recorded critical sections and frame buffer-read spans.
struct SyncTrace {
  std::vector<TimeSpan> critical_sections;
  std::vector<TimeSpan> frame_reads;
};

namespace detail {
struct EngineState;
}

class Engine {
 public:
  /// Uses `surface` for presentation instead of creating one from the config.
  explicit Engine(const EngineConfig& config, std::unique_ptr<Surface> surface = nullptr);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  std::uint64_t id() const noexcept;
  const EngineConfig& config() const noexcept;
  Device& device();
  const Device& device() const;
  bool headless() const noexcept;

  /// False once the display was closed, the device was lost or the
  /// instance was destroyed. Callable from any context.
  bool isRunning() const noexcept;
  /// Joins the render loop and releases views, allocations and the device
  /// context, in that order. Idempotent.
  void destroy();

  // Display and synchronization.

  /// Starts the render loop and runs `step` `iterations` times, each inside
  /// its own critical section. Returns after the last iteration with the
  /// display still live. Throws AlreadyDisplaying.
  void display(std::size_t iterations, const std::function<void(std::size_t)>& step);
  /// Starts the render loop; the caller brackets compute work with
  /// prepareViews/updateViews. Throws AlreadyDisplaying.
  void displayAsync();
  /// Throws NotDisplaying or NestedCriticalSection.
  void prepareViews();
  /// Throws NoOpenCriticalSection.
  void updateViews();
  void setTargetFPS(double fps);
  double targetFPS() const noexcept;
  /// Throws InCriticalSection.
  void setSyncEnabled(bool enabled);
  bool syncEnabled() const noexcept;
  DisplayMode displayMode() const;
  SyncPhase phase() const;
  SyncCounters syncCounters() const;

  // Rendering.

  /// Draws and presents one frame on the calling context. Only valid while
  /// no display is active (the render loop owns presentation otherwise);
  /// throws AlreadyDisplaying then.
  FrameStats renderFrame();
  void handleInput(const InputEvent& event);
  Camera camera() const;
  /// Last presented frame.
  Image capture() const;
  std::vector<FrameStats> frameStats() const;
  PipelineCache& pipelines();

  // Instrumentation.

  RegistryCounters registryCounters() const;
  CopyCounters copyCounters() const;
  MemoryUsage memoryUsage() const;
  void setTracing(bool enabled);
  SyncTrace syncTrace() const;
  /// Seconds since instance creation on the engine clock.
  double now() const;

  const std::shared_ptr<detail::EngineState>& state() const noexcept { return state_; }

 private:
  std::shared_ptr<detail::EngineState> state_;
};

using InstanceHandle = std::unique_ptr<Engine>;

/// Throws InvalidConfig, NoCapableDevice or SurfaceCreationFailed. The
/// VIZ_HEADLESS=1 environment variable forces an off-screen surface.
InstanceHandle createInstance(int width, int height);
InstanceHandle createInstance(const EngineConfig& config);

inline bool isRunning(const Engine& engine) { return engine.isRunning(); }
inline void destroyInstance(Engine& engine) { engine.destroy(); }
inline void display(Engine& engine, std::size_t iterations,
                    const std::function<void(std::size_t)>& step) {
  engine.display(iterations, step);
}
inline void displayAsync(Engine& engine) { engine.displayAsync(); }
inline void prepareViews(Engine& engine) { engine.prepareViews(); }
inline void updateViews(Engine& engine) { engine.updateViews(); }
inline void setTargetFPS(Engine& engine, double fps) { engine.setTargetFPS(fps); }
inline void setSyncEnabled(Engine& engine, bool enabled) { engine.setSyncEnabled(enabled); }
inline void handleInput(Engine& engine, const InputEvent& event) { engine.handleInput(event); }

/// Device memory in use by the whole process, from /proc. Reports
/// available = false where that facility is missing.
MemoryUsage sampleProcessMemory();

}  // namespace vizlink

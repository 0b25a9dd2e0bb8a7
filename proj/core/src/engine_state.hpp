#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "framebuffer.hpp"
#include "vizlink/engine.hpp"
#include "vizlink/view.hpp"

namespace vizlink::detail {

/// Render-side resources of a view. Holding the source buffers keeps an
/// in-flight frame safe even if the user frees an allocation right after
/// destroying the view.
struct ViewResources {
  std::shared_ptr<const RenderPipeline> pipeline;
  ViewBindings bindings;
  std::vector<std::shared_ptr<DeviceBuffer>> sources;
  std::vector<AllocHandle> referenced;  // one entry per view reference taken
  std::shared_ptr<DeviceBuffer> uniforms;
};

struct ViewAccess {
  static ViewState& requested(View& v) { return v.requested_; }
  static ViewState& published(View& v) { return v.published_; }
  static bool& destroyed(View& v) { return v.destroyed_; }
  static const std::shared_ptr<ViewResources>& resources(const View& v) { return v.resources_; }
};

struct AllocationAccess {
  static std::shared_ptr<DeviceBuffer>& buffer(SharedAllocation& a) { return a.buffer_; }
  static std::atomic<std::size_t>& refs(SharedAllocation& a) { return a.view_refs_; }
  static std::shared_ptr<EngineState> owner(const SharedAllocation& a) { return a.owner_.lock(); }
};

struct DrawItem {
  ViewHandle view;
  ViewState state;
};

struct EngineState {
  using Clock = std::chrono::steady_clock;

  EngineState(const EngineConfig& cfg, Device dev, std::unique_ptr<Surface> surf);

  double secondsSince(Clock::time_point t) const {
    return std::chrono::duration<double>(t - epoch).count();
  }
  double now() const { return secondsSince(Clock::now()); }

  void checkAlive() const;

  // Sync protocol (sync.cpp).
  void startDisplay(DisplayMode requested);
  void beginCritical(bool user_call);
  void endCritical();
  void renderLoop();
  void stopDisplay();

  // One frame: snapshot, draw, present (engine.cpp).
  FrameStats drawFrame(std::unique_lock<std::mutex>* sync_lock, double started_at);
  void fitCameraIfNeeded(const std::vector<DrawItem>& items);
  void applyInput(const InputEvent& event);

  const std::uint64_t id;
  const EngineConfig config;
  const Clock::time_point epoch = Clock::now();
  Device device;
  std::unique_ptr<Surface> surface;
  PipelineCache pipelines;

  std::atomic<bool> running{true};
  std::atomic<bool> destroyed{false};

  // Allocation registry.
  mutable std::mutex registry_mutex;
  std::map<std::uint64_t, AllocHandle> allocations;
  std::uint64_t next_allocation_id = 1;
  RegistryCounters registry;

  // Guarded by sync_mutex: the view list, every view's state and the sync state.
  mutable std::mutex sync_mutex;
  std::condition_variable sync_cv;
  std::vector<ViewHandle> views;
  std::uint64_t next_view_id = 1;
  DisplayMode mode = DisplayMode::Idle;
  SyncPhase phase = SyncPhase::RenderTurn;
  bool sync_enabled = true;
  bool reading = false;
  bool render_waiting = false;
  bool render_active = false;
  bool stop_requested = false;
  std::uint64_t frames_started_at_last_update = 0;
  SyncCounters counters;
  bool tracing = false;
  SyncTrace trace;
  double critical_begin = 0;
  double display_started = 0;
  std::atomic<double> target_fps{0};
  std::thread render_thread;

  // Frame resources; frame_mutex is held while a frame is drawn or captured.
  mutable std::mutex frame_mutex;
  Framebuffer framebuffer;

  mutable std::mutex camera_mutex;
  Camera camera;
  Camera fitted_camera;
  bool camera_fitted = false;

  mutable std::mutex metrics_mutex;
  std::vector<FrameStats> frames;
  std::uint64_t next_frame_index = 0;

  std::atomic<std::uint64_t> render_copy_bytes{0};
  std::atomic<std::uint64_t> host_upload_bytes{0};
  std::atomic<std::uint64_t> host_readback_bytes{0};
};

/// Copies a view's requested state into its published state. Caller holds
/// sync_mutex.
void publishView(View& view);
/// Unregisters a view and drops its resources and allocation references.
/// Caller holds sync_mutex and has ensured no frame is reading.
void releaseView(EngineState& state, View& view);

inline constexpr std::size_t kMaxRecordedFrames = std::size_t{1} << 20;

}  // namespace vizlink::detail

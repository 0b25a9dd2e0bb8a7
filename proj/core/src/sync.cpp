// Compute/render mutual exclusion.
//
// One mutex guards the view list, the view states and the phase. The render
// loop only reads view buffers while `reading` is set, and it only sets it
// during RenderTurn when synchronization is on. prepareViews flips the phase
// first (so no new read can start) and then waits for an in-flight read to
// finish. Compute is not allowed to starve rendering: if the render loop is
// parked waiting for its turn, a new critical section waits until at least
// one frame has started since the previous one ended.

#include <chrono>
#include <thread>

#include <spdlog/spdlog.h>

#include "engine_state.hpp"
#include "vizlink/error.hpp"

namespace vizlink::detail {

namespace {

constexpr auto kWatchdog = std::chrono::seconds(10);

template <class Pred>
void waitWithWatchdog(std::condition_variable& cv, std::unique_lock<std::mutex>& lock, Pred pred,
                      const char* what) {
  while (!cv.wait_for(lock, kWatchdog, pred)) {
    spdlog::warn("{} has been blocked for over {} s; suspected deadlock between compute and render",
                 what, kWatchdog.count());
  }
}

}  // namespace

void EngineState::startDisplay(DisplayMode requested) {
  std::thread previous;
  {
    std::lock_guard lock(sync_mutex);
    checkAlive();
    if (mode != DisplayMode::Idle) fail(Errc::AlreadyDisplaying, "a display is already active");
    previous = std::move(render_thread);
  }
  if (previous.joinable()) previous.join();

  std::lock_guard lock(sync_mutex);
  mode = requested;
  phase = SyncPhase::RenderTurn;
  stop_requested = false;
  render_active = true;
  // the loop is queued for its first frame, so the first section waits for it
  render_waiting = true;
  display_started = now();
  frames_started_at_last_update = counters.frames_started;
  render_thread = std::thread([this] { renderLoop(); });
}

void EngineState::beginCritical(bool user_call) {
  std::unique_lock lock(sync_mutex);
  if (destroyed.load()) fail(Errc::NotDisplaying, "instance was destroyed");
  if (mode == DisplayMode::Idle || (user_call && mode != DisplayMode::AsyncDisplay)) {
    fail(Errc::NotDisplaying, "prepareViews needs an active displayAsync");
  }
  if (phase == SyncPhase::ComputeCritical) {
    fail(Errc::NestedCriticalSection, "prepareViews called twice without updateViews");
  }
  if (sync_enabled) {
    waitWithWatchdog(
        sync_cv, lock,
        [&] {
          return stop_requested || !render_active || !render_waiting ||
                 counters.frames_started != frames_started_at_last_update;
        },
        "prepareViews (waiting for the render loop to take its turn)");
    phase = SyncPhase::ComputeCritical;
    waitWithWatchdog(
        sync_cv, lock, [&] { return !reading; }, "prepareViews (waiting for the frame in flight)");
  } else {
    phase = SyncPhase::ComputeCritical;
  }
  critical_begin = now();
}

void EngineState::endCritical() {
  std::lock_guard lock(sync_mutex);
  if (phase != SyncPhase::ComputeCritical) {
    fail(Errc::NoOpenCriticalSection, "updateViews called without prepareViews");
  }
  device.memoryFence();
  for (const auto& view : views) publishView(*view);
  phase = SyncPhase::RenderTurn;
  ++counters.critical_sections_completed;
  frames_started_at_last_update = counters.frames_started;
  if (tracing) trace.critical_sections.push_back({critical_begin, now()});
  sync_cv.notify_all();
}

void EngineState::renderLoop() {
  auto deadline = Clock::now();
  std::vector<InputEvent> events;
  try {
    for (;;) {
      std::unique_lock lock(sync_mutex);
      const double fps = target_fps.load();
      if (fps > 0) {
        const auto period = std::chrono::duration_cast<Clock::duration>(
            std::chrono::duration<double>(1.0 / fps));
        deadline += period;
        const auto current = Clock::now();
        // fell behind by more than a frame: restart the schedule
        if (deadline + period < current) deadline = current;
        sync_cv.wait_until(lock, deadline, [&] { return stop_requested; });
      } else {
        deadline = Clock::now();
      }
      if (stop_requested) break;

      if (sync_enabled) {
        render_waiting = true;
        sync_cv.notify_all();
        sync_cv.wait(lock, [&] {
          return stop_requested || !sync_enabled || phase == SyncPhase::RenderTurn;
        });
        render_waiting = false;
        if (stop_requested) break;
      }
      if (phase == SyncPhase::ComputeCritical) ++counters.frames_started_during_critical;
      ++counters.frames_started;
      reading = true;
      sync_cv.notify_all();
      drawFrame(&lock, display_started);

      events.clear();
      {
        std::lock_guard frame_lock(frame_mutex);
        surface->pollEvents(events);
      }
      for (const auto& e : events) applyInput(e);
    }
  } catch (const std::exception& e) {
    spdlog::error("render loop stopped: {}", e.what());
    running = false;
  }
  std::lock_guard lock(sync_mutex);
  render_active = false;
  render_waiting = false;
  reading = false;
  sync_cv.notify_all();
}

void EngineState::stopDisplay() {
  std::thread worker;
  {
    std::lock_guard lock(sync_mutex);
    stop_requested = true;
    sync_cv.notify_all();
    worker = std::move(render_thread);
  }
  if (worker.joinable() && worker.get_id() != std::this_thread::get_id()) worker.join();
  std::lock_guard lock(sync_mutex);
  mode = DisplayMode::Idle;
  phase = SyncPhase::RenderTurn;
  render_active = false;
}

}  // namespace vizlink::detail

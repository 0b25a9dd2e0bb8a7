#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "vizlink/renderer.hpp"

namespace vizlink {

/// Presentation target of an engine. Every member is called from the render
/// context only, except stagingBytes.
class Surface {
 public:
  virtual ~Surface() = default;

  virtual void present(const ImageView& frame) = 0;
  /// Appends pending input; a CloseEvent ends the display.
  virtual void pollEvents(std::vector<InputEvent>& events) = 0;
  /// Device memory held for presentation, beyond the framebuffer.
  virtual std::size_t stagingBytes() const { return 0; }
  virtual bool headless() const { return false; }
};

/// Off-screen target. The rendered frame stays in the engine framebuffer
/// (see Engine::capture); the surface never closes.
class OffscreenSurface final : public Surface {
 public:
  void present(const ImageView&) override { ++presented_; }
  void pollEvents(std::vector<InputEvent>&) override {}
  bool headless() const override { return true; }

  std::size_t presentedFrames() const { return presented_; }

 private:
  std::size_t presented_ = 0;
};

/// Window surface for the current display. Throws SurfaceCreationFailed when
/// no windowing system is reachable.
std::unique_ptr<Surface> createWindowSurface(int width, int height);

}  // namespace vizlink

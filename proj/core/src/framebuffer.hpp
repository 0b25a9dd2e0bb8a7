#pragma once

#include <memory>

#include "vizlink/device.hpp"
#include "vizlink/pipeline.hpp"
#include "vizlink/renderer.hpp"

namespace vizlink::detail {

/// RGBA8 color plus 32-bit float depth, both device resident.
class Framebuffer {
 public:
  Framebuffer() = default;
  Framebuffer(Device& device, int width, int height);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  bool empty() const noexcept { return color_ == nullptr; }

  /// Opaque black, depth 1 (far plane).
  void clear();
  DrawTarget target();
  ImageView view() const;
  Image toImage() const;
  void release();

 private:
  int width_ = 0;
  int height_ = 0;
  std::shared_ptr<DeviceBuffer> color_;
  std::shared_ptr<DeviceBuffer> depth_;
};

}  // namespace vizlink::detail

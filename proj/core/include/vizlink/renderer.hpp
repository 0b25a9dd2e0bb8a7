#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace vizlink {

struct FrameStats {
  std::uint64_t frame_index = 0;
  double frame_time_ms = 0;  // begin of view reads to end of present
  double start_time_s = 0;   // seconds since the display started
  bool presented = false;
  std::vector<std::uint64_t> visible_views;
  std::uint64_t sim_iteration = 0;  // critical sections completed when the frame began
};

struct DragEvent {
  float dx = 0;
  float dy = 0;
};
struct ScrollEvent {
  float dz = 0;
};
struct KeyEvent {
  int code = 0;  // ASCII for printable keys
};
struct CloseEvent {};

using InputEvent = std::variant<DragEvent, ScrollEvent, KeyEvent, CloseEvent>;

/// Tightly packed RGBA8 image, rows top to bottom.
struct Image {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgba;

  const std::uint8_t* pixel(int x, int y) const {
    return rgba.data() + (static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                          static_cast<std::size_t>(x)) *
                             4;
  }
};

/// Non-owning RGBA8 frame.
struct ImageView {
  int width = 0;
  int height = 0;
  std::span<const std::uint8_t> rgba;
};

/// Binary portable pixmap (P6); alpha is dropped. Throws IoError.
void writePpm(const Image& image, const std::filesystem::path& path);
/// Reads a binary P6 file written by writePpm (alpha set to 255).
Image readPpm(const std::filesystem::path& path);

}  // namespace vizlink

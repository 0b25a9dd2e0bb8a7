#include "framebuffer.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <string>

#include "vizlink/error.hpp"

namespace vizlink {

namespace detail {

Framebuffer::Framebuffer(Device& device, int width, int height)
    : width_(width), height_(height) {
  const auto pixels = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  color_ = device.allocate(pixels * 4, MemoryCategory::Framebuffer, BufferUsage::RenderStorage);
  depth_ = device.allocate(pixels * sizeof(float), MemoryCategory::Framebuffer,
                           BufferUsage::RenderStorage);
  clear();
}

void Framebuffer::clear() {
  if (empty()) return;
  auto color = color_->bytes();
  const std::size_t pixels = color.size() / 4;
  auto* rgba = reinterpret_cast<std::uint32_t*>(color.data());
  // opaque black in RGBA byte order regardless of endianness
  const std::uint8_t black[4] = {0, 0, 0, 255};
  std::uint32_t packed = 0;
  std::memcpy(&packed, black, 4);
  std::fill_n(rgba, pixels, packed);
  auto* depth = reinterpret_cast<float*>(depth_->data());
  std::fill_n(depth, pixels, 1.0f);
}

DrawTarget Framebuffer::target() {
  const auto pixels = static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  return DrawTarget{
      .width = width_,
      .height = height_,
      .color = {reinterpret_cast<std::uint8_t*>(color_->data()), pixels * 4},
      .depth = {reinterpret_cast<float*>(depth_->data()), pixels},
  };
}

ImageView Framebuffer::view() const {
  if (empty()) return {};
  return ImageView{width_, height_,
                   {reinterpret_cast<const std::uint8_t*>(color_->data()), color_->size()}};
}

Image Framebuffer::toImage() const {
  Image image;
  if (empty()) return image;
  image.width = width_;
  image.height = height_;
  const auto* begin = reinterpret_cast<const std::uint8_t*>(color_->data());
  image.rgba.assign(begin, begin + color_->size());
  return image;
}

void Framebuffer::release() {
  color_.reset();
  depth_.reset();
}

}  // namespace detail

void writePpm(const Image& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::IoError, "cannot open " + path.string() + " for writing");
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  std::string row(static_cast<std::size_t>(image.width) * 3, '\0');
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      const std::uint8_t* p = image.pixel(x, y);
      row[static_cast<std::size_t>(x) * 3 + 0] = static_cast<char>(p[0]);
      row[static_cast<std::size_t>(x) * 3 + 1] = static_cast<char>(p[1]);
      row[static_cast<std::size_t>(x) * 3 + 2] = static_cast<char>(p[2]);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!out) fail(Errc::IoError, "write to " + path.string() + " failed");
}

Image readPpm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path.string());
  std::string magic;
  int width = 0, height = 0, maxval = 0;
  in >> magic >> width >> height >> maxval;
  if (magic != "P6" || width <= 0 || height <= 0 || maxval != 255) {
    fail(Errc::ParseError, path.string() + " is not an 8-bit binary pixmap");
  }
  in.get();
  Image image{width, height, {}};
  image.rgba.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 4);
  std::string rgb(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * 3, '\0');
  in.read(rgb.data(), static_cast<std::streamsize>(rgb.size()));
  if (!in) fail(Errc::ParseError, path.string() + " is truncated");
  for (std::size_t i = 0, n = rgb.size() / 3; i < n; ++i) {
    image.rgba[i * 4 + 0] = static_cast<std::uint8_t>(rgb[i * 3 + 0]);
    image.rgba[i * 4 + 1] = static_cast<std::uint8_t>(rgb[i * 3 + 1]);
    image.rgba[i * 4 + 2] = static_cast<std::uint8_t>(rgb[i * 3 + 2]);
    image.rgba[i * 4 + 3] = 255;
  }
  return image;
}

}  // namespace vizlink

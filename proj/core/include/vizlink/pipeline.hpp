#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "vizlink/camera.hpp"
#include "vizlink/format.hpp"
#include "vizlink/view.hpp"

namespace vizlink {

/// Everything that selects a distinct render program for a view. Two views
/// with equal keys share one compiled pipeline.
struct ShaderVariantKey {
  ViewType view_type = ViewType::Markers;
  DomainType domain = DomainType::Domain3D;
  MarkerShape shape = MarkerShape::Disc;    // markers only
  MarkerStyle style = MarkerStyle::Filled;  // markers only
  EdgeTopology topology = EdgeTopology::Segments;  // edges only, resolved (never Auto)
  std::uint8_t position_bits = 32;
  std::uint8_t position_components = 3;
  bool position_indexed = false;
  std::uint8_t color_components = 0;  // 0 = uniform default color
  bool color_indexed = false;
  bool has_size = false;
  bool size_indexed = false;
  bool has_rotation = false;
  bool rotation_indexed = false;

  auto operator<=>(const ShaderVariantKey&) const = default;

  /// Stable, file-name safe identifier.
  std::string name() const;
};

/// Derives the variant key of a valid description.
ShaderVariantKey makeVariantKey(const ViewDescription& desc);

/// Device view of one property as bound for a draw.
struct PropertyBinding {
  const std::byte* data = nullptr;
  std::size_t size = 0;
  FormatDescription format;
  const std::byte* index_data = nullptr;
  std::size_t index_count = 0;
  std::size_t index_size = 0;

  bool present() const noexcept { return data != nullptr; }
  bool indexed() const noexcept { return index_data != nullptr; }
};

struct ViewBindings {
  std::array<PropertyBinding, 4> properties{};  // indexed by PropertyType
  std::size_t element_count = 0;

  const PropertyBinding& operator[](PropertyType type) const {
    return properties[static_cast<std::size_t>(type)];
  }
};

/// Color (RGBA8) and depth (32-bit float) attachments of the frame.
struct DrawTarget {
  int width = 0;
  int height = 0;
  std::span<std::uint8_t> color;
  std::span<float> depth;
};

struct FrameUniforms {
  Mat4 view_projection = Mat4::identity();
  float viewport_width = 1;
  float viewport_height = 1;
};

struct DrawCall {
  const ViewDescription* description = nullptr;
  ViewState state;
  const ViewBindings* bindings = nullptr;
};

/// A compiled program for one variant key.
class RenderPipeline {
 public:
  explicit RenderPipeline(ShaderVariantKey key) : key_(key) {}
  virtual ~RenderPipeline() = default;

  const ShaderVariantKey& key() const noexcept { return key_; }
  virtual void draw(DrawTarget& target, const FrameUniforms& uniforms, const DrawCall& call) const = 0;
  /// Human readable listing of the resolved program.
  virtual std::string source() const = 0;

 private:
  ShaderVariantKey key_;
};

class PipelineFactory {
 public:
  virtual ~PipelineFactory() = default;
  /// Throws InvalidDescription, naming the key, when the variant cannot be
  /// built.
  virtual std::unique_ptr<RenderPipeline> build(const ShaderVariantKey& key) = 0;
};

/// Built-in pipeline set: markers, edges and voxels rasterized on the host.
std::unique_ptr<PipelineFactory> makeDefaultPipelineFactory();

/// Memoizes pipelines by variant key; variants are built on first request.
class PipelineCache {
 public:
  explicit PipelineCache(std::unique_ptr<PipelineFactory> factory);

  std::shared_ptr<const RenderPipeline> resolve(const ShaderVariantKey& key);

  std::size_t hits() const;
  std::size_t misses() const;
  std::size_t size() const;

  /// Writes one `<key-name>.txt` per resolved variant; returns files written.
  std::size_t dump(const std::filesystem::path& directory) const;

 private:
  mutable std::mutex mutex_;
  std::unique_ptr<PipelineFactory> factory_;
  std::map<ShaderVariantKey, std::shared_ptr<const RenderPipeline>> variants_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

}  // namespace vizlink

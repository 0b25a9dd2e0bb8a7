#include "vizlink/pipeline.hpp"

#include <fstream>

#include "vizlink/error.hpp"

namespace vizlink {

std::string ShaderVariantKey::name() const {
  static constexpr const char* types[] = {"markers", "edges", "voxels"};
  static constexpr const char* shapes[] = {"disc", "diamond", "arrow"};
  static constexpr const char* styles[] = {"filled", "stroked", "outlined"};
  static constexpr const char* topologies[] = {"auto", "segments", "triloops"};

  std::string out = types[static_cast<int>(view_type)];
  out += domain == DomainType::Domain2D ? "_2d" : "_3d";
  if (view_type == ViewType::Markers) {
    out += std::string("_") + shapes[static_cast<int>(shape)] + "_" + styles[static_cast<int>(style)];
  }
  if (view_type == ViewType::Edges) out += std::string("_") + topologies[static_cast<int>(topology)];
  out += "_pos" + std::to_string(position_bits) + "x" + std::to_string(position_components);
  if (position_indexed) out += "i";
  if (color_components) {
    out += "_col" + std::to_string(color_components);
    if (color_indexed) out += "i";
  }
  if (has_size) out += size_indexed ? "_sizei" : "_size";
  if (has_rotation) out += rotation_indexed ? "_roti" : "_rot";
  return out;
}

ShaderVariantKey makeVariantKey(const ViewDescription& desc) {
  ShaderVariantKey key;
  key.view_type = desc.view_type;
  key.domain = desc.domain;
  if (desc.view_type == ViewType::Markers) {
    MarkerOptions options;
    if (const auto* o = std::get_if<MarkerOptions>(&desc.options)) options = *o;
    key.shape = options.shape;
    key.style = options.style;
  }
  const auto& props = desc.properties;
  if (auto it = props.find(PropertyType::Position); it != props.end()) {
    key.position_bits = it->second.format.bit_width;
    key.position_components = it->second.format.components;
    key.position_indexed = it->second.indices.has_value();
  }
  if (desc.view_type == ViewType::Edges) {
    EdgeTopology topology = EdgeTopology::Auto;
    if (const auto* o = std::get_if<EdgeOptions>(&desc.options)) topology = o->topology;
    if (topology == EdgeTopology::Auto) {
      topology = key.position_indexed && desc.element_count % 3 == 0 ? EdgeTopology::TriangleLoops
                                                                      : EdgeTopology::Segments;
    }
    key.topology = topology;
  }
  if (auto it = props.find(PropertyType::Color); it != props.end()) {
    key.color_components = it->second.format.components;
    key.color_indexed = it->second.indices.has_value();
  }
  if (auto it = props.find(PropertyType::Size); it != props.end()) {
    key.has_size = true;
    key.size_indexed = it->second.indices.has_value();
  }
  if (auto it = props.find(PropertyType::Rotation); it != props.end()) {
    key.has_rotation = true;
    key.rotation_indexed = it->second.indices.has_value();
  }
  return key;
}

PipelineCache::PipelineCache(std::unique_ptr<PipelineFactory> factory) : factory_(std::move(factory)) {}

std::shared_ptr<const RenderPipeline> PipelineCache::resolve(const ShaderVariantKey& key) {
  std::lock_guard lock(mutex_);
  if (auto it = variants_.find(key); it != variants_.end()) {
    ++hits_;
    return it->second;
  }
  std::shared_ptr<const RenderPipeline> built = factory_->build(key);
  if (!built) fail(Errc::InvalidDescription, "no pipeline for variant " + key.name());
  ++misses_;
  variants_.emplace(key, built);
  return built;
}

std::size_t PipelineCache::hits() const {
  std::lock_guard lock(mutex_);
  return hits_;
}

std::size_t PipelineCache::misses() const {
  std::lock_guard lock(mutex_);
  return misses_;
}

std::size_t PipelineCache::size() const {
  std::lock_guard lock(mutex_);
  return variants_.size();
}

std::size_t PipelineCache::dump(const std::filesystem::path& directory) const {
  std::lock_guard lock(mutex_);
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) fail(Errc::IoError, "cannot create " + directory.string() + ": " + ec.message());
  std::size_t written = 0;
  for (const auto& [key, pipeline] : variants_) {
    const auto path = directory / (key.name() + ".txt");
    std::ofstream out(path);
    if (!out) fail(Errc::IoError, "cannot write " + path.string());
    out << pipeline->source();
    ++written;
  }
  return written;
}

}  // namespace vizlink

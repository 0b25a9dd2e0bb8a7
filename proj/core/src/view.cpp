#include "vizlink/view.hpp"

#include <cstring>
#include <limits>
#include <string>

#include "engine_state.hpp"
#include "vizlink/error.hpp"

namespace vizlink {

namespace {

const char* propertyName(PropertyType type) {
  switch (type) {
    case PropertyType::Position: return "Position";
    case PropertyType::Color: return "Color";
    case PropertyType::Size: return "Size";
    case PropertyType::Rotation: return "Rotation";
  }
  return "?";
}

bool inUnit(float v) { return v >= 0.0f && v <= 1.0f; }

void checkColor(const float4& c, const char* what) {
  if (!(inUnit(c.x) && inUnit(c.y) && inUnit(c.z) && inUnit(c.w))) {
    fail(Errc::InvalidValue, std::string(what) + " channels must lie in [0, 1]");
  }
}

bool acceptsFormat(PropertyType type, const FormatDescription& f) {
  if (f.kind != ComponentKind::Float) return false;
  switch (type) {
    case PropertyType::Position:
      return (f.bit_width == 32 || f.bit_width == 64) && f.components >= 2 && f.components <= 4;
    case PropertyType::Color:
      return f.bit_width == 32 && (f.components == 3 || f.components == 4);
    case PropertyType::Size:
    case PropertyType::Rotation:
      return f.bit_width == 32 && f.components == 1;
  }
  return false;
}

void checkSource(const Engine& engine, const AllocHandle& source, const std::string& what) {
  if (!source) fail(Errc::InvalidDescription, what + " has no source allocation");
  if (source->ownerId() != engine.id()) {
    fail(Errc::ForeignAllocation, what + " source belongs to another instance");
  }
  if (!source->valid()) fail(Errc::InvalidHandle, what + " source was freed");
}

bool fits(std::size_t count, std::size_t stride, std::size_t bytes) {
  return stride == 0 || count <= bytes / stride;
}

void validateProperty(const Engine& engine, PropertyType type, const PropertyDescription& prop,
                      std::size_t element_count) {
  const std::string what = propertyName(type);
  checkSource(engine, prop.source, what);
  if (!acceptsFormat(type, prop.format)) {
    fail(Errc::UnsupportedFormat, what + " does not accept format " + toString(prop.format));
  }
  if (prop.size == 0) fail(Errc::InvalidDescription, what + " size must be > 0");
  if (!fits(prop.size, prop.format.bytesPerElement(), prop.source->byteSize())) {
    fail(Errc::SizeMismatch, what + ": " + std::to_string(prop.size) + " elements of " +
                                 toString(prop.format) + " exceed the " +
                                 std::to_string(prop.source->byteSize()) + "-byte source");
  }
  if (prop.indices) {
    const IndexDescription& idx = *prop.indices;
    if (idx.index_size != 1 && idx.index_size != 2 && idx.index_size != 4) {
      fail(Errc::BadIndexWidth, what + " index size must be 1, 2 or 4 bytes, got " +
                                    std::to_string(idx.index_size));
    }
    checkSource(engine, idx.source, what + " index");
    if (idx.size == 0) fail(Errc::InvalidDescription, what + " index count must be > 0");
    if (!fits(idx.size, idx.index_size, idx.source->byteSize())) {
      fail(Errc::SizeMismatch, what + ": " + std::to_string(idx.size) + " indices of " +
                                   std::to_string(idx.index_size) + " bytes exceed the " +
                                   std::to_string(idx.source->byteSize()) + "-byte source");
    }
    if (idx.size < element_count) {
      fail(Errc::SizeMismatch, what + ": " + std::to_string(idx.size) + " indices for " +
                                   std::to_string(element_count) + " elements");
    }
  } else if (prop.size < element_count) {
    fail(Errc::SizeMismatch, what + ": " + std::to_string(prop.size) + " elements for a view of " +
                                 std::to_string(element_count));
  }
}

void validateOptions(const ViewDescription& desc) {
  const bool ok = std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, std::monostate>) return true;
        if constexpr (std::is_same_v<T, MarkerOptions>) return desc.view_type == ViewType::Markers;
        if constexpr (std::is_same_v<T, EdgeOptions>) return desc.view_type == ViewType::Edges;
        if constexpr (std::is_same_v<T, VoxelOptions>) return desc.view_type == ViewType::Voxels;
      },
      desc.options);
  if (!ok) fail(Errc::InvalidDescription, "options do not match the view type");

  if (desc.view_type == ViewType::Markers) {
    MarkerOptions m;
    if (const auto* o = std::get_if<MarkerOptions>(&desc.options)) m = *o;
    validateMarkerStyle(MarkerStyleParams{m.shape, m.style, desc.linewidth, m.antialias});
    checkColor(m.stroke_color, "stroke color");
  }
  if (desc.view_type == ViewType::Edges) {
    EdgeTopology topology = EdgeTopology::Auto;
    if (const auto* o = std::get_if<EdgeOptions>(&desc.options)) topology = o->topology;
    const auto pos = desc.properties.find(PropertyType::Position);
    const bool indexed = pos != desc.properties.end() && pos->second.indices.has_value();
    if (topology == EdgeTopology::TriangleLoops && desc.element_count % 3 != 0) {
      fail(Errc::InvalidDescription, "triangle loops need a multiple of 3 endpoints");
    }
    const bool segments = topology == EdgeTopology::Segments ||
                          (topology == EdgeTopology::Auto && !(indexed && desc.element_count % 3 == 0));
    if (segments && desc.element_count % 2 != 0) {
      fail(Errc::InvalidDescription, "edge segments need an even number of endpoints, got " +
                                         std::to_string(desc.element_count));
    }
  }
}

void writeUniforms(detail::ViewResources& res, const ViewState& state) {
  if (res.uniforms && res.uniforms->size() >= sizeof(ViewState)) {
    std::memcpy(res.uniforms->data(), &state, sizeof(ViewState));
  }
}

}  // namespace

void validateDescription(const Engine& engine, const ViewDescription& desc) {
  if (desc.element_count == 0) fail(Errc::InvalidDescription, "element_count must be > 0");
  if (!desc.properties.count(PropertyType::Position)) {
    fail(Errc::MissingPosition, "a view must define at least the Position property");
  }
  for (const auto& [type, prop] : desc.properties) {
    validateProperty(engine, type, prop, desc.element_count);
  }
  checkColor(desc.default_color, "default color");
  if (!(desc.default_size > 0)) fail(Errc::InvalidValue, "default size must be > 0");
  if (!(desc.linewidth >= 0)) fail(Errc::InvalidValue, "linewidth must be >= 0");
  if (!(desc.scale.x > 0 && desc.scale.y > 0 && desc.scale.z > 0)) {
    fail(Errc::InvalidValue, "scale components must be > 0");
  }
  if (!(desc.extent.x >= 0 && desc.extent.y >= 0 && desc.extent.z >= 0)) {
    fail(Errc::InvalidValue, "extent components must be >= 0");
  }
  validateOptions(desc);
}

// View ----------------------------------------------------------------------

View::View(std::uint64_t id, ViewDescription desc, std::weak_ptr<detail::EngineState> owner,
           std::shared_ptr<detail::ViewResources> resources)
    : id_(id), desc_(std::move(desc)), owner_(std::move(owner)), resources_(std::move(resources)) {
  requested_ = ViewState{desc_.visible, desc_.default_color, desc_.default_size};
  published_ = requested_;
}

bool View::alive() const noexcept {
  auto owner = owner_.lock();
  if (!owner) return false;
  std::lock_guard lock(owner->sync_mutex);
  return !destroyed_;
}

template <class F>
void View::mutate(F&& change) {
  auto owner = owner_.lock();
  if (!owner) {
    change(requested_);
    published_ = requested_;
    return;
  }
  std::lock_guard lock(owner->sync_mutex);
  change(requested_);
  // inside a critical section the change waits for updateViews
  if (owner->phase != SyncPhase::ComputeCritical) {
    published_ = requested_;
    writeUniforms(*resources_, published_);
  }
}

void View::toggleVisibility() {
  mutate([](ViewState& s) { s.visible = !s.visible; });
}

void View::setVisible(bool visible) {
  mutate([visible](ViewState& s) { s.visible = visible; });
}

void View::setDefaultColor(float4 rgba) {
  checkColor(rgba, "default color");
  mutate([rgba](ViewState& s) { s.default_color = rgba; });
}

void View::setDefaultSize(float size) {
  if (!(size > 0)) fail(Errc::InvalidValue, "default size must be > 0");
  mutate([size](ViewState& s) { s.default_size = size; });
}

ViewState View::requestedState() const {
  auto owner = owner_.lock();
  if (!owner) return requested_;
  std::lock_guard lock(owner->sync_mutex);
  return requested_;
}

ViewState View::publishedState() const {
  auto owner = owner_.lock();
  if (!owner) return published_;
  std::lock_guard lock(owner->sync_mutex);
  return published_;
}

namespace detail {

void publishView(View& view) {
  ViewAccess::published(view) = ViewAccess::requested(view);
  writeUniforms(*ViewAccess::resources(view), ViewAccess::published(view));
}

}  // namespace detail

// Creation and teardown -----------------------------------------------------

ViewHandle createView(Engine& engine, const ViewDescription& desc) {
  auto& state = engine.state();
  state->checkAlive();
  validateDescription(engine, desc);

  auto res = std::make_shared<detail::ViewResources>();
  res->pipeline = state->pipelines.resolve(makeVariantKey(desc));
  res->uniforms = state->device.allocate(sizeof(ViewState) + sizeof(ShaderVariantKey),
                                         MemoryCategory::ViewResource, BufferUsage::RenderStorage);
  res->bindings.element_count = desc.element_count;

  {
    std::lock_guard lock(state->registry_mutex);
    // re-check under the registry lock so a concurrent free cannot slip in
    for (const auto& [type, prop] : desc.properties) {
      if (!prop.source->valid() || (prop.indices && !prop.indices->source->valid())) {
        fail(Errc::InvalidHandle, std::string(propertyName(type)) + " source was freed");
      }
    }
    for (const auto& [type, prop] : desc.properties) {
      PropertyBinding& b = res->bindings.properties[static_cast<std::size_t>(type)];
      auto& buffer = detail::AllocationAccess::buffer(*prop.source);
      b.data = buffer->data();
      b.size = prop.size;
      b.format = prop.format;
      res->sources.push_back(buffer);
      res->referenced.push_back(prop.source);
      ++detail::AllocationAccess::refs(*prop.source);
      if (prop.indices) {
        auto& index_buffer = detail::AllocationAccess::buffer(*prop.indices->source);
        b.index_data = index_buffer->data();
        b.index_count = prop.indices->size;
        b.index_size = prop.indices->index_size;
        res->sources.push_back(index_buffer);
        res->referenced.push_back(prop.indices->source);
        ++detail::AllocationAccess::refs(*prop.indices->source);
      }
    }
    ++state->registry.views_created;
  }

  std::lock_guard lock(state->sync_mutex);
  auto view = std::make_shared<View>(state->next_view_id++, desc, state, res);
  writeUniforms(*res, ViewState{desc.visible, desc.default_color, desc.default_size});
  state->views.push_back(view);
  return view;
}

namespace detail {

/// Caller holds sync_mutex and has ensured no frame is reading.
void releaseView(EngineState& state, View& view) {
  if (ViewAccess::destroyed(view)) return;
  ViewAccess::destroyed(view) = true;
  std::erase_if(state.views, [&](const ViewHandle& v) { return v.get() == &view; });
  auto& res = *ViewAccess::resources(view);
  {
    std::lock_guard lock(state.registry_mutex);
    for (auto& alloc : res.referenced) --AllocationAccess::refs(*alloc);
    ++state.registry.views_destroyed;
  }
  res.referenced.clear();
  res.sources.clear();
  res.uniforms.reset();
  res.bindings = ViewBindings{};
}

}  // namespace detail

void destroyView(Engine& engine, const ViewHandle& view) {
  if (!view) return;
  auto& state = engine.state();
  std::unique_lock lock(state->sync_mutex);
  if (detail::ViewAccess::destroyed(*view)) return;
  state->sync_cv.wait(lock, [&] { return !state->reading; });
  detail::releaseView(*state, *view);
}

// Helpers -------------------------------------------------------------------

PropertyDescription makeStructuredGrid(Engine& engine, Extent3 extent) {
  if (extent.x == 0 || extent.y == 0 || extent.z == 0) {
    fail(Errc::InvalidValue, "grid extent components must be >= 1");
  }
  const std::size_t nx = extent.x, ny = extent.y, nz = extent.z;
  const std::size_t max_count = std::numeric_limits<std::size_t>::max() / sizeof(float3);
  if (ny > max_count / nx || nz > max_count / (nx * ny)) {
    fail(Errc::OutOfDeviceMemory, "grid is too large");
  }
  const std::size_t count = nx * ny * nz;
  auto alloc = allocLinear(engine, count * sizeof(float3));
  float3* out = alloc.as<float3>();
  engine.device().dispatchEach(count, [&](std::size_t p) {
    out[p] = float3{static_cast<float>(p % nx), static_cast<float>((p / nx) % ny),
                    static_cast<float>(p / (nx * ny))};
  });
  return PropertyDescription{alloc.handle, count, FormatDescription::make<float3>(), std::nullopt};
}

bool validateIndices(const PropertyDescription& prop) {
  if (!prop.indices) return true;
  const IndexDescription& idx = *prop.indices;
  const auto bytes = readToHost(idx.source, 0, idx.size * idx.index_size);
  for (std::size_t i = 0; i < idx.size; ++i) {
    std::uint32_t value = 0;
    switch (idx.index_size) {
      case 1: value = static_cast<std::uint8_t>(bytes[i]); break;
      case 2: {
        std::uint16_t v;
        std::memcpy(&v, bytes.data() + i * 2, 2);
        value = v;
        break;
      }
      default: std::memcpy(&value, bytes.data() + i * 4, 4); break;
    }
    if (value >= prop.size) return false;
  }
  return true;
}

}  // namespace vizlink

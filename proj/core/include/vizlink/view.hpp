#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <variant>

#include "vizlink/format.hpp"
#include "vizlink/marker_math.hpp"
#include "vizlink/shared_memory.hpp"
#include "vizlink/vector_types.hpp"

namespace vizlink {

enum class ViewType { Markers, Edges, Voxels };
enum class DomainType { Domain2D, Domain3D };
enum class PropertyType { Position, Color, Size, Rotation };

/// Indirection through an integer buffer: element e reads source[indices[e]].
struct IndexDescription {
  AllocHandle source;
  std::size_t size = 0;        // number of indices
  std::size_t index_size = 4;  // bytes per index: 1, 2 or 4
};

struct PropertyDescription {
  AllocHandle source;
  std::size_t size = 0;  // number of elements in `source`
  FormatDescription format;
  std::optional<IndexDescription> indices;
};

using PropertyMap = std::map<PropertyType, PropertyDescription>;

struct MarkerOptions {
  MarkerShape shape = MarkerShape::Disc;
  MarkerStyle style = MarkerStyle::Filled;
  float4 stroke_color{1, 1, 1, 1};
  float antialias = 1;  // pixels
};

enum class EdgeTopology {
  Auto,           // Segments without indices, TriangleLoops for indexed multiples of 3
  Segments,       // endpoints pairwise: 0-1, 2-3, ...
  TriangleLoops,  // each 3 endpoints form a closed loop of three edges
};

struct EdgeOptions {
  EdgeTopology topology = EdgeTopology::Auto;
};

struct VoxelOptions {};

/// Per-view-type options; monostate selects the defaults for the view type.
using ViewOptions = std::variant<std::monostate, MarkerOptions, EdgeOptions, VoxelOptions>;

struct ViewDescription {
  ViewType view_type = ViewType::Markers;
  DomainType domain = DomainType::Domain3D;
  std::size_t element_count = 0;
  float3 extent{0, 0, 0};  // world-space box [0, extent]; zero fits the camera to the data
  PropertyMap properties;
  bool visible = true;
  float4 default_color{1, 1, 1, 1};
  float default_size = 1;  // pixels for markers, world units for voxels
  float linewidth = 0;     // pixels
  float3 scale{1, 1, 1};
  ViewOptions options;
};

/// Runtime state of a view that may change between frames.
struct ViewState {
  bool visible = true;
  float4 default_color{1, 1, 1, 1};
  float default_size = 1;
};

namespace detail {
struct ViewResources;
struct ViewAccess;
}  // namespace detail

class View {
 public:
  std::uint64_t id() const noexcept { return id_; }
  const ViewDescription& description() const noexcept { return desc_; }
  bool alive() const noexcept;

  /// Negates visibility. Inside a compute critical section the change is
  /// queued and published by updateViews together with every other change
  /// made in that section; otherwise it applies from the next frame.
  void toggleVisibility();
  void setVisible(bool visible);
  /// Channels must lie in [0, 1]. Throws InvalidValue.
  void setDefaultColor(float4 rgba);
  /// Throws InvalidValue for size <= 0.
  void setDefaultSize(float size);

  /// Latest requested state, including changes not yet published.
  ViewState requestedState() const;
  /// State the renderer currently draws with.
  ViewState publishedState() const;

  View(std::uint64_t id, ViewDescription desc, std::weak_ptr<detail::EngineState> owner,
       std::shared_ptr<detail::ViewResources> resources);

 private:
  friend struct detail::ViewAccess;
  template <class F>
  void mutate(F&& change);

  std::uint64_t id_;
  ViewDescription desc_;
  std::weak_ptr<detail::EngineState> owner_;
  std::shared_ptr<detail::ViewResources> resources_;
  ViewState requested_;
  ViewState published_;
  bool destroyed_ = false;
};

using ViewHandle = std::shared_ptr<View>;

/// Checks a description against the instance without creating anything.
/// Throws MissingPosition, SizeMismatch, BadIndexWidth, ForeignAllocation,
/// UnsupportedFormat, InvalidDescription or InvalidValue.
void validateDescription(const Engine& engine, const ViewDescription& desc);

ViewHandle createView(Engine& engine, const ViewDescription& desc);
/// Idempotent. Waits for an in-flight frame that may still read the view.
void destroyView(Engine& engine, const ViewHandle& view);
inline void toggleVisibility(const ViewHandle& view) { view->toggleVisibility(); }

/// Shared buffer of nx*ny*nz float3 lattice coordinates, x fastest, then y,
/// then z, wrapped as a ready Position property.
PropertyDescription makeStructuredGrid(Engine& engine, Extent3 extent);

/// True iff every stored index is < prop.size. Reads current device contents.
bool validateIndices(const PropertyDescription& prop);

}  // namespace vizlink

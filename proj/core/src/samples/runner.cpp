#include "vizlink/samples/runner.hpp"

#include <algorithm>
#include <utility>

#include <spdlog/spdlog.h>

#include "vizlink/error.hpp"
#include "vizlink/shared_memory.hpp"
#include "vizlink/view.hpp"

namespace vizlink::samples {

namespace {

std::unique_ptr<Engine> makeEngine(const RunOptions& o, std::uint64_t seed) {
  if (o.headless && o.iterations == 0) {
    fail(Errc::InvalidConfig, "headless runs need an iteration budget");
  }
  EngineConfig config;
  config.width = o.width;
  config.height = o.height;
  config.headless = o.headless;
  config.target_fps = o.target_fps;
  config.seed = seed;
  config.device_index = o.device_index;
  config.frame_output = o.frame_output;
  std::unique_ptr<Surface> surface;
  if (o.surface_factory) surface = o.surface_factory();
  return std::make_unique<Engine>(config, std::move(surface));
}

bool keepGoing(const Engine& engine, const RunOptions& o, std::size_t i) {
  return engine.isRunning() && (o.iterations == 0 || i < o.iterations);
}

SampleReport finish(Engine& engine, std::size_t iterations, std::vector<std::uint64_t> view_ids,
                    std::vector<std::byte> final_buffer) {
  SampleReport report;
  report.iterations_completed = iterations;
  report.view_ids = std::move(view_ids);
  report.final_buffer = std::move(final_buffer);
  engine.destroy();
  report.counters = engine.syncCounters();
  report.frames = engine.frameStats();
  report.registry = engine.registryCounters();
  return report;
}

}  // namespace

SampleReport runPotts(const PottsParams& params, const RunOptions& options) {
  PottsState state = makePottsState(params);
  const std::size_t L = params.L;
  auto engine = makeEngine(options, params.seed);
  Device& device = engine->device();

  auto grid = allocLinear(*engine, sizeof(std::int32_t) * L * L);
  const auto colors = pottsColormap();
  auto colormap = allocLinear(*engine, sizeof(float4) * colors.size());
  writeFromHost<float4>(colormap.handle, colors);
  std::span<std::int32_t> grid_cells{grid.as<std::int32_t>(), L * L};
  pottsWriteGrid(device, state.white, state.black, grid_cells, L);

  ViewDescription desc;
  desc.element_count = L * L;
  desc.extent = {static_cast<float>(L), static_cast<float>(L), 1};
  desc.domain = DomainType::Domain2D;
  desc.view_type = ViewType::Voxels;
  desc.properties[PropertyType::Position] = makeStructuredGrid(*engine, {static_cast<std::uint32_t>(L), static_cast<std::uint32_t>(L), 1});
  desc.properties[PropertyType::Color] = PropertyDescription{
      colormap.handle, colors.size(), FormatDescription::make<float4>(),
      IndexDescription{grid.handle, L * L, sizeof(std::int32_t)}};
  auto view = createView(*engine, desc);

  engine->displayAsync();
  std::size_t i = 0;
  for (; keepGoing(*engine, options, i); ++i) {
    // the packed halves are not visualized, so they update outside the section
    pottsUpdate(device, state, CellSet::White);
    pottsUpdate(device, state, CellSet::Black);
    engine->prepareViews();
    pottsWriteGrid(device, state.white, state.black, grid_cells, L);
    engine->updateViews();
  }
  auto final_buffer = readToHost(grid.handle, 0, grid.handle->byteSize());
  return finish(*engine, i, {view->id()}, std::move(final_buffer));
}

SampleReport runNBody(const NBodyParams& params, const RunOptions& options) {
  NBodyInit init = makeNBodyInit(params);
  const std::size_t n = params.n;
  auto engine = makeEngine(options, params.seed);
  Device& device = engine->device();

  AllocHandle allocs[2];
  std::span<float4> positions[2];
  for (int b = 0; b < 2; ++b) {
    auto a = allocLinear(*engine, sizeof(float4) * n);
    allocs[b] = a.handle;
    positions[b] = {a.as<float4>(), n};
  }
  writeFromHost<float4>(allocs[0], init.positions);
  writeFromHost<float4>(allocs[1], init.positions);
  auto velocity_buffer = device.allocate(sizeof(float4) * n, MemoryCategory::Plain);
  std::span<float4> velocities{reinterpret_cast<float4*>(velocity_buffer->data()), n};
  std::copy(init.velocities.begin(), init.velocities.end(), velocities.begin());

  ViewDescription desc;
  desc.view_type = ViewType::Markers;
  desc.domain = DomainType::Domain3D;
  desc.element_count = n;
  desc.properties[PropertyType::Position] =
      PropertyDescription{allocs[0], n, FormatDescription::make<float4>(), std::nullopt};
  desc.visible = true;
  desc.default_color = {1, 1, 1, 1};
  desc.default_size = 3;
  desc.linewidth = 0;
  desc.scale = {1, 1, 1};
  ViewHandle views[2];
  views[0] = createView(*engine, desc);
  desc.visible = false;
  desc.properties[PropertyType::Position].source = allocs[1];
  views[1] = createView(*engine, desc);

  int current_read = 0, current_write = 1;
  engine->displayAsync();
  std::size_t i = 0;
  for (; keepGoing(*engine, options, i); ++i) {
    engine->prepareViews();
    nbodyIntegrate(device, positions[current_read], positions[current_write], velocities,
                   params.dt, params.damping, params.softening_squared);
    std::swap(current_read, current_write);
    toggleVisibility(views[0]);
    toggleVisibility(views[1]);
    engine->updateViews();
  }
  auto final_buffer = readToHost(allocs[current_read], 0, allocs[current_read]->byteSize());
  return finish(*engine, i, {views[0]->id(), views[1]->id()}, std::move(final_buffer));
}

SampleReport runMesh(const MeshParams& params, const RunOptions& options) {
  Mesh mesh = loadObj(params.obj);
  const std::size_t vertex_count = mesh.vertices.size();
  const std::size_t index_count = mesh.triangles.size();
  auto engine = makeEngine(options, 0);
  Device& device = engine->device();

  auto vertices = allocLinear(*engine, sizeof(float3) * vertex_count);
  auto edges = allocLinear(*engine, sizeof(std::uint32_t) * index_count);

  ViewDescription desc;
  desc.view_type = ViewType::Markers;
  desc.domain = DomainType::Domain3D;
  desc.element_count = vertex_count;
  desc.properties[PropertyType::Position] =
      PropertyDescription{vertices.handle, vertex_count, FormatDescription::make<float3>(), std::nullopt};
  desc.default_size = params.point_size;
  desc.default_color = {1.0f, 0.85f, 0.3f, 1};
  desc.linewidth = 0;
  auto v1 = createView(*engine, desc);

  // same vertices, indexed by the triangle list
  desc.view_type = ViewType::Edges;
  desc.element_count = index_count;
  desc.default_color = {0.4f, 0.6f, 0.9f, 1};
  desc.linewidth = 1;
  desc.properties[PropertyType::Position].indices =
      IndexDescription{edges.handle, index_count, sizeof(std::uint32_t)};
  auto v2 = createView(*engine, desc);

  auto normal_buffer = device.allocate(sizeof(float3) * vertex_count, MemoryCategory::Plain);
  std::span<float3> normals{reinterpret_cast<float3*>(normal_buffer->data()), vertex_count};
  std::copy(mesh.normals.begin(), mesh.normals.end(), normals.begin());
  writeFromHost<float3>(vertices.handle, mesh.vertices);
  writeFromHost<std::uint32_t>(edges.handle, mesh.triangles);

  std::span<float3> coords{vertices.as<float3>(), vertex_count};
  float degrees = 0;
  float scale = 0;
  engine->displayAsync();
  std::size_t i = 0;
  for (; keepGoing(*engine, options, i); ++i) {
    engine->prepareViews();
    breatheDeform(device, mesh.rest_positions, normals, scale, coords);
    scale = varyAngle(degrees, params.amplitude, params.step_degrees);
    engine->updateViews();
  }
  auto final_buffer = readToHost(vertices.handle, 0, vertices.handle->byteSize());
  return finish(*engine, i, {v1->id(), v2->id()}, std::move(final_buffer));
}

std::size_t countPingPongViolations(const std::vector<FrameStats>& frames, std::uint64_t a,
                                    std::uint64_t b) {
  std::size_t violations = 0;
  for (const auto& f : frames) {
    const auto has = [&](std::uint64_t id) {
      return std::find(f.visible_views.begin(), f.visible_views.end(), id) != f.visible_views.end();
    };
    if (has(a) == has(b)) ++violations;
  }
  return violations;
}

}  // namespace vizlink::samples

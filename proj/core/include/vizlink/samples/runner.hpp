#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "vizlink/engine.hpp"
#include "vizlink/samples/mesh.hpp"
#include "vizlink/samples/nbody.hpp"
#include "vizlink/samples/potts.hpp"

// End-to-end sample programs: engine setup, views, and the
// prepareViews / kernels / updateViews loop.
namespace vizlink::samples {

struct RunOptions {
  int width = 1024;
  int height = 1024;
  bool headless = true;
  double target_fps = 0;
  /// Loop bound; 0 runs until the window closes (not allowed headless).
  std::size_t iterations = 100;
  std::optional<std::size_t> device_index;
  std::filesystem::path frame_output;
  /// Replaces the surface created from the options (tests inject one).
  std::function<std::unique_ptr<Surface>()> surface_factory;
};

struct SampleReport {
  std::size_t iterations_completed = 0;
  SyncCounters counters;
  std::vector<FrameStats> frames;
  std::vector<std::uint64_t> view_ids;
  /// Contents of the visualized shared buffer after the last iteration.
  std::vector<std::byte> final_buffer;
  /// Registry state after the instance was destroyed.
  RegistryCounters registry;
};

/// Potts lattice drawn as 2D voxels colored through the grid-indexed colormap.
SampleReport runPotts(const PottsParams& params, const RunOptions& options);

/// Gravitational N-body with two marker views over the ping-pong buffers;
/// view_ids holds {read view, write view} at start.
SampleReport runNBody(const NBodyParams& params, const RunOptions& options);

struct MeshParams {
  std::filesystem::path obj;
  float amplitude = 0.05f;
  float step_degrees = 1;
  float point_size = 3;
};

/// Mesh vertices as markers plus an indexed wireframe, breathing along the
/// vertex normals.
SampleReport runMesh(const MeshParams& params, const RunOptions& options);

/// Frames whose visible set does not contain exactly one of `a`, `b`.
std::size_t countPingPongViolations(const std::vector<FrameStats>& frames, std::uint64_t a,
                                    std::uint64_t b);

}  // namespace vizlink::samples

#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "vizlink/device.hpp"
#include "vizlink/vector_types.hpp"

namespace vizlink::samples {

struct Mesh {
  std::vector<float3> vertices;
  std::vector<std::uint32_t> triangles;  // 3 indices per triangle
  std::vector<float3> normals;
  std::vector<float3> rest_positions;

  std::size_t triangleCount() const { return triangles.size() / 3; }
};

/// Reads `v` and `f` records of a Wavefront OBJ file. Face indices are
/// 1-based or negative (relative to the end), `a/b/c` forms use the vertex
/// index, and polygons are fan-triangulated from their first vertex. Fills
/// normals and rest positions. Throws IoError, ParseError (with the line
/// number) or EmptyMesh.
Mesh loadObj(const std::filesystem::path& path);
/// Same, from text already in memory; `name` labels diagnostics.
Mesh parseObj(std::string_view text, std::string_view name = "<memory>");

/// Area-weighted vertex normals. Vertices whose face normals cancel (or that
/// no face uses) get (0, 0, 1).
std::vector<float3> computeSmoothNormals(std::span<const float3> vertices,
                                         std::span<const std::uint32_t> triangles);

/// out_i = rest_i + scale * normal_i.
void breatheDeform(std::span<const float3> rest, std::span<const float3> normals, float scale,
                   std::span<float3> out);
void breatheDeform(const Device& device, std::span<const float3> rest,
                   std::span<const float3> normals, float scale, std::span<float3> out);

/// Advances `degrees` by `step` (kept in [0, 360)) and returns
/// amplitude * sin(radians(degrees)).
float varyAngle(float& degrees, float amplitude, float step = 1.0f);

}  // namespace vizlink::samples

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <optional>

#include "vizlink/error.hpp"
#include "vizlink/samples/mesh.hpp"

using namespace vizlink;
using namespace vizlink::samples;

namespace {

const std::filesystem::path kAssets{VIZLINK_TEST_ASSETS};

std::optional<Errc> errcOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

std::string messageOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

float length(float3 v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

}  // namespace

TEST(Obj, SingleTriangle) {
  const Mesh m = parseObj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  EXPECT_EQ(m.vertices.size(), 3u);
  EXPECT_EQ(m.triangleCount(), 1u);
  EXPECT_EQ(m.triangles, (std::vector<std::uint32_t>{0, 1, 2}));
  for (const auto& n : m.normals) {
    EXPECT_FLOAT_EQ(n.x, 0);
    EXPECT_FLOAT_EQ(n.y, 0);
    EXPECT_FLOAT_EQ(n.z, 1);
  }
  EXPECT_EQ(m.rest_positions[1].x, 1);
}

TEST(Obj, QuadIsFanTriangulated) {
  const Mesh m = parseObj("v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1 2 3 4\n");
  EXPECT_EQ(m.triangles, (std::vector<std::uint32_t>{0, 1, 2, 0, 2, 3}));
}

TEST(Obj, OutOfRangeIndexNamesTheLine) {
  const auto bad = [] { parseObj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 5\n", "tri.obj"); };
  EXPECT_EQ(errcOf(bad), Errc::ParseError);
  EXPECT_NE(messageOf(bad).find("tri.obj:4"), std::string::npos);
}

TEST(Obj, SlashAndNegativeIndices) {
  const Mesh m = parseObj(
      "# comment\r\nv 0 0 0\r\nv 1 0 0\r\nvn 0 0 1\r\nv 0 1 0\r\nf 1/1/1 2//1 -1\r\n");
  EXPECT_EQ(m.triangles, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(Obj, Failures) {
  EXPECT_EQ(errcOf([] { parseObj("v 0 0 0\n"); }), Errc::EmptyMesh);
  EXPECT_EQ(errcOf([] { parseObj(""); }), Errc::EmptyMesh);
  EXPECT_EQ(errcOf([] { parseObj("v 0 x 0\n"); }), Errc::ParseError);
  EXPECT_EQ(errcOf([] { parseObj("v 0 0 0\nv 1 0 0\nf 1 2\n"); }), Errc::ParseError);
  EXPECT_EQ(errcOf([] { parseObj("v 0 0 0\nv 1 0 0\nv 0 1 0\nf 0 1 2\n"); }), Errc::ParseError);
  EXPECT_EQ(errcOf([] { loadObj(kAssets / "meshes" / "missing.obj"); }), Errc::IoError);
}

TEST(Normals, CubeCornersPointDiagonally) {
  // Outward-wound quads, each started so its split diagonal joins two corners
  // with an even number of + coordinates. Every corner then carries the same
  // triangle count on each of its three faces and the weighted sum is diagonal.
  const Mesh m = parseObj(
      "v -1 -1 -1\nv 1 -1 -1\nv 1 1 -1\nv -1 1 -1\n"
      "v -1 -1 1\nv 1 -1 1\nv 1 1 1\nv -1 1 1\n"
      "f 1 4 3 2\nf 6 7 8 5\nf 1 2 6 5\nf 8 7 3 4\nf 1 5 8 4\nf 3 7 6 2\n");
  ASSERT_EQ(m.triangleCount(), 12u);
  const float k = 1.0f / std::sqrt(3.0f);
  for (std::size_t i = 0; i < m.vertices.size(); ++i) {
    const float3 v = m.vertices[i], n = m.normals[i];
    EXPECT_NEAR(n.x, k * v.x, 1e-6f) << i;
    EXPECT_NEAR(n.y, k * v.y, 1e-6f) << i;
    EXPECT_NEAR(n.z, k * v.z, 1e-6f) << i;
  }
}

TEST(Normals, UnusedVertexGetsTheFallback) {
  const std::vector<float3> v{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {5, 5, 5}};
  const std::vector<std::uint32_t> t{0, 2, 1};
  const auto n = computeSmoothNormals(v, t);
  EXPECT_FLOAT_EQ(n[0].z, -1);
  EXPECT_FLOAT_EQ(n[3].z, 1);
}

TEST(Normals, BundledMeshesAreClosedAndOutward) {
  for (const char* name : {"icosphere.obj", "torus.obj"}) {
    const Mesh m = loadObj(kAssets / "meshes" / name);
    ASSERT_GT(m.triangleCount(), 100u) << name;
    for (const auto& n : m.normals) EXPECT_NEAR(length(n), 1.0f, 1e-5f) << name;
  }
  // the sphere is centred at the origin, so outward means along the position
  const Mesh sphere = loadObj(kAssets / "meshes" / "icosphere.obj");
  for (std::size_t i = 0; i < sphere.vertices.size(); ++i) {
    const float3 p = sphere.vertices[i], n = sphere.normals[i];
    EXPECT_GT((p.x * n.x + p.y * n.y + p.z * n.z) / length(p), 0.95f) << i;
  }
}

TEST(Breathe, ZeroScaleIsIdentityAndScalesLinearly) {
  const Mesh m = loadObj(kAssets / "meshes" / "icosphere.obj");
  const Device device = openDevice();
  std::vector<float3> out(m.vertices.size()), plus(m.vertices.size()), minus(m.vertices.size());
  breatheDeform(device, m.rest_positions, m.normals, 0, out);
  EXPECT_EQ(std::memcmp(out.data(), m.rest_positions.data(), out.size() * sizeof(float3)), 0);
  breatheDeform(device, m.rest_positions, m.normals, 0.25f, plus);
  breatheDeform(m.rest_positions, m.normals, -0.25f, minus);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_NEAR(plus[i].x + minus[i].x, 2 * m.rest_positions[i].x, 1e-6f);
    EXPECT_NEAR(plus[i].y - m.rest_positions[i].y, 0.25f * m.normals[i].y, 1e-6f);
  }
}

TEST(Breathe, AngleIsPeriodic) {
  float degrees = 0;
  const float first = varyAngle(degrees, 0.05f, 1);
  EXPECT_FLOAT_EQ(degrees, 1);
  EXPECT_NEAR(first, 0.05f * std::sin(3.14159265f / 180), 1e-8f);
  for (int i = 1; i < 360; ++i) varyAngle(degrees, 0.05f, 1);
  EXPECT_NEAR(degrees, 0, 1e-3f);
  EXPECT_NEAR(varyAngle(degrees, 0.05f, 1), first, 1e-6f);
  degrees = 0;
  EXPECT_NEAR(varyAngle(degrees, 2, 90), 2, 1e-6f);
  EXPECT_NEAR(varyAngle(degrees, 2, 180), -2, 1e-5f);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "vizlink/error.hpp"
#include "vizlink/marker_math.hpp"

using namespace vizlink;

TEST(MarkerMath, DiscDistances) {
  EXPECT_EQ(markerSDF(MarkerShape::Disc, {0, 0}, 10), -10);
  EXPECT_EQ(markerSDF(MarkerShape::Disc, {10, 0}, 10), 0);
  EXPECT_FLOAT_EQ(markerSDF(MarkerShape::Disc, {3, 4}, 2), 3);
}

TEST(MarkerMath, DiamondZeroSetMatchesPolygon) {
  // boundary through (5, 5): |x| + |y| = 10
  EXPECT_NEAR(markerSDF(MarkerShape::Diamond, {5, 5}, 10), 0, 1e-6);
  // Euclidean distance to the face x + y = 10 from (10, 10) is 10 / sqrt(2)
  EXPECT_NEAR(markerSDF(MarkerShape::Diamond, {10, 10}, 10), 10 / std::sqrt(2.0f), 1e-5);
  std::mt19937 gen(4);
  std::uniform_real_distribution<float> u(-15, 15);
  for (int i = 0; i < 2000; ++i) {
    const float x = u(gen), y = u(gen);
    const bool inside = std::abs(x) + std::abs(y) < 10;
    const float d = markerSDF(MarkerShape::Diamond, {x, y}, 10);
    if (std::abs(std::abs(x) + std::abs(y) - 10) > 1e-3f) ASSERT_EQ(d < 0, inside) << x << "," << y;
  }
}

TEST(MarkerMath, ArrowPointsAlongPlusX) {
  const float r = 8;
  EXPECT_LT(markerSDF(MarkerShape::Arrow, {0, 0}, r), 0);
  EXPECT_LT(markerSDF(MarkerShape::Arrow, {0.9f * r, 0}, r), 0);
  EXPECT_GT(markerSDF(MarkerShape::Arrow, {1.2f * r, 0}, r), 0);
  EXPECT_GT(markerSDF(MarkerShape::Arrow, {0, 1.5f * r}, r), 0);
  // mirror symmetric about the shaft axis
  EXPECT_FLOAT_EQ(markerSDF(MarkerShape::Arrow, {1, 3}, r), markerSDF(MarkerShape::Arrow, {1, -3}, r));
}

TEST(MarkerMath, SdfIsOneLipschitz) {
  std::mt19937 gen(11);
  std::uniform_real_distribution<float> u(-40, 40);
  for (MarkerShape shape : {MarkerShape::Disc, MarkerShape::Diamond}) {
    for (int i = 0; i < 10'000; ++i) {
      const float2 p{u(gen), u(gen)}, q{u(gen), u(gen)};
      const float dist = std::hypot(p.x - q.x, p.y - q.y);
      const float diff = std::abs(markerSDF(shape, p, 12) - markerSDF(shape, q, 12));
      ASSERT_LE(diff, dist * (1 + 1e-5f) + 1e-4f);
    }
  }
}

TEST(MarkerMath, FilledCoverage) {
  const MarkerStyleParams filled{MarkerShape::Disc, MarkerStyle::Filled, 0, 1};
  EXPECT_EQ(markerCoverage(-5, filled).alpha(), 1.0f);
  EXPECT_EQ(markerCoverage(5, filled).alpha(), 0.0f);
  EXPECT_EQ(markerCoverage(0, filled).alpha(), 0.5f);
  EXPECT_EQ(markerCoverage(-0.5f, filled).alpha(), 1.0f);
  EXPECT_EQ(markerCoverage(0.5f, filled).alpha(), 0.0f);
  float previous = 2;
  for (float s = -3; s <= 3; s += 0.001f) {
    const float a = markerCoverage(s, filled).alpha();
    ASSERT_LE(a, previous);
    ASSERT_GE(a, 0);
    ASSERT_LE(a, 1);
    previous = a;
  }
}

TEST(MarkerMath, StrokedAndOutlined) {
  const MarkerStyleParams stroked{MarkerShape::Disc, MarkerStyle::Stroked, 2, 1};
  EXPECT_EQ(markerCoverage(0, stroked).stroke, 1.0f);
  EXPECT_EQ(markerCoverage(0, stroked).fill, 0.0f);
  EXPECT_EQ(markerCoverage(-5, stroked).alpha(), 0.0f);
  EXPECT_EQ(markerCoverage(5, stroked).alpha(), 0.0f);
  EXPECT_EQ(markerCoverage(1, stroked).stroke, 0.5f);

  const MarkerStyleParams outlined{MarkerShape::Disc, MarkerStyle::Outlined, 2, 1};
  const MarkerCoverage deep = markerCoverage(-5, outlined);
  EXPECT_EQ(deep.fill, 1.0f);
  EXPECT_EQ(deep.stroke, 0.0f);
  const MarkerCoverage edge = markerCoverage(0, outlined);
  EXPECT_EQ(edge.stroke, 1.0f);
  EXPECT_EQ(edge.fill, 0.5f);
}

TEST(MarkerMath, StyleValidation) {
  EXPECT_THROW(validateMarkerStyle({MarkerShape::Disc, MarkerStyle::Stroked, 0, 1}), Error);
  EXPECT_THROW(validateMarkerStyle({MarkerShape::Disc, MarkerStyle::Filled, 0, 0}), Error);
  EXPECT_NO_THROW(validateMarkerStyle({MarkerShape::Disc, MarkerStyle::Outlined, 1, 1}));
}

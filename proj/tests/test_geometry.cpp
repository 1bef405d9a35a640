#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "polya/errors.hpp"
#include "polya/geometry.hpp"

using namespace polya;

TEST(ConvexPolygon, Area) {
  EXPECT_DOUBLE_EQ(polygon_area(rectangle(1.0, 1.0)), 1.0);
  const ConvexPolygond tri({Point2d(0, 0), Point2d(1, 0), Point2d(0, 1)});
  EXPECT_DOUBLE_EQ(polygon_area(tri), 0.5);
  EXPECT_NEAR(polygon_area(hexagon(1.0)), 2.598076211353316, 1e-14);
}

TEST(ConvexPolygon, RejectsInvalidInput) {
  EXPECT_THROW(ConvexPolygond({Point2d(0, 0), Point2d(1, 0)}), PreconditionError);
  EXPECT_THROW(ConvexPolygond({Point2d(0, 0), Point2d(0, 1), Point2d(1, 0)}), PreconditionError);
  EXPECT_THROW(ConvexPolygond({Point2d(0, 0), Point2d(2, 0), Point2d(0.5, 0.5), Point2d(0, 2)}), PreconditionError);
  EXPECT_THROW(ConvexPolygond({Point2d(0, 0), Point2d(1, 0), Point2d(1, 0), Point2d(0, 1)}), PreconditionError);
  EXPECT_THROW(ConvexPolygond({Point2d(0, 0), Point2d(NAN, 0), Point2d(0, 1)}), PreconditionError);
}

TEST(ConvexPolygon, AcceptsFinePolygonalCircle) {
  const ConvexPolygond disk = regular_polygon(4096, 1.0);
  EXPECT_NEAR(disk.area(), 4096 / 2.0 * std::sin(2 * std::numbers::pi / 4096), 1e-12);
}

TEST(ConvexPolygon, DerivedQuantities) {
  const ConvexPolygond r = rectangle(2.0, 1.0);
  EXPECT_DOUBLE_EQ(r.perimeter(), 6.0);
  EXPECT_DOUBLE_EQ(r.diameter(), std::sqrt(5.0));
  EXPECT_TRUE(r.centroid().isApprox(Point2d(1.0, 0.5)));
  EXPECT_DOUBLE_EQ(r.inner_distance(Point2d(0.3, 0.5)), 0.3);
  EXPECT_TRUE(r.normal(0).isApprox(Point2d(0, -1)));
}

TEST(Contains, BoundaryCountsAsInside) {
  const ConvexPolygond square = rectangle(1.0, 1.0);
  EXPECT_TRUE(contains(square, Point2d(0.5, 0.5)));
  EXPECT_FALSE(contains(square, Point2d(1.5, 0.5)));
  EXPECT_TRUE(contains(square, Point2d(1.0, 0.5)));
  EXPECT_TRUE(contains(square, Point2d(1.0 + 1e-14, 0.5)));
  EXPECT_FALSE(contains(square, Point2d(1.0 + 1e-9, 0.5)));
}

TEST(RayExitDistance, KnownDistances) {
  const ConvexPolygond square = rectangle(1.0, 1.0);
  EXPECT_NEAR(ray_exit_distance(square, Point2d(0.5, 0.5), Point2d(1, 0)), 0.5, 1e-15);
  EXPECT_NEAR(ray_exit_distance(square, Point2d(0.5, 0.5), Point2d(1, 1).normalized()), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(ray_exit_distance(hexagon(1.0), Point2d(0, 0), Point2d(1, 0)), std::sqrt(3.0) / 2, 1e-15);
}

TEST(RayExitDistance, Errors) {
  const ConvexPolygond square = rectangle(1.0, 1.0);
  EXPECT_THROW(ray_exit_distance(square, Point2d(2, 2), Point2d(1, 0)), DomainError);
  EXPECT_THROW(ray_exit_distance(square, Point2d(0.5, 0.5), Point2d(2, 0)), PreconditionError);
}

TEST(RadialCap, DiskInside) {
  const RadialCap<double> cap = radial_cap(rectangle(1.0, 1.0), Point2d(0.5, 0.5), 0.25, 64);
  EXPECT_EQ(cap.radii.size(), 64);
  EXPECT_TRUE((cap.radii.array() == 0.25).all());
}

TEST(RadialCap, SaturatesAtBoundary) {
  const RadialCap<double> cap = radial_cap(rectangle(1.0, 1.0), Point2d(0.5, 0.5), 10.0, 64);
  EXPECT_NEAR(cap.radii.maxCoeff(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(cap.radii.minCoeff(), 0.5, 1e-15);
}

TEST(RadialCap, ClippedByLeftEdge) {
  const RadialCap<double> cap = radial_cap(rectangle(1.0, 1.0), Point2d(0.1, 0.5), 0.3, 64);
  EXPECT_NEAR(cap.radii[32], 0.1, 1e-15);  // omega = pi
  EXPECT_EQ(cap.radii[0], 0.3);
  EXPECT_TRUE((cap.radii.array() > 0.0).all());
  EXPECT_TRUE((cap.radii.array() <= 0.3).all());
  EXPECT_THROW(radial_cap(rectangle(1.0, 1.0), Point2d(0.1, 0.5), 0.3, 4), PreconditionError);
}

// Points of B_r(x) inside the polygon are exactly those below the radial function.
TEST(RadialCap, MonteCarloMembershipAgreement) {
  const ConvexPolygond p = hexagon(1.0);
  const Point2d center(0.55, 0.2);
  const double r = 0.6;
  const int n_angles = 512;
  const RadialCap<double> cap = radial_cap(p, center, r, n_angles);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int agree = 0;
  int total = 0;
  while (total < 10000) {
    const Point2d offset(r * u(rng), r * u(rng));
    if (offset.norm() >= r) continue;
    ++total;
    const double angle = std::atan2(offset.y(), offset.x());
    const double wrapped = angle < 0 ? angle + 2 * std::numbers::pi : angle;
    const int i = static_cast<int>(std::lround(wrapped / (2 * std::numbers::pi) * n_angles)) % n_angles;
    const bool by_cap = offset.norm() < cap.radii[i];
    if (by_cap == contains(p, Point2d(center + offset))) ++agree;
  }
  EXPECT_GE(agree, 9990);
}

TEST(Hull, IdempotentUnderPermutation) {
  std::vector<Point2d> pts = hexagon(1.0).vertices();
  pts.push_back(Point2d(0.1, 0.2));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(pts.begin(), pts.end(), rng);
    const ConvexPolygond hull = ConvexPolygond::hull_of(pts);
    EXPECT_EQ(hull.size(), 6u);
    EXPECT_NEAR(polygon_area(hull), polygon_area(hexagon(1.0)), 1e-14);
    EXPECT_NEAR(polygon_area(ConvexPolygond::hull_of(hull.vertices())), polygon_area(hull), 1e-15);
  }
}

TEST(ConvexPolygon, Translation) {
  const ConvexPolygond moved = hexagon(1.0).translated(Point2d(3, -2));
  EXPECT_NEAR(moved.area(), hexagon(1.0).area(), 1e-14);
  EXPECT_TRUE(moved.centroid().isApprox(Point2d(3, -2), 1e-14));
}

TEST(ConvexPolygon, LongDoubleInstantiation) {
  const ConvexPolygon<long double> p = rectangle<long double>(1.0L, 2.0L);
  EXPECT_EQ(polygon_area(p), 2.0L);
}

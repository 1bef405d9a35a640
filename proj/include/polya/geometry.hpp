#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "polya/errors.hpp"

namespace polya {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;
using Point2d = Point2<double>;

template <typename Scalar>
using Box2 = Eigen::AlignedBox<Scalar, 2>;

template <typename Scalar>
Scalar cross2(const Point2<Scalar>& a, const Point2<Scalar>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Convex polygon with counterclockwise vertices.
///
/// Construction validates: at least three vertices, no repeated vertices, positive
/// signed area, and no reflex turn beyond the collinearity tolerance (1e-12, relative
/// to the adjacent edge lengths). Nearly collinear vertices are allowed so that fine
/// polygonal approximations of smooth convex curves are representable.
template <typename Scalar>
class ConvexPolygon {
 public:
  using Point = Point2<Scalar>;
  static constexpr Scalar kCollinearTolerance = Scalar(1e-12);
  static constexpr Scalar kBoundaryTolerance = Scalar(1e-12);

  explicit ConvexPolygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
    const std::size_t n = vertices_.size();
    if (n < 3) throw PreconditionError("ConvexPolygon: need at least 3 vertices");
    for (const Point& v : vertices_) {
      if (!v.allFinite()) throw PreconditionError("ConvexPolygon: non-finite vertex");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if ((vertices_[i] - vertices_[j]).norm() == Scalar(0)) {
          throw PreconditionError("ConvexPolygon: repeated vertex " + std::to_string(i));
        }
      }
    }
    Scalar twice_area(0);
    for (std::size_t i = 0; i < n; ++i) twice_area += cross2(vertex(i), vertex(i + 1));
    if (!(twice_area > Scalar(0))) {
      throw PreconditionError("ConvexPolygon: vertices must be counterclockwise with positive area");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Point e1 = vertex(i + 1) - vertex(i);
      const Point e2 = vertex(i + 2) - vertex(i + 1);
      if (cross2(e1, e2) < -kCollinearTolerance * e1.norm() * e2.norm()) {
        throw PreconditionError("ConvexPolygon: reflex vertex " + std::to_string((i + 1) % n));
      }
    }
    area_ = twice_area / Scalar(2);
    // Outward normals and offsets: the polygon is {y : normal_i . y <= offset_i for all i}.
    normals_.reserve(n);
    offsets_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Point e = vertex(i + 1) - vertex(i);
      const Point normal = Point(e.y(), -e.x()) / e.norm();
      normals_.push_back(normal);
      offsets_.push_back(normal.dot(vertex(i)));
    }
  }

  /// Convex hull of an arbitrary point set (Andrew's monotone chain, collinear points dropped).
  static ConvexPolygon hull_of(std::vector<Point> points) {
    std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) {
      return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) throw PreconditionError("hull_of: fewer than 3 distinct points");
    std::vector<Point> hull(2 * points.size());
    std::size_t k = 0;
    const auto turn = [](const Point& o, const Point& a, const Point& b) {
      return cross2<Scalar>(a - o, b - o);
    };
    for (const Point& p : points) {
      while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= Scalar(0)) --k;
      hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
      while (k >= lower && turn(hull[k - 2], hull[k - 1], points[i]) <= Scalar(0)) --k;
      hull[k++] = points[i];
    }
    hull.resize(k - 1);
    return ConvexPolygon(std::move(hull));
  }

  std::size_t size() const { return vertices_.size(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  /// Vertex with cyclic indexing.
  const Point& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }
  const Point& normal(std::size_t i) const { return normals_[i]; }
  Scalar offset(std::size_t i) const { return offsets_[i]; }
  Scalar area() const { return area_; }

  Box2<Scalar> bounding_box() const {
    Box2<Scalar> box;
    for (const Point& v : vertices_) box.extend(v);
    return box;
  }

  Scalar diameter() const {
    Scalar best(0);
    for (const Point& a : vertices_) {
      for (const Point& b : vertices_) best = std::max(best, (a - b).norm());
    }
    return best;
  }

  Scalar perimeter() const {
    Scalar total(0);
    for (std::size_t i = 0; i < size(); ++i) total += (vertex(i + 1) - vertex(i)).norm();
    return total;
  }

  Point centroid() const {
    Point c = Point::Zero();
    for (std::size_t i = 0; i < size(); ++i) {
      const Scalar w = cross2(vertex(i), vertex(i + 1));
      c += w * (vertex(i) + vertex(i + 1));
    }
    return c / (Scalar(6) * area_);
  }

  /// Signed distance to the boundary, positive inside.
  Scalar inner_distance(const Point& x) const {
    Scalar best = offsets_[0] - normals_[0].dot(x);
    for (std::size_t i = 1; i < size(); ++i) best = std::min(best, offsets_[i] - normals_[i].dot(x));
    return best;
  }

  ConvexPolygon translated(const Point& shift) const {
    std::vector<Point> moved = vertices_;
    for (Point& v : moved) v += shift;
    return ConvexPolygon(std::move(moved));
  }

 private:
  std::vector<Point> vertices_;
  std::vector<Point> normals_;
  std::vector<Scalar> offsets_;
  Scalar area_{0};
};

using ConvexPolygond = ConvexPolygon<double>;

/// Shoelace area.
template <typename Scalar>
Scalar polygon_area(const ConvexPolygon<Scalar>& p) {
  return p.area();
}

/// Half-plane test; points within 1e-12 of the boundary count as inside.
template <typename Scalar>
bool contains(const ConvexPolygon<Scalar>& p, const Point2<Scalar>& x) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.normal(i).dot(x) - p.offset(i) > ConvexPolygon<Scalar>::kBoundaryTolerance) return false;
  }
  return true;
}

/// Distance from x along the unit direction omega to the boundary.
///
/// Minimum over edges facing the ray of the half-plane hit distance. Zero when x sits on
/// the boundary and omega points outward.
template <typename Scalar>
Scalar ray_exit_distance(const ConvexPolygon<Scalar>& p, const Point2<Scalar>& x,
                         const Point2<Scalar>& omega) {
  if (!contains(p, x)) throw DomainError("ray_exit_distance: point outside the polygon");
  if (std::abs(omega.norm() - Scalar(1)) > Scalar(1e-12)) {
    throw PreconditionError("ray_exit_distance: direction must be a unit vector");
  }
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Scalar facing = p.normal(i).dot(omega);
    if (facing <= Scalar(0)) continue;
    const Scalar gap = std::max(Scalar(0), p.offset(i) - p.normal(i).dot(x));
    best = std::min(best, gap / facing);
  }
  return best;
}

template <typename Scalar>
Point2<Scalar> unit_direction(Scalar angle) {
  return Point2<Scalar>(std::cos(angle), std::sin(angle));
}

/// Radial function of B_r(center) intersected with the polygon, sampled on a uniform angle grid.
template <typename Scalar>
struct RadialCap {
  Point2<Scalar> center;
  Scalar r;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> angles;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> radii;
};

/// R(omega_i) = min(r, ray_exit_distance) at omega_i = 2 pi i / n_angles.
template <typename Scalar>
RadialCap<Scalar> radial_cap(const ConvexPolygon<Scalar>& p, const Point2<Scalar>& center,
                             Scalar r, int n_angles) {
  if (!(r > Scalar(0))) throw PreconditionError("radial_cap: r must be positive");
  if (n_angles < 8) throw PreconditionError("radial_cap: n_angles must be at least 8");
  if (!contains(p, center)) throw DomainError("radial_cap: center outside the polygon");
  RadialCap<Scalar> cap{center, r, {}, {}};
  cap.angles.resize(n_angles);
  cap.radii.resize(n_angles);
  for (int i = 0; i < n_angles; ++i) {
    const Scalar angle = Scalar(2) * std::numbers::pi_v<Scalar> * i / n_angles;
    cap.angles[i] = angle;
    cap.radii[i] = std::min(r, ray_exit_distance(p, center, unit_direction(angle)));
  }
  return cap;
}

/// Axis-aligned rectangle [0, width] x [0, height].
template <typename Scalar = double>
ConvexPolygon<Scalar> rectangle(Scalar width, Scalar height) {
  using P = Point2<Scalar>;
  return ConvexPolygon<Scalar>({P(0, 0), P(width, 0), P(width, height), P(0, height)});
}

/// Regular n-gon with the given circumradius; the first vertex sits at angle `phase`.
template <typename Scalar = double>
ConvexPolygon<Scalar> regular_polygon(int n, Scalar circumradius,
                                      const Point2<Scalar>& center = Point2<Scalar>::Zero(),
                                      Scalar phase = Scalar(0)) {
  std::vector<Point2<Scalar>> vertices;
  vertices.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    vertices.push_back(center + circumradius *
                                    unit_direction(phase + Scalar(2) * std::numbers::pi_v<Scalar> * i / n));
  }
  return ConvexPolygon<Scalar>(std::move(vertices));
}

/// Regular hexagon with the given side length, centred at the origin, flat sides facing +-x.
template <typename Scalar = double>
ConvexPolygon<Scalar> hexagon(Scalar side) {
  return regular_polygon<Scalar>(6, side, Point2<Scalar>::Zero(), std::numbers::pi_v<Scalar> / 6);
}

}  // namespace polya

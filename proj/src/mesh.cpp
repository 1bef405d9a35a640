#include "polya/mesh.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "polya/errors.hpp"
#include "polya/format.hpp"

namespace polya {
namespace {

struct PointSet {
  std::vector<Point2d> points;
  std::vector<bool> boundary;
};

PointSet seed_points(const ConvexPolygond& p, double h) {
  PointSet set;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Point2d a = p.vertex(i);
    const Point2d e = p.vertex(i + 1) - a;
    const int segments = std::max(1, static_cast<int>(std::ceil(e.norm() / h - 1e-9)));
    for (int k = 0; k < segments; ++k) {
      set.points.push_back(a + (static_cast<double>(k) / segments) * e);
      set.boundary.push_back(true);
    }
  }
  const Box2<double> box = p.bounding_box();
  const double row = 0.5 * std::sqrt(3.0) * h;
  const int rows = static_cast<int>(std::ceil(box.sizes().y() / row)) + 1;
  const int cols = static_cast<int>(std::ceil(box.sizes().x() / h)) + 2;
  for (int j = 0; j < rows; ++j) {
    const double y = box.min().y() + j * row;
    const double x0 = box.min().x() + (j % 2 == 0 ? 0.0 : 0.5 * h) - h;
    // Alternate sweep direction so consecutive insertions stay spatially close.
    for (int c = 0; c < cols; ++c) {
      const int i = j % 2 == 0 ? c : cols - 1 - c;
      const Point2d x(x0 + i * h, y);
      if (p.inner_distance(x) >= 0.5 * h) {
        set.points.push_back(x);
        set.boundary.push_back(false);
      }
    }
  }
  return set;
}

VertexMatrix to_matrix(const std::vector<Point2d>& points) {
  VertexMatrix m(static_cast<Eigen::Index>(points.size()), 2);
  for (std::size_t i = 0; i < points.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = points[i].transpose();
  return m;
}

double signed_area(const VertexMatrix& v, int a, int b, int c) {
  const Point2d pa = v.row(a).transpose();
  return 0.5 * cross2<double>(v.row(b).transpose() - pa, v.row(c).transpose() - pa);
}

// Drop zero-area triangles that a Delaunay pass can leave along straight boundary runs.
TriangleIndices drop_flat(const VertexMatrix& v, const TriangleIndices& t, double h) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    if (signed_area(v, t(i, 0), t(i, 1), t(i, 2)) > 1e-12 * h * h) keep.push_back(i);
  }
  TriangleIndices out(static_cast<Eigen::Index>(keep.size()), 3);
  for (std::size_t k = 0; k < keep.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = t.row(keep[k]);
  return out;
}

void lloyd_step(PointSet& set, const VertexMatrix& v, const TriangleIndices& t) {
  const std::size_t n = set.points.size();
  std::vector<Point2d> weighted(n, Point2d::Zero());
  std::vector<double> mass(n, 0.0);
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    const double area = signed_area(v, t(i, 0), t(i, 1), t(i, 2));
    const Point2d centroid = (v.row(t(i, 0)) + v.row(t(i, 1)) + v.row(t(i, 2))).transpose() / 3.0;
    for (int k = 0; k < 3; ++k) {
      const auto idx = static_cast<std::size_t>(t(i, k));
      weighted[idx] += area * centroid;
      mass[idx] += area;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!set.boundary[i] && mass[i] > 0.0) set.points[i] = weighted[i] / mass[i];
  }
}

}  // namespace

MeshQuality mesh_quality(const TriangleMesh& mesh) {
  MeshQuality q{180.0, 0.0, 0.0, std::numeric_limits<double>::infinity()};
  const auto& v = mesh.vertices;
  for (Eigen::Index i = 0; i < mesh.triangles.rows(); ++i) {
    const std::array<Point2d, 3> c = {v.row(mesh.triangles(i, 0)).transpose(),
                                      v.row(mesh.triangles(i, 1)).transpose(),
                                      v.row(mesh.triangles(i, 2)).transpose()};
    const double area = 0.5 * cross2<double>(c[1] - c[0], c[2] - c[0]);
    q.area += area;
    q.min_signed_area = std::min(q.min_signed_area, area);
    for (int k = 0; k < 3; ++k) {
      const Point2d e1 = c[static_cast<std::size_t>((k + 1) % 3)] - c[static_cast<std::size_t>(k)];
      const Point2d e2 = c[static_cast<std::size_t>((k + 2) % 3)] - c[static_cast<std::size_t>(k)];
      q.max_edge = std::max(q.max_edge, e1.norm());
      const double angle = std::atan2(std::abs(cross2<double>(e1, e2)), e1.dot(e2));
      q.min_angle_deg = std::min(q.min_angle_deg, angle * 180.0 / std::numbers::pi);
    }
  }
  return q;
}

TriangleMesh mesh_polygon(const ConvexPolygond& p, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw PreconditionError("mesh_polygon: h must be positive");
  if (p.area() < h * h) throw MeshError("mesh_polygon: polygon area below h^2");

  PointSet set = seed_points(p, h);
  VertexMatrix v = to_matrix(set.points);
  TriangleIndices t = drop_flat(v, delaunay_triangulate(v), h);
  lloyd_step(set, v, t);
  v = to_matrix(set.points);
  t = drop_flat(v, delaunay_triangulate(v), h);

  TriangleMesh mesh{v, t, h, {}};
  mesh.on_boundary.resize(v.rows());
  for (std::size_t i = 0; i < set.boundary.size(); ++i) mesh.on_boundary[static_cast<Eigen::Index>(i)] = set.boundary[i];

  const MeshQuality q = mesh_quality(mesh);
  if (!(q.min_signed_area > 0.0)) throw MeshError("mesh_polygon: inverted or flat triangle");
  if (std::abs(q.area - p.area()) > 1e-9 * p.area()) {
    throw MeshError("mesh_polygon: triangulated area " + std::to_string(q.area) +
                    " does not match polygon area " + std::to_string(p.area()));
  }
  if (q.min_angle_deg < 15.0) {
    throw MeshError("mesh_polygon: minimum angle " + std::to_string(q.min_angle_deg) +
                    " degrees below 15");
  }
  return mesh;
}

void write_off(const TriangleMesh& mesh, std::ostream& out) {
  out << "OFF\n" << mesh.vertices.rows() << ' ' << mesh.triangles.rows() << " 0\n";
  for (Eigen::Index i = 0; i < mesh.vertices.rows(); ++i) {
    out << format_real(mesh.vertices(i, 0)) << ' ' << format_real(mesh.vertices(i, 1)) << " 0\n";
  }
  for (Eigen::Index i = 0; i < mesh.triangles.rows(); ++i) {
    out << "3 " << mesh.triangles(i, 0) << ' ' << mesh.triangles(i, 1) << ' ' << mesh.triangles(i, 2) << '\n';
  }
}

}  // namespace polya

#pragma once

#include <Eigen/Core>
#include <iosfwd>

#include "polya/geometry.hpp"

namespace polya {

using VertexMatrix = Eigen::Matrix<double, Eigen::Dynamic, 2, Eigen::RowMajor>;
using TriangleIndices = Eigen::Matrix<int, Eigen::Dynamic, 3, Eigen::RowMajor>;

/// Delaunay triangulation (Bowyer-Watson) of a point set; triangles are counterclockwise.
TriangleIndices delaunay_triangulate(const VertexMatrix& points);

struct TriangleMesh {
  VertexMatrix vertices;
  TriangleIndices triangles;
  double h = 0.0;  ///< target edge length
  Eigen::Matrix<bool, Eigen::Dynamic, 1> on_boundary;
};

struct MeshQuality {
  double min_angle_deg;
  double max_edge;
  double area;
  double min_signed_area;
};

MeshQuality mesh_quality(const TriangleMesh& mesh);

/// Conforming triangulation of a convex polygon with target edge length h.
///
/// Boundary vertices subdivide each edge at spacing <= h; interior vertices come from a
/// triangular grid of spacing h kept at least h/2 away from the boundary. After a Delaunay
/// pass the interior vertices take one Lloyd-type smoothing step (area-weighted centroid of
/// the incident triangles) and the point set is re-triangulated.
/// Throws MeshError when the polygon area is below h^2 or the result fails validation
/// (inverted triangles, area mismatch, minimum angle below 15 degrees).
TriangleMesh mesh_polygon(const ConvexPolygond& p, double h);

/// OFF-style text: "OFF", "<vertices> <triangles> 0", vertex lines "x y 0", face lines "3 i j k".
void write_off(const TriangleMesh& mesh, std::ostream& out);

}  // namespace polya

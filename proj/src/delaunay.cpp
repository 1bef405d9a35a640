#include <array>
#include <cmath>
#include <vector>

#include "polya/errors.hpp"
#include "polya/mesh.hpp"

namespace polya {
namespace {

using Real = long double;

struct Vec {
  Real x, y;
};

Real orient(const Vec& a, const Vec& b, const Vec& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Positive when d lies strictly inside the circumcircle of the counterclockwise triangle abc.
Real incircle(const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  const Real adx = a.x - d.x, ady = a.y - d.y;
  const Real bdx = b.x - d.x, bdy = b.y - d.y;
  const Real cdx = c.x - d.x, cdy = c.y - d.y;
  const Real ad = adx * adx + ady * ady;
  const Real bd = bdx * bdx + bdy * bdy;
  const Real cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

struct Triangle {
  std::array<int, 3> v;
  std::array<int, 3> nb;  // nb[i] is across the edge opposite v[i]
  bool alive = true;
};

class Triangulator {
 public:
  explicit Triangulator(const VertexMatrix& points) {
    const Eigen::Index n = points.rows();
    pts_.reserve(static_cast<std::size_t>(n) + 3);
    Real xmin = points.col(0).minCoeff(), xmax = points.col(0).maxCoeff();
    Real ymin = points.col(1).minCoeff(), ymax = points.col(1).maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) pts_.push_back({points(i, 0), points(i, 1)});
    const Real span = std::max({xmax - xmin, ymax - ymin, Real(1e-12)});
    const Real cx = 0.5L * (xmin + xmax), cy = 0.5L * (ymin + ymax);
    const Real big = 64.0L * span;
    super_ = static_cast<int>(n);
    pts_.push_back({cx - 2.0L * big, cy - big});
    pts_.push_back({cx + 2.0L * big, cy - big});
    pts_.push_back({cx, cy + 2.0L * big});
    tris_.push_back({{super_, super_ + 1, super_ + 2}, {-1, -1, -1}, true});
  }

  void insert(int p) {
    const int start = locate(pts_[static_cast<std::size_t>(p)]);
    const Vec& q = pts_[static_cast<std::size_t>(p)];

    std::vector<int> cavity{start};
    tris_[static_cast<std::size_t>(start)].alive = false;
    for (std::size_t k = 0; k < cavity.size(); ++k) {
      const Triangle& t = tris_[static_cast<std::size_t>(cavity[k])];
      for (int i = 0; i < 3; ++i) {
        const int n = t.nb[static_cast<std::size_t>(i)];
        if (n < 0 || !tris_[static_cast<std::size_t>(n)].alive) continue;
        const Triangle& nt = tris_[static_cast<std::size_t>(n)];
        if (incircle(P(nt.v[0]), P(nt.v[1]), P(nt.v[2]), q) > 0) {
          tris_[static_cast<std::size_t>(n)].alive = false;
          cavity.push_back(n);
        }
      }
    }

    struct Edge {
      int a, b, outside;
    };
    std::vector<Edge> rim;
    for (int c : cavity) {
      const Triangle& t = tris_[static_cast<std::size_t>(c)];
      for (int i = 0; i < 3; ++i) {
        const int n = t.nb[static_cast<std::size_t>(i)];
        if (n >= 0 && !tris_[static_cast<std::size_t>(n)].alive) continue;
        rim.push_back({t.v[static_cast<std::size_t>((i + 1) % 3)],
                       t.v[static_cast<std::size_t>((i + 2) % 3)], n});
      }
    }

    const int first_new = static_cast<int>(tris_.size());
    for (const Edge& e : rim) {
      const int id = static_cast<int>(tris_.size());
      tris_.push_back({{p, e.a, e.b}, {e.outside, -1, -1}, true});
      if (e.outside >= 0) {
        Triangle& o = tris_[static_cast<std::size_t>(e.outside)];
        for (int i = 0; i < 3; ++i) {
          const int u = o.v[static_cast<std::size_t>((i + 1) % 3)];
          const int w = o.v[static_cast<std::size_t>((i + 2) % 3)];
          if (u == e.b && w == e.a) o.nb[static_cast<std::size_t>(i)] = id;
        }
      }
    }
    // New triangle (p, a, b): edge (b, p) is shared with the one whose a equals b,
    // edge (p, a) with the one whose b equals a.
    const int last = static_cast<int>(tris_.size());
    for (int t = first_new; t < last; ++t) {
      Triangle& nt = tris_[static_cast<std::size_t>(t)];
      for (int s = first_new; s < last; ++s) {
        if (s == t) continue;
        const Triangle& other = tris_[static_cast<std::size_t>(s)];
        if (other.v[1] == nt.v[2]) nt.nb[1] = s;
        if (other.v[2] == nt.v[1]) nt.nb[2] = s;
      }
    }
    last_ = first_new;
  }

  TriangleIndices finish() const {
    std::vector<std::array<int, 3>> kept;
    for (const Triangle& t : tris_) {
      if (!t.alive) continue;
      if (t.v[0] >= super_ || t.v[1] >= super_ || t.v[2] >= super_) continue;
      kept.push_back(t.v);
    }
    TriangleIndices out(static_cast<Eigen::Index>(kept.size()), 3);
    for (std::size_t i = 0; i < kept.size(); ++i) {
      out.row(static_cast<Eigen::Index>(i)) << kept[i][0], kept[i][1], kept[i][2];
    }
    return out;
  }

 private:
  const Vec& P(int i) const { return pts_[static_cast<std::size_t>(i)]; }

  int locate(const Vec& q) {
    int t = last_;
    if (t < 0 || t >= static_cast<int>(tris_.size()) || !tris_[static_cast<std::size_t>(t)].alive) {
      t = 0;
      while (!tris_[static_cast<std::size_t>(t)].alive) ++t;
    }
    const std::size_t cap = 4 * tris_.size() + 16;
    for (std::size_t step = 0; step < cap; ++step) {
      const Triangle& tri = tris_[static_cast<std::size_t>(t)];
      bool moved = false;
      const int offset = static_cast<int>(++walk_counter_ % 3);
      for (int k = 0; k < 3; ++k) {
        const int i = (k + offset) % 3;
        const int a = tri.v[static_cast<std::size_t>((i + 1) % 3)];
        const int b = tri.v[static_cast<std::size_t>((i + 2) % 3)];
        if (orient(P(a), P(b), q) < 0) {
          const int n = tri.nb[static_cast<std::size_t>(i)];
          if (n < 0) throw MeshError("delaunay: point outside the enclosing triangle");
          t = n;
          moved = true;
          break;
        }
      }
      if (!moved) return t;
    }
    throw MeshError("delaunay: point location did not terminate");
  }

  std::vector<Vec> pts_;
  std::vector<Triangle> tris_;
  int super_ = 0;
  int last_ = 0;
  unsigned long walk_counter_ = 0;
};

}  // namespace

TriangleIndices delaunay_triangulate(const VertexMatrix& points) {
  if (points.rows() < 3) throw MeshError("delaunay: need at least 3 points");
  Triangulator tri(points);
  for (Eigen::Index i = 0; i < points.rows(); ++i) tri.insert(static_cast<int>(i));
  return tri.finish();
}

}  // namespace polya

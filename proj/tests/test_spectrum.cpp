#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "polya/errors.hpp"
#include "polya/mesh.hpp"
#include "polya/spectrum.hpp"

using namespace polya;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

// pi^2 (m^2 + n^2), m, n >= 0, sorted.
std::vector<double> square_oracle(int count) {
  std::vector<double> values;
  for (int m = 0; m < 20; ++m) {
    for (int n = 0; n < 20; ++n) values.push_back(kPi2 * (m * m + n * n));
  }
  std::sort(values.begin(), values.end());
  values.resize(static_cast<std::size_t>(count));
  return values;
}

// First zero of J_1' by Newton on the series-free recurrence derivative.
double first_zero_of_j1_prime() {
  double x = 1.8;
  for (int i = 0; i < 50; ++i) {
    const double f = 0.5 * (std::cyl_bessel_j(0, x) - std::cyl_bessel_j(2, x));
    const double fp = 0.25 * (std::cyl_bessel_j(3, x) - 3 * std::cyl_bessel_j(1, x));
    x -= f / fp;
  }
  return x;
}

}  // namespace

TEST(Mesh, CoarseSquare) {
  const TriangleMesh m = mesh_polygon(rectangle(1.0, 1.0), 0.5);
  EXPECT_GE(m.triangles.rows(), 8);
  EXPECT_NEAR(mesh_quality(m).area, 1.0, 1e-12);
}

TEST(Mesh, SquareTriangleCount) {
  const TriangleMesh m = mesh_polygon(rectangle(1.0, 1.0), 0.05);
  EXPECT_GE(m.triangles.rows(), 800);
  EXPECT_LE(m.triangles.rows(), 1200);
  const MeshQuality q = mesh_quality(m);
  EXPECT_LE(q.max_edge, 1.5 * 0.05);
  EXPECT_GT(q.min_signed_area, 0.0);
}

TEST(Mesh, DiskBoundaryVerticesOnPolygon) {
  const ConvexPolygond disk = regular_polygon(256, 1.0);
  const TriangleMesh m = mesh_polygon(disk, 0.05);
  for (Eigen::Index i = 0; i < m.vertices.rows(); ++i) {
    const Point2d x = m.vertices.row(i).transpose();
    EXPECT_TRUE(contains(disk, x));
    if (m.on_boundary[i]) {
      EXPECT_NEAR(disk.inner_distance(x), 0.0, 1e-12);
    }
  }
  const MeshQuality q = mesh_quality(m);
  EXPECT_GE(q.min_angle_deg, 15.0);
  EXPECT_LE(q.max_edge, 1.5 * 0.05);
  EXPECT_NEAR(q.area, disk.area(), 1e-9 * disk.area());
}

TEST(Mesh, RejectsTinyDomain) {
  EXPECT_THROW(mesh_polygon(rectangle(0.1, 0.1), 0.5), MeshError);
  EXPECT_THROW(mesh_polygon(rectangle(1.0, 1.0), 0.0), PreconditionError);
}

TEST(Mesh, OffExport) {
  const TriangleMesh m = mesh_polygon(rectangle(1.0, 1.0), 0.5);
  std::ostringstream out;
  write_off(m, out);
  std::istringstream in(out.str());
  std::string magic;
  long nv = 0, nt = 0, ne = -1;
  in >> magic >> nv >> nt >> ne;
  EXPECT_EQ(magic, "OFF");
  EXPECT_EQ(nv, m.vertices.rows());
  EXPECT_EQ(nt, m.triangles.rows());
  EXPECT_EQ(ne, 0);
}

TEST(Delaunay, EmptyCircumcircles) {
  VertexMatrix pts(40, 2);
  for (int i = 0; i < 40; ++i) pts.row(i) << std::fmod(i * 0.618034, 1.0), std::fmod(i * 0.414214, 1.0);
  const TriangleIndices t = delaunay_triangulate(pts);
  for (Eigen::Index k = 0; k < t.rows(); ++k) {
    Eigen::Matrix3d rows;
    const Eigen::Vector2d a = pts.row(t(k, 0)).transpose(), b = pts.row(t(k, 1)).transpose(),
                          c = pts.row(t(k, 2)).transpose();
    for (Eigen::Index i = 0; i < pts.rows(); ++i) {
      if (i == t(k, 0) || i == t(k, 1) || i == t(k, 2)) continue;
      const Eigen::Vector2d d = pts.row(i).transpose();
      rows << (a - d).transpose(), (a - d).squaredNorm(), (b - d).transpose(), (b - d).squaredNorm(),
          (c - d).transpose(), (c - d).squaredNorm();
      EXPECT_LE(rows.determinant(), 1e-12);
    }
  }
}

TEST(Assemble, ReferenceTriangle) {
  TriangleMesh m;
  m.vertices.resize(3, 2);
  m.vertices << 0, 0, 1, 0, 0, 1;
  m.triangles.resize(1, 3);
  m.triangles << 0, 1, 2;
  const FemMatrices f = assemble(m);
  Eigen::Matrix3d expected_k;
  expected_k << 1, -0.5, -0.5, -0.5, 0.5, 0, -0.5, 0, 0.5;
  Eigen::Matrix3d expected_m;
  expected_m << 2, 1, 1, 1, 2, 1, 1, 1, 2;
  expected_m *= 0.5 / 12.0;
  EXPECT_LT((Eigen::Matrix3d(f.stiffness) - expected_k).norm(), 1e-15);
  EXPECT_LT((Eigen::Matrix3d(f.mass) - expected_m).norm(), 1e-15);
}

TEST(Assemble, ConstantsAndPartitionOfUnity) {
  const ConvexPolygond hex = hexagon(1.0);
  const FemMatrices f = assemble(mesh_polygon(hex, 0.1));
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(f.stiffness.rows());
  EXPECT_LT((f.stiffness * ones).norm(), 1e-12);
  EXPECT_NEAR(ones.dot(f.mass * ones), hex.area(), 1e-12);
}

TEST(Assemble, RejectsInvertedTriangle) {
  TriangleMesh m;
  m.vertices.resize(3, 2);
  m.vertices << 0, 0, 1, 0, 0, 1;
  m.triangles.resize(1, 3);
  m.triangles << 0, 2, 1;
  EXPECT_THROW(assemble(m), MeshError);
}

class SquareSpectrum : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { spectrum_ = new NeumannSpectrum(fem_spectrum(rectangle(1.0, 1.0), 0.02, 12)); }
  static void TearDownTestSuite() { delete spectrum_; }
  static NeumannSpectrum* spectrum_;
};
NeumannSpectrum* SquareSpectrum::spectrum_ = nullptr;

TEST_F(SquareSpectrum, MatchesSeparationOfVariables) {
  const std::vector<double> oracle = square_oracle(12);
  EXPECT_NEAR(spectrum_->eigenvalues[0], 0.0, 1e-8);
  for (std::size_t k = 1; k < 11; ++k) EXPECT_NEAR(spectrum_->eigenvalues[k] / oracle[k], 1.0, 0.01) << k;
  EXPECT_NEAR(spectrum_->eigenvalues[1] / spectrum_->eigenvalues[2], 1.0, 0.01);
}

TEST_F(SquareSpectrum, ResidualsOrthogonalityZeroMode) {
  for (std::size_t k = 0; k < spectrum_->residuals.size(); ++k) {
    EXPECT_LE(spectrum_->residuals[k], 1e-8 * std::max(1.0, spectrum_->eigenvalues[k]));
  }
  const FemMatrices f = assemble(mesh_polygon(rectangle(1.0, 1.0), 0.02));
  const Eigen::MatrixXd& v = spectrum_->eigenvectors;
  const Eigen::MatrixXd gram = v.transpose() * (f.mass * v);
  for (Eigen::Index i = 0; i < gram.rows(); ++i) {
    for (Eigen::Index j = 0; j < gram.cols(); ++j) {
      if (i != j) {
        EXPECT_LE(std::abs(gram(i, j)), 1e-8);
      }
    }
  }
  const Eigen::VectorXd zero = v.col(0);
  const double mean = zero.mean();
  const double spread = std::sqrt((zero.array() - mean).square().mean());
  EXPECT_LE(spread / std::abs(mean), 1e-6);
}

TEST(Spectrum, MeshRefinementDecreasesEigenvalues) {
  // The meshes are not nested, but the discretisation gap between h and h/2 dwarfs mesh-to-mesh noise.
  const NeumannSpectrum coarse = fem_spectrum(rectangle(1.0, 1.0), 0.1, 11);
  const NeumannSpectrum fine = fem_spectrum(rectangle(1.0, 1.0), 0.05, 11);
  const std::vector<double> oracle = square_oracle(11);
  for (std::size_t k = 1; k < 11; ++k) {
    EXPECT_GE(coarse.eigenvalues[k], fine.eigenvalues[k] - 1e-10) << k;
    EXPECT_GE(fine.eigenvalues[k], oracle[k] - 1e-10) << k;
  }
}

TEST(Spectrum, DiskSecondEigenvalue) {
  const double jp = first_zero_of_j1_prime();
  EXPECT_NEAR(jp, 1.841183781340659, 1e-12);
  const NeumannSpectrum s = fem_spectrum(regular_polygon(256, 1.0), 0.02, 4);
  EXPECT_NEAR(s.eigenvalues[1] / (jp * jp), 1.0, 0.01);
  EXPECT_NEAR(s.eigenvalues[1] / 3.3900, 1.0, 0.01);
}

TEST(Spectrum, DenseAndKrylovAgree) {
  const FemMatrices f = assemble(mesh_polygon(hexagon(1.0), 0.15));
  EigenSolverOptions dense;
  dense.dense_limit = 100000;
  EigenSolverOptions krylov;
  krylov.dense_limit = 0;
  const NeumannSpectrum a = solve_eigs(f.stiffness, f.mass, 10, dense);
  const NeumannSpectrum b = solve_eigs(f.stiffness, f.mass, 10, krylov);
  for (std::size_t k = 0; k < 10; ++k) EXPECT_NEAR(a.eigenvalues[k], b.eigenvalues[k], 1e-8 * std::max(1.0, a.eigenvalues[k]));
}

TEST(Spectrum, SolverPreconditions) {
  const FemMatrices f = assemble(mesh_polygon(rectangle(1.0, 1.0), 0.5));
  EXPECT_THROW(solve_eigs(f.stiffness, f.mass, 0), PreconditionError);
  EXPECT_THROW(solve_eigs(f.stiffness, f.mass, static_cast<int>(f.stiffness.rows())), PreconditionError);
}

TEST(RectangleSpectrum, CountingUnitSquare) {
  const NeumannSpectrum s = rectangle_spectrum(1.0, 1.0, 500.0);
  EXPECT_EQ(counting_function(s, 100.0), 13);
  EXPECT_EQ(counting_function(s, 0.0), 1);
  EXPECT_EQ(counting_function(s, -1.0), 0);
  EXPECT_THROW(counting_function(s, 600.0), RangeError);
  const double ratio = counting_function(s, 500.0) * 4 * std::numbers::pi / 500.0;
  EXPECT_GE(ratio, 0.9);
  EXPECT_LE(ratio, 1.3);
}

TEST(RectangleSpectrum, TiesCountAsBelow) {
  const NeumannSpectrum s = rectangle_spectrum(1.0, 1.0, 100.0);
  EXPECT_EQ(counting_function(s, kPi2), 3);
  EXPECT_EQ(counting_function(s, kPi2 * (1 - 1e-10)), 3);
  EXPECT_EQ(counting_function(s, kPi2 * (1 - 1e-8)), 1);
}

TEST(AnalyticSpectrum, DetectsAxisAlignedRectangles) {
  EXPECT_TRUE(analytic_spectrum(rectangle(2.0, 1.0).translated(Point2d(3, 4)), 50.0).has_value());
  EXPECT_FALSE(analytic_spectrum(hexagon(1.0), 50.0).has_value());
  EXPECT_FALSE(analytic_spectrum(regular_polygon(4, 1.0), 50.0).has_value());
}

TEST(FemSpectrum, TrustThresholdAndCovering) {
  const NeumannSpectrum s = fem_spectrum_covering(hexagon(1.0), 0.05, 60.0);
  EXPECT_GE(trust_threshold(s), 60.0);
  EXPECT_NO_THROW(counting_function(s, 60.0));
  EXPECT_DOUBLE_EQ(trust_threshold(s), 0.8 * s.eigenvalues.back());
}

TEST(SpectrumCsv, Header) {
  NeumannSpectrum s;
  s.eigenvalues = {0.0, 9.8696044010893586};
  std::ostringstream out;
  write_spectrum_csv(s, out);
  EXPECT_EQ(out.str(), "k,mu_k\n1,0\n2,9.86960440109\n");
}

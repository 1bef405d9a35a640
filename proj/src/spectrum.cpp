#include "polya/spectrum.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <string>

#include "polya/errors.hpp"
#include "polya/format.hpp"

namespace polya {
namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

// Makes `block` M-orthonormal and M-orthogonal to the columns of `basis`; drops directions
// that are numerically inside span(basis).
MatrixXd m_orthonormalize_once(const MatrixXd& basis, MatrixXd block, const SparseMatrix& M) {
  const VectorXd before = (block.transpose() * (M * block)).diagonal().cwiseSqrt();
  if (basis.cols() > 0) {
    for (int pass = 0; pass < 2; ++pass) block -= basis * (basis.transpose() * (M * block));
  }
  // Columns that lost all but 1e-10 of their M-norm to the projection carry no new direction.
  std::vector<Index> live;
  const VectorXd after = (block.transpose() * (M * block)).diagonal().cwiseSqrt();
  for (Index j = 0; j < block.cols(); ++j) {
    if (after[j] > 1e-10 * before[j]) live.push_back(j);
  }
  MatrixXd unit(block.rows(), static_cast<Index>(live.size()));
  for (std::size_t k = 0; k < live.size(); ++k) {
    unit.col(static_cast<Index>(k)) = block.col(live[k]) / after[live[k]];
  }
  if (unit.cols() == 0) return unit;
  MatrixXd gram = unit.transpose() * (M * unit);
  gram = 0.5 * (gram + gram.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<MatrixXd> eig(gram);
  std::vector<Index> keep;
  for (Index i = 0; i < gram.rows(); ++i) {
    if (eig.eigenvalues()[i] > 1e-12) keep.push_back(i);
  }
  MatrixXd out(block.rows(), static_cast<Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.col(static_cast<Index>(k)) =
        unit * eig.eigenvectors().col(keep[k]) / std::sqrt(eig.eigenvalues()[keep[k]]);
  }
  return out;
}

// A second pass restores orthogonality lost to rounding in the first.
MatrixXd m_orthonormalize(const MatrixXd& basis, const MatrixXd& block, const SparseMatrix& M) {
  return m_orthonormalize_once(basis, m_orthonormalize_once(basis, block, M), M);
}

struct RitzPairs {
  VectorXd values;
  MatrixXd vectors;
};

std::vector<double> relative_residuals(const SparseMatrix& K, const SparseMatrix& M,
                                       const VectorXd& values, const MatrixXd& vectors) {
  const MatrixXd mu = M * vectors;
  const MatrixXd ku = K * vectors;
  std::vector<double> out(static_cast<std::size_t>(values.size()));
  for (Index i = 0; i < values.size(); ++i) {
    out[static_cast<std::size_t>(i)] = (ku.col(i) - values[i] * mu.col(i)).norm() / mu.col(i).norm();
  }
  return out;
}

bool converged(const std::vector<double>& residuals, const VectorXd& values, double tol) {
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    if (residuals[i] > tol * std::max(1.0, std::abs(values[static_cast<Index>(i)]))) return false;
  }
  return true;
}

RitzPairs dense_pairs(const SparseMatrix& K, const SparseMatrix& M, int m) {
  const MatrixXd kd = MatrixXd(K);
  const MatrixXd md = MatrixXd(M);
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> eig(kd, md);
  if (eig.info() != Eigen::Success) throw ComputationError("solve_eigs: dense generalized solve failed");
  return {eig.eigenvalues().head(m), eig.eigenvectors().leftCols(m)};
}

RitzPairs krylov_pairs(const SparseMatrix& K, const SparseMatrix& M, int m,
                       const EigenSolverOptions& options, double& worst) {
  const Index n = K.rows();
  const Index block = std::min<Index>(n / 2, m + std::max(5, m / 2));
  const SparseMatrix shifted = K - options.sigma * M;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt(shifted);
  if (ldlt.info() != Eigen::Success) throw ComputationError("solve_eigs: factorization of K - sigma M failed");

  std::mt19937 rng(20240611u);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  MatrixXd start(n, block);
  for (Index j = 0; j < block; ++j) {
    for (Index i = 0; i < n; ++i) start(i, j) = uniform(rng);
  }

  for (int restart = 0; restart < options.max_restarts; ++restart) {
    MatrixXd basis(n, 0);
    MatrixXd current = start;
    for (int step = 0; step < options.krylov_blocks; ++step) {
      if (step > 0) current = ldlt.solve(M * current);
      current = m_orthonormalize(basis, current, M);
      if (current.cols() == 0) break;
      MatrixXd grown(n, basis.cols() + current.cols());
      grown << basis, current;
      basis.swap(grown);
    }
    if (basis.cols() < m) throw ComputationError("solve_eigs: Krylov basis collapsed below the request");

    MatrixXd projected = basis.transpose() * (K * basis);
    projected = 0.5 * (projected + projected.transpose()).eval();
    MatrixXd gram = basis.transpose() * (M * basis);
    gram = 0.5 * (gram + gram.transpose()).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXd> eig(projected, gram);
    const Index keep = std::min<Index>(block, basis.cols());
    const MatrixXd ritz = basis * eig.eigenvectors().leftCols(keep);
    const VectorXd values = eig.eigenvalues().head(keep);

    const std::vector<double> residuals =
        relative_residuals(K, M, values.head(m), ritz.leftCols(m));
    worst = *std::max_element(residuals.begin(), residuals.end());
    if (converged(residuals, values.head(m), options.tol)) return {values.head(m), ritz.leftCols(m)};
    start = ritz;
  }
  throw ComputationError("solve_eigs: no convergence after " + std::to_string(options.max_restarts) +
                         " restarts (worst residual " + std::to_string(worst) + ")");
}

}  // namespace

FemMatrices assemble(const TriangleMesh& mesh) {
  const Index n = mesh.vertices.rows();
  std::vector<Eigen::Triplet<double>> k_entries;
  std::vector<Eigen::Triplet<double>> m_entries;
  k_entries.reserve(static_cast<std::size_t>(9 * mesh.triangles.rows()));
  m_entries.reserve(static_cast<std::size_t>(9 * mesh.triangles.rows()));
  for (Index t = 0; t < mesh.triangles.rows(); ++t) {
    const Eigen::Vector3i idx = mesh.triangles.row(t).transpose();
    Eigen::Matrix<double, 2, 3> corners;
    for (int k = 0; k < 3; ++k) corners.col(k) = mesh.vertices.row(idx[k]).transpose();
    const double twice_area = cross2<double>(corners.col(1) - corners.col(0), corners.col(2) - corners.col(0));
    if (!(twice_area > 0.0)) {
      throw MeshError("assemble: inverted or degenerate triangle " + std::to_string(t));
    }
    const double area = 0.5 * twice_area;
    // grad(phi_k) = rot90(opposite edge) / (2 area)
    Eigen::Matrix<double, 2, 3> grads;
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector2d e = corners.col((k + 2) % 3) - corners.col((k + 1) % 3);
      grads.col(k) = Eigen::Vector2d(-e.y(), e.x()) / twice_area;
    }
    const Eigen::Matrix3d ke = area * grads.transpose() * grads;
    const Eigen::Matrix3d me = area / 12.0 * (Eigen::Matrix3d::Ones() + Eigen::Matrix3d::Identity());
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        k_entries.emplace_back(idx[a], idx[b], ke(a, b));
        m_entries.emplace_back(idx[a], idx[b], me(a, b));
      }
    }
  }
  FemMatrices out{SparseMatrix(n, n), SparseMatrix(n, n)};
  out.stiffness.setFromTriplets(k_entries.begin(), k_entries.end());
  out.mass.setFromTriplets(m_entries.begin(), m_entries.end());
  return out;
}

NeumannSpectrum solve_eigs(const SparseMatrix& K, const SparseMatrix& M, int m_lowest,
                           const EigenSolverOptions& options) {
  const Index n = K.rows();
  if (K.cols() != n || M.rows() != n || M.cols() != n) throw PreconditionError("solve_eigs: size mismatch");
  if (m_lowest < 1 || m_lowest > n / 2) throw PreconditionError("solve_eigs: need 1 <= m_lowest <= dim/2");

  double worst = 0.0;
  RitzPairs pairs = n <= options.dense_limit ? dense_pairs(K, M, m_lowest)
                                             : krylov_pairs(K, M, m_lowest, options, worst);
  NeumannSpectrum s;
  s.residuals = relative_residuals(K, M, pairs.values, pairs.vectors);
  if (!converged(s.residuals, pairs.values, options.tol)) {
    throw ComputationError("solve_eigs: residual check failed");
  }
  s.eigenvalues.assign(pairs.values.data(), pairs.values.data() + pairs.values.size());
  s.eigenvectors = std::move(pairs.vectors);
  s.complete_up_to = s.eigenvalues.back();
  return s;
}

NeumannSpectrum fem_spectrum(const ConvexPolygond& p, double h, int m_lowest,
                             const EigenSolverOptions& options) {
  const TriangleMesh mesh = mesh_polygon(p, h);
  const FemMatrices fem = assemble(mesh);
  NeumannSpectrum s = solve_eigs(fem.stiffness, fem.mass, m_lowest, options);
  s.mesh_h = h;
  s.domain_area = p.area();
  return s;
}

NeumannSpectrum fem_spectrum_covering(const ConvexPolygond& p, double h, double lambda,
                                      const EigenSolverOptions& options) {
  if (!(lambda >= 0.0)) throw PreconditionError("fem_spectrum_covering: lambda must be non-negative");
  const TriangleMesh mesh = mesh_polygon(p, h);
  const FemMatrices fem = assemble(mesh);
  const double target = std::max(lambda, 1e-9) / 0.8;
  const double weyl = (p.area() * target + p.perimeter() * std::sqrt(target)) / (4.0 * std::numbers::pi);
  int m = static_cast<int>(std::ceil(weyl)) + 6;
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (m > mesh.vertices.rows() / 2) {
      throw RangeError("fem_spectrum_covering: mesh too coarse to resolve lambda = " + std::to_string(lambda));
    }
    NeumannSpectrum s = solve_eigs(fem.stiffness, fem.mass, m, options);
    s.mesh_h = h;
    s.domain_area = p.area();
    if (trust_threshold(s) >= lambda) return s;
    m = static_cast<int>(std::ceil(1.5 * m)) + 1;
  }
  throw RangeError("fem_spectrum_covering: could not reach the trust threshold");
}

NeumannSpectrum rectangle_spectrum(double a, double b, double lambda_max) {
  if (!(a > 0.0) || !(b > 0.0) || !(lambda_max >= 0.0)) {
    throw PreconditionError("rectangle_spectrum: sides and lambda_max must be positive");
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  NeumannSpectrum s;
  s.analytic = true;
  s.domain_area = a * b;
  s.complete_up_to = lambda_max;
  const long m_max = static_cast<long>(std::floor(a * std::sqrt(lambda_max) / std::numbers::pi)) + 1;
  const long n_max = static_cast<long>(std::floor(b * std::sqrt(lambda_max) / std::numbers::pi)) + 1;
  for (long m = 0; m <= m_max; ++m) {
    for (long n = 0; n <= n_max; ++n) {
      const double mu = pi2 * (double(m * m) / (a * a) + double(n * n) / (b * b));
      if (mu <= lambda_max) s.eigenvalues.push_back(mu);
    }
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

std::optional<NeumannSpectrum> analytic_spectrum(const ConvexPolygond& p, double lambda_max) {
  if (p.size() != 4) return std::nullopt;
  const Box2<double> box = p.bounding_box();
  const double scale = box.sizes().maxCoeff();
  for (std::size_t i = 0; i < 4; ++i) {
    const Point2d e = p.vertex(i + 1) - p.vertex(i);
    if (std::min(std::abs(e.x()), std::abs(e.y())) > 1e-12 * scale) return std::nullopt;
  }
  return rectangle_spectrum(box.sizes().x(), box.sizes().y(), lambda_max);
}

double trust_threshold(const NeumannSpectrum& s) {
  if (s.analytic) return s.complete_up_to;
  return s.eigenvalues.empty() ? 0.0 : 0.8 * s.eigenvalues.back();
}

long counting_function(const NeumannSpectrum& s, double lambda) {
  if (lambda < 0.0) return 0;
  if (lambda > s.complete_up_to * (1.0 + 1e-12)) {
    throw RangeError("counting_function: lambda = " + std::to_string(lambda) +
                     " above the computed spectrum (" + std::to_string(s.complete_up_to) + ")");
  }
  const double cutoff = lambda + 1e-9 * std::max(1.0, lambda);
  return static_cast<long>(std::upper_bound(s.eigenvalues.begin(), s.eigenvalues.end(), cutoff) -
                           s.eigenvalues.begin());
}

void write_spectrum_csv(const NeumannSpectrum& s, std::ostream& out) {
  out << "k,mu_k\n";
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    out << k + 1 << ',' << format_real(s.eigenvalues[k]) << '\n';
  }
}

}  // namespace polya

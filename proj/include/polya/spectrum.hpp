#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <iosfwd>
#include <optional>
#include <vector>

#include "polya/geometry.hpp"
#include "polya/mesh.hpp"

namespace polya {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct FemMatrices {
  SparseMatrix stiffness;  ///< K_ij = int grad(phi_i) . grad(phi_j)
  SparseMatrix mass;       ///< M_ij = int phi_i phi_j
};

/// P1 stiffness and mass matrices. No boundary terms: the Neumann condition is natural.
/// Throws MeshError on an inverted or degenerate triangle.
FemMatrices assemble(const TriangleMesh& mesh);

/// Leading segment 0 = mu_1 <= mu_2 <= ... of a Neumann spectrum.
struct NeumannSpectrum {
  std::vector<double> eigenvalues;
  double mesh_h = 0.0;        ///< 0 for analytic spectra
  double domain_area = 0.0;
  double complete_up_to = 0.0;  ///< every eigenvalue <= this value is listed
  bool analytic = false;
  Eigen::MatrixXd eigenvectors;  ///< M-orthonormal columns (FEM only)
  std::vector<double> residuals;  ///< ||K u - mu M u|| / ||M u|| (FEM only)
};

struct EigenSolverOptions {
  double sigma = -1.0;
  double tol = 1e-8;
  int max_restarts = 500;
  int krylov_blocks = 4;
  Eigen::Index dense_limit = 400;
};

/// The m_lowest smallest eigenpairs of K u = mu M u.
///
/// Dense generalized solve when dim <= dense_limit; otherwise restarted block Krylov
/// iteration on (K - sigma M)^{-1} M with a sparse LDL^T factorization, block size
/// m_lowest + max(5, m_lowest / 2), Rayleigh-Ritz on the original pencil. Converged when
/// ||K u - mu M u|| / ||M u|| <= tol * max(1, mu) for all requested pairs.
NeumannSpectrum solve_eigs(const SparseMatrix& K, const SparseMatrix& M, int m_lowest,
                           const EigenSolverOptions& options = {});

/// mesh_polygon + assemble + solve_eigs.
NeumannSpectrum fem_spectrum(const ConvexPolygond& p, double h, int m_lowest,
                             const EigenSolverOptions& options = {});

/// FEM spectrum with enough eigenvalues that lambda lies below the trust threshold
/// (0.8 times the largest computed eigenvalue). Starts from a Weyl-law estimate and
/// grows the request until the threshold is cleared.
NeumannSpectrum fem_spectrum_covering(const ConvexPolygond& p, double h, double lambda,
                                      const EigenSolverOptions& options = {});

/// Exact Neumann spectrum of the rectangle [0,a] x [0,b]: pi^2 (m^2/a^2 + n^2/b^2), m, n >= 0.
NeumannSpectrum rectangle_spectrum(double a, double b, double lambda_max);

/// rectangle_spectrum when p is an axis-aligned rectangle (any translate), otherwise empty.
std::optional<NeumannSpectrum> analytic_spectrum(const ConvexPolygond& p, double lambda_max);

/// Largest lambda at which counting_function is trusted: complete_up_to for analytic spectra,
/// 0.8 times the largest eigenvalue for FEM spectra.
double trust_threshold(const NeumannSpectrum& s);

/// N(lambda) = #{k : mu_k <= lambda}; eigenvalues within 1e-9 (relative) of lambda count.
/// Returns 0 for lambda < 0. Throws RangeError above complete_up_to.
long counting_function(const NeumannSpectrum& s, double lambda);

/// CSV with header "k,mu_k", k starting at 1.
void write_spectrum_csv(const NeumannSpectrum& s, std::ostream& out);

}  // namespace polya

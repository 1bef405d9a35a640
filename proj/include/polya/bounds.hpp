#pragma once

#include <optional>
#include <vector>

#include "polya/geometry.hpp"
#include "polya/lattice.hpp"
#include "polya/spectrum.hpp"
#include "polya/test_functions.hpp"

namespace polya {

/// Volume of the unit ball in R^d, pi^{d/2} / Gamma(d/2 + 1).
double unit_ball_volume(int d);

struct WeylBounds {
  double polya;   ///< |B_1| |Omega| lambda^{d/2} / (2 pi)^d
  double kroger;  ///< 2 / (d + 2) times the above
};

WeylBounds bound_values(double area, double lambda, int d);

/// 1 / (2 sqrt(3) j_0^2).
double convex_coefficient();

/// |Omega| lambda / (2 sqrt(3) j_0^2): the lower bound on N(lambda) for convex planar domains.
double convex_bound(double area, double lambda);

/// mu_{l+1} <= 2 sqrt(3) j_0^2 l / |Omega|, the eigenvalue form of the convex bound.
/// FEM spectra get `fem_slack` relative slack on the right-hand side; analytic spectra none.
/// Throws PreconditionError for l = 0 and RangeError when mu_{l+1} was not computed.
bool eigenvalue_form_check(const NeumannSpectrum& s, long l, double fem_slack = 0.01);

struct BoundReport {
  double lambda = 0.0;
  double area = 0.0;
  long n_N = 0;
  double polya = 0.0;
  double kroger = 0.0;
  double convex = 0.0;
  long packing_l = 0;
  double certificate = 0.0;  ///< max Rayleigh quotient of the pack; NaN when l = 0
  bool pass = false;         ///< n_N >= convex

  double r = 0.0;                 ///< j_0 / sqrt(lambda)
  double guaranteed_min = 0.0;    ///< |Omega| / (2 sqrt(3) r^2), equal to `convex`
  bool packing_ok = false;        ///< packing_l >= guaranteed_min - 1e-9
  bool certificate_ok = false;    ///< certificate <= lambda (1 + 1e-8), or l = 0
  bool spectrum_ok = false;       ///< N(lambda (1 + slack)) >= packing_l
  std::optional<double> mu_l;     ///< mu_l from the spectrum when l >= 1

  /// All pipeline checks hold.
  bool consistent() const { return pass && packing_ok && certificate_ok && spectrum_ok; }
};

struct VerifyOptions {
  QuadratureOptions quadrature{};
  ShiftSearchOptions shift_search{};
  double fem_slack = 0.02;  ///< relative lambda slack when the spectrum is from FEM
};

/// Runs the constructive argument at one lambda against a given spectrum:
/// r = j_0 / sqrt(lambda), lattice packing of 2r-separated centers, test-function
/// certificate for mu_l, and the counting function N(lambda). For FEM spectra, N is read at
/// lambda (1 + fem_slack) to absorb discretization error.
BoundReport verify_main_theorem(const ConvexPolygond& p, double lambda, const NeumannSpectrum& spectrum,
                                const VerifyOptions& options = {});

/// As above with an FEM spectrum of mesh size h computed for this lambda.
BoundReport verify_main_theorem(const ConvexPolygond& p, double lambda, double h,
                                const VerifyOptions& options = {});

struct DimComparison {
  int d = 0;
  double kroger_coeff = 0.0;         ///< 2/(d+2) |B_1| / (2 pi)^d
  double levenshtein_density = 0.0;  ///< j_{d/2}^d / (2^{2d} Gamma((d+2)/2)^2)
  double remark_rhs = 0.0;           ///< levenshtein_density / (|B_1| j_{d/2-1}^d)
  bool strict = false;               ///< remark_rhs < kroger_coeff
};

DimComparison dim_comparison(int d);

/// Rows for d_min..d_max, 3 <= d_min <= d_max <= 24.
std::vector<DimComparison> highdim_table(int d_min, int d_max);

/// Densest planar packing density pi / sqrt(12), kept only as a diagnostic constant.
double hexagonal_packing_density();

/// `count` logarithmically spaced values in [lo, hi].
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace polya

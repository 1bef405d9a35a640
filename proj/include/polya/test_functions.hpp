#pragma once

#include <vector>

#include "polya/geometry.hpp"
#include "polya/special_functions.hpp"

namespace polya {

/// Radial Bessel profile F(rho) = rho^{1-d/2} J_{d/2-1}(rho j_{d/2-1} / r), cut off at rho = r.
struct TestProfile {
  int d;
  double r;
  double nu;
  double jnu;

  TestProfile(int dimension, double radius);
};

struct ProfileValue {
  double value;
  double derivative;
};

/// F(rho) and F'(rho); (0, 0) for rho >= r. Finite at rho = 0 through the series limit.
ProfileValue profile_eval(const TestProfile& tp, double rho);

struct RayleighQuotient {
  double numerator;    ///< integral of |grad f|^2 over the support inside the domain
  double denominator;  ///< integral of f^2 over the support inside the domain
  double quotient;
};

struct QuadratureOptions {
  int n_angles = 256;
  int n_radial = 128;
};

/// Rayleigh quotient of f(x) = F(|x - center|) restricted to the polygon, in polar coordinates.
///
/// The angular integral is split at every direction where the radial function
/// min(r, exit distance) has a kink (vertex directions, circle/edge crossings, edges through
/// the center) and each arc gets Gauss-Legendre nodes in proportion to its length, at least
/// n_angles in total. The radial integral uses n_radial Gauss-Legendre nodes on [0, R(omega)].
/// Only d = 2 is supported.
RayleighQuotient rayleigh_quotient(const TestProfile& tp, const ConvexPolygond& p,
                                   const Point2d& center, const QuadratureOptions& options = {});

/// Disjointly supported test functions centred on a 2r-separated point set.
struct TestFunctionPack {
  std::vector<Point2d> centers;
  double r = 0.0;
  std::vector<RayleighQuotient> quotients;
};

/// Computes the per-center quotients (in parallel). Throws PreconditionError when two centers
/// are closer than 2r, since the supports would then overlap.
TestFunctionPack build_pack(const ConvexPolygond& p, std::vector<Point2d> centers, double r,
                            const QuadratureOptions& options = {});

/// Upper bound for mu_l, l = pack size: the largest per-center quotient. Because the supports
/// are disjoint, this equals the maximum Rayleigh quotient over the span of the pack.
/// Throws ComputationError if it exceeds j_0^2 / r^2 by more than 1e-8 relative.
double certified_upper_bound(const TestFunctionPack& pack);

/// Per-ray energy and mass integrals at s = R(omega) j_nu / r for every sample of the cap.
std::vector<Lemma21Gap> ray_energy_gaps(const TestProfile& tp, const RadialCap<double>& cap);

}  // namespace polya

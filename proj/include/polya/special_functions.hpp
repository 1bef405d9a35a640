#pragma once

namespace polya {

/// Order of a Bessel function of the first kind; finite and non-negative.
class BesselOrder {
 public:
  explicit BesselOrder(double nu);
  double value() const { return nu_; }

 private:
  double nu_;
};

struct BesselValue {
  double value;
  double derivative;
};

/// J_nu(t) and J_nu'(t) for nu >= 0, t >= 0.
///
/// Ascending series (extended precision) for t <= 12; Miller backward
/// recurrence normalised by the Neumann-type sum beyond. Working range t <= 1e3.
/// At t = 0 the derivative is +inf for 0 < nu < 1.
BesselValue bessel_j(double nu, double t);

/// (t^{-nu} J_nu(t))', finite at t = 0.
double bessel_scaled_derivative(double nu, double t);

/// (t^{-nu} J_nu(t))' t^{2 nu + 1}; vanishes at t = 0 and is negative on (0, j_nu].
double bessel_flux(double nu, double t);

/// First positive zero j_nu of J_nu, 0 <= nu <= 20, absolute error <= 1e-10.
double bessel_zero(double nu);

/// First positive zero j_0 of J_0 (cached).
double bessel_j0_zero();

/// Gamma function for 0 < x <= 30 (Lanczos, g = 7, 9 terms).
double gamma_fn(double x);

struct Lemma21Gap {
  double lhs;  ///< int_0^s ((t^{-nu} J_nu)')^2 t^{2nu+1} dt
  double rhs;  ///< int_0^s J_nu(t)^2 t dt
};

/// Both sides of the Dirichlet-energy vs mass inequality for the radial Bessel
/// profile on [0, s], s in [0, j_nu]. Adaptive Gauss-Kronrod, absolute tolerance 1e-10.
Lemma21Gap lemma21_gap(double nu, double s);

/// |d/dt[(t^{-nu}J_nu)' t^{2nu+1}] + t^{nu+1} J_nu| expanded as
/// t^{nu+1}J'' + t^nu J' - nu^2 t^{nu-1} J + t^{nu+1} J, with J'' obtained from the
/// order-raising recurrences rather than from the Bessel equation itself.
double eq22_residual(double nu, double t);

}  // namespace polya

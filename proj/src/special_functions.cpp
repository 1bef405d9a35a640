#include "polya/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "polya/errors.hpp"
#include "polya/quadrature.hpp"

namespace polya {
namespace {

constexpr double kMaxOrder = 28.0;
constexpr double kMaxArgument = 1e4;

void check_order(double nu, const char* who) {
  if (!std::isfinite(nu) || nu < 0.0) {
    throw DomainError(std::string(who) + ": order must be finite and non-negative");
  }
  if (nu > kMaxOrder) throw DomainError(std::string(who) + ": order above supported range");
}

void check_argument(double t, const char* who) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError(std::string(who) + ": argument must be finite and non-negative");
  }
  if (t > kMaxArgument) throw DomainError(std::string(who) + ": argument above supported range");
}

// Beyond this the alternating series cancels badly once t approaches 2 nu; the recurrence does not.
constexpr double kSeriesLimit = 12.0;

struct OrderPair {
  long double j_nu;
  long double j_next;  // J_{nu+1}
};

OrderPair ascending_series(double nu, double t) {
  const long double x = 0.5L * t;
  const long double q = -x * x;
  long double a = std::pow(x, static_cast<long double>(nu)) / gamma_fn(nu + 1.0);
  long double b = a * x / (nu + 1.0L);
  long double sum_a = a;
  long double sum_b = b;
  for (int k = 0; k < 500; ++k) {
    a *= q / ((k + 1.0L) * (k + 1.0L + nu));
    b *= q / ((k + 1.0L) * (k + 2.0L + nu));
    sum_a += a;
    sum_b += b;
    if (k > x && std::abs(a) <= 1e-21L * std::abs(sum_a) && std::abs(b) <= 1e-21L * std::abs(sum_b)) {
      break;
    }
    if (a == 0.0L && b == 0.0L) break;
  }
  return {sum_a, sum_b};
}

// Backward recurrence J_{mu-1} = (2 mu / t) J_mu - J_{mu+1} from a high order, normalised by
// (t/2)^nu = sum_j (nu + 2j) Gamma(nu + j) / j! J_{nu+2j}(t).
OrderPair miller_recurrence(double nu, double t) {
  int top = static_cast<int>(std::ceil(t + 20.0 * std::cbrt(t) + 30.0));
  if (top % 2 == 1) ++top;

  // weight[j] multiplies J_{nu+2j}.
  std::vector<long double> weight(static_cast<std::size_t>(top / 2) + 1);
  weight[0] = gamma_fn(nu + 1.0);
  long double g = gamma_fn(nu + 1.0);  // Gamma(nu + j) / j! at j = 1
  for (int j = 1; j <= top / 2; ++j) {
    weight[static_cast<std::size_t>(j)] = (nu + 2.0L * j) * g;
    g *= (nu + j) / (j + 1.0L);
  }

  long double above = 0.0L;
  long double current = 1e-30L;
  long double norm = 0.0L;
  long double f0 = 0.0L;
  long double f1 = 0.0L;
  for (int k = top; k >= 0; --k) {
    if (k % 2 == 0) norm += weight[static_cast<std::size_t>(k / 2)] * current;
    if (k == 1) f1 = current;
    if (k == 0) {
      f0 = current;
      break;
    }
    const long double below = 2.0L * (nu + k) / t * current - above;
    above = current;
    current = below;
    if (std::abs(current) > 1e1000L) {
      current *= 1e-1000L;
      above *= 1e-1000L;
      norm *= 1e-1000L;
      f1 *= 1e-1000L;
    }
  }
  const long double scale = std::pow(0.5L * t, static_cast<long double>(nu)) / norm;
  return {f0 * scale, f1 * scale};
}

OrderPair evaluate_pair(double nu, double t) {
  if (t <= kSeriesLimit) return ascending_series(nu, t);
  return miller_recurrence(nu, t);
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) { check_order(nu, "BesselOrder"); }

double gamma_fn(double x) {
  if (!(x > 0.0)) throw DomainError("gamma_fn: argument must be positive");
  if (x > 30.0 || !std::isfinite(x)) throw DomainError("gamma_fn: argument above supported range");
  static constexpr double kG = 7.0;
  static constexpr std::array<double, 9> kCoeff = {
      0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
      771.32342877765313,   -176.61502916214059,   12.507343278686905,
      -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (x < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma_fn(1.0 - x));
  }
  const double z = x - 1.0;
  double a = kCoeff[0];
  for (int i = 1; i < 9; ++i) a += kCoeff[static_cast<std::size_t>(i)] / (z + i);
  const double t = z + kG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

BesselValue bessel_j(double nu, double t) {
  check_order(nu, "bessel_j");
  check_argument(t, "bessel_j");
  if (t == 0.0) {
    const double value = nu == 0.0 ? 1.0 : 0.0;
    double derivative = 0.0;
    if (nu == 1.0) {
      derivative = 0.5;
    } else if (nu > 0.0 && nu < 1.0) {
      derivative = std::numeric_limits<double>::infinity();
    }
    return {value, derivative};
  }
  const OrderPair pair = evaluate_pair(nu, t);
  const long double derivative = nu / static_cast<long double>(t) * pair.j_nu - pair.j_next;
  return {static_cast<double>(pair.j_nu), static_cast<double>(derivative)};
}

double bessel_scaled_derivative(double nu, double t) {
  check_order(nu, "bessel_scaled_derivative");
  check_argument(t, "bessel_scaled_derivative");
  if (t == 0.0) return 0.0;
  if (t <= kSeriesLimit) {
    // sum_{k>=1} (-1)^k (t/2)^{2k-1} / (2^nu (k-1)! Gamma(k+nu+1))
    const long double x = 0.5L * t;
    long double term = -x / (std::pow(2.0L, static_cast<long double>(nu)) * gamma_fn(nu + 2.0));
    long double sum = term;
    for (int k = 1; k < 500; ++k) {
      term *= -x * x / (k * (k + nu + 1.0L));
      sum += term;
      if (k > x && std::abs(term) <= 1e-21L * std::abs(sum)) break;
      if (term == 0.0L) break;
    }
    return static_cast<double>(sum);
  }
  const BesselValue j = bessel_j(nu, t);
  return std::pow(t, -nu) * (j.derivative - nu * j.value / t);
}

double bessel_flux(double nu, double t) {
  return bessel_scaled_derivative(nu, t) * std::pow(t, 2.0 * nu + 1.0);
}

double bessel_zero(double nu) {
  if (!std::isfinite(nu) || nu < 0.0 || nu > 20.0) {
    throw DomainError("bessel_zero: order must lie in [0, 20]");
  }
  const auto f = [nu](double t) { return bessel_j(nu, t).value; };

  constexpr double kStep = 0.1;
  double lo = std::max(nu, 1.0);
  double f_lo = f(lo);
  if (!(f_lo > 0.0)) throw ComputationError("bessel_zero: J_nu not positive at scan start");
  double hi = lo;
  double f_hi = f_lo;
  const double scan_end = lo + 50.0;
  while (f_hi > 0.0) {
    lo = hi;
    f_lo = f_hi;
    hi += kStep;
    if (hi > scan_end) throw ComputationError("bessel_zero: no sign change found");
    f_hi = f(hi);
  }
  if (f_hi == 0.0) return hi;

  while (hi - lo > 1e-6) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    (f_mid > 0.0 ? lo : hi) = mid;
  }

  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 50; ++iter) {
    const BesselValue j = bessel_j(nu, x);
    if (j.derivative == 0.0) break;
    const double step = j.value / j.derivative;
    const double next = x - step;
    if (next <= lo - 1e-6 || next >= hi + 1e-6) {
      throw ComputationError("bessel_zero: Newton step left the bracket");
    }
    x = next;
    if (std::abs(step) < 1e-12) return x;
  }
  if (std::abs(f(x)) > 1e-12) throw ComputationError("bessel_zero: Newton did not converge");
  return x;
}

double bessel_j0_zero() {
  static const double j0 = bessel_zero(0.0);
  return j0;
}

Lemma21Gap lemma21_gap(double nu, double s) {
  check_order(nu, "lemma21_gap");
  check_argument(s, "lemma21_gap");
  const double jnu = bessel_zero(nu);
  if (s > jnu * (1.0 + 1e-12)) {
    throw DomainError("lemma21_gap: s exceeds the first zero j_nu");
  }
  if (s == 0.0) return {0.0, 0.0};
  const auto energy = [nu](double t) {
    const double d = bessel_scaled_derivative(nu, t);
    return d * d * std::pow(t, 2.0 * nu + 1.0);
  };
  const auto mass = [nu](double t) {
    const double j = bessel_j(nu, t).value;
    return j * j * t;
  };
  return {integrate_adaptive(energy, 0.0, s, 1e-10).value,
          integrate_adaptive(mass, 0.0, s, 1e-10).value};
}

double eq22_residual(double nu, double t) {
  check_order(nu, "eq22_residual");
  if (!(t > 0.0)) throw DomainError("eq22_residual: t must be positive");
  check_argument(t, "eq22_residual");
  const BesselValue j = bessel_j(nu, t);
  const double j_next = bessel_j(nu + 1.0, t).value;
  // J'_{nu+1} = J_nu - (nu+1)/t J_{nu+1};  J''_nu = -nu/t^2 J_nu + nu/t J'_nu - J'_{nu+1}
  const double next_derivative = j.value - (nu + 1.0) / t * j_next;
  const double second = -nu / (t * t) * j.value + nu / t * j.derivative - next_derivative;
  const double tp = std::pow(t, nu);
  return std::abs(tp * t * second + tp * j.derivative - nu * nu * tp / t * j.value +
                  tp * t * j.value);
}

}  // namespace polya

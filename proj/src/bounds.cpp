#include "polya/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "polya/errors.hpp"
#include "polya/special_functions.hpp"

namespace polya {

double unit_ball_volume(int d) {
  if (d < 1 || d > 24) throw PreconditionError("unit_ball_volume: d must lie in [1, 24]");
  return std::pow(std::numbers::pi, 0.5 * d) / gamma_fn(0.5 * d + 1.0);
}

WeylBounds bound_values(double area, double lambda, int d) {
  if (!(area > 0.0)) throw PreconditionError("bound_values: area must be positive");
  if (!(lambda >= 0.0)) throw PreconditionError("bound_values: lambda must be non-negative");
  const double polya =
      unit_ball_volume(d) * area * std::pow(lambda, 0.5 * d) / std::pow(2.0 * std::numbers::pi, d);
  return {polya, 2.0 / (d + 2.0) * polya};
}

double convex_coefficient() {
  const double j0 = bessel_j0_zero();
  return 1.0 / (2.0 * std::sqrt(3.0) * j0 * j0);
}

double convex_bound(double area, double lambda) {
  if (!(area > 0.0)) throw PreconditionError("convex_bound: area must be positive");
  if (!(lambda >= 0.0)) throw PreconditionError("convex_bound: lambda must be non-negative");
  return area * lambda * convex_coefficient();
}

bool eigenvalue_form_check(const NeumannSpectrum& s, long l, double fem_slack) {
  if (l < 1) throw PreconditionError("eigenvalue_form_check: l must be at least 1");
  if (static_cast<std::size_t>(l) + 1 > s.eigenvalues.size()) {
    throw RangeError("eigenvalue_form_check: mu_{l+1} not computed for l = " + std::to_string(l));
  }
  const double limit = static_cast<double>(l) / (convex_coefficient() * s.domain_area);
  const double slack = s.analytic ? 0.0 : fem_slack;
  return s.eigenvalues[static_cast<std::size_t>(l)] <= limit * (1.0 + slack);
}

BoundReport verify_main_theorem(const ConvexPolygond& p, double lambda, const NeumannSpectrum& spectrum,
                                const VerifyOptions& options) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw PreconditionError("verify_main_theorem: lambda must be positive");
  }
  BoundReport report;
  report.lambda = lambda;
  report.area = p.area();
  const WeylBounds weyl = bound_values(report.area, lambda, 2);
  report.polya = weyl.polya;
  report.kroger = weyl.kroger;
  report.convex = convex_bound(report.area, lambda);

  const double j0 = bessel_j0_zero();
  report.r = j0 / std::sqrt(lambda);
  const PackingResultd packing = packing_points(p, report.r, options.shift_search);
  report.packing_l = static_cast<long>(packing.count());
  report.guaranteed_min = packing.guaranteed_min;
  report.packing_ok = static_cast<double>(report.packing_l) >= report.guaranteed_min - 1e-9;

  if (report.packing_l >= 1) {
    const TestFunctionPack pack = build_pack(p, packing.points, report.r, options.quadrature);
    report.certificate = certified_upper_bound(pack);
    report.certificate_ok = report.certificate <= lambda * (1.0 + 1e-8);
  } else {
    report.certificate = std::numeric_limits<double>::quiet_NaN();
    report.certificate_ok = true;
  }

  const double read_at = lambda * (1.0 + (spectrum.analytic ? 0.0 : options.fem_slack));
  if (read_at > trust_threshold(spectrum)) {
    throw RangeError("verify_main_theorem: lambda = " + std::to_string(read_at) +
                     " beyond the spectrum trust threshold " + std::to_string(trust_threshold(spectrum)));
  }
  report.n_N = counting_function(spectrum, read_at);
  report.spectrum_ok = report.n_N >= report.packing_l;
  if (report.packing_l >= 1 && static_cast<std::size_t>(report.packing_l) <= spectrum.eigenvalues.size()) {
    report.mu_l = spectrum.eigenvalues[static_cast<std::size_t>(report.packing_l - 1)];
  }
  report.pass = static_cast<double>(report.n_N) >= report.convex;
  return report;
}

BoundReport verify_main_theorem(const ConvexPolygond& p, double lambda, double h,
                                const VerifyOptions& options) {
  const NeumannSpectrum spectrum = fem_spectrum_covering(p, h, lambda * (1.0 + options.fem_slack));
  return verify_main_theorem(p, lambda, spectrum, options);
}

DimComparison dim_comparison(int d) {
  if (d < 2 || d > 24) throw PreconditionError("dim_comparison: d must lie in [2, 24]");
  DimComparison row;
  row.d = d;
  const double ball = unit_ball_volume(d);
  row.kroger_coeff = 2.0 / (d + 2.0) * ball / std::pow(2.0 * std::numbers::pi, d);
  const double j_half = bessel_zero(0.5 * d);
  const double j_below = d == 2 ? bessel_j0_zero() : bessel_zero(0.5 * d - 1.0);
  const double g = gamma_fn(0.5 * (d + 2.0));
  row.levenshtein_density = std::pow(j_half, d) / (std::pow(2.0, 2.0 * d) * g * g);
  row.remark_rhs = row.levenshtein_density / (ball * std::pow(j_below, d));
  row.strict = row.remark_rhs < row.kroger_coeff;
  return row;
}

std::vector<DimComparison> highdim_table(int d_min, int d_max) {
  if (d_min < 3 || d_max > 24 || d_min > d_max) {
    throw PreconditionError("highdim_table: need 3 <= d_min <= d_max <= 24");
  }
  std::vector<DimComparison> rows;
  for (int d = d_min; d <= d_max; ++d) rows.push_back(dim_comparison(d));
  return rows;
}

double hexagonal_packing_density() { return std::numbers::pi / std::sqrt(12.0); }

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw PreconditionError("log_spaced: need 0 < lo <= hi, count >= 1");
  std::vector<double> values;
  if (count == 1) return {lo};
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) values.push_back(lo * std::exp(step * i));
  values.back() = hi;
  return values;
}

}  // namespace polya

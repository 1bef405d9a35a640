#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "polya/bounds.hpp"
#include "polya/errors.hpp"
#include "polya/special_functions.hpp"

using namespace polya;

namespace {

constexpr double kPi = std::numbers::pi;

double round4(double x) { return std::round(x * 1e4) / 1e4; }

}  // namespace

TEST(BoundValues, PlanarCoefficients) {
  const WeylBounds w = bound_values(1.0, 1.0, 2);
  EXPECT_NEAR(w.polya, 1 / (4 * kPi), 1e-16);
  EXPECT_NEAR(w.kroger, 1 / (8 * kPi), 1e-16);
  EXPECT_EQ(round4(w.polya), 0.0796);
  EXPECT_EQ(round4(w.kroger), 0.0398);
  EXPECT_NEAR(bound_values(1.0, 4 * kPi, 2).polya, 1.0, 1e-15);
}

TEST(BoundValues, UnitBallVolumes) {
  EXPECT_NEAR(unit_ball_volume(1), 2.0, 1e-14);
  EXPECT_NEAR(unit_ball_volume(2), kPi, 1e-14);
  EXPECT_NEAR(unit_ball_volume(3), 4 * kPi / 3, 1e-14);
  EXPECT_NEAR(unit_ball_volume(8), std::pow(kPi, 4) / 24, 1e-13);
}

TEST(BoundValues, KrogerIsScaledPolya) {
  for (int d = 1; d <= 24; ++d) {
    const WeylBounds w = bound_values(2.5, 40.0, d);
    EXPECT_NEAR(w.kroger, 2.0 / (d + 2) * w.polya, 1e-15 * w.polya);
  }
}

TEST(BoundValues, Preconditions) {
  EXPECT_THROW(bound_values(0.0, 1.0, 2), PreconditionError);
  EXPECT_THROW(bound_values(1.0, -1.0, 2), PreconditionError);
  EXPECT_THROW(bound_values(1.0, 1.0, 25), PreconditionError);
}

TEST(ConvexBound, Coefficient) {
  EXPECT_NEAR(convex_coefficient(), 0.04991628082589278, 1e-16);
  EXPECT_EQ(round4(convex_coefficient()), 0.0499);
  EXPECT_EQ(convex_bound(1.0, 0.0), 0.0);
  EXPECT_NEAR(convex_bound(1.0, 100.0), 4.991628082589278, 1e-13);
  EXPECT_LT(1 / (8 * kPi), convex_coefficient());
  EXPECT_LT(convex_coefficient(), 1 / (4 * kPi));
}

TEST(EigenvalueForm, UnitSquare) {
  const NeumannSpectrum s = rectangle_spectrum(1.0, 1.0, 400.0);
  EXPECT_TRUE(eigenvalue_form_check(s, 1));
  EXPECT_NEAR(s.eigenvalues[12], 10 * kPi * kPi, 1e-12);
  EXPECT_TRUE(eigenvalue_form_check(s, 12));
  EXPECT_NEAR(1.0 / convex_coefficient(), 20.03354383488595, 1e-12);
  EXPECT_THROW(eigenvalue_form_check(s, 0), PreconditionError);
  EXPECT_THROW(eigenvalue_form_check(s, static_cast<long>(s.eigenvalues.size())), RangeError);
}

TEST(VerifyMainTheorem, UnitSquareAnalytic) {
  const ConvexPolygond square = rectangle(1.0, 1.0);
  for (double lambda : {25.0, 100.0, 400.0}) {
    const BoundReport r = verify_main_theorem(square, lambda, rectangle_spectrum(1.0, 1.0, lambda));
    EXPECT_TRUE(r.consistent()) << lambda;
    EXPECT_NEAR(r.kroger, r.polya / 2, 1e-15 * r.polya);
    EXPECT_LT(r.kroger, r.convex);
    EXPECT_LT(r.convex, r.polya);
    EXPECT_DOUBLE_EQ(r.guaranteed_min, r.convex);
    EXPECT_LE(r.certificate, lambda * (1 + 1e-8));
  }
  const BoundReport at100 = verify_main_theorem(square, 100.0, rectangle_spectrum(1.0, 1.0, 100.0));
  EXPECT_EQ(at100.n_N, 13);
  EXPECT_GE(at100.packing_l, 5);
  EXPECT_TRUE(at100.pass);
}

TEST(VerifyMainTheorem, SmallLambdaPassesTrivially) {
  const BoundReport r = verify_main_theorem(rectangle(1.0, 1.0), 1.0, rectangle_spectrum(1.0, 1.0, 1.0));
  EXPECT_NEAR(r.r, bessel_j0_zero(), 1e-15);
  EXPECT_NEAR(r.guaranteed_min, 0.0499162808, 1e-9);
  EXPECT_EQ(r.n_N, 1);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.consistent());
}

TEST(VerifyMainTheorem, RejectsNonPositiveLambda) {
  EXPECT_THROW(verify_main_theorem(rectangle(1.0, 1.0), 0.0, rectangle_spectrum(1.0, 1.0, 1.0)), PreconditionError);
}

TEST(VerifyMainTheorem, RangeErrorBeyondSpectrum) {
  EXPECT_THROW(verify_main_theorem(rectangle(1.0, 1.0), 200.0, rectangle_spectrum(1.0, 1.0, 100.0)), RangeError);
}

TEST(VerifyMainTheorem, HexagonWithFem) {
  const BoundReport r = verify_main_theorem(hexagon(1.0), 200.0, 0.02);
  EXPECT_NEAR(r.convex, 25.937260354589, 1e-9);
  EXPECT_GE(r.n_N, 26);
  EXPECT_TRUE(r.consistent());
  ASSERT_TRUE(r.mu_l.has_value());
  EXPECT_LE(*r.mu_l, r.certificate * 1.02);
}

TEST(DimTable, FrozenRows) {
  const DimComparison d3 = dim_comparison(3);
  EXPECT_NEAR(d3.kroger_coeff / 0.00675474557615585, 1.0, 1e-12);
  EXPECT_NEAR(d3.levenshtein_density / 0.802186985511008, 1.0, 1e-10);
  EXPECT_NEAR(d3.remark_rhs / 0.00617642801864604, 1.0, 1e-10);
  const DimComparison d8 = dim_comparison(8);
  EXPECT_NEAR(d8.kroger_coeff / 3.34179109853006e-7, 1.0, 1e-12);
  EXPECT_NEAR(d8.levenshtein_density / 0.291254706725118, 1.0, 1e-10);
  EXPECT_NEAR(d8.remark_rhs / 2.6135517931765e-8, 1.0, 1e-10);
  const DimComparison d24 = dim_comparison(24);
  EXPECT_NEAR(d24.kroger_coeff / 1.03562211362337e-23, 1.0, 1e-12);
  EXPECT_NEAR(d24.levenshtein_density / 0.00341970978746039, 1.0, 1e-9);
  EXPECT_NEAR(d24.remark_rhs / 4.17179231332283e-29, 1.0, 1e-9);
}

TEST(DimTable, StrictForAllDimensions) {
  const std::vector<DimComparison> rows = highdim_table(3, 24);
  ASSERT_EQ(rows.size(), 22u);
  for (const DimComparison& row : rows) {
    EXPECT_TRUE(row.strict) << row.d;
    EXPECT_LT(row.remark_rhs, row.kroger_coeff);
  }
  EXPECT_THROW(highdim_table(2, 5), PreconditionError);
  EXPECT_THROW(highdim_table(5, 25), PreconditionError);
  EXPECT_THROW(highdim_table(6, 5), PreconditionError);
}

TEST(LogSpaced, Endpoints) {
  const std::vector<double> v = log_spaced(10.0, 1000.0, 3);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[0], 10.0);
  EXPECT_NEAR(v[1], 100.0, 1e-12);
  EXPECT_DOUBLE_EQ(v[2], 1000.0);
}

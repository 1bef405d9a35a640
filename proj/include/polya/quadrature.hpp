#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <functional>

namespace polya {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;          ///< summed |K15 - G7| over the final partition
  std::size_t intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration on [a, b].
/// Bisects the interval with the largest error estimate until the summed estimate
/// drops below abs_tol. Throws ComputationError if max_intervals is reached first.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                    double abs_tol = 1e-10, std::size_t max_intervals = 100000);

/// n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

GaussLegendreRule gauss_legendre(int n);

}  // namespace polya

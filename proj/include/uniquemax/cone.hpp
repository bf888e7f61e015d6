#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace uniquemax {

/// Extreme rays (unit length) of the polyhedral cone {a : R a >= 0} by the
/// double description method. R must have full column rank, which makes
/// the cone pointed; otherwise throws kNotPointed. Throws kBudgetExceeded
/// when an intermediate representation exceeds `max_rays`.
std::vector<Eigen::VectorXd> extreme_rays(const Eigen::MatrixXd& constraints,
                                          std::size_t max_rays = 20000,
                                          double tolerance = 1e-10);

struct Separator {
  Eigen::VectorXd phi;
  /// min_k phi.g_k / |g_k| over the generators.
  double margin = 0.0;
};

/// Solves max t s.t. phi.g_k >= t |g_k|, |phi|_inf <= 1 by linear
/// programming. A positive margin places phi in the interior of the dual
/// of cone(generators).
Separator max_margin_separator(const std::vector<Eigen::VectorXd>& generators,
                               std::size_t dim);

}  // namespace uniquemax

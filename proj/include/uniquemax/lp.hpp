#pragma once

#include <Eigen/Dense>

namespace uniquemax {

enum class LpStatus { kOptimal, kUnbounded, kIterationLimit };

struct LpResult {
  LpStatus status = LpStatus::kOptimal;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Dense tableau simplex (Bland's rule) for
///   maximize c.x  subject to  A x <= b,  x >= 0,
/// with b >= 0 so that the origin is a feasible start.
LpResult maximize_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                     const Eigen::VectorXd& c, int max_pivots = 100000);

}  // namespace uniquemax

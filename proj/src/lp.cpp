#include "uniquemax/lp.hpp"

#include <cmath>
#include <limits>

#include "uniquemax/error.hpp"

namespace uniquemax {

LpResult maximize_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                     int max_pivots) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "LP data has inconsistent shapes");
  }
  if ((b.array() < 0.0).any()) {
    throw Error(ErrorKind::kInvalidArgument, "LP right-hand side must be nonnegative");
  }
  constexpr double kEps = 1e-12;

  // Tableau [A I b; -c 0 0].
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  t.topLeftCorner(m, n) = A;
  t.block(0, n, m, m).setIdentity();
  t.topRightCorner(m, 1) = b;
  t.bottomLeftCorner(1, n) = -c.transpose();
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

  LpResult result;
  int pivots = 0;
  while (true) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (t(m, j) < -kEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    if (++pivots > max_pivots) {
      result.status = LpStatus::kIterationLimit;
      break;
    }
    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = t(i, enter);
      if (a <= kEps) continue;
      const double ratio = t(i, n + m) / a;
      if (ratio < best_ratio - kEps ||
          (ratio <= best_ratio + kEps && leave >= 0 &&
           basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        best_ratio = std::min(best_ratio, ratio);
        leave = i;
      }
    }
    if (leave < 0) {
      result.status = LpStatus::kUnbounded;
      break;
    }
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  result.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index j = basis[static_cast<std::size_t>(i)];
    if (j < n) result.x[j] = t(i, n + m);
  }
  result.objective = c.dot(result.x);
  return result;
}

}  // namespace uniquemax

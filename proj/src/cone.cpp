#include "uniquemax/cone.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "uniquemax/error.hpp"
#include "uniquemax/lp.hpp"

namespace uniquemax {

namespace {

class ZeroSet {
 public:
  explicit ZeroSet(std::size_t bits) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  ZeroSet intersect(const ZeroSet& o) const {
    ZeroSet out(0);
    out.words_.resize(words_.size());
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] & o.words_[w];
    return out;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Ray {
  Eigen::VectorXd v;
  ZeroSet zeros;
};

Eigen::Index matrix_rank(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(tol);
  return qr.rank();
}

}  // namespace

std::vector<Eigen::VectorXd> extreme_rays(const Eigen::MatrixXd& constraints,
                                          std::size_t max_rays, double tolerance) {
  const Eigen::Index m = constraints.cols();
  // Normalized nonzero rows.
  std::vector<Eigen::VectorXd> rows;
  for (Eigen::Index i = 0; i < constraints.rows(); ++i) {
    const double nrm = constraints.row(i).norm();
    if (nrm > tolerance) rows.push_back(constraints.row(i).transpose() / nrm);
  }
  const std::size_t k_rows = rows.size();

  // Start from the m most independent rows (column-pivoted QR of the
  // transposed constraints), which keeps the initial inverse well conditioned.
  Eigen::MatrixXd stacked(m, static_cast<Eigen::Index>(k_rows));
  for (std::size_t i = 0; i < k_rows; ++i) stacked.col(static_cast<Eigen::Index>(i)) = rows[i];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> pivots(stacked);
  pivots.setThreshold(1e-9);
  const auto rank = k_rows == 0 ? Eigen::Index{0} : pivots.rank();
  if (rank < m) {
    throw Error(ErrorKind::kNotPointed,
                "constraint matrix has rank " + std::to_string(rank) + " < " +
                    std::to_string(m) + ": the cone contains a line");
  }
  std::vector<std::size_t> chosen;
  for (Eigen::Index i = 0; i < m; ++i) {
    chosen.push_back(static_cast<std::size_t>(pivots.colsPermutation().indices()[i]));
  }

  // Processing order: chosen rows first, then the rest.
  std::vector<std::size_t> order(chosen);
  {
    std::vector<bool> used(k_rows, false);
    for (std::size_t c : chosen) used[c] = true;
    for (std::size_t i = 0; i < k_rows; ++i) {
      if (!used[i]) order.push_back(i);
    }
  }
  Eigen::MatrixXd all(static_cast<Eigen::Index>(k_rows), m);
  for (std::size_t pos = 0; pos < k_rows; ++pos) {
    all.row(static_cast<Eigen::Index>(pos)) = rows[order[pos]].transpose();
  }

  Eigen::MatrixXd basis = all.topRows(m);
  const Eigen::MatrixXd inv = basis.inverse();
  std::vector<Ray> rays;
  for (Eigen::Index i = 0; i < m; ++i) {
    Ray r{inv.col(i).normalized(), ZeroSet(k_rows)};
    for (Eigen::Index j = 0; j < m; ++j) {
      if (j != i) r.zeros.set(static_cast<std::size_t>(j));
    }
    rays.push_back(std::move(r));
  }

  for (std::size_t pos = static_cast<std::size_t>(m); pos < k_rows; ++pos) {
    const Eigen::VectorXd row = all.row(static_cast<Eigen::Index>(pos)).transpose();
    std::vector<double> s(rays.size());
    std::vector<std::size_t> positive, negative;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      s[r] = row.dot(rays[r].v);
      if (s[r] > tolerance) positive.push_back(r);
      else if (s[r] < -tolerance) negative.push_back(r);
      else rays[r].zeros.set(pos);
    }
    if (negative.empty()) continue;

    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (s[r] >= -tolerance) next.push_back(rays[r]);
    }
    for (std::size_t p : positive) {
      for (std::size_t q : negative) {
        ZeroSet common = rays[p].zeros.intersect(rays[q].zeros);
        const std::size_t shared = common.count();
        if (static_cast<Eigen::Index>(shared) < m - 2) continue;
        Eigen::MatrixXd active(static_cast<Eigen::Index>(shared), m);
        Eigen::Index row_i = 0;
        common.for_each([&](std::size_t c) {
          active.row(row_i++) = all.row(static_cast<Eigen::Index>(c));
        });
        if (matrix_rank(active, 1e-9) != m - 2) continue;
        Eigen::VectorXd v = s[p] * rays[q].v - s[q] * rays[p].v;
        const double nrm = v.norm();
        if (nrm <= tolerance) continue;
        common.set(pos);
        next.push_back(Ray{v / nrm, std::move(common)});
        if (next.size() > max_rays) {
          throw Error(ErrorKind::kBudgetExceeded,
                      "double description exceeded " + std::to_string(max_rays) + " rays");
        }
      }
    }
    rays = std::move(next);
  }

  std::vector<Eigen::VectorXd> out;
  out.reserve(rays.size());
  for (auto& r : rays) out.push_back(std::move(r.v));
  return out;
}

Separator max_margin_separator(const std::vector<Eigen::VectorXd>& generators, std::size_t dim) {
  const auto m = static_cast<Eigen::Index>(dim);
  const auto k = static_cast<Eigen::Index>(generators.size());
  // Variables: phi_plus (m), phi_minus (m), t.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(k + 2 * m, 2 * m + 1);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k + 2 * m);
  for (Eigen::Index i = 0; i < k; ++i) {
    const Eigen::VectorXd g = generators[static_cast<std::size_t>(i)].normalized();
    A.block(i, 0, 1, m) = -g.transpose();
    A.block(i, m, 1, m) = g.transpose();
    A(i, 2 * m) = 1.0;
  }
  for (Eigen::Index j = 0; j < 2 * m; ++j) {
    A(k + j, j) = 1.0;
    b[k + j] = 1.0;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * m + 1);
  c[2 * m] = 1.0;
  const LpResult lp = maximize_lp(A, b, c);
  if (lp.status != LpStatus::kOptimal) {
    throw Error(ErrorKind::kSeparationFailed, "separation LP did not reach an optimum");
  }
  Separator sep;
  sep.phi = lp.x.head(m) - lp.x.segment(m, m);
  sep.margin = std::numeric_limits<double>::infinity();
  for (const auto& g : generators) sep.margin = std::min(sep.margin, sep.phi.dot(g.normalized()));
  if (generators.empty()) sep.margin = 0.0;
  return sep;
}

}  // namespace uniquemax

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "uniquemax/basis.hpp"
#include "uniquemax/grid.hpp"
#include "uniquemax/point.hpp"

namespace uniquemax {

/// Default threshold on the smallest eigenvalue of the column-normalized
/// Gram matrix of grid samples.
inline constexpr double kGramRankThreshold = 1e-8;

/// Evaluable handle for sum_j w_j f_j over the atoms of a subspace.
class Element {
 public:
  Element(std::shared_ptr<const std::vector<BasisFunction>> atoms,
          std::vector<double> weights)
      : atoms_(std::move(atoms)), weights_(std::move(weights)) {}

  std::size_t ambient_dim() const;
  double operator()(std::span<const double> x) const;
  double evaluate(const Point& x) const;
  const std::vector<double>& atom_weights() const { return weights_; }

 private:
  std::shared_ptr<const std::vector<BasisFunction>> atoms_;
  std::vector<double> weights_;
};

/// An ordered basis over a common ambient dimension. Each basis element is
/// a fixed linear combination of shared atoms (row k of `combination`);
/// plain subspaces use the identity.
class Subspace {
 public:
  explicit Subspace(std::vector<BasisFunction> atoms);
  Subspace(std::vector<BasisFunction> atoms, Eigen::MatrixXd combination);
  Subspace(std::shared_ptr<const std::vector<BasisFunction>> atoms,
           Eigen::MatrixXd combination);

  std::size_t ambient_dim() const { return ambient_dim_; }
  /// Number of basis elements m.
  std::size_t dimension() const { return static_cast<std::size_t>(combination_.rows()); }
  std::size_t atom_count() const { return atoms_->size(); }
  const std::vector<BasisFunction>& atoms() const { return *atoms_; }
  const std::shared_ptr<const std::vector<BasisFunction>>& shared_atoms() const {
    return atoms_;
  }
  const Eigen::MatrixXd& combination() const { return combination_; }
  bool is_plain() const;

  /// Weights over atoms for the element with coefficients `a`.
  std::vector<double> atom_weights(const CoefVector& a) const;
  /// Maps basis coefficients of this subspace to atom weights as a vector.
  Element combine(const CoefVector& a) const;
  /// Basis element k as an evaluable handle.
  Element basis_element(std::size_t k) const;

  /// Subspace spanned by rows of `rows` (expressed in this subspace's basis).
  Subspace derived(const Eigen::MatrixXd& rows) const;

 private:
  std::shared_ptr<const std::vector<BasisFunction>> atoms_;
  Eigen::MatrixXd combination_;
  std::size_t ambient_dim_ = 0;
};

struct GramReport {
  /// Eigenvalues of the column-normalized Gram matrix, ascending.
  std::vector<double> eigenvalues;
  std::size_t rank = 0;
  double smallest() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
};

/// Gram spectrum of the basis sampled on `grid`.
GramReport gram_report(const Subspace& s, const TwoChartGrid& grid,
                       double threshold = kGramRankThreshold);

/// Throws kRankDeficient unless the sampled basis has full rank m.
void require_full_rank(const Subspace& s, const TwoChartGrid& grid,
                       double threshold = kGramRankThreshold);

}  // namespace uniquemax

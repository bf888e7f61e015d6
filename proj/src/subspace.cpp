#include "uniquemax/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "uniquemax/error.hpp"
#include "uniquemax/kernels.hpp"

namespace uniquemax {

std::size_t Element::ambient_dim() const {
  return atoms_->empty() ? 0 : atoms_->front().ambient_dim();
}

double Element::operator()(std::span<const double> x) const {
  double total = 0.0;
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    if (weights_[j] != 0.0) total += weights_[j] * (*atoms_)[j](x);
  }
  return total;
}

double Element::evaluate(const Point& x) const {
  if (x.dim() != ambient_dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "point has dimension " + std::to_string(x.dim()) +
                    " but the element lives in dimension " + std::to_string(ambient_dim()));
  }
  return (*this)(x.coords());
}

Subspace::Subspace(std::vector<BasisFunction> atoms)
    : Subspace(std::make_shared<const std::vector<BasisFunction>>(std::move(atoms)),
               Eigen::MatrixXd()) {}

Subspace::Subspace(std::vector<BasisFunction> atoms, Eigen::MatrixXd combination)
    : Subspace(std::make_shared<const std::vector<BasisFunction>>(std::move(atoms)),
               std::move(combination)) {}

Subspace::Subspace(std::shared_ptr<const std::vector<BasisFunction>> atoms,
                   Eigen::MatrixXd combination)
    : atoms_(std::move(atoms)), combination_(std::move(combination)) {
  if (!atoms_ || atoms_->empty()) {
    throw Error(ErrorKind::kInvalidArgument, "subspace needs at least one basis function");
  }
  ambient_dim_ = atoms_->front().ambient_dim();
  for (const auto& f : *atoms_) {
    if (f.ambient_dim() != ambient_dim_) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "basis functions disagree on ambient dimension (" +
                      std::to_string(ambient_dim_) + " vs " + std::to_string(f.ambient_dim()) +
                      ")");
    }
  }
  const auto k = static_cast<Eigen::Index>(atoms_->size());
  if (combination_.size() == 0) combination_ = Eigen::MatrixXd::Identity(k, k);
  if (combination_.cols() != k || combination_.rows() == 0) {
    throw Error(ErrorKind::kDimensionMismatch,
                "combination matrix needs " + std::to_string(k) + " columns and >= 1 row");
  }
  if (!combination_.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "combination matrix must be finite");
  }
}

bool Subspace::is_plain() const {
  return combination_.rows() == combination_.cols() &&
         combination_.isApprox(Eigen::MatrixXd::Identity(combination_.rows(), combination_.cols()),
                               0.0);
}

std::vector<double> Subspace::atom_weights(const CoefVector& a) const {
  if (a.dim() != dimension()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "coefficient vector has dimension " + std::to_string(a.dim()) +
                    " but the subspace has dimension " + std::to_string(dimension()));
  }
  std::vector<double> w(atom_count(), 0.0);
  for (std::size_t k = 0; k < dimension(); ++k) {
    if (a[k] == 0.0) continue;
    for (std::size_t j = 0; j < atom_count(); ++j) {
      w[j] += a[k] * combination_(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j));
    }
  }
  return w;
}

Element Subspace::combine(const CoefVector& a) const { return Element(atoms_, atom_weights(a)); }

Element Subspace::basis_element(std::size_t k) const {
  std::vector<double> e(dimension(), 0.0);
  e.at(k) = 1.0;
  return combine(CoefVector(std::move(e)));
}

Subspace Subspace::derived(const Eigen::MatrixXd& rows) const {
  if (rows.cols() != combination_.rows()) {
    throw Error(ErrorKind::kDimensionMismatch, "derived basis has the wrong number of columns");
  }
  return Subspace(atoms_, rows * combination_);
}

GramReport gram_report(const Subspace& s, const TwoChartGrid& grid, double threshold) {
  if (grid.dim() != s.ambient_dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "grid dimension " + std::to_string(grid.dim()) + " vs subspace dimension " +
                    std::to_string(s.ambient_dim()));
  }
  const AtomSamples samples =
      kernels::sample_atoms(s.atoms(), grid.coordinates(), grid.dim());
  const auto atoms = static_cast<Eigen::Index>(samples.atoms);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> v(
      samples.values.data(), static_cast<Eigen::Index>(samples.points), atoms);
  const Eigen::MatrixXd atom_gram = v.transpose() * v;
  const Eigen::MatrixXd& c = s.combination();
  Eigen::MatrixXd gram = c * atom_gram * c.transpose();
  const Eigen::Index m = gram.rows();
  Eigen::VectorXd scale(m);
  for (Eigen::Index k = 0; k < m; ++k) {
    scale[k] = gram(k, k) > 0.0 ? 1.0 / std::sqrt(gram(k, k)) : 0.0;
  }
  gram = scale.asDiagonal() * gram * scale.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  GramReport report;
  report.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end());
  report.rank = static_cast<std::size_t>(
      std::count_if(report.eigenvalues.begin(), report.eigenvalues.end(),
                    [&](double e) { return e > threshold; }));
  return report;
}

void require_full_rank(const Subspace& s, const TwoChartGrid& grid, double threshold) {
  const GramReport report = gram_report(s, grid, threshold);
  if (report.rank < s.dimension()) {
    throw Error(ErrorKind::kRankDeficient,
                "basis is numerically dependent on the grid: rank " +
                    std::to_string(report.rank) + " < dimension " +
                    std::to_string(s.dimension()) + " (smallest Gram eigenvalue " +
                    std::to_string(report.smallest()) + ")",
                report.eigenvalues);
  }
}

}  // namespace uniquemax

#include "uniquemax/witness.hpp"

#include <cmath>
#include <string>

#include "uniquemax/error.hpp"

namespace uniquemax {

Point inversion_extension(const Point& x) {
  std::vector<double> out(x.dim());
  inversion_extension(x.coords(), out);
  return Point(std::move(out));
}

Subspace witness_basis(std::size_t n, std::size_t max_dim) {
  if (n < 1 || n > max_dim) {
    throw Error(ErrorKind::kInvalidArgument, "witness dimension " + std::to_string(n) +
                                                 " outside [1, " + std::to_string(max_dim) + "]");
  }
  std::vector<BasisFunction> atoms;
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) atoms.push_back(BasisFunction::projection_inversion(n, i));
  return Subspace(std::move(atoms));
}

AnalyticMaxResult analytic_max(const CoefVector& a) {
  if (a.is_zero()) {
    throw Error(ErrorKind::kInvalidArgument, "zero element has no maximum certificate");
  }
  const double r = a.norm();
  std::vector<double> x(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) x[i] = a[i] / r;
  return {Point(std::move(x)), r, r};
}

bool interior_strictness_check(const CoefVector& a, const Point& y, double strict_floor) {
  if (a.is_zero()) {
    throw Error(ErrorKind::kInvalidArgument, "zero element has no maximum certificate");
  }
  if (a.dim() != y.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "coefficients have dimension " + std::to_string(a.dim()) + ", point has " +
                    std::to_string(y.dim()));
  }
  if (y.norm() == 1.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "interior check requires |y| != 1 (y lies on the unit sphere)");
  }
  std::vector<double> g(y.dim());
  inversion_extension(y.coords(), g);
  return dot(a.coefs(), g) < a.norm() - strict_floor;
}

}  // namespace uniquemax

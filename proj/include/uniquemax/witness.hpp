#pragma once

#include <cstddef>

#include "uniquemax/point.hpp"
#include "uniquemax/subspace.hpp"

namespace uniquemax {

inline constexpr std::size_t kDefaultMaxWitnessDim = 8;

/// Closed-form maximum of sum_i a_i (pi_i o G): attained only at a/|a|
/// with value |a|.
struct AnalyticMaxResult {
  Point argmax;
  double value = 0.0;
  double coef_norm = 0.0;

  bool operator==(const AnalyticMaxResult&) const = default;
};

Point inversion_extension(const Point& x);

/// span{pi_i o G : i = 1..n} as a subspace of n ProjectionInversion atoms.
Subspace witness_basis(std::size_t n, std::size_t max_dim = kDefaultMaxWitnessDim);

AnalyticMaxResult analytic_max(const CoefVector& a);

/// True iff sum_i a_i pi_i(G(y)) < |a| - strict_floor. Requires |y| != 1.
bool interior_strictness_check(const CoefVector& a, const Point& y, double strict_floor = 0.0);

}  // namespace uniquemax

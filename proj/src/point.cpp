#include "uniquemax/point.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uniquemax/error.hpp"

namespace uniquemax {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "dimension_mismatch";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kBudgetExceeded: return "budget_exceeded";
    case ErrorKind::kRankDeficient: return "rank_deficient";
    case ErrorKind::kNotAlternating: return "not_alternating";
    case ErrorKind::kNotPointed: return "not_pointed";
    case ErrorKind::kSeparationFailed: return "separation_failed";
    case ErrorKind::kTailNotCertified: return "tail_not_certified";
    case ErrorKind::kNumeric: return "numeric";
  }
  return "unknown";
}

double norm(std::span<const double> v) {
  // Scaled accumulation keeps |x| finite for huge coordinates.
  double scale = 0.0;
  for (double c : v) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return 0.0;
  if (scale < 1e150 && scale > 1e-150) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double c : v) s += (c / scale) * (c / scale);
  return scale * std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "point must have dimension >= 1");
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorKind::kInvalidArgument, "point coordinates must be finite");
    }
  }
}

Point Point::zero(std::size_t n) { return Point(std::vector<double>(n, 0.0)); }

Point Point::axis(std::size_t n, std::size_t i, double value) {
  std::vector<double> c(n, 0.0);
  c.at(i) = value;
  return Point(std::move(c));
}

CoefVector::CoefVector(std::vector<double> coefs) : coefs_(std::move(coefs)) {
  if (coefs_.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "coefficient vector must have dimension >= 1");
  }
  for (double c : coefs_) {
    if (!std::isfinite(c)) {
      throw Error(ErrorKind::kInvalidArgument, "coefficients must be finite");
    }
  }
}

CoefVector CoefVector::zero(std::size_t m) { return CoefVector(std::vector<double>(m, 0.0)); }

double CoefVector::max_abs() const {
  double m = 0.0;
  for (double c : coefs_) m = std::max(m, std::abs(c));
  return m;
}

CoefVector CoefVector::scaled(double factor) const {
  std::vector<double> out(coefs_);
  for (double& c : out) c *= factor;
  return CoefVector(std::move(out));
}

}  // namespace uniquemax

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uniquemax {

double norm(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
double distance(std::span<const double> a, std::span<const double> b);

/// A point of R^n with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);

  static Point zero(std::size_t n);
  static Point axis(std::size_t n, std::size_t i, double value = 1.0);

  std::size_t dim() const { return coords_.size(); }
  std::span<const double> coords() const { return coords_; }
  const std::vector<double>& values() const { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  double norm() const { return uniquemax::norm(coords_); }

  bool operator==(const Point&) const = default;

 private:
  std::vector<double> coords_;
};

/// Coefficients of an element with respect to a subspace basis. The zero
/// vector is valid and detectable through `is_zero`.
class CoefVector {
 public:
  CoefVector() = default;
  explicit CoefVector(std::vector<double> coefs);

  static CoefVector zero(std::size_t m);

  std::size_t dim() const { return coefs_.size(); }
  std::span<const double> coefs() const { return coefs_; }
  const std::vector<double>& values() const { return coefs_; }
  double operator[](std::size_t i) const { return coefs_[i]; }
  double norm() const { return uniquemax::norm(coefs_); }
  double max_abs() const;
  bool is_zero() const { return max_abs() == 0.0; }

  CoefVector scaled(double factor) const;

  bool operator==(const CoefVector&) const = default;

 private:
  std::vector<double> coefs_;
};

}  // namespace uniquemax

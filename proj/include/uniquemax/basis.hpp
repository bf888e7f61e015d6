#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "uniquemax/point.hpp"

namespace uniquemax {

/// The extension of the identity on the unit sphere used by the witness
/// construction: x on the closed unit ball, x/|x|^2 outside of it.
void inversion_extension(std::span<const double> x, std::span<double> out);

/// pi_axis(G(x)); `axis` is 0-based.
struct ProjectionInversion {
  std::size_t axis = 0;
};

/// sign * exp(-|x - center|^2 / width^2). Peak magnitude is 1.
struct GaussianBump {
  Point center;
  double width = 1.0;
  int sign = 1;
};

/// Multilinear interpolation of node values on the box [lower, upper],
/// zero outside. Values are scaled so that max |value| = 1.
struct SampleTable {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<std::size_t> shape;
  std::vector<double> values;  // row-major, last axis fastest

  // Envelope support: node reach radii sorted ascending with the suffix max
  // of |value| over nodes whose incident cells reach at least that radius.
  std::vector<double> reach;
  std::vector<double> reach_suffix_max;
};

class BasisFunction;

/// f on the closed ball of the given radius, zero outside.
struct BallRestriction {
  std::shared_ptr<const BasisFunction> inner;
  double radius = 1.0;
};

using BasisFamily =
    std::variant<ProjectionInversion, GaussianBump, SampleTable, BallRestriction>;

/// An evaluable element of C_0(R^n) with a sound decay envelope.
/// Immutable after construction.
class BasisFunction {
 public:
  static BasisFunction projection_inversion(std::size_t ambient_dim, std::size_t axis);
  static BasisFunction gaussian(Point center, double width, int sign = 1);
  static BasisFunction sample_table(std::vector<double> lower, std::vector<double> upper,
                                    std::vector<std::size_t> shape,
                                    std::vector<double> values);
  static BasisFunction restricted(BasisFunction inner, double radius);

  std::size_t ambient_dim() const { return dim_; }
  const BasisFamily& family() const { return family_; }
  std::string_view family_name() const;

  /// Unchecked evaluation; `x.size()` must equal `ambient_dim()`.
  double operator()(std::span<const double> x) const;
  /// Checked evaluation.
  double evaluate(const Point& x) const;

  /// Nonincreasing E with sup_{|x| >= radius} |f(x)| <= E(radius).
  double envelope(double radius) const;

  /// Global Lipschitz constant, or +inf when f has jumps.
  double lipschitz_bound() const;

 private:
  BasisFunction(BasisFamily family, std::size_t dim)
      : family_(std::move(family)), dim_(dim) {}

  BasisFamily family_;
  std::size_t dim_ = 0;
};

}  // namespace uniquemax

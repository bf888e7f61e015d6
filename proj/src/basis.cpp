#include "uniquemax/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "uniquemax/error.hpp"

namespace uniquemax {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double c : x) s += c * c;
  return s;
}

double table_node_coordinate(const SampleTable& t, std::size_t axis, std::size_t k) {
  const double span = t.upper[axis] - t.lower[axis];
  return t.lower[axis] + span * static_cast<double>(k) / static_cast<double>(t.shape[axis] - 1);
}

double evaluate_table(const SampleTable& t, std::span<const double> x) {
  const std::size_t n = t.shape.size();
  std::vector<std::size_t> base(n);
  std::vector<double> frac(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (!(x[k] >= t.lower[k] && x[k] <= t.upper[k])) return 0.0;
    const double pos = (x[k] - t.lower[k]) / (t.upper[k] - t.lower[k]) *
                       static_cast<double>(t.shape[k] - 1);
    std::size_t i = static_cast<std::size_t>(std::floor(pos));
    i = std::min(i, t.shape[k] - 2);
    base[k] = i;
    frac[k] = pos - static_cast<double>(i);
  }
  double total = 0.0;
  const std::size_t corners = std::size_t{1} << n;
  for (std::size_t c = 0; c < corners; ++c) {
    double weight = 1.0;
    std::size_t flat = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const bool up = (c >> k) & 1U;
      weight *= up ? frac[k] : 1.0 - frac[k];
      flat = flat * t.shape[k] + base[k] + (up ? 1 : 0);
    }
    if (weight != 0.0) total += weight * t.values[flat];
  }
  return total;
}

void prepare_table_envelope(SampleTable& t) {
  const std::size_t n = t.shape.size();
  const std::size_t count = t.values.size();
  std::vector<std::pair<double, double>> nodes(count);
  std::vector<std::size_t> idx(n, 0);
  for (std::size_t flat = 0; flat < count; ++flat) {
    // Farthest coordinate magnitude among the node and its axis neighbours
    // bounds the farthest corner of every incident cell.
    double reach2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double far = std::abs(table_node_coordinate(t, k, idx[k]));
      if (idx[k] > 0) far = std::max(far, std::abs(table_node_coordinate(t, k, idx[k] - 1)));
      if (idx[k] + 1 < t.shape[k]) {
        far = std::max(far, std::abs(table_node_coordinate(t, k, idx[k] + 1)));
      }
      reach2 += far * far;
    }
    nodes[flat] = {std::sqrt(reach2), std::abs(t.values[flat])};
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < t.shape[k]) break;
      idx[k] = 0;
    }
  }
  std::sort(nodes.begin(), nodes.end());
  t.reach.resize(count);
  t.reach_suffix_max.resize(count);
  double running = 0.0;
  for (std::size_t i = count; i-- > 0;) {
    running = std::max(running, nodes[i].second);
    t.reach[i] = nodes[i].first;
    t.reach_suffix_max[i] = running;
  }
}

double table_lipschitz(const SampleTable& t) {
  const std::size_t n = t.shape.size();
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> axis_max(n, 0.0);
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t k = n - 1; k > 0; --k) stride[k - 1] = stride[k] * t.shape[k];
  for (std::size_t flat = 0; flat < t.values.size(); ++flat) {
    bool boundary = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (idx[k] == 0 || idx[k] + 1 == t.shape[k]) boundary = true;
      if (idx[k] + 1 < t.shape[k]) {
        const double step = (t.upper[k] - t.lower[k]) / static_cast<double>(t.shape[k] - 1);
        axis_max[k] = std::max(
            axis_max[k], std::abs(t.values[flat + stride[k]] - t.values[flat]) / step);
      }
    }
    if (boundary && t.values[flat] != 0.0) return std::numeric_limits<double>::infinity();
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < t.shape[k]) break;
      idx[k] = 0;
    }
  }
  double s = 0.0;
  for (double d : axis_max) s += d * d;
  return std::sqrt(s);
}

}  // namespace

void inversion_extension(std::span<const double> x, std::span<double> out) {
  const double r2 = squared_norm(x);
  if (r2 <= 1.0) {
    std::copy(x.begin(), x.end(), out.begin());
    return;
  }
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / r2;
}

BasisFunction BasisFunction::projection_inversion(std::size_t ambient_dim, std::size_t axis) {
  if (ambient_dim == 0 || axis >= ambient_dim) {
    throw Error(ErrorKind::kInvalidArgument,
                "projection axis " + std::to_string(axis) + " out of range for dimension " +
                    std::to_string(ambient_dim));
  }
  return BasisFunction(ProjectionInversion{axis}, ambient_dim);
}

BasisFunction BasisFunction::gaussian(Point center, double width, int sign) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw Error(ErrorKind::kInvalidArgument, "gaussian width must be positive and finite");
  }
  if (sign != 1 && sign != -1) {
    throw Error(ErrorKind::kInvalidArgument, "gaussian sign must be +1 or -1");
  }
  const std::size_t n = center.dim();
  return BasisFunction(GaussianBump{std::move(center), width, sign}, n);
}

BasisFunction BasisFunction::sample_table(std::vector<double> lower, std::vector<double> upper,
                                          std::vector<std::size_t> shape,
                                          std::vector<double> values) {
  const std::size_t n = shape.size();
  if (n == 0 || lower.size() != n || upper.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                "sample table bounds and shape must share one dimension");
  }
  std::size_t count = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (shape[k] < 2) {
      throw Error(ErrorKind::kInvalidArgument, "sample table needs >= 2 nodes per axis");
    }
    if (!(upper[k] > lower[k]) || !std::isfinite(lower[k]) || !std::isfinite(upper[k])) {
      throw Error(ErrorKind::kInvalidArgument, "sample table bounds must satisfy lower < upper");
    }
    count *= shape[k];
  }
  if (values.size() != count) {
    throw Error(ErrorKind::kDimensionMismatch,
                "sample table has " + std::to_string(values.size()) + " values, shape needs " +
                    std::to_string(count));
  }
  double peak = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::kInvalidArgument, "sample table values must be finite");
    }
    peak = std::max(peak, std::abs(v));
  }
  if (peak == 0.0) {
    throw Error(ErrorKind::kInvalidArgument, "sample table is identically zero");
  }
  for (double& v : values) v /= peak;
  SampleTable t{std::move(lower), std::move(upper), std::move(shape), std::move(values), {}, {}};
  prepare_table_envelope(t);
  return BasisFunction(std::move(t), n);
}

BasisFunction BasisFunction::restricted(BasisFunction inner, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::kInvalidArgument, "restriction radius must be positive");
  }
  const std::size_t n = inner.ambient_dim();
  return BasisFunction(
      BallRestriction{std::make_shared<const BasisFunction>(std::move(inner)), radius}, n);
}

std::string_view BasisFunction::family_name() const {
  return std::visit(Overloaded{
                        [](const ProjectionInversion&) { return "projection_inversion"; },
                        [](const GaussianBump&) { return "gaussian"; },
                        [](const SampleTable&) { return "sample_table"; },
                        [](const BallRestriction&) { return "ball_restriction"; },
                    },
                    family_);
}

double BasisFunction::operator()(std::span<const double> x) const {
  return std::visit(
      Overloaded{
          [&](const ProjectionInversion& p) {
            const double r2 = squared_norm(x);
            return r2 <= 1.0 ? x[p.axis] : x[p.axis] / r2;
          },
          [&](const GaussianBump& g) {
            const double d2 = [&] {
              double s = 0.0;
              for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - g.center[i];
                s += d * d;
              }
              return s;
            }();
            return g.sign * std::exp(-d2 / (g.width * g.width));
          },
          [&](const SampleTable& t) { return evaluate_table(t, x); },
          [&](const BallRestriction& r) {
            return squared_norm(x) <= r.radius * r.radius ? (*r.inner)(x) : 0.0;
          },
      },
      family_);
}

double BasisFunction::evaluate(const Point& x) const {
  if (x.dim() != dim_) {
    throw Error(ErrorKind::kDimensionMismatch,
                "point has dimension " + std::to_string(x.dim()) +
                    " but the basis function lives in dimension " + std::to_string(dim_));
  }
  return (*this)(x.coords());
}

double BasisFunction::envelope(double radius) const {
  return std::visit(
      Overloaded{
          [&](const ProjectionInversion&) { return radius <= 1.0 ? 1.0 : 1.0 / radius; },
          [&](const GaussianBump& g) {
            const double c = g.center.norm();
            if (radius <= c) return 1.0;
            const double d = (radius - c) / g.width;
            return std::exp(-d * d);
          },
          [&](const SampleTable& t) {
            const auto it = std::lower_bound(t.reach.begin(), t.reach.end(), radius);
            if (it == t.reach.end()) return 0.0;
            return t.reach_suffix_max[static_cast<std::size_t>(it - t.reach.begin())];
          },
          [&](const BallRestriction& r) {
            return radius > r.radius ? 0.0 : r.inner->envelope(radius);
          },
      },
      family_);
}

double BasisFunction::lipschitz_bound() const {
  return std::visit(
      Overloaded{
          [](const ProjectionInversion&) { return 1.0; },
          [](const GaussianBump& g) { return std::sqrt(2.0) * std::exp(-0.5) / g.width; },
          [](const SampleTable& t) { return table_lipschitz(t); },
          [](const BallRestriction&) { return std::numeric_limits<double>::infinity(); },
      },
      family_);
}

}  // namespace uniquemax

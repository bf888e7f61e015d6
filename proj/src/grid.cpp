#include "uniquemax/grid.hpp"

#include <cmath>
#include <string>

#include "uniquemax/error.hpp"

namespace uniquemax {

namespace {

constexpr double kSphereTolerance = 1e-12;

std::uint64_t checked_power(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t result = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

int largest_resolution_within(std::size_t n, std::uint64_t cap) {
  int r = 3;
  while (checked_power(static_cast<std::uint64_t>(r + 1), n, cap) <= cap) ++r;
  return r;
}

}  // namespace

double lattice_coordinate(int resolution, std::uint64_t k) {
  // Symmetric form so that k and resolution-1-k give exact negatives.
  const double half = 0.5 * (resolution - 1);
  return (static_cast<double>(k) - half) / half;
}

double TwoChartGrid::cell_diameter() const {
  return cell_size() * std::sqrt(static_cast<double>(dim_));
}

Point TwoChartGrid::point_at(std::size_t i) const {
  const auto p = point(i);
  return Point(std::vector<double>(p.begin(), p.end()));
}

std::vector<Point> TwoChartGrid::inner_points() const {
  std::vector<Point> out;
  out.reserve(inner_count_);
  for (std::size_t i = 0; i < inner_count_; ++i) out.push_back(point_at(i));
  return out;
}

std::vector<Point> TwoChartGrid::outer_points() const {
  std::vector<Point> out;
  out.reserve(outer_count());
  for (std::size_t i = inner_count_; i < size(); ++i) out.push_back(point_at(i));
  return out;
}

TwoChartGrid build_grid(std::size_t n, int resolution, const GridOptions& options) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "grid dimension must be >= 1");
  if (resolution < 3) {
    throw Error(ErrorKind::kInvalidArgument,
                "resolution must be >= 3 (got " + std::to_string(resolution) + ")");
  }
  const std::uint64_t lattice_total =
      checked_power(static_cast<std::uint64_t>(resolution), n, options.max_lattice_points);
  if (lattice_total > options.max_lattice_points) {
    throw Error(ErrorKind::kBudgetExceeded,
                "grid budget exceeded: resolution " + std::to_string(resolution) + "^" +
                    std::to_string(n) + " lattice points; use resolution <= " +
                    std::to_string(largest_resolution_within(n, options.max_lattice_points)));
  }

  TwoChartGrid g;
  g.dim_ = n;
  g.resolution_ = resolution;

  std::vector<double> axis(static_cast<std::size_t>(resolution));
  for (int k = 0; k < resolution; ++k) axis[k] = lattice_coordinate(resolution, k);

  // Inner chart: lattice points in the closed unit ball, enumerated with the
  // first axis slowest (lexicographic order).
  std::vector<std::uint64_t> idx(n, 0);
  std::vector<double> p(n);
  for (std::uint64_t flat = 0; flat < lattice_total; ++flat) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      p[k] = axis[idx[k]];
      r2 += p[k] * p[k];
    }
    if (r2 <= 1.0 + kSphereTolerance) {
      g.coords_.insert(g.coords_.end(), p.begin(), p.end());
      g.charts_.push_back(static_cast<std::uint8_t>(Chart::kInner));
      g.lattice_.push_back(flat);
    }
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < static_cast<std::uint64_t>(resolution)) break;
      idx[k] = 0;
    }
  }

  // Even resolutions miss the origin and the axis points; add them.
  std::vector<std::vector<double>> extras;
  if (resolution % 2 == 0) {
    extras.emplace_back(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      for (double s : {-1.0, 1.0}) {
        std::vector<double> e(n, 0.0);
        e[k] = s;
        extras.push_back(std::move(e));
      }
    }
    for (const auto& e : extras) {
      g.coords_.insert(g.coords_.end(), e.begin(), e.end());
      g.charts_.push_back(static_cast<std::uint8_t>(Chart::kInner));
      g.lattice_.push_back(kOffLattice);
    }
  }
  g.inner_count_ = g.charts_.size();

  // Outer chart: inversion of every nonzero inner point.
  for (std::size_t i = 0; i < g.inner_count_; ++i) {
    double r2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double c = g.coords_[i * n + k];
      r2 += c * c;
    }
    if (r2 == 0.0) continue;
    const bool on_sphere = std::abs(r2 - 1.0) <= kSphereTolerance;
    for (std::size_t k = 0; k < n; ++k) {
      const double c = g.coords_[i * n + k];
      g.coords_.push_back(on_sphere ? c : c / r2);
    }
    g.charts_.push_back(static_cast<std::uint8_t>(Chart::kOuter));
    g.lattice_.push_back(g.lattice_[i]);
  }
  return g;
}

}  // namespace uniquemax

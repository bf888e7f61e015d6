#include "uniquemax/certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>

#include "uniquemax/error.hpp"

namespace uniquemax {

namespace {

// Binary grid for canonical coefficient directions: 2^-36 keeps the
// representative within 1.5e-11 of a/max|a|.
constexpr int kCanonicalBits = 36;

// Forcing constant for polishing; rotating poll frames otherwise admit
// endless tiny gains around the optimum.
constexpr double kSufficientIncrease = 1e-2;

std::uint64_t make_key(Chart chart, std::uint64_t lattice) {
  if (lattice == kOffLattice) return kOffLattice;
  return (static_cast<std::uint64_t>(chart) << 62) | lattice;
}

/// Incremental single-linkage over points added one at a time. Two points
/// are linked when within `radius` or when they are lattice neighbours in
/// the same chart.
class LinkedSweep {
 public:
  LinkedSweep(std::span<const double> coords, std::span<const std::uint64_t> keys,
              std::size_t dim, int resolution, double radius)
      : coords_(coords), keys_(keys), dim_(dim), resolution_(resolution), radius_(radius) {}

  /// Adds point i; returns true if it starts a new component.
  bool add(std::size_t i) {
    const std::size_t id = parent_.size();
    parent_.push_back(id);
    owner_.push_back(i);
    bool linked = false;
    for_each_neighbor(i, [&](std::size_t other_id) {
      unite(id, other_id);
      linked = true;
    });
    if (keys_[i] != kOffLattice) lattice_ids_.emplace(keys_[i], id);
    std::size_t center = 0;
    for (std::size_t k = 0; k < dim_; ++k) center = center * 3 + 1;
    buckets_[bucket_key(point(i), center)].push_back(id);
    return !linked;
  }

  std::size_t component_of(std::size_t id) { return find(id); }
  std::size_t added() const { return parent_.size(); }
  std::size_t point_of(std::size_t id) const { return owner_[id]; }

 private:
  std::span<const double> point(std::size_t i) const { return coords_.subspan(i * dim_, dim_); }

  std::size_t find(std::size_t id) {
    while (parent_[id] != id) {
      parent_[id] = parent_[parent_[id]];
      id = parent_[id];
    }
    return id;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Keep the earlier-added (higher) root so components are named by peaks.
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

  std::uint64_t bucket_key(std::span<const double> x, std::size_t offset_code) const {
    std::uint64_t h = 1469598103934665603ULL;
    std::size_t code = offset_code;
    for (std::size_t k = 0; k < dim_; ++k) {
      const int shift = static_cast<int>(code % 3) - 1;
      code /= 3;
      const auto cell = static_cast<std::int64_t>(std::floor(x[k] / radius_)) + shift;
      h ^= static_cast<std::uint64_t>(cell) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  template <class F>
  void for_each_neighbor(std::size_t i, F&& visit) {
    const auto x = point(i);
    std::size_t offsets = 1;
    for (std::size_t k = 0; k < dim_; ++k) offsets *= 3;
    const double r2 = radius_ * radius_;
    // Offset code (3^n - 1) / 2 is the bucket of x itself.
    for (std::size_t code = 0; code < offsets; ++code) {
      const auto it = buckets_.find(bucket_key(x, code));
      if (it == buckets_.end()) continue;
      for (std::size_t other : it->second) {
        const auto y = point(owner_[other]);
        double d2 = 0.0;
        for (std::size_t k = 0; k < dim_; ++k) d2 += (x[k] - y[k]) * (x[k] - y[k]);
        if (d2 <= r2) visit(other);
      }
    }
    const std::uint64_t key = keys_[i];
    if (key == kOffLattice) return;
    const std::uint64_t chart_bits = key & (std::uint64_t{3} << 62);
    const std::uint64_t flat = key & ~(std::uint64_t{3} << 62);
    std::vector<std::int64_t> digits(dim_);
    std::uint64_t rest = flat;
    for (std::size_t k = dim_; k-- > 0;) {
      digits[k] = static_cast<std::int64_t>(rest % static_cast<std::uint64_t>(resolution_));
      rest /= static_cast<std::uint64_t>(resolution_);
    }
    for (std::size_t code = 0; code < offsets; ++code) {
      if (code == offsets / 2) continue;
      std::size_t c = code;
      std::uint64_t neighbor = 0;
      bool valid = true;
      for (std::size_t k = 0; k < dim_; ++k) {
        const std::int64_t d = digits[k] + static_cast<std::int64_t>(c % 3) - 1;
        c /= 3;
        if (d < 0 || d >= resolution_) {
          valid = false;
          break;
        }
        neighbor = neighbor * static_cast<std::uint64_t>(resolution_) +
                   static_cast<std::uint64_t>(d);
      }
      if (!valid) continue;
      const auto range = lattice_ids_.equal_range(chart_bits | neighbor);
      for (auto it = range.first; it != range.second; ++it) visit(it->second);
    }
  }

  std::span<const double> coords_;
  std::span<const std::uint64_t> keys_;
  std::size_t dim_;
  int resolution_;
  double radius_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> owner_;
  std::unordered_multimap<std::uint64_t, std::size_t> lattice_ids_;
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets_;
};

void sort_descending(std::vector<std::size_t>& order, std::span<const double> values,
                     std::span<const double> coords, std::size_t dim) {
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const auto a = coords.subspan(i * dim, dim);
    const auto b = coords.subspan(j * dim, dim);
    if (ranks_above(values[i], a, values[j], b)) return true;
    if (ranks_above(values[j], b, values[i], a)) return false;
    return i < j;
  });
}

int refine_budget(const CertifierOptions& options, std::size_t dim) {
  if (options.refine_budget > 0) return options.refine_budget;
  return 200 * static_cast<int>(std::max<std::size_t>(1, dim - 1));
}

double resolve_radius(const CertifierOptions& options, const TwoChartGrid& grid) {
  return options.cluster_radius > 0.0 ? options.cluster_radius : 3.0 * grid.cell_diameter();
}

void check_inputs(const SampledSubspace& sampled, const CoefVector& a) {
  if (a.dim() != sampled.subspace().dimension()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "coefficient vector has dimension " + std::to_string(a.dim()) +
                    " but the subspace has dimension " +
                    std::to_string(sampled.subspace().dimension()));
  }
  if (a.is_zero()) {
    throw Error(ErrorKind::kInvalidArgument, "zero element has no maximum certificate");
  }
  if (sampled.size() == 0) throw Error(ErrorKind::kInvalidArgument, "grid is empty");
}

struct Extremum {
  std::vector<double> x;
  double value = 0.0;
  double grid_value = 0.0;
  std::size_t index = 0;
  bool at_infinity = false;
  bool refined = false;
};

// Maximum of sign * g for the canonical element; values are in canonical
// units (caller rescales).
Extremum locate_extremum(const SampledSubspace& sampled, const std::vector<double>& weights,
                         std::vector<double>& values, double sign, const CertifierOptions& options) {
  const std::size_t dim = sampled.grid().dim();
  if (sign < 0) {
    for (double& v : values) v = -v;
  }
  const ExtremeSample best = kernels::argmax(values, sampled.coords(), dim);
  Extremum e;
  const auto p = sampled.coords().subspan(best.index * dim, dim);
  e.x.assign(p.begin(), p.end());
  e.index = best.index;
  e.grid_value = best.value;
  e.value = best.value;
  e.at_infinity = best.value <= 0.0;
  if (e.at_infinity) {
    e.value = 0.0;
    return e;
  }
  if (options.refine) {
    const Element g(sampled.subspace().shared_atoms(), weights);
    const Objective f = [&](std::span<const double> x) { return sign * g(x); };
    const PatternSearchResult polished =
        polish_max(f, e.x, best.value, sampled.grid().cell_size(), refine_budget(options, dim));
    e.x = polished.x;
    e.value = polished.value;
    e.refined = true;
  }
  return e;
}

}  // namespace

SampledSubspace::SampledSubspace(const Subspace& s, const TwoChartGrid& grid)
    : SampledSubspace(s, grid, std::numeric_limits<double>::infinity()) {}

SampledSubspace::SampledSubspace(const Subspace& s, const TwoChartGrid& grid, double ball_radius)
    : subspace_(s), grid_(grid) {
  if (grid.dim() != s.ambient_dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "grid dimension " + std::to_string(grid.dim()) + " vs subspace dimension " +
                    std::to_string(s.ambient_dim()));
  }
  select(ball_radius);
  samples_ = kernels::sample_atoms(s.atoms(), coords_, grid.dim());
}

void SampledSubspace::select(double ball_radius) {
  const std::size_t n = grid_.dim();
  const double limit = ball_radius * ball_radius;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const auto p = grid_.point(i);
    double r2 = 0.0;
    for (double c : p) r2 += c * c;
    if (!(r2 <= limit)) continue;
    coords_.insert(coords_.end(), p.begin(), p.end());
    keys_.push_back(make_key(grid_.chart(i), grid_.lattice_index(i)));
  }
  (void)n;
}

std::vector<double> SampledSubspace::values(std::span<const double> weights) const {
  return kernels::combine(samples_, weights);
}

std::pair<std::vector<double>, double> canonical_direction(const CoefVector& a) {
  if (a.is_zero()) {
    throw Error(ErrorKind::kInvalidArgument, "zero element has no canonical direction");
  }
  std::size_t j = 0;
  for (std::size_t i = 1; i < a.dim(); ++i) {
    if (std::abs(a[i]) > std::abs(a[j])) j = i;
  }
  const double scale = std::abs(a[j]);
  std::vector<double> d(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    d[i] = i == j ? std::copysign(1.0, a[i])
                  : std::ldexp(std::nearbyint(std::ldexp(a[i] / scale, kCanonicalBits)),
                               -kCanonicalBits);
  }
  return {std::move(d), scale};
}

PatternSearchResult polish_max(const Objective& f, std::span<const double> start,
                               double start_value, double cell_size, int budget) {
  const double r = norm(start);
  const double spacing = cell_size * std::max(1.0, r * r);
  PatternSearchOptions opt;
  opt.budget = budget;
  opt.radial_step = std::min(0.5, 2.0 * spacing / std::max(r, cell_size));
  opt.tangential_step = opt.radial_step;
  opt.cartesian_step = cell_size;
  opt.cartesian_radius = 2.0 * cell_size;
  opt.sufficient_increase = kSufficientIncrease * std::abs(start_value);
  return pattern_search_max(f, std::vector<double>(start.begin(), start.end()), start_value, opt);
}

PeakPair top_two_peaks(std::span<const double> values, std::span<const double> coords,
                       std::span<const std::uint64_t> lattice_keys, std::size_t dim,
                       int resolution, double radius, double floor_level) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > floor_level) order.push_back(i);
  }
  PeakPair out;
  if (order.empty()) {
    const ExtremeSample best = kernels::argmax(values, coords, dim);
    out.first = best.index;
    out.first_value = best.value;
    return out;
  }
  sort_descending(order, values, coords, dim);
  out.first = order.front();
  out.first_value = values[order.front()];
  LinkedSweep sweep(coords, lattice_keys, dim, resolution, radius);
  sweep.add(order.front());
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (sweep.add(order[k])) {
      out.second = order[k];
      out.second_value = values[order[k]];
      break;
    }
  }
  return out;
}

MaxCertificate certify_max(const Subspace& s, const CoefVector& a, const TwoChartGrid& grid,
                           const CertifierOptions& options) {
  const SampledSubspace sampled(s, grid);
  return certify_max(sampled, a, options);
}

MaxCertificate certify_max(const SampledSubspace& sampled, const CoefVector& a,
                           const CertifierOptions& options) {
  check_inputs(sampled, a);
  const TwoChartGrid& grid = sampled.grid();
  const std::size_t dim = grid.dim();
  const auto [direction, scale] = canonical_direction(a);
  const std::vector<double> weights = sampled.subspace().atom_weights(CoefVector(direction));
  std::vector<double> values = sampled.values(weights);

  double sup_abs = 0.0;
  for (double v : values) sup_abs = std::max(sup_abs, std::abs(v));
  const double radius = resolve_radius(options, grid);
  const double floor = options.margin_floor * sup_abs;

  Extremum best = locate_extremum(sampled, weights, values, 1.0, options);
  const double top = best.grid_value;

  // Near-maximum candidates, clustered by linkage.
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] >= top - floor) candidates.push_back(i);
  }
  sort_descending(candidates, values, sampled.coords(), dim);
  std::vector<std::uint64_t> keys(sampled.size());
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = sampled.lattice_key(i);
  LinkedSweep sweep(sampled.coords(), keys, dim, grid.resolution(), radius);
  int clusters = 0;
  for (std::size_t i : candidates) clusters += sweep.add(i) ? 1 : 0;
  // The point at infinity (value 0) is a candidate of its own.
  if (0.0 >= top - floor) ++clusters;

  MaxCertificate cert;
  cert.cluster_radius = radius;
  cert.cluster_count = clusters;
  cert.grid_resolution = grid.resolution();
  cert.refined = best.refined;
  cert.at_infinity = best.at_infinity;
  cert.argmax = Point(best.x);
  cert.value = scale * best.value;
  cert.grid_value = scale * top;

  if (clusters == 1 && !best.at_infinity) {
    std::vector<double> anchors;
    const std::size_t root = sweep.component_of(0);
    for (std::size_t id = 0; id < sweep.added(); ++id) {
      if (sweep.component_of(id) != root) continue;
      const auto p = sampled.coords().subspan(sweep.point_of(id) * dim, dim);
      anchors.insert(anchors.end(), p.begin(), p.end());
    }
    const double outside =
        std::max(0.0, kernels::max_outside(values, sampled.coords(), dim, anchors, radius));
    cert.margin = scale * (best.value - outside);
  }
  return cert;
}

MinResult compute_min(const Subspace& s, const CoefVector& a, const TwoChartGrid& grid,
                      const CertifierOptions& options) {
  const SampledSubspace sampled(s, grid);
  return compute_min(sampled, a, options);
}

MinResult compute_min(const SampledSubspace& sampled, const CoefVector& a,
                      const CertifierOptions& options) {
  check_inputs(sampled, a);
  const auto [direction, scale] = canonical_direction(a);
  const std::vector<double> weights = sampled.subspace().atom_weights(CoefVector(direction));
  std::vector<double> values = sampled.values(weights);
  const Extremum e = locate_extremum(sampled, weights, values, -1.0, options);
  MinResult r;
  r.argmin = Point(e.x);
  r.value = e.at_infinity ? 0.0 : -scale * e.value;
  r.at_infinity = e.at_infinity;
  return r;
}

std::pair<Point, double> brute_force_argmax(const Subspace& s, const CoefVector& a,
                                            double box_half_width, int samples_per_axis,
                                            std::uint64_t budget) {
  const std::size_t n = s.ambient_dim();
  if (samples_per_axis < 2 || !(box_half_width > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "brute force needs >= 2 samples and w > 0");
  }
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (total > budget / static_cast<std::uint64_t>(samples_per_axis)) {
      throw Error(ErrorKind::kBudgetExceeded, "brute-force lattice exceeds the budget");
    }
    total *= static_cast<std::uint64_t>(samples_per_axis);
  }
  if (total * n > budget) {
    throw Error(ErrorKind::kBudgetExceeded, "brute-force lattice exceeds the budget");
  }
  const Element g = s.combine(a);
  const double half = 0.5 * (samples_per_axis - 1);
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n), best_x;
  double best = -std::numeric_limits<double>::infinity();
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    for (std::size_t k = 0; k < n; ++k) {
      x[k] = box_half_width * (static_cast<double>(idx[k]) - half) / half;
    }
    const double v = g(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
    for (std::size_t k = n; k-- > 0;) {
      if (++idx[k] < static_cast<std::size_t>(samples_per_axis)) break;
      idx[k] = 0;
    }
  }
  return {Point(std::move(best_x)), best};
}

}  // namespace uniquemax

#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "uniquemax/grid.hpp"
#include "uniquemax/kernels.hpp"
#include "uniquemax/pattern_search.hpp"
#include "uniquemax/point.hpp"
#include "uniquemax/subspace.hpp"

namespace uniquemax {

struct CertifierOptions {
  /// Clustering radius; <= 0 selects 3 grid cell diameters.
  double cluster_radius = 0.0;
  /// Values within margin_floor * max|g| of the best are cluster candidates.
  double margin_floor = 1e-6;
  bool refine = true;
  /// Polishing evaluations; <= 0 selects 200 per tangent dimension,
  /// 200 * max(1, n - 1).
  int refine_budget = 0;
};

struct MaxCertificate {
  Point argmax;
  double value = 0.0;
  /// best value - best value outside the winning cluster's radius; 0 when
  /// the maximum is not unique.
  double margin = 0.0;
  double cluster_radius = 0.0;
  int cluster_count = 0;
  int grid_resolution = 0;
  bool refined = false;
  /// The supremum is 0 and approached only at infinity (never a unique
  /// attained maximum).
  bool at_infinity = false;
  double grid_value = 0.0;

  bool unique() const { return cluster_count == 1 && !at_infinity; }
  bool operator==(const MaxCertificate&) const = default;
};

struct MinResult {
  Point argmin;
  double value = 0.0;
  bool at_infinity = false;

  bool operator==(const MinResult&) const = default;
};

/// A subspace with its atoms sampled once on a grid, reused across many
/// elements. `mask` (optional) restricts the usable grid points.
class SampledSubspace {
 public:
  SampledSubspace(const Subspace& s, const TwoChartGrid& grid);
  SampledSubspace(const Subspace& s, const TwoChartGrid& grid, double ball_radius);

  const Subspace& subspace() const { return subspace_; }
  const TwoChartGrid& grid() const { return grid_; }
  const AtomSamples& samples() const { return samples_; }
  /// Coordinates of the usable points, row-major.
  std::span<const double> coords() const { return coords_; }
  std::size_t size() const { return samples_.points; }
  std::uint64_t lattice_key(std::size_t i) const { return keys_[i]; }

  /// Values of the element with atom weights `w` on the usable points.
  std::vector<double> values(std::span<const double> weights) const;

 private:
  void select(double ball_radius);

  Subspace subspace_;
  const TwoChartGrid& grid_;
  std::vector<double> coords_;
  std::vector<std::uint64_t> keys_;
  AtomSamples samples_;
};

/// Canonical representative of the ray through a: a / max|a_i| rounded to a
/// fixed binary grid, with the positive scale it was divided by. Positive
/// rescalings of `a` map to the same representative.
std::pair<std::vector<double>, double> canonical_direction(const CoefVector& a);

MaxCertificate certify_max(const Subspace& s, const CoefVector& a, const TwoChartGrid& grid,
                           const CertifierOptions& options = {});
MaxCertificate certify_max(const SampledSubspace& sampled, const CoefVector& a,
                           const CertifierOptions& options = {});

MinResult compute_min(const Subspace& s, const CoefVector& a, const TwoChartGrid& grid,
                      const CertifierOptions& options = {});
MinResult compute_min(const SampledSubspace& sampled, const CoefVector& a,
                      const CertifierOptions& options = {});

/// Exhaustive lattice maximum over [-w, w]^n. Test oracle: no charts, no
/// refinement.
std::pair<Point, double> brute_force_argmax(const Subspace& s, const CoefVector& a,
                                            double box_half_width, int samples_per_axis,
                                            std::uint64_t budget = std::uint64_t{1} << 26);

/// Two highest separated peaks of sampled values, found by sweeping
/// superlevel sets from the top: points are joined when their Euclidean
/// distance is at most `radius` or they are lattice neighbours in the same
/// chart. `second` is empty when no second component appears among values
/// above `floor_level`.
struct PeakPair {
  std::size_t first = 0;
  double first_value = 0.0;
  std::optional<std::size_t> second;
  double second_value = 0.0;
};

PeakPair top_two_peaks(std::span<const double> values, std::span<const double> coords,
                       std::span<const std::uint64_t> lattice_keys, std::size_t dim,
                       int resolution, double radius, double floor_level);

/// Local polish of a maximum of `f` from a grid point of a lattice with
/// step `cell_size`; initial steps follow the local chart spacing.
PatternSearchResult polish_max(const Objective& f, std::span<const double> start,
                               double start_value, double cell_size, int budget);
}  // namespace uniquemax

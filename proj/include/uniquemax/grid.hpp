#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "uniquemax/point.hpp"

namespace uniquemax {

enum class Chart : std::uint8_t { kInner = 0, kOuter = 1 };

inline constexpr std::uint64_t kOffLattice = ~std::uint64_t{0};

struct GridOptions {
  /// Upper bound on resolution^n, i.e. on the lattice enumerated per chart.
  std::uint64_t max_lattice_points = std::uint64_t{1} << 26;
};

/// Deterministic two-chart sampling of R^n. The inner chart is the regular
/// lattice on [-1, 1]^n restricted to the closed unit ball; the outer chart
/// is the image of the nonzero inner points under x -> x/|x|^2. Points with
/// |x| = 1 belong to both charts. The origin of the outer chart maps to the
/// point at infinity, which is not stored.
class TwoChartGrid {
 public:
  std::size_t dim() const { return dim_; }
  int resolution() const { return resolution_; }
  std::size_t size() const { return charts_.size(); }
  std::size_t inner_count() const { return inner_count_; }
  std::size_t outer_count() const { return size() - inner_count_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  Point point_at(std::size_t i) const;
  Chart chart(std::size_t i) const { return static_cast<Chart>(charts_[i]); }
  /// Flat lattice index within the chart, or kOffLattice for points added to
  /// guarantee the origin and the +-e_i are sampled.
  std::uint64_t lattice_index(std::size_t i) const { return lattice_[i]; }
  std::span<const double> coordinates() const { return coords_; }

  /// Lattice step 2/(resolution - 1).
  double cell_size() const { return 2.0 / (resolution_ - 1); }
  double cell_diameter() const;

  std::vector<Point> inner_points() const;
  std::vector<Point> outer_points() const;

  friend TwoChartGrid build_grid(std::size_t n, int resolution, const GridOptions& options);

 private:
  std::size_t dim_ = 0;
  int resolution_ = 0;
  std::size_t inner_count_ = 0;
  std::vector<double> coords_;
  std::vector<std::uint8_t> charts_;
  std::vector<std::uint64_t> lattice_;
};

TwoChartGrid build_grid(std::size_t n, int resolution, const GridOptions& options = {});

/// Lattice axis coordinate -1 + k * 2/(resolution-1).
double lattice_coordinate(int resolution, std::uint64_t k);

}  // namespace uniquemax

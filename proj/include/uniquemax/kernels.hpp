#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "uniquemax/basis.hpp"
#include "uniquemax/grid.hpp"

namespace uniquemax {

/// Atom values on a grid, row-major: values[i * atoms + j] = f_j(x_i).
struct AtomSamples {
  std::size_t points = 0;
  std::size_t atoms = 0;
  std::vector<double> values;

  std::span<const double> row(std::size_t i) const {
    return {values.data() + i * atoms, atoms};
  }
};

/// Location of an extreme sample: index into the grid, value.
struct ExtremeSample {
  std::size_t index = 0;
  double value = 0.0;
};

/// Data-parallel grid kernels (OpenMP). Every reduction is deterministic
/// regardless of the thread count: ties resolve toward lexicographically
/// smallest coordinates, then smallest index.
namespace kernels {

AtomSamples sample_atoms(std::span<const BasisFunction> atoms, std::span<const double> coords,
                         std::size_t dim);
std::vector<double> combine(const AtomSamples& samples, std::span<const double> weights);
ExtremeSample argmax(std::span<const double> values, std::span<const double> coords,
                     std::size_t dim);
/// Largest value among points whose distance to every anchor exceeds
/// `radius`; -inf if there are none.
double max_outside(std::span<const double> values, std::span<const double> coords,
                   std::size_t dim, std::span<const double> anchors, double radius);

}  // namespace kernels

/// Serial reference implementations, kept for testing and benchmarking.
namespace kernels::serial {

AtomSamples sample_atoms(std::span<const BasisFunction> atoms, std::span<const double> coords,
                         std::size_t dim);
std::vector<double> combine(const AtomSamples& samples, std::span<const double> weights);
ExtremeSample argmax(std::span<const double> values, std::span<const double> coords,
                     std::size_t dim);
double max_outside(std::span<const double> values, std::span<const double> coords,
                   std::size_t dim, std::span<const double> anchors, double radius);

}  // namespace kernels::serial

/// True when sample (va, a) ranks above (vb, b): larger value first, then
/// lexicographically smaller coordinates.
bool ranks_above(double va, std::span<const double> a, double vb, std::span<const double> b);

/// Caps OpenMP parallelism from UNIQUEMAX_THREADS when set.
void apply_thread_limit_from_env();

}  // namespace uniquemax

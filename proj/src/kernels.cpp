#include "uniquemax/kernels.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include <omp.h>

namespace uniquemax {

bool ranks_above(double va, std::span<const double> a, double vb, std::span<const double> b) {
  if (va != vb) return va > vb;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return false;
}

void apply_thread_limit_from_env() {
  if (const char* env = std::getenv("UNIQUEMAX_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) omp_set_num_threads(cap);
  }
}

namespace kernels {

namespace {

bool better(std::span<const double> values, std::span<const double> coords, std::size_t dim,
            std::size_t i, std::size_t j) {
  const std::span<const double> a = coords.subspan(i * dim, dim);
  const std::span<const double> b = coords.subspan(j * dim, dim);
  if (ranks_above(values[i], a, values[j], b)) return true;
  if (ranks_above(values[j], b, values[i], a)) return false;
  return i < j;
}

}  // namespace

AtomSamples sample_atoms(std::span<const BasisFunction> atoms, std::span<const double> coords,
                         std::size_t dim) {
  AtomSamples out;
  out.points = coords.size() / dim;
  out.atoms = atoms.size();
  out.values.resize(out.points * out.atoms);
  const auto points = static_cast<long long>(out.points);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < points; ++i) {
    const auto x = coords.subspan(static_cast<std::size_t>(i) * dim, dim);
    double* row = out.values.data() + static_cast<std::size_t>(i) * out.atoms;
    for (std::size_t j = 0; j < out.atoms; ++j) row[j] = atoms[j](x);
  }
  return out;
}

std::vector<double> combine(const AtomSamples& samples, std::span<const double> weights) {
  std::vector<double> out(samples.points);
  const auto points = static_cast<long long>(samples.points);
  const std::size_t m = samples.atoms;
  const double* v = samples.values.data();
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < points; ++i) {
    const double* row = v + static_cast<std::size_t>(i) * m;
    double s = 0.0;
    for (std::size_t j = 0; j < m; ++j) s += row[j] * weights[j];
    out[static_cast<std::size_t>(i)] = s;
  }
  return out;
}

ExtremeSample argmax(std::span<const double> values, std::span<const double> coords,
                     std::size_t dim) {
  const std::size_t count = values.size();
  if (count == 0) return {0, -std::numeric_limits<double>::infinity()};
  std::size_t best = 0;
#pragma omp parallel
  {
    std::size_t local = 0;
    bool have = false;
#pragma omp for schedule(static) nowait
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (!have || better(values, coords, dim, ui, local)) {
        local = ui;
        have = true;
      }
    }
#pragma omp critical
    {
      if (have && better(values, coords, dim, local, best)) best = local;
    }
  }
  return {best, values[best]};
}

double max_outside(std::span<const double> values, std::span<const double> coords,
                   std::size_t dim, std::span<const double> anchors, double radius) {
  const std::size_t count = values.size();
  const std::size_t anchor_count = anchors.size() / dim;
  const double r2 = radius * radius;
  double result = -std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(max : result)
  for (long long i = 0; i < static_cast<long long>(count); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    if (values[ui] <= result) continue;
    const double* x = coords.data() + ui * dim;
    bool far = true;
    for (std::size_t a = 0; a < anchor_count && far; ++a) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = x[k] - anchors[a * dim + k];
        d2 += d * d;
      }
      far = d2 > r2;
    }
    if (far) result = values[ui];
  }
  return result;
}

}  // namespace kernels
}  // namespace uniquemax

#include <limits>

#include "uniquemax/kernels.hpp"

namespace uniquemax::kernels::serial {

AtomSamples sample_atoms(std::span<const BasisFunction> atoms, std::span<const double> coords,
                         std::size_t dim) {
  AtomSamples out;
  out.points = coords.size() / dim;
  out.atoms = atoms.size();
  out.values.resize(out.points * out.atoms);
  for (std::size_t i = 0; i < out.points; ++i) {
    const auto x = coords.subspan(i * dim, dim);
    for (std::size_t j = 0; j < out.atoms; ++j) out.values[i * out.atoms + j] = atoms[j](x);
  }
  return out;
}

std::vector<double> combine(const AtomSamples& samples, std::span<const double> weights) {
  std::vector<double> out(samples.points);
  for (std::size_t i = 0; i < samples.points; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < samples.atoms; ++j) {
      s += samples.values[i * samples.atoms + j] * weights[j];
    }
    out[i] = s;
  }
  return out;
}

ExtremeSample argmax(std::span<const double> values, std::span<const double> coords,
                     std::size_t dim) {
  if (values.empty()) return {0, -std::numeric_limits<double>::infinity()};
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (ranks_above(values[i], coords.subspan(i * dim, dim), values[best],
                    coords.subspan(best * dim, dim))) {
      best = i;
    }
  }
  return {best, values[best]};
}

double max_outside(std::span<const double> values, std::span<const double> coords,
                   std::size_t dim, std::span<const double> anchors, double radius) {
  double result = -std::numeric_limits<double>::infinity();
  const std::size_t anchor_count = anchors.size() / dim;
  for (std::size_t i = 0; i < values.size(); ++i) {
    bool far = true;
    for (std::size_t a = 0; a < anchor_count && far; ++a) {
      double d2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = coords[i * dim + k] - anchors[a * dim + k];
        d2 += d * d;
      }
      far = d2 > radius * radius;
    }
    if (far && values[i] > result) result = values[i];
  }
  return result;
}

}  // namespace uniquemax::kernels::serial

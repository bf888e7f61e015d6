#include "uniquemax/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "uniquemax/error.hpp"
#include "uniquemax/witness.hpp"

namespace uniquemax {

namespace {

constexpr double kCenterBox = 2.0;
constexpr double kMinSeparation = 0.5;
constexpr double kTableHalfWidth = 4.0;
constexpr double kPerturbation = 0.05;

std::vector<BasisFunction> random_bumps(std::size_t n, std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> box(-kCenterBox, kCenterBox);
  std::uniform_real_distribution<double> width(0.5, 1.0);
  std::bernoulli_distribution coin(0.5);
  std::vector<std::vector<double>> centers;
  std::vector<BasisFunction> out;
  std::vector<double> c(n);
  int attempts = 0;
  while (out.size() < count) {
    for (double& v : c) v = box(rng);
    bool separated = true;
    for (const auto& other : centers) separated = separated && distance(c, other) >= kMinSeparation;
    if (!separated && ++attempts < 10000) continue;
    attempts = 0;
    centers.push_back(c);
    const double w = width(rng);
    out.push_back(BasisFunction::gaussian(Point(c), w, coin(rng) ? 1 : -1));
  }
  return out;
}

std::size_t table_nodes(std::size_t n) {
  switch (n) {
    case 1: return 129;
    case 2: return 49;
    case 3: return 21;
    default: return 9;
  }
}

BasisFunction perturbed_projection(std::size_t n, std::size_t axis, std::mt19937_64& rng) {
  const std::size_t nodes = table_nodes(n);
  std::size_t count = 1;
  for (std::size_t k = 0; k < n; ++k) count *= nodes;
  std::uniform_real_distribution<double> noise(-kPerturbation, kPerturbation);
  const BasisFunction base = BasisFunction::projection_inversion(n, axis);
  std::vector<double> values(count);
  std::vector<double> x(n);
  const double step = 2.0 * kTableHalfWidth / static_cast<double>(nodes - 1);
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rest = flat;
    double taper = 1.0;
    for (std::size_t k = n; k-- > 0;) {
      x[k] = -kTableHalfWidth + step * static_cast<double>(rest % nodes);
      rest /= nodes;
      taper = std::min(taper, std::clamp(2.0 * (1.0 - std::abs(x[k]) / kTableHalfWidth), 0.0, 1.0));
    }
    values[flat] = taper * (base(x) + noise(rng));
  }
  return BasisFunction::sample_table(std::vector<double>(n, -kTableHalfWidth),
                                     std::vector<double>(n, kTableHalfWidth),
                                     std::vector<std::size_t>(n, nodes), std::move(values));
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "gaussians") return Family::kGaussians;
  if (name == "witness-gaussians") return Family::kWitnessGaussians;
  if (name == "perturbed-witness") return Family::kPerturbedWitness;
  throw Error(ErrorKind::kInvalidArgument, "unknown family '" + std::string(name) +
                                               "' (expected gaussians, witness-gaussians or "
                                               "perturbed-witness)");
}

const char* to_string(Family family) {
  switch (family) {
    case Family::kGaussians: return "gaussians";
    case Family::kWitnessGaussians: return "witness-gaussians";
    case Family::kPerturbedWitness: return "perturbed-witness";
  }
  return "unknown";
}

Subspace make_candidate(Family family, std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n < 1 || n > kDefaultMaxWitnessDim) {
    throw Error(ErrorKind::kInvalidArgument, "ambient dimension out of range");
  }
  if (dim < 1) throw Error(ErrorKind::kInvalidArgument, "candidate dimension must be positive");
  std::mt19937_64 rng(seed);
  std::vector<BasisFunction> atoms;
  switch (family) {
    case Family::kGaussians:
      atoms = random_bumps(n, dim, rng);
      break;
    case Family::kWitnessGaussians:
    case Family::kPerturbedWitness: {
      if (dim <= n) {
        throw Error(ErrorKind::kInvalidArgument,
                    std::string(to_string(family)) + " needs dim > n");
      }
      for (std::size_t i = 0; i < n; ++i) {
        atoms.push_back(family == Family::kWitnessGaussians
                            ? BasisFunction::projection_inversion(n, i)
                            : perturbed_projection(n, i, rng));
      }
      auto bumps = random_bumps(n, dim - n, rng);
      atoms.insert(atoms.end(), bumps.begin(), bumps.end());
      break;
    }
  }
  return Subspace(std::move(atoms));
}

}  // namespace uniquemax

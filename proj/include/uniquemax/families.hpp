#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "uniquemax/subspace.hpp"

namespace uniquemax {

/// Shipped candidate families:
///   "gaussians"          dim translated/scaled Gaussian bumps;
///   "witness-gaussians"  the witness basis plus dim-n Gaussian bumps;
///   "perturbed-witness"  tapered sample-table perturbations of the witness
///                        basis plus dim-n Gaussian bumps.
enum class Family { kGaussians, kWitnessGaussians, kPerturbedWitness };

Family parse_family(std::string_view name);
const char* to_string(Family family);

/// Seeded random candidate subspace of the given dimension in R^n.
Subspace make_candidate(Family family, std::size_t n, std::size_t dim, std::uint64_t seed);

}  // namespace uniquemax

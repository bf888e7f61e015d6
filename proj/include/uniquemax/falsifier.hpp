#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uniquemax/alternating.hpp"
#include "uniquemax/certifier.hpp"
#include "uniquemax/families.hpp"
#include "uniquemax/subspace.hpp"

namespace uniquemax {

/// An element with two separated near-equal maxima. Coefficients refer to
/// the input subspace and are scaled so that value1 = 1, which makes the
/// absolute gap a relative one.
struct ViolationWitness {
  CoefVector coefs;
  Point peak1;
  Point peak2;
  double value1 = 0.0;
  double value2 = 0.0;
  double separation = 0.0;
  double gap = 0.0;

  bool operator==(const ViolationWitness&) const = default;
};

struct SearchStats {
  int probes = 0;
  int evaluations = 0;
  double best_gap = 0.0;

  bool operator==(const SearchStats&) const = default;
};

enum class Verdict { kViolationFound, kInconclusive };

struct ExperimentReport {
  std::size_t ambient_dim = 0;
  std::size_t candidate_dim = 0;
  std::string family;
  std::uint64_t seed = 0;
  int budget = 0;
  double tol_gap = 0.0;
  int resolution = 0;
  std::size_t extracted_dim = 0;
  std::optional<SignBounds> bounds;
  std::optional<NormEquivalence> norm_equivalence;
  std::optional<TailRadius> tail;
  SearchStats search;
  std::optional<ViolationWitness> witness;
  Verdict verdict = Verdict::kInconclusive;

  bool operator==(const ExperimentReport&) const = default;
};

enum class ConjectureExtraction { kSkip, kOnce };

struct FalsifyOptions {
  double tol_gap = 1e-3;
  int budget = 10000;
  std::uint64_t seed = 0;
  /// <= 0 selects 3 grid cell diameters.
  double cluster_radius = 0.0;
  /// Allow dim = n + 1 candidates (conjecture probing).
  bool conjecture_mode = false;
  ConjectureExtraction extraction = ConjectureExtraction::kSkip;
  int bound_probes = 200;
  int starts = 4;
  std::string family = "custom";
};

ExperimentReport falsify(const Subspace& s, const TwoChartGrid& grid,
                         const FalsifyOptions& options = {});

std::vector<ExperimentReport> conjecture_probe(std::size_t n, Family family, int trials,
                                               std::uint64_t seed, const TwoChartGrid& grid,
                                               FalsifyOptions options = {});

/// Each member restricted to the closed ball of radius A; throws
/// kRankDeficient if the restriction loses rank on `grid`.
Subspace restrict_to_ball(const Subspace& s, double radius, const TwoChartGrid& grid);

/// Re-detects the two peaks of the witness element on a grid with 4x finer
/// lattice step and checks locations and values (within 10 * tol_gap).
struct Reverification {
  bool passed = false;
  int resolution = 0;
  double value1 = 0.0;
  double value2 = 0.0;
  double location_error = 0.0;
};

Reverification reverify(const Subspace& s, const ViolationWitness& witness, std::size_t n,
                        int resolution, double tol_gap, double cluster_radius);

const char* to_string(Verdict verdict);

}  // namespace uniquemax

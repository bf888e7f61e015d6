#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "uniquemax/certifier.hpp"
#include "uniquemax/grid.hpp"
#include "uniquemax/subspace.hpp"

namespace uniquemax {

struct SignBounds {
  /// max over probes of m(g) (estimates sup m(g) over the coefficient sphere).
  double sup_min = 0.0;
  /// min over probes of M(g).
  double inf_max = 0.0;
  int probes = 0;
  std::uint64_t seed = 0;

  bool operator==(const SignBounds&) const = default;
};

struct NormEquivalence {
  double c1 = 0.0;
  double c2 = 0.0;
  int probes = 0;
  std::uint64_t seed = 0;

  bool operator==(const NormEquivalence&) const = default;
};

struct TailRadius {
  double threshold = 0.0;  // N
  double radius = 0.0;     // A
  /// max |g(x)| seen by the a posteriori far-field check.
  double far_field_max = 0.0;
  int far_field_samples = 0;
  int far_field_probes = 0;

  bool operator==(const TailRadius&) const = default;
};

struct TailOptions {
  double max_radius = 1e12;
  int far_field_samples = 1000;
  int far_field_probes = 100;
  std::uint64_t seed = 0;
};

/// Uniform points on the unit sphere of R^m from a seeded generator.
std::vector<CoefVector> sphere_probes(std::size_t m, int count, std::uint64_t seed);

bool is_alternating(const Subspace& s, const CoefVector& a, const TwoChartGrid& grid);
bool is_alternating(const SampledSubspace& sampled, const CoefVector& a);

NormEquivalence estimate_norm_equivalence(const Subspace& s, const TwoChartGrid& grid,
                                          int probes, std::uint64_t seed);
NormEquivalence estimate_norm_equivalence(const SampledSubspace& sampled, int probes,
                                          std::uint64_t seed);

SignBounds sign_bounds(const Subspace& s, const TwoChartGrid& grid, int probes,
                       std::uint64_t seed, const CertifierOptions& options = {});
SignBounds sign_bounds(const SampledSubspace& sampled, int probes, std::uint64_t seed,
                       const CertifierOptions& options = {});

TailRadius tail_radius(const Subspace& s, const SignBounds& bounds, const NormEquivalence& eq,
                       const TailOptions& options = {});
/// As above with an explicit threshold N (must satisfy N < min(-sup_min, inf_max)).
TailRadius tail_radius(const Subspace& s, double threshold, const SignBounds& bounds,
                       const NormEquivalence& eq, const TailOptions& options = {});

enum class SeparationPhase { kTrivial, kHeuristic, kLinearProgram };

struct ExtractionOptions {
  int probes = 1000;
  int cone_samples = 4000;
  double acceptance = 1e-6;
  /// Skip the heuristic and go straight to the linear program.
  bool force_lp = false;
  std::size_t max_rays = 20000;
};

struct ExtractionResult {
  Subspace subspace;
  /// (m-1) x m, rows span ker(phi) in the input basis.
  Eigen::MatrixXd kernel;
  Eigen::VectorXd phi;
  SeparationPhase phase = SeparationPhase::kHeuristic;
  int cone_members = 0;
  int probes = 0;
  int probe_failures = 0;
  std::uint64_t seed = 0;
};

ExtractionResult extract_alternating(const Subspace& s, const TwoChartGrid& grid,
                                     std::uint64_t seed, const ExtractionOptions& options = {});

const char* to_string(SeparationPhase phase);

}  // namespace uniquemax

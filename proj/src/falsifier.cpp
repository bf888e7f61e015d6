#include "uniquemax/falsifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "uniquemax/error.hpp"

namespace uniquemax {

namespace {

constexpr int kPolishBudget = 200;
constexpr double kInitialTurn = 0.1;

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double out = 0.0;
  while (i > 0) {
    out += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return out;
}

/// Shifted Halton points on the unit sphere of R^k (rejection from the cube).
class SphereSequence {
 public:
  SphereSequence(std::size_t k, std::uint64_t seed) : shift_(k) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double& s : shift_) s = unit(rng);
  }

  std::vector<double> next() {
    static constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    const std::size_t k = shift_.size();
    std::vector<double> x(k);
    for (;;) {
      ++index_;
      for (std::size_t d = 0; d < k; ++d) {
        double u = radical_inverse(index_, kPrimes[d % 12]) + shift_[d];
        u -= std::floor(u);
        x[d] = 2.0 * u - 1.0;
      }
      const double r = norm(x);
      if (r > 1.0 || r < 0.05) continue;
      for (double& c : x) c /= r;
      return x;
    }
  }

 private:
  std::vector<double> shift_;
  std::uint64_t index_ = 0;
};

struct GapProbe {
  std::vector<double> coefs;
  double gap = 1.0;
  std::vector<double> peak1;
  std::vector<double> peak2;
  double value1 = 0.0;
  double value2 = 0.0;
  bool valid = false;
};

bool better(const GapProbe& a, const GapProbe& b) {
  if (a.gap != b.gap) return a.gap < b.gap;
  return std::lexicographical_compare(a.coefs.begin(), a.coefs.end(), b.coefs.begin(),
                                      b.coefs.end());
}

std::vector<std::uint64_t> keys_of(const SampledSubspace& sampled) {
  std::vector<std::uint64_t> keys(sampled.size());
  for (std::size_t i = 0; i < keys.size(); ++i) keys[i] = sampled.lattice_key(i);
  return keys;
}

/// Refined relative gap between the two highest separated peaks of the
/// element with coefficients `b` (unit vector) of the searched subspace.
class GapObjective {
 public:
  GapObjective(const SampledSubspace& sampled, double radius)
      : sampled_(sampled), keys_(keys_of(sampled)), radius_(radius) {}

  GapProbe operator()(std::span<const double> b) {
    ++evaluations_;
    GapProbe p;
    p.coefs.assign(b.begin(), b.end());
    const Subspace& s = sampled_.subspace();
    const std::vector<double> weights = s.atom_weights(CoefVector(p.coefs));
    const std::vector<double> values = sampled_.values(weights);
    const std::size_t dim = s.ambient_dim();
    const PeakPair peaks = top_two_peaks(values, sampled_.coords(), keys_, dim,
                                         sampled_.grid().resolution(), radius_, 0.0);
    if (!(peaks.first_value > 0.0) || !peaks.second) return p;
    const Element g(s.shared_atoms(), weights);
    const Objective f = [&](std::span<const double> x) { return g(x); };
    const double cell = sampled_.grid().cell_size();
    auto polish = [&](std::size_t index, double value) {
      return polish_max(f, sampled_.coords().subspan(index * dim, dim), value, cell,
                        kPolishBudget);
    };
    PatternSearchResult a = polish(peaks.first, peaks.first_value);
    PatternSearchResult c = polish(*peaks.second, peaks.second_value);
    if (distance(a.x, c.x) < radius_) return p;
    if (c.value > a.value) std::swap(a, c);
    p.peak1 = std::move(a.x);
    p.peak2 = std::move(c.x);
    p.value1 = a.value;
    p.value2 = c.value;
    p.gap = (a.value - c.value) / a.value;
    p.valid = true;
    return p;
  }

  int evaluations() const { return evaluations_; }

 private:
  const SampledSubspace& sampled_;
  std::vector<std::uint64_t> keys_;
  double radius_;
  int evaluations_ = 0;
};

Eigen::VectorXd to_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

Subspace restrict_to_ball(const Subspace& s, double radius, const TwoChartGrid& grid) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorKind::kInvalidArgument, "restriction radius must be positive and finite");
  }
  std::vector<BasisFunction> atoms;
  atoms.reserve(s.atom_count());
  for (const BasisFunction& f : s.atoms()) atoms.push_back(BasisFunction::restricted(f, radius));
  Subspace out(std::move(atoms), s.combination());
  require_full_rank(out, grid);
  return out;
}

Reverification reverify(const Subspace& s, const ViolationWitness& witness, std::size_t n,
                        int resolution, double tol_gap, double cluster_radius) {
  Reverification r;
  r.resolution = 4 * (resolution - 1) + 1;
  const TwoChartGrid fine = build_grid(n, r.resolution);
  const SampledSubspace sampled(s, fine);
  const std::vector<double> weights = s.atom_weights(witness.coefs);
  const std::vector<double> values = sampled.values(weights);
  const PeakPair peaks = top_two_peaks(values, sampled.coords(), keys_of(sampled), n,
                                       fine.resolution(), cluster_radius, 0.0);
  if (!peaks.second) return r;
  const Element g(s.shared_atoms(), weights);
  const Objective f = [&](std::span<const double> x) { return g(x); };
  auto polish = [&](std::size_t index, double value) {
    return polish_max(f, sampled.coords().subspan(index * n, n), value, fine.cell_size(),
                      kPolishBudget);
  };
  PatternSearchResult a = polish(peaks.first, peaks.first_value);
  PatternSearchResult b = polish(*peaks.second, peaks.second_value);
  // Match the fine peaks to the witness peaks by location.
  const double straight = std::max(distance(a.x, witness.peak1.coords()),
                                   distance(b.x, witness.peak2.coords()));
  const double crossed = std::max(distance(b.x, witness.peak1.coords()),
                                  distance(a.x, witness.peak2.coords()));
  if (crossed < straight) std::swap(a, b);
  r.value1 = a.value;
  r.value2 = b.value;
  r.location_error = std::min(straight, crossed);
  const double tol = 10.0 * tol_gap;
  r.passed = std::abs(r.value1 - witness.value1) <= tol &&
             std::abs(r.value2 - witness.value2) <= tol &&
             r.location_error <= 0.5 * witness.separation;
  return r;
}

ExperimentReport falsify(const Subspace& s, const TwoChartGrid& grid,
                         const FalsifyOptions& options) {
  const std::size_t n = s.ambient_dim();
  const std::size_t m = s.dimension();
  if (options.budget < 10) throw Error(ErrorKind::kInvalidArgument, "budget must be >= 10");
  if (!(options.tol_gap > 0.0)) throw Error(ErrorKind::kInvalidArgument, "tol_gap must be > 0");
  if (grid.dim() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "grid dimension " + std::to_string(grid.dim()) +
                                                   " vs ambient dimension " + std::to_string(n));
  }
  const std::size_t least = options.conjecture_mode ? n + 1 : n + 2;
  if (m < least) {
    throw Error(ErrorKind::kInvalidArgument,
                "candidate dimension " + std::to_string(m) + " is below " +
                    std::to_string(least) + " for ambient dimension " + std::to_string(n));
  }

  ExperimentReport report;
  report.ambient_dim = n;
  report.candidate_dim = m;
  report.family = options.family;
  report.seed = options.seed;
  report.budget = options.budget;
  report.tol_gap = options.tol_gap;
  report.resolution = grid.resolution();

  // Coefficients of the searched subspace's basis in the input basis.
  Eigen::MatrixXd to_input = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m),
                                                       static_cast<Eigen::Index>(m));
  Subspace w = s;
  std::size_t target = n + 1;
  if (options.conjecture_mode) {
    target = options.extraction == ConjectureExtraction::kOnce ? m - 1 : m;
  }
  std::uint64_t round = 0;
  while (w.dimension() > target) {
    const ExtractionResult ex = extract_alternating(w, grid, options.seed + round++);
    to_input = ex.kernel * to_input;
    w = ex.subspace;
  }
  report.extracted_dim = w.dimension();
  const double radius =
      options.cluster_radius > 0.0 ? options.cluster_radius : 3.0 * grid.cell_diameter();

  double ball = std::numeric_limits<double>::infinity();
  {
    const SampledSubspace full(w, grid);
    std::optional<SignBounds> bounds;
    try {
      bounds = sign_bounds(full, options.bound_probes, options.seed);
    } catch (const Error& e) {
      if (!(options.conjecture_mode && e.kind() == ErrorKind::kNotAlternating)) throw;
    }
    if (bounds) {
      const NormEquivalence eq =
          estimate_norm_equivalence(full, options.bound_probes, options.seed);
      TailOptions tail_options;
      tail_options.seed = options.seed;
      const TailRadius tail = tail_radius(w, *bounds, eq, tail_options);
      report.bounds = bounds;
      report.norm_equivalence = eq;
      report.tail = tail;
      ball = tail.radius;
    }
  }

  const SampledSubspace searched(w, grid, ball);
  GapObjective objective(searched, radius);
  const std::size_t k = w.dimension();

  // Phase 1: low-discrepancy sweep of the coefficient sphere.
  const int starts = std::max(1, options.starts);
  const int sweep_budget = options.budget / 2;
  std::vector<GapProbe> best;
  SphereSequence sequence(k, options.seed);
  for (int i = 0; i < sweep_budget; ++i) {
    GapProbe p = objective(sequence.next());
    best.push_back(std::move(p));
    std::sort(best.begin(), best.end(), better);
    if (static_cast<int>(best.size()) > starts) best.pop_back();
  }
  report.search.probes = sweep_budget;

  // Phase 2: descent on the gap from the best sweep points.
  GapProbe overall = best.front();
  if (k >= 2) {
    const int per_start = (options.budget - sweep_budget) / static_cast<int>(best.size());
    for (const GapProbe& start : best) {
      GapProbe local = start;
      PatternSearchOptions ps;
      ps.budget = per_start;
      ps.radial = false;
      ps.tangential_step = kInitialTurn;
      ps.cartesian_radius = 0.0;
      const Objective f = [&](std::span<const double> b) {
        GapProbe p = objective(b);
        const double v = -p.gap;
        if (better(p, local)) local = std::move(p);
        return v;
      };
      pattern_search_max(f, start.coefs, -start.gap, ps);
      if (better(local, overall)) overall = local;
    }
  }
  report.search.evaluations = objective.evaluations();
  report.search.best_gap = overall.gap;

  if (overall.valid && overall.gap <= options.tol_gap) {
    const Eigen::VectorXd c = to_input.transpose() * to_eigen(overall.coefs);
    const CoefVector raw(std::vector<double>(c.data(), c.data() + c.size()));
    const MaxCertificate cert = certify_max(s, raw, grid);
    const double scale = 1.0 / cert.value;
    ViolationWitness wit;
    wit.coefs = raw.scaled(scale);
    wit.peak1 = cert.argmax;
    const bool swap = distance(cert.argmax.coords(), overall.peak1) >
                      distance(cert.argmax.coords(), overall.peak2);
    wit.peak2 = Point(swap ? overall.peak1 : overall.peak2);
    wit.value1 = 1.0;
    wit.value2 = s.combine(wit.coefs).evaluate(wit.peak2);
    wit.separation = distance(wit.peak1.coords(), wit.peak2.coords());
    wit.gap = std::abs(wit.value1 - wit.value2);
    if (wit.separation >= radius && wit.gap <= options.tol_gap) {
      report.witness = std::move(wit);
      report.verdict = Verdict::kViolationFound;
    }
  }
  return report;
}

std::vector<ExperimentReport> conjecture_probe(std::size_t n, Family family, int trials,
                                               std::uint64_t seed, const TwoChartGrid& grid,
                                               FalsifyOptions options) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "conjecture probing needs n >= 2");
  if (trials < 0) throw Error(ErrorKind::kInvalidArgument, "trials must be >= 0");
  options.conjecture_mode = true;
  options.family = to_string(family);
  std::vector<ExperimentReport> reports;
  for (int t = 0; t < trials; ++t) {
    options.seed = seed + static_cast<std::uint64_t>(t);
    reports.push_back(falsify(make_candidate(family, n, n + 1, options.seed), grid, options));
  }
  return reports;
}

const char* to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kViolationFound: return "violation-found";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace uniquemax

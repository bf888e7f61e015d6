#include "uniquemax/alternating.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "uniquemax/cone.hpp"
#include "uniquemax/error.hpp"
#include "uniquemax/kernels.hpp"

namespace uniquemax {

namespace {

// Rows whose basis values are this small relative to the largest row carry
// no usable sign information.
constexpr double kNegligibleRow = 1e-12;
constexpr std::size_t kSubsetStart = 200;

std::vector<double> element_values(const SampledSubspace& sampled, const CoefVector& a) {
  if (a.dim() != sampled.subspace().dimension()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "coefficient vector has dimension " + std::to_string(a.dim()) +
                    " but the subspace has dimension " +
                    std::to_string(sampled.subspace().dimension()));
  }
  if (a.is_zero()) throw Error(ErrorKind::kInvalidArgument, "zero coefficient vector");
  return sampled.values(sampled.subspace().atom_weights(a));
}

bool alternates(std::span<const double> values) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return lo < 0.0 && 0.0 < hi;
}

/// Basis values on the grid: points x m.
Eigen::MatrixXd basis_samples(const SampledSubspace& sampled) {
  const AtomSamples& smp = sampled.samples();
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      atoms(smp.values.data(), static_cast<Eigen::Index>(smp.points),
            static_cast<Eigen::Index>(smp.atoms));
  return atoms * sampled.subspace().combination().transpose();
}

Eigen::MatrixXd significant_rows(const Eigen::MatrixXd& v) {
  const Eigen::VectorXd norms = v.rowwise().norm();
  const double cut = kNegligibleRow * (norms.size() ? norms.maxCoeff() : 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < v.rows(); ++i) {
    if (norms[i] > cut && norms[i] > 0.0) keep.push_back(i);
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(keep.size()), v.cols());
  for (std::size_t k = 0; k < keep.size(); ++k) {
    out.row(static_cast<Eigen::Index>(k)) = v.row(keep[k]) / norms[keep[k]];
  }
  return out;
}

Eigen::MatrixXd kernel_of(const Eigen::VectorXd& phi) {
  const Eigen::Index m = phi.size();
  const Eigen::MatrixXd column = phi;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(column);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, m);
  return q.rightCols(m - 1).transpose();
}

Eigen::MatrixXd strided_rows(const Eigen::MatrixXd& rows, std::size_t count) {
  const auto total = static_cast<std::size_t>(rows.rows());
  if (count >= total) return rows;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(count), rows.cols());
  for (std::size_t k = 0; k < count; ++k) {
    out.row(static_cast<Eigen::Index>(k)) = rows.row(static_cast<Eigen::Index>(k * total / count));
  }
  return out;
}

Eigen::VectorXd lp_separator(const Eigen::MatrixXd& rows, std::size_t max_rays) {
  const auto total = static_cast<std::size_t>(rows.rows());
  std::size_t count = std::min(total, kSubsetStart);
  for (;;) {
    try {
      const auto rays = extreme_rays(strided_rows(rows, count), max_rays);
      const Separator sep = max_margin_separator(rays, static_cast<std::size_t>(rows.cols()));
      if (!(sep.margin > 0.0)) {
        throw Error(ErrorKind::kSeparationFailed,
                    "no functional is strictly positive on the sampled cone",
                    std::vector<double>(sep.phi.data(), sep.phi.data() + sep.phi.size()));
      }
      return sep.phi.normalized();
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kNotPointed && count < total) {
        count = std::min(total, 2 * count);
      } else if (e.kind() == ErrorKind::kBudgetExceeded &&
                 count > static_cast<std::size_t>(rows.cols())) {
        count = std::max(static_cast<std::size_t>(rows.cols()), count / 2);
      } else {
        throw;
      }
    }
  }
}

int count_failures(const Eigen::MatrixXd& v, const Eigen::MatrixXd& kernel, std::size_t m,
                   int probes, std::uint64_t seed) {
  int failures = 0;
  for (const CoefVector& b : sphere_probes(m - 1, probes, seed)) {
    const Eigen::VectorXd coef =
        kernel.transpose() * Eigen::Map<const Eigen::VectorXd>(b.coefs().data(),
                                                               static_cast<Eigen::Index>(m - 1));
    const Eigen::VectorXd values = v * coef;
    if (!alternates(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())))) {
      ++failures;
    }
  }
  return failures;
}

}  // namespace

std::vector<CoefVector> sphere_probes(std::size_t m, int count, std::uint64_t seed) {
  if (m == 0) throw Error(ErrorKind::kInvalidArgument, "sphere dimension must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<CoefVector> out;
  out.reserve(static_cast<std::size_t>(std::max(count, 0)));
  std::vector<double> a(m);
  while (static_cast<int>(out.size()) < count) {
    for (double& c : a) c = normal(rng);
    const double r = norm(a);
    if (!(r > 1e-12)) continue;
    std::vector<double> u(a);
    for (double& c : u) c /= r;
    out.emplace_back(std::move(u));
  }
  return out;
}

bool is_alternating(const Subspace& s, const CoefVector& a, const TwoChartGrid& grid) {
  return is_alternating(SampledSubspace(s, grid), a);
}

bool is_alternating(const SampledSubspace& sampled, const CoefVector& a) {
  return alternates(element_values(sampled, a));
}

NormEquivalence estimate_norm_equivalence(const Subspace& s, const TwoChartGrid& grid,
                                          int probes, std::uint64_t seed) {
  return estimate_norm_equivalence(SampledSubspace(s, grid), probes, seed);
}

NormEquivalence estimate_norm_equivalence(const SampledSubspace& sampled, int probes,
                                          std::uint64_t seed) {
  if (probes < 1) throw Error(ErrorKind::kInvalidArgument, "need at least one probe");
  NormEquivalence eq;
  eq.c1 = std::numeric_limits<double>::infinity();
  eq.c2 = 0.0;
  eq.probes = probes;
  eq.seed = seed;
  for (const CoefVector& a : sphere_probes(sampled.subspace().dimension(), probes, seed)) {
    double sup = 0.0;
    for (double v : element_values(sampled, a)) sup = std::max(sup, std::abs(v));
    if (sup < 1e-12) {
      throw Error(ErrorKind::kNumeric, "grid cannot separate basis; raise resolution",
                  a.values());
    }
    const double ratio = a.norm() / sup;
    eq.c1 = std::min(eq.c1, ratio);
    eq.c2 = std::max(eq.c2, ratio);
  }
  return eq;
}

SignBounds sign_bounds(const Subspace& s, const TwoChartGrid& grid, int probes,
                       std::uint64_t seed, const CertifierOptions& options) {
  return sign_bounds(SampledSubspace(s, grid), probes, seed, options);
}

SignBounds sign_bounds(const SampledSubspace& sampled, int probes, std::uint64_t seed,
                       const CertifierOptions& options) {
  if (probes < 1) throw Error(ErrorKind::kInvalidArgument, "need at least one probe");
  SignBounds b;
  b.sup_min = -std::numeric_limits<double>::infinity();
  b.inf_max = std::numeric_limits<double>::infinity();
  b.probes = probes;
  b.seed = seed;
  for (const CoefVector& a : sphere_probes(sampled.subspace().dimension(), probes, seed)) {
    if (!is_alternating(sampled, a)) {
      throw Error(ErrorKind::kNotAlternating, "probed element is not alternating", a.values());
    }
    const MaxCertificate hi = certify_max(sampled, a, options);
    const MinResult lo = compute_min(sampled, a, options);
    b.sup_min = std::max(b.sup_min, lo.value);
    b.inf_max = std::min(b.inf_max, hi.value);
  }
  return b;
}

TailRadius tail_radius(const Subspace& s, const SignBounds& bounds, const NormEquivalence& eq,
                       const TailOptions& options) {
  if (!(bounds.sup_min < 0.0 && 0.0 < bounds.inf_max)) {
    throw Error(ErrorKind::kInvalidArgument, "sign bounds must satisfy sup_min < 0 < inf_max",
                {bounds.sup_min, bounds.inf_max});
  }
  return tail_radius(s, 0.5 * std::min(-bounds.sup_min, bounds.inf_max), bounds, eq, options);
}

TailRadius tail_radius(const Subspace& s, double threshold, const SignBounds& bounds,
                       const NormEquivalence& eq, const TailOptions& options) {
  if (!(bounds.sup_min < 0.0 && 0.0 < bounds.inf_max)) {
    throw Error(ErrorKind::kInvalidArgument, "sign bounds must satisfy sup_min < 0 < inf_max",
                {bounds.sup_min, bounds.inf_max});
  }
  if (!(threshold > 0.0 && threshold < std::min(-bounds.sup_min, bounds.inf_max))) {
    throw Error(ErrorKind::kInvalidArgument,
                "threshold N must lie in (0, min(-sup_min, inf_max))",
                {threshold, bounds.sup_min, bounds.inf_max});
  }
  const double c_inf = std::max(1.0, eq.c2);
  const Eigen::MatrixXd& comb = s.combination();
  const Eigen::VectorXd col_abs = comb.cwiseAbs().colwise().sum().transpose();

  auto bound_at = [&](double r) {
    double total = 0.0;
    for (std::size_t j = 0; j < s.atom_count(); ++j) {
      total += col_abs[static_cast<Eigen::Index>(j)] * s.atoms()[j].envelope(r);
    }
    return c_inf * total;
  };

  double radius = 1.0;
  while (bound_at(radius) > threshold) {
    radius *= 2.0;
    if (radius > options.max_radius) {
      std::size_t worst = 0;
      double worst_value = -1.0;
      for (std::size_t j = 0; j < s.atom_count(); ++j) {
        const double v = col_abs[static_cast<Eigen::Index>(j)] *
                         s.atoms()[j].envelope(options.max_radius);
        if (v > worst_value) {
          worst_value = v;
          worst = j;
        }
      }
      throw Error(ErrorKind::kTailNotCertified,
                  "envelope of basis atom " + std::to_string(worst) + " (" +
                      std::string(s.atoms()[worst].family_name()) +
                      ") decays too slowly to certify a tail radius",
                  {static_cast<double>(worst), worst_value});
    }
  }

  TailRadius t;
  t.threshold = threshold;
  t.radius = radius;
  t.far_field_samples = options.far_field_samples;
  t.far_field_probes = options.far_field_probes;

  const std::size_t n = s.ambient_dim();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> coords;
  coords.reserve(static_cast<std::size_t>(options.far_field_samples) * n);
  std::vector<double> u(n);
  for (int i = 0; i < options.far_field_samples; ++i) {
    double r = 0.0;
    do {
      for (double& c : u) c = normal(rng);
      r = norm(u);
    } while (!(r > 1e-12));
    // Radius in (A, 4A].
    const double rho = radius * (4.0 - 3.0 * unit(rng));
    for (double c : u) coords.push_back(c / r * rho);
  }
  const AtomSamples samples = kernels::sample_atoms(s.atoms(), coords, n);
  for (const CoefVector& a :
       sphere_probes(s.dimension(), options.far_field_probes, options.seed + 1)) {
    for (double v : kernels::combine(samples, s.atom_weights(a))) {
      t.far_field_max = std::max(t.far_field_max, std::abs(v));
    }
  }
  if (t.far_field_max > threshold) {
    throw Error(ErrorKind::kTailNotCertified, "far-field check exceeded the threshold",
                {t.far_field_max, threshold, radius});
  }
  return t;
}

ExtractionResult extract_alternating(const Subspace& s, const TwoChartGrid& grid,
                                     std::uint64_t seed, const ExtractionOptions& options) {
  const std::size_t m = s.dimension();
  if (m < 2) {
    throw Error(ErrorKind::kInvalidArgument, "extraction needs a subspace of dimension >= 2");
  }
  require_full_rank(s, grid);
  const SampledSubspace sampled(s, grid);
  const Eigen::MatrixXd v = basis_samples(sampled);
  const Eigen::MatrixXd rows = significant_rows(v);

  ExtractionResult out{s, Eigen::MatrixXd(), Eigen::VectorXd(), SeparationPhase::kHeuristic,
                       0, options.probes, 0, seed};

  if (!options.force_lp) {
    // Normalized rows generate the dual of the sampled nonnegative cone, so
    // their sum is strictly positive on the cone minus the origin.
    Eigen::VectorXd phi = rows.colwise().sum().transpose();
    phi.normalize();
    bool accepted = true;
    for (const CoefVector& a : sphere_probes(m, options.cone_samples, seed)) {
      const Eigen::VectorXd x =
          Eigen::Map<const Eigen::VectorXd>(a.coefs().data(), static_cast<Eigen::Index>(m));
      const Eigen::VectorXd r = rows * x;
      double sign = 0.0;
      if (r.minCoeff() >= 0.0) sign = 1.0;
      else if (r.maxCoeff() <= 0.0) sign = -1.0;
      if (sign == 0.0) continue;
      ++out.cone_members;
      if (sign * phi.dot(x) < options.acceptance) accepted = false;
    }
    if (accepted) {
      out.phi = phi;
      out.phase = out.cone_members == 0 ? SeparationPhase::kTrivial : SeparationPhase::kHeuristic;
      out.kernel = kernel_of(phi);
      out.probe_failures = count_failures(v, out.kernel, m, options.probes, seed + 1);
      if (out.probe_failures == 0) {
        out.subspace = s.derived(out.kernel);
        return out;
      }
    }
  }

  out.phi = lp_separator(rows, options.max_rays);
  out.phase = SeparationPhase::kLinearProgram;
  out.kernel = kernel_of(out.phi);
  out.probe_failures = count_failures(v, out.kernel, m, options.probes, seed + 1);
  if (out.probe_failures > 0) {
    throw Error(ErrorKind::kSeparationFailed,
                std::to_string(out.probe_failures) + " of " + std::to_string(options.probes) +
                    " probes of the extracted subspace do not alternate",
                std::vector<double>(out.phi.data(), out.phi.data() + out.phi.size()));
  }
  out.subspace = s.derived(out.kernel);
  return out;
}

const char* to_string(SeparationPhase phase) {
  switch (phase) {
    case SeparationPhase::kTrivial: return "trivial";
    case SeparationPhase::kHeuristic: return "heuristic";
    case SeparationPhase::kLinearProgram: return "linear_program";
  }
  return "unknown";
}

}  // namespace uniquemax

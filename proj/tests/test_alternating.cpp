#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "uniquemax/alternating.hpp"
#include "uniquemax/error.hpp"
#include "uniquemax/witness.hpp"

using namespace uniquemax;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::kNumeric;
}

// Tent tables with disjoint supports peaking at grid points.
Subspace disjoint_tents(std::size_t m) {
  const double peaks[] = {-0.5, 0.5, 2.0};
  std::vector<BasisFunction> atoms;
  for (std::size_t j = 0; j < m; ++j) {
    atoms.push_back(BasisFunction::sample_table({peaks[j] - 0.25}, {peaks[j] + 0.25}, {3},
                                                {0.0, 1.0, 0.0}));
  }
  return Subspace(std::move(atoms));
}

Subspace disjoint_bumps() {
  return Subspace({BasisFunction::gaussian(Point({-3.0, 0.0}), 0.5),
                   BasisFunction::gaussian(Point({3.0, 0.0}), 0.5)});
}

// Sampled min < 0 < sampled max, written out on the grid.
bool alternates_on_grid(const Subspace& s, const CoefVector& a, const TwoChartGrid& g) {
  const Element e = s.combine(a);
  bool neg = false, pos = false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double v = e(g.point(i));
    neg = neg || v < 0.0;
    pos = pos || v > 0.0;
  }
  return neg && pos;
}

void expect_valid_extraction(const Subspace& s, const ExtractionResult& r, const TwoChartGrid& g,
                             std::uint64_t probe_seed) {
  const std::size_t m = s.dimension();
  ASSERT_EQ(r.subspace.dimension(), m - 1);
  ASSERT_EQ(static_cast<std::size_t>(r.kernel.rows()), m - 1);
  ASSERT_EQ(static_cast<std::size_t>(r.kernel.cols()), m);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r.kernel);
  EXPECT_GT(svd.singularValues().minCoeff(), 1e-8);
  EXPECT_LE((r.kernel * r.phi).norm(), 1e-10);
  EXPECT_EQ(r.probe_failures, 0);
  testgen::Rng rng(probe_seed);
  for (int t = 0; t < 200; ++t) {
    const CoefVector b = testgen::coefs(rng, m - 1);
    EXPECT_TRUE(alternates_on_grid(r.subspace, b, g));
  }
}

}  // namespace

TEST(IsAlternating, Examples) {
  const TwoChartGrid g2 = build_grid(2, 33);
  testgen::Rng rng(97);
  for (int t = 0; t < 20; ++t) {
    EXPECT_TRUE(is_alternating(witness_basis(2), testgen::coefs(rng, 2), g2));
  }
  const Subspace bump({BasisFunction::gaussian(Point({0.0, 0.0}), 1.0)});
  EXPECT_FALSE(is_alternating(bump, CoefVector({1.0}), g2));
  EXPECT_TRUE(is_alternating(disjoint_bumps(), CoefVector({1.0, -1.0}), g2));
  EXPECT_FALSE(is_alternating(disjoint_bumps(), CoefVector({1.0, 1.0}), g2));
}

TEST(SphereProbes, UnitLengthAndPrefixStable) {
  const auto a = sphere_probes(4, 50, 9);
  const auto b = sphere_probes(4, 100, 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i], b[i]);
    EXPECT_NEAR(a[i].norm(), 1.0, 1e-14);
  }
  EXPECT_NE(sphere_probes(4, 1, 9)[0], sphere_probes(4, 1, 10)[0]);
}

TEST(NormEquivalence, DisjointTentsReachOneAndSqrtM) {
  const TwoChartGrid g = build_grid(1, 33);
  for (std::size_t m : {2u, 3u}) {
    const NormEquivalence eq = estimate_norm_equivalence(disjoint_tents(m), g, 10000, 1);
    // |a|_2 / |a|_inf ranges over [1, sqrt(m)].
    EXPECT_GE(eq.c1, 1.0 - 1e-12);
    EXPECT_LE(eq.c2, std::sqrt(double(m)) + 1e-12);
    EXPECT_NEAR(eq.c1, 1.0, 1e-3);
    EXPECT_NEAR(eq.c2 / eq.c1, std::sqrt(double(m)), 1e-2 * std::sqrt(double(m)));
  }
}

TEST(NormEquivalence, SingleFunctionAndWitness) {
  const Subspace one({BasisFunction::gaussian(Point({0.0, 0.0}), 1.0)});
  const NormEquivalence eq1 = estimate_norm_equivalence(one, build_grid(2, 17), 10, 0);
  EXPECT_NEAR(eq1.c1, 1.0, 1e-9);
  EXPECT_NEAR(eq1.c2, 1.0, 1e-9);

  const NormEquivalence w = estimate_norm_equivalence(witness_basis(2), build_grid(2, 33), 10000, 0);
  EXPECT_LE(w.c1, std::sqrt(2.0));
  EXPECT_GE(w.c2 * std::sqrt(2.0), std::sqrt(2.0));
  // Grid sup of <a, x> never exceeds |a|.
  EXPECT_GE(w.c1, 1.0);
}

TEST(NormEquivalence, MonotoneInProbeCount) {
  const TwoChartGrid g = build_grid(2, 17);
  testgen::Rng rng(101);
  const Subspace s = testgen::gaussian_subspace(rng, 2, 4);
  NormEquivalence previous = estimate_norm_equivalence(s, g, 10, 3);
  for (int probes : {20, 40, 80, 160}) {
    const NormEquivalence eq = estimate_norm_equivalence(s, g, probes, 3);
    EXPECT_LE(eq.c1, previous.c1);
    EXPECT_GE(eq.c2, previous.c2);
    previous = eq;
  }
}

TEST(NormEquivalence, GridTooCoarse) {
  // A narrow bump between lattice nodes vanishes on the grid.
  const Subspace s({BasisFunction::sample_table({0.1}, {0.2}, {2}, {1.0, 1.0})});
  EXPECT_EQ(kind_of([&] { estimate_norm_equivalence(s, build_grid(1, 3), 5, 0); }),
            ErrorKind::kNumeric);
}

TEST(SignBounds, WitnessIsPlusMinusOne) {
  const SignBounds b = sign_bounds(witness_basis(2), build_grid(2, 33), 200, 4);
  EXPECT_NEAR(b.sup_min, -1.0, 1e-6);
  EXPECT_NEAR(b.inf_max, 1.0, 1e-6);
  EXPECT_EQ(b.probes, 200);
  EXPECT_EQ(b.seed, 4u);
}

TEST(SignBounds, DifferenceOfBumpsAndSingleBump) {
  const TwoChartGrid g = build_grid(2, 33);
  Eigen::MatrixXd row(1, 2);
  row << 2.0, -2.0;
  const Subspace diff(std::vector<BasisFunction>(disjoint_bumps().atoms()), row);
  const SignBounds b = sign_bounds(diff, g, 10, 0);
  EXPECT_LT(b.sup_min, 0.0);
  EXPECT_GT(b.inf_max, 0.0);

  const Subspace bump({BasisFunction::gaussian(Point({0.0, 0.0}), 1.0)});
  try {
    sign_bounds(bump, g, 10, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotAlternating);
    EXPECT_EQ(e.evidence().size(), 1u);
  }
}

// For the witness, E_i(R) = 1/R and the combination is the identity, so
// A is the smallest power of two with max(1, C2) * n / A <= N.
TEST(TailRadius, WitnessMatchesClosedForm) {
  const TwoChartGrid g = build_grid(2, 33);
  const Subspace w = witness_basis(2);
  const SignBounds b = sign_bounds(w, g, 100, 0);
  const NormEquivalence eq = estimate_norm_equivalence(w, g, 1000, 0);
  const TailRadius t = tail_radius(w, 0.5, b, eq);
  double expected = 1.0;
  while (std::max(1.0, eq.c2) * 2.0 / expected > 0.5) expected *= 2.0;
  EXPECT_EQ(t.radius, expected);
  EXPECT_EQ(t.threshold, 0.5);
  EXPECT_LE(t.far_field_max, 0.5);
  // On |x| > A the witness element has |g| <= |a| / |x| < 1 / A.
  EXPECT_LE(t.far_field_max, 1.0 / t.radius);
  EXPECT_EQ(t.far_field_samples, 1000);
  EXPECT_EQ(t.far_field_probes, 100);

  const TailRadius d = tail_radius(w, b, eq);
  EXPECT_EQ(d.threshold, 0.5 * std::min(-b.sup_min, b.inf_max));
}

TEST(TailRadius, GaussianRadiusFollowsEnvelopeInversion) {
  const Subspace s = disjoint_bumps();
  const SignBounds b{-0.9, 0.9, 1, 0};
  const NormEquivalence eq{1.0, 1.3, 1, 0};
  double previous = 0.0;
  for (double N : {0.5, 1e-2, 1e-4, 1e-8}) {
    const TailRadius t = tail_radius(s, N, b, eq);
    // exp(-(R - 3)^2 / 0.25) per atom, two atoms, factor 1.3.
    double expected = 1.0;
    auto bound = [](double R) {
      const double d = std::max(0.0, R - 3.0);
      return 1.3 * 2.0 * std::exp(-d * d / 0.25);
    };
    while (bound(expected) > N) expected *= 2.0;
    EXPECT_EQ(t.radius, expected) << "N=" << N;
    EXPECT_GE(t.radius, 3.0 + 0.5 * std::sqrt(std::log(2.6 / N)));
    EXPECT_GE(t.radius, previous);
    previous = t.radius;
  }
}

TEST(TailRadius, Preconditions) {
  const Subspace w = witness_basis(2);
  const NormEquivalence eq{1.0, 1.0, 1, 0};
  EXPECT_EQ(kind_of([&] { tail_radius(w, 1.5, SignBounds{-1.0, 1.0, 1, 0}, eq); }),
            ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([&] { tail_radius(w, SignBounds{0.1, 1.0, 1, 0}, eq); }),
            ErrorKind::kInvalidArgument);
  TailOptions tiny;
  tiny.max_radius = 4.0;
  EXPECT_EQ(kind_of([&] { tail_radius(w, 0.01, SignBounds{-1.0, 1.0, 1, 0}, eq, tiny); }),
            ErrorKind::kTailNotCertified);
}

TEST(Extraction, DisjointBumpsGiveOppositeSigns) {
  const TwoChartGrid g = build_grid(2, 33);
  const ExtractionResult r = extract_alternating(disjoint_bumps(), g, 0);
  ASSERT_EQ(r.kernel.rows(), 1);
  EXPECT_LT(r.kernel(0, 0) * r.kernel(0, 1), 0.0);
  expect_valid_extraction(disjoint_bumps(), r, g, 5);
}

TEST(Extraction, WitnessBasis) {
  for (std::size_t n : {2u, 3u}) {
    const TwoChartGrid g = build_grid(n, n == 2 ? 33 : 17);
    const ExtractionResult r = extract_alternating(witness_basis(n), g, 1);
    expect_valid_extraction(witness_basis(n), r, g, 6);
    EXPECT_EQ(r.probes, 1000);
  }
}

TEST(Extraction, DependentBasisRejected) {
  Eigen::MatrixXd comb(2, 1);
  comb << 1.0, -0.5;
  const Subspace s({BasisFunction::gaussian(Point({0.5, 0.0}), 1.0)}, comb);
  EXPECT_EQ(kind_of([&] { extract_alternating(s, build_grid(2, 17), 0); }),
            ErrorKind::kRankDeficient);
  EXPECT_EQ(kind_of([&] { extract_alternating(disjoint_bumps().derived(Eigen::MatrixXd::Ones(1, 2)),
                                               build_grid(2, 17), 0); }),
            ErrorKind::kInvalidArgument);
}

TEST(ExtractionProperties, RandomGaussianSubspaces) {
  const TwoChartGrid g = build_grid(2, 33);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    testgen::Rng rng(1000 + seed);
    const std::size_t m = static_cast<std::size_t>(rng.integer(2, 5));
    const Subspace s = testgen::gaussian_subspace(rng, 2, m);
    const ExtractionResult r = extract_alternating(s, g, seed);
    EXPECT_EQ(r.seed, seed);
    expect_valid_extraction(s, r, g, seed);
    const SignBounds b = sign_bounds(r.subspace, g, 50, seed);
    EXPECT_LT(b.sup_min, 0.0);
    EXPECT_GT(b.inf_max, 0.0);
  }
}

TEST(ExtractionProperties, LinearProgramPath) {
  const TwoChartGrid g = build_grid(2, 33);
  ExtractionOptions lp;
  lp.force_lp = true;
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    testgen::Rng rng(2000 + seed);
    const Subspace s = testgen::gaussian_subspace(rng, 2, 3 + seed % 2);
    const ExtractionResult r = extract_alternating(s, g, seed, lp);
    EXPECT_EQ(r.phase, SeparationPhase::kLinearProgram);
    expect_valid_extraction(s, r, g, seed);
  }
}

TEST(ExtractionProperties, Deterministic) {
  const TwoChartGrid g = build_grid(2, 17);
  testgen::Rng rng(3000);
  const Subspace s = testgen::gaussian_subspace(rng, 2, 4);
  const ExtractionResult a = extract_alternating(s, g, 7);
  const ExtractionResult b = extract_alternating(s, g, 7);
  EXPECT_EQ(a.kernel, b.kernel);
  EXPECT_EQ(a.phi, b.phi);
  EXPECT_EQ(a.phase, b.phase);
}

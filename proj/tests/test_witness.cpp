#include <cmath>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "uniquemax/certifier.hpp"
#include "uniquemax/error.hpp"
#include "uniquemax/grid.hpp"
#include "uniquemax/witness.hpp"

using namespace uniquemax;

namespace {

// sum_i a_i pi_i(G(x)) written out directly.
double witness_value(const std::vector<double>& a, const std::vector<double>& x) {
  double r2 = 0.0;
  for (double c : x) r2 += c * c;
  const double scale = r2 <= 1.0 ? 1.0 : 1.0 / r2;
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * x[i] * scale;
  return v;
}

}  // namespace

TEST(WitnessBasis, Examples) {
  const Subspace s1 = witness_basis(1);
  EXPECT_EQ(s1.dimension(), 1u);
  EXPECT_DOUBLE_EQ(s1.basis_element(0).evaluate(Point({2.0})), 0.5);
  EXPECT_EQ(witness_basis(3).dimension(), 3u);
  EXPECT_NEAR(witness_basis(2).combine(CoefVector({1.0, 1.0}))(
                  std::vector<double>{std::sqrt(0.5), std::sqrt(0.5)}),
              std::sqrt(2.0), 1e-15);
  EXPECT_THROW(witness_basis(0), Error);
  EXPECT_THROW(witness_basis(9), Error);
  EXPECT_EQ(witness_basis(9, 9).dimension(), 9u);
}

TEST(AnalyticMax, Examples) {
  const auto r = analytic_max(CoefVector({3.0, 4.0}));
  EXPECT_DOUBLE_EQ(r.argmax[0], 0.6);
  EXPECT_DOUBLE_EQ(r.argmax[1], 0.8);
  EXPECT_DOUBLE_EQ(r.value, 5.0);
  EXPECT_DOUBLE_EQ(r.coef_norm, 5.0);

  const auto e = analytic_max(CoefVector({0.0, 0.0, 0.0, 1.0}));
  EXPECT_EQ(e.argmax, Point::axis(4, 3));
  EXPECT_EQ(e.value, 1.0);

  const Element f = witness_basis(2).combine(CoefVector({1.0, 0.0}));
  EXPECT_EQ(f.evaluate(Point({-1.0, 0.0})), -1.0);
  EXPECT_EQ(f.evaluate(Point({1.0, 0.0})), 1.0);

  EXPECT_THROW(analytic_max(CoefVector::zero(2)), Error);
}

TEST(InteriorStrictness, Examples) {
  EXPECT_TRUE(interior_strictness_check(CoefVector({1.0, 0.0}), Point({0.5, 0.0})));
  EXPECT_TRUE(interior_strictness_check(CoefVector({1.0, 0.0}), Point({4.0, 0.0})));
  EXPECT_TRUE(interior_strictness_check(CoefVector({1.0, 1.0}), Point({0.0, 0.0})));
  EXPECT_THROW(interior_strictness_check(CoefVector({1.0, 0.0}), Point({1.0, 0.0})), Error);
  EXPECT_THROW(interior_strictness_check(CoefVector({1.0, 0.0}), Point({0.5})), Error);
}

TEST(InteriorStrictness, HoldsOffTheSphere) {
  testgen::Rng rng(31);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    const CoefVector a = testgen::coefs(rng, n);
    auto y = testgen::unit_vector(rng, n);
    double r = std::exp(rng.uniform(-5.0, 5.0));
    if (std::abs(r - 1.0) < 1e-6) r = 2.0;
    for (double& c : y) c *= r;
    EXPECT_TRUE(interior_strictness_check(a, Point(y)));
  }
}

// sup over |x| = R of |g| is |a|/R for R >= 1; the sampled sup includes the
// direction of a and never exceeds the closed form.
TEST(WitnessProperties, DecayIdentity) {
  testgen::Rng rng(41);
  for (std::size_t n = 1; n <= 5; ++n) {
    const Subspace s = witness_basis(n);
    for (int t = 0; t < 20; ++t) {
      const CoefVector a = testgen::coefs(rng, n);
      const Element g = s.combine(a);
      const double an = a.norm();
      for (double R : {1.0, 2.0, 4.0, 8.0, 37.5}) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = R * a[i] / an;
        double sup = std::abs(g(x));
        for (int k = 0; k < 1000; ++k) {
          auto u = testgen::unit_vector(rng, n);
          for (double& c : u) c *= R;
          const double v = std::abs(g(u));
          EXPECT_LE(v, an / R * (1.0 + 1e-12));
          sup = std::max(sup, v);
        }
        EXPECT_NEAR(sup, an / R, 1e-9 * an / R);
      }
    }
  }
}

TEST(WitnessProperties, SeamContinuityAndAntipodalSymmetry) {
  testgen::Rng rng(43);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 6));
    const CoefVector a = testgen::coefs(rng, n);
    const Element g = witness_basis(n).combine(a);
    const auto u = testgen::unit_vector(rng, n);
    std::vector<double> in(n), out(n), minus(n);
    for (std::size_t k = 0; k < n; ++k) {
      in[k] = 0.999 * u[k];
      out[k] = 1.001 * u[k];
      minus[k] = -u[k];
    }
    EXPECT_LE(std::abs(g(in) - g(out)), 0.01 * a.norm());
    EXPECT_EQ(g(u), -g(minus));
    EXPECT_NEAR(g(u), witness_value(a.values(), u), 1e-14 * a.norm());
  }
}

// For |x| <= 1 and |x - u| >= d, x.u <= 1 - d^2/2; outer points reduce to this
// through |G(y) - u| = |y - u| / |y|. Some lattice point lies within
// h = step*sqrt(n)/2 of (1 - h)u, so the grid max is at least |a|(1 - 2h) and
// the grid argmax lies within 2 sqrt(h) / (1 - 2h) of u.
TEST(WitnessProperties, GridArgmaxUniqueVersusOracle) {
  testgen::Rng rng(47);
  for (std::size_t n = 1; n <= 4; ++n) {
    const TwoChartGrid grid = build_grid(n, n <= 3 ? 33 : 17);
    const double cell = grid.cell_diameter();
    for (int t = 0; t < 100; ++t) {
      const auto a = testgen::normal_vector(rng, n);
      double an = 0.0;
      for (double c : a) an += c * c;
      an = std::sqrt(an);
      std::vector<double> u(a);
      for (double& c : u) c /= an;

      std::size_t best = 0;
      double best_value = -INFINITY;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto p = grid.point(i);
        const std::vector<double> x(p.begin(), p.end());
        const double v = witness_value(a, x);
        if (v > best_value) {
          best_value = v;
          best = i;
        }
        ASSERT_LE(v, an * (1.0 + 1e-15));
        const double d = distance(p, u);
        if (d > cell) {
          const double r = std::max(1.0, uniquemax::norm(p));
          const double rho = d / r;
          EXPECT_LE(v, an * (1.0 - rho * rho / 2.0) + 1e-12 * an);
          EXPECT_LT(v, an);
        }
      }
      const double h = grid.cell_diameter() / 2.0;
      EXPECT_GE(best_value, an * (1.0 - 2.0 * h));
      EXPECT_LE(distance(grid.point(best), u), 2.0 * std::sqrt(h) / (1.0 - 2.0 * h));
    }
  }
}

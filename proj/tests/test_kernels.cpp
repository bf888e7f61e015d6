#include <cmath>
#include <cstring>

#include <gtest/gtest.h>
#include <omp.h>

#include "generators.hpp"
#include "uniquemax/grid.hpp"
#include "uniquemax/kernels.hpp"
#include "uniquemax/witness.hpp"

using namespace uniquemax;

namespace {

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

// The OpenMP kernels must reproduce the serial reference bit for bit.
TEST(Kernels, ParallelMatchesSerial) {
  testgen::Rng rng(23);
  for (int t = 0; t < 12; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    const TwoChartGrid g = build_grid(n, n == 3 ? 17 : 33);
    const Subspace s = t % 3 == 0 ? witness_basis(n) : testgen::gaussian_subspace(rng, n, 4);
    const auto par = kernels::sample_atoms(s.atoms(), g.coordinates(), n);
    const auto ser = kernels::serial::sample_atoms(s.atoms(), g.coordinates(), n);
    ASSERT_EQ(par.points, ser.points);
    ASSERT_TRUE(bit_equal(par.values, ser.values));

    const auto w = testgen::normal_vector(rng, s.atom_count());
    const auto vp = kernels::combine(par, w);
    const auto vs = kernels::serial::combine(ser, w);
    ASSERT_TRUE(bit_equal(vp, vs));

    const auto ap = kernels::argmax(vp, g.coordinates(), n);
    const auto as = kernels::serial::argmax(vs, g.coordinates(), n);
    EXPECT_EQ(ap.index, as.index);
    EXPECT_EQ(ap.value, as.value);

    std::vector<double> anchor(g.point(ap.index).begin(), g.point(ap.index).end());
    for (double radius : {0.0, 0.1, 0.5, 2.0}) {
      EXPECT_EQ(kernels::max_outside(vp, g.coordinates(), n, anchor, radius),
                kernels::serial::max_outside(vs, g.coordinates(), n, anchor, radius));
    }
  }
}

TEST(Kernels, ResultsIndependentOfThreadCount) {
  const TwoChartGrid g = build_grid(2, 65);
  testgen::Rng rng(2);
  const Subspace s = testgen::gaussian_subspace(rng, 2, 5);
  const auto w = testgen::normal_vector(rng, 5);
  const int saved = omp_get_max_threads();
  std::vector<double> reference;
  ExtremeSample best{};
  for (int threads : {1, 2, 3, 7}) {
    omp_set_num_threads(threads);
    const auto v = kernels::combine(kernels::sample_atoms(s.atoms(), g.coordinates(), 2), w);
    const auto e = kernels::argmax(v, g.coordinates(), 2);
    if (reference.empty()) {
      reference = v;
      best = e;
    }
    EXPECT_TRUE(bit_equal(v, reference));
    EXPECT_EQ(e.index, best.index);
  }
  omp_set_num_threads(saved);
}

TEST(Kernels, ArgmaxTiesPreferLexicographicallySmallest) {
  const std::vector<double> coords{1.0, 0.0, -1.0, 0.0, 0.0, 5.0, -1.0, -2.0};
  const std::vector<double> values{2.0, 2.0, 1.0, 2.0};
  EXPECT_EQ(kernels::argmax(values, coords, 2).index, 3u);
  EXPECT_EQ(kernels::serial::argmax(values, coords, 2).index, 3u);
  EXPECT_TRUE(ranks_above(2.0, std::vector<double>{-1.0, 0.0}, 2.0, std::vector<double>{1.0, 0.0}));
  EXPECT_TRUE(ranks_above(3.0, std::vector<double>{9.0}, 2.0, std::vector<double>{0.0}));
}

TEST(Kernels, MaxOutsideExcludesBall) {
  const std::vector<double> coords{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> values{5.0, 4.0, 3.0, 1.0};
  const std::vector<double> anchor{0.0};
  EXPECT_EQ(kernels::max_outside(values, coords, 1, anchor, 1.5), 3.0);
  EXPECT_EQ(kernels::max_outside(values, coords, 1, anchor, 10.0),
            -std::numeric_limits<double>::infinity());
}

// OpenMP grid kernels against the serial reference on witness and Gaussian
// subspaces.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "uniquemax/grid.hpp"
#include "uniquemax/kernels.hpp"
#include "uniquemax/subspace.hpp"
#include "uniquemax/witness.hpp"

using namespace uniquemax;

namespace {

struct Fixture {
  TwoChartGrid grid;
  Subspace subspace;
  AtomSamples samples;
  std::vector<double> weights;
  std::vector<double> values;
  std::vector<double> anchors;
};

Subspace bumps(std::size_t n, std::size_t count) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<BasisFunction> atoms;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<double> c(n);
    for (double& x : c) x = u(rng);
    atoms.push_back(BasisFunction::gaussian(Point(c), 0.75, j % 2 ? -1 : 1));
  }
  return Subspace(std::move(atoms));
}

const Fixture& fixture(std::size_t n, int resolution, bool gaussian) {
  static std::vector<std::pair<std::tuple<std::size_t, int, bool>, Fixture>> cache;
  for (const auto& [key, f] : cache) {
    if (key == std::make_tuple(n, resolution, gaussian)) return f;
  }
  Fixture f{build_grid(n, resolution), gaussian ? bumps(n, n + 2) : witness_basis(n), {}, {},
            {}, {}};
  f.samples = kernels::serial::sample_atoms(f.subspace.atoms(), f.grid.coordinates(), n);
  for (std::size_t j = 0; j < f.subspace.atom_count(); ++j) f.weights.push_back(1.0 - 0.3 * j);
  f.values = kernels::serial::combine(f.samples, f.weights);
  f.anchors.assign(n, 0.25);
  cache.emplace_back(std::make_tuple(n, resolution, gaussian), std::move(f));
  return cache.back().second;
}

template <bool Parallel>
void BM_SampleAtoms(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)),
                          static_cast<int>(state.range(1)), state.range(2) != 0);
  for (auto _ : state) {
    auto s = Parallel ? kernels::sample_atoms(f.subspace.atoms(), f.grid.coordinates(),
                                              f.grid.dim())
                      : kernels::serial::sample_atoms(f.subspace.atoms(),
                                                      f.grid.coordinates(), f.grid.dim());
    benchmark::DoNotOptimize(s.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.grid.size()));
}

template <bool Parallel>
void BM_Combine(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)),
                          static_cast<int>(state.range(1)), state.range(2) != 0);
  for (auto _ : state) {
    auto v = Parallel ? kernels::combine(f.samples, f.weights)
                      : kernels::serial::combine(f.samples, f.weights);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.grid.size()));
}

template <bool Parallel>
void BM_Argmax(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)),
                          static_cast<int>(state.range(1)), state.range(2) != 0);
  for (auto _ : state) {
    auto e = Parallel ? kernels::argmax(f.values, f.grid.coordinates(), f.grid.dim())
                      : kernels::serial::argmax(f.values, f.grid.coordinates(), f.grid.dim());
    benchmark::DoNotOptimize(e);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.grid.size()));
}

template <bool Parallel>
void BM_MaxOutside(benchmark::State& state) {
  const auto& f = fixture(static_cast<std::size_t>(state.range(0)),
                          static_cast<int>(state.range(1)), state.range(2) != 0);
  for (auto _ : state) {
    double m = Parallel ? kernels::max_outside(f.values, f.grid.coordinates(), f.grid.dim(),
                                               f.anchors, 0.3)
                        : kernels::serial::max_outside(f.values, f.grid.coordinates(),
                                                       f.grid.dim(), f.anchors, 0.3);
    benchmark::DoNotOptimize(m);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.grid.size()));
}

// {n, resolution, gaussian atoms}
void shapes(benchmark::internal::Benchmark* b) {
  b->Args({2, 129, 0})->Args({2, 129, 1})->Args({3, 33, 1})->Args({4, 33, 0});
  b->Unit(benchmark::kMillisecond);
}

}  // namespace

BENCHMARK(BM_SampleAtoms<false>)->Name("sample_atoms/serial")->Apply(shapes);
BENCHMARK(BM_SampleAtoms<true>)->Name("sample_atoms/openmp")->Apply(shapes);
BENCHMARK(BM_Combine<false>)->Name("combine/serial")->Apply(shapes);
BENCHMARK(BM_Combine<true>)->Name("combine/openmp")->Apply(shapes);
BENCHMARK(BM_Argmax<false>)->Name("argmax/serial")->Apply(shapes);
BENCHMARK(BM_Argmax<true>)->Name("argmax/openmp")->Apply(shapes);
BENCHMARK(BM_MaxOutside<false>)->Name("max_outside/serial")->Apply(shapes);
BENCHMARK(BM_MaxOutside<true>)->Name("max_outside/openmp")->Apply(shapes);

BENCHMARK_MAIN();

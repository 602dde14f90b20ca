// Parallel kernels against their serial twins. Set COHERENCE_THREADS to
// vary the worker count.

#include <numeric>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "coherence/generators.hpp"
#include "coherence/kernels.hpp"
#include "coherence/simulate.hpp"
#include "coherence/spectral.hpp"

using namespace coherence;

namespace {

const Graph& psfw(int n) {
  static std::vector<Graph> cache(13);
  if (cache[n].num_vertices() == 0) cache[n] = psfw_iterative(n).graph;
  return cache[n];
}

template <bool Parallel>
void laplacian_apply(benchmark::State& state) {
  const auto& g = psfw(static_cast<int>(state.range(0)));
  const LaplacianMatrix L(g);
  std::vector<double> x(g.num_vertices()), y(x.size());
  std::iota(x.begin(), x.end(), 0.0);
  for (auto _ : state) {
    if constexpr (Parallel) L.apply(x, y);
    else L.apply_serial(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}

template <bool Parallel>
void bfs_totals(benchmark::State& state) {
  const auto& g = psfw(static_cast<int>(state.range(0)));
  std::vector<Vertex> sources(std::min<std::size_t>(g.num_vertices(), 256));
  std::iota(sources.begin(), sources.end(), 0);
  for (auto _ : state) {
    auto t = Parallel ? kernels::bfs_distance_totals(g, sources) : kernels::bfs_distance_totals_serial(g, sources);
    benchmark::DoNotOptimize(t.distance_sum);
  }
}

template <bool Parallel>
void pairwise(benchmark::State& state) {
  const auto s = spectrum(psfw(static_cast<int>(state.range(0))), true);
  const auto d = gram_to_distances(spectral_pseudoinverse(s, 2));
  for (auto _ : state) benchmark::DoNotOptimize(Parallel ? pairwise_sum(d) : pairwise_sum_serial(d));
}

template <bool Parallel>
void hutchinson(benchmark::State& state) {
  const auto& g = psfw(static_cast<int>(state.range(0)));
  EstimateConfig cfg;
  cfg.probes = 16;
  for (auto _ : state) {
    auto r = Parallel ? coherence_estimate(g, cfg) : coherence_estimate_serial(g, cfg);
    benchmark::DoNotOptimize(r.h_so);
  }
}

template <bool Parallel>
void simulation(benchmark::State& state) {
  const auto& g = psfw(static_cast<int>(state.range(0)));
  SimConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_total = 2.0;
  cfg.trials = 8;
  for (auto _ : state) {
    auto e = Parallel ? simulate_second_order(g, cfg) : simulate_second_order_serial(g, cfg);
    benchmark::DoNotOptimize(e.value);
  }
}

}  // namespace

BENCHMARK(laplacian_apply<true>)->Name("laplacian_apply/parallel")->Arg(8)->Arg(11);
BENCHMARK(laplacian_apply<false>)->Name("laplacian_apply/serial")->Arg(8)->Arg(11);
BENCHMARK(bfs_totals<true>)->Name("bfs_totals/parallel")->Arg(7)->Arg(9);
BENCHMARK(bfs_totals<false>)->Name("bfs_totals/serial")->Arg(7)->Arg(9);
BENCHMARK(pairwise<true>)->Name("pairwise_sum/parallel")->Arg(5)->Arg(6);
BENCHMARK(pairwise<false>)->Name("pairwise_sum/serial")->Arg(5)->Arg(6);
BENCHMARK(hutchinson<true>)->Name("hutchinson/parallel")->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(hutchinson<false>)->Name("hutchinson/serial")->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(simulation<true>)->Name("simulate/parallel")->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(simulation<false>)->Name("simulate/serial")->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

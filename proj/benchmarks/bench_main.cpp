#include <benchmark/benchmark.h>

#include <memory>

#include "gapr/sweep.hpp"

namespace {

// 50 vertices, complete digraph, 25 OD pairs.
const gapr::Network& full_scale_network() {
  static const gapr::Network net = [] {
    gapr::GeneratorConfig c;
    c.seed = 101;
    c.demand_fraction = 0.04;
    return gapr::Network(gapr::generate_instance(c));
  }();
  return net;
}

double phi_arg(const benchmark::State& state) { return static_cast<double>(state.range(0)) / 100.0; }

void BM_EnumeratePaths(benchmark::State& state) {
  const auto& net = full_scale_network();
  const double phi = phi_arg(state);
  std::size_t paths = 0;
  for (auto _ : state) {
    const auto sets = gapr::enumerate_all(net, phi);
    paths = 0;
    for (const auto& s : sets) paths += s.paths.size();
    benchmark::DoNotOptimize(paths);
  }
  state.counters["paths"] = static_cast<double>(paths);
}
BENCHMARK(BM_EnumeratePaths)->Arg(1)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SimplexRoutingLp(benchmark::State& state) {
  const auto& net = full_scale_network();
  const auto sets = gapr::enumerate_all(net, phi_arg(state));
  const auto lp = gapr::build_gacpr_lp(net, sets, 0.5);
  std::size_t iterations = 0;
  for (auto _ : state) {
    const auto sol = gapr::simplex_solve(lp.problem);
    iterations = sol.iterations;
    benchmark::DoNotOptimize(sol.objective_value);
  }
  state.counters["columns"] = static_cast<double>(lp.problem.n_vars);
  state.counters["iterations"] = static_cast<double>(iterations);
}
BENCHMARK(BM_SimplexRoutingLp)->Arg(1)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_SweepCell(benchmark::State& state) {
  const auto& net = full_scale_network();
  const auto ue = gapr::user_equilibrium(net);
  const double phi = phi_arg(state);
  const auto sets = std::make_shared<const gapr::PathSets>(gapr::enumerate_all(net, phi));
  for (auto _ : state) {
    const auto a = gapr::solve_assignment(net, {phi, 0.5}, sets);
    benchmark::DoNotOptimize(gapr::compute_stats(a, ue, net));
  }
}
BENCHMARK(BM_SweepCell)->Arg(1)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FullSweep(benchmark::State& state) {
  const auto& net = full_scale_network();
  gapr::SweepConfig config;
  config.parallel_cells = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gapr::run_sweep(net, config).records.size());
}
BENCHMARK(BM_FullSweep)->Arg(1)->Arg(4)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();

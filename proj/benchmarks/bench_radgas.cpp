#include <benchmark/benchmark.h>

#include <cmath>

#include "radgas/elliptic.hpp"
#include "radgas/ibvp.hpp"
#include "radgas/rarefaction.hpp"
#include "radgas/stationary.hpp"

using namespace radgas;

static void BM_EllipticSolve(benchmark::State& state) {
    const Grid g(400.0, static_cast<std::size_t>(state.range(0)));
    const auto f = GridFunction::sample(g, [](double x) { return std::exp(-0.1 * x) * std::sin(x); });
    for (auto _ : state) benchmark::DoNotOptimize(solve_screened_poisson(f, LeftBC::neumann(-1.0)));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EllipticSolve)->Arg(2001)->Arg(8001)->Arg(32001)->Complexity(benchmark::oN);

static void BM_StationaryLimit(benchmark::State& state) {
    const auto p = StationaryParams::make(-std::sqrt(0.2), 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(stationary_limit(p));
}
BENCHMARK(BM_StationaryLimit)->Unit(benchmark::kMillisecond);

static void BM_ReconstructProfile(benchmark::State& state) {
    const auto lim = stationary_limit(StationaryParams::make(-std::sqrt(0.2), 0.0));
    const Grid g(400.0, 8001);
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_profile(lim, g));
}
BENCHMARK(BM_ReconstructProfile)->Unit(benchmark::kMillisecond);

static void BM_IbvpStep(benchmark::State& state) {
    ScenarioConfig cfg;
    cfg.perturbation.amplitude = 0.02;
    const Scenario sc = make_scenario(cfg);
    SimState s = initial_state(sc);
    const double dt = stable_dt(s, sc);
    for (auto _ : state) benchmark::DoNotOptimize(step(s, sc, dt));
}
BENCHMARK(BM_IbvpStep)->Unit(benchmark::kMicrosecond);

static void BM_SmoothBurgers(benchmark::State& state) {
    double x = -5.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(smooth_burgers_jet(-0.5, 0.5, x, 10.0));
        x = x > 5.0 ? -5.0 : x + 1e-3;
    }
}
BENCHMARK(BM_SmoothBurgers);
BENCHMARK_MAIN();

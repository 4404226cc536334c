#include <benchmark/benchmark.h>

#include "outflow/sweep.hpp"

using namespace outflow;

namespace {

RunSpec small_spec() {
    RunSpec spec;
    spec.solver.m = 20.0;
    spec.solver.N = 128;
    spec.solver.t_end = 1.0;
    spec.solver.snapshots = 2;
    spec.stationary.N = 400;
    spec.stationary.r_max = 30.0;
    return spec;
}

} // namespace

static void BM_stationary_solve(benchmark::State& state) {
    const RunSpec spec = small_spec();
    for (auto _ : state) {
        auto profile = solve_profile(spec);
        benchmark::DoNotOptimize(profile->rho1);
    }
}
BENCHMARK(BM_stationary_solve)->Unit(benchmark::kMillisecond);

static void BM_solver_step(benchmark::State& state) {
    const RunSpec spec = small_spec();
    auto profile = solve_profile(spec);
    const InitialData init = make_initial_data(spec.init, profile, spec.solver.m);
    Simulation sim(spec.params, profile, init, spec.solver);
    double horizon = 1e9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim.step(horizon));
    }
}
BENCHMARK(BM_solver_step)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

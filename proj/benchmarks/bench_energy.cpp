#include <benchmark/benchmark.h>

#include <cmath>

#include "outflow/energy.hpp"
#include "outflow/rng.hpp"

using namespace outflow;

static void BM_G_closed(benchmark::State& state) {
    Params p;
    p.gamma = 1.4;
    CounterRng rng(1);
    double v = rng.uniform(0.1, 10.0), vt = rng.uniform(0.1, 10.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy_distance_G(v, vt, p));
        v = 0.1 + std::fmod(v + 0.37, 9.9);
        vt = 0.1 + std::fmod(vt + 0.73, 9.9);
    }
}
BENCHMARK(BM_G_closed);

static void BM_G_quadrature(benchmark::State& state) {
    Params p;
    p.gamma = 1.4;
    CounterRng rng(1);
    double v = rng.uniform(0.1, 10.0), vt = rng.uniform(0.1, 10.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(energy_distance_G(v, vt, p, EnergyMode::Quadrature));
        v = 0.1 + std::fmod(v + 0.37, 9.9);
        vt = 0.1 + std::fmod(vt + 0.73, 9.9);
    }
}
BENCHMARK(BM_G_quadrature);

static void BM_phiG_check(benchmark::State& state) {
    Params p;
    p.gamma = 1.5;
    double v = 0.4, vt = 3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_phiG_bound(v, vt, p));
        v = 0.1 + std::fmod(v + 0.37, 9.9);
        vt = 0.1 + std::fmod(vt + 0.73, 9.9);
    }
}
BENCHMARK(BM_phiG_check);

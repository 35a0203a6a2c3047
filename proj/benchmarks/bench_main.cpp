#include <random>

#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "covparam/frequency.hpp"
#include "covparam/lyapunov.hpp"
#include "covparam/parametrization.hpp"
#include "covparam/simulate.hpp"

namespace {

using covparam::Parametrization;
using covparam::SystemModel;

Eigen::MatrixXd random_spd(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    return g * g.transpose() / n + Eigen::MatrixXd::Identity(n, n);
}

Eigen::MatrixXd random_skew(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = gauss(rng);
    return 0.5 * (g - g.transpose());
}

SystemModel make_model(int n, std::uint64_t seed = 7) {
    std::mt19937_64 rng(seed);
    const Parametrization p{random_spd(n, rng), random_skew(n, rng), random_spd(n, rng)};
    return covparam::forward_param(p);
}

void BM_SolveLyapunov(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SystemModel m = make_model(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(covparam::solve_lyapunov(m.A, m.Sigma_w));
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_SolveLyapunov)->RangeMultiplier(2)->Range(2, 64)->Complexity();

void BM_InverseParam(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SystemModel m = make_model(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(covparam::inverse_param(m));
    }
}
BENCHMARK(BM_InverseParam)->RangeMultiplier(2)->Range(2, 32);

void BM_PsdTrace(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SystemModel m = make_model(n);
    double omega = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(covparam::psd_trace(m, omega));
        omega += 0.1;
    }
}
BENCHMARK(BM_PsdTrace)->RangeMultiplier(2)->Range(2, 32);

void BM_EnergyCheck(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const SystemModel m = make_model(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(covparam::energy_identity_check(m));
    }
}
BENCHMARK(BM_EnergyCheck)->Arg(2)->Arg(4)->Arg(8);

void BM_SimulateOu(benchmark::State& state) {
    const SystemModel m = make_model(4);
    covparam::SimConfig cfg;
    cfg.dt = 1e-3;
    cfg.n_steps = state.range(0);
    cfg.burn_in = 20000;
    cfg.seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(covparam::simulate_ou(m, cfg));
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_steps);
}
BENCHMARK(BM_SimulateOu)->Arg(100000)->Arg(1000000);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "pulsemax/bayes_cdf.hpp"
#include "pulsemax/cox_process.hpp"
#include "pulsemax/dependence.hpp"
#include "pulsemax/extremal_index.hpp"
#include "pulsemax/max_dist.hpp"
#include "pulsemax/random.hpp"
#include "pulsemax/synthetic.hpp"

using namespace pulsemax;

namespace {

std::vector<double> clustered_sequence(std::size_t n) {
    RandomStream rng(1);
    return gen_max_ar(0.5, n, rng);
}

}  // namespace

static void BM_runs_estimator(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const std::vector<double> x = clustered_sequence(n);
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    const double u = sorted[static_cast<std::size_t>(0.99 * n)];
    for (auto _ : state)
        benchmark::DoNotOptimize(runs_estimator(x, u, 2).theta_hat);
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_runs_estimator)->Arg(10000)->Arg(100000)->Arg(1000000);

static void BM_autocorrelation(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    RandomStream rng(2);
    std::vector<double> x(n);
    for (auto& v : x) v = rng.normal();
    for (auto _ : state)
        benchmark::DoNotOptimize(autocorrelation(x, 500).values.back());
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n));
}
BENCHMARK(BM_autocorrelation)->Arg(10000)->Arg(100000);

static void BM_simulate_intensity(benchmark::State& state) {
    const CoxModel model = CoxModel::from_stationary(1.99, 1.50, 19.4);
    const double horizon = static_cast<double>(state.range(0));
    RandomStream rng(3);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            simulate_intensity(model, horizon, model.tau0 / 50.0, rng).cumulative.back());
}
BENCHMARK(BM_simulate_intensity)->Arg(24)->Arg(264)->Arg(1440);

static void BM_mc_max_cdf(benchmark::State& state) {
    const CoxModel model = CoxModel::from_stationary(1.99, 1.50, 19.4);
    const BetaPosterior post = posterior_params(533, 0.9157, 1.0);
    const std::size_t sims = static_cast<std::size_t>(state.range(0));
    RandomStream rng(4);
    for (auto _ : state)
        benchmark::DoNotOptimize(mc_max_cdf(model, post, 24.0, sims, rng).cdf);
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(sims));
}
BENCHMARK(BM_mc_max_cdf)->Arg(1000)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();

#include <random>

#include <benchmark/benchmark.h>

#include "nslab/assembly.hpp"
#include "nslab/basis.hpp"
#include "nslab/integrate.hpp"

using namespace nslab;

namespace {

Eigen::VectorXd random_state(const BasisSet& basis, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Eigen::VectorXd a(static_cast<Eigen::Index>(basis.size()));
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        a[i] = normal(rng);
    }
    return a;
}

BasisSet bench_basis(int dim, int k_max)
{
    return build_basis(dim, k_max);
}

} // namespace

// Nonlinear term B(u, u) via the pseudospectral evaluator.
static void BM_TrilinearApply(benchmark::State& state)
{
    const auto basis = bench_basis(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const TrilinearEvaluator eval(basis, AdvectionMap::standard());
    const auto u = random_state(basis, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval.apply(u));
    }
    state.counters["modes"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_TrilinearApply)->Args({2, 5})->Args({2, 10})->Args({3, 2})->Args({3, 4})->Unit(benchmark::kMicrosecond);

static void BM_Step(benchmark::State& state)
{
    const auto basis = bench_basis(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const auto system = assemble_system(basis);
    SimConfig config;
    config.initial = random_state(basis, 2) * 1e-2;
    config.track_divergence = false;
    Eigen::VectorXd a = config.initial;
    for (auto _ : state) {
        benchmark::DoNotOptimize(a = step(a, 0.0, system, config));
    }
}
BENCHMARK(BM_Step)->Args({2, 5})->Args({3, 3})->Unit(benchmark::kMicrosecond);

static void BM_DenseTrilinearAssembly(benchmark::State& state)
{
    const auto basis = bench_basis(2, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(assemble_trilinear(basis, AdvectionMap::standard()));
    }
    state.counters["modes"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_DenseTrilinearAssembly)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_Synthesize(benchmark::State& state)
{
    const int dim = static_cast<int>(state.range(0));
    const auto basis = bench_basis(dim, 3);
    const Grid grid(dim, static_cast<int>(state.range(1)));
    const auto a = random_state(basis, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(synthesize(a, basis, grid));
    }
}
BENCHMARK(BM_Synthesize)->Args({2, 64})->Args({3, 16})->Args({3, 32})->Unit(benchmark::kMicrosecond);

static void BM_Analyze(benchmark::State& state)
{
    const int dim = static_cast<int>(state.range(0));
    const auto basis = bench_basis(dim, 3);
    const Grid grid(dim, static_cast<int>(state.range(1)));
    const auto u = synthesize(random_state(basis, 4), basis, grid);
    for (auto _ : state) {
        benchmark::DoNotOptimize(analyze(u, basis));
    }
}
BENCHMARK(BM_Analyze)->Args({2, 64})->Args({3, 16})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

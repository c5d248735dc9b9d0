#include <benchmark/benchmark.h>

#include <random>

#include "irred/commutant.hpp"
#include "irred/perturbation.hpp"
#include "irred/rosenblum.hpp"
#include "irred/sampling.hpp"

using namespace irred;

static void BM_CommutantGinibre(benchmark::State& state)
{
    const CMatrix s = sample_matrix(Ensemble::Ginibre, state.range(0), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(commutant_basis(s).dimension);
}
BENCHMARK(BM_CommutantGinibre)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_CommutantReducible(benchmark::State& state)
{
    const CMatrix s = sample_matrix(Ensemble::BlockDiagonalConjugated, state.range(0), 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(commutant_basis(s).dimension);
}
BENCHMARK(BM_CommutantReducible)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_PerturbToIrreducible(benchmark::State& state)
{
    const CMatrix t = sample_matrix(Ensemble::BlockDiagonalConjugated, state.range(0), 2);
    const double eps = 0.1 * operator_norm(t);
    for (auto _ : state)
        benchmark::DoNotOptimize(perturb_to_irreducible(t, eps, 2).bounds.t_t3);
}
BENCHMARK(BM_PerturbToIrreducible)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_SylvesterSchur(benchmark::State& state)
{
    std::mt19937_64 rng(3);
    const Eigen::Index n = state.range(0);
    const CMatrix a(ginibre(n, n, rng));
    const CMatrix b(ginibre(n, n, rng) + 10.0 * Matrix::Identity(n, n));
    const auto p = make_sylvester_problem(a, b, ginibre(n, n, rng));
    for (auto _ : state)
        benchmark::DoNotOptimize(sylvester_solve(p)(0, 0));
}
BENCHMARK(BM_SylvesterSchur)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

static void BM_SylvesterDense(benchmark::State& state)
{
    std::mt19937_64 rng(3);
    const Eigen::Index n = state.range(0);
    const CMatrix a(ginibre(n, n, rng));
    const CMatrix b(ginibre(n, n, rng) + 10.0 * Matrix::Identity(n, n));
    const auto p = make_sylvester_problem(a, b, ginibre(n, n, rng));
    for (auto _ : state)
        benchmark::DoNotOptimize(sylvester_solve_dense(p)(0, 0));
}
BENCHMARK(BM_SylvesterDense)->Arg(8)->Arg(16)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();

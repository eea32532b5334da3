// Serial reference vs OpenMP path for the three grid kernels.
// Run with OMP_NUM_THREADS set to the core count you want to measure.

#include <benchmark/benchmark.h>

#include "qtlattice/evolution.hpp"
#include "qtlattice/horizons.hpp"

using namespace qtl;

namespace
{
Execution mode(const benchmark::State& state)
{
    return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State& state)
{
    state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
}

void BM_HiddenHorizonScan(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    Matrix k = Matrix::Zero(state.range(0), state.range(0));
    for (Eigen::Index i = 0; i < k.rows(); ++i)
        k(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
    const std::vector<double> grid = uniform_grid(0.0, 2.0, 2001);
    for (auto _ : state)
        benchmark::DoNotOptimize(hidden_horizon_scan(n, k, grid, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(grid.size()));
    label(state);
}

void BM_NormTrajectory(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const LatticeHamiltonian h = build_hamiltonian(n);
    MetricOperator q;
    q.matrix = build_metric_Q(n).dense();
    EvolutionState psi0;
    psi0.amplitudes = ComplexVector::Ones(state.range(0));
    const std::vector<double> grid = uniform_grid(0.0, 10.0, 1001);
    for (auto _ : state)
        benchmark::DoNotOptimize(norm_trajectory(h, q, psi0, grid, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<long long>(grid.size()));
    label(state);
}

void BM_HorizonConvergence(benchmark::State& state)
{
    std::vector<std::size_t> dims;
    for (std::size_t n = 2; n <= static_cast<std::size_t>(state.range(0)); n *= 2)
        dims.push_back(n);
    for (auto _ : state)
        benchmark::DoNotOptimize(horizon_convergence_scan(dims, mode(state)));
    label(state);
}
} // namespace

BENCHMARK(BM_HiddenHorizonScan)->ArgsProduct({{4, 16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NormTrajectory)->ArgsProduct({{4, 16, 64}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HorizonConvergence)->ArgsProduct({{64, 256}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

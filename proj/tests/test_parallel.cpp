#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <stdexcept>

#include <omp.h>

#include "parallel.hpp"
#include "qtlattice/evolution.hpp"
#include "qtlattice/horizons.hpp"

using namespace qtl;

namespace
{
bool same_bits(double a, double b)
{
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}
} // namespace

TEST_CASE("the parallel path uses more than one thread")
{
    int threads = 0;
#pragma omp parallel
    {
#pragma omp single
        threads = omp_get_num_threads();
    }
    CHECK(threads > 1);
}

TEST_CASE("for_each_index visits every index once and rethrows")
{
    std::vector<int> hits(1000, 0);
    detail::for_each_index(hits.size(), Execution::parallel, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits)
        CHECK(h == 1);

    CHECK_THROWS_AS(detail::for_each_index(100, Execution::parallel,
                                           [](std::size_t i) {
                                               if (i == 37)
                                                   throw std::runtime_error("index 37");
                                           }),
                    std::runtime_error);
}

TEST_CASE("hidden-horizon scan: serial and parallel are bitwise equal")
{
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {2u, 5u, 12u})
    {
        Matrix k(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (Eigen::Index i = 0; i < k.rows(); ++i)
            for (Eigen::Index j = 0; j <= i; ++j)
                k(i, j) = k(j, i) = u(rng);
        // Includes the singular point alpha = gamma for N = 2 when n == 2.
        std::vector<double> grid = uniform_grid(-2.0, 2.0, 401);
        if (n == 2)
        {
            grid.push_back(2.5);
            grid.insert(grid.begin() + 200, 0.8660254037844386);
            std::sort(grid.begin(), grid.end());
        }
        const RealityScan s = hidden_horizon_scan(n, k, grid, Execution::serial);
        const RealityScan p = hidden_horizon_scan(n, k, grid, Execution::parallel);
        REQUIRE(s.max_imag.size() == p.max_imag.size());
        for (std::size_t i = 0; i < s.max_imag.size(); ++i)
        {
            CHECK(same_bits(s.max_imag[i], p.max_imag[i]));
            CHECK(s.skipped[i] == p.skipped[i]);
            CHECK(s.definiteness[i] == p.definiteness[i]);
        }
        CHECK(s.first_crossing == p.first_crossing);
    }
}

TEST_CASE("norm trajectory: serial and parallel are bitwise equal")
{
    for (std::size_t n : {3u, 16u, 40u})
    {
        EvolutionState psi0;
        psi0.amplitudes = ComplexVector::Ones(static_cast<Eigen::Index>(n));
        const LatticeHamiltonian h = build_hamiltonian(n);
        const MetricOperator theta = tridiagonal_metric(n, 0.5 * horizon_gamma_spectral(n));
        const std::vector<double> grid = uniform_grid(0.0, 10.0, 501);
        const std::vector<NormSample> s = norm_trajectory(h, theta, psi0, grid, Execution::serial);
        const std::vector<NormSample> p = norm_trajectory(h, theta, psi0, grid, Execution::parallel);
        REQUIRE(s.size() == p.size());
        for (std::size_t i = 0; i < s.size(); ++i)
        {
            CHECK(same_bits(s[i].theta_norm, p[i].theta_norm));
            CHECK(same_bits(s[i].dirac_norm, p[i].dirac_norm));
        }
        const NormDrift ds = norm_drift(h, theta, psi0, grid, Execution::serial);
        const NormDrift dp = norm_drift(h, theta, psi0, grid, Execution::parallel);
        CHECK(same_bits(ds.max_theta_drift, dp.max_theta_drift));
        CHECK(same_bits(ds.max_dirac_drift, dp.max_dirac_drift));
    }
}

TEST_CASE("convergence scan: serial and parallel are bitwise equal")
{
    const std::vector<std::size_t> ns{2, 3, 4, 8, 16, 32, 64};
    const HorizonConvergence s = horizon_convergence_scan(ns, Execution::serial);
    const HorizonConvergence p = horizon_convergence_scan(ns, Execution::parallel);
    REQUIRE(s.points.size() == p.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i)
        CHECK(same_bits(s.points[i].gamma, p.points[i].gamma));
    for (std::size_t i = 0; i < s.differences.size(); ++i)
        CHECK(same_bits(s.differences[i], p.differences[i]));
}

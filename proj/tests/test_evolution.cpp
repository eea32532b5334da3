#include <doctest.h>

#include <cmath>
#include <random>

#include "qtlattice/evolution.hpp"
#include "qtlattice/horizons.hpp"

using namespace qtl;

namespace
{
// Taylor series with scaling and squaring; independent of the eigensystem.
ComplexMatrix expm_oracle(const Matrix& h, double t)
{
    const ComplexMatrix a = complex(0.0, -t) * h.cast<complex>();
    int squarings = 0;
    double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    while (norm > 0.5)
    {
        norm *= 0.5;
        ++squarings;
    }
    const ComplexMatrix scaled = a / std::pow(2.0, squarings);
    ComplexMatrix term = ComplexMatrix::Identity(h.rows(), h.cols());
    ComplexMatrix sum = term;
    for (int k = 1; k < 30; ++k)
    {
        term = (term * scaled / static_cast<double>(k)).eval();
        sum += term;
    }
    for (int i = 0; i < squarings; ++i)
        sum = (sum * sum).eval();
    return sum;
}

EvolutionState random_state(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    EvolutionState s;
    s.amplitudes.resize(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i)
        s.amplitudes[i] = complex(g(rng), g(rng));
    return s;
}

MetricOperator identity_metric(std::size_t n)
{
    MetricOperator m;
    m.matrix = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    return m;
}

MetricOperator q_metric(std::size_t n)
{
    MetricOperator m;
    m.matrix = build_metric_Q(n).dense();
    m.provenance = Provenance::diagonal_q;
    return m;
}
} // namespace

TEST_CASE("propagator examples")
{
    for (std::size_t n : {1u, 2u, 7u, 30u})
    {
        const auto dim = static_cast<Eigen::Index>(n);
        CHECK(propagator(build_hamiltonian(n), 0.0) == ComplexMatrix::Identity(dim, dim));
    }
    const ComplexMatrix one = propagator(build_hamiltonian(1), 3.7);
    CHECK(one.rows() == 1);
    CHECK(std::abs(one(0, 0) - complex(1.0, 0.0)) <= 1e-15);

    // Phases -+pi on both eigenvalues make the propagator -I.
    const ComplexMatrix half_turn = propagator(build_hamiltonian(2), M_PI * std::sqrt(3.0));
    CHECK(max_abs(ComplexMatrix(half_turn + ComplexMatrix::Identity(2, 2))) <= 1e-14);
}

TEST_CASE("propagator matches a series exponential")
{
    for (std::size_t n : {2u, 3u, 5u, 9u, 16u})
    {
        const LatticeHamiltonian h = build_hamiltonian(n);
        for (double t : {0.1, 1.0, 4.5, 10.0})
            CHECK(max_abs(ComplexMatrix(propagator(h, t) - expm_oracle(h.dense(), t))) <= 1e-11);
    }
}

TEST_CASE("group and conjugation properties")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (std::size_t n = 1; n <= 16; ++n)
    {
        const BiorthogonalSystem sys = biorthogonal_system(n);
        for (int trial = 0; trial < 5; ++trial)
        {
            const double t1 = u(rng);
            const double t2 = u(rng);
            const ComplexMatrix product = propagator(sys, t1) * propagator(sys, t2);
            CHECK(max_abs(ComplexMatrix(product - propagator(sys, t1 + t2))) <= 1e-11);
            CHECK(max_abs(ComplexMatrix(propagator(sys, -t1) - propagator(sys, t1).conjugate())) <= 1e-13);
        }
    }
}

TEST_CASE("evolve applies the propagator")
{
    const BiorthogonalSystem sys = biorthogonal_system(3);
    EvolutionState psi;
    psi.amplitudes = ComplexVector::Ones(3);
    psi.time = 1.0;
    const EvolutionState later = evolve(sys, psi, 2.5);
    CHECK(later.time == 2.5);
    CHECK(max_abs(ComplexVector(later.amplitudes - propagator(sys, 1.5) * psi.amplitudes)) == 0.0);

    EvolutionState zero;
    zero.amplitudes = ComplexVector::Zero(3);
    CHECK_THROWS_AS(evolve(sys, zero, 1.0), std::invalid_argument);
}

TEST_CASE("theta_norm examples")
{
    EvolutionState e0;
    e0.amplitudes = ComplexVector::Zero(2);
    e0.amplitudes[0] = 1.0;
    EvolutionState e1;
    e1.amplitudes = ComplexVector::Zero(2);
    e1.amplitudes[1] = 1.0;
    CHECK(theta_norm(q_metric(2), e0) == 0.5);
    CHECK(theta_norm(q_metric(2), e1) == 1.5);

    EvolutionState unit;
    unit.amplitudes = ComplexVector(3);
    unit.amplitudes << complex(0.6, 0.0), complex(0.0, 0.8), complex(0.0, 0.0);
    CHECK(theta_norm(identity_metric(3), unit) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(theta_norm(tridiagonal_metric(2, 1.0), e0), DomainError);
}

TEST_CASE("norm drift examples")
{
    const std::vector<double> grid = uniform_grid(0.0, 10.0, 101);

    const BiorthogonalSystem two = biorthogonal_system(2);
    EvolutionState eigen;
    eigen.amplitudes = two.kets.col(0).cast<complex>();
    CHECK(norm_drift(two.hamiltonian, q_metric(2), eigen, grid).max_theta_drift <= 1e-12);

    EvolutionState uniform;
    uniform.amplitudes = ComplexVector::Constant(4, complex(0.5, 0.0));
    const NormDrift d = norm_drift(build_hamiltonian(4), q_metric(4), uniform, grid);
    CHECK(d.max_theta_drift <= 1e-10);
    CHECK(d.max_dirac_drift > 1e-3);

    CHECK_THROWS_AS(norm_drift(build_hamiltonian(4), identity_metric(4), uniform, grid), DomainError);
    CHECK_THROWS_AS(norm_drift(build_hamiltonian(2), tridiagonal_metric(2, 1.0), eigen, grid), DomainError);
}

TEST_CASE("trajectory samples agree with direct norms")
{
    const BiorthogonalSystem sys = biorthogonal_system(5);
    std::mt19937_64 rng(3);
    const EvolutionState psi0 = random_state(5, rng);
    const MetricOperator theta = tridiagonal_metric(5, 0.2);
    const std::vector<double> grid{0.0, 0.5, 3.0};
    const std::vector<NormSample> samples = norm_trajectory(sys.hamiltonian, theta, psi0, grid);
    REQUIRE(samples.size() == 3);
    for (std::size_t i = 0; i < grid.size(); ++i)
    {
        const EvolutionState psi = evolve(sys, psi0, grid[i]);
        CHECK(samples[i].time == grid[i]);
        CHECK(samples[i].theta_norm == doctest::Approx(theta_norm(theta, psi)).epsilon(1e-14));
        CHECK(samples[i].dirac_norm == doctest::Approx(psi.amplitudes.squaredNorm()).epsilon(1e-14));
    }
}

TEST_CASE("theta-norm conservation across the kappa family")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> e(-1.0, 1.0);
    const std::vector<double> grid = uniform_grid(0.0, 10.0, 101);
    for (std::size_t n = 1; n <= 32; ++n)
    {
        const BiorthogonalSystem sys = biorthogonal_system(n);
        for (int trial = 0; trial < 3; ++trial)
        {
            KappaVector k{Vector(static_cast<Eigen::Index>(n))};
            for (Eigen::Index j = 0; j < k.values.size(); ++j)
                k.values[j] = std::pow(10.0, e(rng));
            const NormDrift d = norm_drift(sys.hamiltonian, metric_from_kappa(sys, k), random_state(n, rng), grid);
            CHECK(d.max_theta_drift <= 1e-10);
        }
    }
}

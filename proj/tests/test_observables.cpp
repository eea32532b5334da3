#include <doctest.h>

#include <cmath>
#include <random>

#include "qtlattice/observables.hpp"

using namespace qtl;

namespace
{
MetricOperator as_metric(const Matrix& m)
{
    MetricOperator t;
    t.matrix = m;
    t.definiteness = classify_definiteness(m);
    return t;
}

Matrix random_matrix(std::size_t n, std::mt19937_64& rng, bool symmetric)
{
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto dim = static_cast<Eigen::Index>(n);
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            m(i, j) = u(rng);
    if (symmetric)
        m = 0.5 * (m + m.transpose()).eval();
    return m;
}

KappaVector random_kappa(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> e(-1.0, 1.0);
    KappaVector k{Vector(static_cast<Eigen::Index>(n))};
    for (Eigen::Index j = 0; j < k.values.size(); ++j)
        k.values[j] = std::pow(10.0, e(rng));
    return k;
}
} // namespace

TEST_CASE("dieudonne_residual examples")
{
    const BiorthogonalSystem sys = biorthogonal_system(5);
    const MetricOperator q = as_metric(sys.metric.dense());
    CHECK(dieudonne_residual(Matrix::Identity(5, 5), q) == 0.0);
    CHECK(dieudonne_residual(Matrix::Identity(5, 5), tridiagonal_metric(5, 0.2)) == 0.0);

    for (std::size_t n = 1; n <= 64; ++n)
    {
        const BiorthogonalSystem s = biorthogonal_system(n);
        CHECK(dieudonne_residual(s.hamiltonian.dense(), as_metric(s.metric.dense())) <= 1e-15);
    }

    const BiorthogonalSystem two = biorthogonal_system(2);
    CHECK(dieudonne_residual(two.hamiltonian.dense().transpose(), as_metric(two.metric.dense())) > 0.1);

    CHECK_THROWS_AS(dieudonne_residual(Matrix::Identity(3, 3), q), std::invalid_argument);
}

TEST_CASE("observable_from_hermitian")
{
    const MetricOperator theta = tridiagonal_metric(4, 0.3);
    CHECK(max_abs(observable_from_hermitian(theta.matrix, theta) - Matrix::Identity(4, 4)) <= 1e-14);

    const MetricOperator q = as_metric(build_metric_Q(4).dense());
    CHECK(max_abs(observable_from_hermitian(q.matrix, q) - Matrix::Identity(4, 4)) == 0.0);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial)
    {
        const Matrix lambda = observable_from_hermitian(random_matrix(4, rng, true), q);
        CHECK(dieudonne_residual(lambda, q) <= 1e-13);
    }

    CHECK_THROWS_AS(observable_from_hermitian(Matrix::Identity(2, 2), tridiagonal_metric(2, 0.8660254037844386)),
                    DomainError);
}

TEST_CASE("spectral_data: diagonal matrix")
{
    Vector d(3);
    d << 1.0, 2.0, 3.0;
    const ObservableSpectralData s = spectral_data(d.asDiagonal());
    for (Eigen::Index j = 0; j < 3; ++j)
    {
        CHECK(std::abs(s.eigenvalues[j] - complex(d[j], 0.0)) <= 1e-14);
        CHECK(max_abs(ComplexVector(s.right_vectors.col(j) - ComplexMatrix::Identity(3, 3).col(j))) <= 1e-14);
        CHECK(max_abs(ComplexVector(s.left_vectors.col(j) - ComplexMatrix::Identity(3, 3).col(j))) <= 1e-14);
        CHECK(std::abs(s.pairing_norms[j] - complex(1.0, 0.0)) <= 1e-14);
    }
}

TEST_CASE("spectral_data: H at N = 2")
{
    const ObservableSpectralData s = spectral_data(build_hamiltonian(2).dense());
    const double e = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(s.eigenvalues[0] - complex(-e, 0.0)) <= 1e-14);
    CHECK(std::abs(s.eigenvalues[1] - complex(e, 0.0)) <= 1e-14);
    // Right vectors are proportional to (1, lambda).
    for (Eigen::Index j = 0; j < 2; ++j)
    {
        const complex ratio = s.right_vectors(1, j) / s.right_vectors(0, j);
        CHECK(std::abs(ratio - s.eigenvalues[j]) <= 1e-14);
    }
    CHECK(reconstruction_residual(s) <= 1e-14);
}

TEST_CASE("spectral_data: complex pair")
{
    Matrix rot(2, 2);
    rot << 0.0, 1.0, -1.0, 0.0;
    const ObservableSpectralData s = spectral_data(rot);
    CHECK(std::abs(s.eigenvalues[0] - complex(0.0, -1.0)) <= 1e-14);
    CHECK(std::abs(s.eigenvalues[1] - complex(0.0, 1.0)) <= 1e-14);
    CHECK(reconstruction_residual(s) <= 1e-14);
    // l_j^H Lambda = lambda_j l_j^H
    for (Eigen::Index j = 0; j < 2; ++j)
    {
        const ComplexVector lhs = (s.left_vectors.col(j).adjoint() * rot.cast<complex>()).transpose();
        const ComplexVector rhs = s.eigenvalues[j] * s.left_vectors.col(j).conjugate();
        CHECK(max_abs(ComplexVector(lhs - rhs)) <= 1e-14);
    }
}

TEST_CASE("spectral_data: invariants on random matrices")
{
    std::mt19937_64 rng(11);
    for (std::size_t n = 2; n <= 12; ++n)
        for (int trial = 0; trial < 10; ++trial)
        {
            const Matrix m = random_matrix(n, rng, false);
            const ObservableSpectralData s = spectral_data(m);
            CHECK(reconstruction_residual(s) <= 1e-10 * std::max(1.0, max_abs(m)));
            const ComplexMatrix gram = s.left_vectors.adjoint() * s.right_vectors;
            for (Eigen::Index i = 0; i < gram.rows(); ++i)
                for (Eigen::Index j = 0; j < gram.cols(); ++j)
                    if (i != j)
                        CHECK(std::abs(gram(i, j)) <= 1e-10);
        }
}

TEST_CASE("spectral_data rejects degenerate spectra")
{
    CHECK_THROWS_AS(spectral_data(Matrix::Identity(3, 3)), DomainError);
    Matrix jordan(2, 2);
    jordan << 1.0, 1.0, 0.0, 1.0;
    CHECK_THROWS_AS(spectral_data(jordan), DomainError);
    Vector d(3);
    d << 1.0, 1.0 + 1e-12, 2.0;
    CHECK_THROWS_AS(spectral_data(d.asDiagonal()), DomainError);
}

TEST_CASE("overlap matrices: identity observable")
{
    const BiorthogonalSystem sys = biorthogonal_system(4);
    Vector k(4);
    k << 0.5, 1.0, 2.0, 4.0;
    const OverlapPair p = overlap_matrices(sys, KappaVector{k}, identity_spectral_data(4));
    const ComplexMatrix expected = k.cwiseProduct(sys.q_norms).cwiseInverse().cast<complex>().asDiagonal();
    CHECK(max_abs(ComplexMatrix(p.m - expected)) <= 1e-12);
    CHECK(p.hermiticity_residual <= 1e-12);
    CHECK(criterion_product_hermitian(p));
    CHECK(max_abs(ComplexMatrix(p.m - p.u * p.v)) == 0.0);
}

TEST_CASE("overlap matrices: H and its transpose")
{
    for (std::size_t n = 2; n <= 8; ++n)
    {
        const BiorthogonalSystem sys = biorthogonal_system(n);
        const OverlapPair p = overlap_matrices(sys, exceptional_kappa(sys), spectral_data(sys.hamiltonian.dense()));
        CHECK(p.hermiticity_residual <= 1e-11);
        CHECK(criterion_product_hermitian(p));
    }

    const BiorthogonalSystem three = biorthogonal_system(3);
    const OverlapPair bad =
        overlap_matrices(three, exceptional_kappa(three), spectral_data(three.hamiltonian.dense().transpose()));
    CHECK(bad.hermiticity_residual > 1e-3);
    CHECK_FALSE(criterion_product_hermitian(bad));

    CHECK_THROWS_AS(overlap_matrices(three, exceptional_kappa(biorthogonal_system(2)), spectral_data(
                                                                                          three.hamiltonian.dense())),
                    std::invalid_argument);
}

TEST_CASE("criterion agrees with the Dieudonne test in both directions")
{
    std::mt19937_64 rng(404);
    int positives = 0;
    int negatives = 0;
    for (int trial = 0; trial < 40; ++trial)
    {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 7);
        const BiorthogonalSystem sys = biorthogonal_system(n);
        const KappaVector kappa = random_kappa(n, rng);
        const MetricOperator theta = metric_from_kappa(sys, kappa);
        const bool make_observable = trial % 2 == 0;
        const Matrix lambda = make_observable ? observable_from_hermitian(random_matrix(n, rng, true), theta)
                                              : random_matrix(n, rng, false);

        const bool dieudonne = dieudonne_residual(lambda, theta) <= 1e-10;
        const OverlapPair p = overlap_matrices(sys, kappa, spectral_data(lambda));
        CHECK(criterion_product_hermitian(p) == dieudonne);
        CHECK(dieudonne == make_observable);
        (make_observable ? positives : negatives) += 1;

        // Scaling Lambda scales M and keeps the verdict.
        for (double c : {1e-3, 7.0, 250.0})
        {
            const OverlapPair scaled = overlap_matrices(sys, kappa, spectral_data(c * lambda));
            CHECK(criterion_product_hermitian(scaled) == dieudonne);
            CHECK(max_abs(ComplexMatrix(scaled.m - c * p.m)) <= 1e-9 * c * std::max(1.0, max_abs(p.m)));
        }
    }
    CHECK(positives == 20);
    CHECK(negatives == 20);
}

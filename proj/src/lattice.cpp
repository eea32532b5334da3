#include "qtlattice/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace qtl
{
namespace
{
constexpr double spectrum_cross_check = 1e-10;
constexpr double eigen_residual_tolerance = 1e-12;
constexpr double biorthogonality_tolerance = 1e-12;
} // namespace

Matrix LatticeHamiltonian::dense() const
{
    const auto dim = static_cast<Eigen::Index>(n);
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k + 1 < dim; ++k)
    {
        m(k, k + 1) = superdiagonal[static_cast<std::size_t>(k)];
        m(k + 1, k) = subdiagonal[static_cast<std::size_t>(k)];
    }
    return m;
}

Matrix DiagonalMetric::dense() const
{
    return diagonal().asDiagonal();
}

Vector DiagonalMetric::diagonal() const
{
    return Eigen::Map<const Vector>(entries.data(), static_cast<Eigen::Index>(entries.size()));
}

LatticeHamiltonian build_hamiltonian(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("lattice dimension must be >= 1");
    LatticeHamiltonian h;
    h.n = n;
    h.superdiagonal.resize(n - 1);
    h.subdiagonal.resize(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        const double kk = static_cast<double>(k);
        h.superdiagonal[k] = (kk + 1.0) / (2.0 * kk + 1.0);
        h.subdiagonal[k] = (kk + 1.0) / (2.0 * kk + 3.0);
    }
    return h;
}

DiagonalMetric build_metric_Q(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("lattice dimension must be >= 1");
    DiagonalMetric q;
    q.entries.resize(n);
    for (std::size_t k = 0; k < n; ++k)
        q.entries[k] = static_cast<double>(k) + 0.5;
    return q;
}

RootSet spectrum(const LatticeHamiltonian& h)
{
    const std::size_t n = h.dimension();
    if (n == 0)
        throw std::invalid_argument("empty Hamiltonian");

    Vector diag = Vector::Zero(static_cast<Eigen::Index>(n));
    Vector couplings(static_cast<Eigen::Index>(n - 1));
    for (std::size_t k = 0; k + 1 < n; ++k)
        couplings[static_cast<Eigen::Index>(k)] = std::sqrt(h.superdiagonal[k] * h.subdiagonal[k]);

    Eigen::SelfAdjointEigenSolver<Matrix> solver;
    solver.computeFromTridiagonal(diag, couplings, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw DomainError("tridiagonal eigensolve did not converge");

    RootSet out{n, std::vector<double>(solver.eigenvalues().data(),
                                       solver.eigenvalues().data() + n)};

    const RootSet roots = roots_P(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (std::abs(roots[i] - out.roots[i]) > spectrum_cross_check)
            throw DomainError("spectrum disagrees with Legendre roots at N=" + std::to_string(n));
    }
    return out;
}

Vector ket(std::size_t n, double energy)
{
    Vector v(static_cast<Eigen::Index>(n));
    if (n == 0)
        return v;
    const PolynomialValueTable t = eval_P_table(n - 1, energy);
    for (std::size_t k = 0; k < n; ++k)
        v[static_cast<Eigen::Index>(k)] = t.values[k];
    return v;
}

BiorthogonalSystem biorthogonal_system(std::size_t n)
{
    BiorthogonalSystem sys;
    sys.hamiltonian = build_hamiltonian(n);
    sys.metric = build_metric_Q(n);
    // spectrum() certifies the eigensolve against the polynomial roots; the
    // Newton-polished roots are the sharper of the two near +-1, so keep those.
    spectrum(sys.hamiltonian);
    sys.eigenvalues = roots_P(n);

    const auto dim = static_cast<Eigen::Index>(n);
    const Vector q = sys.metric.diagonal();
    sys.kets.resize(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
        sys.kets.col(j) = ket(n, sys.eigenvalues[static_cast<std::size_t>(j)]);
    sys.ketkets = q.asDiagonal() * sys.kets;
    sys.q_norms = (sys.kets.array() * sys.ketkets.array()).colwise().sum().transpose();

    const Matrix h = sys.hamiltonian.dense();
    for (Eigen::Index j = 0; j < dim; ++j)
    {
        const double e = sys.eigenvalues[static_cast<std::size_t>(j)];
        const double residual = (h * sys.kets.col(j) - e * sys.kets.col(j)).cwiseAbs().maxCoeff();
        if (residual > eigen_residual_tolerance)
            throw DomainError("eigenvector residual " + std::to_string(residual) + " at N=" + std::to_string(n));
    }

    const Matrix gram = sys.kets.transpose() * sys.ketkets;
    const double scale = sys.q_norms.maxCoeff();
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            if (i != j && std::abs(gram(i, j)) > biorthogonality_tolerance * scale)
                throw DomainError("kets are not Q-biorthogonal at N=" + std::to_string(n));
    return sys;
}

double intertwining_residual(const LatticeHamiltonian& h, const DiagonalMetric& q)
{
    require_dimension(h.dimension(), static_cast<Eigen::Index>(q.dimension()), "Hamiltonian vs metric");
    const Matrix hd = h.dense();
    const Matrix qd = q.dense();
    return max_abs(hd.transpose() * qd - qd * hd) / std::max(1.0, max_abs(hd) * max_abs(qd));
}

double resolution_of_identity_residual(const BiorthogonalSystem& sys)
{
    const auto dim = static_cast<Eigen::Index>(sys.dimension());
    const Matrix sum = sys.kets * sys.q_norms.cwiseInverse().asDiagonal() * sys.ketkets.transpose();
    return max_abs(sum - Matrix::Identity(dim, dim));
}

} // namespace qtl

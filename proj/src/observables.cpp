#include "qtlattice/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

namespace qtl
{
namespace
{
constexpr double degeneracy_gap = 1e-10;
constexpr double reconstruction_tolerance = 1e-10;
constexpr double symmetry_tolerance = 1e-12;
constexpr double vanishing_pairing = 1e-14;

// Unit length, largest-magnitude component real and positive.
void normalize_columns(ComplexMatrix& vectors)
{
    for (Eigen::Index j = 0; j < vectors.cols(); ++j)
    {
        auto col = vectors.col(j);
        Eigen::Index arg = 0;
        col.cwiseAbs().maxCoeff(&arg);
        const complex pivot = col[arg];
        col *= std::abs(pivot) / pivot;
        col.normalize();
        col[arg] = complex(col[arg].real(), 0.0);
    }
}

bool complex_less(const complex& a, const complex& b)
{
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

} // namespace

double dieudonne_residual(const Matrix& lambda, const MetricOperator& theta)
{
    require_square(lambda, "Lambda");
    require_dimension(theta.dimension(), lambda.rows(), "Lambda vs Theta");
    const double defect = max_abs(lambda.transpose() * theta.matrix - theta.matrix * lambda);
    return defect / std::max(1.0, max_abs(theta.matrix) * max_abs(lambda));
}

Matrix observable_from_hermitian(const Matrix& k, const MetricOperator& theta)
{
    require_square(k, "K");
    require_dimension(theta.dimension(), k.rows(), "K vs Theta");
    if (max_abs(k - k.transpose()) > symmetry_tolerance * std::max(max_abs(k), 1e-300))
        throw std::invalid_argument("K must be symmetric");
    if (classify_definiteness(theta.matrix) == Definiteness::singular)
        throw DomainError("metric is singular; Theta^{-1} K is undefined");
    return theta.matrix.partialPivLu().solve(k);
}

ObservableSpectralData spectral_data(const Matrix& lambda)
{
    require_square(lambda, "Lambda");
    const Eigen::Index n = lambda.rows();

    Eigen::EigenSolver<Matrix> right(lambda, true);
    if (right.info() != Eigen::Success)
        throw DomainError("eigensolve of Lambda did not converge");
    const ComplexMatrix adjoint = lambda.transpose().cast<complex>();
    Eigen::ComplexEigenSolver<ComplexMatrix> left(adjoint, true);
    if (left.info() != Eigen::Success)
        throw DomainError("eigensolve of Lambda^H did not converge");

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const ComplexVector raw = right.eigenvalues();
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) { return complex_less(raw[a], raw[b]); });

    ObservableSpectralData data;
    data.matrix = lambda;
    data.eigenvalues.resize(n);
    data.right_vectors.resize(n, n);
    data.left_vectors.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        data.eigenvalues[j] = raw[order[static_cast<std::size_t>(j)]];
        data.right_vectors.col(j) = right.eigenvectors().col(order[static_cast<std::size_t>(j)]);
    }

    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(data.eigenvalues[i] - data.eigenvalues[j]) <= degeneracy_gap)
                throw DomainError("observable spectrum is degenerate or nearly so");

    // Pair each left eigenvector with the right one whose eigenvalue it conjugates.
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (Eigen::Index j = 0; j < n; ++j)
    {
        Eigen::Index best = -1;
        double best_distance = 0.0;
        for (Eigen::Index k = 0; k < n; ++k)
        {
            const double d = std::abs(std::conj(left.eigenvalues()[k]) - data.eigenvalues[j]);
            if (best < 0 || d < best_distance)
            {
                best = k;
                best_distance = d;
            }
        }
        if (used[static_cast<std::size_t>(best)])
            throw DomainError("could not pair left and right eigenvectors");
        used[static_cast<std::size_t>(best)] = true;
        data.left_vectors.col(j) = left.eigenvectors().col(best);
    }

    normalize_columns(data.right_vectors);
    normalize_columns(data.left_vectors);
    data.pairing_norms.resize(n);
    for (Eigen::Index j = 0; j < n; ++j)
        data.pairing_norms[j] = data.left_vectors.col(j).dot(data.right_vectors.col(j));

    if (reconstruction_residual(data) > reconstruction_tolerance * std::max(1.0, max_abs(lambda)))
        throw DomainError("spectral reconstruction of Lambda failed");
    return data;
}

ObservableSpectralData identity_spectral_data(std::size_t n)
{
    const auto dim = static_cast<Eigen::Index>(n);
    ObservableSpectralData data;
    data.matrix = Matrix::Identity(dim, dim);
    data.eigenvalues = ComplexVector::Ones(dim);
    data.right_vectors = ComplexMatrix::Identity(dim, dim);
    data.left_vectors = ComplexMatrix::Identity(dim, dim);
    data.pairing_norms = ComplexVector::Ones(dim);
    return data;
}

double reconstruction_residual(const ObservableSpectralData& data)
{
    const ComplexVector weights = data.eigenvalues.cwiseQuotient(data.pairing_norms);
    const ComplexMatrix rebuilt = data.right_vectors * weights.asDiagonal() * data.left_vectors.adjoint();
    return max_abs(ComplexMatrix(rebuilt - data.matrix.cast<complex>()));
}

OverlapPair overlap_matrices(const BiorthogonalSystem& sys, const KappaVector& kappa,
                             const ObservableSpectralData& data)
{
    require_dimension(sys.dimension(), kappa.values.size(), "kappa vs system");
    require_dimension(sys.dimension(), data.matrix.rows(), "observable vs system");
    if ((data.pairing_norms.cwiseAbs().array() < vanishing_pairing).any())
        throw DomainError("vanishing left/right pairing norm");

    const Vector inv_sqrt_norms = sys.q_norms.cwiseSqrt().cwiseInverse();
    const ComplexMatrix kets = (sys.kets * inv_sqrt_norms.asDiagonal()).cast<complex>();
    const ComplexMatrix ketkets = (sys.ketkets * inv_sqrt_norms.asDiagonal()).cast<complex>();

    OverlapPair pair;
    // Rescaling psi_j to unit Q-norm leaves Theta unchanged only if kappa_j
    // absorbs the factor n_j.
    const ComplexVector inv_kappa = kappa.values.cwiseProduct(sys.q_norms).cwiseInverse().cast<complex>();
    pair.u = inv_kappa.asDiagonal() * (kets.transpose() * data.left_vectors);
    const ComplexVector weights = data.eigenvalues.cwiseQuotient(data.pairing_norms);
    pair.v = weights.asDiagonal() * (data.right_vectors.adjoint() * ketkets);
    pair.m = pair.u * pair.v;
    pair.hermiticity_residual = max_abs(ComplexMatrix(pair.m - pair.m.adjoint()));
    return pair;
}

bool criterion_product_hermitian(const OverlapPair& pair, double tol)
{
    return pair.hermiticity_residual <= tol * std::max(1.0, max_abs(pair.m));
}

} // namespace qtl

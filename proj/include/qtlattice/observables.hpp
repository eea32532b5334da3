#ifndef QTLATTICE_OBSERVABLES_HPP
#define QTLATTICE_OBSERVABLES_HPP

#include <cstddef>

#include "qtlattice/common.hpp"
#include "qtlattice/lattice.hpp"
#include "qtlattice/metrics.hpp"

namespace qtl
{
/// Left/right eigensystem of a candidate observable.
///
/// Right vectors satisfy Lambda r_j = lambda_j r_j; left vectors are
/// eigenvectors of Lambda^H (= Lambda^T for real input) belonging to
/// conj(lambda_j), so l_j^H Lambda = lambda_j l_j^H. Both are unit length
/// with their largest-magnitude component real and positive, and
/// pairing_norms[j] = l_j^H r_j.
struct ObservableSpectralData
{
    Matrix matrix;
    ComplexVector eigenvalues;
    ComplexMatrix right_vectors;
    ComplexMatrix left_vectors;
    ComplexVector pairing_norms;

    std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
};

struct OverlapPair
{
    ComplexMatrix u;
    ComplexMatrix v;
    ComplexMatrix m;
    double hermiticity_residual = 0.0;
};

/// ||Lambda^T Theta - Theta Lambda||_max / max(1, ||Theta||_max ||Lambda||_max).
double dieudonne_residual(const Matrix& lambda, const MetricOperator& theta);

/// Lambda = Theta^{-1} K, which satisfies the Dieudonne relation identically.
/// Throws DomainError for singular Theta.
Matrix observable_from_hermitian(const Matrix& k, const MetricOperator& theta);

/// Throws DomainError when two eigenvalues lie within 1e-10 of each other or
/// the spectral reconstruction misses by more than 1e-10 (relative).
ObservableSpectralData spectral_data(const Matrix& lambda);

/// Spectral data of the N x N identity (degenerate, so built directly).
ObservableSpectralData identity_spectral_data(std::size_t n);

/// max |Lambda - sum_j r_j lambda_j / p_j l_j^H|.
double reconstruction_residual(const ObservableSpectralData& data);

/// U_jk = (1/kappa_j) <psi_j | l_k>,  V_jk = (lambda_j / p_j) <r_j | Q psi_k>,
/// M = U V, using kets rescaled to unit Q-norm. The same Theta in that
/// basis carries kappa_j n_j, which is what enters U.
OverlapPair overlap_matrices(const BiorthogonalSystem& sys, const KappaVector& kappa,
                             const ObservableSpectralData& data);

bool criterion_product_hermitian(const OverlapPair& pair, double tol = 1e-10);

} // namespace qtl

#endif // QTLATTICE_OBSERVABLES_HPP

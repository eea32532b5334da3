#ifndef QTLATTICE_LATTICE_HPP
#define QTLATTICE_LATTICE_HPP

#include <cstddef>
#include <vector>

#include "qtlattice/common.hpp"
#include "qtlattice/legendre.hpp"

namespace qtl
{
/// N x N truncation of the Legendre-recurrence Hamiltonian. Zero diagonal,
/// superdiagonal (n+1)/(2n+1), subdiagonal (n+1)/(2n+3) (row n+1, column n).
struct LatticeHamiltonian
{
    std::vector<double> superdiagonal;
    std::vector<double> subdiagonal;
    std::size_t n = 0;

    std::size_t dimension() const { return n; }
    Matrix dense() const;
};

/// Diagonal metric Q of the auxiliary space, entries n + 1/2.
struct DiagonalMetric
{
    std::vector<double> entries;

    std::size_t dimension() const { return entries.size(); }
    Matrix dense() const;
    Vector diagonal() const;
};

/// Eigenvalues, kets, ketkets (Q times ket) and Q-norms of H^(N).
/// Columns of kets/ketkets are indexed by eigenvalue.
struct BiorthogonalSystem
{
    LatticeHamiltonian hamiltonian;
    DiagonalMetric metric;
    RootSet eigenvalues;
    Matrix kets;
    Matrix ketkets;
    Vector q_norms;

    std::size_t dimension() const { return hamiltonian.dimension(); }
};

LatticeHamiltonian build_hamiltonian(std::size_t n);

// Positive diagonal solution of H^T Q = Q H normalized by Q_00 = 1/2.
DiagonalMetric build_metric_Q(std::size_t n);

/// Eigenvalues of H via the symmetric tridiagonal similarity transform
/// Q^{1/2} H Q^{-1/2}. Cross-checked against roots_P(N); a disagreement
/// beyond 1e-10 throws DomainError.
RootSet spectrum(const LatticeHamiltonian& h);

/// (P_0(E), ..., P_{N-1}(E)).
Vector ket(std::size_t n, double energy);

/// Assembles and validates the eigensystem: residuals ||H psi - E psi||_inf
/// <= 1e-12 and Q-biorthogonality within 1e-12 of the largest Q-norm.
BiorthogonalSystem biorthogonal_system(std::size_t n);

/// max |(H^T Q - Q H)_{ij}| / max(1, ||H||_max ||Q||_max). The products are
/// (k+1)/2 up to one rounding each, so the unscaled defect is one ulp of N/2.
double intertwining_residual(const LatticeHamiltonian& h, const DiagonalMetric& q);

/// max |(sum_j psi_j psi_j^T Q / n_j - I)_{ij}|.
double resolution_of_identity_residual(const BiorthogonalSystem& sys);

} // namespace qtl

#endif // QTLATTICE_LATTICE_HPP

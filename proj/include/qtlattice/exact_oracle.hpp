#ifndef QTLATTICE_EXACT_ORACLE_HPP
#define QTLATTICE_EXACT_ORACLE_HPP

// Exact rational mirror of the lattice objects. Nothing in here rounds; the
// high-precision route of exact_exceptional_identity is the one exception and
// says so in its result.

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qtl::exact
{
using Rational = boost::multiprecision::cpp_rational;

struct RationalMatrix
{
    std::size_t n = 0;
    std::vector<Rational> entries;

    explicit RationalMatrix(std::size_t dim = 0) : n(dim), entries(dim * dim) {}

    Rational& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }

    RationalMatrix transpose() const;
    bool is_zero() const;
    /// Entry of largest magnitude (first one on ties); zero for an empty matrix.
    Rational max_magnitude_entry() const;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);

/// Which closed form to use for the diagonal metric.
enum class DiagonalForm
{
    recursion,        ///< n + 1/2, from H^T Q = Q H with Q_00 = 1/2
    printed_factorial ///< (n + 1/2) / n!, the factorial variant
};

RationalMatrix hamiltonian(std::size_t n);
RationalMatrix metric_Q(std::size_t n, DiagonalForm form = DiagonalForm::recursion);
/// Symmetric tridiagonal, zero diagonal, the given bond couplings.
RationalMatrix tridiagonal(const std::vector<Rational>& couplings);

struct ExactCheck
{
    bool pass = false;
    Rational witness; ///< max-magnitude residual entry; exactly 0 on success
};

/// H^T Q - Q H == 0 exactly. Requires N <= 12.
ExactCheck exact_intertwining_check(std::size_t n, DiagonalForm form = DiagonalForm::recursion);

/// Couplings t of the symmetric tridiagonal Theta = Q + T(t) solving
/// H^T Theta = Theta H, with t_0 = 1. Requires 2 <= N <= 12. Throws
/// std::logic_error if the linear system is inconsistent or underdetermined.
std::vector<Rational> exact_tridiagonal_solve(std::size_t n);

enum class IdentityMethod
{
    symbolic,      ///< polynomial arithmetic modulo P_N over the rationals
    high_precision ///< 200-digit roots, residual threshold 1e-150
};

struct IdentityCheck
{
    bool pass = false;
    IdentityMethod method = IdentityMethod::symbolic;
    std::string witness; ///< largest residual entry, exact or in scientific notation
};

/// sum_j psi_j psi_j^T Q / n_j == I over the (irrational) roots of P_N,
/// equivalently sum_j (Q psi_j)(Q psi_j)^T / n_j == Q. Requires N <= 6.
IdentityCheck exact_exceptional_identity(std::size_t n, IdentityMethod method = IdentityMethod::symbolic);

/// Coefficients of P_n, lowest degree first.
std::vector<Rational> legendre_coefficients(std::size_t n);

/// Power sums sum_j E_j^k, k = 0..count-1, over the roots of P_n.
std::vector<Rational> legendre_root_power_sums(std::size_t n, std::size_t count);

struct Certificate
{
    std::string check;
    std::size_t n = 0;
    bool pass = false;
    std::string witness;
    bool expected_pass = true;
};

/// Every oracle check over its full range, including the factorial-diagonal
/// intertwining check at N = 3, which is expected to fail.
std::vector<Certificate> run_all_checks();

std::string to_string(const Rational& r);

} // namespace qtl::exact

#endif // QTLATTICE_EXACT_ORACLE_HPP

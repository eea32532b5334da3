#ifndef QTLATTICE_LEGENDRE_HPP
#define QTLATTICE_LEGENDRE_HPP

#include <cstddef>
#include <vector>

namespace qtl
{
/// P_0..P_{degree_max} evaluated at one argument.
struct PolynomialValueTable
{
    std::size_t degree_max = 0;
    double argument = 0.0;
    std::vector<double> values;
};

/// The roots of P_degree, strictly ascending and antisymmetric about zero.
struct RootSet
{
    std::size_t degree = 0;
    std::vector<double> roots;

    std::size_t size() const { return roots.size(); }
    double operator[](std::size_t i) const { return roots[i]; }
};

// Upward three-term recurrence (n+1)P_{n+1} = (2n+1)xP_n - nP_{n-1}.
double eval_P(std::size_t n, double x);

PolynomialValueTable eval_P_table(std::size_t degree_max, double x);

/// dP_n/dx. Uses (x^2-1)P_n' = n(xP_n - P_{n-1}) away from the endpoints and
/// the analytic limit n(n+1)/2 * (+-1)^{n+1} at x = +-1.
double eval_P_derivative(std::size_t n, double x);

/// Eigenvalues of the symmetric Jacobi matrix of the Legendre recurrence,
/// couplings (n+1)/sqrt((2n+1)(2n+3)). Ascending.
std::vector<double> jacobi_eigenvalues(std::size_t degree);

/// All roots of P_N. Built up from degree 1, each degree bracketed by the
/// interlacing roots of the previous one and refined by safeguarded Newton.
/// The result is cross-validated against jacobi_eigenvalues.
/// Throws DomainError if Newton leaves its bracket or the cross-check fails.
RootSet roots_P(std::size_t degree);

} // namespace qtl

#endif // QTLATTICE_LEGENDRE_HPP

#include "qtlattice/legendre.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

#include "qtlattice/common.hpp"

namespace qtl
{
namespace
{
constexpr double cross_check_tolerance = 1e-12;

// P_n and P_{n-1} in one sweep.
struct PolyPair
{
    double p = 1.0;
    double p_prev = 0.0;
};

PolyPair eval_pair(std::size_t n, double x)
{
    PolyPair r;
    if (n == 0)
        return r;
    double p_prev = 1.0;
    double p = x;
    for (std::size_t k = 1; k < n; ++k)
    {
        const double kk = static_cast<double>(k);
        const double next = ((2.0 * kk + 1.0) * x * p - kk * p_prev) / (kk + 1.0);
        p_prev = p;
        p = next;
    }
    r.p = p;
    r.p_prev = p_prev;
    return r;
}

double refine_root(std::size_t n, double lo, double hi)
{
    double f_lo = eval_P(n, lo);
    double x = 0.5 * (lo + hi);

    for (int iter = 0; iter < 200; ++iter)
    {
        const double f = eval_P(n, x);
        if (f == 0.0)
            return x;
        if ((f < 0.0) == (f_lo < 0.0))
        {
            lo = x;
            f_lo = f;
        }
        else
            hi = x;

        const double df = eval_P_derivative(n, x);
        double next = (df != 0.0) ? x - f / df : 0.5 * (lo + hi);
        if (!(next > lo && next < hi))
            next = 0.5 * (lo + hi);

        const double step = std::abs(next - x);
        x = next;
        // Run to ulp scale; the 1e-14 tolerance is the accuracy contract, not the stop.
        const double ulp = std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x));
        if (step <= 2.0 * ulp || hi - lo <= 4.0 * ulp)
            break;
    }
    if (!(x >= lo && x <= hi))
        throw DomainError("Legendre root refinement left its bracket at degree " + std::to_string(n));
    return x;
}

void symmetrize(std::vector<double>& roots)
{
    const std::size_t n = roots.size();
    for (std::size_t i = 0; i < n / 2; ++i)
    {
        const double r = 0.5 * (roots[n - 1 - i] - roots[i]);
        roots[i] = -r;
        roots[n - 1 - i] = r;
    }
    if (n % 2 == 1)
        roots[n / 2] = 0.0;
}

} // namespace

double eval_P(std::size_t n, double x)
{
    return eval_pair(n, x).p;
}

PolynomialValueTable eval_P_table(std::size_t degree_max, double x)
{
    PolynomialValueTable t;
    t.degree_max = degree_max;
    t.argument = x;
    t.values.resize(degree_max + 1);
    t.values[0] = 1.0;
    if (degree_max >= 1)
        t.values[1] = x;
    for (std::size_t k = 1; k < degree_max; ++k)
    {
        const double kk = static_cast<double>(k);
        t.values[k + 1] = ((2.0 * kk + 1.0) * x * t.values[k] - kk * t.values[k - 1]) / (kk + 1.0);
    }
    return t;
}

double eval_P_derivative(std::size_t n, double x)
{
    if (n == 0)
        return 0.0;
    const double nn = static_cast<double>(n);
    if (x == 1.0 || x == -1.0)
    {
        const double sign = (x > 0.0 || n % 2 == 1) ? 1.0 : -1.0;
        return 0.5 * nn * (nn + 1.0) * sign;
    }
    const PolyPair pp = eval_pair(n, x);
    return nn * (x * pp.p - pp.p_prev) / (x * x - 1.0);
}

std::vector<double> jacobi_eigenvalues(std::size_t degree)
{
    if (degree == 0)
        return {};
    Vector diag = Vector::Zero(static_cast<Eigen::Index>(degree));
    Vector sub(static_cast<Eigen::Index>(degree - 1));
    for (std::size_t k = 0; k + 1 < degree; ++k)
    {
        const double kk = static_cast<double>(k);
        sub[static_cast<Eigen::Index>(k)] = (kk + 1.0) / std::sqrt((2.0 * kk + 1.0) * (2.0 * kk + 3.0));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw DomainError("tridiagonal eigensolve did not converge");
    const Vector& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

RootSet roots_P(std::size_t degree)
{
    if (degree == 0)
        throw std::invalid_argument("roots_P requires degree >= 1");

    std::vector<double> roots{0.0};
    for (std::size_t n = 2; n <= degree; ++n)
    {
        std::vector<double> next(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            // Only the non-negative half is iterated; the rest follows by symmetry.
            if (2 * i + 1 < n)
                continue;
            if (2 * i + 1 == n)
            {
                next[i] = 0.0;
                continue;
            }
            const double lo = (i == 0) ? -1.0 : roots[i - 1];
            const double hi = (i == n - 1) ? 1.0 : roots[i];
            next[i] = refine_root(n, lo, hi);
        }
        for (std::size_t i = 0; 2 * i + 1 < n; ++i)
            next[i] = -next[n - 1 - i];
        symmetrize(next);
        roots = std::move(next);
    }

    const std::vector<double> check = jacobi_eigenvalues(degree);
    for (std::size_t i = 0; i < degree; ++i)
    {
        if (std::abs(check[i] - roots[i]) > cross_check_tolerance)
            throw DomainError("Legendre roots disagree with Jacobi eigenvalues at degree " +
                              std::to_string(degree));
    }
    return RootSet{degree, std::move(roots)};
}

} // namespace qtl

#include "qtlattice/horizons.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "parallel.hpp"

namespace qtl
{
namespace
{
constexpr double bisection_width = 1e-12;
constexpr double method_agreement = 1e-10;
constexpr double imag_threshold = 1e-8;
constexpr double symmetry_tolerance = 1e-12;
} // namespace

double horizon_gamma_spectral(std::size_t n)
{
    const TridiagonalMetricFamily family = tridiagonal_family(n);
    const auto dim = static_cast<Eigen::Index>(n);
    Vector diag = Vector::Zero(dim);
    Vector couplings(dim - 1);
    for (Eigen::Index k = 0; k + 1 < dim; ++k)
    {
        const auto kk = static_cast<std::size_t>(k);
        couplings[k] = family.coupling_base[kk] /
                       std::sqrt(family.diagonal.entries[kk] * family.diagonal.entries[kk + 1]);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver;
    solver.computeFromTridiagonal(diag, couplings, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw DomainError("tridiagonal eigensolve did not converge");
    // Zero diagonal makes the spectrum symmetric, so rho is the largest eigenvalue.
    const double rho = solver.eigenvalues().cwiseAbs().maxCoeff();
    return 1.0 / rho;
}

double horizon_gamma_bisection(std::size_t n, int* iterations)
{
    const TridiagonalMetricFamily family = tridiagonal_family(n);
    const auto positive = [&](double alpha) {
        return classify_definiteness(family.diagonal.dense() + alpha * family.coupling_matrix()) ==
               Definiteness::positive_definite;
    };

    double lo = 0.0;
    double hi = 1.0;
    while (positive(hi))
    {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12)
            throw DomainError("tridiagonal metric stays positive for all tested alpha");
    }

    int count = 0;
    while (hi - lo > bisection_width)
    {
        const double mid = 0.5 * (lo + hi);
        if (positive(mid))
            lo = mid;
        else
            hi = mid;
        ++count;
    }
    if (iterations != nullptr)
        *iterations = count;
    return 0.5 * (lo + hi);
}

HorizonReport horizon_gamma(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("horizon requires N >= 2");
    HorizonReport r;
    r.dimension = n;
    r.gamma = horizon_gamma_spectral(n);
    r.gamma_check = horizon_gamma_bisection(n, &r.bisection_iterations);
    r.cross_check_residual = std::abs(r.gamma - r.gamma_check);
    if (r.cross_check_residual > method_agreement)
        throw DomainError("horizon methods disagree at N=" + std::to_string(n) + ": " +
                          std::to_string(r.cross_check_residual));
    return r;
}

HorizonConvergence horizon_convergence_scan(const std::vector<std::size_t>& n_values, Execution exec)
{
    if (!std::is_sorted(n_values.begin(), n_values.end()))
        throw std::invalid_argument("dimensions must be ascending");
    HorizonConvergence out;
    out.points.resize(n_values.size());
    detail::for_each_index(n_values.size(), exec, [&](std::size_t i) {
        out.points[i] = HorizonPoint{n_values[i], horizon_gamma(n_values[i]).gamma};
    });
    for (std::size_t i = 1; i < out.points.size(); ++i)
        out.differences.push_back(std::abs(out.points[i].gamma - out.points[i - 1].gamma));
    return out;
}

double max_imag_part(const Matrix& theta, const Matrix& k)
{
    const Matrix lambda = theta.partialPivLu().solve(k);
    Eigen::EigenSolver<Matrix> solver(lambda, false);
    if (solver.info() != Eigen::Success)
        throw DomainError("eigensolve of Theta^{-1} K did not converge");
    return solver.eigenvalues().imag().cwiseAbs().maxCoeff();
}

RealityScan hidden_horizon_scan(std::size_t n, const Matrix& k, const std::vector<double>& alpha_grid,
                                Execution exec, std::string label)
{
    require_square(k, "K");
    require_dimension(n, k.rows(), "K vs N");
    const double k_norm = max_abs(k);
    if (max_abs(k - k.transpose()) > symmetry_tolerance * std::max(k_norm, 1e-300))
        throw std::invalid_argument("K must be symmetric");
    if (!std::is_sorted(alpha_grid.begin(), alpha_grid.end()))
        throw std::invalid_argument("alpha grid must be ascending");

    const TridiagonalMetricFamily family = tridiagonal_family(n);

    RealityScan scan;
    scan.dimension = n;
    scan.observable_label = std::move(label);
    scan.alpha_grid = alpha_grid;
    scan.threshold = imag_threshold * std::max(1.0, k_norm);

    const std::size_t count = alpha_grid.size();
    scan.max_imag.assign(count, std::numeric_limits<double>::quiet_NaN());
    scan.definiteness.assign(count, Definiteness::positive_definite);
    std::vector<char> skipped(count, 0);

    detail::for_each_index(count, exec, [&](std::size_t i) {
        const MetricOperator theta = family.realize(alpha_grid[i]);
        scan.definiteness[i] = theta.definiteness;
        if (theta.definiteness == Definiteness::singular)
        {
            skipped[i] = 1;
            return;
        }
        scan.max_imag[i] = max_imag_part(theta.matrix, k);
    });
    scan.skipped.assign(skipped.begin(), skipped.end());

    for (std::size_t i = 0; i < count; ++i)
    {
        if (skipped[i] || !(scan.max_imag[i] > scan.threshold))
            continue;
        const double a = alpha_grid[i];
        if (!scan.first_crossing || std::abs(a) < std::abs(*scan.first_crossing))
            scan.first_crossing = a;
    }
    return scan;
}

std::vector<double> uniform_grid(double lo, double hi, std::size_t steps)
{
    if (steps == 0)
        return {};
    if (steps == 1)
        return {lo};
    std::vector<double> grid(steps);
    const double h = (hi - lo) / static_cast<double>(steps - 1);
    for (std::size_t i = 0; i < steps; ++i)
        grid[i] = lo + h * static_cast<double>(i);
    grid.back() = hi;
    return grid;
}

} // namespace qtl

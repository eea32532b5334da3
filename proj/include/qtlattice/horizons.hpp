#ifndef QTLATTICE_HORIZONS_HPP
#define QTLATTICE_HORIZONS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qtlattice/common.hpp"
#include "qtlattice/metrics.hpp"

namespace qtl
{
/// Positivity boundary gamma^(N) of the tridiagonal metric family:
/// Theta(alpha) > 0 exactly for |alpha| < gamma.
struct HorizonReport
{
    std::size_t dimension = 0;
    double gamma = 0.0;
    std::string method_primary = "generalized-eigenvalue";
    std::string method_check = "bisection";
    double gamma_check = 0.0;
    double cross_check_residual = 0.0;
    int bisection_iterations = 0;
};

struct HorizonPoint
{
    std::size_t dimension = 0;
    double gamma = 0.0;
};

struct HorizonConvergence
{
    std::vector<HorizonPoint> points;
    /// |gamma^(N_{k+1}) - gamma^(N_k)|, one shorter than points.
    std::vector<double> differences;
};

/// Spectral reality of Lambda(alpha) = Theta(alpha)^{-1} K along an alpha grid.
struct RealityScan
{
    std::size_t dimension = 0;
    std::string observable_label;
    std::vector<double> alpha_grid;
    std::vector<double> max_imag;           ///< NaN where the point was skipped
    std::vector<Definiteness> definiteness; ///< of Theta(alpha)
    std::vector<bool> skipped;              ///< Theta(alpha) numerically singular
    double threshold = 0.0;
    /// Crossing of smallest |alpha| where max_imag exceeds threshold.
    std::optional<double> first_crossing;
};

/// Spectral radius route: gamma = 1 / rho(Q^{-1/2} T Q^{-1/2}).
double horizon_gamma_spectral(std::size_t n);

/// Bisection on the positive-definiteness classification of Theta(alpha),
/// bracket grown by doubling from 1, stopped at width 1e-12.
double horizon_gamma_bisection(std::size_t n, int* iterations = nullptr);

/// Both routes; throws DomainError if they disagree by more than 1e-10.
HorizonReport horizon_gamma(std::size_t n);

HorizonConvergence horizon_convergence_scan(const std::vector<std::size_t>& n_values,
                                            Execution exec = Execution::parallel);

/// Throws std::invalid_argument if K is asymmetric beyond 1e-12 relative or
/// the grid is not ascending. Grid points where Theta(alpha) is singular are
/// skipped and flagged.
RealityScan hidden_horizon_scan(std::size_t n, const Matrix& k, const std::vector<double>& alpha_grid,
                                Execution exec = Execution::parallel, std::string label = "K");

/// Largest |Im lambda| of Theta^{-1} K (general, non-symmetric eigensolve).
double max_imag_part(const Matrix& theta, const Matrix& k);

std::vector<double> uniform_grid(double lo, double hi, std::size_t steps);

} // namespace qtl

#endif // QTLATTICE_HORIZONS_HPP

#ifndef QTLATTICE_EVOLUTION_HPP
#define QTLATTICE_EVOLUTION_HPP

#include <vector>

#include "qtlattice/common.hpp"
#include "qtlattice/lattice.hpp"
#include "qtlattice/metrics.hpp"

namespace qtl
{
struct EvolutionState
{
    ComplexVector amplitudes;
    double time = 0.0;
};

struct NormSample
{
    double time = 0.0;
    double theta_norm = 0.0;
    double dirac_norm = 0.0;
};

struct NormDrift
{
    double max_theta_drift = 0.0;
    double max_dirac_drift = 0.0;
};

/// exp(-i H t) = S diag(exp(-i E t)) S^{-1}, S = kets and
/// S^{-1} = diag(1/n_j) S^T Q. Exactly the identity at t = 0.
ComplexMatrix propagator(const BiorthogonalSystem& sys, double t);
ComplexMatrix propagator(const LatticeHamiltonian& h, double t);

/// State at absolute time t, propagated from psi0.time.
EvolutionState evolve(const BiorthogonalSystem& sys, const EvolutionState& psi0, double t);

/// psi^H Theta psi. Throws DomainError unless Theta is positive-definite.
double theta_norm(const MetricOperator& theta, const EvolutionState& psi);

/// Theta- and Dirac-norms of psi(t) at every grid time. Grid points are
/// independent; the parallel path matches the serial one bitwise.
std::vector<NormSample> norm_trajectory(const LatticeHamiltonian& h, const MetricOperator& theta,
                                        const EvolutionState& psi0, const std::vector<double>& t_grid,
                                        Execution exec = Execution::parallel);

/// Largest relative deviation of each norm from its initial value over the
/// grid. Throws DomainError if Theta is not positive-definite or violates the
/// Dieudonne relation with H by more than 1e-10 (relative).
NormDrift norm_drift(const LatticeHamiltonian& h, const MetricOperator& theta, const EvolutionState& psi0,
                     const std::vector<double>& t_grid, Execution exec = Execution::parallel);

} // namespace qtl

#endif // QTLATTICE_EVOLUTION_HPP

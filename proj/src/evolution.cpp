#include "qtlattice/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace qtl
{
namespace
{
constexpr double compatibility_tolerance = 1e-10;

double sandwich(const Matrix& theta, const ComplexVector& psi)
{
    return (psi.adjoint() * theta.cast<complex>() * psi).value().real();
}

void require_state(const EvolutionState& psi, std::size_t n)
{
    require_dimension(n, psi.amplitudes.size(), "state vs lattice");
    if (psi.amplitudes.size() == 0 || psi.amplitudes.cwiseAbs().maxCoeff() == 0.0)
        throw std::invalid_argument("state amplitudes must not all vanish");
}

} // namespace

ComplexMatrix propagator(const BiorthogonalSystem& sys, double t)
{
    const auto n = static_cast<Eigen::Index>(sys.dimension());
    if (t == 0.0)
        return ComplexMatrix::Identity(n, n);

    ComplexVector phases(n);
    for (Eigen::Index j = 0; j < n; ++j)
        phases[j] = std::exp(complex(0.0, -sys.eigenvalues[static_cast<std::size_t>(j)] * t));

    const Matrix inverse = sys.q_norms.cwiseInverse().asDiagonal() * sys.ketkets.transpose();
    return sys.kets.cast<complex>() * phases.asDiagonal() * inverse.cast<complex>();
}

ComplexMatrix propagator(const LatticeHamiltonian& h, double t)
{
    return propagator(biorthogonal_system(h.dimension()), t);
}

EvolutionState evolve(const BiorthogonalSystem& sys, const EvolutionState& psi0, double t)
{
    require_state(psi0, sys.dimension());
    return EvolutionState{propagator(sys, t - psi0.time) * psi0.amplitudes, t};
}

double theta_norm(const MetricOperator& theta, const EvolutionState& psi)
{
    require_state(psi, theta.dimension());
    if (classify_definiteness(theta.matrix) != Definiteness::positive_definite)
        throw DomainError("Theta-norm requires a positive-definite metric");
    return sandwich(theta.matrix, psi.amplitudes);
}

std::vector<NormSample> norm_trajectory(const LatticeHamiltonian& h, const MetricOperator& theta,
                                        const EvolutionState& psi0, const std::vector<double>& t_grid,
                                        Execution exec)
{
    require_dimension(h.dimension(), theta.matrix.rows(), "Hamiltonian vs Theta");
    require_state(psi0, h.dimension());
    if (classify_definiteness(theta.matrix) != Definiteness::positive_definite)
        throw DomainError("Theta-norm requires a positive-definite metric");

    const BiorthogonalSystem sys = biorthogonal_system(h.dimension());
    std::vector<NormSample> samples(t_grid.size());
    detail::for_each_index(t_grid.size(), exec, [&](std::size_t i) {
        const ComplexVector psi = propagator(sys, t_grid[i] - psi0.time) * psi0.amplitudes;
        samples[i] = NormSample{t_grid[i], sandwich(theta.matrix, psi), psi.squaredNorm()};
    });
    return samples;
}

NormDrift norm_drift(const LatticeHamiltonian& h, const MetricOperator& theta, const EvolutionState& psi0,
                     const std::vector<double>& t_grid, Execution exec)
{
    require_dimension(h.dimension(), theta.matrix.rows(), "Hamiltonian vs Theta");
    const double scale = std::max(1.0, max_abs(theta.matrix));
    if (dieudonne_defect(h, theta.matrix) > compatibility_tolerance * scale)
        throw DomainError("metric is not compatible with H; its norm is not conserved");

    const std::vector<NormSample> samples = norm_trajectory(h, theta, psi0, t_grid, exec);
    const double theta0 = sandwich(theta.matrix, psi0.amplitudes);
    const double dirac0 = psi0.amplitudes.squaredNorm();

    NormDrift drift;
    for (const NormSample& s : samples)
    {
        drift.max_theta_drift = std::max(drift.max_theta_drift, std::abs(s.theta_norm / theta0 - 1.0));
        drift.max_dirac_drift = std::max(drift.max_dirac_drift, std::abs(s.dirac_norm / dirac0 - 1.0));
    }
    return drift;
}

} // namespace qtl

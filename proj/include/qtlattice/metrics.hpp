#ifndef QTLATTICE_METRICS_HPP
#define QTLATTICE_METRICS_HPP

#include <cstddef>
#include <string_view>
#include <vector>

#include "qtlattice/common.hpp"
#include "qtlattice/lattice.hpp"

namespace qtl
{
enum class Definiteness
{
    positive_definite,
    singular,
    indefinite
};

enum class Provenance
{
    diagonal_q,
    kappa_family,
    tridiagonal_family,
    external
};

std::string_view to_string(Definiteness d);
std::string_view to_string(Provenance p);

/// The N parameters selecting one metric from the biorthogonal-sum family.
struct KappaVector
{
    Vector values;

    std::size_t dimension() const { return static_cast<std::size_t>(values.size()); }
};

/// A symmetric metric candidate together with an honest definiteness tag.
struct MetricOperator
{
    Matrix matrix;
    Definiteness definiteness = Definiteness::positive_definite;
    Provenance provenance = Provenance::external;

    std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
    bool positive() const { return definiteness == Definiteness::positive_definite; }
};

/// C = Q^{-1} Theta.
struct ChargeOperator
{
    Matrix matrix;

    std::size_t dimension() const { return static_cast<std::size_t>(matrix.rows()); }
};

/// Theta(alpha) = Q + alpha T with T symmetric tridiagonal, zero diagonal and
/// bond couplings 1, 2, ..., N-1.
struct TridiagonalMetricFamily
{
    DiagonalMetric diagonal;
    std::vector<double> coupling_base;

    std::size_t dimension() const { return diagonal.dimension(); }
    Matrix coupling_matrix() const;
    MetricOperator realize(double alpha) const;
};

enum class KappaMode
{
    strict,  ///< rejects non-positive kappa
    relaxed  ///< accepts any sign; definiteness is classified, not assumed
};

/// Theta = sum_j (Q psi_j) kappa_j (Q psi_j)^T.
MetricOperator metric_from_kappa(const BiorthogonalSystem& sys, const KappaVector& kappa,
                                 KappaMode mode = KappaMode::strict);

/// kappa_j = 1 / (psi_j^T Q psi_j); the choice for which Theta = Q.
KappaVector exceptional_kappa(const BiorthogonalSystem& sys);

ChargeOperator charge_operator(const DiagonalMetric& q, const MetricOperator& theta);

/// Inverse of metric_from_kappa: kappa_j = psi_j^T Theta psi_j / n_j^2.
/// Throws DomainError when Theta violates the Dieudonne relation with H by
/// more than 1e-9 (relative), i.e. lies outside the family.
KappaVector kappa_from_metric(const BiorthogonalSystem& sys, const MetricOperator& theta);

TridiagonalMetricFamily tridiagonal_family(std::size_t n);

MetricOperator tridiagonal_metric(std::size_t n, double alpha);

/// Pivots of an unpivoted LDL^T factorization of a symmetric matrix.
/// Stops early (and returns the partial pivot list) at an exactly zero pivot.
std::vector<double> ldlt_pivots(const Matrix& m);

/// Positive-definite when every LDL^T pivot exceeds 1e-12 * ||m||_max;
/// otherwise the smallest eigenvalue decides between singular (within the
/// threshold band) and indefinite. Throws std::invalid_argument when m is
/// asymmetric beyond 1e-12 relative.
Definiteness classify_definiteness(const Matrix& m);

Definiteness is_positive_definite(const MetricOperator& theta);

/// max |H^T Theta - Theta H|, unnormalized.
double dieudonne_defect(const LatticeHamiltonian& h, const Matrix& theta);

} // namespace qtl

#endif // QTLATTICE_METRICS_HPP

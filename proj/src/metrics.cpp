#include "qtlattice/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qtl
{
namespace
{
constexpr double pivot_threshold = 1e-12;
constexpr double symmetry_tolerance = 1e-12;
constexpr double membership_tolerance = 1e-9;
} // namespace

std::string_view to_string(Definiteness d)
{
    switch (d)
    {
    case Definiteness::positive_definite:
        return "positive-definite";
    case Definiteness::singular:
        return "singular";
    case Definiteness::indefinite:
        return "indefinite";
    }
    return "unknown";
}

std::string_view to_string(Provenance p)
{
    switch (p)
    {
    case Provenance::diagonal_q:
        return "diagonal-Q";
    case Provenance::kappa_family:
        return "kappa-family";
    case Provenance::tridiagonal_family:
        return "tridiagonal-family";
    case Provenance::external:
        return "external";
    }
    return "unknown";
}

Matrix TridiagonalMetricFamily::coupling_matrix() const
{
    const auto n = static_cast<Eigen::Index>(dimension());
    Matrix t = Matrix::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k)
    {
        t(k, k + 1) = coupling_base[static_cast<std::size_t>(k)];
        t(k + 1, k) = coupling_base[static_cast<std::size_t>(k)];
    }
    return t;
}

MetricOperator TridiagonalMetricFamily::realize(double alpha) const
{
    MetricOperator m;
    m.matrix = diagonal.dense() + alpha * coupling_matrix();
    m.provenance = Provenance::tridiagonal_family;
    m.definiteness = classify_definiteness(m.matrix);
    return m;
}

MetricOperator metric_from_kappa(const BiorthogonalSystem& sys, const KappaVector& kappa, KappaMode mode)
{
    require_dimension(sys.dimension(), kappa.values.size(), "kappa vs system");
    if (mode == KappaMode::strict && (kappa.values.array() <= 0.0).any())
        throw std::invalid_argument("kappa components must be positive");

    MetricOperator m;
    m.matrix = sys.ketkets * kappa.values.asDiagonal() * sys.ketkets.transpose();
    // Exact symmetry: the sum of outer products is symmetric up to rounding order.
    m.matrix = 0.5 * (m.matrix + m.matrix.transpose()).eval();
    m.provenance = Provenance::kappa_family;
    m.definiteness = classify_definiteness(m.matrix);
    return m;
}

KappaVector exceptional_kappa(const BiorthogonalSystem& sys)
{
    return KappaVector{sys.q_norms.cwiseInverse()};
}

ChargeOperator charge_operator(const DiagonalMetric& q, const MetricOperator& theta)
{
    require_dimension(q.dimension(), theta.matrix.rows(), "metric Q vs Theta");
    require_square(theta.matrix, "Theta");
    return ChargeOperator{q.diagonal().cwiseInverse().asDiagonal() * theta.matrix};
}

KappaVector kappa_from_metric(const BiorthogonalSystem& sys, const MetricOperator& theta)
{
    require_dimension(sys.dimension(), theta.matrix.rows(), "Theta vs system");
    require_square(theta.matrix, "Theta");

    const double scale = std::max(1.0, max_abs(theta.matrix));
    if (dieudonne_defect(sys.hamiltonian, theta.matrix) > membership_tolerance * scale)
        throw DomainError("metric does not satisfy the Dieudonne relation with H");

    const Vector projected = (sys.kets.transpose() * theta.matrix * sys.kets).diagonal();
    return KappaVector{projected.cwiseQuotient(sys.q_norms.cwiseAbs2())};
}

TridiagonalMetricFamily tridiagonal_family(std::size_t n)
{
    if (n < 2)
        throw std::invalid_argument("tridiagonal metric family needs N >= 2");
    TridiagonalMetricFamily f;
    f.diagonal = build_metric_Q(n);
    f.coupling_base.resize(n - 1);
    for (std::size_t k = 0; k + 1 < n; ++k)
        f.coupling_base[k] = static_cast<double>(k + 1);
    return f;
}

MetricOperator tridiagonal_metric(std::size_t n, double alpha)
{
    return tridiagonal_family(n).realize(alpha);
}

std::vector<double> ldlt_pivots(const Matrix& m)
{
    const Eigen::Index n = m.rows();
    Matrix a = m;
    std::vector<double> pivots;
    pivots.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const double d = a(k, k);
        pivots.push_back(d);
        if (d == 0.0)
            break;
        for (Eigen::Index i = k + 1; i < n; ++i)
        {
            const double l = a(i, k) / d;
            if (l == 0.0)
                continue;
            for (Eigen::Index j = k + 1; j <= i; ++j)
                a(i, j) -= l * a(j, k);
        }
    }
    return pivots;
}

Definiteness classify_definiteness(const Matrix& m)
{
    require_square(m, "metric");
    const double norm = max_abs(m);
    if (max_abs(m - m.transpose()) > symmetry_tolerance * std::max(norm, 1e-300))
        throw std::invalid_argument("metric must be symmetric");
    if (m.size() == 0 || norm == 0.0)
        return Definiteness::singular;

    const double threshold = pivot_threshold * norm;
    const std::vector<double> pivots = ldlt_pivots(m);
    const bool all_above = static_cast<Eigen::Index>(pivots.size()) == m.rows() &&
                           std::all_of(pivots.begin(), pivots.end(), [&](double p) { return p > threshold; });
    if (all_above)
        return Definiteness::positive_definite;

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    if (std::abs(smallest) <= threshold)
        return Definiteness::singular;
    if (smallest < 0.0)
        return Definiteness::indefinite;
    // Pivot growth fooled the factorization; the eigenvalues say positive.
    return Definiteness::positive_definite;
}

Definiteness is_positive_definite(const MetricOperator& theta)
{
    return classify_definiteness(theta.matrix);
}

double dieudonne_defect(const LatticeHamiltonian& h, const Matrix& theta)
{
    require_dimension(h.dimension(), theta.rows(), "Hamiltonian vs Theta");
    const Matrix hd = h.dense();
    return max_abs(hd.transpose() * theta - theta * hd);
}

} // namespace qtl

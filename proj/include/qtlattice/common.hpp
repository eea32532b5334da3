#ifndef QTLATTICE_COMMON_HPP
#define QTLATTICE_COMMON_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qtl
{
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using complex = std::complex<double>;

/// Raised when a computation cannot produce a trustworthy result: a singular
/// or indefinite metric, a failed cross-check, a degenerate spectrum.
class DomainError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Selects the serial reference loop or the OpenMP loop for grid kernels.
/// Both paths evaluate each grid point identically, so results match bitwise.
enum class Execution
{
    serial,
    parallel
};

/// Largest entry magnitude of any dense expression (real or complex).
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m)
{
    return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

inline void require_square(const Matrix& m, const char* what)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument(std::string(what) + " must be square");
}

inline void require_dimension(std::size_t expected, Eigen::Index got, const char* what)
{
    if (static_cast<Eigen::Index>(expected) != got)
        throw std::invalid_argument(std::string("dimension mismatch: ") + what);
}

} // namespace qtl

#endif // QTLATTICE_COMMON_HPP

#include "qtlattice/exact_oracle.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "qtlattice/legendre.hpp"

namespace qtl::exact
{
namespace
{
using Polynomial = std::vector<Rational>;
using HighPrecision = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

constexpr std::size_t max_linear_dimension = 12;
constexpr std::size_t max_identity_dimension = 6;

void require_range(std::size_t n, std::size_t lo, std::size_t hi, const char* what)
{
    if (n < lo || n > hi)
        throw std::invalid_argument(std::string(what) + ": dimension out of range");
}

void trim(Polynomial& p)
{
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

Polynomial multiply(const Polynomial& a, const Polynomial& b)
{
    if (a.empty() || b.empty())
        return {};
    Polynomial out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] += a[i] * b[j];
    trim(out);
    return out;
}

Polynomial add(Polynomial a, const Polynomial& b)
{
    if (a.size() < b.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] += b[i];
    trim(a);
    return a;
}

Polynomial subtract(Polynomial a, const Polynomial& b)
{
    if (a.size() < b.size())
        a.resize(b.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] -= b[i];
    trim(a);
    return a;
}

// Quotient and remainder of a / b, b nonzero.
std::pair<Polynomial, Polynomial> divide(Polynomial a, const Polynomial& b)
{
    trim(a);
    if (a.size() < b.size())
        return {{}, a};
    Polynomial q(a.size() - b.size() + 1);
    const Rational lead = b.back();
    while (!a.empty() && a.size() >= b.size())
    {
        const std::size_t shift = a.size() - b.size();
        const Rational c = a.back() / lead;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

Polynomial remainder(const Polynomial& a, const Polynomial& m)
{
    return divide(a, m).second;
}

// Inverse of a modulo m by the extended Euclidean algorithm.
Polynomial inverse_mod(const Polynomial& a, const Polynomial& m)
{
    Polynomial r0 = m;
    Polynomial r1 = remainder(a, m);
    Polynomial s0;
    Polynomial s1{Rational(1)};
    while (!r1.empty())
    {
        auto [q, r] = divide(r0, r1);
        Polynomial s = subtract(s0, multiply(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r0.size() != 1)
        throw std::logic_error("polynomial is not invertible modulo P_N");
    const Rational scale = 1 / r0[0];
    for (Rational& c : s0)
        c *= scale;
    return remainder(s0, m);
}

Rational q_entry(std::size_t k, DiagonalForm form)
{
    Rational value(2 * k + 1, 2);
    if (form == DiagonalForm::printed_factorial)
        for (std::size_t f = 2; f <= k; ++f)
            value /= f;
    return value;
}

template <typename Real>
Real eval_legendre(std::size_t n, const Real& x)
{
    if (n == 0)
        return Real(1);
    Real prev(1);
    Real cur = x;
    for (std::size_t k = 1; k < n; ++k)
    {
        Real next = (Real(2 * k + 1) * x * cur - Real(k) * prev) / Real(k + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

template <typename Real>
Real eval_legendre_derivative(std::size_t n, const Real& x)
{
    if (n == 0)
        return Real(0);
    return Real(n) * (x * eval_legendre(n, x) - eval_legendre(n - 1, x)) / (x * x - Real(1));
}

IdentityCheck symbolic_identity(std::size_t n)
{
    const Polynomial modulus = legendre_coefficients(n);
    std::vector<Polynomial> legendre(n);
    for (std::size_t k = 0; k < n; ++k)
        legendre[k] = legendre_coefficients(k);

    Polynomial q_norm;
    for (std::size_t k = 0; k < n; ++k)
    {
        Polynomial term = multiply(legendre[k], legendre[k]);
        for (Rational& c : term)
            c *= q_entry(k, DiagonalForm::recursion);
        q_norm = add(std::move(q_norm), term);
    }
    const Polynomial inv_norm = inverse_mod(q_norm, modulus);
    const std::vector<Rational> power_sums = legendre_root_power_sums(n, n);

    Rational worst = 0;
    for (std::size_t a = 0; a < n; ++a)
    {
        for (std::size_t b = 0; b < n; ++b)
        {
            const Polynomial r = remainder(multiply(multiply(legendre[a], legendre[b]), inv_norm), modulus);
            Rational sum = 0;
            for (std::size_t k = 0; k < r.size(); ++k)
                sum += r[k] * power_sums[k];
            const Rational residual = sum * q_entry(b, DiagonalForm::recursion) - Rational(a == b ? 1 : 0);
            if (abs(residual) > abs(worst))
                worst = residual;
        }
    }
    return IdentityCheck{worst == 0, IdentityMethod::symbolic, to_string(worst)};
}

IdentityCheck high_precision_identity(std::size_t n)
{
    const RootSet seeds = roots_P(n);
    std::vector<HighPrecision> roots(n);
    for (std::size_t j = 0; j < n; ++j)
    {
        HighPrecision x(seeds[j]);
        if (seeds[j] != 0.0)
            for (int iter = 0; iter < 12; ++iter)
                x -= eval_legendre(n, x) / eval_legendre_derivative(n, x);
        roots[j] = x;
    }

    // Q-norms n_j = sum_k (k + 1/2) P_k(E_j)^2.
    std::vector<std::vector<HighPrecision>> kets(n, std::vector<HighPrecision>(n));
    std::vector<HighPrecision> norms(n, HighPrecision(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
        {
            kets[j][k] = eval_legendre(k, roots[j]);
            norms[j] += (HighPrecision(k) + HighPrecision(0.5)) * kets[j][k] * kets[j][k];
        }

    HighPrecision worst(0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
        {
            HighPrecision sum(0);
            for (std::size_t j = 0; j < n; ++j)
                sum += kets[j][a] * kets[j][b] / norms[j];
            sum *= HighPrecision(b) + HighPrecision(0.5);
            sum -= HighPrecision(a == b ? 1 : 0);
            worst = std::max(worst, HighPrecision(abs(sum)));
        }

    std::ostringstream os;
    os << std::scientific << std::setprecision(6) << worst;
    return IdentityCheck{worst < HighPrecision("1e-150"), IdentityMethod::high_precision, os.str()};
}

} // namespace

RationalMatrix RationalMatrix::transpose() const
{
    RationalMatrix t(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

bool RationalMatrix::is_zero() const
{
    return std::all_of(entries.begin(), entries.end(), [](const Rational& r) { return r == 0; });
}

Rational RationalMatrix::max_magnitude_entry() const
{
    Rational best = 0;
    for (const Rational& r : entries)
        if (abs(r) > abs(best))
            best = r;
    return best;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.n != b.n)
        throw std::invalid_argument("dimension mismatch");
    RationalMatrix c(a.n);
    for (std::size_t i = 0; i < a.n; ++i)
        for (std::size_t k = 0; k < a.n; ++k)
        {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < a.n; ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.n != b.n)
        throw std::invalid_argument("dimension mismatch");
    RationalMatrix c(a.n);
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        c.entries[i] = a.entries[i] - b.entries[i];
    return c;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b)
{
    if (a.n != b.n)
        throw std::invalid_argument("dimension mismatch");
    RationalMatrix c(a.n);
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        c.entries[i] = a.entries[i] + b.entries[i];
    return c;
}

RationalMatrix hamiltonian(std::size_t n)
{
    RationalMatrix h(n);
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        h(k, k + 1) = Rational(k + 1, 2 * k + 1);
        h(k + 1, k) = Rational(k + 1, 2 * k + 3);
    }
    return h;
}

RationalMatrix metric_Q(std::size_t n, DiagonalForm form)
{
    RationalMatrix q(n);
    for (std::size_t k = 0; k < n; ++k)
        q(k, k) = q_entry(k, form);
    return q;
}

RationalMatrix tridiagonal(const std::vector<Rational>& couplings)
{
    RationalMatrix t(couplings.size() + 1);
    for (std::size_t k = 0; k < couplings.size(); ++k)
    {
        t(k, k + 1) = couplings[k];
        t(k + 1, k) = couplings[k];
    }
    return t;
}

ExactCheck exact_intertwining_check(std::size_t n, DiagonalForm form)
{
    require_range(n, 1, max_linear_dimension, "exact_intertwining_check");
    const RationalMatrix h = hamiltonian(n);
    const RationalMatrix q = metric_Q(n, form);
    const RationalMatrix residual = h.transpose() * q - q * h;
    return ExactCheck{residual.is_zero(), residual.max_magnitude_entry()};
}

std::vector<Rational> exact_tridiagonal_solve(std::size_t n)
{
    require_range(n, 2, max_linear_dimension, "exact_tridiagonal_solve");
    const RationalMatrix h = hamiltonian(n);
    const RationalMatrix q = metric_Q(n);
    const std::size_t unknowns = n - 2; // t_1 .. t_{N-2}

    const auto defect = [&](const std::vector<Rational>& couplings) {
        const RationalMatrix theta = q + tridiagonal(couplings);
        return h.transpose() * theta - theta * h;
    };

    std::vector<Rational> base(n - 1, Rational(0));
    base[0] = 1;
    const RationalMatrix r0 = defect(base);

    // Defect is affine in the free couplings: r0 + sum_k t_k R_k.
    std::vector<RationalMatrix> columns;
    for (std::size_t k = 0; k < unknowns; ++k)
    {
        std::vector<Rational> probe = base;
        probe[k + 1] = 1;
        columns.push_back(defect(probe) - r0);
    }

    // Augmented system [A | -r0], one row per matrix entry.
    const std::size_t rows = n * n;
    std::vector<std::vector<Rational>> aug(rows, std::vector<Rational>(unknowns + 1));
    for (std::size_t e = 0; e < rows; ++e)
    {
        for (std::size_t k = 0; k < unknowns; ++k)
            aug[e][k] = columns[k].entries[e];
        aug[e][unknowns] = -r0.entries[e];
    }

    std::size_t rank = 0;
    for (std::size_t col = 0; col < unknowns; ++col)
    {
        std::size_t pivot = rank;
        while (pivot < rows && aug[pivot][col] == 0)
            ++pivot;
        if (pivot == rows)
            throw std::logic_error("tridiagonal ansatz leaves a coupling undetermined");
        std::swap(aug[rank], aug[pivot]);
        const Rational lead = aug[rank][col];
        for (Rational& v : aug[rank])
            v /= lead;
        for (std::size_t r = 0; r < rows; ++r)
        {
            if (r == rank || aug[r][col] == 0)
                continue;
            const Rational f = aug[r][col];
            for (std::size_t c = col; c <= unknowns; ++c)
                aug[r][c] -= f * aug[rank][c];
        }
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (aug[r][unknowns] != 0)
            throw std::logic_error("tridiagonal ansatz is inconsistent with the Dieudonne relation");

    std::vector<Rational> couplings = base;
    for (std::size_t k = 0; k < unknowns; ++k)
        couplings[k + 1] = aug[k][unknowns];
    return couplings;
}

IdentityCheck exact_exceptional_identity(std::size_t n, IdentityMethod method)
{
    require_range(n, 1, max_identity_dimension, "exact_exceptional_identity");
    return method == IdentityMethod::symbolic ? symbolic_identity(n) : high_precision_identity(n);
}

std::vector<Rational> legendre_coefficients(std::size_t n)
{
    Polynomial prev{Rational(1)};
    if (n == 0)
        return prev;
    Polynomial cur{Rational(0), Rational(1)};
    for (std::size_t k = 1; k < n; ++k)
    {
        Polynomial next(k + 2);
        for (std::size_t i = 0; i < cur.size(); ++i)
            next[i + 1] += Rational(2 * k + 1, k + 1) * cur[i];
        for (std::size_t i = 0; i < prev.size(); ++i)
            next[i] -= Rational(k, k + 1) * prev[i];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::vector<Rational> legendre_root_power_sums(std::size_t n, std::size_t count)
{
    // Newton's identities for the monic polynomial x^n + c_{n-1} x^{n-1} + ... + c_0.
    Polynomial coeffs = legendre_coefficients(n);
    const Rational lead = coeffs.back();
    for (Rational& c : coeffs)
        c /= lead;

    std::vector<Rational> sums(count);
    for (std::size_t k = 0; k < count; ++k)
    {
        if (k == 0)
        {
            sums[0] = n;
            continue;
        }
        Rational s = 0;
        if (k <= n)
            s -= Rational(k) * coeffs[n - k];
        for (std::size_t i = 1; i <= std::min(k - 1, n); ++i)
            s -= coeffs[n - i] * sums[k - i];
        sums[k] = s;
    }
    return sums;
}

std::vector<Certificate> run_all_checks()
{
    std::vector<Certificate> out;
    for (std::size_t n = 1; n <= 8; ++n)
    {
        const ExactCheck c = exact_intertwining_check(n);
        out.push_back({"intertwining", n, c.pass, to_string(c.witness), true});
    }
    {
        const ExactCheck c = exact_intertwining_check(3, DiagonalForm::printed_factorial);
        out.push_back({"intertwining-factorial-diagonal", 3, c.pass, to_string(c.witness), false});
    }
    for (std::size_t n = 2; n <= max_linear_dimension; ++n)
    {
        const std::vector<Rational> t = exact_tridiagonal_solve(n);
        bool matches = true;
        std::string witness;
        for (std::size_t k = 0; k < t.size(); ++k)
        {
            matches = matches && t[k] == Rational(k + 1);
            witness += (k == 0 ? "" : ",") + to_string(t[k]);
        }
        out.push_back({"tridiagonal-couplings", n, matches, witness, true});
    }
    for (std::size_t n = 1; n <= max_identity_dimension; ++n)
    {
        const IdentityCheck s = exact_exceptional_identity(n, IdentityMethod::symbolic);
        out.push_back({"exceptional-identity-symbolic", n, s.pass, s.witness, true});
        const IdentityCheck h = exact_exceptional_identity(n, IdentityMethod::high_precision);
        out.push_back({"exceptional-identity-200-digit", n, h.pass, h.witness, true});
    }
    return out;
}

std::string to_string(const Rational& r)
{
    return r.str();
}

} // namespace qtl::exact

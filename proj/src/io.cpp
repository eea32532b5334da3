#include "qtlattice/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace qtl::io
{
json matrix_to_json(const Matrix& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i)
    {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j)
{
    if (!j.is_array())
        throw std::invalid_argument("matrix must be a JSON array of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw std::invalid_argument("matrix must be square");
        for (Eigen::Index k = 0; k < n; ++k)
            m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
    }
    return m;
}

json matrix_file(const Matrix& m)
{
    return json{{"dimension", m.rows()}, {"matrix", matrix_to_json(m)}};
}

Matrix read_matrix_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open matrix file " + path);
    json doc;
    try
    {
        in >> doc;
    }
    catch (const json::parse_error& e)
    {
        throw std::invalid_argument("malformed matrix file " + path + ": " + e.what());
    }
    if (!doc.contains("matrix"))
        throw std::invalid_argument("matrix file lacks a \"matrix\" field");
    Matrix m = matrix_from_json(doc.at("matrix"));
    if (doc.contains("dimension") && doc.at("dimension").get<Eigen::Index>() != m.rows())
        throw std::invalid_argument("matrix file dimension does not match its matrix");
    return m;
}

json to_json(const RootSet& roots)
{
    return json(roots.roots);
}

json to_json(const MetricOperator& theta)
{
    return json{{"dimension", theta.dimension()},
                {"matrix", matrix_to_json(theta.matrix)},
                {"definiteness", std::string(to_string(theta.definiteness))},
                {"provenance", std::string(to_string(theta.provenance))}};
}

json to_json(const HorizonReport& report)
{
    return json{{"dimension", report.dimension},
                {"gamma", report.gamma},
                {"gamma_check", report.gamma_check},
                {"method_primary", report.method_primary},
                {"method_check", report.method_check},
                {"cross_check_residual", report.cross_check_residual},
                {"bisection_iterations", report.bisection_iterations}};
}

json to_json(const HorizonConvergence& scan)
{
    json points = json::array();
    for (const HorizonPoint& p : scan.points)
        points.push_back(json{{"dimension", p.dimension}, {"gamma", p.gamma}});
    return json{{"points", points}, {"differences", scan.differences}};
}

json to_json(const RealityScan& scan)
{
    json rows = json::array();
    for (std::size_t i = 0; i < scan.alpha_grid.size(); ++i)
    {
        json row{{"alpha", scan.alpha_grid[i]},
                 {"definiteness", std::string(to_string(scan.definiteness[i]))},
                 {"skipped", static_cast<bool>(scan.skipped[i])}};
        row["max_imag"] = scan.skipped[i] ? json(nullptr) : json(scan.max_imag[i]);
        rows.push_back(std::move(row));
    }
    json out{{"dimension", scan.dimension},
             {"observable_label", scan.observable_label},
             {"threshold", scan.threshold},
             {"points", rows}};
    out["first_crossing"] = scan.first_crossing ? json(*scan.first_crossing) : json(nullptr);
    return out;
}

json to_json(const exact::Certificate& cert)
{
    return json{{"check", cert.check},
                {"N", cert.n},
                {"pass", cert.pass},
                {"expected_pass", cert.expected_pass},
                {"witness", cert.witness}};
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(std::ostream& os, const RealityScan& scan)
{
    os << "alpha,max_imag,definiteness\n";
    for (std::size_t i = 0; i < scan.alpha_grid.size(); ++i)
        os << format_double(scan.alpha_grid[i]) << ',' << format_double(scan.max_imag[i]) << ','
           << to_string(scan.definiteness[i]) << '\n';
}

void write_csv(std::ostream& os, const std::vector<NormSample>& samples)
{
    os << "t,theta_norm,dirac_norm\n";
    for (const NormSample& s : samples)
        os << format_double(s.time) << ',' << format_double(s.theta_norm) << ',' << format_double(s.dirac_norm)
           << '\n';
}

void write_csv(std::ostream& os, const RootSet& roots)
{
    os << "index,eigenvalue\n";
    for (std::size_t i = 0; i < roots.size(); ++i)
        os << i << ',' << format_double(roots[i]) << '\n';
}

} // namespace qtl::io

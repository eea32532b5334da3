#include "qtlattice/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qtlattice/evolution.hpp"
#include "qtlattice/exact_oracle.hpp"
#include "qtlattice/horizons.hpp"
#include "qtlattice/io.hpp"
#include "qtlattice/lattice.hpp"
#include "qtlattice/metrics.hpp"
#include "qtlattice/observables.hpp"

namespace qtl::cli
{
namespace
{
using io::json;

class UsageError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

struct Options
{
    RunConfig config;
    std::size_t n = 0;
    std::optional<double> alpha;
    std::optional<std::string> kappa;
    bool require_positive = false;
    double alpha_min = 0.0;
    double alpha_max = 2.0;
    std::size_t alpha_steps = 2001;
    std::optional<std::string> matrix_path;
    std::string n_values;
    double t_max = 10.0;
    std::size_t t_steps = 101;
};

// Pulls every "--tol-NAME VALUE" pair out of the argument list.
std::vector<std::string> extract_tolerances(const std::vector<std::string>& args, std::map<std::string, double>& tols)
{
    static const std::string prefix = "--tol-";
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i)
    {
        if (args[i].rfind(prefix, 0) != 0)
        {
            rest.push_back(args[i]);
            continue;
        }
        std::string name = args[i].substr(prefix.size());
        std::string value;
        if (const auto eq = name.find('='); eq != std::string::npos)
        {
            value = name.substr(eq + 1);
            name = name.substr(0, eq);
        }
        else if (i + 1 < args.size())
            value = args[++i];
        else
            throw UsageError("missing value for " + args[i]);

        if (!tols.contains(name))
            throw UsageError("unknown tolerance --tol-" + name);
        double parsed = 0.0;
        try
        {
            std::size_t used = 0;
            parsed = std::stod(value, &used);
            if (used != value.size())
                throw std::invalid_argument(value);
        }
        catch (const std::exception&)
        {
            throw UsageError("tolerance --tol-" + name + " is not a number: " + value);
        }
        if (!(parsed > 0.0))
            throw UsageError("tolerance --tol-" + name + " must be positive");
        tols[name] = parsed;
    }
    return rest;
}

std::vector<double> parse_list(const std::string& text, const char* what)
{
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            std::size_t used = 0;
            values.push_back(std::stod(item, &used));
            if (used != item.size())
                throw std::invalid_argument(item);
        }
        catch (const std::exception&)
        {
            throw UsageError(std::string("malformed ") + what + " list: " + text);
        }
    }
    if (values.empty())
        throw UsageError(std::string("empty ") + what + " list");
    return values;
}

void require_dimension(std::size_t n, std::size_t minimum)
{
    if (n < minimum)
        throw UsageError("--n must be at least " + std::to_string(minimum));
}

MetricOperator select_metric(const Options& opt, const BiorthogonalSystem& sys)
{
    if (opt.alpha && opt.kappa)
        throw UsageError("--alpha and --kappa are mutually exclusive");
    if (opt.alpha)
    {
        require_dimension(sys.dimension(), 2);
        return tridiagonal_metric(sys.dimension(), *opt.alpha);
    }
    if (opt.kappa)
    {
        KappaVector kappa;
        if (*opt.kappa == "exceptional")
            kappa = exceptional_kappa(sys);
        else
        {
            const std::vector<double> values = parse_list(*opt.kappa, "kappa");
            if (values.size() != sys.dimension())
                throw UsageError("--kappa needs exactly N values");
            kappa.values = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
        }
        return metric_from_kappa(sys, kappa, KappaMode::relaxed);
    }
    MetricOperator q;
    q.matrix = sys.metric.dense();
    q.provenance = Provenance::diagonal_q;
    q.definiteness = classify_definiteness(q.matrix);
    return q;
}

std::string format_of(const Options& opt, const std::string& fallback)
{
    const std::string f = opt.config.output_format.empty() ? fallback : opt.config.output_format;
    if (f != "json" && f != "csv")
        throw UsageError("--format must be json or csv");
    return f;
}

void emit_json(std::ostream& out, const json& doc)
{
    out << doc.dump(2) << '\n';
}

Matrix random_symmetric(std::size_t n, unsigned long long seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const auto dim = static_cast<Eigen::Index>(n);
    Matrix k(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = i; j < dim; ++j)
            k(i, j) = k(j, i) = dist(rng);
    return k;
}

int cmd_spectrum(const Options& opt, std::ostream& out)
{
    require_dimension(opt.n, 1);
    const RootSet roots = spectrum(build_hamiltonian(opt.n));
    if (format_of(opt, "json") == "csv")
        io::write_csv(out, roots);
    else
        emit_json(out, io::to_json(roots));
    return 0;
}

int cmd_metric(const Options& opt, std::ostream& out, std::ostream& err)
{
    require_dimension(opt.n, 1);
    const BiorthogonalSystem sys = biorthogonal_system(opt.n);
    const MetricOperator theta = select_metric(opt, sys);
    if (opt.require_positive && !theta.positive())
    {
        err << "error: metric is " << to_string(theta.definiteness) << ", not positive-definite\n";
        return static_cast<int>(ExitStatus::domain_error);
    }
    emit_json(out, io::to_json(theta));
    return 0;
}

int cmd_charge(const Options& opt, std::ostream& out, std::ostream& err)
{
    require_dimension(opt.n, 1);
    const BiorthogonalSystem sys = biorthogonal_system(opt.n);
    const MetricOperator theta = select_metric(opt, sys);
    if (opt.require_positive && !theta.positive())
    {
        err << "error: metric is " << to_string(theta.definiteness) << ", not positive-definite\n";
        return static_cast<int>(ExitStatus::domain_error);
    }
    const ChargeOperator c = charge_operator(sys.metric, theta);
    const auto dim = static_cast<Eigen::Index>(opt.n);
    emit_json(out, json{{"dimension", opt.n},
                        {"matrix", io::matrix_to_json(c.matrix)},
                        {"distance_from_identity", max_abs(c.matrix - Matrix::Identity(dim, dim))},
                        {"metric_definiteness", std::string(to_string(theta.definiteness))},
                        {"metric_provenance", std::string(to_string(theta.provenance))}});
    return 0;
}

int cmd_horizon(const Options& opt, std::ostream& out)
{
    if (!opt.n_values.empty())
    {
        std::vector<std::size_t> dims;
        for (double v : parse_list(opt.n_values, "dimension"))
        {
            if (v < 2 || v != static_cast<double>(static_cast<std::size_t>(v)))
                throw UsageError("--n-values entries must be integers >= 2");
            dims.push_back(static_cast<std::size_t>(v));
        }
        const HorizonConvergence scan = horizon_convergence_scan(dims);
        if (format_of(opt, "json") == "csv")
        {
            out << "N,gamma\n";
            for (const HorizonPoint& p : scan.points)
                out << p.dimension << ',' << io::format_double(p.gamma) << '\n';
        }
        else
            emit_json(out, io::to_json(scan));
        return 0;
    }
    require_dimension(opt.n, 2);
    emit_json(out, io::to_json(horizon_gamma(opt.n)));
    return 0;
}

int cmd_scan(const Options& opt, std::ostream& out)
{
    require_dimension(opt.n, 2);
    Matrix k;
    std::string label;
    if (opt.matrix_path)
    {
        k = io::read_matrix_file(*opt.matrix_path);
        label = *opt.matrix_path;
    }
    else if (opt.config.seed)
    {
        k = random_symmetric(opt.n, *opt.config.seed);
        label = "random-symmetric(seed=" + std::to_string(*opt.config.seed) + ")";
    }
    else
    {
        const auto dim = static_cast<Eigen::Index>(opt.n);
        k = Matrix::Zero(dim, dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            k(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
        label = "alternating-diagonal";
    }
    if (static_cast<std::size_t>(k.rows()) != opt.n)
        throw UsageError("K matrix dimension does not match --n");
    if (opt.alpha_steps == 0 || !(opt.alpha_max >= opt.alpha_min))
        throw UsageError("alpha grid needs --alpha-steps >= 1 and --alpha-max >= --alpha-min");

    const RealityScan scan =
        hidden_horizon_scan(opt.n, k, uniform_grid(opt.alpha_min, opt.alpha_max, opt.alpha_steps),
                            Execution::parallel, label);
    if (format_of(opt, "csv") == "csv")
        io::write_csv(out, scan);
    else
        emit_json(out, io::to_json(scan));
    return 0;
}

int cmd_check_observability(const Options& opt, std::ostream& out, std::ostream& err)
{
    if (!opt.matrix_path)
        throw UsageError("check-observability needs --k-matrix FILE holding the candidate observable");
    const Matrix lambda = io::read_matrix_file(*opt.matrix_path);
    const auto n = static_cast<std::size_t>(lambda.rows());
    require_dimension(n, 1);
    if (opt.n != 0 && opt.n != n)
        throw UsageError("matrix dimension does not match --n");

    const BiorthogonalSystem sys = biorthogonal_system(n);
    const MetricOperator theta = select_metric(opt, sys);
    if (!theta.positive())
    {
        err << "error: metric is " << to_string(theta.definiteness) << ", not positive-definite\n";
        return static_cast<int>(ExitStatus::domain_error);
    }

    const double criterion_tol = opt.config.tolerances.at("criterion");
    const double dieudonne_tol = opt.config.tolerances.at("dieudonne");
    const double residual = dieudonne_residual(lambda, theta);

    json doc{{"dimension", n},
             {"dieudonne_residual", residual},
             {"observable", residual <= dieudonne_tol},
             {"metric_provenance", std::string(to_string(theta.provenance))}};

    // Overlap criterion on the kappa vector that reproduces the chosen metric.
    try
    {
        const KappaVector kappa = kappa_from_metric(sys, theta);
        const OverlapPair pair = overlap_matrices(sys, kappa, spectral_data(lambda));
        doc["hermiticity_residual"] = pair.hermiticity_residual;
        doc["criterion"] = criterion_product_hermitian(pair, criterion_tol);
    }
    catch (const DomainError& e)
    {
        err << "note: overlap criterion unavailable: " << e.what() << '\n';
        doc["hermiticity_residual"] = nullptr;
        doc["criterion"] = nullptr;
    }
    emit_json(out, doc);
    return 0;
}

int cmd_evolve(const Options& opt, std::ostream& out)
{
    require_dimension(opt.n, 1);
    if (opt.t_steps == 0)
        throw UsageError("--t-steps must be >= 1");
    const BiorthogonalSystem sys = biorthogonal_system(opt.n);
    const MetricOperator theta = select_metric(opt, sys);
    if (!theta.positive())
        throw DomainError(std::string("metric is ") + std::string(to_string(theta.definiteness)) +
                          ", not positive-definite");

    const auto dim = static_cast<Eigen::Index>(opt.n);
    EvolutionState psi0;
    if (opt.config.seed)
    {
        std::mt19937_64 rng(*opt.config.seed);
        std::normal_distribution<double> dist;
        psi0.amplitudes.resize(dim);
        for (Eigen::Index i = 0; i < dim; ++i)
            psi0.amplitudes[i] = complex(dist(rng), dist(rng));
        psi0.amplitudes.normalize();
    }
    else
        psi0.amplitudes = ComplexVector::Constant(dim, complex(1.0 / std::sqrt(static_cast<double>(opt.n)), 0.0));

    const std::vector<double> grid = uniform_grid(0.0, opt.t_max, opt.t_steps);
    const std::vector<NormSample> samples = norm_trajectory(sys.hamiltonian, theta, psi0, grid);
    if (format_of(opt, "csv") == "csv")
    {
        io::write_csv(out, samples);
        return 0;
    }
    const NormDrift drift = norm_drift(sys.hamiltonian, theta, psi0, grid);
    json rows = json::array();
    for (const NormSample& s : samples)
        rows.push_back(json{{"t", s.time}, {"theta_norm", s.theta_norm}, {"dirac_norm", s.dirac_norm}});
    emit_json(out, json{{"dimension", opt.n},
                        {"max_theta_drift", drift.max_theta_drift},
                        {"max_dirac_drift", drift.max_dirac_drift},
                        {"samples", rows}});
    return 0;
}

int cmd_verify(std::ostream& out, std::ostream& err)
{
    json certs = json::array();
    bool ok = true;
    for (const exact::Certificate& c : exact::run_all_checks())
    {
        certs.push_back(io::to_json(c));
        if (c.pass != c.expected_pass)
        {
            ok = false;
            err << "error: oracle check " << c.check << " at N=" << c.n << " gave an unexpected verdict\n";
        }
    }
    emit_json(out, certs);
    return ok ? 0 : static_cast<int>(ExitStatus::domain_error);
}

int dispatch(const Options& opt, std::ostream& out, std::ostream& err)
{
    const std::string& cmd = opt.config.subcommand;
    if (cmd == "spectrum")
        return cmd_spectrum(opt, out);
    if (cmd == "metric")
        return cmd_metric(opt, out, err);
    if (cmd == "charge")
        return cmd_charge(opt, out, err);
    if (cmd == "horizon")
        return cmd_horizon(opt, out);
    if (cmd == "scan")
        return cmd_scan(opt, out);
    if (cmd == "check-observability")
        return cmd_check_observability(opt, out, err);
    if (cmd == "evolve")
        return cmd_evolve(opt, out);
    if (cmd == "verify")
        return cmd_verify(out, err);
    throw UsageError("unknown subcommand " + cmd);
}

} // namespace

std::map<std::string, double> default_tolerances()
{
    return {{"criterion", 1e-10}, {"dieudonne", 1e-10}};
}

int run(const std::vector<std::string>& arguments, std::ostream& out, std::ostream& err)
{
    Options opt;
    opt.config.tolerances = default_tolerances();

    CLI::App app{"Positive-metric quantum mechanics on the Legendre lattice"};
    app.require_subcommand(1, 1);

    std::optional<unsigned long long> seed;
    std::string format;
    std::string out_path;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", format, "json or csv");
        sub->add_option("--out", out_path, "write data to FILE instead of stdout");
        sub->add_option("--seed", seed, "seed for randomized inputs");
    };
    const auto add_metric = [&](CLI::App* sub) {
        sub->add_option("--alpha", opt.alpha, "tridiagonal metric Q + alpha T");
        sub->add_option("--kappa", opt.kappa, "comma list of N values, or 'exceptional'");
        sub->add_flag("--require-positive", opt.require_positive, "fail unless the metric is positive-definite");
    };

    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of H^(N)");
    spectrum_cmd->add_option("--n", opt.n)->required();
    add_common(spectrum_cmd);

    CLI::App* metric_cmd = app.add_subcommand("metric", "Q, a kappa-family metric, or a tridiagonal metric");
    metric_cmd->add_option("--n", opt.n)->required();
    add_metric(metric_cmd);
    add_common(metric_cmd);

    CLI::App* charge_cmd = app.add_subcommand("charge", "charge operator C = Q^{-1} Theta");
    charge_cmd->add_option("--n", opt.n)->required();
    add_metric(charge_cmd);
    add_common(charge_cmd);

    CLI::App* horizon_cmd = app.add_subcommand("horizon", "positivity horizon of the tridiagonal metric");
    horizon_cmd->add_option("--n", opt.n);
    horizon_cmd->add_option("--n-values", opt.n_values, "comma list of N for a convergence scan");
    add_common(horizon_cmd);

    CLI::App* scan_cmd = app.add_subcommand("scan", "spectral reality of Theta(alpha)^{-1} K along alpha");
    scan_cmd->add_option("--n", opt.n)->required();
    scan_cmd->add_option("--k-matrix", opt.matrix_path, "JSON file with symmetric K");
    scan_cmd->add_option("--alpha-min", opt.alpha_min);
    scan_cmd->add_option("--alpha-max", opt.alpha_max);
    scan_cmd->add_option("--alpha-steps", opt.alpha_steps);
    add_common(scan_cmd);

    CLI::App* check_cmd = app.add_subcommand("check-observability", "Dieudonne and overlap criteria for a matrix");
    check_cmd->add_option("--n", opt.n);
    check_cmd->add_option("--k-matrix", opt.matrix_path, "JSON file with the candidate observable")->required();
    add_metric(check_cmd);
    add_common(check_cmd);

    CLI::App* evolve_cmd = app.add_subcommand("evolve", "Theta- and Dirac-norms under exp(-iHt)");
    evolve_cmd->add_option("--n", opt.n)->required();
    evolve_cmd->add_option("--t-max", opt.t_max);
    evolve_cmd->add_option("--t-steps", opt.t_steps);
    add_metric(evolve_cmd);
    add_common(evolve_cmd);

    CLI::App* verify_cmd = app.add_subcommand("verify", "exact-arithmetic oracle certificate");
    add_common(verify_cmd);

    try
    {
        const std::vector<std::string> rest = extract_tolerances(arguments, opt.config.tolerances);
        std::vector<const char*> argv{"qtlattice"};
        for (const std::string& a : rest)
            argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return 0;
    }
    catch (const CLI::ParseError& e)
    {
        err << "usage error: " << e.what() << '\n';
        return static_cast<int>(ExitStatus::usage_error);
    }
    catch (const UsageError& e)
    {
        err << "usage error: " << e.what() << '\n';
        return static_cast<int>(ExitStatus::usage_error);
    }

    opt.config.subcommand = app.get_subcommands().front()->get_name();
    opt.config.dimension = opt.n;
    opt.config.output_format = format;
    opt.config.seed = seed;
    if (!out_path.empty())
        opt.config.output_path = out_path;

    std::ofstream file;
    std::ostream* data = &out;
    if (opt.config.output_path)
    {
        file.open(*opt.config.output_path, std::ios::binary);
        if (!file)
        {
            err << "usage error: cannot write " << *opt.config.output_path << '\n';
            return static_cast<int>(ExitStatus::usage_error);
        }
        data = &file;
    }

    try
    {
        return dispatch(opt, *data, err);
    }
    catch (const DomainError& e)
    {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitStatus::domain_error);
    }
    catch (const std::invalid_argument& e)
    {
        err << "usage error: " << e.what() << '\n';
        return static_cast<int>(ExitStatus::usage_error);
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << '\n';
        return static_cast<int>(ExitStatus::domain_error);
    }
}

} // namespace qtl::cli

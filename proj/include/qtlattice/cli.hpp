#ifndef QTLATTICE_CLI_HPP
#define QTLATTICE_CLI_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qtl::cli
{
enum class ExitStatus : int
{
    success = 0,
    domain_error = 1,
    usage_error = 2
};

struct RunConfig
{
    std::string subcommand;
    std::size_t dimension = 0;
    std::map<std::string, double> tolerances;
    std::string output_format;
    std::optional<std::string> output_path;
    std::optional<unsigned long long> seed;
};

/// Default tolerances; --tol-NAME VALUE may override exactly these names.
std::map<std::string, double> default_tolerances();

/// Runs one subcommand. Data goes to `out` (or --out FILE), diagnostics to `err`.
int run(const std::vector<std::string>& arguments, std::ostream& out, std::ostream& err);

} // namespace qtl::cli

#endif // QTLATTICE_CLI_HPP

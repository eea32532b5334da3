#ifndef QTLATTICE_IO_HPP
#define QTLATTICE_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qtlattice/common.hpp"
#include "qtlattice/evolution.hpp"
#include "qtlattice/exact_oracle.hpp"
#include "qtlattice/horizons.hpp"
#include "qtlattice/legendre.hpp"
#include "qtlattice/metrics.hpp"

namespace qtl::io
{
using json = nlohmann::json;

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// {"dimension": N, "matrix": [[...], ...]}. Extra fields are ignored on read.
json matrix_file(const Matrix& m);
Matrix read_matrix_file(const std::string& path);

json to_json(const RootSet& roots);
json to_json(const MetricOperator& theta);
json to_json(const HorizonReport& report);
json to_json(const HorizonConvergence& scan);
json to_json(const RealityScan& scan);
json to_json(const exact::Certificate& cert);

/// %.17g, the format used for every CSV number.
std::string format_double(double v);

void write_csv(std::ostream& os, const RealityScan& scan);
void write_csv(std::ostream& os, const std::vector<NormSample>& samples);
void write_csv(std::ostream& os, const RootSet& roots);

} // namespace qtl::io

#endif // QTLATTICE_IO_HPP

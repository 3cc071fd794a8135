#pragma once

// Serialization shared by the command-line tool and the tests: JSON views of
// the computational results, CSV tables, an SVG spectrum plot, and the run
// manifest whose hash every output file carries.

#include "cdgsk/bloch.hpp"
#include "cdgsk/evolve.hpp"
#include "cdgsk/fourier.hpp"
#include "cdgsk/profile.hpp"
#include "cdgsk/reduced.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cdgsk {

using Json = nlohmann::ordered_json;

std::string artifact_version();

// {"N": N, "re": [...], "im": [...]}, modes ordered -N..N.
Json to_json(const FourierSeries& f);
// Inverse of the above; ValidationError on malformed input.
FourierSeries series_from_json(const Json& j);

Json to_json(Complex z);
Json to_json(const Eigen::Matrix3cd& m);
Json to_json(const WaveProfile& p, double residual_norm);
Json to_json(const SpeedFit& fit);
// Summary only; the per-slice eigenvalues go to CSV.
Json to_json(const StabilityReport& r);
Json to_json(const ReducedModel& m);
Json to_json(const DiscriminantResult& d);
Json to_json(const AppendixReport& r);
Json to_json(const GrowthRecord& g);

// Indented dump with a trailing newline.
std::string dump(const Json& j);

// %.17g
std::string format_number(double x);

// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);

// Hash of the manifest's compact dump, as 16 hex digits.
std::string manifest_hash(const Json& manifest);

// Comma-separated table preceded by a "# manifest_hash=<hash>" line.
class CsvTable {
public:
    CsvTable(std::vector<std::string> columns, std::string hash);
    void row(std::span<const double> values);
    void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }
    std::size_t rows() const noexcept { return rows_; }
    std::string str() const { return body_; }

private:
    std::size_t columns_;
    std::size_t rows_ = 0;
    std::string body_;
};

// Rows (xi, Re lambda, Im lambda), one per eigenvalue.
CsvTable spectrum_table(const StabilityReport& r, const std::string& hash);
// Rows (t, d, sup).
CsvTable growth_table(const GrowthRecord& g, const std::string& hash);

// Scatter of all eigenvalues in the complex plane, coloured by xi. No timestamps.
std::string spectrum_svg(const StabilityReport& r, const std::string& hash);

// Least-squares slope of log y against log x. ValidationError for fewer than
// two points or non-positive data.
double loglog_slope(std::span<const double> x, std::span<const double> y);

} // namespace cdgsk

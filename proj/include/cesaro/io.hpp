#pragma once

// File formats: measure and function spec files (JSON), verdict and report
// JSON, and plot-ready CSV exports. JSON numbers are written in shortest
// round-trip form; CSV numbers with 17 significant digits.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cesaro/carleson.hpp"
#include "cesaro/norms.hpp"
#include "cesaro/verify.hpp"

namespace cesaro::io {

using json = nlohmann::ordered_json;

/// Malformed input file or out-of-domain parameter.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
/// Writes through a temporary file and a rename; "-" or "" writes to stdout.
void write_output(const std::string& path, const std::string& content);

RadialMeasure measure_from_json(const json& j);
json measure_to_json(const RadialMeasure& m);
json components_to_json(const std::vector<MeasureComponent>& components);
RadialMeasure load_measure(const std::string& path);

/// Explicit coefficients, or a builtin. Builtins are truncated at their "degree"
/// field when present, otherwise at `default_degree`.
PowerSeries function_from_json(const json& j, std::size_t default_degree = 4096);
PowerSeries load_function(const std::string& path, std::size_t default_degree = 4096);

/// Finite values as numbers; infinities and NaN as the strings "inf", "-inf", "nan".
json number(double v);

json to_json(const TrendFit& f);
json to_json(const CriterionResult& r);
json to_json(const CarlesonVerdict& v);
json to_json(const NormEstimate& e);
json to_json(const VerificationReport& r);
json to_json(const AgreementMatrix& a);

/// "%.17g"
std::string fmt(double v);

std::string moments_csv(const MomentSequence& mu);
std::string coefficients_csv(const PowerSeries& f);
std::string ladder_csv(const CriterionResult& r);
std::string profile_csv(const std::vector<ProfilePoint>& profile);
std::string report_ladder_csv(const VerificationReport& r);

}  // namespace cesaro::io

#pragma once

// JSON and text I/O. Output is canonical: object keys sorted, floats printed
// with 17 significant digits, non-finite numbers written as null.

#include <string>
#include <variant>

#include <json.hpp>

#include "lofo/analytic_dist.hpp"
#include "lofo/bounds.hpp"
#include "lofo/concentration.hpp"
#include "lofo/finite_dist.hpp"
#include "lofo/harness.hpp"
#include "lofo/lattice.hpp"
#include "lofo/weights.hpp"

namespace lofo {

using Json = nlohmann::json;
using AnyDist = std::variant<FiniteDist, AnalyticDist>;

/// {"type":"finite","atoms":[..],"masses":[..]} | {"type":"gaussian","sigma":s}
/// | {"type":"stable","alpha":a,"scale":c}. Throws PreconditionError on a
/// malformed or invalid law.
AnyDist dist_from_json(const Json& j);
/// User-cf laws have no JSON form; serializing one throws PreconditionError.
Json to_json(const AnyDist& d);

/// Reads a whole file; throws IoError.
std::string read_file(const std::string& path);
/// Writes through a temporary file in the same directory and renames it into
/// place. Throws IoError.
void write_file_atomic(const std::string& path, const std::string& content);

AnyDist read_dist(const std::string& path);
/// A JSON array, or one number per line (blank lines and '#' comments skipped).
WeightVector parse_weights(const std::string& text);
WeightVector read_weights(const std::string& path);

std::string canonical_dump(const Json& j);

Json to_json(const QEstimate& q);
Json to_json(const LcdResult& r);
Json to_json(const RootSolution& r);
Json to_json(const BoundShape& s);
Json to_json(const CalibrationReport& r);
Json to_json(const LowerBoundReport& r);
Json to_json(const ImprovementReport& r);

QEstimate q_estimate_from_json(const Json& j);
LcdResult lcd_result_from_json(const Json& j);
RootSolution root_solution_from_json(const Json& j);
BoundShape bound_shape_from_json(const Json& j);
CalibrationReport calibration_report_from_json(const Json& j);
LowerBoundReport lower_bound_report_from_json(const Json& j);
ImprovementReport improvement_report_from_json(const Json& j);

Method parse_method(const std::string& name);

}  // namespace lofo

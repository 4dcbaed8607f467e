#pragma once

#include <string>

#include <json.hpp>

#include "momdet/verdict.hpp"

namespace momdet {

inline constexpr const char* tool_version = "0.1.0";

// Report schema:
//   {subject, base, transform, verdict, citation, decided_by,
//    chain: [{criterion, status, evidence: {key: "decimal"}, cited, reason}],
//    ground_truth: {verdict, citation} | null, agreement: bool | null,
//    numerics, diagnostics, tool_version}
// Evidence values are decimal strings with 15 significant digits; parameters are written
// with 17 so parse(emit(r)) == r.
nlohmann::json to_json(const DeterminacyReport& r);
DeterminacyReport report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const NumericsConfig& cfg);
NumericsConfig numerics_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DistributionSpec& spec);
DistributionSpec distribution_from_json(const nlohmann::json& j);

std::string emit_json(const DeterminacyReport& r);
DeterminacyReport parse_json(const std::string& text);

std::string render_text(const DeterminacyReport& r);

}  // namespace momdet

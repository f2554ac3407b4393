#pragma once

#include <nlohmann/json.hpp>

#include "flowkit/conformance.hpp"
#include "flowkit/flow_model.hpp"
#include "flowkit/report.hpp"

namespace flowkit {

// JSON documents written by the CLI. Field names follow the C++ members; the
// FlowMap layout is described in docs/flowmap.schema.json. Readers throw
// Error(Parse) on malformed input.

nlohmann::ordered_json to_json(const FlowMap& map);
FlowMap flowmap_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const ViolationRecord& v);
ViolationRecord violation_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const ComplianceResult& r);
ComplianceResult compliance_from_json(const nlohmann::json& j);

// {"compliance": ..., "violations": [...]}
nlohmann::ordered_json to_json(const AnalysisResult& r);
AnalysisResult analysis_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const ChartModel& chart);
ChartModel chart_from_json(const nlohmann::json& j);

}  // namespace flowkit

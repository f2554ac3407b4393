#pragma once

#include <string>
#include <vector>

#include "flowkit/conformance.hpp"
#include "flowkit/flow_model.hpp"
#include "flowkit/report.hpp"

namespace flowkit {

/// Graphviz DOT text for a valid map. One cluster per site, stores and flows
/// ordered by id. Throws Error(InvalidMap) if validate_map finds issues.
std::string to_graph_description(const FlowMap& map);

/// Standalone 800x400 SVG for one chart.
std::string render_chart_svg(const ChartModel& chart);

struct ReportInput {
  std::string title;
  std::string map_text;
  std::vector<Person> yellow_pages;
  std::vector<ChartModel> charts;
  std::vector<AnalysisResult> analyses;
};

/// Self-contained HTML page: map, yellow pages, charts, compliance legend and
/// violations.
std::string render_report(const ReportInput& input);

std::string html_escape(std::string_view text);

}  // namespace flowkit

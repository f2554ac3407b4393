#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowkit/conformance.hpp"
#include "flowkit/events.hpp"

namespace flowkit {

enum class ChartKind { BarFrequency, BarDuration, TimelineGantt, StackedCompliance };

// Bars use `value`; gantt elements use `begin`/`end` in minutes of the local
// day (a mark has begin == end) and carry their styling class in `style`.
struct ChartPoint {
  std::string label;
  double value = 0.0;
  std::optional<double> begin;
  std::optional<double> end;
  std::string style;

  friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

struct ChartSeries {
  std::string label;
  std::vector<ChartPoint> points;

  friend bool operator==(const ChartSeries&, const ChartSeries&) = default;
};

/// Renderer-independent chart data.
struct ChartModel {
  ChartKind kind = ChartKind::BarFrequency;
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<ChartSeries> series;
  std::vector<std::string> legend;

  friend bool operator==(const ChartModel&, const ChartModel&) = default;
};

/// Number of events per kind, one bar per kind in fixed order.
ChartModel media_usage_frequency(const Timeline& timeline);

/// Minutes per developer per day for every kind that has durations. Kinds
/// without an end time are left out. Throws Error(InvalidInput) unless both
/// counts are positive.
ChartModel media_usage_duration(const Timeline& timeline, int dev_count, int day_count);

/// One row per calendar day from the first to the last event (empty days
/// kept). Ranges for events with an end; marks for status updates and chats.
ChartModel communication_timeline(const Timeline& timeline, int timezone_offset_minutes = 0);

/// Per-day OK/temporal/qualitative shares stacked to 100, overall figures in
/// the legend.
ChartModel compliance_chart(const ComplianceResult& result);

const char* to_string(ChartKind k);
std::optional<ChartKind> parse_chart_kind(std::string_view text);

}  // namespace flowkit

#include "flowkit/report.hpp"

#include <map>
#include <set>

#include "flowkit/error.hpp"
#include "strings.hpp"

namespace flowkit {

ChartModel media_usage_frequency(const Timeline& timeline) {
  std::map<CommKind, int> counts;
  for (const auto& e : timeline) ++counts[e.kind];
  ChartModel chart;
  chart.kind = ChartKind::BarFrequency;
  chart.title = "Frequency of media usage";
  chart.x_label = "event kind";
  chart.y_label = "events";
  ChartSeries series{"events", {}};
  for (auto k : kAllCommKinds) series.points.push_back({to_string(k), static_cast<double>(counts[k]), {}, {}, {}});
  chart.series.push_back(std::move(series));
  return chart;
}

ChartModel media_usage_duration(const Timeline& timeline, int dev_count, int day_count) {
  if (dev_count <= 0 || day_count <= 0)
    throw Error(ErrorCode::InvalidInput, "developer and day counts must be positive");
  std::map<CommKind, long> minutes;
  for (const auto& e : timeline)
    if (auto d = e.duration()) minutes[e.kind] += d->count();
  ChartModel chart;
  chart.kind = ChartKind::BarDuration;
  chart.title = "Communication time per developer and day";
  chart.x_label = "event kind";
  chart.y_label = "minutes per developer per day";
  ChartSeries series{"minutes", {}};
  const double divisor = static_cast<double>(dev_count) * day_count;
  for (auto k : kAllCommKinds) {
    auto it = minutes.find(k);
    if (it == minutes.end()) continue;
    series.points.push_back({to_string(k), static_cast<double>(it->second) / divisor, {}, {}, {}});
  }
  chart.series.push_back(std::move(series));
  return chart;
}

ChartModel communication_timeline(const Timeline& timeline, int tz) {
  ChartModel chart;
  chart.kind = ChartKind::TimelineGantt;
  chart.title = "Communication overview";
  chart.x_label = "local time (minutes)";
  chart.y_label = "day";
  chart.legend = {"range: call, meeting or contact with duration", "mark: status update or chat",
                  "local: all participants on one site", "cross-site: participants on several sites"};

  std::map<Date, ChartSeries> rows;
  std::optional<Date> first, last;
  for (const auto& e : timeline) {
    const bool mark = e.kind == CommKind::StatusChange || e.kind == CommKind::Chat;
    if (!mark && !e.end) continue;
    const Date day = local_date(e.start, tz);
    if (!first || day < *first) first = day;
    if (!last || day > *last) last = day;
    const double begin = local_minute_of_day(e.start, tz);
    double end = begin;
    if (!mark) {
      end = begin + static_cast<double>(e.duration()->count());
      end = std::min(end, 24.0 * 60.0);
    }
    const std::string span = e.site_span == SiteSpan::Local ? "local" : "cross-site";
    rows[day].points.push_back({e.id, 0.0, begin, end, std::string(mark ? "mark " : "range ") + to_string(e.kind) + " " + span});
  }
  if (first) {
    for (Date d = *first; d <= *last; d += std::chrono::days{1}) {
      auto& row = rows[d];
      row.label = format_date(d);
      chart.series.push_back(std::move(row));
    }
  }
  return chart;
}

ChartModel compliance_chart(const ComplianceResult& result) {
  ChartModel chart;
  chart.kind = ChartKind::StackedCompliance;
  chart.title = "Conformance of " + result.activity_id;
  chart.x_label = "day";
  chart.y_label = "% of opportunities";
  ChartSeries ok{"ok", {}}, temporal{"temporal", {}}, qualitative{"qualitative", {}};
  for (const auto& d : result.per_day) {
    const auto label = format_date(d.day);
    const auto pct = compliance(d.counts);
    ok.points.push_back({label, static_cast<double>(pct.ok), {}, {}, {}});
    temporal.points.push_back({label, static_cast<double>(pct.temporal), {}, {}, {}});
    qualitative.points.push_back({label, static_cast<double>(pct.qualitative), {}, {}, {}});
  }
  chart.series = {std::move(ok), std::move(temporal), std::move(qualitative)};
  chart.legend.push_back("overall " + std::to_string(result.pct.ok) + "/" + std::to_string(result.pct.temporal) + "/" +
                         std::to_string(result.pct.qualitative) + (result.vacuous ? " (vacuous)" : ""));
  return chart;
}

const char* to_string(ChartKind k) {
  switch (k) {
    case ChartKind::BarFrequency: return "bar-frequency";
    case ChartKind::BarDuration: return "bar-duration";
    case ChartKind::TimelineGantt: return "timeline-gantt";
    case ChartKind::StackedCompliance: return "stacked-compliance";
  }
  return "?";
}

std::optional<ChartKind> parse_chart_kind(std::string_view t) {
  static constexpr ChartKind all[] = {ChartKind::BarFrequency, ChartKind::BarDuration, ChartKind::TimelineGantt,
                                      ChartKind::StackedCompliance};
  return detail::parse_enum(t, all);
}

}  // namespace flowkit

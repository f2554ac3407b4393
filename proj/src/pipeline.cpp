#include "flowkit/pipeline.hpp"

#include <set>

#include "flowkit/error.hpp"
#include "flowkit/json_io.hpp"

namespace flowkit {

std::size_t IngestOutcome::error_count() const {
  std::size_t n = 0;
  for (const auto& s : sources) n += s.errors.size();
  return n;
}

IngestOutcome ingest_files(const EventSources& sources, const Directory& directory) {
  using Parser = ParseResult (*)(std::string_view, const Directory&, std::string_view);
  const std::pair<const std::vector<std::filesystem::path>*, Parser> groups[] = {
      {&sources.jsonl, read_jsonl},
      {&sources.status_logs, parse_status_log},
      {&sources.vcs_logs, parse_vcs_log},
      {&sources.call_logs, parse_call_log},
  };
  IngestOutcome out;
  std::vector<Timeline> streams;
  for (const auto& [paths, parse] : groups) {
    for (const auto& path : *paths) {
      const auto name = path.filename().string();
      auto result = parse(read_file(path), directory, name);
      out.sources.push_back({name, result.events.size(), std::move(result.errors), std::move(result.warnings)});
      streams.push_back(std::move(result.events));
    }
  }
  out.timeline = merge_timeline(streams);
  return out;
}

std::vector<AnalysisResult> run_analyses(const Timeline& timeline, const TeamSpec& team,
                                         const StrategyDocument& doc) {
  std::vector<AnalysisResult> results;
  for (const auto& t : doc.templates) {
    switch (t.analyzer) {
      case AnalyzerKind::StatusUpdate:
        results.push_back(analyze_status_update(timeline, team, doc.config, t.activity_id));
        break;
      case AnalyzerKind::AcceptanceTest:
        results.push_back(analyze_acceptance(timeline, doc.config, t.activity_id));
        break;
      case AnalyzerKind::Scheduled:
        results.push_back(analyze_scheduled(timeline, doc.strategy, doc.config, t.activity_id));
        break;
    }
  }
  return results;
}

ReportInput build_report(const TeamSpec& team, const StrategyDocument& doc, const Timeline& timeline,
                         std::vector<AnalysisResult> analyses, std::optional<Timestamp> as_of) {
  const auto& config = doc.config;
  ReportInput in;
  in.title = team.name.empty() ? "Communication report" : team.name + " communication report";

  const FlowMap target = build_target_map(team, doc.strategy);
  Timestamp at = target.as_of;
  if (as_of) at = *as_of;
  else if (!timeline.empty()) at = timeline.back().start;
  const FlowMap current = update_current_map(target, timeline, at, team.backlog);
  in.map_text = to_graph_description(current);
  in.yellow_pages = current.persons;

  const Timeline grouped = group_chat_bursts(timeline, Minutes(config.chat_burst_gap_minutes));
  int devs = 0;
  for (const auto& p : team.persons) devs += p.has_role(Role::Developer) ? 1 : 0;
  std::set<Date> days(config.days.begin(), config.days.end());
  if (days.empty())
    for (const auto& e : timeline) days.insert(local_date(e.start, config.timezone_offset_minutes));

  in.charts.push_back(media_usage_frequency(grouped));
  if (devs > 0 && !days.empty())
    in.charts.push_back(media_usage_duration(grouped, devs, static_cast<int>(days.size())));
  in.charts.push_back(communication_timeline(grouped, config.timezone_offset_minutes));
  for (const auto& a : analyses) in.charts.push_back(compliance_chart(a.compliance));
  in.analyses = std::move(analyses);
  return in;
}

std::string violations_jsonl(const std::vector<AnalysisResult>& analyses) {
  std::string out;
  for (const auto& a : analyses) {
    for (const auto& v : a.violations) {
      auto j = to_json(v);
      j["activity_id"] = a.compliance.activity_id;
      out += j.dump() + "\n";
    }
  }
  return out;
}

}  // namespace flowkit

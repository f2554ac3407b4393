#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "flowkit/error.hpp"
#include "flowkit/json_io.hpp"
#include "flowkit/pipeline.hpp"

namespace fs = std::filesystem;
using namespace flowkit;

namespace {

enum Exit { kOk = 0, kIssues = 1, kFailure = 2 };

struct Options {
  std::string team, strategy, config, out = ".", as_of, map, analysis;
  std::vector<std::string> positional;
  std::vector<std::string> events, status, vcs, calls;
};

void add_project(CLI::App* cmd, Options& o) {
  cmd->add_option("--team", o.team, "team file (YAML)");
  cmd->add_option("--strategy", o.strategy, "strategy file (YAML)");
}

void add_events(CLI::App* cmd, Options& o) {
  cmd->add_option("--events", o.events, "normalized JSONL events (repeatable)");
  cmd->add_option("--status", o.status, "status log (repeatable)");
  cmd->add_option("--vcs", o.vcs, "svn log export (repeatable)");
  cmd->add_option("--calls", o.calls, "call/chat export (repeatable)");
}

void add_config(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config, "analysis settings overriding the strategy file");
}

void add_out(CLI::App* cmd, Options& o) { cmd->add_option("--out", o.out, "output directory")->capture_default_str(); }

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::InvalidInput, std::string(flag) + " is required");
}

EventSources sources_of(const Options& o) {
  EventSources s;
  for (const auto& p : o.events) s.jsonl.emplace_back(p);
  for (const auto& p : o.status) s.status_logs.emplace_back(p);
  for (const auto& p : o.vcs) s.vcs_logs.emplace_back(p);
  for (const auto& p : o.calls) s.call_logs.emplace_back(p);
  return s;
}

StrategyDocument strategy_of(const Options& o) {
  require(o.strategy, "--strategy");
  auto doc = load_strategy(o.strategy);
  if (!o.config.empty()) doc.config = parse_config_overrides(read_file(o.config), doc.config);
  return doc;
}

TeamSpec team_of(const Options& o) {
  require(o.team, "--team");
  return load_team(o.team);
}

void print_issues(const Issues& issues) {
  for (const auto& i : issues) std::cout << describe(i) << "\n";
}

Issues all_issues(const TeamSpec& team, const StrategyDocument& doc) {
  Issues issues = validate_project(team, doc.strategy);
  auto more = validate_templates(doc.templates);
  issues.insert(issues.end(), more.begin(), more.end());
  more = validate_config(doc.config);
  issues.insert(issues.end(), more.begin(), more.end());
  return issues;
}

IngestOutcome ingest(const Options& o, const Directory& dir) {
  auto sources = sources_of(o);
  if (sources.empty()) throw Error(ErrorCode::InvalidInput, "no event files given");
  auto outcome = ingest_files(sources, dir);
  for (const auto& s : outcome.sources) {
    spdlog::info("{}: {} events, {} errors, {} warnings", s.source, s.events, s.errors.size(), s.warnings.size());
    for (const auto& d : s.errors) spdlog::warn("{}:{}: {}: {}", s.source, d.line, d.code, d.message);
    for (const auto& d : s.warnings) spdlog::debug("{}:{}: {}: {}", s.source, d.line, d.code, d.message);
  }
  return outcome;
}

std::optional<Timestamp> as_of_of(const Options& o) {
  if (o.as_of.empty()) return std::nullopt;
  auto ts = parse_timestamp(o.as_of);
  if (!ts) throw Error(ErrorCode::InvalidInput, "invalid --as-of timestamp '" + o.as_of + "'");
  return ts;
}

void write(const fs::path& path, std::string_view content) {
  write_file(path, content);
  spdlog::info("wrote {}", path.string());
}

int cmd_validate(const Options& o) {
  Options opts = o;
  if (opts.team.empty() && !opts.positional.empty()) opts.team = opts.positional[0];
  if (opts.strategy.empty() && opts.positional.size() > 1) opts.strategy = opts.positional[1];
  const auto team = team_of(opts);
  const auto doc = strategy_of(opts);
  for (const auto& w : strategy_warnings(doc.strategy)) spdlog::warn("{}", describe(w));
  const auto issues = all_issues(team, doc);
  print_issues(issues);
  if (!issues.empty()) return kIssues;
  std::cout << "ok: " << team.persons.size() << " persons, " << team.pairs.size() << " pairs, "
            << doc.strategy.activities.size() << " activities\n";
  return kOk;
}

int cmd_plan(const Options& o) {
  const auto team = team_of(o);
  const auto doc = strategy_of(o);
  const auto issues = all_issues(team, doc);
  if (!issues.empty()) {
    print_issues(issues);
    return kIssues;
  }
  const fs::path out = o.out;
  const auto target = build_target_map(team, doc.strategy);
  write(out / "target-map.json", to_json(target).dump(2) + "\n");
  write(out / "target-map.dot", to_graph_description(target));
  const auto maps = build_activity_maps(team, doc.strategy);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& id = doc.strategy.activities[i].id;
    write(out / "activities" / (id + ".json"), to_json(maps[i]).dump(2) + "\n");
    write(out / "activities" / (id + ".dot"), to_graph_description(maps[i]));
  }
  std::cout << "target map and " << maps.size() << " activity maps written to " << out.string() << "\n";
  return kOk;
}

int cmd_ingest(const Options& o) {
  Directory dir;
  if (!o.team.empty()) dir = Directory(load_team(o.team));
  const auto outcome = ingest(o, dir);
  write(fs::path(o.out) / "events.jsonl", write_jsonl(outcome.timeline));
  std::cout << outcome.timeline.size() << " events, " << outcome.error_count() << " rejected lines\n";
  return kOk;
}

std::vector<AnalysisResult> analyses_of(const Options& o, const TeamSpec& team, const StrategyDocument& doc,
                                        const Timeline& timeline) {
  if (o.analysis.empty()) return run_analyses(timeline, team, doc);
  const auto j = nlohmann::json::parse(read_file(o.analysis), nullptr, false);
  if (j.is_discarded() || !j.is_array()) throw Error(ErrorCode::Parse, o.analysis + ": expected a JSON array");
  std::vector<AnalysisResult> out;
  for (const auto& a : j) out.push_back(analysis_from_json(a));
  return out;
}

int cmd_analyze(const Options& o) {
  const auto team = team_of(o);
  const auto doc = strategy_of(o);
  const auto issues = all_issues(team, doc);
  if (!issues.empty()) {
    print_issues(issues);
    return kIssues;
  }
  const auto outcome = ingest(o, Directory(team));
  const auto results = run_analyses(outcome.timeline, team, doc);
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    all.push_back(to_json(r));
    const auto& c = r.compliance;
    std::cout << c.activity_id << ": " << c.pct.ok << "% ok, " << c.pct.temporal << "% temporal, "
              << c.pct.qualitative << "% qualitative (" << c.totals.total() << " opportunities)\n";
  }
  const fs::path out = o.out;
  write(out / "analysis.json", all.dump(2) + "\n");
  write(out / "violations.jsonl", violations_jsonl(results));
  return kOk;
}

std::string chart_file(const ChartModel& chart, std::size_t index) {
  return std::to_string(index + 1) + "-" + to_string(chart.kind);
}

int cmd_report(const Options& o) {
  const auto team = team_of(o);
  const auto doc = strategy_of(o);
  const auto issues = all_issues(team, doc);
  if (!issues.empty()) {
    print_issues(issues);
    return kIssues;
  }
  const auto outcome = ingest(o, Directory(team));
  auto analyses = analyses_of(o, team, doc, outcome.timeline);
  const auto input = build_report(team, doc, outcome.timeline, std::move(analyses), as_of_of(o));
  const fs::path out = o.out;
  for (std::size_t i = 0; i < input.charts.size(); ++i) {
    const auto base = out / "charts" / chart_file(input.charts[i], i);
    write(fs::path(base).replace_extension(".json"), to_json(input.charts[i]).dump(2) + "\n");
    write(fs::path(base).replace_extension(".svg"), render_chart_svg(input.charts[i]));
  }
  write(out / "current-map.dot", input.map_text);
  write(out / "report.html", render_report(input));
  for (const auto& a : input.analyses)
    std::cout << a.compliance.activity_id << ": " << a.compliance.pct.ok << "/" << a.compliance.pct.temporal << "/"
              << a.compliance.pct.qualitative << "\n";
  return kOk;
}

int cmd_render(const Options& o) {
  std::string map_path = o.map;
  if (map_path.empty() && !o.positional.empty()) map_path = o.positional[0];
  require(map_path, "--map");
  const auto j = nlohmann::json::parse(read_file(map_path), nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::Parse, map_path + ": invalid JSON");
  const auto map = flowmap_from_json(j);
  const auto issues = validate_map(map);
  if (!issues.empty()) {
    print_issues(issues);
    return kIssues;
  }
  const auto dot = to_graph_description(map);
  if (o.out.empty() || o.out == "-") {
    std::cout << dot;
  } else {
    write(fs::path(o.out) / (fs::path(map_path).stem().string() + ".dot"), dot);
  }
  return kOk;
}

void setup_logging() {
  auto logger = spdlog::stderr_color_mt("flowkit");
  logger->set_pattern("%l: %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("FLOWKIT_LOG")) spdlog::set_level(spdlog::level::from_str(env));
}

}  // namespace

int main(int argc, char** argv) {
  setup_logging();
  CLI::App app{"Plan and check distributed-team communication with FLOW maps"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "check a team and strategy file");
  validate->add_option("files", o.positional, "team and strategy file");
  add_project(validate, o);
  add_config(validate, o);

  auto* plan = app.add_subcommand("plan", "build the target map and one map per activity");
  add_project(plan, o);
  add_out(plan, o);

  auto* ingest_cmd = app.add_subcommand("ingest", "normalize raw logs into JSONL events");
  ingest_cmd->add_option("--team", o.team, "team file used to resolve names and handles");
  add_events(ingest_cmd, o);
  add_out(ingest_cmd, o);

  auto* analyze = app.add_subcommand("analyze", "run the conformance analyzers");
  add_project(analyze, o);
  add_events(analyze, o);
  add_config(analyze, o);
  add_out(analyze, o);

  auto* report = app.add_subcommand("report", "write the HTML report with charts and the current map");
  add_project(report, o);
  add_events(report, o);
  add_config(report, o);
  add_out(report, o);
  report->add_option("--as-of", o.as_of, "timestamp of the current map (default: last event)");
  report->add_option("--analysis", o.analysis, "analysis.json from a previous analyze run");

  auto* render = app.add_subcommand("render", "print a map JSON file as Graphviz DOT");
  render->add_option("file", o.positional, "map JSON file");
  render->add_option("--map", o.map, "map JSON file");
  render->add_option("--out", o.out, "output directory, '-' for standard output");
  o.out = ".";

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFailure;
  }
  if (render->parsed() && render->count("--out") == 0) o.out = "-";

  try {
    if (validate->parsed()) return cmd_validate(o);
    if (plan->parsed()) return cmd_plan(o);
    if (ingest_cmd->parsed()) return cmd_ingest(o);
    if (analyze->parsed()) return cmd_analyze(o);
    if (report->parsed()) return cmd_report(o);
    if (render->parsed()) return cmd_render(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InvalidMap ? kIssues : kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "flowkit/config_io.hpp"
#include "flowkit/ingest.hpp"
#include "flowkit/render.hpp"

namespace flowkit {

// Input files grouped by format.
struct EventSources {
  std::vector<std::filesystem::path> jsonl;
  std::vector<std::filesystem::path> status_logs;
  std::vector<std::filesystem::path> vcs_logs;
  std::vector<std::filesystem::path> call_logs;

  bool empty() const { return jsonl.empty() && status_logs.empty() && vcs_logs.empty() && call_logs.empty(); }
};

struct SourceSummary {
  std::string source;  // file name, also the event id prefix
  std::size_t events = 0;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;
};

struct IngestOutcome {
  Timeline timeline;  // merged, time ordered
  std::vector<SourceSummary> sources;

  std::size_t error_count() const;
};

// Parses every file (throws Error(Io) for unreadable ones) and merges the
// streams in the order jsonl, status, vcs, calls.
IngestOutcome ingest_files(const EventSources& sources, const Directory& directory);

// One result per template, in template order.
std::vector<AnalysisResult> run_analyses(const Timeline& timeline, const TeamSpec& team,
                                         const StrategyDocument& doc);

// Current map at `as_of` (default: start of the last event), charts and
// analyses ready for render_report.
ReportInput build_report(const TeamSpec& team, const StrategyDocument& doc, const Timeline& timeline,
                         std::vector<AnalysisResult> analyses, std::optional<Timestamp> as_of = {});

// Violations of all analyses, one JSON object per line.
std::string violations_jsonl(const std::vector<AnalysisResult>& analyses);

}  // namespace flowkit

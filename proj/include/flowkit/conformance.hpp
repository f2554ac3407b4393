#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowkit/events.hpp"
#include "flowkit/flow_model.hpp"
#include "flowkit/issue.hpp"
#include "flowkit/map_builder.hpp"
#include "flowkit/strategy.hpp"

namespace flowkit {

enum class ViolationCategory { Temporal, Qualitative };
enum class AnalyzerKind { StatusUpdate, AcceptanceTest, Scheduled };

struct ViolationRule {
  std::string id;
  ViolationCategory category = ViolationCategory::Temporal;
  std::string description;
  std::vector<CommKind> uses;  // event kinds the rule looks at

  friend bool operator==(const ViolationRule&, const ViolationRule&) = default;
};

/// What is expected of one activity and how deviations are detected.
struct ConformanceTemplate {
  std::string activity_id;
  AnalyzerKind analyzer = AnalyzerKind::StatusUpdate;
  std::string goal;
  std::string definition;
  std::vector<CommKind> collected_data;
  std::vector<ViolationRule> rules;

  friend bool operator==(const ConformanceTemplate&, const ConformanceTemplate&) = default;
};

// Rule ids emitted by the analyzers.
namespace rules {
inline constexpr const char* kStatusStale = "status.stale";
inline constexpr const char* kStatusDoublePairing = "status.double-pairing";
inline constexpr const char* kStatusIncomplete = "status.incomplete";
inline constexpr const char* kAcceptanceAfterCommit = "acceptance.after-commit";
inline constexpr const char* kAcceptanceMissing = "acceptance.missing";
inline constexpr const char* kScheduleOffDay = "schedule.off-day";
inline constexpr const char* kScheduleMissing = "schedule.missing";
}  // namespace rules

/// Templates for the three built-in analyzers.
std::vector<ConformanceTemplate> default_templates();

Issues validate_templates(const std::vector<ConformanceTemplate>& templates);

struct ViolationRecord {
  std::string rule_id;
  ViolationCategory category = ViolationCategory::Temporal;
  Timestamp occurred_at{};
  Date day{};
  std::string subject;                     // workstation, story, activity ...
  std::vector<std::string> evidence;       // event ids
  std::optional<Timestamp> expected_slot;  // set for absence violations

  friend bool operator==(const ViolationRecord&, const ViolationRecord&) = default;
};

struct Counts {
  int ok = 0;
  int temporal = 0;
  int qualitative = 0;

  int total() const { return ok + temporal + qualitative; }
  Counts& operator+=(const Counts& o) {
    ok += o.ok;
    temporal += o.temporal;
    qualitative += o.qualitative;
    return *this;
  }

  friend bool operator==(const Counts&, const Counts&) = default;
};

struct DayCounts {
  Date day{};
  Counts counts;

  friend bool operator==(const DayCounts&, const DayCounts&) = default;
};

/// Integer percentages that sum to 100 (or 100/0/0 when vacuous).
struct Percentages {
  int ok = 100;
  int temporal = 0;
  int qualitative = 0;

  friend bool operator==(const Percentages&, const Percentages&) = default;
};

/// Half-up rounding; if that does not total 100, largest-remainder
/// apportionment is used instead. All-zero counts are vacuous: (100, 0, 0).
Percentages compliance(int ok, int temporal, int qualitative);
inline Percentages compliance(const Counts& c) { return compliance(c.ok, c.temporal, c.qualitative); }

struct ComplianceResult {
  std::string activity_id;
  std::vector<DayCounts> per_day;
  Counts totals;
  Percentages pct;
  bool vacuous = false;

  friend bool operator==(const ComplianceResult&, const ComplianceResult&) = default;
};

struct AnalysisResult {
  ComplianceResult compliance;
  std::vector<ViolationRecord> violations;
};

enum class Lookback { SameDay, AnyTimeBefore };

struct AnalysisConfig {
  std::optional<ClockTime> workday_start;
  std::optional<ClockTime> workday_end;
  int slot_minutes = 60;
  int staleness_limit_minutes = 60;
  Lookback acceptance_lookback = Lookback::AnyTimeBefore;
  int schedule_tolerance_days = 1;
  // Offset used to bucket commits and meetings into days.
  int timezone_offset_minutes = 0;
  // Days under analysis; empty means every day that has events.
  std::vector<Date> days;
  int chat_burst_gap_minutes = 15;
};

Issues validate_config(const AnalysisConfig& config);

/// Workstation x slot classification of status messages. Stale or
/// double-pairing statuses are temporal (and win over qualitative); statuses
/// outside the grammar are qualitative. Throws Error(NoWorkHoursConfigured).
AnalysisResult analyze_status_update(const Timeline& timeline, const TeamSpec& team,
                                     const AnalysisConfig& config,
                                     std::string activity_id = "status-update");

/// Completed commits against customer contacts on the story or with a member
/// of the committing pair.
AnalysisResult analyze_acceptance(const Timeline& timeline, const AnalysisConfig& config,
                                  std::string activity_id = "acceptance-test-stories");

/// Scheduled occurrences matched to meetings: same-day matches first, then
/// neighbouring days within the tolerance.
AnalysisResult analyze_scheduled(const Timeline& timeline, const CommunicationStrategy& strategy,
                                 const AnalysisConfig& config,
                                 std::string activity_id = "scheduled-activities");

/// Target map with pairs and work items replayed from the latest parsed
/// status per workstation at or before `as_of`; members show the latest status
/// text of any form. A person claimed
/// by a newer status leaves their older pair, which is then dissolved along
/// with its flows.
FlowMap update_current_map(const FlowMap& target, const Timeline& timeline, Timestamp as_of,
                           const std::vector<WorkItemRef>& backlog = {});

const char* to_string(ViolationCategory c);
const char* to_string(AnalyzerKind k);
const char* to_string(Lookback l);
std::optional<ViolationCategory> parse_violation_category(std::string_view text);
std::optional<AnalyzerKind> parse_analyzer_kind(std::string_view text);
std::optional<Lookback> parse_lookback(std::string_view text);

}  // namespace flowkit

#include "flowkit/conformance.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "flowkit/error.hpp"
#include "strings.hpp"

namespace flowkit {
namespace {

using std::chrono::minutes;

void sort_violations(std::vector<ViolationRecord>& v) {
  std::stable_sort(v.begin(), v.end(), [](const ViolationRecord& a, const ViolationRecord& b) {
    return std::tie(a.occurred_at, a.subject, a.rule_id) < std::tie(b.occurred_at, b.subject, b.rule_id);
  });
}

// Fills totals and percentages from per-day counts.
void finish(ComplianceResult& r) {
  r.totals = {};
  for (const auto& d : r.per_day) r.totals += d.counts;
  r.vacuous = r.totals.total() == 0;
  r.pct = compliance(r.totals);
}

class DayBuckets {
 public:
  explicit DayBuckets(const std::vector<Date>& days) {
    for (auto d : days) buckets_[d];
  }
  Counts& at(Date d) { return buckets_[d]; }
  std::vector<DayCounts> result() const {
    std::vector<DayCounts> out;
    for (const auto& [d, c] : buckets_) out.push_back({d, c});
    return out;
  }

 private:
  std::map<Date, Counts> buckets_;
};

std::string story_subject(const CommEvent& e) {
  return e.story_id ? "US" + std::to_string(*e.story_id) : e.id;
}

std::set<std::string> lowered_names(const ParsedStatus& s) {
  return {detail::lower(detail::trim(s.pair_names[0])), detail::lower(detail::trim(s.pair_names[1]))};
}

}  // namespace

Percentages compliance(int ok, int temporal, int qualitative) {
  const long n = static_cast<long>(ok) + temporal + qualitative;
  if (n <= 0) return {100, 0, 0};
  const long counts[3] = {ok, temporal, qualitative};
  int pct[3];
  int sum = 0;
  for (int i = 0; i < 3; ++i) {
    pct[i] = static_cast<int>((200 * counts[i] + n) / (2 * n));  // half-up
    sum += pct[i];
  }
  if (sum != 100) {
    long remainder[3];
    sum = 0;
    for (int i = 0; i < 3; ++i) {
      pct[i] = static_cast<int>(100 * counts[i] / n);
      remainder[i] = 100 * counts[i] % n;
      sum += pct[i];
    }
    int order[3] = {0, 1, 2};
    std::stable_sort(std::begin(order), std::end(order), [&](int a, int b) { return remainder[a] > remainder[b]; });
    for (int k = 0; sum < 100; ++k, ++sum) ++pct[order[k % 3]];
  }
  return {pct[0], pct[1], pct[2]};
}

std::vector<ConformanceTemplate> default_templates() {
  using VC = ViolationCategory;
  ConformanceTemplate status{
      "status-update",
      AnalyzerKind::StatusUpdate,
      "Awareness of who pairs with whom on which story",
      "Each workstation keeps a status message naming the story and both pair programmers, refreshed at least hourly",
      {CommKind::StatusChange},
      {{rules::kStatusStale, VC::Temporal, "Status older than the staleness limit", {CommKind::StatusChange}},
       {rules::kStatusDoublePairing, VC::Temporal, "A developer appears in two pairs at once", {CommKind::StatusChange}},
       {rules::kStatusIncomplete, VC::Qualitative, "Status lacks the story id or the pair names", {CommKind::StatusChange}}}};
  ConformanceTemplate acceptance{
      "acceptance-test-stories",
      AnalyzerKind::AcceptanceTest,
      "Completed stories are validated with the customer",
      "A pair demonstrates a story to the on-site customer before committing it as done",
      {CommKind::Commit, CommKind::CustomerContact},
      {{rules::kAcceptanceAfterCommit, VC::Temporal, "Customer contact only after the completing commit",
        {CommKind::Commit, CommKind::CustomerContact}},
       {rules::kAcceptanceMissing, VC::Qualitative, "No customer contact for the story at all",
        {CommKind::Commit, CommKind::CustomerContact}}}};
  ConformanceTemplate scheduled{
      "scheduled-activities",
      AnalyzerKind::Scheduled,
      "Regular distribution of project information to the whole team",
      "Stand-ups, wrap-ups and planning games take place on their scheduled days",
      {CommKind::Meeting},
      {{rules::kScheduleOffDay, VC::Temporal, "Held a day early or late", {CommKind::Meeting}},
       {rules::kScheduleMissing, VC::Qualitative, "Not held within the tolerance window", {CommKind::Meeting}}}};
  return {status, acceptance, scheduled};
}

Issues validate_templates(const std::vector<ConformanceTemplate>& templates) {
  Issues issues;
  std::set<std::string> rule_ids;
  for (const auto& t : templates) {
    if (t.activity_id.empty()) issues.push_back({"missing-activity", "", "template without activity id"});
    std::set<CommKind> declared(t.collected_data.begin(), t.collected_data.end());
    for (const auto& r : t.rules) {
      if (!rule_ids.insert(t.activity_id + "/" + r.id).second)
        issues.push_back({"duplicate-id", r.id, "rule id used twice in '" + t.activity_id + "'"});
      for (auto k : r.uses)
        if (!declared.contains(k))
          issues.push_back({"undeclared-event-kind", r.id,
                            std::string("rule uses '") + to_string(k) + "' which the template does not collect"});
    }
  }
  return issues;
}

Issues validate_config(const AnalysisConfig& c) {
  Issues issues;
  if (c.slot_minutes <= 0) issues.push_back({"invalid-config", "slot_minutes", "must be positive"});
  if (c.staleness_limit_minutes <= 0) issues.push_back({"invalid-config", "staleness_limit_minutes", "must be positive"});
  if (c.schedule_tolerance_days < 0) issues.push_back({"invalid-config", "schedule_tolerance_days", "must not be negative"});
  if (c.chat_burst_gap_minutes < 0) issues.push_back({"invalid-config", "chat_burst_gap_minutes", "must not be negative"});
  if (c.workday_start && c.workday_end && !(*c.workday_start < *c.workday_end))
    issues.push_back({"invalid-config", "workday", "workday must end after it starts"});
  return issues;
}

AnalysisResult analyze_status_update(const Timeline& timeline, const TeamSpec& team, const AnalysisConfig& config,
                                     std::string activity_id) {
  if (!config.workday_start || !config.workday_end || !(*config.workday_start < *config.workday_end))
    throw Error(ErrorCode::NoWorkHoursConfigured, "status analysis needs workday_start < workday_end");
  if (config.slot_minutes <= 0 || config.staleness_limit_minutes <= 0)
    throw Error(ErrorCode::InvalidInput, "slot and staleness limits must be positive");

  struct Workstation {
    std::string id;
    int offset = 0;
    std::vector<const CommEvent*> statuses;  // by start, stable
  };
  std::vector<Workstation> stations;
  std::map<std::string, std::size_t> index;
  for (const auto& pair : team.pairs) {
    int offset = 0;
    if (!pair.member_ids.empty())
      if (const auto* p = team.find_person(pair.member_ids.front()))
        if (const auto* s = team.find_site(p->site_id)) offset = s->timezone_offset_minutes;
    index[pair.id] = stations.size();
    stations.push_back({pair.id, offset, {}});
  }
  for (const auto& e : timeline) {
    if (e.kind != CommKind::StatusChange || !e.workstation) continue;
    auto it = index.find(*e.workstation);
    if (it != index.end()) stations[it->second].statuses.push_back(&e);
  }
  for (auto& w : stations)
    std::stable_sort(w.statuses.begin(), w.statuses.end(),
                     [](const CommEvent* a, const CommEvent* b) { return a->start < b->start; });

  std::vector<Date> days = config.days;
  if (days.empty()) {
    std::set<Date> seen;
    for (const auto& w : stations)
      for (const auto* e : w.statuses) seen.insert(local_date(e->start, w.offset));
    days.assign(seen.begin(), seen.end());
  }
  std::sort(days.begin(), days.end());
  days.erase(std::unique(days.begin(), days.end()), days.end());

  auto latest = [](const Workstation& w, Timestamp t) -> const CommEvent* {
    auto it = std::upper_bound(w.statuses.begin(), w.statuses.end(), t,
                               [](Timestamp v, const CommEvent* e) { return v < e->start; });
    return it == w.statuses.begin() ? nullptr : *std::prev(it);
  };

  const int start = config.workday_start->minutes;
  const int end = config.workday_end->minutes;
  const auto staleness = minutes{config.staleness_limit_minutes};

  AnalysisResult result;
  result.compliance.activity_id = std::move(activity_id);
  DayBuckets buckets(days);
  for (Date day : days) {
    Counts& counts = buckets.at(day);
    for (int slot_end = start + config.slot_minutes; slot_end <= end; slot_end += config.slot_minutes) {
      // Latest status of every workstation at this slot's end.
      std::vector<const CommEvent*> current(stations.size());
      std::vector<Timestamp> ends(stations.size());
      for (std::size_t i = 0; i < stations.size(); ++i) {
        ends[i] = to_utc(day, ClockTime{slot_end}, stations[i].offset);
        current[i] = latest(stations[i], ends[i]);
      }
      for (std::size_t i = 0; i < stations.size(); ++i) {
        const CommEvent* status = current[i];
        ViolationRecord v;
        v.occurred_at = ends[i];
        v.day = day;
        v.subject = stations[i].id;
        if (!status || ends[i] - status->start > staleness) {
          v.rule_id = rules::kStatusStale;
          v.category = ViolationCategory::Temporal;
          if (status) v.evidence.push_back(status->id);
          else v.expected_slot = ends[i];
          ++counts.temporal;
          result.violations.push_back(std::move(v));
          continue;
        }
        const auto* parsed = status->status() ? &status->status()->parsed : nullptr;
        const CommEvent* clash = nullptr;
        if (parsed && *parsed) {
          const auto mine = lowered_names(**parsed);
          for (std::size_t j = 0; j < stations.size() && !clash; ++j) {
            if (j == i || !current[j] || !current[j]->status() || !current[j]->status()->parsed) continue;
            for (const auto& n : lowered_names(*current[j]->status()->parsed))
              if (mine.contains(n)) clash = current[j];
          }
        }
        if (clash) {
          v.rule_id = rules::kStatusDoublePairing;
          v.category = ViolationCategory::Temporal;
          v.evidence = {status->id, clash->id};
          ++counts.temporal;
          result.violations.push_back(std::move(v));
        } else if (!parsed || !*parsed) {
          v.rule_id = rules::kStatusIncomplete;
          v.category = ViolationCategory::Qualitative;
          v.evidence = {status->id};
          ++counts.qualitative;
          result.violations.push_back(std::move(v));
        } else {
          ++counts.ok;
        }
      }
    }
  }
  result.compliance.per_day = buckets.result();
  finish(result.compliance);
  sort_violations(result.violations);
  return result;
}

AnalysisResult analyze_acceptance(const Timeline& timeline, const AnalysisConfig& config, std::string activity_id) {
  // Contact times per story and per participant, each list ordered by (start, timeline position).
  using Hit = std::pair<Timestamp, std::size_t>;
  std::map<int, std::vector<Hit>> by_story;
  std::map<std::string, std::vector<Hit>> by_person;
  for (std::size_t i = 0; i < timeline.size(); ++i) {
    const auto& e = timeline[i];
    if (e.kind != CommKind::CustomerContact) continue;
    if (e.story_id) by_story[*e.story_id].push_back({e.start, i});
    for (const auto& p : e.participants) by_person[p].push_back({e.start, i});
  }
  for (auto& [k, v] : by_story) std::sort(v.begin(), v.end());
  for (auto& [k, v] : by_person) std::sort(v.begin(), v.end());

  const int tz = config.timezone_offset_minutes;
  AnalysisResult result;
  result.compliance.activity_id = std::move(activity_id);
  DayBuckets buckets(config.days);

  for (const auto& e : timeline) {
    if (e.kind != CommKind::Commit || !e.commit() || !e.commit()->fields || !e.commit()->fields->completed_flag)
      continue;
    std::vector<const std::vector<Hit>*> lists;
    if (e.story_id)
      if (auto it = by_story.find(*e.story_id); it != by_story.end()) lists.push_back(&it->second);
    for (const auto& p : e.participants)
      if (auto it = by_person.find(p); it != by_person.end()) lists.push_back(&it->second);

    const Date day = local_date(e.start, tz);
    const Timestamp day_begin = to_utc(day, ClockTime{0}, tz);
    bool before = false;
    std::optional<Hit> earliest;
    for (const auto* list : lists) {
      if (!earliest || list->front() < *earliest) earliest = list->front();
      auto it = std::upper_bound(list->begin(), list->end(), Hit{e.start, SIZE_MAX});
      if (it == list->begin()) continue;
      const Timestamp last_before = std::prev(it)->first;
      if (config.acceptance_lookback == Lookback::AnyTimeBefore || last_before >= day_begin) before = true;
    }

    Counts& counts = buckets.at(day);
    if (before) {
      ++counts.ok;
      continue;
    }
    ViolationRecord v;
    v.occurred_at = e.start;
    v.day = day;
    v.subject = story_subject(e);
    v.evidence.push_back(e.id);
    if (earliest) {
      v.rule_id = rules::kAcceptanceAfterCommit;
      v.category = ViolationCategory::Temporal;
      v.evidence.push_back(timeline[earliest->second].id);
      ++counts.temporal;
    } else {
      v.rule_id = rules::kAcceptanceMissing;
      v.category = ViolationCategory::Qualitative;
      ++counts.qualitative;
    }
    result.violations.push_back(std::move(v));
  }
  result.compliance.per_day = buckets.result();
  finish(result.compliance);
  sort_violations(result.violations);
  return result;
}

AnalysisResult analyze_scheduled(const Timeline& timeline, const CommunicationStrategy& strategy,
                                 const AnalysisConfig& config, std::string activity_id) {
  const int tz = config.timezone_offset_minutes;
  const int tolerance = std::max(0, config.schedule_tolerance_days);

  AnalysisResult result;
  result.compliance.activity_id = std::move(activity_id);
  DayBuckets buckets(config.days);

  for (const auto& activity : strategy.activities) {
    const auto* sched = std::get_if<ScheduledTrigger>(&activity.trigger);
    if (!sched) continue;
    for (const auto& session : sched->sessions) {
      const auto days = strategy.scheduled_days(*sched, session);
      auto names_meeting = [&](const std::string& name) {
        if (!session.name.empty()) return detail::iequals(name, session.name);
        return detail::iequals(name, activity.id) || detail::iequals(name, activity.name);
      };

      struct Expected {
        Date day;
        Timestamp at;
        std::optional<std::size_t> match;
      };
      std::vector<Expected> expected;
      for (Date d : days) expected.push_back({d, to_utc(d, session.time_of_day, tz), {}});

      std::vector<std::size_t> meetings;
      for (std::size_t i = 0; i < timeline.size(); ++i) {
        const auto* m = timeline[i].meeting();
        if (timeline[i].kind == CommKind::Meeting && m && names_meeting(m->name)) meetings.push_back(i);
      }
      std::vector<bool> used(meetings.size(), false);
      const std::string subject = session.name.empty() ? activity.id : session.name;

      auto best_match = [&](const Expected& x, auto&& day_ok) -> std::optional<std::size_t> {
        std::optional<std::size_t> best;
        auto key = [&](std::size_t k) {
          const auto& ev = timeline[meetings[k]];
          auto gap = ev.start > x.at ? ev.start - x.at : x.at - ev.start;
          return std::make_tuple(gap, ev.start, meetings[k]);
        };
        for (std::size_t k = 0; k < meetings.size(); ++k) {
          if (used[k]) continue;
          const long diff = (local_date(timeline[meetings[k]].start, tz) - x.day).count();
          if (!day_ok(diff)) continue;
          if (!best || key(k) < key(*best)) best = k;
        }
        return best;
      };

      // Same-day matches first so one missing meeting cannot shift its neighbours.
      for (auto& x : expected) {
        if (auto k = best_match(x, [](long diff) { return diff == 0; })) {
          used[*k] = true;
          x.match = *k;
          ++buckets.at(x.day).ok;
        }
      }
      for (auto& x : expected) {
        if (x.match) continue;
        ViolationRecord v;
        v.day = x.day;
        v.subject = subject;
        v.expected_slot = x.at;
        auto k = best_match(x, [&](long diff) { return diff != 0 && std::abs(diff) <= tolerance; });
        if (k) {
          used[*k] = true;
          x.match = *k;
          v.rule_id = rules::kScheduleOffDay;
          v.category = ViolationCategory::Temporal;
          v.occurred_at = timeline[meetings[*k]].start;
          v.evidence.push_back(timeline[meetings[*k]].id);
          ++buckets.at(x.day).temporal;
        } else {
          v.rule_id = rules::kScheduleMissing;
          v.category = ViolationCategory::Qualitative;
          v.occurred_at = x.at;
          ++buckets.at(x.day).qualitative;
        }
        result.violations.push_back(std::move(v));
      }
    }
  }
  result.compliance.per_day = buckets.result();
  finish(result.compliance);
  sort_violations(result.violations);
  return result;
}

FlowMap update_current_map(const FlowMap& target, const Timeline& timeline, Timestamp as_of,
                           const std::vector<WorkItemRef>& backlog) {
  FlowMap map = target;
  map.kind = MapKind::Current;
  map.as_of = as_of;
  const Directory directory(target);

  // Latest status per workstation at or before as_of, and the latest one that
  // follows the grammar; the first sets the status text, the second the pair.
  std::map<std::string, const CommEvent*> latest, latest_parsed;
  for (const auto& e : timeline) {
    if (e.kind != CommKind::StatusChange || !e.workstation || e.start > as_of || !e.status()) continue;
    for (auto* index : {&latest, &latest_parsed}) {
      if (index == &latest_parsed && !e.status()->parsed) continue;
      auto& slot = (*index)[*e.workstation];
      if (!slot || slot->start <= e.start) slot = &e;
    }
  }

  struct Update {
    std::size_t pair;
    const CommEvent* status;
  };
  std::vector<Update> updates;
  for (std::size_t i = 0; i < map.pairs.size(); ++i)
    if (auto it = latest_parsed.find(map.pairs[i].id); it != latest_parsed.end()) updates.push_back({i, it->second});
  std::stable_sort(updates.begin(), updates.end(),
                   [](const Update& a, const Update& b) { return a.status->start < b.status->start; });

  auto title_of = [&](int story) {
    for (const auto& w : backlog)
      if (w.story_id == story) return w.title;
    return "US" + std::to_string(story);
  };
  auto person = [&](const std::string& id) -> Person* {
    for (auto& p : map.persons)
      if (p.id == id) return &p;
    return nullptr;
  };

  std::vector<bool> dissolved(map.pairs.size(), false);
  for (const auto& u : updates) {
    auto& pair = map.pairs[u.pair];
    const auto& parsed = *u.status->status()->parsed;
    auto a = directory.resolve_name(parsed.pair_names[0]);
    auto b = directory.resolve_name(parsed.pair_names[1]);
    if (a && b && *a != *b && directory.site_of(*a) == directory.site_of(*b)) {
      pair.member_ids = {*a, *b};
      dissolved[u.pair] = false;
      for (std::size_t j = 0; j < map.pairs.size(); ++j) {
        if (j == u.pair || dissolved[j]) continue;
        const auto& other = map.pairs[j].member_ids;
        if (std::find(other.begin(), other.end(), *a) != other.end() ||
            std::find(other.begin(), other.end(), *b) != other.end())
          dissolved[j] = true;
      }
    }
    pair.current_work_item = WorkItemRef{parsed.story_id, title_of(parsed.story_id)};
  }

  std::set<std::string> gone;
  std::vector<PairStore> kept;
  for (std::size_t i = 0; i < map.pairs.size(); ++i) {
    if (dissolved[i]) gone.insert(map.pairs[i].id);
    else kept.push_back(std::move(map.pairs[i]));
  }
  map.pairs = std::move(kept);

  for (const auto& pair : map.pairs) {
    auto it = latest.find(pair.id);
    for (const auto& id : pair.member_ids) {
      auto* p = person(id);
      if (!p) continue;
      if (pair.current_work_item) p->yellow_pages.current_work_item = pair.current_work_item;
      if (it != latest.end()) p->yellow_pages.status = it->second->status()->raw;
    }
  }
  std::erase_if(map.flows, [&](const Flow& f) { return gone.contains(f.from) || gone.contains(f.to); });
  return map;
}

const char* to_string(ViolationCategory c) { return c == ViolationCategory::Temporal ? "temporal" : "qualitative"; }

const char* to_string(AnalyzerKind k) {
  switch (k) {
    case AnalyzerKind::StatusUpdate: return "status-update";
    case AnalyzerKind::AcceptanceTest: return "acceptance-test";
    case AnalyzerKind::Scheduled: return "scheduled";
  }
  return "?";
}

const char* to_string(Lookback l) { return l == Lookback::SameDay ? "same-day" : "any-time-before"; }

std::optional<ViolationCategory> parse_violation_category(std::string_view t) {
  static constexpr ViolationCategory all[] = {ViolationCategory::Temporal, ViolationCategory::Qualitative};
  return detail::parse_enum(t, all);
}
std::optional<AnalyzerKind> parse_analyzer_kind(std::string_view t) {
  static constexpr AnalyzerKind all[] = {AnalyzerKind::StatusUpdate, AnalyzerKind::AcceptanceTest,
                                         AnalyzerKind::Scheduled};
  return detail::parse_enum(t, all);
}
std::optional<Lookback> parse_lookback(std::string_view t) {
  static constexpr Lookback all[] = {Lookback::SameDay, Lookback::AnyTimeBefore};
  return detail::parse_enum(t, all);
}

}  // namespace flowkit

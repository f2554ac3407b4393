#include "flowkit/strategy.hpp"

#include <algorithm>
#include <map>

#include "flowkit/error.hpp"
#include "strings.hpp"

namespace flowkit {

bool Medium::available_for(const std::set<std::string>& sites) const {
  if (available_at.empty()) return true;
  return std::includes(available_at.begin(), available_at.end(), sites.begin(), sites.end());
}

bool is_regular(const Trigger& trigger) {
  if (std::holds_alternative<ScheduledTrigger>(trigger)) return true;
  return std::get<EventTrigger>(trigger).event_kind != EventKind::AdHoc;
}

const CommunicationActivity* CommunicationStrategy::find_activity(std::string_view id) const {
  auto it = std::find_if(activities.begin(), activities.end(), [&](const auto& a) { return a.id == id; });
  return it == activities.end() ? nullptr : &*it;
}

const MediumAssignment* CommunicationStrategy::assignment_for(std::string_view activity_id) const {
  auto it = std::find_if(assignments.begin(), assignments.end(),
                         [&](const auto& a) { return a.activity_id == activity_id; });
  return it == assignments.end() ? nullptr : &*it;
}

const Medium* CommunicationStrategy::find_medium(std::string_view id) const {
  auto it = std::find_if(catalog.begin(), catalog.end(), [&](const auto& m) { return m.id == id; });
  return it == catalog.end() ? nullptr : &*it;
}

std::vector<Date> CommunicationStrategy::scheduled_days(const ScheduledTrigger& trigger) const {
  auto days = trigger.days.empty() ? project_days : trigger.days;
  std::sort(days.begin(), days.end());
  days.erase(std::unique(days.begin(), days.end()), days.end());
  return days;
}

std::vector<Date> CommunicationStrategy::scheduled_days(const ScheduledTrigger& trigger,
                                                        const Session& session) const {
  if (session.days.empty()) return scheduled_days(trigger);
  auto days = session.days;
  std::sort(days.begin(), days.end());
  days.erase(std::unique(days.begin(), days.end()), days.end());
  return days;
}

Catalog default_catalog() {
  Medium f2f{"face-to-face", "Face to face", 1, true, {}, {"audio", "video"}, SetupCost::Low, MonetaryCost::Free};
  Medium video{"hq-video", "HQ video conference", 2, false, {}, {"audio", "video"}, SetupCost::High, MonetaryCost::Free};
  Medium call{"call", "Telephone call", 3, false, {}, {"audio"}, SetupCost::Low, MonetaryCost::Free};
  Medium personal{"personal-document", "Personal document", 4, false, {}, {"text"}, SetupCost::Low, MonetaryCost::Free};
  Medium impersonal{"impersonal-document", "Impersonal document", 5, false, {}, {"text"}, SetupCost::Low,
                    MonetaryCost::Free};
  return {f2f, video, call, personal, impersonal};
}

std::vector<Medium> rank_media(const Catalog& catalog) {
  if (catalog.empty()) throw Error(ErrorCode::InvalidInput, "empty media catalog");
  std::vector<Medium> ranked = catalog;
  std::sort(ranked.begin(), ranked.end(),
            [](const Medium& a, const Medium& b) { return a.richness_rank < b.richness_rank; });
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    if (ranked[i].richness_rank == ranked[i - 1].richness_rank)
      throw Error(ErrorCode::DuplicateRank, "media '" + ranked[i - 1].id + "' and '" + ranked[i].id +
                                                "' share richness rank " +
                                                std::to_string(ranked[i].richness_rank));
  }
  return ranked;
}

std::set<std::string> catalog_channels(const Catalog& catalog) {
  std::set<std::string> channels;
  for (const auto& m : catalog) channels.insert(m.extra_channels.begin(), m.extra_channels.end());
  return channels;
}

MediumAssignment choose_medium(const CommunicationActivity& activity, const Catalog& catalog,
                               const std::set<std::string>& sites_involved) {
  if (sites_involved.empty()) throw Error(ErrorCode::InvalidInput, "no sites involved in '" + activity.id + "'");
  const auto ranked = rank_media(catalog);
  const auto addable = catalog_channels(catalog);
  const bool channels_ok = std::includes(addable.begin(), addable.end(), activity.required_channels.begin(),
                                         activity.required_channels.end());
  for (const auto& m : ranked) {
    if (!m.available_for(sites_involved)) continue;
    if (m.requires_colocation && sites_involved.size() != 1) continue;
    if (!channels_ok) break;
    MediumAssignment out{activity.id, m.id, {}};
    std::set_difference(activity.required_channels.begin(), activity.required_channels.end(),
                        m.extra_channels.begin(), m.extra_channels.end(),
                        std::inserter(out.added_channels, out.added_channels.end()));
    return out;
  }
  throw Error(ErrorCode::NoFeasibleMedium, "no feasible medium for activity '" + activity.id + "'");
}

Issues validate_strategy(const CommunicationStrategy& strategy) {
  Issues issues;
  auto add = [&](std::string code, std::string id, std::string msg) {
    issues.push_back({std::move(code), std::move(id), std::move(msg)});
  };

  std::set<std::string> medium_ids;
  std::map<int, std::string> ranks;
  for (const auto& m : strategy.catalog) {
    if (!medium_ids.insert(m.id).second) add("duplicate-id", m.id, "medium id used twice");
    if (m.richness_rank < 1) add("invalid-rank", m.id, "richness rank must be positive");
    auto [it, fresh] = ranks.emplace(m.richness_rank, m.id);
    if (!fresh) add("duplicate-rank", m.id, "shares rank " + std::to_string(m.richness_rank) + " with '" + it->second + "'");
  }
  const auto addable = catalog_channels(strategy.catalog);

  std::set<std::string> activity_ids;
  std::set<Date> project_days(strategy.project_days.begin(), strategy.project_days.end());
  for (const auto& a : strategy.activities) {
    if (!activity_ids.insert(a.id).second) add("duplicate-id", a.id, "activity id used twice");
    if (a.participants.kind == ScopeKind::Custom && a.participants.members.empty())
      add("empty-scope", a.id, "custom participant scope lists nobody");
    if (const auto* sched = std::get_if<ScheduledTrigger>(&a.trigger)) {
      const bool every_session_dated = std::all_of(sched->sessions.begin(), sched->sessions.end(),
                                                   [](const Session& s) { return !s.days.empty(); });
      if (sched->days.empty() && strategy.project_days.empty() && !every_session_dated)
        add("unresolvable-schedule", a.id, "scheduled activity without days and no project days declared");
      if (sched->sessions.empty()) add("unresolvable-schedule", a.id, "scheduled activity without sessions");
      std::set<std::string> session_names;
      for (const auto& session : sched->sessions) {
        if (session.time_of_day.minutes < 0 || session.time_of_day.minutes >= 24 * 60)
          add("unresolvable-schedule", a.id, "time of day out of range");
        if (!session_names.insert(session.name).second)
          add("duplicate-session", a.id, "session name '" + session.name + "' used twice");
        if (!project_days.empty()) {
          for (const auto& d : session.days)
            if (!project_days.contains(d))
              add("schedule-outside-project", a.id, format_date(d) + " is not a project day");
        }
      }
      if (!project_days.empty()) {
        for (const auto& d : sched->days)
          if (!project_days.contains(d))
            add("schedule-outside-project", a.id, format_date(d) + " is not a project day");
      }
    }
    auto count = std::count_if(strategy.assignments.begin(), strategy.assignments.end(),
                               [&](const auto& s) { return s.activity_id == a.id; });
    if (count == 0) add("unassigned-activity", a.id, "activity has no medium assignment");
    if (count > 1) add("multiple-assignments", a.id, "activity has more than one medium assignment");
  }

  for (const auto& s : strategy.assignments) {
    const auto* activity = strategy.find_activity(s.activity_id);
    const auto* medium = strategy.find_medium(s.medium_id);
    if (!activity) add("dangling-activity", s.activity_id, "assignment names an unknown activity");
    if (!medium) add("dangling-medium", s.activity_id, "assignment names unknown medium '" + s.medium_id + "'");
    for (const auto& c : s.added_channels)
      if (!addable.contains(c))
        add("channel-mismatch", s.activity_id, "added channel '" + c + "' is offered by no medium");
    if (activity && medium) {
      for (const auto& c : activity->required_channels)
        if (!medium->extra_channels.contains(c) && !s.added_channels.contains(c))
          add("channel-mismatch", s.activity_id, "required channel '" + c + "' is neither native nor added");
    }
  }
  return issues;
}

Issues strategy_warnings(const CommunicationStrategy& strategy) {
  Issues out;
  for (const auto& s : strategy.assignments) {
    const auto* m = strategy.find_medium(s.medium_id);
    if (!m) continue;
    if (m->monetary_cost == MonetaryCost::Paid)
      out.push_back({"paid-medium", s.activity_id, "'" + m->name + "' has monetary cost"});
    if (m->setup_cost == SetupCost::High)
      out.push_back({"high-setup-cost", s.activity_id, "'" + m->name + "' has a high setup cost"});
  }
  return out;
}

const char* to_string(SetupCost c) {
  switch (c) {
    case SetupCost::Low: return "low";
    case SetupCost::Medium: return "medium";
    case SetupCost::High: return "high";
  }
  return "?";
}

const char* to_string(MonetaryCost c) { return c == MonetaryCost::Free ? "free" : "paid"; }

const char* to_string(Cadence c) {
  switch (c) {
    case Cadence::EveryMorning: return "every-morning";
    case Cadence::EveryEvening: return "every-evening";
    case Cadence::StartOfIteration: return "start-of-iteration";
    case Cadence::Custom: return "custom";
  }
  return "?";
}

const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::StoryCompleted: return "story-completed";
    case EventKind::IterationCompleted: return "iteration-completed";
    case EventKind::StatusChange: return "status-change";
    case EventKind::AdHoc: return "ad-hoc";
  }
  return "?";
}

const char* to_string(ScopeKind k) {
  switch (k) {
    case ScopeKind::WholeTeam: return "whole-team";
    case ScopeKind::Pair: return "pair";
    case ScopeKind::PairPlusCustomer: return "pair-plus-customer";
    case ScopeKind::Custom: return "custom";
  }
  return "?";
}

std::optional<SetupCost> parse_setup_cost(std::string_view t) {
  static constexpr SetupCost all[] = {SetupCost::Low, SetupCost::Medium, SetupCost::High};
  return detail::parse_enum(t, all);
}
std::optional<MonetaryCost> parse_monetary_cost(std::string_view t) {
  static constexpr MonetaryCost all[] = {MonetaryCost::Free, MonetaryCost::Paid};
  return detail::parse_enum(t, all);
}
std::optional<Cadence> parse_cadence(std::string_view t) {
  static constexpr Cadence all[] = {Cadence::EveryMorning, Cadence::EveryEvening, Cadence::StartOfIteration,
                                    Cadence::Custom};
  return detail::parse_enum(t, all);
}
std::optional<EventKind> parse_event_kind(std::string_view t) {
  static constexpr EventKind all[] = {EventKind::StoryCompleted, EventKind::IterationCompleted,
                                      EventKind::StatusChange, EventKind::AdHoc};
  return detail::parse_enum(t, all);
}
std::optional<ScopeKind> parse_scope_kind(std::string_view t) {
  static constexpr ScopeKind all[] = {ScopeKind::WholeTeam, ScopeKind::Pair, ScopeKind::PairPlusCustomer,
                                      ScopeKind::Custom};
  return detail::parse_enum(t, all);
}

}  // namespace flowkit

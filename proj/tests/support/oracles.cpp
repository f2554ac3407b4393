#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <map>

namespace flowkit::oracle {
namespace {

constexpr long kDay = 86400;

long floor_div(long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0)) ? 1 : 0); }

long secs(Timestamp t) { return static_cast<long>(t.time_since_epoch().count()); }

Date day_of(Timestamp t, int offset_minutes) {
  return Date{std::chrono::days{floor_div(secs(t) + offset_minutes * 60L, kDay)}};
}

Timestamp instant(Date d, int minute_of_day, int offset_minutes) {
  const long day = d.time_since_epoch().count();
  return Timestamp{std::chrono::seconds{day * kDay + minute_of_day * 60L - offset_minutes * 60L}};
}

std::string lowered(std::string s) {
  auto b = s.find_first_not_of(" \t");
  auto e = s.find_last_not_of(" \t");
  s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void tally(std::map<Date, Counts>& days, Date d, ViolationCategory* category) {
  auto& c = days[d];
  if (!category) ++c.ok;
  else if (*category == ViolationCategory::Temporal) ++c.temporal;
  else ++c.qualitative;
}

ComplianceResult summarize(const std::string& id, const std::map<Date, Counts>& days) {
  ComplianceResult r;
  r.activity_id = id;
  for (const auto& [d, c] : days) {
    r.per_day.push_back({d, c});
    r.totals.ok += c.ok;
    r.totals.temporal += c.temporal;
    r.totals.qualitative += c.qualitative;
  }
  r.vacuous = r.totals.ok + r.totals.temporal + r.totals.qualitative == 0;
  r.pct = compliance(r.totals.ok, r.totals.temporal, r.totals.qualitative);
  return r;
}

}  // namespace

bool feasible(const CommunicationActivity& activity, const Catalog& catalog, const Medium& medium,
              const std::set<std::string>& sites) {
  std::set<std::string> tags;
  for (const auto& m : catalog)
    for (const auto& c : m.extra_channels) tags.insert(c);
  for (const auto& s : sites)
    if (!medium.available_at.empty() && !medium.available_at.count(s)) return false;
  if (medium.requires_colocation && sites.size() != 1) return false;
  for (const auto& ch : activity.required_channels)
    if (!medium.extra_channels.count(ch) && !tags.count(ch)) return false;
  return true;
}

std::optional<Choice> choose_medium(const CommunicationActivity& activity, const Catalog& catalog,
                                    const std::set<std::string>& sites) {
  const Medium* best = nullptr;
  for (const auto& m : catalog)
    if (feasible(activity, catalog, m, sites) && (!best || m.richness_rank < best->richness_rank)) best = &m;
  if (!best) return std::nullopt;
  Choice c{best->id, {}};
  for (const auto& ch : activity.required_channels)
    if (!best->extra_channels.count(ch)) c.added_channels.insert(ch);
  return c;
}

Timeline merge(const std::vector<Timeline>& streams) {
  Timeline all;
  for (const auto& s : streams) all.insert(all.end(), s.begin(), s.end());
  std::stable_sort(all.begin(), all.end(), [](const CommEvent& a, const CommEvent& b) { return a.start < b.start; });
  return all;
}

Percentages compliance(int ok, int temporal, int qualitative) {
  const int n = ok + temporal + qualitative;
  if (n == 0) return {100, 0, 0};
  const int counts[3] = {ok, temporal, qualitative};
  int rounded[3];
  int sum = 0;
  for (int i = 0; i < 3; ++i) {
    // half-up: floor((200 * c + n) / (2 * n))
    rounded[i] = (200 * counts[i] + n) / (2 * n);
    sum += rounded[i];
  }
  if (sum == 100) return {rounded[0], rounded[1], rounded[2]};
  int floors[3];
  int rem[3];
  int left = 100;
  for (int i = 0; i < 3; ++i) {
    floors[i] = 100 * counts[i] / n;
    rem[i] = 100 * counts[i] % n;
    left -= floors[i];
  }
  while (left-- > 0) {
    int best = 0;
    for (int i = 1; i < 3; ++i)
      if (rem[i] > rem[best]) best = i;
    ++floors[best];
    rem[best] = -1;
  }
  return {floors[0], floors[1], floors[2]};
}

AnalysisResult status_update(const Timeline& timeline, const TeamSpec& team, const AnalysisConfig& config,
                             const std::string& activity_id) {
  std::vector<std::pair<std::string, int>> stations;
  for (const auto& pair : team.pairs) {
    int offset = 0;
    for (const auto& p : team.persons)
      if (p.id == pair.member_ids.front())
        for (const auto& s : team.sites)
          if (s.id == p.site_id) offset = s.timezone_offset_minutes;
    stations.push_back({pair.id, offset});
  }

  std::set<Date> days(config.days.begin(), config.days.end());
  if (config.days.empty())
    for (const auto& e : timeline)
      for (const auto& [id, offset] : stations)
        if (e.kind == CommKind::StatusChange && e.workstation == id) days.insert(day_of(e.start, offset));

  AnalysisResult r;
  std::map<Date, Counts> counts;
  for (Date d : days) counts[d];
  for (Date d : days) {
    for (int end = config.workday_start->minutes + config.slot_minutes; end <= config.workday_end->minutes;
         end += config.slot_minutes) {
      std::vector<const CommEvent*> latest(stations.size(), nullptr);
      std::vector<Timestamp> at(stations.size());
      for (std::size_t i = 0; i < stations.size(); ++i) {
        at[i] = instant(d, end, stations[i].second);
        for (const auto& e : timeline)
          if (e.kind == CommKind::StatusChange && e.workstation == stations[i].first && e.start <= at[i] &&
              (!latest[i] || e.start >= latest[i]->start))
            latest[i] = &e;
      }
      for (std::size_t i = 0; i < stations.size(); ++i) {
        ViolationRecord v;
        v.occurred_at = at[i];
        v.day = d;
        v.subject = stations[i].first;
        const CommEvent* s = latest[i];
        const long age = s ? secs(at[i]) - secs(s->start) : 0;
        if (!s || age > config.staleness_limit_minutes * 60L) {
          v.rule_id = rules::kStatusStale;
          v.category = ViolationCategory::Temporal;
          if (s) v.evidence = {s->id};
          else v.expected_slot = at[i];
        } else {
          const auto* payload = s->status();
          const bool parsed = payload && payload->parsed;
          const CommEvent* clash = nullptr;
          if (parsed) {
            for (std::size_t j = 0; j < stations.size(); ++j) {
              if (j == i || !latest[j] || !latest[j]->status() || !latest[j]->status()->parsed) continue;
              for (const auto& mine : payload->parsed->pair_names)
                for (const auto& theirs : latest[j]->status()->parsed->pair_names)
                  if (!clash && lowered(mine) == lowered(theirs)) clash = latest[j];
            }
          }
          if (clash) {
            v.rule_id = rules::kStatusDoublePairing;
            v.category = ViolationCategory::Temporal;
            v.evidence = {s->id, clash->id};
          } else if (!parsed) {
            v.rule_id = rules::kStatusIncomplete;
            v.category = ViolationCategory::Qualitative;
            v.evidence = {s->id};
          } else {
            tally(counts, d, nullptr);
            continue;
          }
        }
        tally(counts, d, &v.category);
        r.violations.push_back(v);
      }
    }
  }
  r.compliance = summarize(activity_id, counts);
  return r;
}

AnalysisResult acceptance(const Timeline& timeline, const AnalysisConfig& config, const std::string& activity_id) {
  const int tz = config.timezone_offset_minutes;
  AnalysisResult r;
  std::map<Date, Counts> counts;
  for (Date d : config.days) counts[d];
  for (const auto& c : timeline) {
    if (c.kind != CommKind::Commit || !c.commit() || !c.commit()->fields || !c.commit()->fields->completed_flag)
      continue;
    const Date day = day_of(c.start, tz);
    bool ok = false;
    std::optional<std::size_t> earliest;
    for (std::size_t k = 0; k < timeline.size(); ++k) {
      const auto& m = timeline[k];
      if (m.kind != CommKind::CustomerContact) continue;
      bool related = c.story_id && m.story_id && *c.story_id == *m.story_id;
      for (const auto& p : c.participants)
        if (m.participants.count(p)) related = true;
      if (!related) continue;
      if (!earliest || m.start < timeline[*earliest].start) earliest = k;
      if (m.start <= c.start && (config.acceptance_lookback == Lookback::AnyTimeBefore || day_of(m.start, tz) == day))
        ok = true;
    }
    if (ok) {
      tally(counts, day, nullptr);
      continue;
    }
    ViolationRecord v;
    v.occurred_at = c.start;
    v.day = day;
    v.subject = c.story_id ? "US" + std::to_string(*c.story_id) : c.id;
    v.evidence = {c.id};
    if (earliest) {
      v.rule_id = rules::kAcceptanceAfterCommit;
      v.category = ViolationCategory::Temporal;
      v.evidence.push_back(timeline[*earliest].id);
    } else {
      v.rule_id = rules::kAcceptanceMissing;
      v.category = ViolationCategory::Qualitative;
    }
    tally(counts, day, &v.category);
    r.violations.push_back(v);
  }
  r.compliance = summarize(activity_id, counts);
  return r;
}

AnalysisResult scheduled(const Timeline& timeline, const CommunicationStrategy& strategy,
                         const AnalysisConfig& config, const std::string& activity_id) {
  const int tz = config.timezone_offset_minutes;
  AnalysisResult r;
  std::map<Date, Counts> counts;
  for (Date d : config.days) counts[d];
  for (const auto& a : strategy.activities) {
    const auto* trigger = std::get_if<ScheduledTrigger>(&a.trigger);
    if (!trigger) continue;
    for (const auto& session : trigger->sessions) {
      std::set<Date> days;
      const auto& source = !session.days.empty()   ? session.days
                           : !trigger->days.empty() ? trigger->days
                                                    : strategy.project_days;
      days.insert(source.begin(), source.end());
      auto wanted = [&](const CommEvent& e) {
        if (e.kind != CommKind::Meeting || !e.meeting()) return false;
        const auto name = lowered(e.meeting()->name);
        if (!session.name.empty()) return name == lowered(session.name);
        return name == lowered(a.id) || name == lowered(a.name);
      };
      std::set<std::size_t> taken;
      std::map<Date, std::optional<std::size_t>> match;
      // Pass 0: same day; pass 1: neighbouring days within the tolerance.
      for (int pass = 0; pass < 2; ++pass) {
        for (Date d : days) {
          if (match[d]) continue;
          const Timestamp at = instant(d, session.time_of_day.minutes, tz);
          std::optional<std::size_t> best;
          for (std::size_t k = 0; k < timeline.size(); ++k) {
            if (taken.count(k) || !wanted(timeline[k])) continue;
            const long diff = (day_of(timeline[k].start, tz) - d).count();
            if (pass == 0 ? diff != 0 : (diff == 0 || std::abs(diff) > config.schedule_tolerance_days)) continue;
            auto gap = [&](std::size_t i) { return std::abs(secs(timeline[i].start) - secs(at)); };
            if (!best || std::make_tuple(gap(k), timeline[k].start, k) <
                             std::make_tuple(gap(*best), timeline[*best].start, *best))
              best = k;
          }
          if (best) {
            taken.insert(*best);
            match[d] = best;
            if (pass == 0) {
              tally(counts, d, nullptr);
            } else {
              ViolationRecord v{rules::kScheduleOffDay, ViolationCategory::Temporal, timeline[*best].start, d,
                                session.name.empty() ? a.id : session.name, {timeline[*best].id}, at};
              tally(counts, d, &v.category);
              r.violations.push_back(v);
            }
          }
        }
      }
      for (Date d : days) {
        if (match[d]) continue;
        const Timestamp at = instant(d, session.time_of_day.minutes, tz);
        ViolationRecord v{rules::kScheduleMissing, ViolationCategory::Qualitative, at, d,
                          session.name.empty() ? a.id : session.name, {}, at};
        tally(counts, d, &v.category);
        r.violations.push_back(v);
      }
    }
  }
  r.compliance = summarize(activity_id, counts);
  return r;
}

Census target_census(const TeamSpec& team, const CommunicationStrategy& strategy) {
  Census c;
  c.sites = team.sites.size();
  c.persons = team.persons.size();
  c.pairs = team.pairs.size();
  c.documents = team.documents.size();

  auto site = [&](const std::string& id) -> std::string {
    for (const auto& p : team.persons)
      if (p.id == id) return p.site_id;
    for (const auto& pair : team.pairs)
      if (pair.id == id)
        for (const auto& p : team.persons)
          if (p.id == pair.member_ids[0]) return p.site_id;
    for (const auto& d : team.documents)
      if (d.document.id == id) return d.document.responsible_site_id;
    return "?";
  };
  auto is_pair = [&](const std::string& id) {
    return std::any_of(team.pairs.begin(), team.pairs.end(), [&](const PairStore& p) { return p.id == id; });
  };
  auto is_customer = [&](const Person& p) { return p.roles.count(Role::Customer) > 0; };

  std::map<std::pair<std::string, std::string>, Strength> fluid;
  for (const auto& a : strategy.activities) {
    std::vector<std::string> parties;
    if (a.moderator) parties.push_back(*a.moderator);
    auto add = [&](const std::string& id) {
      if (std::find(parties.begin(), parties.end(), id) == parties.end()) parties.push_back(id);
    };
    switch (a.participants.kind) {
      case ScopeKind::WholeTeam:
        for (const auto& p : team.persons) add(p.id);
        break;
      case ScopeKind::Pair:
        for (const auto& p : team.pairs) add(p.id);
        break;
      case ScopeKind::PairPlusCustomer:
        for (const auto& p : team.pairs) add(p.id);
        for (const auto& p : team.persons)
          if (is_customer(p)) add(p.id);
        break;
      case ScopeKind::Custom:
        for (const auto& m : a.participants.members) add(m);
        break;
    }
    std::set<std::pair<std::string, std::string>> edges;
    auto edge = [&](const std::string& x, const std::string& y) {
      if (x != y) edges.insert(x < y ? std::make_pair(x, y) : std::make_pair(y, x));
    };
    if (a.moderator) {
      for (const auto& p : parties) edge(*a.moderator, p);
    } else if (a.participants.kind == ScopeKind::PairPlusCustomer) {
      for (const auto& pair : team.pairs)
        for (const auto& p : team.persons)
          if (is_customer(p)) edge(pair.id, p.id);
    } else {
      for (const auto& x : parties)
        for (const auto& y : parties) edge(x, y);
    }
    const bool regular = std::holds_alternative<ScheduledTrigger>(a.trigger) ||
                         std::get<EventTrigger>(a.trigger).event_kind != EventKind::AdHoc;
    for (const auto& e : edges) {
      Strength s = regular ? Strength::Regular : Strength::Weak;
      if (is_pair(e.first) && is_pair(e.second) && site(e.first) == site(e.second)) s = Strength::Strong;
      auto it = fluid.find(e);
      if (it == fluid.end() || it->second < s) fluid[e] = s;
    }
  }
  for (const auto& [e, s] : fluid) c.flows.insert({e.first, e.second, s, site(e.first) != site(e.second)});

  auto expand = [&](const std::string& sel) {
    std::set<std::string> out;
    for (const auto& p : team.persons) {
      if (sel == "all" || sel == p.id) out.insert(p.id);
      for (auto role : p.roles)
        if (sel == to_string(role)) out.insert(p.id);
    }
    for (const auto& p : team.pairs)
      if (sel == "pairs" || sel == p.id) out.insert(p.id);
    return out;
  };
  for (const auto& d : team.documents) {
    std::set<std::string> writers, readers;
    for (const auto& s : d.writers)
      for (const auto& id : expand(s)) writers.insert(id);
    for (const auto& s : d.readers)
      for (const auto& id : expand(s)) readers.insert(id);
    const auto& doc_site = d.document.responsible_site_id;
    for (const auto& w : writers) c.flows.insert({w, d.document.id, Strength::Regular, site(w) != doc_site});
    for (const auto& rd : readers) c.flows.insert({d.document.id, rd, Strength::Regular, site(rd) != doc_site});
  }
  return c;
}

void canonical_sort(std::vector<ViolationRecord>& v) {
  std::sort(v.begin(), v.end(), [](const ViolationRecord& a, const ViolationRecord& b) {
    return std::tie(a.occurred_at, a.subject, a.rule_id, a.category, a.day, a.evidence, a.expected_slot) <
           std::tie(b.occurred_at, b.subject, b.rule_id, b.category, b.day, b.evidence, b.expected_slot);
  });
}

}  // namespace flowkit::oracle

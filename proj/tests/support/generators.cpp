#include "generators.hpp"

#include <set>

#include "flowkit/ingest.hpp"

namespace flowkit::testkit {
namespace {

const std::vector<std::string> kFirstNames{"Ana", "Ben",  "Cem", "Dora", "Eli",  "Finn",
                                           "Gia", "Hugo", "Ida", "Jon",  "Kira", "Lars"};
const std::vector<int> kOffsets{-300, -60, 0, 60, 120, 330, 540};

Timestamp at_local(Date d, int minute_of_day, int offset) { return to_utc(d, ClockTime{minute_of_day}, offset); }

int site_offset(const TeamSpec& team, const std::string& person_id) {
  if (const auto* p = team.find_person(person_id))
    if (const auto* s = team.find_site(p->site_id)) return s->timezone_offset_minutes;
  return 0;
}

}  // namespace

std::vector<Date> project_days(int count) {
  std::vector<Date> days;
  const Date first = std::chrono::year{2010} / 8 / 23;
  for (int i = 0; i < count; ++i) days.push_back(first + std::chrono::days{i});
  return days;
}

TeamSpec random_team(Rng& rng, int max_sites, int max_persons) {
  TeamSpec team;
  team.name = "random team";
  const int sites = rng.between(1, max_sites);
  for (int i = 0; i < sites; ++i)
    team.sites.push_back({"s" + std::to_string(i), "Site " + std::to_string(i), rng.pick(kOffsets)});
  const int persons = rng.between(1, std::min<int>(max_persons, static_cast<int>(kFirstNames.size())));
  for (int i = 0; i < persons; ++i) {
    Person p;
    p.id = "p" + std::to_string(i);
    p.name = kFirstNames[static_cast<std::size_t>(i)] + " Test";
    p.site_id = rng.pick(team.sites).id;
    if (rng.chance(0.65)) p.roles.insert(Role::Developer);
    if (rng.chance(0.15)) p.roles.insert(Role::Coordinator);
    if (rng.chance(0.12)) p.roles.insert(Role::Customer);
    p.yellow_pages.skills = {"skill" + std::to_string(rng.between(0, 3))};
    team.persons.push_back(std::move(p));
  }
  int pair_no = 0;
  for (const auto& site : team.sites) {
    std::vector<std::string> devs;
    for (const auto& p : team.persons)
      if (p.site_id == site.id && p.has_role(Role::Developer)) devs.push_back(p.id);
    rng.shuffle(devs);
    for (std::size_t i = 0; i + 1 < devs.size(); i += 2) {
      if (rng.chance(0.15)) continue;
      PairStore pair{"w" + std::to_string(pair_no++), {devs[i], devs[i + 1]}, {}};
      if (rng.chance(0.5)) pair.current_work_item = WorkItemRef{rng.between(1, 9), "story"};
      team.pairs.push_back(std::move(pair));
    }
  }
  for (int i = 1; i <= 9; ++i) team.backlog.push_back({i, "Story " + std::to_string(i)});
  return team;
}

Catalog random_catalog(Rng& rng, const std::vector<std::string>& site_ids, int max_media) {
  const int n = rng.between(1, max_media);
  std::vector<int> ranks;
  for (int i = 1; i <= n + 2; ++i) ranks.push_back(i);
  rng.shuffle(ranks);
  Catalog catalog;
  for (int i = 0; i < n; ++i) {
    Medium m;
    m.id = "m" + std::to_string(i);
    m.name = "Medium " + std::to_string(i);
    m.richness_rank = ranks[static_cast<std::size_t>(i)];
    m.requires_colocation = rng.chance(0.2);
    if (rng.chance(0.4)) {
      auto at = rng.subset(site_ids, 0.7);
      m.available_at.insert(at.begin(), at.end());
      if (m.available_at.empty() && !site_ids.empty()) m.available_at.insert(rng.pick(site_ids));
    }
    auto ch = rng.subset(kChannels, 0.35);
    m.extra_channels.insert(ch.begin(), ch.end());
    m.setup_cost = rng.chance(0.2) ? SetupCost::High : SetupCost::Low;
    catalog.push_back(std::move(m));
  }
  return catalog;
}

CommunicationActivity random_activity(Rng& rng, const Catalog& catalog) {
  CommunicationActivity a;
  a.id = "a";
  a.name = "Activity";
  auto tags = catalog_channels(catalog);
  std::vector<std::string> tag_list(tags.begin(), tags.end());
  auto req = rng.subset(tag_list, 0.3);
  a.required_channels.insert(req.begin(), req.end());
  if (rng.chance(0.1)) a.required_channels.insert("telepathy");
  return a;
}

Project random_project(Rng& rng) {
  Project pr;
  pr.team = random_team(rng);
  auto& team = pr.team;
  auto& s = pr.strategy;
  s.project_days = project_days(3);
  std::vector<std::string> site_ids;
  for (const auto& site : team.sites) site_ids.push_back(site.id);
  s.catalog = random_catalog(rng, site_ids);

  std::vector<std::string> person_ids, pair_ids;
  for (const auto& p : team.persons) person_ids.push_back(p.id);
  for (const auto& p : team.pairs) pair_ids.push_back(p.id);
  const bool has_customer = std::any_of(team.persons.begin(), team.persons.end(),
                                        [](const Person& p) { return p.has_role(Role::Customer); });

  const std::vector<std::string> selectors{"all", "pairs", "developer", "coordinator", "customer", "moderator"};
  auto resolvable = [&](const std::string& sel, const std::optional<std::string>& moderator) {
    return !resolve_selector(sel, team, moderator).empty();
  };
  auto pick_selectors = [&](const std::optional<std::string>& moderator) {
    std::vector<std::string> out;
    for (const auto& sel : rng.subset(selectors, 0.3))
      if (resolvable(sel, moderator)) out.push_back(sel);
    if (rng.chance(0.3)) out.push_back(rng.pick(person_ids));
    return out;
  };

  const int docs = rng.between(0, 2);
  for (int i = 0; i < docs; ++i) {
    DocumentSpec d;
    d.document = {"d" + std::to_string(i), "Doc " + std::to_string(i), rng.pick(team.sites).id,
                  {rng.chance(0.8), rng.chance(0.8), rng.chance(0.8)}};
    d.access_medium_id = rng.pick(s.catalog).id;
    d.writers = pick_selectors(std::nullopt);
    d.readers = pick_selectors(std::nullopt);
    team.documents.push_back(std::move(d));
  }

  const auto tags = catalog_channels(s.catalog);
  const std::vector<std::string> tag_list(tags.begin(), tags.end());
  const int activities = rng.between(0, 5);
  for (int i = 0; i < activities; ++i) {
    CommunicationActivity a;
    a.id = "act" + std::to_string(i);
    a.name = "Activity " + std::to_string(i);
    std::vector<ScopeKind> scopes{ScopeKind::WholeTeam, ScopeKind::Custom};
    if (!team.pairs.empty()) scopes.push_back(ScopeKind::Pair);
    if (!team.pairs.empty() && has_customer) scopes.push_back(ScopeKind::PairPlusCustomer);
    a.participants.kind = rng.pick(scopes);
    if (a.participants.kind == ScopeKind::Custom) {
      auto members = rng.subset(person_ids, 0.4);
      auto pairs = rng.subset(pair_ids, 0.4);
      members.insert(members.end(), pairs.begin(), pairs.end());
      if (members.empty()) members.push_back(rng.pick(person_ids));
      a.participants.members = members;
    }
    if (rng.chance(0.25)) a.moderator = rng.pick(person_ids);
    if (rng.chance(0.4)) {
      ScheduledTrigger t;
      const int sessions = rng.between(1, 2);
      for (int k = 0; k < sessions; ++k) {
        Session session{k == 0 && rng.chance(0.5) ? "" : "session" + std::to_string(k),
                        rng.chance(0.5) ? Cadence::EveryMorning : Cadence::EveryEvening,
                        ClockTime{rng.between(7 * 60, 19 * 60)},
                        {}};
        if (rng.chance(0.3)) session.days = rng.subset(s.project_days, 0.6);
        t.sessions.push_back(std::move(session));
      }
      if (rng.chance(0.5)) t.days = rng.subset(s.project_days, 0.7);
      a.trigger = t;
    } else {
      static const std::vector<EventKind> kinds{EventKind::StoryCompleted, EventKind::IterationCompleted,
                                                EventKind::StatusChange, EventKind::AdHoc};
      a.trigger = EventTrigger{rng.pick(kinds)};
    }
    auto req = rng.subset(tag_list, 0.25);
    a.required_channels.insert(req.begin(), req.end());
    if (rng.chance(0.3)) {
      ActivityArtifact art{"art" + std::to_string(i), "Artifact " + std::to_string(i), rng.pick(team.sites).id,
                           pick_selectors(a.moderator), pick_selectors(a.moderator)};
      a.artifacts.push_back(std::move(art));
    }
    const auto& medium = rng.pick(s.catalog);
    MediumAssignment as{a.id, medium.id, {}};
    for (const auto& c : a.required_channels)
      if (!medium.extra_channels.contains(c)) as.added_channels.insert(c);
    s.assignments.push_back(std::move(as));
    s.activities.push_back(std::move(a));
  }
  return pr;
}

AnalysisConfig random_config(Rng& rng, const std::vector<Date>& days) {
  AnalysisConfig c;
  const int start = rng.between(6 * 2, 10 * 2) * 30;
  c.workday_start = ClockTime{start};
  c.workday_end = ClockTime{std::min(start + rng.between(2, 10) * 60, 24 * 60 - 1)};
  static const std::vector<int> slots{30, 45, 60, 90};
  static const std::vector<int> limits{30, 60, 120};
  c.slot_minutes = rng.pick(slots);
  c.staleness_limit_minutes = rng.pick(limits);
  c.acceptance_lookback = rng.chance(0.5) ? Lookback::SameDay : Lookback::AnyTimeBefore;
  c.schedule_tolerance_days = rng.between(0, 2);
  c.timezone_offset_minutes = rng.pick(kOffsets);
  if (rng.chance(0.7)) c.days = days;
  return c;
}

Timeline random_status_timeline(Rng& rng, const TeamSpec& team, const std::vector<Date>& days, int max_events) {
  Timeline out;
  if (team.pairs.empty()) return out;
  auto first_name = [&](const std::string& id) {
    const auto* p = team.find_person(id);
    return p->name.substr(0, p->name.find(' '));
  };
  std::vector<std::string> all_names;
  for (const auto& p : team.persons) all_names.push_back(first_name(p.id));
  const int n = rng.between(0, max_events);
  for (int i = 0; static_cast<int>(out.size()) < n; ++i) {
    const auto& pair = rng.pick(team.pairs);
    const int offset = site_offset(team, pair.member_ids.front());
    Date day = rng.pick(days);
    if (rng.chance(0.05)) day += std::chrono::days{rng.chance(0.5) ? -1 : 1};
    // Coarse minute grid so timestamps collide.
    const int minute = rng.between(5 * 4, 20 * 4) * 15;
    std::string a = first_name(pair.member_ids[0]);
    std::string b = first_name(pair.member_ids[1]);
    std::string raw;
    const int story = rng.between(1, 9);
    switch (rng.between(0, 5)) {
      case 0:
      case 1: raw = "US" + std::to_string(story) + ": " + a + " & " + b; break;
      case 2: raw = "US" + std::to_string(story) + ": " + a + " & " + rng.pick(all_names); break;
      case 3: raw = a + " & " + b; break;
      case 4: raw = "us" + std::to_string(story) + ":" + b + "&" + a; break;
      default: raw = rng.chance(0.5) ? "lunch" : "US" + std::to_string(story) + ": " + a; break;
    }
    CommEvent e;
    e.id = "st" + std::to_string(i);
    e.kind = CommKind::StatusChange;
    e.start = at_local(day, minute, offset);
    e.workstation = rng.chance(0.03) ? std::string("ghost") : pair.id;
    e.payload = StatusPayload{raw, parse_status_text(raw)};
    out.push_back(std::move(e));
    if (static_cast<int>(out.size()) < n && rng.chance(0.1)) {
      CommEvent noise;
      noise.id = "noise" + std::to_string(i);
      noise.kind = CommKind::Chat;
      noise.start = at_local(day, minute, offset);
      out.push_back(std::move(noise));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const CommEvent& x, const CommEvent& y) { return x.start < y.start; });
  return out;
}

Timeline random_acceptance_timeline(Rng& rng, const TeamSpec& team, const std::vector<Date>& days, int max_events) {
  Timeline out;
  std::vector<std::string> ids;
  for (const auto& p : team.persons) ids.push_back(p.id);
  const int n = rng.between(0, max_events);
  for (int i = 0; i < n; ++i) {
    const Date day = rng.pick(days) + std::chrono::days{rng.chance(0.1) ? 1 : 0};
    const Timestamp start = at_local(day, rng.between(0, 24 * 4 - 1) * 15, 0);
    CommEvent e;
    e.start = start;
    const int pick = rng.between(0, 9);
    if (pick < 5) {
      e.id = "c" + std::to_string(i);
      e.kind = CommKind::Commit;
      for (const auto& id : rng.subset(ids, 0.2)) e.participants.insert(id);
      if (e.participants.empty() && rng.chance(0.7)) e.participants.insert(rng.pick(ids));
      CommitPayload payload{"r" + std::to_string(i), "x", "msg", std::nullopt};
      if (rng.chance(0.9)) {
        CommitFields f;
        f.story_id = rng.between(1, 6);
        f.completed_flag = rng.chance(0.6);
        payload.fields = f;
        e.story_id = f.story_id;
      }
      e.payload = payload;
    } else if (pick < 9) {
      e.id = "k" + std::to_string(i);
      e.kind = CommKind::CustomerContact;
      e.end = start + std::chrono::minutes{10};
      for (const auto& id : rng.subset(ids, 0.2)) e.participants.insert(id);
      if (rng.chance(0.6)) e.story_id = rng.between(1, 6);
      e.payload = NotePayload{"contact"};
    } else {
      e.id = "o" + std::to_string(i);
      e.kind = CommKind::Call;
      e.end = start + std::chrono::minutes{5};
      for (const auto& id : rng.subset(ids, 0.3)) e.participants.insert(id);
      if (rng.chance(0.5)) e.story_id = rng.between(1, 6);
    }
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), [](const CommEvent& x, const CommEvent& y) { return x.start < y.start; });
  return out;
}

Timeline random_meeting_timeline(Rng& rng, const CommunicationStrategy& strategy, const std::vector<Date>& days,
                                 int max_events) {
  std::vector<std::string> names{"stray meeting"};
  for (const auto& a : strategy.activities) {
    names.push_back(a.id);
    names.push_back(a.name);
    if (const auto* s = std::get_if<ScheduledTrigger>(&a.trigger))
      for (const auto& session : s->sessions)
        if (!session.name.empty()) names.push_back(session.name);
  }
  Timeline out;
  const int n = rng.between(0, max_events);
  for (int i = 0; i < n; ++i) {
    const Date day = rng.pick(days) + std::chrono::days{rng.between(-2, 2) * (rng.chance(0.4) ? 1 : 0)};
    CommEvent e;
    e.id = "mt" + std::to_string(i);
    e.kind = CommKind::Meeting;
    e.start = at_local(day, rng.between(0, 24 * 4 - 1) * 15, 0);
    e.end = e.start + std::chrono::minutes{30};
    std::string name = rng.pick(names);
    if (rng.chance(0.1)) std::transform(name.begin(), name.end(), name.begin(), ::toupper);
    e.payload = MeetingPayload{name};
    out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), [](const CommEvent& x, const CommEvent& y) { return x.start < y.start; });
  return out;
}

}  // namespace flowkit::testkit

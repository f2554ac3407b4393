#include "flowkit/map_builder.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "flowkit/error.hpp"

namespace flowkit {
namespace {

constexpr const char* kSharedDesktop = "shared-desktop";

const Medium* find_medium(const Catalog& catalog, std::string_view id) {
  for (const auto& m : catalog)
    if (m.id == id) return &m;
  return nullptr;
}

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& t) { return t.id == id; });
  return it == items.end() ? nullptr : &*it;
}

std::vector<MediumInfo> media_info(const Catalog& catalog) {
  std::vector<MediumInfo> out;
  for (const auto& m : catalog) out.push_back({m.id, m.name, m.richness_rank, m.extra_channels});
  return out;
}

// Skeleton map carrying the team's stores; used for validation and as the
// starting point of every built map.
FlowMap team_map(const TeamSpec& team, const Catalog& catalog) {
  FlowMap map;
  map.title = team.name;
  map.sites = team.sites;
  map.persons = team.persons;
  map.pairs = team.pairs;
  for (const auto& d : team.documents) map.documents.push_back(d.document);
  map.media = media_info(catalog);
  return map;
}

std::optional<std::string> store_site(const TeamSpec& team, std::string_view id) {
  if (const auto* p = team.find_person(id)) return p->site_id;
  if (const auto* pair = team.find_pair(id)) {
    if (!pair->member_ids.empty())
      if (const auto* p = team.find_person(pair->member_ids.front())) return p->site_id;
    return std::nullopt;
  }
  for (const auto& d : team.documents)
    if (d.document.id == id) return d.document.responsible_site_id;
  return std::nullopt;
}

int rank_of(const Catalog& catalog, const std::optional<std::string>& medium_id) {
  if (!medium_id) return 1;
  auto it = std::find_if(catalog.begin(), catalog.end(), [&](const Medium& m) { return m.id == *medium_id; });
  return it == catalog.end() ? 1 : it->richness_rank;
}

using Edge = std::pair<std::string, std::string>;

Edge make_edge(const std::string& a, const std::string& b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Who talks to whom during an activity.
std::vector<Edge> activity_edges(const CommunicationActivity& activity, const TeamSpec& team) {
  const auto parties = resolve_parties(activity, team);
  std::vector<Edge> edges;
  if (activity.moderator) {
    for (const auto& p : parties)
      if (p != *activity.moderator) edges.push_back(make_edge(*activity.moderator, p));
  } else if (activity.participants.kind == ScopeKind::PairPlusCustomer) {
    for (const auto& pair : team.pairs)
      for (const auto& person : team.persons)
        if (person.has_role(Role::Customer)) edges.push_back(make_edge(pair.id, person.id));
  } else {
    for (std::size_t i = 0; i < parties.size(); ++i)
      for (std::size_t j = i + 1; j < parties.size(); ++j) edges.push_back(make_edge(parties[i], parties[j]));
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

Strength edge_strength(const Edge& e, const CommunicationActivity& activity, const TeamSpec& team) {
  if (team.find_pair(e.first) && team.find_pair(e.second) && store_site(team, e.first) == store_site(team, e.second))
    return Strength::Strong;
  return is_regular(activity.trigger) ? Strength::Regular : Strength::Weak;
}

void sort_flows(std::vector<Flow>& flows) {
  std::stable_sort(flows.begin(), flows.end(), [](const Flow& a, const Flow& b) {
    return std::tie(a.from, a.to, a.state) < std::tie(b.from, b.to, b.state);
  });
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

void check_selectors(const std::vector<std::string>& selectors, const TeamSpec& team,
                     const std::optional<std::string>& moderator, const std::string& owner, Issues& issues) {
  for (const auto& s : selectors)
    if (resolve_selector(s, team, moderator).empty())
      issues.push_back({"unresolved-selector", owner, "selector '" + s + "' matches nobody"});
}

}  // namespace

const Site* TeamSpec::find_site(std::string_view id) const { return find_by_id(sites, id); }
const Person* TeamSpec::find_person(std::string_view id) const { return find_by_id(persons, id); }
const PairStore* TeamSpec::find_pair(std::string_view id) const { return find_by_id(pairs, id); }

std::vector<std::string> resolve_selector(std::string_view selector, const TeamSpec& team,
                                          const std::optional<std::string>& moderator) {
  std::vector<std::string> out;
  if (selector == "all") {
    for (const auto& p : team.persons) out.push_back(p.id);
  } else if (selector == "pairs") {
    for (const auto& p : team.pairs) out.push_back(p.id);
  } else if (selector == "moderator" && moderator) {
    out.push_back(*moderator);
  } else if (auto role = parse_role(selector)) {
    for (const auto& p : team.persons)
      if (p.has_role(*role)) out.push_back(p.id);
  } else if (team.find_person(selector) || team.find_pair(selector)) {
    out.emplace_back(selector);
  }
  return out;
}

std::vector<std::string> resolve_parties(const CommunicationActivity& activity, const TeamSpec& team) {
  std::vector<std::string> parties;
  switch (activity.participants.kind) {
    case ScopeKind::WholeTeam:
      for (const auto& p : team.persons) parties.push_back(p.id);
      break;
    case ScopeKind::Pair:
      for (const auto& p : team.pairs) parties.push_back(p.id);
      break;
    case ScopeKind::PairPlusCustomer:
      for (const auto& p : team.pairs) parties.push_back(p.id);
      for (const auto& p : team.persons)
        if (p.has_role(Role::Customer)) parties.push_back(p.id);
      break;
    case ScopeKind::Custom:
      for (const auto& m : activity.participants.members)
        if (team.find_person(m) || team.find_pair(m)) parties.push_back(m);
      break;
  }
  if (activity.moderator && std::find(parties.begin(), parties.end(), *activity.moderator) == parties.end())
    parties.insert(parties.begin(), *activity.moderator);
  return parties;
}

Issues validate_team(const TeamSpec& team) {
  Issues issues;
  for (auto& issue : validate_map(team_map(team, {})))
    if (issue.code != "unknown-contact-channel") issues.push_back(std::move(issue));
  std::set<int> stories;
  for (const auto& w : team.backlog) {
    if (w.story_id <= 0) issues.push_back({"invalid-work-item", std::to_string(w.story_id), "story id must be positive"});
    if (!stories.insert(w.story_id).second)
      issues.push_back({"duplicate-story", std::to_string(w.story_id), "story id used twice in the backlog"});
  }
  return issues;
}

Issues validate_project(const TeamSpec& team, const CommunicationStrategy& strategy) {
  Issues issues = validate_map(team_map(team, strategy.catalog));
  for (auto& issue : validate_team(team))
    if (issue.code == "invalid-work-item" || issue.code == "duplicate-story") issues.push_back(std::move(issue));
  for (auto& issue : validate_strategy(strategy)) issues.push_back(std::move(issue));

  for (const auto& m : strategy.catalog)
    for (const auto& s : m.available_at)
      if (!team.find_site(s)) issues.push_back({"dangling-site", m.id, "medium available at unknown site '" + s + "'"});

  for (const auto& d : team.documents) {
    if (d.access_medium_id && !strategy.find_medium(*d.access_medium_id))
      issues.push_back({"dangling-medium", d.document.id, "unknown access medium '" + *d.access_medium_id + "'"});
    check_selectors(d.writers, team, std::nullopt, d.document.id, issues);
    check_selectors(d.readers, team, std::nullopt, d.document.id, issues);
    if (!d.access_medium_id) {
      bool remote = false;
      for (const auto* list : {&d.writers, &d.readers})
        for (const auto& sel : *list)
          for (const auto& id : resolve_selector(sel, team))
            if (store_site(team, id) != d.document.responsible_site_id) remote = true;
      if (remote) issues.push_back({"missing-medium", d.document.id, "remote users but no access medium"});
    }
  }

  bool has_customer = std::any_of(team.persons.begin(), team.persons.end(),
                                  [](const Person& p) { return p.has_role(Role::Customer); });
  for (const auto& a : strategy.activities) {
    if (a.moderator && !team.find_person(*a.moderator))
      issues.push_back({"dangling-reference", a.id, "moderator '" + *a.moderator + "' is not a team member"});
    switch (a.participants.kind) {
      case ScopeKind::Pair:
        if (team.pairs.empty()) issues.push_back({"unresolvable-scope", a.id, "pair scope but the team has no pairs"});
        break;
      case ScopeKind::PairPlusCustomer:
        if (team.pairs.empty() || !has_customer)
          issues.push_back({"unresolvable-scope", a.id, "pair-plus-customer scope needs pairs and a customer"});
        break;
      case ScopeKind::Custom:
        for (const auto& m : a.participants.members)
          if (!team.find_person(m) && !team.find_pair(m))
            issues.push_back({"unresolvable-scope", a.id, "participant '" + m + "' is not a person or pair"});
        break;
      case ScopeKind::WholeTeam:
        break;
    }
    for (const auto& art : a.artifacts) {
      if (!team.find_site(art.responsible_site_id))
        issues.push_back({"dangling-site", art.id, "artifact site '" + art.responsible_site_id + "' does not exist"});
      check_selectors(art.writers, team, a.moderator, art.id, issues);
      check_selectors(art.readers, team, a.moderator, art.id, issues);
    }
  }
  return issues;
}

WidthClass flow_width(Strength strength, int medium_richness_rank) {
  const bool rich = medium_richness_rank <= 2;
  switch (strength) {
    case Strength::Strong: return WidthClass::Thick;
    case Strength::Regular: return rich ? WidthClass::Thick : WidthClass::Medium;
    case Strength::Weak: return rich ? WidthClass::Medium : WidthClass::Thin;
  }
  return WidthClass::Medium;
}

FlowMap build_target_map(const TeamSpec& team, const CommunicationStrategy& strategy) {
  if (auto issues = validate_project(team, strategy); !issues.empty())
    throw Error(ErrorCode::InvalidInput, "cannot build target map: " + describe(issues.front()) +
                                             (issues.size() > 1 ? " (+" + std::to_string(issues.size() - 1) + " more)" : ""));

  FlowMap map = team_map(team, strategy.catalog);
  map.kind = MapKind::OverallTarget;
  if (!strategy.project_days.empty())
    map.as_of = std::chrono::sys_seconds{*std::min_element(strategy.project_days.begin(), strategy.project_days.end())};

  // Yellow pages: members inherit their pair's work item.
  for (const auto& pair : map.pairs) {
    if (!pair.current_work_item) continue;
    for (auto& person : map.persons)
      if (std::find(pair.member_ids.begin(), pair.member_ids.end(), person.id) != pair.member_ids.end() &&
          !person.yellow_pages.current_work_item)
        person.yellow_pages.current_work_item = pair.current_work_item;
  }

  struct Accumulated {
    Strength strength = Strength::Weak;
    const CommunicationActivity* inducer = nullptr;
    std::vector<std::string> labels;
  };
  std::map<Edge, Accumulated> regular;
  for (const auto& activity : strategy.activities) {
    for (const auto& edge : activity_edges(activity, team)) {
      const Strength s = edge_strength(edge, activity, team);
      auto [it, fresh] = regular.try_emplace(edge);
      auto& acc = it->second;
      if (fresh || s > acc.strength) {
        acc.strength = s;
        acc.inducer = &activity;
      }
      if (std::find(acc.labels.begin(), acc.labels.end(), activity.name) == acc.labels.end())
        acc.labels.push_back(activity.name);
    }
  }

  for (const auto& [edge, acc] : regular) {
    Flow f;
    f.from = edge.first;
    f.to = edge.second;
    f.state = InformationState::Fluid;
    f.direction = Direction::BothWays;
    f.strength = acc.strength;
    if (store_site(team, edge.first) != store_site(team, edge.second))
      f.medium_id = strategy.assignment_for(acc.inducer->id)->medium_id;
    f.width = flow_width(f.strength, rank_of(strategy.catalog, f.medium_id));
    f.label = join(acc.labels, ", ");
    map.flows.push_back(std::move(f));
  }

  for (const auto& d : team.documents) {
    const auto& doc = d.document;
    auto medium_for = [&](const std::string& store) -> std::optional<std::string> {
      if (store_site(team, store) == doc.responsible_site_id) return std::nullopt;
      return d.access_medium_id;
    };
    std::set<std::string> writers, readers;
    for (const auto& sel : d.writers)
      for (auto& id : resolve_selector(sel, team)) writers.insert(std::move(id));
    for (const auto& sel : d.readers)
      for (auto& id : resolve_selector(sel, team)) readers.insert(std::move(id));
    for (const auto& w : writers) {
      Flow f{w, doc.id, InformationState::Fluid, Direction::OneWay, Strength::Regular, WidthClass::Medium,
             medium_for(w), "writes"};
      f.width = flow_width(f.strength, rank_of(strategy.catalog, f.medium_id));
      map.flows.push_back(std::move(f));
    }
    for (const auto& r : readers) {
      Flow f{doc.id, r, doc.state(), Direction::OneWay, Strength::Regular, WidthClass::Medium, medium_for(r), "reads"};
      f.width = flow_width(f.strength, rank_of(strategy.catalog, f.medium_id));
      map.flows.push_back(std::move(f));
    }
  }

  sort_flows(map.flows);
  return map;
}

FlowMap build_activity_map(const CommunicationActivity& activity, const MediumAssignment& assignment,
                           const TeamSpec& team, const Catalog& catalog) {
  if (assignment.activity_id != activity.id)
    throw Error(ErrorCode::InvalidInput, "assignment for '" + assignment.activity_id + "' used with '" + activity.id + "'");
  if (std::none_of(catalog.begin(), catalog.end(), [&](const Medium& m) { return m.id == assignment.medium_id; }))
    throw Error(ErrorCode::InvalidInput, "unknown medium '" + assignment.medium_id + "'");
  if (activity.moderator && !team.find_person(*activity.moderator))
    throw Error(ErrorCode::InvalidInput, "unknown moderator '" + *activity.moderator + "'");
  for (const auto& m : activity.participants.members)
    if (activity.participants.kind == ScopeKind::Custom && !team.find_person(m) && !team.find_pair(m))
      throw Error(ErrorCode::InvalidInput, "unknown participant '" + m + "' in '" + activity.id + "'");

  std::set<std::string> person_ids, pair_ids;
  auto include = [&](const std::string& id) {
    if (team.find_person(id)) {
      person_ids.insert(id);
    } else if (const auto* pair = team.find_pair(id)) {
      pair_ids.insert(id);
      person_ids.insert(pair->member_ids.begin(), pair->member_ids.end());
    }
  };
  for (const auto& p : resolve_parties(activity, team)) include(p);

  struct ArtifactUse {
    Document document;
    std::set<std::string> writers, readers;
  };
  std::vector<ArtifactUse> artifacts;
  for (const auto& art : activity.artifacts) {
    if (!team.find_site(art.responsible_site_id))
      throw Error(ErrorCode::InvalidInput, "artifact '" + art.id + "' has unknown site");
    ArtifactUse use{{art.id, art.name, art.responsible_site_id, {true, true, true}}, {}, {}};
    for (const auto& sel : art.writers)
      for (auto& id : resolve_selector(sel, team, activity.moderator)) use.writers.insert(std::move(id));
    for (const auto& sel : art.readers)
      for (auto& id : resolve_selector(sel, team, activity.moderator)) use.readers.insert(std::move(id));
    for (const auto* set : {&use.writers, &use.readers})
      for (const auto& id : *set) include(id);
    artifacts.push_back(std::move(use));
  }

  FlowMap map;
  map.kind = MapKind::ActivitySpecific;
  map.title = activity.name;
  map.media = media_info(catalog);
  std::set<std::string> site_ids;
  for (const auto& p : team.persons)
    if (person_ids.contains(p.id)) {
      map.persons.push_back(p);
      site_ids.insert(p.site_id);
    }
  for (const auto& p : team.pairs)
    if (pair_ids.contains(p.id)) map.pairs.push_back(p);
  for (const auto& a : artifacts) {
    map.documents.push_back(a.document);
    site_ids.insert(a.document.responsible_site_id);
  }
  for (const auto& s : team.sites)
    if (site_ids.contains(s.id)) map.sites.push_back(s);

  const int rank = rank_of(catalog, assignment.medium_id);
  auto medium_between = [&](const std::optional<std::string>& a, const std::optional<std::string>& b) {
    return a != b ? std::optional<std::string>{assignment.medium_id} : std::nullopt;
  };

  for (const auto& edge : activity_edges(activity, team)) {
    Flow f;
    f.from = edge.first;
    f.to = edge.second;
    f.strength = edge_strength(edge, activity, team);
    f.medium_id = medium_between(store_site(team, edge.first), store_site(team, edge.second));
    f.width = flow_width(f.strength, f.medium_id ? rank : 1);
    f.label = activity.name;
    map.flows.push_back(std::move(f));
  }
  const Strength artifact_strength = is_regular(activity.trigger) ? Strength::Regular : Strength::Weak;
  for (const auto& a : artifacts) {
    const auto& doc_site = a.document.responsible_site_id;
    for (const auto& w : a.writers) {
      auto medium = medium_between(store_site(team, w), doc_site);
      map.flows.push_back({w, a.document.id, InformationState::Fluid, Direction::OneWay, artifact_strength,
                           flow_width(artifact_strength, medium ? rank : 1), medium, "writes"});
    }
    for (const auto& r : a.readers) {
      auto medium = medium_between(store_site(team, r), doc_site);
      map.flows.push_back({a.document.id, r, a.document.state(), Direction::OneWay, artifact_strength,
                           flow_width(artifact_strength, medium ? rank : 1), medium, "reads"});
    }
  }

  // Desktop sharing exposes a pair's work item to its remote partners.
  const auto* medium = find_medium(catalog, assignment.medium_id);
  const bool shares_desktop = assignment.added_channels.contains(kSharedDesktop) ||
                              (medium && medium->extra_channels.contains(kSharedDesktop));
  if (shares_desktop) {
    std::map<std::string, std::set<std::string>> remote_editors;
    for (const auto& f : map.flows) {
      if (!f.medium_id || f.label != activity.name) continue;
      if (map.find_pair(f.from)) remote_editors[f.from].insert(f.to);
      if (map.find_pair(f.to)) remote_editors[f.to].insert(f.from);
    }
    for (const auto& [pair_id, editors] : remote_editors) {
      const auto* pair = team.find_pair(pair_id);
      const auto site = store_site(team, pair_id);
      Document item{pair_id + "-work-item",
                    pair->current_work_item ? "US" + std::to_string(pair->current_work_item->story_id) + " " +
                                                  pair->current_work_item->title
                                            : "Work item of " + pair_id,
                    *site,
                    {true, true, true}};
      map.flows.push_back({pair_id, item.id, InformationState::Fluid, Direction::OneWay, artifact_strength,
                           flow_width(artifact_strength, 1), std::nullopt, "edits"});
      for (const auto& e : editors)
        map.flows.push_back({e, item.id, InformationState::Fluid, Direction::OneWay, artifact_strength,
                             flow_width(artifact_strength, rank), assignment.medium_id, "edits via shared desktop"});
      map.documents.push_back(std::move(item));
    }
  }
  sort_flows(map.flows);
  return map;
}

std::vector<FlowMap> build_activity_maps(const TeamSpec& team, const CommunicationStrategy& strategy) {
  if (auto issues = validate_project(team, strategy); !issues.empty())
    throw Error(ErrorCode::InvalidInput, "cannot build activity maps: " + describe(issues.front()));
  std::vector<FlowMap> maps;
  for (const auto& a : strategy.activities) maps.push_back(build_activity_map(a, *strategy.assignment_for(a.id), team, strategy.catalog));
  return maps;
}

}  // namespace flowkit

#include "flowkit/flow_model.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "strings.hpp"

namespace flowkit {
namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& t) { return t.id == id; });
  return it == items.end() ? nullptr : &*it;
}

}  // namespace

InformationState classify_state(const SolidityCriteria& c) {
  return c.long_term_accessible && c.repeatably_accessible && c.third_party_comprehensible
             ? InformationState::Solid
             : InformationState::Fluid;
}

const Site* FlowMap::find_site(std::string_view id) const { return find_by_id(sites, id); }
const Person* FlowMap::find_person(std::string_view id) const { return find_by_id(persons, id); }
const PairStore* FlowMap::find_pair(std::string_view id) const { return find_by_id(pairs, id); }
const Document* FlowMap::find_document(std::string_view id) const { return find_by_id(documents, id); }
const MediumInfo* FlowMap::find_medium(std::string_view id) const { return find_by_id(media, id); }

std::optional<std::string> FlowMap::site_of_store(std::string_view store_id) const {
  if (auto* p = find_person(store_id)) return p->site_id;
  if (auto* d = find_document(store_id)) return d->responsible_site_id;
  if (auto* pair = find_pair(store_id)) {
    if (pair->member_ids.empty()) return std::nullopt;
    if (auto* first = find_person(pair->member_ids.front())) return first->site_id;
  }
  return std::nullopt;
}

Issues validate_map(const FlowMap& map) {
  Issues issues;
  auto add = [&](std::string code, std::string id, std::string msg) {
    issues.push_back({std::move(code), std::move(id), std::move(msg)});
  };

  std::set<std::string> site_ids;
  for (const auto& s : map.sites) {
    if (!site_ids.insert(s.id).second) add("duplicate-id", s.id, "site id used twice");
    if (s.timezone_offset_minutes < -840 || s.timezone_offset_minutes > 840)
      add("timezone-range", s.id, "timezone offset outside [-840, 840] minutes");
  }

  std::set<std::string> store_ids;
  auto claim = [&](const std::string& id) {
    if (!store_ids.insert(id).second) add("duplicate-id", id, "store id used twice");
  };
  for (const auto& p : map.persons) claim(p.id);
  for (const auto& p : map.pairs) claim(p.id);
  for (const auto& d : map.documents) claim(d.id);

  std::set<std::string> medium_ids;
  std::set<std::string> channel_names;
  for (const auto& m : map.media) {
    if (!medium_ids.insert(m.id).second) add("duplicate-id", m.id, "medium id used twice");
    channel_names.insert(m.id);
    channel_names.insert(m.channels.begin(), m.channels.end());
  }

  auto check_work_item = [&](const std::optional<WorkItemRef>& w, const std::string& owner) {
    if (w && w->story_id <= 0) add("invalid-work-item", owner, "story id must be positive");
  };

  for (const auto& p : map.persons) {
    if (!site_ids.contains(p.site_id))
      add("dangling-site", p.id, "person site '" + p.site_id + "' does not exist");
    for (const auto& [channel, address] : p.yellow_pages.contact) {
      if (!channel_names.contains(channel))
        add("unknown-contact-channel", p.id, "contact channel '" + channel + "' is not in the media catalog");
    }
    check_work_item(p.yellow_pages.current_work_item, p.id);
  }

  std::map<std::string, int> pair_count;
  for (const auto& pair : map.pairs) {
    check_work_item(pair.current_work_item, pair.id);
    if (pair.member_ids.size() != 2) {
      add("pair-size", pair.id, "a pair store needs exactly two members");
    }
    std::optional<std::string> site;
    bool split = false;
    for (const auto& member : pair.member_ids) {
      const Person* person = map.find_person(member);
      if (!person) {
        add("dangling-reference", pair.id, "pair member '" + member + "' does not exist");
        continue;
      }
      ++pair_count[member];
      if (site && *site != person->site_id) split = true;
      site = person->site_id;
    }
    if (pair.member_ids.size() == 2 && pair.member_ids[0] == pair.member_ids[1])
      add("pair-size", pair.id, "pair members must be distinct");
    if (split) add("pair-split-site", pair.id, "pair members sit at different sites");
  }
  for (const auto& [person, count] : pair_count) {
    if (count > 1) add("double-pairing", person, "person belongs to more than one pair");
  }

  for (const auto& d : map.documents) {
    if (!site_ids.contains(d.responsible_site_id))
      add("dangling-site", d.id, "responsible site '" + d.responsible_site_id + "' does not exist");
  }

  for (const auto& f : map.flows) {
    const std::string flow_id = f.from + "->" + f.to;
    auto from_site = map.site_of_store(f.from);
    auto to_site = map.site_of_store(f.to);
    bool endpoints_ok = true;
    for (const auto* end : {&f.from, &f.to}) {
      if (!store_ids.contains(*end)) {
        add("dangling-reference", flow_id, "flow endpoint '" + *end + "' does not exist");
        endpoints_ok = false;
      }
    }
    if (f.medium_id && !medium_ids.contains(*f.medium_id))
      add("dangling-medium", flow_id, "medium '" + *f.medium_id + "' is not in the map");
    if (endpoints_ok && from_site && to_site && *from_site != *to_site && !f.medium_id)
      add("missing-medium", flow_id, "cross-site flow without a medium");
  }
  return issues;
}

std::optional<Timestamp> local_time(const FlowMap& map, const Person& person, Timestamp now) {
  const Site* site = map.find_site(person.site_id);
  if (!site) return std::nullopt;
  return now + std::chrono::minutes{site->timezone_offset_minutes};
}

const char* to_string(InformationState s) { return s == InformationState::Solid ? "solid" : "fluid"; }

const char* to_string(Role r) {
  switch (r) {
    case Role::Developer: return "developer";
    case Role::Coordinator: return "coordinator";
    case Role::Customer: return "customer";
    case Role::Moderator: return "moderator";
  }
  return "?";
}

const char* to_string(Direction d) { return d == Direction::OneWay ? "one-way" : "both-ways"; }

const char* to_string(Strength s) {
  switch (s) {
    case Strength::Weak: return "weak";
    case Strength::Regular: return "regular";
    case Strength::Strong: return "strong";
  }
  return "?";
}

const char* to_string(WidthClass w) {
  switch (w) {
    case WidthClass::Thin: return "thin";
    case WidthClass::Medium: return "medium";
    case WidthClass::Thick: return "thick";
  }
  return "?";
}

const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::OverallTarget: return "overall-target";
    case MapKind::ActivitySpecific: return "activity-specific";
    case MapKind::Current: return "current";
  }
  return "?";
}

std::optional<Role> parse_role(std::string_view t) {
  static constexpr Role all[] = {Role::Developer, Role::Coordinator, Role::Customer, Role::Moderator};
  return detail::parse_enum(t, all);
}
std::optional<Strength> parse_strength(std::string_view t) {
  static constexpr Strength all[] = {Strength::Weak, Strength::Regular, Strength::Strong};
  return detail::parse_enum(t, all);
}
std::optional<WidthClass> parse_width(std::string_view t) {
  static constexpr WidthClass all[] = {WidthClass::Thin, WidthClass::Medium, WidthClass::Thick};
  return detail::parse_enum(t, all);
}
std::optional<MapKind> parse_map_kind(std::string_view t) {
  static constexpr MapKind all[] = {MapKind::OverallTarget, MapKind::ActivitySpecific, MapKind::Current};
  return detail::parse_enum(t, all);
}

}  // namespace flowkit

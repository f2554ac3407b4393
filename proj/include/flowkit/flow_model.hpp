#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flowkit/issue.hpp"
#include "flowkit/timeutil.hpp"

namespace flowkit {

/// The three criteria that make information solid. Each one is declared
/// independently; nothing is derived from the others.
struct SolidityCriteria {
  bool long_term_accessible = false;
  bool repeatably_accessible = false;
  bool third_party_comprehensible = false;

  friend bool operator==(const SolidityCriteria&, const SolidityCriteria&) = default;
};

enum class InformationState { Solid, Fluid };

/// Solid iff every criterion holds.
InformationState classify_state(const SolidityCriteria& criteria);

struct Site {
  std::string id;
  std::string name;
  int timezone_offset_minutes = 0;  // [-840, +840]

  friend bool operator==(const Site&, const Site&) = default;
};

enum class Role { Developer, Coordinator, Customer, Moderator };

struct WorkItemRef {
  int story_id = 0;
  std::string title;

  friend bool operator==(const WorkItemRef&, const WorkItemRef&) = default;
};

/// Per-person awareness data shown next to the map. Local time is not stored;
/// it follows from the person's site, see local_time().
struct YellowPages {
  std::optional<std::string> picture_ref;
  std::map<std::string, std::string> contact;  // channel -> address
  std::optional<std::string> status;
  std::vector<std::string> skills;
  std::optional<WorkItemRef> current_work_item;

  friend bool operator==(const YellowPages&, const YellowPages&) = default;
};

/// A fluid store: knowledge in one person's head, located at their site.
struct Person {
  std::string id;
  std::string name;
  std::string site_id;
  std::set<Role> roles;
  YellowPages yellow_pages;

  bool has_role(Role r) const { return roles.contains(r); }

  friend bool operator==(const Person&, const Person&) = default;
};

/// Two co-located pair programmers sharing a work item. The id doubles as the
/// workstation id that status messages are logged under.
struct PairStore {
  std::string id;
  std::vector<std::string> member_ids;  // exactly two
  std::optional<WorkItemRef> current_work_item;

  friend bool operator==(const PairStore&, const PairStore&) = default;
};

/// A solid store. Its site is the site responsible for the content, not the
/// machine hosting it.
struct Document {
  std::string id;
  std::string name;
  std::string responsible_site_id;
  SolidityCriteria criteria;

  InformationState state() const { return classify_state(criteria); }

  friend bool operator==(const Document&, const Document&) = default;
};

enum class Direction { OneWay, BothWays };
enum class Strength { Weak, Regular, Strong };
enum class WidthClass { Thin, Medium, Thick };

struct Flow {
  std::string from;
  std::string to;
  InformationState state = InformationState::Fluid;
  Direction direction = Direction::BothWays;
  Strength strength = Strength::Regular;
  WidthClass width = WidthClass::Medium;
  std::optional<std::string> medium_id;  // required iff endpoints on different sites
  std::optional<std::string> label;

  friend bool operator==(const Flow&, const Flow&) = default;
};

/// Media as far as a map needs them: names for edge labels and channel tags
/// for validating yellow-pages contacts.
struct MediumInfo {
  std::string id;
  std::string name;
  int richness_rank = 1;
  std::set<std::string> channels;

  friend bool operator==(const MediumInfo&, const MediumInfo&) = default;
};

enum class MapKind { OverallTarget, ActivitySpecific, Current };

struct FlowMap {
  MapKind kind = MapKind::OverallTarget;
  std::string title;
  std::vector<Site> sites;
  std::vector<Person> persons;
  std::vector<PairStore> pairs;
  std::vector<Document> documents;
  std::vector<Flow> flows;
  std::vector<MediumInfo> media;
  Timestamp as_of{};

  const Site* find_site(std::string_view id) const;
  const Person* find_person(std::string_view id) const;
  const PairStore* find_pair(std::string_view id) const;
  const Document* find_document(std::string_view id) const;
  const MediumInfo* find_medium(std::string_view id) const;

  // Site of any store (person, pair or document); nullopt for unknown ids.
  std::optional<std::string> site_of_store(std::string_view store_id) const;

  friend bool operator==(const FlowMap&, const FlowMap&) = default;
};

/// Every broken invariant of `map`; empty iff the map is well formed.
Issues validate_map(const FlowMap& map);

/// Wall-clock time of `person` at instant `now`, from their site's offset.
std::optional<Timestamp> local_time(const FlowMap& map, const Person& person, Timestamp now);

const char* to_string(InformationState s);
const char* to_string(Role r);
const char* to_string(Direction d);
const char* to_string(Strength s);
const char* to_string(WidthClass w);
const char* to_string(MapKind k);

std::optional<Role> parse_role(std::string_view text);
std::optional<Strength> parse_strength(std::string_view text);
std::optional<WidthClass> parse_width(std::string_view text);
std::optional<MapKind> parse_map_kind(std::string_view text);

}  // namespace flowkit

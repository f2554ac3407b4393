#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "flowkit/issue.hpp"
#include "flowkit/timeutil.hpp"

namespace flowkit {

enum class SetupCost { Low, Medium, High };
enum class MonetaryCost { Free, Paid };

/// A communication medium placed on the richness continuum. Rank 1 is the
/// richest; ranks are unique within a catalog. An empty `available_at` means
/// the medium is available at every site.
struct Medium {
  std::string id;
  std::string name;
  int richness_rank = 1;
  bool requires_colocation = false;
  std::set<std::string> available_at;
  std::set<std::string> extra_channels;
  SetupCost setup_cost = SetupCost::Low;
  MonetaryCost monetary_cost = MonetaryCost::Free;

  bool available_for(const std::set<std::string>& sites) const;

  friend bool operator==(const Medium&, const Medium&) = default;
};

using Catalog = std::vector<Medium>;

enum class Cadence { EveryMorning, EveryEvening, StartOfIteration, Custom };
enum class EventKind { StoryCompleted, IterationCompleted, StatusChange, AdHoc };

// One recurring meeting of a scheduled activity. `name` is what meeting
// events are matched against; empty means the activity's id or name.
struct Session {
  std::string name;
  Cadence cadence = Cadence::EveryMorning;
  ClockTime time_of_day;
  std::vector<Date> days;  // empty: the trigger's days

  friend bool operator==(const Session&, const Session&) = default;
};

// Most activities have a single session; "stand-up / wrap-up" has two.
struct ScheduledTrigger {
  std::vector<Session> sessions;
  std::vector<Date> days;  // empty: every project day

  friend bool operator==(const ScheduledTrigger&, const ScheduledTrigger&) = default;
};

struct EventTrigger {
  EventKind event_kind = EventKind::AdHoc;

  friend bool operator==(const EventTrigger&, const EventTrigger&) = default;
};

using Trigger = std::variant<ScheduledTrigger, EventTrigger>;

/// Scheduled activities and event-driven ones other than ad hoc make their
/// participants regular communicators.
bool is_regular(const Trigger& trigger);

enum class ScopeKind { WholeTeam, Pair, PairPlusCustomer, Custom };

struct ParticipantScope {
  ScopeKind kind = ScopeKind::WholeTeam;
  std::vector<std::string> members;  // Custom only: person or pair ids

  friend bool operator==(const ParticipantScope&, const ParticipantScope&) = default;
};

/// A solid store that exists for one activity (e.g. the shared mind map of a
/// planning game). Writer/reader entries are selectors, see map_builder.hpp.
struct ActivityArtifact {
  std::string id;
  std::string name;
  std::string responsible_site_id;
  std::vector<std::string> writers;
  std::vector<std::string> readers;

  friend bool operator==(const ActivityArtifact&, const ActivityArtifact&) = default;
};

struct CommunicationActivity {
  std::string id;
  std::string name;
  std::string goal;
  Trigger trigger = EventTrigger{};
  ParticipantScope participants;
  std::set<std::string> required_channels;  // beyond base audio/video
  std::optional<std::string> moderator;     // person id steering the activity
  std::vector<ActivityArtifact> artifacts;

  friend bool operator==(const CommunicationActivity&, const CommunicationActivity&) = default;
};

struct MediumAssignment {
  std::string activity_id;
  std::string medium_id;
  std::set<std::string> added_channels;

  friend bool operator==(const MediumAssignment&, const MediumAssignment&) = default;
};

struct CommunicationStrategy {
  std::vector<CommunicationActivity> activities;
  std::vector<MediumAssignment> assignments;
  Catalog catalog;
  std::vector<Date> project_days;

  const CommunicationActivity* find_activity(std::string_view id) const;
  const MediumAssignment* assignment_for(std::string_view activity_id) const;
  const Medium* find_medium(std::string_view id) const;

  // Days a scheduled activity is expected on: its own list or every project day.
  std::vector<Date> scheduled_days(const ScheduledTrigger& trigger) const;
  // Same, narrowed to the session's own list when it has one.
  std::vector<Date> scheduled_days(const ScheduledTrigger& trigger, const Session& session) const;
};

/// Daft-Lengel ordering with HQ video inserted below face to face.
Catalog default_catalog();

/// Catalog sorted richest first. Throws Error(DuplicateRank) on shared ranks
/// and Error(InvalidInput) on an empty catalog.
std::vector<Medium> rank_media(const Catalog& catalog);

/// Union of every channel tag offered anywhere in the catalog; these are the
/// channels that may be added on top of a medium.
std::set<std::string> catalog_channels(const Catalog& catalog);

/// Richest medium that is available at every involved site, respects
/// colocation and can carry the required channels (natively or as add-ons).
/// Throws Error(NoFeasibleMedium) when nothing fits.
MediumAssignment choose_medium(const CommunicationActivity& activity, const Catalog& catalog,
                               const std::set<std::string>& sites_involved);

Issues validate_strategy(const CommunicationStrategy& strategy);

/// Advisory findings (paid or high-setup media). Never part of validation.
Issues strategy_warnings(const CommunicationStrategy& strategy);

const char* to_string(SetupCost c);
const char* to_string(MonetaryCost c);
const char* to_string(Cadence c);
const char* to_string(EventKind k);
const char* to_string(ScopeKind k);

std::optional<SetupCost> parse_setup_cost(std::string_view text);
std::optional<MonetaryCost> parse_monetary_cost(std::string_view text);
std::optional<Cadence> parse_cadence(std::string_view text);
std::optional<EventKind> parse_event_kind(std::string_view text);
std::optional<ScopeKind> parse_scope_kind(std::string_view text);

}  // namespace flowkit

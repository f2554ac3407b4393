#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowkit/flow_model.hpp"
#include "flowkit/strategy.hpp"

namespace flowkit {

/// A document declared for the whole project, plus who works with it.
///
/// Writer and reader entries are selectors: a person id, a pair id, a role
/// name (`developer`, `coordinator`, `customer`, `moderator`), `pairs` for
/// every pair store, or `all` for every person. Inside an activity,
/// `moderator` means the activity's moderator.
struct DocumentSpec {
  Document document;
  std::optional<std::string> access_medium_id;  // medium for cross-site access
  std::vector<std::string> writers;
  std::vector<std::string> readers;

  friend bool operator==(const DocumentSpec&, const DocumentSpec&) = default;
};

struct TeamSpec {
  std::string name;
  std::vector<Site> sites;
  std::vector<Person> persons;
  std::vector<PairStore> pairs;
  std::vector<DocumentSpec> documents;
  std::string common_language;
  std::vector<WorkItemRef> backlog;

  const Site* find_site(std::string_view id) const;
  const Person* find_person(std::string_view id) const;
  const PairStore* find_pair(std::string_view id) const;
};

/// Team invariants only (the flow_model rules applied to the declared stores).
Issues validate_team(const TeamSpec& team);

/// Team, strategy and the references between them: participant scopes,
/// moderators, artifact selectors, medium availability sites.
Issues validate_project(const TeamSpec& team, const CommunicationStrategy& strategy);

/// Strong is always thick. Otherwise a rich medium (rank <= 2) lifts the
/// flow one class.
WidthClass flow_width(Strength strength, int medium_richness_rank);

/// Overall target map: site regions, one store per person, pair and document,
/// flows between regular communicators, document write/read flows and the
/// yellow pages. Throws Error(InvalidInput) if validate_project reports issues.
FlowMap build_target_map(const TeamSpec& team, const CommunicationStrategy& strategy);

/// Map of one activity restricted to its participants. Cross-site flows carry
/// the assignment's medium. Throws Error(InvalidInput) on unresolvable scopes.
FlowMap build_activity_map(const CommunicationActivity& activity,
                           const MediumAssignment& assignment, const TeamSpec& team,
                           const Catalog& catalog);

/// One map per activity, in strategy order.
std::vector<FlowMap> build_activity_maps(const TeamSpec& team,
                                         const CommunicationStrategy& strategy);

// Store ids matched by a selector (see DocumentSpec). Unknown selectors give
// an empty list.
std::vector<std::string> resolve_selector(std::string_view selector, const TeamSpec& team,
                                          const std::optional<std::string>& moderator = {});

// Communicating parties of an activity, in team order.
std::vector<std::string> resolve_parties(const CommunicationActivity& activity,
                                         const TeamSpec& team);

}  // namespace flowkit

#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "flowkit/conformance.hpp"
#include "flowkit/ingest.hpp"
#include "flowkit/map_builder.hpp"

// Deliberately naive reference implementations. They share no helpers with the
// library beyond the data types and do full scans with their own calendar
// arithmetic.
namespace flowkit::oracle {

struct Choice {
  std::string medium_id;
  std::set<std::string> added_channels;
};
// Whether `medium` can serve the activity, with add-on channels drawn from
// the whole catalog.
bool feasible(const CommunicationActivity& activity, const Catalog& catalog, const Medium& medium,
              const std::set<std::string>& sites);
// Filter every feasible medium, keep the one with the smallest rank.
std::optional<Choice> choose_medium(const CommunicationActivity& activity, const Catalog& catalog,
                                    const std::set<std::string>& sites);

Timeline merge(const std::vector<Timeline>& streams);

Percentages compliance(int ok, int temporal, int qualitative);

AnalysisResult status_update(const Timeline& timeline, const TeamSpec& team, const AnalysisConfig& config,
                             const std::string& activity_id = "status-update");
AnalysisResult acceptance(const Timeline& timeline, const AnalysisConfig& config,
                          const std::string& activity_id = "acceptance-test-stories");
AnalysisResult scheduled(const Timeline& timeline, const CommunicationStrategy& strategy,
                         const AnalysisConfig& config, const std::string& activity_id = "scheduled-activities");

// Node and flow census of the overall target map, enumerated from the team
// and the activities directly.
struct Census {
  std::size_t sites = 0, persons = 0, pairs = 0, documents = 0;
  std::set<std::tuple<std::string, std::string, Strength, bool>> flows;  // from, to, strength, cross-site
};
Census target_census(const TeamSpec& team, const CommunicationStrategy& strategy);

// Total order used to compare violation sets.
void canonical_sort(std::vector<ViolationRecord>& v);

}  // namespace flowkit::oracle

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "flowkit/flow_model.hpp"
#include "generators.hpp"

using namespace flowkit;

namespace {

bool has_code(const Issues& issues, const std::string& code) {
  return std::any_of(issues.begin(), issues.end(), [&](const Issue& i) { return i.code == code; });
}

FlowMap two_site_map() {
  FlowMap m;
  m.sites = {{"a", "A", 0}, {"b", "B", 60}};
  m.persons = {{"p1", "P One", "a", {Role::Developer}, {}},
               {"p2", "P Two", "a", {Role::Developer}, {}},
               {"p3", "P Three", "b", {Role::Developer}, {}}};
  m.pairs = {{"w1", {"p1", "p2"}, {}}};
  m.documents = {{"doc", "Doc", "a", {true, true, true}}};
  m.media = {{"call", "Call", 3, {"audio"}}};
  m.flows = {{"w1", "p3", InformationState::Fluid, Direction::BothWays, Strength::Regular, WidthClass::Medium,
              std::string("call"), std::nullopt},
             {"p1", "doc", InformationState::Fluid, Direction::OneWay, Strength::Regular, WidthClass::Medium,
              std::nullopt, std::nullopt}};
  return m;
}

}  // namespace

TEST(ClassifyState, AllCriteriaMakeSolid) {
  EXPECT_EQ(classify_state({true, true, true}), InformationState::Solid);
  EXPECT_EQ(classify_state({true, true, false}), InformationState::Fluid);
}

TEST(ClassifyState, TruthTableHasExactlyOneSolidRowAndIsMonotone) {
  int solid = 0;
  for (int bits = 0; bits < 8; ++bits) {
    SolidityCriteria c{(bits & 1) != 0, (bits & 2) != 0, (bits & 4) != 0};
    if (classify_state(c) == InformationState::Solid) ++solid;
    for (int flip = 0; flip < 3; ++flip) {
      if (!(bits & (1 << flip))) continue;
      const int fewer = bits & ~(1 << flip);
      SolidityCriteria d{(fewer & 1) != 0, (fewer & 2) != 0, (fewer & 4) != 0};
      if (classify_state(c) == InformationState::Fluid) {
        EXPECT_EQ(classify_state(d), InformationState::Fluid);
      }
    }
  }
  EXPECT_EQ(solid, 1);
}

TEST(ValidateMap, WellFormedMapHasNoIssues) { EXPECT_TRUE(validate_map(two_site_map()).empty()); }

TEST(ValidateMap, CrossSiteFlowWithoutMedium) {
  auto m = two_site_map();
  m.flows[0].medium_id.reset();
  auto issues = validate_map(m);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, "missing-medium");
}

TEST(ValidateMap, PersonInTwoPairs) {
  auto m = two_site_map();
  m.persons.push_back({"p4", "P Four", "a", {Role::Developer}, {}});
  m.pairs.push_back({"w2", {"p2", "p4"}, {}});
  auto issues = validate_map(m);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_EQ(issues[0].code, "double-pairing");
  EXPECT_EQ(issues[0].element_id, "p2");
}

TEST(ValidateMap, StructuralBreaches) {
  auto m = two_site_map();
  m.sites[1].timezone_offset_minutes = 900;
  EXPECT_TRUE(has_code(validate_map(m), "timezone-range"));
  m = two_site_map();
  m.persons[2].site_id = "a";
  m.pairs[0].member_ids = {"p1", "p3"};
  m.persons[2].site_id = "b";
  EXPECT_TRUE(has_code(validate_map(m), "pair-split-site"));
  m = two_site_map();
  m.persons[0].yellow_pages.contact["fax"] = "123";
  EXPECT_TRUE(has_code(validate_map(m), "unknown-contact-channel"));
  m.persons[0].yellow_pages.contact = {{"audio", "123"}};
  EXPECT_TRUE(validate_map(m).empty());
  m = two_site_map();
  m.flows[0].medium_id = "pigeon";
  EXPECT_TRUE(has_code(validate_map(m), "dangling-medium"));
  m = two_site_map();
  m.documents.push_back({"p1", "dup", "a", {}});
  EXPECT_TRUE(has_code(validate_map(m), "duplicate-id"));
}

TEST(FlowModel, LocalTimeFollowsSite) {
  auto m = two_site_map();
  auto now = *parse_timestamp("2010-08-23T10:00:00Z");
  EXPECT_EQ(local_time(m, m.persons[2], now), now + std::chrono::minutes{60});
  Person ghost{"x", "X", "nowhere", {}, {}};
  EXPECT_FALSE(local_time(m, ghost, now));
  EXPECT_EQ(m.site_of_store("w1"), "a");
  EXPECT_EQ(m.site_of_store("doc"), "a");
  EXPECT_FALSE(m.site_of_store("nope"));
}

TEST(FlowModel, EnumNamesRoundTrip) {
  for (auto r : {Role::Developer, Role::Coordinator, Role::Customer, Role::Moderator})
    EXPECT_EQ(parse_role(to_string(r)), r);
  for (auto s : {Strength::Weak, Strength::Regular, Strength::Strong}) EXPECT_EQ(parse_strength(to_string(s)), s);
  for (auto w : {WidthClass::Thin, WidthClass::Medium, WidthClass::Thick}) EXPECT_EQ(parse_width(to_string(w)), w);
  for (auto k : {MapKind::OverallTarget, MapKind::ActivitySpecific, MapKind::Current})
    EXPECT_EQ(parse_map_kind(to_string(k)), k);
  EXPECT_FALSE(parse_role("boss"));
}

// Mutations of a valid target map always break at least one invariant.
TEST(ValidateMapProperty, MutationsOfValidMapsAreDetected) {
  testkit::Rng rng(11);
  const auto& fx = testkit::xpweek();
  const FlowMap base = build_target_map(fx.team, fx.doc.strategy);
  ASSERT_TRUE(validate_map(base).empty());
  for (int i = 0; i < 300; ++i) {
    FlowMap m = base;
    switch (rng.between(0, 5)) {
      case 0: m.sites.erase(m.sites.begin() + rng.between(0, static_cast<int>(m.sites.size()) - 1)); break;
      case 1: m.flows[static_cast<std::size_t>(rng.between(0, static_cast<int>(m.flows.size()) - 1))].to = "ghost"; break;
      case 2: m.pairs[static_cast<std::size_t>(rng.between(0, 3))].member_ids[1] = "ghost"; break;
      case 3: m.persons[static_cast<std::size_t>(rng.between(0, 10))].site_id = "ghost"; break;
      case 4: m.documents[static_cast<std::size_t>(rng.between(0, 1))].responsible_site_id = "ghost"; break;
      default: {
        auto& f = m.flows[static_cast<std::size_t>(rng.between(0, static_cast<int>(m.flows.size()) - 1))];
        f.medium_id = "ghost-medium";
      }
    }
    EXPECT_FALSE(validate_map(m).empty()) << "mutation " << i;
  }
}

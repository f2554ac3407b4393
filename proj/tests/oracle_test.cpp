#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "flowkit/conformance.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace flowkit;

namespace {

std::string describe(const ViolationRecord& v) {
  std::string s = v.rule_id + " " + format_timestamp(v.occurred_at) + " " + v.subject + " [";
  for (const auto& e : v.evidence) s += e + " ";
  return s + "]";
}

void expect_same(AnalysisResult got, AnalysisResult want, int round) {
  EXPECT_EQ(got.compliance, want.compliance) << "round " << round;
  oracle::canonical_sort(got.violations);
  oracle::canonical_sort(want.violations);
  ASSERT_EQ(got.violations.size(), want.violations.size()) << "round " << round;
  for (std::size_t i = 0; i < got.violations.size(); ++i)
    ASSERT_EQ(got.violations[i], want.violations[i])
        << "round " << round << ": " << describe(got.violations[i]) << " vs " << describe(want.violations[i]);
}

TeamSpec team_with_pairs(testkit::Rng& rng) {
  while (true) {
    auto t = testkit::random_team(rng, 3, 12);
    if (!t.pairs.empty()) return t;
  }
}

}  // namespace

TEST(OracleEquivalence, StatusUpdate) {
  testkit::Rng rng(1001);
  for (int round = 0; round < 200; ++round) {
    const auto team = team_with_pairs(rng);
    const auto days = testkit::project_days(rng.between(1, 3));
    const auto config = testkit::random_config(rng, days);
    const auto tl = testkit::random_status_timeline(rng, team, days, 200);
    expect_same(analyze_status_update(tl, team, config), oracle::status_update(tl, team, config), round);
  }
}

TEST(OracleEquivalence, Acceptance) {
  testkit::Rng rng(1002);
  for (int round = 0; round < 200; ++round) {
    const auto team = testkit::random_team(rng, 3, 8);
    const auto days = testkit::project_days(rng.between(1, 4));
    const auto config = testkit::random_config(rng, days);
    const auto tl = testkit::random_acceptance_timeline(rng, team, days, 200);
    expect_same(analyze_acceptance(tl, config), oracle::acceptance(tl, config), round);
  }
}

TEST(OracleEquivalence, Scheduled) {
  testkit::Rng rng(1003);
  int with_sessions = 0;
  for (int round = 0; round < 300; ++round) {
    auto pr = testkit::random_project(rng);
    const auto& days = pr.strategy.project_days;
    auto config = testkit::random_config(rng, days);
    const auto tl = testkit::random_meeting_timeline(rng, pr.strategy, days, 60);
    auto want = oracle::scheduled(tl, pr.strategy, config);
    with_sessions += want.compliance.totals.total() > 0;
    expect_same(analyze_scheduled(tl, pr.strategy, config), want, round);
  }
  EXPECT_GT(with_sessions, 100);
}

TEST(OracleEquivalence, BundledWeek) {
  const auto& fx = testkit::xpweek();
  const auto& tl = fx.ingest.timeline;
  expect_same(analyze_status_update(tl, fx.team, fx.doc.config), oracle::status_update(tl, fx.team, fx.doc.config), 0);
  expect_same(analyze_acceptance(tl, fx.doc.config), oracle::acceptance(tl, fx.doc.config), 0);
  expect_same(analyze_scheduled(tl, fx.doc.strategy, fx.doc.config),
              oracle::scheduled(tl, fx.doc.strategy, fx.doc.config), 0);
}

TEST(OracleEquivalence, CompliancePercentages) {
  testkit::Rng rng(1004);
  for (int i = 0; i < 20000; ++i) {
    const int ok = rng.between(0, 500), t = rng.between(0, 60), q = rng.between(0, 60);
    ASSERT_EQ(compliance(ok, t, q), oracle::compliance(ok, t, q)) << ok << " " << t << " " << q;
  }
}

// Every (workstation x slot) opportunity lands in exactly one bucket.
TEST(PartitionProperty, StatusSlotsPerDay) {
  testkit::Rng rng(4);
  for (int round = 0; round < 1000; ++round) {
    const auto team = team_with_pairs(rng);
    const auto days = testkit::project_days(rng.between(1, 5));
    auto config = testkit::random_config(rng, days);
    const auto tl = testkit::random_status_timeline(rng, team, days, 150);
    const auto r = analyze_status_update(tl, team, config);
    const int slots = (config.workday_end->minutes - config.workday_start->minutes) / config.slot_minutes;
    const int opportunities = slots * static_cast<int>(team.pairs.size());
    for (const auto& d : r.compliance.per_day)
      ASSERT_EQ(d.counts.ok + d.counts.temporal + d.counts.qualitative, opportunities)
          << "round " << round << " day " << format_date(d.day);
    ASSERT_EQ(static_cast<int>(r.violations.size()), r.compliance.totals.temporal + r.compliance.totals.qualitative);
    if (!r.compliance.vacuous) {
      const auto& p = r.compliance.pct;
      ASSERT_EQ(p.ok + p.temporal + p.qualitative, 100);
    }
  }
}

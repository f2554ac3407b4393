#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

#include "checkers.hpp"
#include "fixtures.hpp"
#include "flowkit/config_io.hpp"
#include "flowkit/json_io.hpp"

namespace fs = std::filesystem;
using namespace flowkit;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FLOWKIT_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  while (auto n = std::fread(buf.data(), 1, buf.size(), pipe)) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("flowkit-cli-" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string project() {
  const auto d = testkit::data_dir();
  return "--team " + q(d / "xpweek.team") + " --strategy " + q(d / "xpweek.strategy");
}

std::string raw_logs() {
  const auto d = testkit::data_dir();
  return "--status " + q(d / "status.log") + " --vcs " + q(d / "svn.log") + " --calls " + q(d / "calls.log") +
         " --events " + q(d / "contacts.jsonl") + " " + q(d / "meetings.jsonl");
}

}  // namespace

TEST(Cli, HelpExitsCleanly) {
  for (const auto* sub : {"", "validate ", "plan ", "ingest ", "analyze ", "report ", "render "}) {
    const auto r = run(std::string(sub) + "--help");
    EXPECT_EQ(r.code, 0) << sub;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << sub;
  }
}

TEST(Cli, UnknownOptionIsUsageError) {
  EXPECT_EQ(run("analyze --frobnicate").code, 2);
  EXPECT_EQ(run("").code, 2);
}

TEST(Cli, ValidateFixture) {
  const auto r = run("validate " + project());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("ok: 11 persons, 4 pairs, 7 activities"), std::string::npos) << r.out;
  const auto d = testkit::data_dir();
  EXPECT_EQ(run("validate " + q(d / "xpweek.team") + " " + q(d / "xpweek.strategy")).code, 0);
}

TEST(Cli, ValidateReportsIssuesWithExitOne) {
  const auto dir = scratch("issues");
  auto team = read_file(testkit::data_dir() / "xpweek.team");
  // A person placed at a site nobody declared.
  const auto persons_end = team.find("\npairs:");
  ASSERT_NE(persons_end, std::string::npos);
  team.insert(persons_end + 1, "  - {id: zed, name: Zed, site: nowhere, roles: [developer]}\n");
  write_file(dir / "bad.team", team);
  const auto r = run("validate --team " + q(dir / "bad.team") + " --strategy " + q(testkit::data_dir() / "xpweek.strategy"));
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("nowhere"), std::string::npos) << r.out;
}

TEST(Cli, UnreadableOrMalformedInputExitsTwo) {
  const auto dir = scratch("bad");
  EXPECT_EQ(run("validate --team " + q(dir / "missing.team") + " --strategy " + q(dir / "missing.strategy")).code, 2);
  write_file(dir / "broken.team", "sites: [\n");
  EXPECT_EQ(run("validate --team " + q(dir / "broken.team") + " --strategy " +
                q(testkit::data_dir() / "xpweek.strategy")).code,
            2);
  write_file(dir / "broken.json", "{not json");
  EXPECT_EQ(run("render " + q(dir / "broken.json")).code, 2);
}

TEST(Cli, PlanWritesTargetAndActivityMaps) {
  const auto dir = scratch("plan");
  const auto r = run("plan " + project() + " --out " + q(dir));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(fs::exists(dir / "target-map.json"));
  EXPECT_EQ(read_file(dir / "target-map.dot"), read_file(testkit::data_dir() / "golden" / "target-map.dot"));
  int maps = 0;
  for (const auto& e : fs::directory_iterator(dir / "activities"))
    if (e.path().extension() == ".json") {
      ++maps;
      const auto m = flowmap_from_json(nlohmann::json::parse(read_file(e.path())));
      EXPECT_EQ(m.kind, MapKind::ActivitySpecific);
      EXPECT_TRUE(fs::exists(fs::path(e.path()).replace_extension(".dot")));
    }
  EXPECT_EQ(maps, 7);

  // render of the written JSON gives the same text as plan's DOT file.
  const auto rendered = run("render --map " + q(dir / "target-map.json"));
  EXPECT_EQ(rendered.code, 0);
  EXPECT_EQ(rendered.out, read_file(dir / "target-map.dot"));
}

TEST(Cli, RenderRejectsInvalidMapWithExitOne) {
  const auto dir = scratch("render");
  nlohmann::json map{{"kind", "current"},
                     {"title", "dangling"},
                     {"sites", {{{"id", "s"}, {"name", "S"}, {"timezone_offset_minutes", 0}}}},
                     {"flows",
                      {{{"from", "a"}, {"to", "b"}, {"state", "fluid"}, {"direction", "one-way"},
                        {"strength", "weak"}, {"width", "thin"}}}}};
  write_file(dir / "dangling.json", map.dump());
  EXPECT_EQ(run("render " + q(dir / "dangling.json")).code, 1);
}

TEST(Cli, IngestAnalyzeReportChain) {
  const auto dir = scratch("chain");
  const auto ing = run("ingest --team " + q(testkit::data_dir() / "xpweek.team") + " " + raw_logs() + " --out " +
                       q(dir / "norm"));
  ASSERT_EQ(ing.code, 0) << ing.out;
  EXPECT_NE(ing.out.find("339 events, 2 rejected lines"), std::string::npos) << ing.out;

  const auto events = "--events " + q(dir / "norm" / "events.jsonl");
  const auto an = run("analyze " + project() + " " + events + " --out " + q(dir / "an"));
  ASSERT_EQ(an.code, 0) << an.out;
  EXPECT_NE(an.out.find("status-update: 79% ok, 8% temporal, 13% qualitative"), std::string::npos) << an.out;
  EXPECT_TRUE(fs::exists(dir / "an" / "violations.jsonl"));

  const auto staged = run("report " + project() + " " + events + " --analysis " + q(dir / "an" / "analysis.json") +
                          " --out " + q(dir / "staged"));
  ASSERT_EQ(staged.code, 0) << staged.out;
  const auto direct = run("report " + project() + " " + raw_logs() + " --out " + q(dir / "direct"));
  ASSERT_EQ(direct.code, 0) << direct.out;
  for (const auto& e : fs::recursive_directory_iterator(dir / "direct")) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir / "direct");
    ASSERT_TRUE(fs::exists(dir / "staged" / rel)) << rel;
    EXPECT_EQ(read_file(dir / "staged" / rel), read_file(e.path())) << rel;
  }
  const auto html = read_file(dir / "direct" / "report.html");
  EXPECT_EQ(testkit::tag_balance_error(html), "");
  const auto g = testkit::parse_dot(read_file(dir / "direct" / "current-map.dot"));
  EXPECT_EQ(g.cluster_labels.size(), 2u);
}

TEST(Cli, ReportAsOfMovesTheCurrentMap) {
  const auto dir = scratch("asof");
  const auto r = run("report " + project() + " " + raw_logs() + " --as-of 2010-08-24T12:30:00Z --out " + q(dir));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto dot = read_file(dir / "current-map.dot");
  EXPECT_NE(dot.find("US10"), std::string::npos);
  EXPECT_EQ(run("report " + project() + " " + raw_logs() + " --as-of tuesday --out " + q(dir)).code, 2);
}

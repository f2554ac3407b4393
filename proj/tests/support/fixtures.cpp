#include "fixtures.hpp"

#include <sstream>

namespace flowkit::testkit {

std::filesystem::path data_dir() { return FLOWKIT_DATA_DIR; }

EventSources fixture_sources() {
  const auto d = data_dir();
  EventSources s;
  s.jsonl = {d / "contacts.jsonl", d / "meetings.jsonl"};
  s.status_logs = {d / "status.log"};
  s.vcs_logs = {d / "svn.log"};
  s.call_logs = {d / "calls.log"};
  return s;
}

const Fixture& xpweek() {
  static const Fixture f = [] {
    Fixture x;
    x.team = load_team(data_dir() / "xpweek.team");
    x.doc = load_strategy(data_dir() / "xpweek.strategy");
    x.ingest = ingest_files(fixture_sources(), Directory(x.team));
    return x;
  }();
  return f;
}

std::size_t record_count(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t n = 0;
  const bool svn = path.extension() == ".log" && path.stem() == "svn";
  bool after_rule = false;
  while (std::getline(in, line)) {
    if (svn) {
      if (after_rule && line.rfind('r', 0) == 0 && line.find(" | ") != std::string::npos) ++n;
      after_rule = line.find_first_not_of('-') == std::string::npos && !line.empty();
    } else if (line.find_first_not_of(" \t\r") != std::string::npos) {
      ++n;
    }
  }
  return n;
}

}  // namespace flowkit::testkit

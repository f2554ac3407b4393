#pragma once

#include <filesystem>

#include "flowkit/pipeline.hpp"

namespace flowkit::testkit {

std::filesystem::path data_dir();

// The bundled two-site week: team, strategy and every raw log merged.
struct Fixture {
  TeamSpec team;
  StrategyDocument doc;
  IngestOutcome ingest;
};
const Fixture& xpweek();

EventSources fixture_sources();

// Non-blank lines of a file, or records for the svn export.
std::size_t record_count(const std::filesystem::path& path);

}  // namespace flowkit::testkit

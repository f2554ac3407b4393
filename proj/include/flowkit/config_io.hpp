#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "flowkit/conformance.hpp"
#include "flowkit/map_builder.hpp"
#include "flowkit/strategy.hpp"

namespace flowkit {

// Everything a strategy file declares.
struct StrategyDocument {
  CommunicationStrategy strategy;
  std::vector<ConformanceTemplate> templates;  // default_templates() if the file has none
  AnalysisConfig config;
};

// Team and strategy files are YAML; the schema is in docs/formats.md.
// All loaders throw Error(Parse) with a line number on malformed documents.
TeamSpec parse_team(std::string_view yaml);
StrategyDocument parse_strategy(std::string_view yaml);

// An `analysis:` block on its own, or a full strategy file whose analysis
// block is used. Keys present in `yaml` override `base`.
AnalysisConfig parse_config_overrides(std::string_view yaml, AnalysisConfig base);

TeamSpec load_team(const std::filesystem::path& path);
StrategyDocument load_strategy(const std::filesystem::path& path);

// Throw Error(Io).
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace flowkit

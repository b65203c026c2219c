#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "lielab/character.hpp"
#include "lielab_cli/config.hpp"

namespace lielab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFalsified = 3;

/// Artifact schema version, written into every JSON summary.
inline constexpr int kSchemaVersion = 1;

struct CommandResult {
  nlohmann::json summary;              // also written as <command>.json
  int falsifications = 0;
  std::vector<std::string> artifacts;  // paths relative to the output directory
  std::string headline;                // one human-readable line
};

const std::vector<std::string>& subcommand_names();

/// Runs one subcommand and writes its artifacts into cfg.output_dir.
/// Throws lielab::Error on failures that are not falsification events.
CommandResult run_subcommand(const std::string& name, const ExperimentConfig& cfg, IrrepCache& cache);

/// Validates `config`, runs the subcommand and maps the outcome to an exit code.
int run(const std::string& name, const nlohmann::json& config, std::ostream& out, std::ostream& err);

/// Command-line entry point: parses flags, loads the config file and calls run().
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lielab::cli

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qmin/config.hpp"

namespace qmin {

struct Artifact {
  std::string path;  // relative to the output directory
  std::string content;
};

struct ExperimentOutput {
  std::string report;   // human-readable text printed before the summary (may be empty)
  std::string summary;  // one line: experiment, best value, best point, rounds, total iterations
  std::vector<Artifact> artifacts;
  int exit_code = 0;
  std::string error;  // set together with a non-zero exit_code
};

/// Runs one experiment entirely in memory. Numeric failures mid-run are
/// reported through exit_code/error with whatever traces were completed.
ExperimentOutput run_experiment(const RunConfig& config);

/// Writes every artifact under `directory`, creating subdirectories.
void write_artifacts(const ExperimentOutput& output, const std::filesystem::path& directory);

}  // namespace qmin

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qmin/encoding.hpp"
#include "qmin/minsearch.hpp"
#include "qmin/objectives.hpp"
#include "qmin/pivot.hpp"

namespace qmin {

/// Config problem, already formatted as "<source>:<line>: <message>".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kExperiments[] = {"appendix-demo", "gp",    "lj-trimer", "shubert-pivot",
                                                    "lj-grow",       "brute", "ensemble"};

struct CoreSpec {
  int atoms = 3;
  double bond = 1.0;
};

struct RunConfig {
  std::string experiment;
  std::string objective;
  std::vector<VariableSpec> layout;
  std::string schedule = "baritompa";
  Marking marking = Marking::kAtMost;
  StopRule stop;
  bool target_grid_min = false;  // stop.target: grid-min
  PivotConfig pivot;
  GrowthConfig growth;
  CoreSpec core;  // geometry for the lj-grow objective outside the growth driver
  std::uint64_t seed = 0;
  std::size_t runs = 1;
  std::string out = "out";
  bool emit_distributions = false;
};

/// Embedded default YAML for an experiment.
std::string_view default_config_text(std::string_view experiment);

/// Parses YAML on top of `base`; keys that are absent keep base's values.
/// Throws ConfigError with a line-numbered diagnostic.
RunConfig parse_config(std::string_view text, std::string_view source, RunConfig base = {});

RunConfig default_config(std::string_view experiment);

/// default_config(experiment) overlaid with the file at `path`.
RunConfig load_config(const std::filesystem::path& path, std::string_view experiment);

/// Cross-field checks (experiment name, objective arity vs layout, ...).
void validate(const RunConfig& config);

Objective make_objective(const RunConfig& config);
SearchOptions make_search_options(const RunConfig& config);

}  // namespace qmin

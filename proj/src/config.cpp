#include "qmin/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

namespace qmin {
namespace {

constexpr std::string_view kGpDefaults = R"(experiment: gp
objective: gp
layout:
  - {name: x1, qubits: 5, lo: -3.2, hi: 3.0}
  - {name: x2, qubits: 5, lo: -3.2, hi: 3.0}
schedule: baritompa
marking: at-most
stop: {max_rounds: 100, stall_window: 0, target: grid-min}
seed: 0
runs: 1
)";

constexpr std::string_view kTrimerDefaults = R"(experiment: lj-trimer
objective: lj-trimer
layout:
  - {name: B, qubits: 5, lo: 0.0001, hi: 2.0}
  - {name: A, qubits: 4, lo: 0.0001, hi: 3.141592653589793}
schedule: incremental
marking: at-most
stop: {max_rounds: 100, stall_window: 0, target: grid-min}
seed: 0
runs: 1
)";

constexpr std::string_view kShubertDefaults = R"(experiment: shubert-pivot
objective: shubert
layout:
  - {name: x1, qubits: 5, lo: -10.0, hi: 10.0}
  - {name: x2, qubits: 5, lo: -10.0, hi: 10.0}
pivot:
  fraction: 0.15
  kT: 50.0
  sigma_init: 0.125
  sigma_contraction: 0.9
  sigma_floor: 0.0001
  stall_generations: 20
  max_generations: 500
  elitism: true
  snap_to_grid: false
seed: 0
runs: 98
)";

constexpr std::string_view kGrowDefaults = R"(experiment: lj-grow
growth:
  atoms: 5
  method: 2
  qubits_per_axis: 5
  mirrored_fifth: true
  trimer_bond_qubits: 5
  trimer_angle_qubits: 5
pivot:
  fraction: 0.15
  kT: 50.0
  sigma_init: 0.125
  sigma_contraction: 0.9
  sigma_floor: 0.0001
  stall_generations: 20
  max_generations: 500
seed: 0
runs: 1
)";

constexpr std::string_view kBruteDefaults = R"(experiment: brute
objective: gp
layout:
  - {name: x1, qubits: 5, lo: -3.2, hi: 3.0}
  - {name: x2, qubits: 5, lo: -3.2, hi: 3.0}
)";

constexpr std::string_view kEnsembleDefaults = R"(experiment: ensemble
objective: lj-trimer
layout:
  - {name: B, qubits: 5, lo: 0.0001, hi: 2.0}
  - {name: A, qubits: 4, lo: 0.0001, hi: 3.141592653589793}
schedule: incremental
marking: at-most
stop: {max_rounds: 100, stall_window: 0, target: grid-min}
seed: 0
runs: 100
)";

constexpr std::string_view kAppendixDefaults = R"(experiment: appendix-demo
objective: gp
layout:
  - {name: x1, qubits: 1, lo: -3.2, hi: 3.0}
  - {name: x2, qubits: 1, lo: -3.2, hi: 3.0}
)";

[[noreturn]] void fail(std::string_view source, const YAML::Node& node, const std::string& message) {
  throw ConfigError(fmt::format("{}:{}: {}", source, node.Mark().line + 1, message));
}

template <typename T>
T scalar(std::string_view source, const YAML::Node& node, std::string_view key) {
  if (!node.IsScalar()) fail(source, node, fmt::format("'{}' must be a scalar", key));
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    fail(source, node, fmt::format("'{}' has an invalid value '{}'", key, node.Scalar()));
  }
}

void check_keys(std::string_view source, const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                std::string_view section) {
  if (!map.IsMap()) fail(source, map, fmt::format("'{}' must be a mapping", section));
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(source, kv.first, fmt::format("unknown key '{}' in {}", key, section));
    }
  }
}

std::vector<VariableSpec> parse_layout(std::string_view source, const YAML::Node& node) {
  if (!node.IsSequence() || node.size() == 0) fail(source, node, "'layout' must be a non-empty list");
  std::vector<VariableSpec> out;
  for (const auto& entry : node) {
    check_keys(source, entry, {"name", "qubits", "lo", "hi"}, "layout entry");
    for (const char* key : {"qubits", "lo", "hi"}) {
      if (!entry[key]) fail(source, entry, fmt::format("layout entry is missing '{}'", key));
    }
    VariableSpec v;
    v.name = entry["name"] ? scalar<std::string>(source, entry["name"], "name") : fmt::format("x{}", out.size() + 1);
    v.qubits = scalar<int>(source, entry["qubits"], "qubits");
    v.lo = scalar<double>(source, entry["lo"], "lo");
    v.hi = scalar<double>(source, entry["hi"], "hi");
    if (v.qubits < 1) fail(source, entry["qubits"], "'qubits' must be >= 1");
    if (!(v.lo < v.hi)) fail(source, entry, "layout entry needs lo < hi");
    out.push_back(std::move(v));
  }
  return out;
}

void parse_pivot(std::string_view source, const YAML::Node& node, PivotConfig& p) {
  check_keys(source, node,
             {"fraction", "kT", "sigma_init", "sigma_contraction", "sigma_floor", "stall_generations",
              "max_generations", "elitism", "snap_to_grid"},
             "pivot");
  if (node["fraction"]) p.fraction = scalar<double>(source, node["fraction"], "fraction");
  if (node["kT"]) p.kT = scalar<double>(source, node["kT"], "kT");
  if (node["sigma_init"]) p.sigma_init = scalar<double>(source, node["sigma_init"], "sigma_init");
  if (node["sigma_contraction"]) {
    p.sigma_contraction = scalar<double>(source, node["sigma_contraction"], "sigma_contraction");
  }
  if (node["sigma_floor"]) p.sigma_floor = scalar<double>(source, node["sigma_floor"], "sigma_floor");
  if (node["stall_generations"]) {
    p.stall_generations = scalar<std::size_t>(source, node["stall_generations"], "stall_generations");
  }
  if (node["max_generations"]) {
    p.max_generations = scalar<std::size_t>(source, node["max_generations"], "max_generations");
  }
  if (node["elitism"]) p.elitism = scalar<bool>(source, node["elitism"], "elitism");
  if (node["snap_to_grid"]) p.snap_to_grid = scalar<bool>(source, node["snap_to_grid"], "snap_to_grid");
  if (!(p.fraction > 0.0 && p.fraction <= 1.0)) fail(source, node, "pivot.fraction must lie in (0, 1]");
  if (!(p.kT > 0.0)) fail(source, node, "pivot.kT must be positive");
  if (!(p.sigma_init >= 0.0) || !(p.sigma_floor >= 0.0)) fail(source, node, "pivot sigmas must be >= 0");
  if (!(p.sigma_contraction > 0.0 && p.sigma_contraction <= 1.0)) {
    fail(source, node, "pivot.sigma_contraction must lie in (0, 1]");
  }
}

void parse_growth(std::string_view source, const YAML::Node& node, GrowthConfig& g) {
  check_keys(source, node,
             {"atoms", "method", "qubits_per_axis", "mirrored_fifth", "core_bond", "trimer_bond_qubits",
              "trimer_angle_qubits"},
             "growth");
  if (node["atoms"]) g.target_atoms = scalar<int>(source, node["atoms"], "atoms");
  if (node["method"]) {
    const int m = scalar<int>(source, node["method"], "method");
    if (m != 1 && m != 2) fail(source, node["method"], "growth.method must be 1 or 2");
    g.method = m == 1 ? GrowthMethod::kFreeXYZ : GrowthMethod::kPinnedX;
  }
  if (node["qubits_per_axis"]) g.qubits_per_axis = scalar<int>(source, node["qubits_per_axis"], "qubits_per_axis");
  if (node["mirrored_fifth"]) g.mirrored_fifth = scalar<bool>(source, node["mirrored_fifth"], "mirrored_fifth");
  if (node["core_bond"]) {
    if (node["core_bond"].IsNull()) {
      g.core_bond.reset();
    } else {
      g.core_bond = scalar<double>(source, node["core_bond"], "core_bond");
    }
  }
  if (node["trimer_bond_qubits"]) {
    g.trimer_bond_qubits = scalar<int>(source, node["trimer_bond_qubits"], "trimer_bond_qubits");
  }
  if (node["trimer_angle_qubits"]) {
    g.trimer_angle_qubits = scalar<int>(source, node["trimer_angle_qubits"], "trimer_angle_qubits");
  }
  if (g.target_atoms < 3 || g.target_atoms > 5) fail(source, node, "growth.atoms must be 3, 4 or 5");
  if (g.qubits_per_axis < 1 || g.qubits_per_axis > 12) fail(source, node, "growth.qubits_per_axis out of range");
}

void parse_stop(std::string_view source, const YAML::Node& node, RunConfig& c) {
  check_keys(source, node, {"max_rounds", "stall_window", "target"}, "stop");
  if (node["max_rounds"]) c.stop.max_rounds = scalar<std::size_t>(source, node["max_rounds"], "max_rounds");
  if (node["stall_window"]) c.stop.stall_window = scalar<std::size_t>(source, node["stall_window"], "stall_window");
  if (const auto t = node["target"]) {
    c.target_grid_min = false;
    c.stop.target.reset();
    if (t.IsNull() || (t.IsScalar() && t.Scalar() == "none")) {
      // no target
    } else if (t.IsScalar() && t.Scalar() == "grid-min") {
      c.target_grid_min = true;
    } else {
      c.stop.target = scalar<double>(source, t, "target");
    }
  }
}

}  // namespace

std::string_view default_config_text(std::string_view experiment) {
  if (experiment == "gp") return kGpDefaults;
  if (experiment == "lj-trimer") return kTrimerDefaults;
  if (experiment == "shubert-pivot") return kShubertDefaults;
  if (experiment == "lj-grow") return kGrowDefaults;
  if (experiment == "brute") return kBruteDefaults;
  if (experiment == "ensemble") return kEnsembleDefaults;
  if (experiment == "appendix-demo") return kAppendixDefaults;
  throw ConfigError(fmt::format("unknown experiment '{}'", experiment));
}

RunConfig parse_config(std::string_view text, std::string_view source, RunConfig base) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(fmt::format("{}:{}: {}", source, e.mark.line + 1, e.msg));
  }
  if (!root || root.IsNull()) return base;
  check_keys(source, root,
             {"experiment", "objective", "layout", "schedule", "marking", "stop", "pivot", "growth", "core", "seed",
              "runs", "out", "emit_distributions"},
             "config");

  RunConfig c = std::move(base);
  if (root["experiment"]) {
    c.experiment = scalar<std::string>(source, root["experiment"], "experiment");
    if (std::find(std::begin(kExperiments), std::end(kExperiments), c.experiment) == std::end(kExperiments)) {
      fail(source, root["experiment"], fmt::format("unknown experiment '{}'", c.experiment));
    }
  }
  if (root["objective"]) c.objective = scalar<std::string>(source, root["objective"], "objective");
  if (root["layout"]) c.layout = parse_layout(source, root["layout"]);
  if (root["schedule"]) {
    c.schedule = scalar<std::string>(source, root["schedule"], "schedule");
    try {
      (void)Schedule::parse(c.schedule);
    } catch (const std::invalid_argument& e) {
      fail(source, root["schedule"], e.what());
    }
  }
  if (root["marking"]) {
    const auto m = scalar<std::string>(source, root["marking"], "marking");
    if (m == "at-most") {
      c.marking = Marking::kAtMost;
    } else if (m == "below") {
      c.marking = Marking::kBelow;
    } else {
      fail(source, root["marking"], "marking must be 'at-most' or 'below'");
    }
  }
  if (root["stop"]) parse_stop(source, root["stop"], c);
  if (root["pivot"]) parse_pivot(source, root["pivot"], c.pivot);
  if (root["growth"]) parse_growth(source, root["growth"], c.growth);
  if (const auto core = root["core"]) {
    check_keys(source, core, {"atoms", "bond"}, "core");
    if (core["atoms"]) c.core.atoms = scalar<int>(source, core["atoms"], "atoms");
    if (core["bond"]) c.core.bond = scalar<double>(source, core["bond"], "bond");
  }
  if (root["seed"]) c.seed = scalar<std::uint64_t>(source, root["seed"], "seed");
  if (root["runs"]) {
    c.runs = scalar<std::size_t>(source, root["runs"], "runs");
    if (c.runs < 1) fail(source, root["runs"], "'runs' must be >= 1");
  }
  if (root["out"]) c.out = scalar<std::string>(source, root["out"], "out");
  if (root["emit_distributions"]) {
    c.emit_distributions = scalar<bool>(source, root["emit_distributions"], "emit_distributions");
  }
  return c;
}

RunConfig default_config(std::string_view experiment) {
  return parse_config(default_config_text(experiment), fmt::format("<default {}>", experiment));
}

RunConfig load_config(const std::filesystem::path& path, std::string_view experiment) {
  std::ifstream file(path);
  if (!file) throw ConfigError(fmt::format("{}: cannot open config file", path.string()));
  std::stringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();

  // Peek at the experiment key so the right defaults sit underneath the file.
  std::string name(experiment);
  if (name.empty()) {
    const RunConfig peek = parse_config(text, path.string());
    name = peek.experiment;
    if (name.empty()) throw ConfigError(fmt::format("{}:1: config does not name an experiment", path.string()));
  }
  RunConfig c = parse_config(text, path.string(), default_config(name));
  if (c.experiment != name) {
    throw ConfigError(
        fmt::format("{}:1: config experiment '{}' does not match requested '{}'", path.string(), c.experiment, name));
  }
  return c;
}

Objective make_objective(const RunConfig& config) {
  const std::string& name = config.objective;
  if (name == "gp") return gp_objective();
  if (name == "shubert") return shubert_objective();
  if (name == "lj-trimer") return lj_trimer_objective(config.layout.size());
  if (name == "lj-bipyramid") return lj_bipyramid_objective();
  if (name == "lj-grow") {
    const FreeAtomTemplate free_atom =
        config.layout.size() == 2 ? FreeAtomTemplate::x_pinned(0.0) : FreeAtomTemplate::all_free();
    return lj_grow_objective(ClusterGeometry(build_fixed_core(config.core.atoms, config.core.bond).fixed_atoms(),
                                             free_atom));
  }
  throw ConfigError(fmt::format("unknown objective '{}'", name));
}

void validate(const RunConfig& config) {
  if (std::find(std::begin(kExperiments), std::end(kExperiments), config.experiment) == std::end(kExperiments)) {
    throw ConfigError(fmt::format("unknown experiment '{}'", config.experiment));
  }
  if (config.experiment == "lj-grow") return;

  static constexpr std::string_view kObjectives[] = {"gp", "shubert", "lj-trimer", "lj-grow", "lj-bipyramid"};
  if (std::find(std::begin(kObjectives), std::end(kObjectives), config.objective) == std::end(kObjectives)) {
    throw ConfigError(fmt::format("unknown objective '{}'", config.objective));
  }
  const std::size_t n = config.layout.size();
  const bool arity_ok = config.objective == "lj-trimer" ? (n == 2 || n == 3)
                        : config.objective == "lj-grow" ? (n == 2 || n == 3)
                                                        : n == 2;
  if (!arity_ok) {
    throw ConfigError(fmt::format("objective '{}' does not accept a {}-variable layout", config.objective, n));
  }
  if (config.objective == "lj-grow" && config.core.atoms != 3 && config.core.atoms != 4) {
    throw ConfigError("core.atoms must be 3 or 4");
  }
  int qubits = 0;
  for (const auto& v : config.layout) qubits += v.qubits;
  if (qubits > kMaxQubits) throw ConfigError(fmt::format("layout uses {} qubits, cap is {}", qubits, kMaxQubits));
}

SearchOptions make_search_options(const RunConfig& config) {
  SearchOptions options;
  options.schedule = Schedule::parse(config.schedule);
  options.stop = config.stop;
  options.marking = config.marking;
  return options;
}

}  // namespace qmin

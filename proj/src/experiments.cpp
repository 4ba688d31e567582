#include "qmin/experiments.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "qmin/baseline.hpp"
#include "qmin/dense_reference.hpp"
#include "qmin/grover.hpp"
#include "qmin/report.hpp"

namespace qmin {
namespace {

constexpr int kJsonIndent = 2;

std::string format_point(std::span<const double> p) { return fmt::format("({})", fmt::join(p, ", ")); }

std::string format_vector(std::span<const Amplitude> v) {
  std::vector<double> re;
  for (const auto& a : v) re.push_back(a.real());
  return fmt::format("({})", fmt::join(re, ", "));
}

std::string format_matrix(const DenseMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    out += fmt::format("    [{:>5}]\n", fmt::join(row, ", "));
  }
  return out;
}

json amplitudes_json(std::span<const Amplitude> v) {
  json out = json::array();
  for (const auto& a : v) out.push_back(a.real());
  return out;
}

json matrix_json(const DenseMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j));
    out.push_back(std::move(row));
  }
  return out;
}

ExperimentOutput appendix_demo(const RunConfig& config) {
  const RegisterLayout layout(config.layout);
  const Objective objective = make_objective(config);
  const int n = layout.total_qubits();

  ExperimentOutput out;
  std::string& text = out.report;

  Statevector state = Statevector::uniform(n);
  text += fmt::format("Step (1): Walsh-Hadamard on {} qubits\n  |s> = {}\n", n, format_vector(state.amplitudes()));

  // Target: the lowest mesh point by classical comparison.
  const GridMinimum lowest = grid_brute_min(objective, layout);
  const std::size_t target[] = {lowest.index};
  const MarkedSet marked = MarkedSet::from_indices(layout.size(), target);
  const GroverOperators ops = dense_reference_operators(n, marked);
  text += fmt::format("Step (2): P_s = 2|s><s| - I\n{}", format_matrix(ops.diffusion));

  std::vector<Amplitude> t(layout.size());
  t[lowest.index] = 1.0;
  text += fmt::format("Step (3): lowest mesh point {} with f = {}\n  |t> = {}\n", format_point(lowest.point),
                      lowest.value, format_vector(t));
  text += fmt::format("Step (4): P_t = I - 2|t><t|\n{}", format_matrix(ops.oracle));

  const Statevector initial = state;
  state.phase_flip(marked);
  const Statevector flipped = state;
  state.diffusion();
  text += fmt::format("Step (5): G|s> = P_s P_t |s> = P_s {} = {}\n", format_vector(flipped.amplitudes()),
                      format_vector(state.amplitudes()));

  json doc = {{"s", amplitudes_json(initial.amplitudes())},
              {"P_s", matrix_json(ops.diffusion)},
              {"t", amplitudes_json(t)},
              {"P_t", matrix_json(ops.oracle)},
              {"P_t_s", amplitudes_json(flipped.amplitudes())},
              {"G_s", amplitudes_json(state.amplitudes())},
              {"target_index", lowest.index},
              {"target_point", point_json(lowest.point)},
              {"target_value", lowest.value}};
  out.artifacts.push_back({"appendix_demo.json", doc.dump(kJsonIndent) + "\n"});
  if (config.emit_distributions) {
    out.artifacts.push_back({"distributions/appendix_final.csv", distribution_csv(state, layout, objective)});
  }
  out.summary = fmt::format("experiment=appendix-demo best={} point={} rounds=1 total_iterations=1", lowest.value,
                            format_point(lowest.point));
  return out;
}

ExperimentOutput threshold_search(const RunConfig& config) {
  const RegisterLayout layout(config.layout);
  const Objective objective = make_objective(config);
  SearchOptions options = make_search_options(config);
  if (config.target_grid_min) options.stop.target = grid_brute_min(objective, layout).value;

  ExperimentOutput out;
  std::optional<SearchResult> overall;
  for (std::size_t run = 0; run < config.runs; ++run) {
    const std::uint64_t seed = derive_seed(config.seed, run);
    Rng rng(seed);
    std::vector<RoundRecord> partial;
    RoundObserver observer = [&](const RoundRecord& record, const Statevector& state) {
      partial.push_back(record);
      if (config.emit_distributions) {
        out.artifacts.push_back({fmt::format("distributions/run{:04}_round{:03}.csv", run, record.round),
                                 distribution_csv(state, layout, objective)});
      }
    };
    try {
      SearchResult result = adapted_grover_min(objective, layout, options, rng, observer);
      out.artifacts.push_back(
          {fmt::format("trace_{:04}.json", run),
           search_trace_json(result, run, seed, objective.name(), options.schedule.describe()).dump(kJsonIndent) +
               "\n"});
      if (!overall || result.best_value < overall->best_value) overall = std::move(result);
    } catch (const NumericFailure& e) {
      SearchResult partial_result;
      partial_result.trace.rounds = std::move(partial);
      json doc = search_trace_json(partial_result, run, seed, objective.name(), options.schedule.describe());
      doc["error"] = e.what();
      out.artifacts.push_back({fmt::format("trace_{:04}.json", run), doc.dump(kJsonIndent) + "\n"});
      out.exit_code = 3;
      out.error = fmt::format("numeric failure in run {}: {}", run, e.what());
      return out;
    }
  }
  out.summary = fmt::format("experiment={} best={} point={} rounds={} total_iterations={}", config.experiment,
                            overall->best_value, format_point(overall->best_point), overall->trace.rounds.size(),
                            overall->trace.total_grover_iterations);
  return out;
}

ExperimentOutput shubert_pivot(const RunConfig& config) {
  const RegisterLayout layout(config.layout);
  const Objective objective = make_objective(config);
  ExperimentOutput out;
  std::optional<PivotResult> overall;
  json runs = json::array();
  for (std::size_t run = 0; run < config.runs; ++run) {
    const std::uint64_t seed = derive_seed(config.seed, run);
    Rng rng(seed);
    PivotResult result = pivot_grover_search(objective, layout, config.pivot, rng);
    out.artifacts.push_back(
        {fmt::format("trace_{:04}.json", run), pivot_trace_json(result, run, seed, objective.name()).dump(kJsonIndent) + "\n"});
    runs.push_back({{"run_id", run},
                    {"seed", seed},
                    {"best_value", result.best_value},
                    {"best_point", point_json(result.best_point)},
                    {"generations", result.generations},
                    {"total_iterations", result.total_grover_iterations}});
    if (!overall || result.best_value < overall->best_value) overall = std::move(result);
  }
  out.artifacts.push_back({"summary.json", json{{"objective", objective.name()}, {"runs", std::move(runs)}}.dump(kJsonIndent) + "\n"});
  out.summary = fmt::format("experiment={} best={} point={} rounds={} total_iterations={}", config.experiment,
                            overall->best_value, format_point(overall->best_point), overall->generations,
                            overall->total_grover_iterations);
  return out;
}

ExperimentOutput lj_grow(const RunConfig& config) {
  Rng rng(derive_seed(config.seed, 0));
  GrowthConfig growth = config.growth;
  growth.pivot = config.pivot;
  const GrowthReport report = lj_growth(growth, rng);

  ExperimentOutput out;
  out.artifacts.push_back({"growth.json", growth_report_json(report, config.seed).dump(kJsonIndent) + "\n"});
  for (const auto& stage : report.stages) {
    out.report += fmt::format("{} atoms: E = {} ({})\n", stage.atoms, stage.energy, stage.box);
  }
  const auto& last = report.stages.back();
  const Vec3& added = last.geometry.back();
  out.summary = fmt::format("experiment=lj-grow best={} point=({}, {}, {}) rounds={} total_iterations={}",
                            report.final_energy, added.x, added.y, added.z, last.search.generations,
                            report.total_grover_iterations);
  return out;
}

ExperimentOutput brute(const RunConfig& config) {
  const RegisterLayout layout(config.layout);
  const Objective objective = make_objective(config);
  const GridMinimum minimum = grid_brute_min(objective, layout);
  ExperimentOutput out;
  out.artifacts.push_back({"brute.json", grid_minimum_json(minimum).dump(kJsonIndent) + "\n"});
  out.summary = fmt::format("experiment=brute best={} point={} rounds=0 total_iterations=0 evaluations={}",
                            minimum.value, format_point(minimum.point), minimum.num_evaluations);
  return out;
}

ExperimentOutput ensemble(const RunConfig& config) {
  const RegisterLayout layout(config.layout);
  const Objective objective = make_objective(config);
  SearchOptions options = make_search_options(config);
  if (config.target_grid_min) options.stop.target = grid_brute_min(objective, layout).value;

  const EnsembleStats stats = run_ensemble(objective, layout, options, config.runs, config.seed);
  ExperimentOutput out;
  std::string lines;
  for (std::size_t i = 0; i < stats.results.size(); ++i) {
    lines += search_trace_json(stats.results[i], i, stats.runs[i].seed, objective.name(), options.schedule.describe())
                 .dump() +
             "\n";
  }
  out.artifacts.push_back({"traces.jsonl", std::move(lines)});
  out.artifacts.push_back({"rounds_histogram.csv", histogram_csv(stats.rounds_histogram)});
  out.artifacts.push_back({"iterations_histogram.csv", histogram_csv(stats.iterations_histogram)});
  out.artifacts.push_back(
      {"summary.json",
       ensemble_summary_json(stats, objective.name(), options.schedule.describe(), config.seed).dump(kJsonIndent) +
           "\n"});
  out.report = fmt::format("runs={} success={:.3f} mean_rounds={:.2f} median_iterations={} grid_evaluations={}\n",
                           stats.runs.size(), stats.success_fraction, stats.mean_rounds, stats.median_iterations,
                           stats.grid_evaluations);
  out.summary = fmt::format("experiment=ensemble best={} point={} rounds={} total_iterations={}", stats.grid_minimum,
                            format_point(grid_brute_min(objective, layout).point), stats.mean_rounds,
                            stats.mean_iterations);
  return out;
}

}  // namespace

ExperimentOutput run_experiment(const RunConfig& config) {
  validate(config);
  const std::string& e = config.experiment;
  if (e == "appendix-demo") return appendix_demo(config);
  if (e == "gp" || e == "lj-trimer") return threshold_search(config);
  if (e == "shubert-pivot") return shubert_pivot(config);
  if (e == "lj-grow") return lj_grow(config);
  if (e == "brute") return brute(config);
  if (e == "ensemble") return ensemble(config);
  throw ConfigError(fmt::format("unknown experiment '{}'", e));
}

void write_artifacts(const ExperimentOutput& output, const std::filesystem::path& directory) {
  for (const auto& artifact : output.artifacts) {
    const auto path = directory / artifact.path;
    std::filesystem::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    file << artifact.content;
    if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

}  // namespace qmin

#include "qmin/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace qmin {

json point_json(std::span<const double> point) { return json(std::vector<double>(point.begin(), point.end())); }

json vec3_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

json search_trace_json(const SearchResult& result, std::size_t run_id, std::uint64_t seed,
                       const std::string& objective, const std::string& schedule) {
  json rounds = json::array();
  for (const auto& r : result.trace.rounds) {
    json row = {{"round", r.round},         {"iterations", r.iterations}, {"index", r.index},
                {"point", point_json(r.point)}, {"value", r.value},           {"threshold", r.threshold_after},
                {"marked", r.marked_count}};
    if (r.schedule_extended) row["extended"] = true;
    rounds.push_back(std::move(row));
  }
  return {{"run_id", run_id},
          {"seed", seed},
          {"objective", objective},
          {"schedule", schedule},
          {"rounds", std::move(rounds)},
          {"best_value", result.best_value},
          {"best_index", result.best_index},
          {"best_point", point_json(result.best_point)},
          {"total_iterations", result.trace.total_grover_iterations},
          {"rounds_to_best", result.rounds_to_best},
          {"iterations_to_best", result.iterations_to_best},
          {"stop_reason", std::string(to_string(result.stop_reason))},
          {"converged", result.converged}};
}

json pivot_trace_json(const PivotResult& result, std::size_t run_id, std::uint64_t seed,
                      const std::string& objective) {
  json rounds = json::array();
  for (const auto& g : result.trace) {
    rounds.push_back({{"round", g.generation},
                      {"generation", g.generation},
                      {"iterations", g.iterations},
                      {"draws", g.draws},
                      {"num_pivots", g.num_pivots},
                      {"marked", g.marked_count},
                      {"sigma", g.sigma},
                      {"threshold", g.threshold},
                      {"point", point_json(g.best_point)},
                      {"value", g.best_value}});
  }
  return {{"run_id", run_id},
          {"seed", seed},
          {"objective", objective},
          {"schedule", "pivot"},
          {"rounds", std::move(rounds)},
          {"best_value", result.best_value},
          {"best_point", point_json(result.best_point)},
          {"generations", result.generations},
          {"total_iterations", result.total_grover_iterations},
          {"total_draws", result.total_draws},
          {"converged", result.converged}};
}

json growth_report_json(const GrowthReport& report, std::uint64_t seed) {
  json stages = json::array();
  for (const auto& s : report.stages) {
    json geometry = json::array();
    for (const auto& atom : s.geometry) geometry.push_back(vec3_json(atom));
    json stage = {{"atoms", s.atoms}, {"box", s.box}, {"energy", s.energy}, {"geometry", std::move(geometry)}};
    if (!s.search.trace.empty()) stage["search"] = pivot_trace_json(s.search, 0, seed, "lj");
    stages.push_back(std::move(stage));
  }
  return {{"seed", seed},
          {"stages", std::move(stages)},
          {"final_energy", report.final_energy},
          {"total_iterations", report.total_grover_iterations}};
}

json grid_minimum_json(const GridMinimum& minimum) {
  return {{"value", minimum.value},
          {"point", point_json(minimum.point)},
          {"num_evaluations", minimum.num_evaluations},
          {"index", minimum.index}};
}

json ensemble_summary_json(const EnsembleStats& stats, const std::string& objective, const std::string& schedule,
                           std::uint64_t base_seed) {
  json runs = json::array();
  for (const auto& r : stats.runs) {
    runs.push_back({{"run_id", r.run_id},
                    {"seed", r.seed},
                    {"rounds", r.rounds},
                    {"total_iterations", r.total_iterations},
                    {"best_value", r.best_value},
                    {"success", r.success}});
  }
  return {{"objective", objective},
          {"schedule", schedule},
          {"base_seed", base_seed},
          {"runs", stats.runs.size()},
          {"grid_minimum", stats.grid_minimum},
          {"grid_evaluations", stats.grid_evaluations},
          {"successes", stats.successes},
          {"success_fraction", stats.success_fraction},
          {"mean_rounds", stats.mean_rounds},
          {"median_rounds", stats.median_rounds},
          {"mean_iterations", stats.mean_iterations},
          {"median_iterations", stats.median_iterations},
          {"per_run", std::move(runs)}};
}

std::string histogram_csv(const std::map<std::size_t, std::size_t>& histogram) {
  std::string out = "bin,count\n";
  for (const auto& [bin, count] : histogram) out += fmt::format("{},{}\n", bin, count);
  return out;
}

std::string distribution_csv(const Statevector& state, const RegisterLayout& layout, const Objective& objective) {
  if (state.num_qubits() != layout.total_qubits()) {
    throw std::invalid_argument("state and layout qubit counts differ");
  }
  std::string out = "index";
  for (const auto& v : layout.variables()) out += "," + v.name;
  out += ",f,probability\n";
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double p = state.probability(i);
    if (!(p > 0.0)) continue;
    const Point x = layout.decode(i);
    out += fmt::format("{}", i);
    for (double c : x) out += fmt::format(",{}", c);
    out += fmt::format(",{},{}\n", objective(x), p);
  }
  return out;
}

void emit_distribution(const Statevector& state, const RegisterLayout& layout, const Objective& objective,
                       const std::filesystem::path& path) {
  const std::string csv = distribution_csv(state, layout, objective);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  file << csv;
  if (!file) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace qmin

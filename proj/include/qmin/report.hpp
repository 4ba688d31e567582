#pragma once

// JSON traces and CSV tables written by the command-line driver.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "qmin/baseline.hpp"
#include "qmin/encoding.hpp"
#include "qmin/minsearch.hpp"
#include "qmin/objectives.hpp"
#include "qmin/pivot.hpp"
#include "qmin/statevector.hpp"

namespace qmin {

using nlohmann::json;

json point_json(std::span<const double> point);
json vec3_json(const Vec3& v);

/// {run_id, seed, schedule, rounds: [{round, iterations, index, point, value,
/// threshold, marked}], best_value, best_point, total_iterations, converged, ...}
json search_trace_json(const SearchResult& result, std::size_t run_id, std::uint64_t seed,
                       const std::string& objective, const std::string& schedule);

/// Same shape as search_trace_json with per-generation pivot fields.
json pivot_trace_json(const PivotResult& result, std::size_t run_id, std::uint64_t seed,
                      const std::string& objective);

json growth_report_json(const GrowthReport& report, std::uint64_t seed);

/// {value, point, num_evaluations, index}
json grid_minimum_json(const GridMinimum& minimum);

json ensemble_summary_json(const EnsembleStats& stats, const std::string& objective, const std::string& schedule,
                           std::uint64_t base_seed);

/// "bin,count" rows.
std::string histogram_csv(const std::map<std::size_t, std::size_t>& histogram);

/// One row per basis index with non-zero probability:
/// index, one column per layout variable, f, probability.
std::string distribution_csv(const Statevector& state, const RegisterLayout& layout, const Objective& objective);

/// Writes distribution_csv to `path`; throws std::runtime_error if it cannot.
void emit_distribution(const Statevector& state, const RegisterLayout& layout, const Objective& objective,
                       const std::filesystem::path& path);

}  // namespace qmin

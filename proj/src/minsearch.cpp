#include "qmin/minsearch.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "qmin/baseline.hpp"
#include "qmin/grover.hpp"

namespace qmin {
namespace {

std::size_t parse_count(std::string_view text, std::string_view context) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw std::invalid_argument("bad iteration count '" + std::string(text) + "' in " + std::string(context));
  }
  return value;
}

}  // namespace

Schedule Schedule::parse(std::string_view text) {
  if (text == "baritompa") return baritompa();
  if (text == "incremental") return incremental();
  if (text.starts_with("constant:")) return constant(parse_count(text.substr(9), "constant schedule"));
  if (text.starts_with("custom:")) {
    std::vector<std::size_t> values;
    std::string_view rest = text.substr(7);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      values.push_back(parse_count(rest.substr(0, comma), "custom schedule"));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (values.empty()) throw std::invalid_argument("custom schedule needs at least one entry");
    return custom(std::move(values));
  }
  throw std::invalid_argument("unknown schedule '" + std::string(text) +
                              "' (expected baritompa, incremental, constant:K or custom:a,b,...)");
}

std::optional<Schedule::Step> Schedule::at(std::size_t round) const {
  switch (kind_) {
    case Kind::kBaritompa:
      if (round < kBaritompaSequence.size()) return Step{kBaritompaSequence[round], false};
      return Step{kBaritompaSequence.back(), true};
    case Kind::kIncremental:
      return Step{round + 1, false};
    case Kind::kConstant:
      return Step{values_.front(), false};
    case Kind::kCustom:
      if (round < values_.size()) return Step{values_[round], false};
      return std::nullopt;
  }
  return std::nullopt;
}

std::string Schedule::describe() const {
  switch (kind_) {
    case Kind::kBaritompa:
      return "baritompa";
    case Kind::kIncremental:
      return "incremental";
    case Kind::kConstant:
      return "constant:" + std::to_string(values_.front());
    case Kind::kCustom: {
      std::string out = "custom:";
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values_[i]);
      }
      return out;
    }
  }
  return "unknown";
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kTarget:
      return "target";
    case StopReason::kStalled:
      return "stalled";
    case StopReason::kScheduleExhausted:
      return "schedule-exhausted";
    case StopReason::kMaxRounds:
      return "max-rounds";
  }
  return "unknown";
}

GridValueCache::GridValueCache(const Objective& objective, const RegisterLayout& layout)
    : objective_(objective), layout_(layout), values_(layout.size()), known_(layout.size(), 0) {}

double GridValueCache::value(std::size_t index) {
  if (!known_.at(index)) {
    values_[index] = objective_(layout_.decode(index));
    known_[index] = 1;
    ++evaluations_;
  }
  return values_[index];
}

SearchResult adapted_grover_min(const Objective& objective, const RegisterLayout& layout,
                                const SearchOptions& options, Rng& rng, const RoundObserver& observer) {
  if (layout.total_qubits() > kMaxQubits) throw std::invalid_argument("layout exceeds simulator qubit cap");
  if (objective.arity() != layout.arity()) {
    throw std::invalid_argument("objective '" + objective.name() + "' arity does not match layout");
  }

  GridValueCache cache(objective, layout);
  const std::size_t size = layout.size();
  double threshold = std::numeric_limits<double>::infinity();
  std::size_t stall = 0;

  SearchResult result;
  result.best_value = threshold;
  result.stop_reason = StopReason::kMaxRounds;

  for (std::size_t round = 0; round < options.stop.max_rounds; ++round) {
    const auto step = options.schedule.at(round);
    if (!step) {
      result.stop_reason = StopReason::kScheduleExhausted;
      break;
    }

    const bool first = std::isinf(threshold);
    const MarkedSet marked = MarkedSet::from_predicate(size, [&](std::size_t i) {
      if (first) return true;
      const double v = cache.value(i);
      return options.marking == Marking::kAtMost ? v <= threshold : v < threshold;
    });

    Statevector state = Statevector::uniform(layout.total_qubits());
    iterate(state, marked, step->iterations);

    RoundRecord record;
    record.round = round + 1;
    record.iterations = step->iterations;
    record.marked_count = marked.count();
    record.threshold_before = threshold;
    record.schedule_extended = step->extended;
    if (observer) observer(record, state);

    record.index = sample(state, rng);
    record.point = layout.decode(record.index);
    record.value = cache.value(record.index);
    threshold = std::min(threshold, record.value);
    record.threshold_after = threshold;

    result.trace.total_grover_iterations += step->iterations;
    if (record.value < result.best_value) {
      result.best_value = record.value;
      result.best_index = record.index;
      result.best_point = record.point;
      result.rounds_to_best = record.round;
      result.iterations_to_best = result.trace.total_grover_iterations;
      stall = 0;
    } else {
      ++stall;
    }
    result.trace.rounds.push_back(std::move(record));

    if (options.stop.target && result.best_value <= *options.stop.target) {
      result.stop_reason = StopReason::kTarget;
      break;
    }
    if (options.stop.stall_window > 0 && stall >= options.stop.stall_window) {
      result.stop_reason = StopReason::kStalled;
      break;
    }
  }
  result.converged =
      result.stop_reason == StopReason::kTarget || result.stop_reason == StopReason::kStalled;
  return result;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

EnsembleStats run_ensemble(const Objective& objective, const RegisterLayout& layout, const SearchOptions& options,
                           std::size_t runs, std::uint64_t base_seed) {
  if (runs < 1) throw std::invalid_argument("ensemble needs at least one run");
  EnsembleStats stats;
  const GridMinimum grid = grid_brute_min(objective, layout);
  stats.grid_minimum = grid.value;
  stats.grid_evaluations = grid.num_evaluations;

  std::vector<double> rounds;
  std::vector<double> iterations;
  for (std::size_t run = 0; run < runs; ++run) {
    const std::uint64_t seed = derive_seed(base_seed, run);
    Rng rng(seed);
    SearchResult result = adapted_grover_min(objective, layout, options, rng);

    RunSummary summary;
    summary.run_id = run;
    summary.seed = seed;
    summary.rounds = result.trace.rounds.size();
    summary.total_iterations = result.trace.total_grover_iterations;
    summary.best_value = result.best_value;
    summary.success = result.best_value == grid.value;

    stats.successes += summary.success ? 1 : 0;
    rounds.push_back(static_cast<double>(summary.rounds));
    iterations.push_back(static_cast<double>(summary.total_iterations));
    ++stats.rounds_histogram[summary.rounds];
    ++stats.iterations_histogram[summary.total_iterations];
    stats.runs.push_back(summary);
    stats.results.push_back(std::move(result));
  }

  const auto n = static_cast<double>(runs);
  stats.success_fraction = static_cast<double>(stats.successes) / n;
  stats.mean_rounds = std::accumulate(rounds.begin(), rounds.end(), 0.0) / n;
  stats.mean_iterations = std::accumulate(iterations.begin(), iterations.end(), 0.0) / n;
  stats.median_rounds = median(rounds);
  stats.median_iterations = median(iterations);
  return stats;
}

}  // namespace qmin

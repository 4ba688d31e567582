#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmin/encoding.hpp"
#include "qmin/objectives.hpp"
#include "qmin/rng.hpp"
#include "qmin/statevector.hpp"

namespace qmin {

/// Number of Grover iterations applied before each measurement.
class Schedule {
 public:
  enum class Kind { kBaritompa, kIncremental, kConstant, kCustom };

  static constexpr std::array<std::size_t, 24> kBaritompaSequence{0, 0, 0, 1, 1, 0, 1, 1, 2, 1, 2,  3,
                                                                  1, 4, 5, 1, 6, 2, 7, 9, 11, 13, 16, 5};

  /// The fixed 24-entry sequence, continued by repeating its last entry.
  static Schedule baritompa() { return Schedule(Kind::kBaritompa, {}); }
  /// 1, 2, 3, ...
  static Schedule incremental() { return Schedule(Kind::kIncremental, {}); }
  static Schedule constant(std::size_t iterations) { return Schedule(Kind::kConstant, {iterations}); }
  /// Finite list; the search reports exhaustion once it runs out.
  static Schedule custom(std::vector<std::size_t> iterations) {
    return Schedule(Kind::kCustom, std::move(iterations));
  }

  /// Accepts "baritompa", "incremental", "constant:K" and "custom:a,b,c".
  /// Throws std::invalid_argument otherwise.
  static Schedule parse(std::string_view text);

  struct Step {
    std::size_t iterations = 0;
    bool extended = false;  // past the end of the 24-entry list
  };

  /// Step for the 0-based `round`, or std::nullopt once a custom list ends.
  std::optional<Step> at(std::size_t round) const;

  Kind kind() const noexcept { return kind_; }
  std::string describe() const;

 private:
  Schedule(Kind kind, std::vector<std::size_t> values) : kind_(kind), values_(std::move(values)) {}

  Kind kind_;
  std::vector<std::size_t> values_;
};

/// How the threshold oracle marks indices relative to the incumbent M.
enum class Marking {
  kAtMost,  // f <= M (the incumbent stays marked)
  kBelow,   // f < M
};

struct StopRule {
  std::size_t max_rounds = 100;
  /// Stop after this many consecutive rounds without improvement; 0 disables.
  std::size_t stall_window = 8;
  /// Stop as soon as a measured value is <= target.
  std::optional<double> target;
};

struct SearchOptions {
  Schedule schedule = Schedule::baritompa();
  StopRule stop;
  Marking marking = Marking::kAtMost;
};

struct RoundRecord {
  std::size_t round = 0;  // 1-based
  std::size_t iterations = 0;
  std::size_t marked_count = 0;
  std::size_t index = 0;
  Point point;
  double value = 0.0;
  double threshold_before = 0.0;  // +inf on the first round
  double threshold_after = 0.0;
  bool schedule_extended = false;
};

struct SearchTrace {
  std::vector<RoundRecord> rounds;
  std::size_t total_grover_iterations = 0;
};

enum class StopReason { kTarget, kStalled, kScheduleExhausted, kMaxRounds };

std::string_view to_string(StopReason reason);

struct SearchResult {
  double best_value = 0.0;
  std::size_t best_index = 0;
  Point best_point;
  SearchTrace trace;
  bool converged = false;
  StopReason stop_reason = StopReason::kMaxRounds;
  std::size_t rounds_to_best = 0;      // round that first measured best_value
  std::size_t iterations_to_best = 0;  // cumulative Grover iterations through that round
};

/// Lazily evaluated objective values keyed by basis index.
class GridValueCache {
 public:
  GridValueCache(const Objective& objective, const RegisterLayout& layout);

  double value(std::size_t index);
  std::size_t evaluations() const noexcept { return evaluations_; }

 private:
  const Objective& objective_;
  const RegisterLayout& layout_;
  std::vector<double> values_;
  std::vector<unsigned char> known_;
  std::size_t evaluations_ = 0;
};

/// Called once per round with the record and the amplified state just before
/// it is measured.
using RoundObserver = std::function<void(const RoundRecord&, const Statevector&)>;

/// Threshold-descent Grover minimum search. Each round re-prepares the uniform
/// superposition, marks every index whose value beats the incumbent
/// (everything on round 1), applies the scheduled number of Grover
/// iterations, measures one index and lowers the threshold to the best value
/// seen. Deterministic for a given RNG state.
SearchResult adapted_grover_min(const Objective& objective, const RegisterLayout& layout,
                                const SearchOptions& options, Rng& rng, const RoundObserver& observer = {});

struct RunSummary {
  std::size_t run_id = 0;
  std::uint64_t seed = 0;
  std::size_t rounds = 0;
  std::size_t total_iterations = 0;
  double best_value = 0.0;
  bool success = false;
};

struct EnsembleStats {
  double grid_minimum = 0.0;
  std::size_t grid_evaluations = 0;
  std::vector<RunSummary> runs;
  std::vector<SearchResult> results;
  std::size_t successes = 0;
  double success_fraction = 0.0;
  double mean_rounds = 0.0;
  double median_rounds = 0.0;
  double mean_iterations = 0.0;
  double median_iterations = 0.0;
  std::map<std::size_t, std::size_t> rounds_histogram;
  std::map<std::size_t, std::size_t> iterations_histogram;
};

/// `runs` independent searches, run i seeded with derive_seed(base_seed, i).
/// Success means best_value equals the exhaustive grid minimum.
EnsembleStats run_ensemble(const Objective& objective, const RegisterLayout& layout, const SearchOptions& options,
                           std::size_t runs, std::uint64_t base_seed);

double median(std::vector<double> values);

}  // namespace qmin

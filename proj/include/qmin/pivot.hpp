#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qmin/encoding.hpp"
#include "qmin/objectives.hpp"
#include "qmin/rng.hpp"

namespace qmin {

/// Probe points and their objective values (values[i] == objective(points[i])).
struct ProbeSet {
  std::vector<Point> points;
  std::vector<double> values;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t argmin() const;
};

/// `count` points drawn uniformly from the box. If `grid` is given, every
/// point is snapped to it. Throws for an empty box, lo > hi or count < 2.
ProbeSet generate_probes(const Objective& objective, std::span<const Interval> box, std::size_t count, Rng& rng,
                         const RegisterLayout* grid = nullptr);

/// Outcome of the Grover-assisted selection of the lowest-valued probes.
struct PivotSelection {
  std::vector<std::size_t> indices;  // distinct, all marked
  double threshold = 0.0;            // fraction-quantile of the probe values
  std::size_t marked_count = 0;
  std::size_t iterations = 0;  // Grover iterations per prepared state
  std::size_t draws = 0;       // measurements taken
  std::size_t rejected = 0;    // draws that landed on an unmarked index
  std::size_t grover_iterations() const { return iterations * draws; }
};

/// Marks probes with value <= the ceil(fraction N)-th smallest value,
/// amplifies a uniform superposition over probe indices with the optimal
/// iteration count for that marked count, and measures repeatedly until
/// ceil(fraction N) distinct marked probes are collected. Probe counts that
/// are not a power of two are padded with unmarked indices.
PivotSelection select_pivots(const ProbeSet& probes, double fraction, Rng& rng);

/// w_i proportional to exp(-f_i / kT), shifted by the minimum for overflow
/// safety and normalized to sum 1. Throws for kT <= 0 or an empty input.
std::vector<double> boltzmann_weights(std::span<const double> values, double kT);

struct PivotState {
  std::vector<Point> pivots;
  std::vector<double> values;
  std::vector<double> weights;
  std::vector<double> sigma;  // per coordinate, domain units
  std::size_t generation = 0;
  double threshold = 0.0;
};

struct ResampleOptions {
  bool elitism = true;
  const RegisterLayout* grid = nullptr;
};

/// New probe set of `count` points. Offspring pick a base pivot with
/// probability equal to its weight and add a zero-mean Gaussian offset of
/// width sigma per coordinate, clamped to the box. With elitism the pivots
/// themselves fill the first slots.
ProbeSet resample(const PivotState& state, const Objective& objective, std::size_t count,
                  std::span<const Interval> box, Rng& rng, const ResampleOptions& options = {});

struct PivotConfig {
  double fraction = 0.15;
  double kT = 50.0;
  double sigma_init = 0.125;  // fraction of each coordinate's range
  double sigma_contraction = 0.9;
  double sigma_floor = 1e-4;
  std::size_t stall_generations = 20;
  std::size_t max_generations = 500;
  bool elitism = true;
  bool snap_to_grid = false;
};

struct GenerationRecord {
  std::size_t generation = 0;  // 1-based
  std::size_t num_pivots = 0;
  std::size_t marked_count = 0;
  std::size_t iterations = 0;
  std::size_t draws = 0;
  double threshold = 0.0;
  std::vector<double> sigma;
  double best_value = 0.0;  // best ever, after this generation's resampling
  Point best_point;
};

struct PivotResult {
  double best_value = 0.0;
  Point best_point;
  std::size_t generations = 0;
  std::size_t total_grover_iterations = 0;
  std::size_t total_draws = 0;
  bool converged = false;  // stopped by the stall rule rather than max_generations
  std::vector<GenerationRecord> trace;
};

/// Hybrid pivot + Grover search. The layout supplies the box and the probe
/// count N = 2^total_qubits (and the grid when snap_to_grid is set).
PivotResult pivot_grover_search(const Objective& objective, const RegisterLayout& layout, const PivotConfig& config,
                                Rng& rng);

enum class GrowthMethod {
  kFreeXYZ = 1,  // 4 + 3 + 3 qubits over X in [-0.5, 0.5], Y, Z in [0.01, 1.01]
  kPinnedX = 2,  // X = 0, qubits_per_axis qubits for Y and Z over [0.01, 1.01]
};

struct GrowthConfig {
  int target_atoms = 5;
  GrowthMethod method = GrowthMethod::kPinnedX;
  int qubits_per_axis = 5;
  /// Search atom 5 also in the mirrored box Z in [-1.01, -0.01].
  bool mirrored_fifth = true;
  /// Skip the trimer search and start from an equilateral core of this bond.
  std::optional<double> core_bond;
  int trimer_bond_qubits = 5;
  int trimer_angle_qubits = 5;
  PivotConfig pivot;
};

struct GrowthStage {
  int atoms = 0;
  std::string box;  // human-readable description of the searched box
  double energy = 0.0;
  std::vector<Vec3> geometry;  // all atoms after this stage
  PivotResult search;
};

struct GrowthReport {
  std::vector<GrowthStage> stages;
  double final_energy = 0.0;
  std::size_t total_grover_iterations = 0;
};

/// Grows a cluster one atom at a time: a hybrid search of the trimer (B, A)
/// gives the core, then each added atom is searched with all previous atoms
/// frozen. Throws for target_atoms outside [3, 5].
GrowthReport lj_growth(const GrowthConfig& config, Rng& rng);

}  // namespace qmin

#include "qmin/pivot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "qmin/grover.hpp"
#include "qmin/statevector.hpp"

namespace qmin {
namespace {

void check_box(std::span<const Interval> box) {
  if (box.empty()) throw std::invalid_argument("probe box has no coordinates");
  for (const auto& iv : box) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.hi < iv.lo) {
      throw std::invalid_argument("probe box needs finite lo <= hi on every coordinate");
    }
  }
}

int qubits_for(std::size_t count) {
  int q = 1;
  while ((std::size_t{1} << q) < count) ++q;
  return q;
}

std::string describe_box(const RegisterLayout& layout) {
  std::string out;
  for (const auto& v : layout.variables()) {
    if (!out.empty()) out += ", ";
    out += v.name + " in [" + std::to_string(v.lo) + ", " + std::to_string(v.hi) + "] (" +
           std::to_string(v.qubits) + " qubits)";
  }
  return out;
}

}  // namespace

std::size_t ProbeSet::argmin() const {
  return static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
}

ProbeSet generate_probes(const Objective& objective, std::span<const Interval> box, std::size_t count, Rng& rng,
                         const RegisterLayout* grid) {
  check_box(box);
  if (count < 2) throw std::invalid_argument("need at least two probes");
  ProbeSet probes;
  probes.points.reserve(count);
  probes.values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Point p(box.size());
    for (std::size_t d = 0; d < box.size(); ++d) p[d] = rng.uniform(box[d].lo, box[d].hi);
    if (grid) p = grid->snap(p);
    probes.values.push_back(objective(p));
    probes.points.push_back(std::move(p));
  }
  return probes;
}

PivotSelection select_pivots(const ProbeSet& probes, double fraction, Rng& rng) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw std::invalid_argument("pivot fraction must lie in (0, 1]");
  const std::size_t n = probes.size();
  if (n < 2 || probes.values.size() != n) throw std::invalid_argument("malformed probe set");

  const auto wanted = std::min<std::size_t>(n, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n))));
  std::vector<double> sorted = probes.values;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(wanted - 1), sorted.end());

  PivotSelection sel;
  sel.threshold = sorted[wanted - 1];

  const int qubits = qubits_for(n);
  const MarkedSet marked = MarkedSet::from_predicate(
      std::size_t{1} << qubits, [&](std::size_t i) { return i < n && probes.values[i] <= sel.threshold; });
  sel.marked_count = marked.count();

  const AmplificationPlan plan = plan_amplification(marked.size(), marked.count());
  sel.iterations = plan.optimal_iterations;
  Statevector state = Statevector::uniform(qubits);
  iterate(state, marked, sel.iterations);
  state.renormalize();
  const BornSampler sampler(state);

  std::vector<unsigned char> taken(n, 0);
  while (sel.indices.size() < wanted) {
    const std::size_t i = sampler.draw(rng);
    ++sel.draws;
    if (!marked.contains(i)) {
      ++sel.rejected;
      continue;
    }
    if (!taken[i]) {
      taken[i] = 1;
      sel.indices.push_back(i);
    }
  }
  return sel;
}

std::vector<double> boltzmann_weights(std::span<const double> values, double kT) {
  if (!(kT > 0.0)) throw std::invalid_argument("kT must be positive");
  if (values.empty()) throw std::invalid_argument("no values to weight");
  const double lowest = *std::min_element(values.begin(), values.end());
  std::vector<double> w(values.size());
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    w[i] = std::exp(-(values[i] - lowest) / kT);
    total += w[i];
  }
  for (auto& x : w) x /= total;
  return w;
}

ProbeSet resample(const PivotState& state, const Objective& objective, std::size_t count,
                  std::span<const Interval> box, Rng& rng, const ResampleOptions& options) {
  check_box(box);
  if (state.pivots.empty()) throw std::invalid_argument("resample needs at least one pivot");
  if (state.weights.size() != state.pivots.size() || state.sigma.size() != box.size()) {
    throw std::invalid_argument("pivot state is inconsistent");
  }

  ProbeSet out;
  out.points.reserve(count);
  out.values.reserve(count);
  if (options.elitism) {
    for (std::size_t i = 0; i < state.pivots.size() && out.size() < count; ++i) {
      out.points.push_back(state.pivots[i]);
      out.values.push_back(state.values[i]);
    }
  }

  std::vector<double> cumulative(state.weights.size());
  std::partial_sum(state.weights.begin(), state.weights.end(), cumulative.begin());

  while (out.size() < count) {
    const double u = rng.uniform() * cumulative.back();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) --it;
    const Point& base = state.pivots[static_cast<std::size_t>(it - cumulative.begin())];

    Point p(box.size());
    for (std::size_t d = 0; d < box.size(); ++d) {
      const double offset = state.sigma[d] > 0.0 ? rng.normal(0.0, state.sigma[d]) : 0.0;
      p[d] = std::clamp(base[d] + offset, box[d].lo, box[d].hi);
    }
    if (options.grid) p = options.grid->snap(p);
    out.values.push_back(objective(p));
    out.points.push_back(std::move(p));
  }
  return out;
}

PivotResult pivot_grover_search(const Objective& objective, const RegisterLayout& layout, const PivotConfig& config,
                                Rng& rng) {
  if (layout.total_qubits() > kMaxQubits) throw std::invalid_argument("layout exceeds simulator qubit cap");
  if (objective.arity() != layout.arity()) throw std::invalid_argument("objective arity does not match layout");

  const auto box = layout.box();
  const std::size_t n = layout.size();
  const RegisterLayout* grid = config.snap_to_grid ? &layout : nullptr;

  PivotState state;
  state.sigma.resize(box.size());
  for (std::size_t d = 0; d < box.size(); ++d) state.sigma[d] = config.sigma_init * (box[d].hi - box[d].lo);

  ProbeSet probes = generate_probes(objective, box, n, rng, grid);
  PivotResult result;
  {
    const std::size_t i = probes.argmin();
    result.best_value = probes.values[i];
    result.best_point = probes.points[i];
  }

  std::size_t stall = 0;
  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    const PivotSelection sel = select_pivots(probes, config.fraction, rng);
    state.generation = gen;
    state.threshold = sel.threshold;
    state.pivots.clear();
    state.values.clear();
    for (std::size_t i : sel.indices) {
      state.pivots.push_back(probes.points[i]);
      state.values.push_back(probes.values[i]);
    }
    state.weights = boltzmann_weights(state.values, config.kT);

    GenerationRecord record;
    record.generation = gen;
    record.num_pivots = sel.indices.size();
    record.marked_count = sel.marked_count;
    record.iterations = sel.iterations;
    record.draws = sel.draws;
    record.threshold = sel.threshold;
    record.sigma = state.sigma;
    result.total_grover_iterations += sel.grover_iterations();
    result.total_draws += sel.draws;

    probes = resample(state, objective, n, box, rng, {config.elitism, grid});
    const std::size_t i = probes.argmin();
    if (probes.values[i] < result.best_value) {
      result.best_value = probes.values[i];
      result.best_point = probes.points[i];
      stall = 0;
    } else {
      ++stall;
    }
    record.best_value = result.best_value;
    record.best_point = result.best_point;
    result.trace.push_back(std::move(record));
    result.generations = gen;

    for (auto& s : state.sigma) s = std::max(config.sigma_floor, s * config.sigma_contraction);
    if (config.stall_generations > 0 && stall >= config.stall_generations) {
      result.converged = true;
      break;
    }
  }
  return result;
}

GrowthReport lj_growth(const GrowthConfig& config, Rng& rng) {
  if (config.target_atoms < 3 || config.target_atoms > 5) {
    throw std::invalid_argument("growth supports clusters of 3 to 5 atoms");
  }
  GrowthReport report;

  // Core: either a given equilateral triangle or the hybrid-optimized trimer.
  std::vector<Vec3> atoms;
  {
    GrowthStage stage;
    stage.atoms = 3;
    if (config.core_bond) {
      atoms = build_fixed_core(3, *config.core_bond).fixed_atoms();
      stage.box = "fixed equilateral core";
    } else {
      const RegisterLayout layout({{"B", config.trimer_bond_qubits, 0.0001, 2.0},
                                   {"A", config.trimer_angle_qubits, 0.0001, std::numbers::pi}});
      stage.search = pivot_grover_search(lj_trimer_objective(2), layout, config.pivot, rng);
      const double bond = stage.search.best_point[0];
      atoms = trimer_positions(bond, bond, stage.search.best_point[1]);
      stage.box = describe_box(layout);
      report.total_grover_iterations += stage.search.total_grover_iterations;
    }
    stage.energy = cluster_energy(atoms);
    stage.geometry = atoms;
    report.stages.push_back(std::move(stage));
  }

  for (int n_atoms = 4; n_atoms <= config.target_atoms; ++n_atoms) {
    std::vector<std::pair<RegisterLayout, FreeAtomTemplate>> boxes;
    auto add_boxes = [&](double z_lo, double z_hi) {
      if (config.method == GrowthMethod::kPinnedX) {
        boxes.emplace_back(RegisterLayout({{"Y", config.qubits_per_axis, 0.01, 1.01},
                                           {"Z", config.qubits_per_axis, z_lo, z_hi}}),
                           FreeAtomTemplate::x_pinned(0.0));
      } else {
        boxes.emplace_back(RegisterLayout({{"X", 4, -0.5, 0.5}, {"Y", 3, 0.01, 1.01}, {"Z", 3, z_lo, z_hi}}),
                           FreeAtomTemplate::all_free());
      }
    };
    add_boxes(0.01, 1.01);
    if (n_atoms == 5 && config.mirrored_fifth) add_boxes(-1.01, -0.01);

    std::optional<GrowthStage> best;
    for (const auto& [layout, free_atom] : boxes) {
      const ClusterGeometry geometry(atoms, free_atom);
      GrowthStage stage;
      stage.atoms = n_atoms;
      stage.box = describe_box(layout);
      stage.search = pivot_grover_search(lj_grow_objective(geometry), layout, config.pivot, rng);
      report.total_grover_iterations += stage.search.total_grover_iterations;
      stage.energy = stage.search.best_value;
      stage.geometry = atoms;
      stage.geometry.push_back(free_atom.place(stage.search.best_point));
      if (!best || stage.energy < best->energy) best = std::move(stage);
    }
    atoms = best->geometry;
    report.stages.push_back(std::move(*best));
  }

  report.final_energy = report.stages.back().energy;
  return report;
}

}  // namespace qmin

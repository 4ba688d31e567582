#include "qmin/baseline.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qmin {

GridMinimum grid_brute_min(const Objective& objective, const RegisterLayout& layout) {
  if (layout.total_qubits() > kMaxBruteForceQubits) {
    throw std::invalid_argument("brute force is limited to " + std::to_string(kMaxBruteForceQubits) + " qubits");
  }
  if (objective.arity() != layout.arity()) {
    throw std::invalid_argument("objective arity does not match layout");
  }
  GridMinimum best;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    Point p = layout.decode(i);
    const double v = objective(p);
    if (i == 0 || v < best.value) {
      best.index = i;
      best.value = v;
      best.point = std::move(p);
    }
  }
  best.num_evaluations = layout.size();
  return best;
}

RefineResult refine_min(const Objective& objective, std::span<const Interval> box, const RefineOptions& options) {
  if (box.size() != objective.arity()) throw std::invalid_argument("box dimension does not match objective");
  if (options.levels < 1) throw std::invalid_argument("refine_min needs at least one level");
  if (options.points_per_axis < 2) throw std::invalid_argument("refine_min needs >= 2 points per axis");
  if (!(options.zoom > 0.0 && options.zoom < 1.0)) throw std::invalid_argument("zoom must lie in (0, 1)");

  const std::size_t dim = box.size();
  std::vector<Interval> current(box.begin(), box.end());
  std::vector<double> width(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    if (box[d].hi < box[d].lo) throw std::invalid_argument("box has lo > hi");
    width[d] = box[d].hi - box[d].lo;
  }

  RefineResult result;
  bool have_incumbent = false;
  std::vector<std::size_t> counter(dim, 0);
  Point p(dim);
  const double denom = static_cast<double>(options.points_per_axis - 1);

  for (std::size_t level = 0; level < options.levels; ++level) {
    std::fill(counter.begin(), counter.end(), 0);
    while (true) {
      for (std::size_t d = 0; d < dim; ++d) {
        p[d] = current[d].lo + (current[d].hi - current[d].lo) * static_cast<double>(counter[d]) / denom;
      }
      const double v = objective(p);
      ++result.num_evaluations;
      if (!have_incumbent || v < result.value) {
        result.value = v;
        result.point = p;
        have_incumbent = true;
      }
      std::size_t d = 0;
      while (d < dim && ++counter[d] == options.points_per_axis) counter[d++] = 0;
      if (d == dim) break;
    }
    result.level_values.push_back(result.value);

    for (std::size_t d = 0; d < dim; ++d) {
      width[d] *= options.zoom;
      current[d].lo = std::max(box[d].lo, result.point[d] - width[d] / 2.0);
      current[d].hi = std::min(box[d].hi, result.point[d] + width[d] / 2.0);
    }
  }
  return result;
}

}  // namespace qmin

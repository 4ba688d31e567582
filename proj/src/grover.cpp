#include "qmin/grover.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmin {

void grover_iteration(Statevector& state, const MarkedSet& marked) {
  state.phase_flip(marked);
  state.diffusion();
}

void iterate(Statevector& state, const MarkedSet& marked, std::size_t iterations) {
  for (std::size_t k = 0; k < iterations; ++k) grover_iteration(state, marked);
}

double success_probability(std::size_t total, std::size_t marked, std::size_t iterations) {
  if (total == 0 || marked > total) {
    throw std::invalid_argument("success_probability requires 0 <= marked <= total, total >= 1");
  }
  const double theta = std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(total)));
  const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
  return s * s;
}

double AmplificationPlan::success_probability() const {
  return qmin::success_probability(total, marked, optimal_iterations);
}

AmplificationPlan plan_amplification(std::size_t total, std::size_t marked) {
  if (total == 0 || marked > total) {
    throw std::invalid_argument("plan_amplification requires 0 <= marked <= total, total >= 1");
  }
  AmplificationPlan plan;
  plan.total = total;
  plan.marked = marked;
  if (marked == 0) return plan;
  plan.theta = std::asin(std::sqrt(static_cast<double>(marked) / static_cast<double>(total)));
  const double k = std::round(std::numbers::pi / (4.0 * plan.theta) - 0.5);
  plan.optimal_iterations = static_cast<std::size_t>(std::max(0.0, k));
  return plan;
}

}  // namespace qmin

#pragma once

#include <cstddef>

#include "qmin/statevector.hpp"

namespace qmin {

/// One Grover step G = P_s P_t: phase flip on the marked set, then inversion
/// about the mean. An empty marked set reduces to pure diffusion.
void grover_iteration(Statevector& state, const MarkedSet& marked);

/// Applies grover_iteration `iterations` times (0 leaves the state untouched).
void iterate(Statevector& state, const MarkedSet& marked, std::size_t iterations);

/// Closed-form amplification from the uniform state:
/// sin^2((2k + 1) asin(sqrt(m / N))). Requires 0 <= m <= N and N >= 1.
double success_probability(std::size_t total, std::size_t marked, std::size_t iterations);

/// Rotation-angle bookkeeping for a search over `total` indices with
/// `marked` solutions.
struct AmplificationPlan {
  std::size_t total = 0;
  std::size_t marked = 0;
  double theta = 0.0;  // sin(theta) = sqrt(marked / total)
  std::size_t optimal_iterations = 0;

  double success_probability() const;
};

/// optimal_iterations = round(pi / (4 theta) - 1/2), floored at 0. With no
/// marked indices there is nothing to amplify and the plan uses 0 iterations.
AmplificationPlan plan_amplification(std::size_t total, std::size_t marked);

}  // namespace qmin

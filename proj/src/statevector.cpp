#include "qmin/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qmin {
namespace {

constexpr double kDriftTolerance = 1e-10;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::size_t n) {
  int bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

}  // namespace

MarkedSet MarkedSet::from_predicate(std::size_t size,
                                    const std::function<bool(std::size_t)>& predicate) {
  MarkedSet set(size);
  for (std::size_t i = 0; i < size; ++i) {
    if (predicate(i)) {
      set.mask_[i] = 1;
      set.indices_.push_back(i);
    }
  }
  return set;
}

MarkedSet MarkedSet::from_indices(std::size_t size, std::span<const std::size_t> indices) {
  MarkedSet set(size);
  for (std::size_t i : indices) {
    if (i >= size) {
      throw std::invalid_argument("marked index " + std::to_string(i) + " outside register of size " +
                                  std::to_string(size));
    }
    set.mask_[i] = 1;
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (set.mask_[i]) set.indices_.push_back(i);
  }
  return set;
}

Statevector Statevector::uniform(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(num_qubits));
  }
  const std::size_t size = std::size_t{1} << num_qubits;
  const double amplitude = std::pow(2.0, -0.5 * num_qubits);
  return Statevector(num_qubits, std::vector<Amplitude>(size, Amplitude(amplitude, 0.0)));
}

Statevector Statevector::from_amplitudes(std::vector<Amplitude> amplitudes) {
  if (amplitudes.size() < 2 || !is_power_of_two(amplitudes.size())) {
    throw std::invalid_argument("amplitude count must be a power of two >= 2");
  }
  const int n = log2_exact(amplitudes.size());
  if (n > kMaxQubits) throw std::invalid_argument("register exceeds simulator cap");
  Statevector state(n, std::move(amplitudes));
  const double norm = state.norm_squared();
  if (!std::isfinite(norm)) throw NumericFailure("non-finite amplitude");
  if (std::abs(norm - 1.0) > 1e-8) {
    throw std::invalid_argument("amplitudes are not normalized (|psi|^2 = " + std::to_string(norm) + ")");
  }
  return state;
}

double Statevector::norm_squared() const {
  double total = 0.0;
  for (const auto& a : amplitudes_) total += std::norm(a);
  return total;
}

void Statevector::phase_flip(const MarkedSet& marked) {
  if (marked.size() != amplitudes_.size()) {
    throw std::invalid_argument("marked set size does not match register");
  }
  for (std::size_t i : marked.indices()) amplitudes_[i] = -amplitudes_[i];
}

void Statevector::diffusion() {
  Amplitude sum(0.0, 0.0);
  for (const auto& a : amplitudes_) sum += a;
  const Amplitude twice_mean = 2.0 * sum / static_cast<double>(amplitudes_.size());
  for (auto& a : amplitudes_) a = twice_mean - a;
}

void Statevector::renormalize() {
  const double norm = norm_squared();
  if (!std::isfinite(norm) || norm <= 0.0) {
    throw NumericFailure("cannot renormalize state with |psi|^2 = " + std::to_string(norm));
  }
  if (std::abs(norm - 1.0) <= kDriftTolerance) return;
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& a : amplitudes_) a *= scale;
  ++renormalizations_;
}

double marked_probability(const Statevector& state, const MarkedSet& marked) {
  if (marked.size() != state.size()) {
    throw std::invalid_argument("marked set size does not match register");
  }
  double total = 0.0;
  for (std::size_t i : marked.indices()) total += std::norm(state[i]);
  return total;
}

std::size_t sample(Statevector& state, Rng& rng) {
  state.renormalize();
  return BornSampler(state).draw(rng);
}

BornSampler::BornSampler(const Statevector& state) : cumulative_(state.size()) {
  double running = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double p = std::norm(state[i]);
    if (!std::isfinite(p)) throw NumericFailure("non-finite amplitude at index " + std::to_string(i));
    running += p;
    cumulative_[i] = running;
  }
  if (!(running > 0.0)) throw NumericFailure("state has zero norm");
}

std::size_t BornSampler::draw(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  // upper_bound never lands on a zero-probability entry: cumulative_[i] > u
  // implies cumulative_[i - 1] <= u < cumulative_[i].
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it != cumulative_.end()) return static_cast<std::size_t>(it - cumulative_.begin());
  // u rounded up to the total; fall back to the last index with support.
  std::size_t index = cumulative_.size() - 1;
  while (index > 0 && cumulative_[index] == cumulative_[index - 1]) --index;
  return index;
}

}  // namespace qmin

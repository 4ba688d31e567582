#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "qmin/rng.hpp"

namespace qmin {

using Amplitude = std::complex<double>;

/// Largest register the dense simulator will allocate (2^24 amplitudes, 256 MiB).
inline constexpr int kMaxQubits = 24;

/// Thrown when a state contains NaN/Inf amplitudes or cannot be normalized.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Set of marked basis indices, i.e. the support of the phase oracle.
///
/// Stored both as a dense membership mask (O(1) lookup) and as the sorted
/// list of marked indices (so the phase flip touches only m amplitudes).
class MarkedSet {
 public:
  /// Marks every index i in [0, size) for which `predicate(i)` holds.
  static MarkedSet from_predicate(std::size_t size,
                                  const std::function<bool(std::size_t)>& predicate);
  /// Explicit index list; duplicates are ignored. Throws std::invalid_argument
  /// if an index is outside [0, size).
  static MarkedSet from_indices(std::size_t size, std::span<const std::size_t> indices);
  static MarkedSet none(std::size_t size) { return MarkedSet(size); }

  std::size_t size() const noexcept { return mask_.size(); }
  std::size_t count() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }
  bool contains(std::size_t index) const { return index < mask_.size() && mask_[index] != 0; }
  std::span<const std::size_t> indices() const noexcept { return indices_; }

 private:
  explicit MarkedSet(std::size_t size) : mask_(size, 0) {}

  std::vector<unsigned char> mask_;
  std::vector<std::size_t> indices_;
};

/// Dense register of 2^n complex amplitudes.
///
/// Basis index i corresponds to the qubit string |q_{n-1} ... q_0> read as the
/// binary expansion of i, most-significant bit first, so e_0 = |0...0>.
class Statevector {
 public:
  /// Hadamard on every qubit of |0...0>: each amplitude is 2^(-n/2).
  static Statevector uniform(int num_qubits);
  /// Takes ownership of explicit amplitudes. The length must be a power of
  /// two >= 2 and the norm must be 1 within 1e-8.
  static Statevector from_amplitudes(std::vector<Amplitude> amplitudes);

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const noexcept { return amplitudes_; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }

  double probability(std::size_t index) const { return std::norm(amplitudes_.at(index)); }
  double norm_squared() const;

  /// Selective phase inversion, I - 2 sum_t |t><t|.
  void phase_flip(const MarkedSet& marked);
  /// Inversion about the mean, 2|s><s| - I, in O(2^n).
  void diffusion();

  /// Rescales to unit norm. Throws NumericFailure on a zero or non-finite norm.
  void renormalize();
  /// Number of times renormalize() has actually changed the state.
  std::size_t renormalizations() const noexcept { return renormalizations_; }

 private:
  Statevector(int num_qubits, std::vector<Amplitude> amplitudes)
      : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {}

  int num_qubits_;
  std::vector<Amplitude> amplitudes_;
  std::size_t renormalizations_ = 0;
};

/// Sum of |a_i|^2 over the marked indices.
double marked_probability(const Statevector& state, const MarkedSet& marked);

/// Born-rule measurement in the computational basis. The state is
/// renormalized first if its norm has drifted by more than 1e-10.
std::size_t sample(Statevector& state, Rng& rng);

/// Precomputed cumulative distribution for drawing many measurement outcomes
/// from the same (unchanged) state in O(log N) each.
class BornSampler {
 public:
  explicit BornSampler(const Statevector& state);
  std::size_t draw(Rng& rng) const;

 private:
  std::vector<double> cumulative_;
};

}  // namespace qmin

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qmin {

using Point = std::vector<double>;

/// One searched variable: `qubits` bits mapped endpoint-inclusively onto
/// [lo, hi], i.e. value = lo + k (hi - lo) / (2^qubits - 1).
struct VariableSpec {
  std::string name;
  int qubits = 1;
  double lo = 0.0;
  double hi = 1.0;

  std::size_t levels() const { return std::size_t{1} << qubits; }
  double step() const { return (hi - lo) / static_cast<double>(levels() - 1); }
  double value_at(std::size_t k) const;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct EncodedIndex {
  std::size_t index = 0;
  bool clamped = false;  // at least one coordinate was outside [lo, hi]
};

/// Partition of a register into per-variable bit fields. The first variable
/// occupies the most-significant bits.
class RegisterLayout {
 public:
  static constexpr int kMaxTotalQubits = 48;

  /// Throws std::invalid_argument on an empty list, qubits < 1, lo >= hi,
  /// non-finite bounds or a total above kMaxTotalQubits.
  explicit RegisterLayout(std::vector<VariableSpec> variables);

  const std::vector<VariableSpec>& variables() const noexcept { return variables_; }
  std::size_t arity() const noexcept { return variables_.size(); }
  int total_qubits() const noexcept { return total_qubits_; }
  std::size_t size() const noexcept { return std::size_t{1} << total_qubits_; }
  std::vector<Interval> box() const;

  /// Local integer k of variable `var` inside basis index `index`.
  std::size_t field(std::size_t index, std::size_t var) const;

  Point decode(std::size_t index) const;
  /// Nearest grid index per coordinate (ties round away from zero).
  /// Coordinates outside the box are clamped and flagged; NaN throws.
  EncodedIndex encode(std::span<const double> point) const;
  /// decode(encode(point)): the nearest grid point.
  Point snap(std::span<const double> point) const;

 private:
  std::vector<VariableSpec> variables_;
  std::vector<int> shifts_;
  int total_qubits_ = 0;
};

}  // namespace qmin

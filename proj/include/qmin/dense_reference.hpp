#pragma once

// Explicit-matrix form of the Grover operators. O(4^n) storage; only meant
// for cross-checking the O(2^n) statevector path on small registers.

#include <cstddef>
#include <utility>
#include <vector>

#include "qmin/statevector.hpp"

namespace qmin {

inline constexpr int kMaxDenseQubits = 6;

class DenseMatrix {
 public:
  explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim, 0.0) {}

  static DenseMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  double& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
  double operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

  DenseMatrix operator*(const DenseMatrix& rhs) const;
  std::vector<Amplitude> apply(std::span<const Amplitude> v) const;

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

struct GroverOperators {
  DenseMatrix diffusion;  // P_s = 2|s><s| - I, entries 2/2^n - delta_ij
  DenseMatrix oracle;     // P_t = I with -1 on marked diagonal entries
};

/// Throws std::invalid_argument for n outside [1, kMaxDenseQubits] or a
/// marked set whose size is not 2^n.
GroverOperators dense_reference_operators(int num_qubits, const MarkedSet& marked);

}  // namespace qmin

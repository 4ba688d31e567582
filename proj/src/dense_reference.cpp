#include "qmin/dense_reference.hpp"

#include <stdexcept>
#include <string>

namespace qmin {

DenseMatrix DenseMatrix::identity(std::size_t dim) {
  DenseMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix& rhs) const {
  if (rhs.dim_ != dim_) throw std::invalid_argument("matrix dimension mismatch");
  DenseMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t k = 0; k < dim_; ++k) {
      const double lhs = (*this)(i, k);
      if (lhs == 0.0) continue;
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) += lhs * rhs(k, j);
    }
  }
  return out;
}

std::vector<Amplitude> DenseMatrix::apply(std::span<const Amplitude> v) const {
  if (v.size() != dim_) throw std::invalid_argument("vector dimension mismatch");
  std::vector<Amplitude> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    Amplitude acc(0.0, 0.0);
    for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

GroverOperators dense_reference_operators(int num_qubits, const MarkedSet& marked) {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
    throw std::invalid_argument("dense reference supports 1.." + std::to_string(kMaxDenseQubits) +
                                " qubits, got " + std::to_string(num_qubits));
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (marked.size() != dim) throw std::invalid_argument("marked set size does not match register");

  GroverOperators ops{DenseMatrix(dim), DenseMatrix::identity(dim)};
  const double off = 2.0 / static_cast<double>(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) ops.diffusion(i, j) = i == j ? off - 1.0 : off;
  }
  for (std::size_t t : marked.indices()) ops.oracle(t, t) = -1.0;
  return ops;
}

}  // namespace qmin

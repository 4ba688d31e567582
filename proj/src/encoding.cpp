#include "qmin/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qmin {

double VariableSpec::value_at(std::size_t k) const {
  // Pin both endpoints so the grid covers [lo, hi] exactly.
  if (k == 0) return lo;
  if (k == levels() - 1) return hi;
  return lo + static_cast<double>(k) * step();
}

RegisterLayout::RegisterLayout(std::vector<VariableSpec> variables) : variables_(std::move(variables)) {
  if (variables_.empty()) throw std::invalid_argument("layout needs at least one variable");
  for (const auto& v : variables_) {
    if (v.qubits < 1) throw std::invalid_argument("variable '" + v.name + "' needs at least one qubit");
    if (!std::isfinite(v.lo) || !std::isfinite(v.hi) || !(v.lo < v.hi)) {
      throw std::invalid_argument("variable '" + v.name + "' needs finite lo < hi");
    }
    total_qubits_ += v.qubits;
    if (total_qubits_ > kMaxTotalQubits) throw std::invalid_argument("layout exceeds qubit cap");
  }
  shifts_.resize(variables_.size());
  int shift = total_qubits_;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    shift -= variables_[i].qubits;
    shifts_[i] = shift;
  }
}

std::vector<Interval> RegisterLayout::box() const {
  std::vector<Interval> out;
  out.reserve(variables_.size());
  for (const auto& v : variables_) out.push_back({v.lo, v.hi});
  return out;
}

std::size_t RegisterLayout::field(std::size_t index, std::size_t var) const {
  return (index >> shifts_.at(var)) & (variables_[var].levels() - 1);
}

Point RegisterLayout::decode(std::size_t index) const {
  if (index >= size()) {
    throw std::invalid_argument("index " + std::to_string(index) + " outside register of size " +
                                std::to_string(size()));
  }
  Point point(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) point[i] = variables_[i].value_at(field(index, i));
  return point;
}

EncodedIndex RegisterLayout::encode(std::span<const double> point) const {
  if (point.size() != variables_.size()) {
    throw std::invalid_argument("point has " + std::to_string(point.size()) + " coordinates, layout has " +
                                std::to_string(variables_.size()));
  }
  EncodedIndex out;
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& v = variables_[i];
    double x = point[i];
    if (std::isnan(x)) throw std::invalid_argument("NaN coordinate for variable '" + v.name + "'");
    if (x < v.lo || x > v.hi) {
      out.clamped = true;
      x = x < v.lo ? v.lo : v.hi;
    }
    // std::round rounds half away from zero.
    const auto k = static_cast<std::size_t>(std::round((x - v.lo) / v.step()));
    out.index |= std::min(k, v.levels() - 1) << shifts_[i];
  }
  return out;
}

Point RegisterLayout::snap(std::span<const double> point) const { return decode(encode(point).index); }

}  // namespace qmin

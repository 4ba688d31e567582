#include "qmin/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qmin {

double goldstein_price(double x1, double x2) {
  const double a = x1 + x2 + 1.0;
  const double b = 2.0 * x1 - 3.0 * x2;
  const double first = 1.0 + a * a * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2 * x2);
  const double second =
      30.0 + b * b * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2 * x2);
  return first * second;
}

namespace {

double shubert_factor(double x) {
  double sum = 0.0;
  for (int i = 1; i <= 5; ++i) sum += i * std::cos((i + 1) * x + i);
  return sum;
}

double capped(double energy) { return std::min(energy, kEnergyCap); }

}  // namespace

double shubert(double x1, double x2) { return shubert_factor(x1) * shubert_factor(x2); }

double lj_pair(double r) {
  if (!(r > 0.0)) throw std::invalid_argument("lj_pair requires r > 0");
  const double inv6 = 1.0 / (r * r * r * r * r * r);
  return inv6 * inv6 - 2.0 * inv6;
}

double trimer_energy(double bond1, double bond2, double angle) {
  if (bond1 <= kCoincidenceDistance || bond2 <= kCoincidenceDistance) return kEnergyCap;
  const double r12_sq = bond1 * bond1 + bond2 * bond2 - 2.0 * bond1 * bond2 * std::cos(angle);
  const double r12 = std::sqrt(std::max(r12_sq, 0.0));
  if (r12 <= kCoincidenceDistance) return kEnergyCap;
  return capped(lj_pair(bond1) + lj_pair(bond2) + lj_pair(r12));
}

double distance(const Vec3& a, const Vec3& b) {
  const Vec3 d = a - b;
  return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

double cluster_energy(std::span<const Vec3> atoms) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < atoms.size(); ++i) {
    for (std::size_t j = i + 1; j < atoms.size(); ++j) {
      const double r = distance(atoms[i], atoms[j]);
      if (r <= kCoincidenceDistance) return kEnergyCap;
      total += lj_pair(r);
    }
  }
  return capped(total);
}

std::size_t FreeAtomTemplate::searched_count() const {
  return static_cast<std::size_t>(std::count(pinned.begin(), pinned.end(), std::nullopt));
}

Vec3 FreeAtomTemplate::place(std::span<const double> searched) const {
  if (searched.size() != searched_count()) {
    throw std::invalid_argument("free atom expects " + std::to_string(searched_count()) + " coordinates");
  }
  std::array<double, 3> xyz{};
  std::size_t next = 0;
  for (std::size_t axis = 0; axis < 3; ++axis) xyz[axis] = pinned[axis] ? *pinned[axis] : searched[next++];
  return {xyz[0], xyz[1], xyz[2]};
}

ClusterGeometry::ClusterGeometry(std::vector<Vec3> fixed_atoms, FreeAtomTemplate free_atom)
    : fixed_(std::move(fixed_atoms)), free_atom_(free_atom) {
  for (std::size_t i = 0; i + 1 < fixed_.size(); ++i) {
    for (std::size_t j = i + 1; j < fixed_.size(); ++j) {
      if (distance(fixed_[i], fixed_[j]) <= kCoincidenceDistance) {
        throw std::invalid_argument("fixed atoms " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
  fixed_energy_ = cluster_energy(fixed_);
}

double ClusterGeometry::energy_with(const Vec3& free_position) const {
  double total = fixed_energy_;
  for (const auto& atom : fixed_) {
    const double r = distance(atom, free_position);
    if (r <= kCoincidenceDistance) return kEnergyCap;
    total += lj_pair(r);
  }
  return capped(total);
}

ClusterGeometry ClusterGeometry::with_frozen(const Vec3& atom, FreeAtomTemplate next) const {
  auto atoms = fixed_;
  atoms.push_back(atom);
  return ClusterGeometry(std::move(atoms), next);
}

ClusterGeometry build_fixed_core(int num_fixed, double bond) {
  if (!(bond > 0.0)) throw std::invalid_argument("bond length must be positive");
  if (num_fixed != 3 && num_fixed != 4) throw std::invalid_argument("fixed core must have 3 or 4 atoms");
  const double sqrt3 = std::numbers::sqrt3;
  std::vector<Vec3> atoms{{-bond / 2.0, 0.0, 0.0}, {bond / 2.0, 0.0, 0.0}, {0.0, bond * sqrt3 / 2.0, 0.0}};
  if (num_fixed == 4) atoms.push_back({0.0, bond * sqrt3 / 6.0, bond * std::sqrt(2.0 / 3.0)});
  return ClusterGeometry(std::move(atoms), FreeAtomTemplate::all_free());
}

std::vector<Vec3> trimer_positions(double bond1, double bond2, double angle) {
  // Atom 0 sits on the +y axis; the two bonds open symmetrically around -y.
  const double half = angle / 2.0;
  const double apex_y = 0.5 * (bond1 + bond2) * std::cos(half);
  const Vec3 apex{0.0, apex_y, 0.0};
  return {apex,
          apex + Vec3{-bond1 * std::sin(half), -bond1 * std::cos(half), 0.0},
          apex + Vec3{bond2 * std::sin(half), -bond2 * std::cos(half), 0.0}};
}

std::vector<Vec3> bipyramid_positions(double side, double half_height) {
  auto atoms = build_fixed_core(3, side).fixed_atoms();
  const double cy = side * std::numbers::sqrt3 / 6.0;
  atoms.push_back({0.0, cy, half_height});
  atoms.push_back({0.0, cy, -half_height});
  return atoms;
}

Objective::Objective(std::string name, std::size_t arity, Function fn)
    : name_(std::move(name)), arity_(arity), fn_(std::move(fn)) {}

double Objective::operator()(std::span<const double> point) const {
  if (point.size() != arity_) {
    throw std::invalid_argument("objective '" + name_ + "' expects " + std::to_string(arity_) +
                                " coordinates, got " + std::to_string(point.size()));
  }
  return fn_(point);
}

Objective gp_objective() {
  return Objective("gp", 2, [](std::span<const double> p) { return goldstein_price(p[0], p[1]); });
}

Objective shubert_objective() {
  return Objective("shubert", 2, [](std::span<const double> p) { return shubert(p[0], p[1]); });
}

Objective lj_trimer_objective(std::size_t arity) {
  if (arity == 2) {
    return Objective("lj-trimer", 2, [](std::span<const double> p) { return trimer_energy(p[0], p[0], p[1]); });
  }
  if (arity == 3) {
    return Objective("lj-trimer", 3, [](std::span<const double> p) { return trimer_energy(p[0], p[1], p[2]); });
  }
  throw std::invalid_argument("lj-trimer takes (B, A) or (B1, B2, A)");
}

Objective lj_grow_objective(ClusterGeometry geometry) {
  const std::size_t arity = geometry.free_atom().searched_count();
  return Objective("lj-grow", arity, [g = std::move(geometry)](std::span<const double> p) { return g.energy(p); });
}

Objective lj_bipyramid_objective() {
  return Objective("lj-bipyramid", 2, [](std::span<const double> p) {
    if (p[0] <= kCoincidenceDistance || p[1] <= kCoincidenceDistance) return kEnergyCap;
    const auto atoms = bipyramid_positions(p[0], p[1]);
    return cluster_energy(atoms);
  });
}

}  // namespace qmin

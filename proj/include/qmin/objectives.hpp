#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qmin {

/// Energies are capped here when atoms (nearly) coincide so every comparison
/// stays finite.
inline constexpr double kEnergyCap = 1e12;
inline constexpr double kCoincidenceDistance = 1e-8;

double goldstein_price(double x1, double x2);

/// Product of the two five-term sums  sum_{i=1..5} i cos((i + 1) x + i).
double shubert(double x1, double x2);

/// Lennard-Jones pair energy in reduced units: r^-12 - 2 r^-6, well depth -1
/// at r = 1. Throws std::invalid_argument for r <= 0.
double lj_pair(double r);

/// Three-atom energy from two bond lengths meeting at atom 0 and the angle
/// between them (radians).
double trimer_energy(double bond1, double bond2, double angle);

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double distance(const Vec3& a, const Vec3& b);

/// Sum of pair energies over all atoms; kEnergyCap if any pair coincides.
double cluster_energy(std::span<const Vec3> atoms);

/// Which coordinates of the added atom are searched. A pinned axis holds a
/// value; a searched axis is std::nullopt and consumes the next entry of the
/// searched-coordinate vector, in x, y, z order.
struct FreeAtomTemplate {
  std::array<std::optional<double>, 3> pinned{};

  static FreeAtomTemplate all_free() { return {}; }
  static FreeAtomTemplate x_pinned(double x) { return {{x, std::nullopt, std::nullopt}}; }

  std::size_t searched_count() const;
  Vec3 place(std::span<const double> searched) const;
};

/// Frozen atoms plus one atom whose position is being optimized.
class ClusterGeometry {
 public:
  /// Throws std::invalid_argument if two fixed atoms lie within 1e-8.
  ClusterGeometry(std::vector<Vec3> fixed_atoms, FreeAtomTemplate free_atom);

  const std::vector<Vec3>& fixed_atoms() const noexcept { return fixed_; }
  const FreeAtomTemplate& free_atom() const noexcept { return free_atom_; }
  double fixed_energy() const noexcept { return fixed_energy_; }

  double energy_with(const Vec3& free_position) const;
  double energy(std::span<const double> searched) const { return energy_with(free_atom_.place(searched)); }

  /// Copy with `atom` frozen into the core and a new free-atom template.
  ClusterGeometry with_frozen(const Vec3& atom, FreeAtomTemplate next) const;

 private:
  std::vector<Vec3> fixed_;
  FreeAtomTemplate free_atom_;
  double fixed_energy_ = 0.0;
};

/// Three fixed atoms: equilateral triangle (-d/2, 0, 0), (d/2, 0, 0),
/// (0, d sqrt(3)/2, 0). Four: the same plus the regular-tetrahedron apex
/// (0, d sqrt(3)/6, d sqrt(2/3)) above the centroid. The free atom template
/// is all_free(). Throws for num_fixed not in {3, 4} or bond <= 0.
ClusterGeometry build_fixed_core(int num_fixed, double bond);

/// Trimer placed in the z = 0 plane with atom 0 on the +y axis and atoms 1, 2
/// symmetric about it. For equal bonds d and a 60 degree angle this matches
/// build_fixed_core(3, d).
std::vector<Vec3> trimer_positions(double bond1, double bond2, double angle);

/// D3h five-atom cluster: equilateral triangle of side `side` in z = 0 and
/// two atoms at +-half_height on the axis through its centroid.
std::vector<Vec3> bipyramid_positions(double side, double half_height);

/// A named real-valued function of a fixed number of coordinates.
class Objective {
 public:
  using Function = std::function<double(std::span<const double>)>;

  Objective(std::string name, std::size_t arity, Function fn);

  const std::string& name() const noexcept { return name_; }
  std::size_t arity() const noexcept { return arity_; }
  /// Throws std::invalid_argument if point.size() != arity().
  double operator()(std::span<const double> point) const;

 private:
  std::string name_;
  std::size_t arity_;
  Function fn_;
};

Objective gp_objective();
Objective shubert_objective();
/// arity 2: (B, A) with both bonds equal to B; arity 3: (B1, B2, A).
Objective lj_trimer_objective(std::size_t arity = 2);
/// Energy of `geometry` as a function of the free atom's searched coordinates.
Objective lj_grow_objective(ClusterGeometry geometry);
/// (side, half_height) of bipyramid_positions.
Objective lj_bipyramid_objective();

}  // namespace qmin

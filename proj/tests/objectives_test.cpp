#include "qmin/objectives.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "qmin/rng.hpp"

namespace qmin {
namespace {

// Independent oracles written from the textbook formulas.
double gp_oracle(double x, double y) {
  const double a = 1 + std::pow(x + y + 1, 2) * (19 - 14 * x + 3 * x * x - 14 * y + 6 * x * y + 3 * y * y);
  const double b = 30 + std::pow(2 * x - 3 * y, 2) * (18 - 32 * x + 12 * x * x + 48 * y - 36 * x * y + 27 * y * y);
  return a * b;
}

double lj_oracle(double r) { return 1.0 / std::pow(r, 12) - 2.0 / std::pow(r, 6); }

double relative_error(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

TEST(GoldsteinPrice, StationaryValues) {
  EXPECT_EQ(goldstein_price(0.0, -1.0), 3.0);
  EXPECT_LE(relative_error(goldstein_price(-0.6, -0.4), 30.0), 1e-9);
  EXPECT_LE(relative_error(goldstein_price(1.8, 0.2), 84.0), 1e-9);
  EXPECT_LE(relative_error(goldstein_price(1.2, 0.8), 840.0), 1e-9);
}

TEST(GoldsteinPrice, MatchesOracle) {
  Rng rng(31);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-3.2, 3.0), y = rng.uniform(-3.2, 3.0);
    EXPECT_LE(relative_error(goldstein_price(x, y), gp_oracle(x, y)), 1e-12);
  }
}

TEST(Shubert, Origin) {
  double s = 0.0;
  for (int i = 1; i <= 5; ++i) s += i * std::cos(i);
  EXPECT_NEAR(shubert(0.0, 0.0), s * s, 1e-12);
  EXPECT_NEAR(shubert(0.0, 0.0), 19.8758, 5e-5);
}

TEST(Shubert, GlobalMinimumValue) {
  // One of the 18 minimizers; a local polish from a tabulated start.
  double best = 0.0;
  for (double x = -1.45; x <= -1.40; x += 1e-5) {
    for (double y = -0.82; y <= -0.78; y += 1e-4) best = std::min(best, shubert(x, y));
  }
  EXPECT_NEAR(best, -186.7309, 1e-3);
}

TEST(Shubert, Symmetric) {
  Rng rng(32);
  for (int i = 0; i < 1000; ++i) {
    const double a = rng.uniform(-10, 10), b = rng.uniform(-10, 10);
    EXPECT_EQ(shubert(a, b), shubert(b, a));
  }
}

TEST(LjPair, Examples) {
  EXPECT_EQ(lj_pair(1.0), -1.0);
  EXPECT_EQ(lj_pair(2.0), std::pow(2.0, -12) - 2.0 * std::pow(2.0, -6));
  EXPECT_NEAR(lj_pair(2.0), -0.031005859375, 1e-15);
  EXPECT_LT(lj_pair(100.0), 0.0);
  EXPECT_GT(lj_pair(100.0), -1e-11);
  EXPECT_THROW(lj_pair(0.0), std::invalid_argument);
  EXPECT_THROW(lj_pair(-1.0), std::invalid_argument);
}

TEST(LjPair, MinimumAtUnitSeparation) {
  const double h = 1e-6;
  EXPECT_NEAR((lj_pair(1 + h) - lj_pair(1 - h)) / (2 * h), 0.0, 1e-6);
  EXPECT_GT(lj_pair(0.99), lj_pair(1.0));
  EXPECT_GT(lj_pair(1.01), lj_pair(1.0));
}

TEST(LjPair, MatchesOracle) {
  Rng rng(33);
  for (int i = 0; i < 1000; ++i) {
    const double r = rng.uniform(0.5, 5.0);
    EXPECT_LE(relative_error(lj_pair(r), lj_oracle(r)), 1e-12);
  }
}

TEST(TrimerEnergy, Examples) {
  EXPECT_NEAR(trimer_energy(1.0323, 1.0323, 1.0472), -2.9094, 5e-4);
  EXPECT_NEAR(trimer_energy(1.0, 1.0, std::numbers::pi / 3), -3.0, 1e-12);
}

TEST(TrimerEnergy, DegenerateGeometryIsCapped) {
  EXPECT_EQ(trimer_energy(1.0, 1.0, 0.0), kEnergyCap);
  EXPECT_EQ(trimer_energy(1e-9, 1.0, 1.0), kEnergyCap);
  EXPECT_LE(trimer_energy(0.0001, 0.0001, 1.0), kEnergyCap);
}

TEST(TrimerEnergy, Properties) {
  Rng rng(34);
  for (int i = 0; i < 500; ++i) {
    const double b1 = rng.uniform(0.5, 2.0), b2 = rng.uniform(0.5, 2.0), a = rng.uniform(0.2, 3.0);
    EXPECT_EQ(trimer_energy(b1, b2, a), trimer_energy(b2, b1, a));
    const double r12 = std::sqrt(b1 * b1 + b2 * b2 - 2 * b1 * b2 * std::cos(a));
    EXPECT_LE(relative_error(trimer_energy(b1, b2, a), lj_oracle(b1) + lj_oracle(b2) + lj_oracle(r12)), 1e-10);
    EXPECT_LE(relative_error(trimer_energy(b1, b1, std::numbers::pi / 3), 3 * lj_pair(b1)), 1e-10);
  }
}

TEST(TrimerPositions, ConsistentWithInternalCoordinates) {
  Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    const double b1 = rng.uniform(0.5, 2.0), b2 = rng.uniform(0.5, 2.0), a = rng.uniform(0.2, 3.0);
    const auto atoms = trimer_positions(b1, b2, a);
    EXPECT_NEAR(distance(atoms[0], atoms[1]), b1, 1e-12);
    EXPECT_NEAR(distance(atoms[0], atoms[2]), b2, 1e-12);
    EXPECT_LE(relative_error(cluster_energy(atoms), trimer_energy(b1, b2, a)), 1e-12);
  }
}

TEST(FixedCore, TriangleDistances) {
  const auto core = build_fixed_core(3, 0.99889);
  const auto& a = core.fixed_atoms();
  ASSERT_EQ(a.size(), 3u);
  EXPECT_NEAR(distance(a[0], a[1]), 0.99889, 1e-12);
  EXPECT_NEAR(distance(a[0], a[2]), 0.99889, 1e-12);
  EXPECT_NEAR(distance(a[1], a[2]), 0.99889, 1e-12);
}

TEST(FixedCore, TetrahedronApex) {
  const auto core = build_fixed_core(4, 1.0);
  const auto& apex = core.fixed_atoms()[3];
  EXPECT_NEAR(apex.x, 0.0, 1e-15);
  EXPECT_NEAR(apex.y, std::sqrt(3.0) / 6.0, 1e-15);
  EXPECT_NEAR(apex.z, std::sqrt(2.0 / 3.0), 1e-15);
  EXPECT_NEAR(apex.y, 0.2887, 5e-5);
  EXPECT_NEAR(apex.z, 0.8165, 5e-5);
  EXPECT_NEAR(core.fixed_energy(), -6.0, 1e-12);
  // The grid-searched 4th atom (0, 0.28444, 0.81344) lies within one grid step of the apex.
  EXPECT_LT(distance(apex, {0.0, 0.28444, 0.81344}), 1.0 / 31.0);
}

TEST(FixedCore, RejectsBadArguments) {
  EXPECT_THROW(build_fixed_core(2, 1.0), std::invalid_argument);
  EXPECT_THROW(build_fixed_core(3, 0.0), std::invalid_argument);
  EXPECT_THROW(ClusterGeometry({{0, 0, 0}, {0, 0, 1e-9}}, FreeAtomTemplate::all_free()), std::invalid_argument);
}

TEST(ClusterGeometry, TetrahedronViaFreeAtom) {
  const auto core = build_fixed_core(3, 1.0);
  EXPECT_NEAR(core.energy_with({0.0, std::sqrt(3.0) / 6.0, std::sqrt(2.0 / 3.0)}), -6.0, 1e-12);
}

TEST(ClusterGeometry, RecedingFreeAtom) {
  const auto core = build_fixed_core(3, 1.0);
  EXPECT_NEAR(core.energy_with({0.0, 0.0, 1e4}), -3.0, 1e-12);
}

TEST(ClusterGeometry, CoincidentFreeAtomIsCapped) {
  const auto core = build_fixed_core(3, 1.0);
  EXPECT_EQ(core.energy_with(core.fixed_atoms()[0]), kEnergyCap);
}

TEST(ClusterGeometry, PinnedTemplate) {
  const auto core = build_fixed_core(3, 1.0).with_frozen({0, 0, 0}, FreeAtomTemplate::x_pinned(0.25));
  EXPECT_EQ(core.free_atom().searched_count(), 2u);
  const double yz[] = {0.5, 0.75};
  EXPECT_EQ(core.free_atom().place(yz), (Vec3{0.25, 0.5, 0.75}));
  const double wrong[] = {0.5};
  EXPECT_THROW(core.free_atom().place(wrong), std::invalid_argument);
}

TEST(ClusterGeometry, WithFrozenAccumulates) {
  const auto base = build_fixed_core(3, 1.0);
  const Vec3 apex{0.0, std::sqrt(3.0) / 6.0, std::sqrt(2.0 / 3.0)};
  const auto grown = base.with_frozen(apex, FreeAtomTemplate::all_free());
  EXPECT_EQ(grown.fixed_atoms().size(), 4u);
  EXPECT_NEAR(grown.fixed_energy(), -6.0, 1e-12);
}

TEST(Bipyramid, OptimalPentamer) {
  // Regular bipyramid of unit edges is close to but above the relaxed optimum.
  const double h = std::sqrt(2.0 / 3.0);
  const auto atoms = bipyramid_positions(1.0, h);
  EXPECT_EQ(atoms.size(), 5u);
  const double e = cluster_energy(atoms);
  EXPECT_GT(e, -9.103852);
  EXPECT_LT(e, -9.0);
}

TEST(ClusterEnergy, RigidMotionInvariance) {
  Rng rng(36);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec3> atoms;
    for (int i = 0; i < 5; ++i) atoms.push_back({rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)});
    const double e = cluster_energy(atoms);
    // Random rotation from a normalized quaternion plus a translation.
    double q[4];
    double n = 0.0;
    for (auto& c : q) {
      c = rng.normal(0, 1);
      n += c * c;
    }
    for (auto& c : q) c /= std::sqrt(n);
    const auto [w, x, y, z] = std::array<double, 4>{q[0], q[1], q[2], q[3]};
    const double r[3][3] = {{1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)},
                            {2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)},
                            {2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)}};
    const Vec3 t{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    std::vector<Vec3> moved;
    for (const auto& a : atoms) {
      moved.push_back(Vec3{r[0][0] * a.x + r[0][1] * a.y + r[0][2] * a.z, r[1][0] * a.x + r[1][1] * a.y + r[1][2] * a.z,
                           r[2][0] * a.x + r[2][1] * a.y + r[2][2] * a.z} +
                      t);
    }
    EXPECT_LE(std::abs(cluster_energy(moved) - e), 1e-9 * std::max(1.0, std::abs(e)));
  }
}

TEST(Objective, ArityChecked) {
  const auto gp = gp_objective();
  EXPECT_EQ(gp.arity(), 2u);
  const double p[] = {0.0, -1.0};
  EXPECT_EQ(gp(p), 3.0);
  const double bad[] = {0.0};
  EXPECT_THROW(gp(bad), std::invalid_argument);
}

TEST(Objective, TrimerArities) {
  const double ba[] = {1.0, std::numbers::pi / 3};
  EXPECT_NEAR(lj_trimer_objective(2)(ba), -3.0, 1e-12);
  const double bba[] = {1.0, 1.0, std::numbers::pi / 3};
  EXPECT_NEAR(lj_trimer_objective(3)(bba), -3.0, 1e-12);
  EXPECT_THROW(lj_trimer_objective(4), std::invalid_argument);
}

TEST(Objective, GrowObjectiveUsesTemplate) {
  const auto geometry = ClusterGeometry(build_fixed_core(3, 1.0).fixed_atoms(), FreeAtomTemplate::x_pinned(0.0));
  const auto obj = lj_grow_objective(geometry);
  EXPECT_EQ(obj.arity(), 2u);
  const double yz[] = {std::sqrt(3.0) / 6.0, std::sqrt(2.0 / 3.0)};
  EXPECT_NEAR(obj(yz), -6.0, 1e-12);
}

}  // namespace
}  // namespace qmin

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qmin/encoding.hpp"
#include "qmin/objectives.hpp"

namespace qmin {

/// Exhaustive minimum over every grid point of a layout.
struct GridMinimum {
  std::size_t index = 0;
  Point point;
  double value = 0.0;
  std::size_t num_evaluations = 0;
};

inline constexpr int kMaxBruteForceQubits = 24;

/// Scans all 2^n indices; ties go to the lowest index.
GridMinimum grid_brute_min(const Objective& objective, const RegisterLayout& layout);

struct RefineOptions {
  std::size_t levels = 5;
  std::size_t points_per_axis = 33;
  double zoom = 0.25;
};

struct RefineResult {
  double value = 0.0;
  Point point;
  std::vector<double> level_values;  // incumbent after each level, non-increasing
  std::size_t num_evaluations = 0;
};

/// Iterated zoom: brute-force a regular grid over the box, shrink the box by
/// `zoom` around the incumbent (clipped to the original box) and repeat.
RefineResult refine_min(const Objective& objective, std::span<const Interval> box, const RefineOptions& options = {});

}  // namespace qmin

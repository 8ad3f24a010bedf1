#pragma once
// Shared test setup: the canonical line/parabola data and image-aligned grids.

#include <algorithm>
#include <cmath>
#include <set>

#include "amoeba/core.hpp"
#include "amoeba/verify.hpp"

namespace fixture {

/// A `resolution`-node grid per axis whose nodes include every solution
/// image, as long as each axis carries at most two distinct image values.
/// The box covers the padded bounding box. A grid that misses the images
/// only ever sees margins well above 1e-9, so its member list is empty.
inline amoeba::GridSpec aligned_grid(const amoeba::SolutionSet& sols, std::size_t resolution = 201, double padding = 2.0) {
  amoeba::GridSpec grid = amoeba::default_grid(sols, padding);
  grid.resolution = resolution;
  const double cells = static_cast<double>(resolution - 1);
  for (std::size_t k = 0; k < sols.n(); ++k) {
    std::set<double> vals;
    for (const auto& p : sols.points()) vals.insert(amoeba::log_map(p)[k]);
    const double a = *vals.begin(), b = *vals.rbegin();
    double h = (b - a + 2.0 * padding) / (cells - 2.0);
    if (b > a) {
      // Whole number of cells between the two values, small enough to fit.
      const double m = std::ceil((b - a) / h);
      h = (b - a) / m;
    }
    const double below = std::ceil(padding / h);
    const double lo = a - below * h;
    grid.box[k] = {lo, lo + cells * h};
  }
  return grid;
}

}  // namespace fixture

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "amoeba/core.hpp"

namespace amoeba {

using LatticePoint = std::vector<std::int64_t>;

/// Convex hull of a finite set of lattice points in Z^n (n <= 3 for
/// volumes; hulls are computed for n <= 3 as well).
class NewtonPolytope {
 public:
  NewtonPolytope(std::size_t n, std::vector<LatticePoint> support);

  std::size_t dim() const { return n_; }
  /// Sorted, deduplicated input points.
  const std::vector<LatticePoint>& support() const { return support_; }
  /// Extreme points of the hull, sorted lexicographically.
  const std::vector<LatticePoint>& vertices() const { return vertices_; }

 private:
  std::size_t n_;
  std::vector<LatticePoint> support_;
  std::vector<LatticePoint> vertices_;
};

NewtonPolytope newton_polytope(const LaurentPoly& f);
NewtonPolytope minkowski_sum(const NewtonPolytope& p, const NewtonPolytope& q);

/// Twice the area of a 2D lattice polytope, exactly.
std::int64_t twice_area_2d(const NewtonPolytope& p);
/// Euclidean volume (length for n = 1). Exact for n <= 2.
double polytope_volume(const NewtonPolytope& p);

/// Inclusion-exclusion sum over nonempty subsets of Minkowski-sum volumes,
/// before rounding. Equals 1 for n unit simplices.
double mixed_volume_raw(std::span<const NewtonPolytope> polytopes);
/// Rounded mixed volume; NumericError if the raw value is farther than
/// 1e-6 from an integer.
std::int64_t mixed_volume(std::span<const NewtonPolytope> polytopes);

/// (n+1)(n^(mu-1)+1). std::overflow_error if it does not fit in int64.
std::int64_t basis_length_bound(std::int64_t n, std::int64_t mu);

}  // namespace amoeba

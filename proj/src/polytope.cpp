#include "amoeba/polytope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace amoeba {

namespace {

using P2 = std::array<std::int64_t, 2>;
using P3 = std::array<std::int64_t, 3>;

std::int64_t cross(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

/// Andrew's monotone chain; strict turns only, so collinear points drop out.
/// Returns the hull in counter-clockwise order (indices into pts).
std::vector<std::size_t> hull_2d(const std::vector<P2>& pts) {
  std::vector<std::size_t> idx(pts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](std::size_t a, std::size_t b) { return pts[a] == pts[b]; }),
            idx.end());
  if (idx.size() <= 2) return idx;

  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i : idx) {
    while (k >= 2 && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
    std::size_t i = idx[t];
    while (k >= lower && cross(pts[h[k - 2]], pts[h[k - 1]], pts[i]) <= 0) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  return h;
}

P3 sub(const P3& a, const P3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
P3 cross3(const P3& a, const P3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
std::int64_t dot3(const P3& a, const P3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

P3 to3(const LatticePoint& p) {
  P3 q{0, 0, 0};
  for (std::size_t k = 0; k < p.size() && k < 3; ++k) q[k] = p[k];
  return q;
}

/// Ordered hull of coplanar 3D points with plane normal `normal`.
std::vector<std::size_t> planar_hull(const std::vector<P3>& pts, const P3& normal) {
  std::size_t drop = 0;
  for (std::size_t k = 1; k < 3; ++k)
    if (std::llabs(normal[k]) > std::llabs(normal[drop])) drop = k;
  std::vector<P2> proj;
  proj.reserve(pts.size());
  for (const auto& p : pts) {
    P2 q{};
    std::size_t c = 0;
    for (std::size_t k = 0; k < 3; ++k)
      if (k != drop) q[c++] = p[k];
    proj.push_back(q);
  }
  return hull_2d(proj);
}

struct Hull3 {
  std::vector<P3> vertices;
  std::vector<std::vector<P3>> facets;  // each in cyclic order
};

/// Supporting planes from every non-collinear triple; fine at desk scale.
Hull3 hull_3d_full(const std::vector<P3>& pts) {
  Hull3 out;
  std::set<std::array<std::int64_t, 4>> seen;
  std::set<P3> verts;
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        P3 nrm = cross3(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
        if (nrm == P3{0, 0, 0}) continue;
        bool pos = false, neg = false;
        for (const auto& p : pts) {
          std::int64_t s = dot3(nrm, sub(p, pts[i]));
          if (s > 0) pos = true;
          if (s < 0) neg = true;
          if (pos && neg) break;
        }
        if (pos && neg) continue;
        if (pos) nrm = {-nrm[0], -nrm[1], -nrm[2]};
        std::int64_t g = std::gcd(std::gcd(std::llabs(nrm[0]), std::llabs(nrm[1])), std::llabs(nrm[2]));
        P3 unit{nrm[0] / g, nrm[1] / g, nrm[2] / g};
        std::array<std::int64_t, 4> key{unit[0], unit[1], unit[2], dot3(unit, pts[i])};
        if (!seen.insert(key).second) continue;

        std::vector<P3> on;
        for (const auto& p : pts)
          if (dot3(unit, p) == key[3]) on.push_back(p);
        std::vector<P3> facet;
        for (std::size_t h : planar_hull(on, unit)) {
          facet.push_back(on[h]);
          verts.insert(on[h]);
        }
        out.facets.push_back(std::move(facet));
      }
  out.vertices.assign(verts.begin(), verts.end());
  return out;
}

/// Affine rank of the point set (0..3) using exact integer elimination.
std::size_t affine_rank(const std::vector<LatticePoint>& pts, std::size_t n) {
  if (pts.size() <= 1) return 0;
  std::vector<std::vector<long double>> rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<long double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = static_cast<long double>(pts[i][k] - pts[0][k]);
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (std::fabs(rows[r][col]) > std::fabs(rows[piv][col])) piv = r;
    if (std::fabs(rows[piv][col]) < 1e-9L) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      long double f = rows[r][col] / rows[rank][col];
      for (std::size_t c = col; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

LatticePoint from3(const P3& p, std::size_t n) { return LatticePoint(p.begin(), p.begin() + n); }

std::vector<LatticePoint> extreme_points(const std::vector<LatticePoint>& pts, std::size_t n) {
  if (pts.size() <= 1) return pts;
  const std::size_t rank = affine_rank(pts, n);
  if (rank == 0) return {pts.front()};

  if (rank == 1) {
    LatticePoint dir;
    for (const auto& p : pts)
      if (p != pts.front()) {
        dir = p;
        for (std::size_t k = 0; k < n; ++k) dir[k] -= pts.front()[k];
        break;
      }
    auto param = [&](const LatticePoint& p) {
      std::int64_t s = 0;
      for (std::size_t k = 0; k < n; ++k) s += (p[k] - pts.front()[k]) * dir[k];
      return s;
    };
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                        [&](const auto& a, const auto& b) { return param(a) < param(b); });
    std::vector<LatticePoint> v{*lo, *hi};
    std::sort(v.begin(), v.end());
    return v;
  }

  std::vector<P3> p3;
  for (const auto& p : pts) p3.push_back(to3(p));
  std::vector<LatticePoint> v;
  if (n == 2 || rank == 2) {
    P3 nrm{0, 0, 1};
    if (n == 3) {
      for (std::size_t i = 1; i < p3.size() && nrm == P3{0, 0, 1}; ++i)
        for (std::size_t j = i + 1; j < p3.size(); ++j) {
          P3 c = cross3(sub(p3[i], p3[0]), sub(p3[j], p3[0]));
          if (c != P3{0, 0, 0}) {
            nrm = c;
            break;
          }
        }
    }
    for (std::size_t h : planar_hull(p3, nrm)) v.push_back(from3(p3[h], n));
  } else if (n == 3) {
    for (const auto& q : hull_3d_full(p3).vertices) v.push_back(from3(q, n));
  } else {
    throw DomainError("convex hulls are supported for dimension <= 3");
  }
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

NewtonPolytope::NewtonPolytope(std::size_t n, std::vector<LatticePoint> support)
    : n_(n), support_(std::move(support)) {
  if (n_ == 0) throw DomainError("polytope dimension must be positive");
  if (support_.empty()) throw DomainError("empty support");
  for (const auto& p : support_)
    if (p.size() != n_) throw DomainError("lattice point dimension mismatch");
  std::sort(support_.begin(), support_.end());
  support_.erase(std::unique(support_.begin(), support_.end()), support_.end());
  vertices_ = extreme_points(support_, n_);
}

NewtonPolytope newton_polytope(const LaurentPoly& f) {
  if (f.empty()) throw DomainError("empty polynomial has no Newton polytope");
  std::vector<LatticePoint> pts;
  for (const auto& t : f.terms()) pts.emplace_back(t.exp.begin(), t.exp.end());
  return NewtonPolytope(f.dim(), std::move(pts));
}

NewtonPolytope minkowski_sum(const NewtonPolytope& p, const NewtonPolytope& q) {
  if (p.dim() != q.dim()) throw DomainError("Minkowski sum of polytopes of different dimension");
  std::vector<LatticePoint> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices())
    for (const auto& b : q.vertices()) {
      LatticePoint s(a.size());
      for (std::size_t k = 0; k < a.size(); ++k) s[k] = a[k] + b[k];
      sums.push_back(std::move(s));
    }
  return NewtonPolytope(p.dim(), std::move(sums));
}

std::int64_t twice_area_2d(const NewtonPolytope& p) {
  if (p.dim() != 2) throw DomainError("twice_area_2d needs a 2D polytope");
  std::vector<P2> pts;
  for (const auto& v : p.vertices()) pts.push_back({v[0], v[1]});
  auto order = hull_2d(pts);
  if (order.size() < 3) return 0;
  std::int64_t s = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const P2& a = pts[order[i]];
    const P2& b = pts[order[(i + 1) % order.size()]];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return std::llabs(s);
}

double polytope_volume(const NewtonPolytope& p) {
  switch (p.dim()) {
    case 1:
      return static_cast<double>(p.vertices().back()[0] - p.vertices().front()[0]);
    case 2:
      return static_cast<double>(twice_area_2d(p)) / 2.0;
    case 3: {
      if (affine_rank(p.vertices(), 3) < 3) return 0.0;
      std::vector<P3> pts;
      for (const auto& v : p.vertices()) pts.push_back(to3(v));
      Hull3 h = hull_3d_full(pts);
      // Six times the volume, with the apex at the first vertex: integer exact.
      const P3 apex = h.vertices.front();
      std::int64_t six_vol = 0;
      for (const auto& f : h.facets)
        for (std::size_t i = 1; i + 1 < f.size(); ++i)
          six_vol += std::llabs(dot3(sub(f[0], apex), cross3(sub(f[i], apex), sub(f[i + 1], apex))));
      return static_cast<double>(six_vol) / 6.0;
    }
    default:
      throw DomainError("volumes are supported for dimension <= 3");
  }
}

double mixed_volume_raw(std::span<const NewtonPolytope> polytopes) {
  const std::size_t n = polytopes.size();
  if (n == 0) throw DomainError("mixed volume of an empty family");
  if (n > 3) throw DomainError("mixed volumes are supported for n <= 3");
  for (const auto& p : polytopes)
    if (p.dim() != n)
      throw DomainError("mixed volume needs exactly n polytopes in dimension n");

  double total = 0.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::optional<NewtonPolytope> sum;
    int size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask & (1u << i))) continue;
      ++size;
      sum = sum ? minkowski_sum(*sum, polytopes[i]) : polytopes[i];
    }
    double vol = polytope_volume(*sum);
    total += ((n - size) % 2 == 0 ? 1.0 : -1.0) * vol;
  }
  return total;
}

std::int64_t mixed_volume(std::span<const NewtonPolytope> polytopes) {
  double raw = mixed_volume_raw(polytopes);
  double r = std::round(raw);
  if (std::fabs(raw - r) > 1e-6)
    throw NumericError("mixed volume " + std::to_string(raw) + " is not integral");
  return static_cast<std::int64_t>(r);
}

std::int64_t basis_length_bound(std::int64_t n, std::int64_t mu) {
  if (n < 1 || mu < 1) throw DomainError("basis_length_bound needs n >= 1 and mu >= 1");
  constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t power = 1;
  for (std::int64_t e = 1; e < mu; ++e) {
    if (power > kMax / n) throw std::overflow_error("n^(mu-1) overflows");
    power *= n;
  }
  if (power == kMax || power + 1 > kMax / (n + 1)) throw std::overflow_error("length bound overflows");
  return (n + 1) * (power + 1);
}

}  // namespace amoeba

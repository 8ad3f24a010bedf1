#pragma once
// Independent reference computations used only by tests. Nothing here calls
// into the library's membership, polytope or solver code paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

/// Hyperplane-amoeba inequalities evaluated directly in the linear domain:
/// each term modulus must not exceed the sum of the others.
inline bool direct_hyperplane_member(Complex b0, const std::vector<Complex>& b, const std::vector<double>& u) {
  std::vector<double> terms{std::abs(b0)};
  for (std::size_t k = 0; k < b.size(); ++k) terms.push_back(std::abs(b[k]) * std::exp(u[k]));
  double total = 0.0;
  for (double t : terms) total += t;
  for (double t : terms)
    if (t > total - t) return false;
  return true;
}

/// Area of a convex lattice polygon (vertices in counter-clockwise order)
/// by Pick's theorem, counting lattice points by brute force.
inline double pick_area(const std::vector<std::array<long, 2>>& ccw) {
  if (ccw.size() < 3) return 0.0;
  long xmin = ccw[0][0], xmax = xmin, ymin = ccw[0][1], ymax = ymin;
  for (const auto& p : ccw) {
    xmin = std::min(xmin, p[0]);
    xmax = std::max(xmax, p[0]);
    ymin = std::min(ymin, p[1]);
    ymax = std::max(ymax, p[1]);
  }
  long interior = 0, boundary = 0;
  for (long x = xmin; x <= xmax; ++x)
    for (long y = ymin; y <= ymax; ++y) {
      bool inside = true, on_edge = false;
      for (std::size_t i = 0; i < ccw.size(); ++i) {
        const auto& a = ccw[i];
        const auto& b = ccw[(i + 1) % ccw.size()];
        long c = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0]);
        if (c < 0) inside = false;
        if (c == 0 && std::min(a[0], b[0]) <= x && x <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= y &&
            y <= std::max(a[1], b[1]))
          on_edge = true;
      }
      if (on_edge)
        ++boundary;
      else if (inside)
        ++interior;
    }
  return static_cast<double>(interior) + static_cast<double>(boundary) / 2.0 - 1.0;
}

/// Area of the convex hull of planar points (gift wrapping in doubles).
inline double hull_area(std::vector<std::array<double, 2>> pts) {
  // Snap so that coordinates equal up to rounding tie exactly in the sort.
  for (auto& p : pts)
    for (double& c : p) c = std::round(c * 1e9) / 1e9;
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const auto& a, const auto& b) {
                          return std::abs(a[0] - b[0]) < 1e-12 && std::abs(a[1] - b[1]) < 1e-12;
                        }),
            pts.end());
  if (pts.size() < 3) return 0.0;
  auto cross = [](const auto& o, const auto& a, const auto& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<std::array<double, 2>> h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-12) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 1e-12) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  double s = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const auto& a = h[i];
    const auto& b = h[(i + 1) % h.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return std::abs(s) / 2.0;
}

/// Cross-section area of conv(points) at height z.
inline double slice_area(const std::vector<std::array<double, 3>>& pts, double z) {
  std::vector<std::array<double, 2>> section;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (std::abs(pts[i][2] - z) < 1e-12) section.push_back({pts[i][0], pts[i][1]});
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double za = pts[i][2], zb = pts[j][2];
      if ((za - z) * (zb - z) < 0.0) {
        const double t = (z - za) / (zb - za);
        section.push_back({pts[i][0] + t * (pts[j][0] - pts[i][0]), pts[i][1] + t * (pts[j][1] - pts[i][1])});
      }
    }
  }
  return hull_area(section);
}

/// Volume of a 3D convex hull by integrating cross-sections. Between
/// consecutive vertex heights the section area is quadratic in z, so
/// Simpson's rule on each piece is exact.
inline double slicing_volume(const std::vector<std::array<double, 3>>& pts) {
  std::vector<double> zs;
  for (const auto& p : pts) zs.push_back(p[2]);
  std::sort(zs.begin(), zs.end());
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());
  double vol = 0.0;
  for (std::size_t i = 0; i + 1 < zs.size(); ++i) {
    const double a = zs[i], b = zs[i + 1], mid = 0.5 * (a + b);
    // Sections at the endpoints are taken just inside the slab.
    const double eps = 1e-9 * (b - a);
    vol += (b - a) / 6.0 * (slice_area(pts, a + eps) + 4.0 * slice_area(pts, mid) + slice_area(pts, b - eps));
  }
  return vol;
}

/// Roots of a z^2 + b z + c.
inline std::pair<Complex, Complex> quadratic_roots(Complex a, Complex b, Complex c) {
  const Complex d = std::sqrt(b * b - 4.0 * a * c);
  return {(-b + d) / (2.0 * a), (-b - d) / (2.0 * a)};
}

/// Solution of the square linear system A x = rhs (n <= 3) by Cramer's rule.
inline std::vector<Complex> cramer(const std::vector<std::vector<Complex>>& a, const std::vector<Complex>& rhs) {
  const std::size_t n = rhs.size();
  auto det = [n](const std::vector<std::vector<Complex>>& m) -> Complex {
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const Complex d = det(a);
  std::vector<Complex> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto m = a;
    for (std::size_t r = 0; r < n; ++r) m[r][k] = rhs[r];
    x[k] = det(m) / d;
  }
  return x;
}

inline Complex random_complex(std::mt19937_64& rng, double lo_mod = 0.2, double hi_mod = 3.0) {
  std::uniform_real_distribution<double> mod(lo_mod, hi_mod);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * 3.14159265358979323846);
  return std::polar(mod(rng), arg(rng));
}

}  // namespace oracle

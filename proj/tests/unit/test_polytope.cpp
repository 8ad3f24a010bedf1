#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <random>
#include <stdexcept>

#include "amoeba/polytope.hpp"
#include "oracles.hpp"

using namespace amoeba;
using doctest::Approx;

namespace {

NewtonPolytope poly(std::vector<LatticePoint> pts) {
  const std::size_t n = pts.front().size();
  return NewtonPolytope(n, std::move(pts));
}

std::vector<LatticePoint> random_points(std::mt19937_64& rng, std::size_t n, int count, int range) {
  std::uniform_int_distribution<int> d(0, range);
  std::vector<LatticePoint> pts;
  for (int i = 0; i < count; ++i) {
    LatticePoint p;
    for (std::size_t k = 0; k < n; ++k) p.push_back(d(rng));
    pts.push_back(p);
  }
  return pts;
}

// Counter-clockwise hull vertices for the Pick oracle (Jarvis march on
// integers, independent of the library hull).
std::vector<std::array<long, 2>> ccw_hull(const std::vector<LatticePoint>& pts) {
  std::vector<std::array<long, 2>> out;
  std::vector<std::array<long, 2>> ip;
  for (const auto& p : pts) ip.push_back({long(p[0]), long(p[1])});
  std::sort(ip.begin(), ip.end());
  ip.erase(std::unique(ip.begin(), ip.end()), ip.end());
  if (ip.size() < 3) return ip;
  std::size_t start = 0;
  std::size_t cur = start;
  do {
    out.push_back(ip[cur]);
    std::size_t next = (cur + 1) % ip.size();
    for (std::size_t c = 0; c < ip.size(); ++c) {
      const auto& a = ip[cur];
      const auto& b = ip[next];
      const auto& p = ip[c];
      long cr = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
      long db = (b[0] - a[0]) * (b[0] - a[0]) + (b[1] - a[1]) * (b[1] - a[1]);
      long dp = (p[0] - a[0]) * (p[0] - a[0]) + (p[1] - a[1]) * (p[1] - a[1]);
      if (cr < 0 || (cr == 0 && dp > db)) next = c;
    }
    cur = next;
  } while (cur != start && out.size() <= ip.size());
  return out;
}

std::int64_t mv(std::vector<NewtonPolytope> ps) { return mixed_volume(ps); }

NewtonPolytope scaled(const NewtonPolytope& p, int s) {
  std::vector<LatticePoint> pts;
  for (auto v : p.vertices()) {
    for (auto& c : v) c *= s;
    pts.push_back(v);
  }
  return NewtonPolytope(p.dim(), pts);
}

}  // namespace

TEST_CASE("newton_polytope examples") {
  LaurentPoly f(2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});
  CHECK(newton_polytope(f).vertices() == std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 0}});

  LaurentPoly parabola(2, {{{0, 1}, 1.0}, {{2, 0}, -1.0}});
  CHECK(newton_polytope(parabola).vertices() == std::vector<LatticePoint>{{0, 1}, {2, 0}});

  LaurentPoly line(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{0, 0}, -2.0}});
  CHECK(newton_polytope(line).vertices() == std::vector<LatticePoint>{{0, 0}, {0, 1}, {1, 0}});

  CHECK_THROWS_AS(newton_polytope(LaurentPoly(2, {})), DomainError);
}

TEST_CASE("hull drops interior and edge points") {
  auto p = poly({{0, 0}, {2, 0}, {1, 0}, {1, 1}, {0, 2}, {2, 2}});
  CHECK(p.vertices() == std::vector<LatticePoint>{{0, 0}, {0, 2}, {2, 0}, {2, 2}});
  auto seg = poly({{0, 0}, {1, 1}, {3, 3}});
  CHECK(seg.vertices() == std::vector<LatticePoint>{{0, 0}, {3, 3}});
  auto cube = poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {0, 1, 1}});
  CHECK(cube.vertices().size() == 8);
  auto flat = poly({{0, 0, 0}, {2, 0, 0}, {0, 2, 0}, {1, 1, 0}, {1, 0, 0}});
  CHECK(flat.vertices() == std::vector<LatticePoint>{{0, 0, 0}, {0, 2, 0}, {2, 0, 0}});
}

TEST_CASE("minkowski_sum examples") {
  auto tri = poly({{0, 0}, {1, 0}, {0, 1}});
  CHECK(minkowski_sum(tri, poly({{0, 0}})).vertices() == tri.vertices());
  CHECK(minkowski_sum(tri, tri).vertices() == scaled(tri, 2).vertices());

  auto q = poly({{0, 0}, {2, 0}, {0, 1}});
  auto s = minkowski_sum(tri, q);
  CHECK(s.vertices() == std::vector<LatticePoint>{{0, 0}, {0, 2}, {2, 1}, {3, 0}});
  // (2,1) lies beyond the segment from (3,0) to (0,2): 2x + 3y > 6.
  CHECK(2 * 2 + 3 * 1 > 6);

  CHECK_THROWS_AS(minkowski_sum(tri, poly({{0, 0, 0}})), DomainError);
}

TEST_CASE("polytope_volume examples") {
  CHECK(polytope_volume(poly({{0, 0}, {1, 0}, {0, 1}})) == 0.5);
  CHECK(polytope_volume(poly({{0, 0}, {3, 0}, {2, 1}, {0, 2}})) == 3.5);
  CHECK(polytope_volume(poly({{0, 0}, {1, 1}, {2, 2}})) == 0.0);
  CHECK(polytope_volume(poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == Approx(1.0 / 6.0));
  CHECK(polytope_volume(poly({{-1}, {4}, {2}})) == 5.0);
  CHECK_THROWS_AS(polytope_volume(poly({{0, 0, 0, 0}, {1, 0, 0, 0}})), DomainError);
}

TEST_CASE("2D areas agree with Pick's theorem") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    auto pts = random_points(rng, 2, 3 + trial % 8, 9);
    auto p = NewtonPolytope(2, pts);
    const double pick = oracle::pick_area(ccw_hull(pts));
    CHECK(polytope_volume(p) == Approx(pick).epsilon(1e-12));
    CHECK(twice_area_2d(p) == static_cast<std::int64_t>(std::llround(2.0 * pick)));
  }
}

TEST_CASE("3D volumes agree with cross-section integration") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    auto pts = random_points(rng, 3, 4 + trial % 9, 5);
    std::vector<std::array<double, 3>> dpts;
    for (const auto& p : pts) dpts.push_back({double(p[0]), double(p[1]), double(p[2])});
    const double ref = oracle::slicing_volume(dpts);
    CHECK(polytope_volume(NewtonPolytope(3, pts)) == Approx(ref).epsilon(1e-7));
  }
}

TEST_CASE("mixed_volume examples") {
  auto tri = poly({{0, 0}, {1, 0}, {0, 1}});
  CHECK(mv({tri, tri}) == 1);
  auto par = poly({{0, 1}, {2, 0}});
  CHECK(mv({tri, par}) == 2);
  std::vector<NewtonPolytope> ex{tri, par};
  const double raw = mixed_volume_raw(ex);
  CHECK(std::abs(raw - 2.0) < 1e-9);
  CHECK(mv({scaled(tri, 2), tri}) == 2 * mv({tri, tri}));

  auto s3 = poly({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(mv({s3, s3, s3}) == 1);
  CHECK(mv({scaled(s3, 2), s3, scaled(s3, 3)}) == 6);
  auto p1 = poly({{5}, {2}});
  CHECK(mv({p1}) == 3);

  CHECK_THROWS_AS(mv({tri}), DomainError);
  CHECK_THROWS_AS(mv({tri, poly({{0, 0, 0}})}), DomainError);
}

TEST_CASE("mixed volume properties") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    auto a = NewtonPolytope(2, random_points(rng, 2, 3 + trial % 4, 4));
    auto b = NewtonPolytope(2, random_points(rng, 2, 3 + trial % 5, 4));
    auto c = NewtonPolytope(2, random_points(rng, 2, 3, 4));
    const auto ab = mv({a, b});
    CHECK(ab == mv({b, a}));
    CHECK(ab >= 0);
    CHECK(mv({a, a}) == twice_area_2d(a));
    CHECK(mv({minkowski_sum(a, c), b}) == ab + mv({c, b}));
    CHECK(mv({scaled(a, 3), b}) == 3 * ab);
    // Translation by a lattice vector changes nothing.
    std::vector<LatticePoint> moved;
    for (auto v : a.vertices()) moved.push_back({v[0] + 7, v[1] - 3});
    CHECK(mv({NewtonPolytope(2, moved), b}) == ab);
  }
  for (int trial = 0; trial < 15; ++trial) {
    auto a = NewtonPolytope(3, random_points(rng, 3, 4 + trial % 3, 2));
    auto b = NewtonPolytope(3, random_points(rng, 3, 4, 2));
    std::vector<std::array<double, 3>> dpts;
    for (const auto& p : a.vertices()) dpts.push_back({double(p[0]), double(p[1]), double(p[2])});
    CHECK(mv({a, a, a}) == std::llround(6.0 * oracle::slicing_volume(dpts)));
    CHECK(mv({a, b, a}) == mv({b, a, a}));
  }
}

TEST_CASE("basis_length_bound") {
  CHECK(basis_length_bound(2, 2) == 9);
  CHECK(basis_length_bound(2, 1) == 6);
  CHECK(basis_length_bound(3, 1) == 8);
  CHECK(basis_length_bound(3, 2) == 16);
  CHECK(basis_length_bound(1, 50) == 4);
  CHECK_THROWS_AS(basis_length_bound(3, 60), std::overflow_error);
  CHECK_THROWS_AS(basis_length_bound(2, 0), DomainError);
}

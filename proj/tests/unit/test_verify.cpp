#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#include "amoeba/basis.hpp"
#include "amoeba/verify.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace amoeba;
using doctest::Approx;

namespace {

SolutionSet canonical() { return SolutionSet(2, {TorusPoint({1.0, 1.0}), TorusPoint({-2.0, 4.0})}); }

GridSpec square(double lo, double hi, std::size_t res) {
  GridSpec g;
  g.box = {{lo, hi}, {lo, hi}};
  g.resolution = res;
  return g;
}

std::set<std::vector<double>> member_set(const std::vector<GridMember>& ms) {
  std::set<std::vector<double>> out;
  for (const auto& m : ms) out.insert(m.u.u);
  return out;
}

}  // namespace

TEST_CASE("grid spec") {
  GridSpec g = square(-2.0, 2.0, 201);
  CHECK(g.node_count() == 201u * 201u);
  CHECK(g.spacing() == Approx(0.02));
  CHECK(g.radius() == Approx(0.06));
  CHECK(g.node(0).u == std::vector<double>{-2.0, -2.0});
  CHECK(g.node(1).u[1] == Approx(-1.98));
  CHECK(g.node(g.node_count() - 1).u == std::vector<double>{2.0, 2.0});
  CHECK_NOTHROW(g.validate());

  GridSpec bad = g;
  bad.resolution = 1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = g;
  bad.box[0] = {1.0, 1.0};
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = g;
  bad.box.clear();
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = g;
  bad.resolution = 5000;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  auto d = default_grid(canonical());
  CHECK(d.resolution == 201);
  CHECK(d.box[0].first == Approx(-2.0));
  CHECK(d.box[0].second == Approx(std::log(2.0) + 2.0));
  CHECK(d.box[1].second == Approx(std::log(4.0) + 2.0));
  CHECK(default_grid(SolutionSet(3, {TorusPoint({1.0, 1.0, 1.0})})).resolution == 51);
  CHECK_THROWS_AS(default_grid(SolutionSet(2)), DomainError);
}

TEST_CASE("grid_scan examples") {
  SolutionSet one(2, {TorusPoint({1.0, 1.0})});
  auto basis = build_basis(one);
  auto members = grid_scan(basis, square(-2.0, 2.0, 201));
  REQUIRE_FALSE(members.empty());
  for (const auto& m : members) CHECK(std::hypot(m.u[0], m.u[1]) <= 0.05);

  AmoebaBasis empty = basis;
  empty.generators.clear();
  CHECK_THROWS_AS(grid_scan(empty, square(-2.0, 2.0, 11)), DomainError);

  CHECK(grid_scan(basis, square(1.0, 3.0, 101)).empty());

  GridSpec wrong;
  wrong.box = {{-1.0, 1.0}};
  CHECK_THROWS_AS(grid_scan(basis, wrong), DomainError);
}

TEST_CASE("grid scans do not depend on the worker count") {
  auto basis = build_basis(canonical(), BasisMode::Distinct);
  std::vector<ArrangementPoly> g(basis.generators.begin(), basis.generators.begin() + 3);
  GridSpec grid = default_grid(canonical());
  grid.resolution = 151;
  grid.tol = 0.05;
  auto serial = grid_scan(g, grid);
  for (unsigned w : {2u, 3u, 8u}) {
    grid.workers = w;
    auto par = grid_scan(g, grid);
    REQUIRE(par.size() == serial.size());
    for (std::size_t k = 0; k < par.size(); ++k) {
      CHECK(par[k].u.u == serial[k].u.u);
      CHECK(par[k].margin == serial[k].margin);
    }
  }
}

TEST_CASE("fast and exact scan paths agree") {
  // The same generators on a box shifted beyond the fast-path range must
  // give the same members after translating the hyperplanes back.
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<ArrangementPoly> gens;
    for (int g = 0; g < 2; ++g) {
      std::vector<AffineForm> fs;
      for (int f = 0; f < 2; ++f)
        fs.emplace_back(oracle::random_complex(rng), std::vector<Complex>{oracle::random_complex(rng), oracle::random_complex(rng)});
      gens.emplace_back(fs);
    }
    GridSpec grid = square(-2.0, 2.0, 81);
    grid.tol = 0.1;
    auto base = grid_scan(gens, grid);

    const double shift = 400.0;
    std::vector<ArrangementPoly> moved;
    for (const auto& g : gens) {
      std::vector<AffineForm> fs;
      for (const auto& f : g.factors())
        fs.emplace_back(f.b0(), std::vector<Complex>{f.b()[0] * std::exp(-shift), f.b()[1]});
      moved.emplace_back(fs);
    }
    GridSpec far = grid;
    far.box[0] = {shift - 2.0, shift + 2.0};
    auto shifted = grid_scan(moved, far);
    REQUIRE(shifted.size() == base.size());
    for (std::size_t k = 0; k < base.size(); ++k) CHECK(shifted[k].margin == Approx(base[k].margin).epsilon(1e-9));
  }
}

TEST_CASE("adding a generator never enlarges the member set") {
  auto basis = build_basis(canonical(), BasisMode::Distinct);
  GridSpec grid = default_grid(canonical());
  grid.resolution = 101;
  grid.tol = 0.2;
  std::vector<ArrangementPoly> gens;
  std::set<std::vector<double>> previous;
  bool first = true;
  for (const auto& g : basis.generators) {
    gens.push_back(g);
    auto current = member_set(grid_scan(gens, grid));
    if (!first) CHECK(std::includes(previous.begin(), previous.end(), current.begin(), current.end()));
    previous = current;
    first = false;
  }
}

TEST_CASE("verify_basis examples") {
  auto sols = canonical();
  auto basis = build_basis(sols, BasisMode::Distinct);
  GridSpec grid = default_grid(sols);
  auto r = verify_basis(basis, sols, grid);
  CHECK(r.passed);
  CHECK(r.missed.empty());
  for (double m : r.solution_margins) CHECK(m <= 1e-9);
  CHECK(r.max_distance <= r.radius);
  CHECK(r.radius == Approx(3.0 * grid.spacing()));

  // On a grid through both images the members are exactly those nodes.
  auto ra = verify_basis(basis, sols, fixture::aligned_grid(sols));
  CHECK(ra.passed);
  REQUIRE(ra.member_points.size() == 2);
  CHECK(distance(ra.member_points[0].u, log_map(sols[0])) < 1e-12);
  CHECK(distance(ra.member_points[1].u, log_map(sols[1])) < 1e-12);

  AmoebaBasis g_only = basis;
  g_only.generators.erase(g_only.generators.begin() + 3, g_only.generators.end());
  auto rg = verify_basis(g_only, sols, grid);
  CHECK(rg.missed.empty());
  CHECK(rg.member_points.size() >= r.member_points.size());

  SolutionSet one(2, {TorusPoint({1.0, 1.0})});
  auto r1 = verify_basis(build_basis(one), one, default_grid(one));
  CHECK(r1.passed);

  GridSpec tight = grid;
  tight.box[0] = {-0.5, 3.0};
  CHECK_THROWS_AS(verify_basis(basis, sols, tight), DomainError);

  // A basis built for other points misses these images.
  SolutionSet other(2, {TorusPoint({1.0, 1.0}), TorusPoint({-2.0, 3.0})});
  auto ro = verify_basis(build_basis(other, BasisMode::Distinct), sols, grid);
  CHECK_FALSE(ro.passed);
  CHECK(ro.missed.size() == 1);
}

TEST_CASE("exclusion sets") {
  FactorMatrix fm(canonical());
  for (std::size_t i = 0; i < fm.cols(); ++i) {
    auto rep = lemma_a_sets(fm, fm.image(i));
    CHECK(rep.sets[i].empty());
    CHECK_FALSE(rep.all_nonempty());
  }
  LogPoint far = fm.image(0);
  for (auto& x : far.u) x += 10.0;
  CHECK(lemma_a_sets(fm, far).all_nonempty());

  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> d(-3.0, 4.0);
  for (int trial = 0; trial < 2000; ++trial) {
    LogPoint w{{d(rng), d(rng)}};
    if (distance(w, fm.image(0)) < 0.1 || distance(w, fm.image(1)) < 0.1) continue;
    auto rep = lemma_a_sets(fm, w);
    CHECK(rep.all_nonempty());
    // Cross-check membership of each excluded form with the direct inequalities.
    for (std::size_t i = 0; i < fm.cols(); ++i)
      for (int j : rep.sets[i]) CHECK_FALSE(oracle::direct_hyperplane_member(fm.at(j, i).b0(), fm.at(j, i).b(), w.u));
  }
}

TEST_CASE("fixed-index uniqueness") {
  FactorMatrix fm(canonical());
  GridSpec grid = default_grid(canonical());
  GridSpec aligned = fixture::aligned_grid(canonical());
  for (std::size_t i = 0; i < fm.cols(); ++i) {
    CHECK(fixed_index_uniqueness(fm, i, grid));
    CHECK(fixed_index_uniqueness(fm, i, aligned));
    auto nodes = fixed_index_scan(fm, i, aligned);
    REQUIRE(nodes.size() == 1);
    CHECK(distance(nodes[0].u, fm.image(i)) < 1e-12);
  }

  // Sign of the column margin against the direct inequalities for every form.
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> d(-3.0, 4.0);
  int outside = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    LogPoint w{{d(rng), d(rng)}};
    for (std::size_t i = 0; i < fm.cols(); ++i) {
      const double m = fixed_index_margin(fm.column(i), w);
      if (std::abs(m) < 1e-9) continue;
      bool all = true;
      for (const auto& f : fm.column(i)) all = all && oracle::direct_hyperplane_member(f.b0(), f.b(), w.u);
      CHECK((m <= 0.0) == all);
      outside += m > 0.0;
    }
  }
  CHECK(outside > 0);

  SolutionSet uni(1, {TorusPoint({2.0})});
  FactorMatrix fm1(uni);
  GridSpec g1 = default_grid(uni);
  auto nodes = fixed_index_scan(fm1, 0, g1);
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].u[0] == Approx(std::log(2.0)).epsilon(1e-12));

  SolutionSet three(3, {TorusPoint({1.0, -2.0, Complex(0.0, 0.5)})});
  CHECK(fixed_index_uniqueness(FactorMatrix(three), 0, default_grid(three)));
}

TEST_CASE("phase oracle examples") {
  AffineForm f(1.0, {1.0, 1.0});
  CHECK(phase_oracle(f, LogPoint{{0.0, 0.0}}));
  CHECK(phase_min_relative(f, LogPoint{{0.0, 0.0}}) <= 1e-9);
  CHECK_FALSE(phase_oracle(f, LogPoint{{5.0, 0.0}}));
  // The minimum over phases is e^5 - 2, relative to e^5 + 2.
  const double e5 = std::exp(5.0);
  CHECK(phase_min_relative(f, LogPoint{{5.0, 0.0}}) == Approx((e5 - 2.0) / (e5 + 2.0)).epsilon(1e-6));

  AffineForm line(1.0, {-0.5});
  CHECK(phase_oracle(line, LogPoint{{std::log(2.0)}}));
  CHECK_FALSE(phase_oracle(line, LogPoint{{std::log(2.0) + 0.01}}));

  AffineForm f3(1.0, {1.0, 1.0, 1.0});
  CHECK(phase_oracle(f3, LogPoint{{0.0, 0.0, 0.0}}));
  CHECK_FALSE(phase_oracle(f3, LogPoint{{2.0, 0.0, 0.0}}));
  CHECK_THROWS_AS(phase_oracle(f, LogPoint{{0.0}}), DomainError);
}

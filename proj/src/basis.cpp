#include "amoeba/basis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "amoeba/polytope.hpp"
#include "amoeba/verify.hpp"

namespace amoeba {

namespace {

/// |v_k| / v_k, the inverse phase of a coordinate.
Complex inverse_phase(Complex c) { return std::abs(c) / c; }

}  // namespace

AffineForm build_factor_g0(const TorusPoint& v) {
  const double scale = 1.0 / norm0(v);
  std::vector<Complex> b;
  b.reserve(v.dim());
  for (Complex c : v.coords()) b.push_back(-scale * inverse_phase(c));
  return AffineForm(Complex{1.0, 0.0}, std::move(b));
}

AffineForm build_factor_gj(const TorusPoint& v, std::size_t j) {
  if (j < 1 || j > v.dim())
    throw DomainError("factor index j = " + std::to_string(j) + " outside 1.." +
                      std::to_string(v.dim()));
  const double nrm = norm0(v);
  std::vector<Complex> b;
  b.reserve(v.dim());
  for (std::size_t k = 0; k < v.dim(); ++k) {
    if (k + 1 == j)
      b.push_back(-(1.0 + nrm - std::abs(v[k])) / v[k]);
    else
      b.push_back(inverse_phase(v[k]));
  }
  return AffineForm(Complex{1.0, 0.0}, std::move(b));
}

FactorMatrix::FactorMatrix(const SolutionSet& sols) : n_(sols.n()) {
  cols_.reserve(sols.size());
  for (const auto& v : sols.points()) {
    std::vector<AffineForm> col;
    col.reserve(n_ + 1);
    col.push_back(build_factor_g0(v));
    for (std::size_t j = 1; j <= n_; ++j) col.push_back(build_factor_gj(v, j));
    cols_.push_back(std::move(col));
    mults_.push_back(v.mult());
    images_.push_back(log_map(v));
  }
}

std::vector<ArrangementPoly> build_generators_g(const SolutionSet& sols) {
  if (sols.empty()) throw DomainError("cannot build generators from an empty solution set");
  FactorMatrix fm(sols);
  std::vector<ArrangementPoly> gens;
  gens.reserve(fm.rows());
  for (std::size_t j = 0; j < fm.rows(); ++j) {
    std::vector<AffineForm> factors;
    for (std::size_t i = 0; i < fm.cols(); ++i)
      for (int m = 0; m < fm.mult(i); ++m) factors.push_back(fm.at(j, i));
    gens.emplace_back(std::move(factors), GeneratorLabel::g(static_cast<int>(j)));
  }
  return gens;
}

std::vector<TupleIndex> enumerate_h_tuples(std::size_t n, std::size_t l, BasisMode mode) {
  if (n < 1 || l < 1) throw DomainError("enumerate_h_tuples needs n >= 1 and l >= 1");
  if (mode == BasisMode::Distinct && l > n + 1)
    throw DomainError("distinct tuples need l <= n+1 (l = " + std::to_string(l) +
                      ", n = " + std::to_string(n) + ")");
  std::vector<TupleIndex> out;
  if (l == 1) return out;

  const int base = static_cast<int>(n + 1);
  TupleIndex t(l, 0);
  while (true) {
    bool constant = std::all_of(t.begin(), t.end(), [&](int x) { return x == t.front(); });
    bool keep = !constant;
    if (keep && mode == BasisMode::Distinct) {
      TupleIndex s = t;
      std::sort(s.begin(), s.end());
      keep = std::adjacent_find(s.begin(), s.end()) == s.end();
    }
    if (keep) out.push_back(t);

    // Odometer increment, last position fastest.
    std::size_t pos = l;
    while (pos > 0) {
      --pos;
      if (++t[pos] < base) break;
      t[pos] = 0;
      if (pos == 0) return out;
    }
  }
}

ArrangementPoly build_h(const TupleIndex& t, const FactorMatrix& fm) {
  if (t.size() != fm.cols())
    throw DomainError("tuple length " + std::to_string(t.size()) + " does not match " +
                      std::to_string(fm.cols()) + " solutions");
  std::vector<AffineForm> factors;
  factors.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0 || static_cast<std::size_t>(t[i]) >= fm.rows())
      throw DomainError("tuple entry " + std::to_string(t[i]) + " outside 0.." +
                        std::to_string(fm.n()));
    factors.push_back(fm.at(static_cast<std::size_t>(t[i]), i));
  }
  return ArrangementPoly(std::move(factors), GeneratorLabel::h(t));
}

AmoebaBasis build_basis(const SolutionSet& sols, BasisMode mode) {
  AmoebaBasis basis;
  basis.n = sols.n();
  basis.l = static_cast<std::size_t>(sols.total_count());
  basis.mode = mode;
  basis.generators = build_generators_g(sols);

  FactorMatrix fm(sols);
  for (const auto& t : enumerate_h_tuples(sols.n(), sols.size(), mode))
    basis.generators.push_back(build_h(t, fm));

  try {
    basis.mu_bound = basis_length_bound(static_cast<std::int64_t>(basis.n),
                                        static_cast<std::int64_t>(basis.l));
  } catch (const std::overflow_error&) {
    basis.mu_bound.reset();
  }
  return basis;
}

bool root_check(const AmoebaBasis& basis, const SolutionSet& sols, double tol) {
  for (const auto& v : sols.points()) {
    const double base = 1.0 + norm0(v);
    for (const auto& g : basis.generators) {
      const double scale = std::pow(base, static_cast<double>(g.degree()));
      if (std::abs(evaluate_arrangement(g, v.coords())) > tol * scale) return false;
    }
  }
  return true;
}

AmoebaBasis minimize_basis(const AmoebaBasis& basis, const SolutionSet& sols, const GridSpec& grid) {
  if (!verify_basis(basis, sols, grid).passed)
    throw DomainError("cannot minimize: input basis fails grid verification");

  std::vector<std::size_t> order;
  std::vector<std::size_t> g_rows;
  for (std::size_t k = 0; k < basis.generators.size(); ++k) {
    if (basis.generators[k].label().kind == GeneratorLabel::Kind::G)
      g_rows.push_back(k);
    else
      order.push_back(k);
  }
  std::stable_sort(g_rows.begin(), g_rows.end(), [&](std::size_t a, std::size_t b) {
    return basis.generators[a].label().indices.at(0) > basis.generators[b].label().indices.at(0);
  });
  order.insert(order.end(), g_rows.begin(), g_rows.end());

  std::vector<bool> kept(basis.generators.size(), true);
  auto current = [&] {
    AmoebaBasis b = basis;
    b.generators.clear();
    for (std::size_t k = 0; k < basis.generators.size(); ++k)
      if (kept[k]) b.generators.push_back(basis.generators[k]);
    return b;
  };

  // Member sets only grow as generators are dropped, so one pass leaves every
  // remaining generator necessary.
  for (std::size_t k : order) {
    kept[k] = false;
    AmoebaBasis trial = current();
    if (trial.generators.empty() || !verify_basis(trial, sols, grid).passed) kept[k] = true;
  }
  return current();
}

}  // namespace amoeba

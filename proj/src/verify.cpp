#include "amoeba/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include <Eigen/Dense>

namespace amoeba {

void GridSpec::validate() const {
  if (box.empty()) throw DomainError("grid box is empty");
  for (std::size_t k = 0; k < box.size(); ++k) {
    const auto [lo, hi] = box[k];
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
      throw DomainError("grid axis " + std::to_string(k + 1) + " needs finite lo < hi");
  }
  if (resolution < 2) throw DomainError("grid resolution must be at least 2");
  if (!(tol >= 0.0)) throw DomainError("grid tolerance must be non-negative");
  if (node_count() > node_cap)
    throw DomainError("grid has " + std::to_string(node_count()) + " nodes, above the cap of " +
                      std::to_string(node_cap));
}

std::uint64_t GridSpec::node_count() const {
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < box.size(); ++k) {
    if (count > std::numeric_limits<std::uint64_t>::max() / resolution)
      return std::numeric_limits<std::uint64_t>::max();
    count *= resolution;
  }
  return count;
}

double GridSpec::spacing() const {
  double h = 0.0;
  for (const auto& [lo, hi] : box) h = std::max(h, (hi - lo) / static_cast<double>(resolution - 1));
  return h;
}

LogPoint GridSpec::node(std::uint64_t index) const {
  LogPoint p;
  p.u.assign(box.size(), 0.0);
  for (std::size_t k = box.size(); k-- > 0;) {
    const std::uint64_t step = index % resolution;
    index /= resolution;
    const auto [lo, hi] = box[k];
    p.u[k] = lo + (hi - lo) * static_cast<double>(step) / static_cast<double>(resolution - 1);
  }
  return p;
}

GridSpec default_grid(const SolutionSet& sols, double padding) {
  if (sols.empty()) throw DomainError("default grid needs at least one solution");
  GridSpec grid;
  const std::size_t n = sols.n();
  grid.box.assign(n, {std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()});
  for (const auto& v : sols.points()) {
    LogPoint w = log_map(v);
    for (std::size_t k = 0; k < n; ++k) {
      grid.box[k].first = std::min(grid.box[k].first, w[k]);
      grid.box[k].second = std::max(grid.box[k].second, w[k]);
    }
  }
  for (auto& [lo, hi] : grid.box) {
    lo -= padding;
    hi += padding;
  }
  grid.resolution = n <= 2 ? 201 : n == 3 ? 51 : 15;
  return grid;
}

namespace {

// Coordinates whose exponentials stay comfortably inside double range.
constexpr double kFastPathLimit = 300.0;
// Slack so the linear-domain prefilter never rejects an exact member.
constexpr double kPrefilterSlack = 1e-12;

using FastTest = std::function<bool(std::span<const double>)>;
using ExactMargin = std::function<double(const LogPoint&)>;

/// Scans all nodes in index order. `fast` may only reject nodes whose exact
/// margin exceeds grid.tol; survivors are confirmed with `exact`.
std::vector<GridMember> scan_nodes(const GridSpec& grid, const FastTest& fast, const ExactMargin& exact) {
  grid.validate();
  const std::size_t n = grid.dim();
  const std::size_t res = grid.resolution;
  const std::uint64_t total = grid.node_count();

  std::vector<std::vector<double>> axis(n), axis_exp(n);
  bool use_fast = true;
  for (std::size_t k = 0; k < n; ++k) {
    const auto [lo, hi] = grid.box[k];
    for (std::size_t s = 0; s < res; ++s) {
      double x = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(res - 1);
      axis[k].push_back(x);
      axis_exp[k].push_back(std::exp(x));
    }
    if (std::fabs(lo) > kFastPathLimit || std::fabs(hi) > kFastPathLimit) use_fast = false;
  }

  auto run = [&](std::uint64_t begin, std::uint64_t end, std::vector<GridMember>& out) {
    LogPoint u;
    u.u.assign(n, 0.0);
    std::vector<double> eu(n);
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      std::uint64_t rem = idx;
      for (std::size_t k = n; k-- > 0;) {
        const std::size_t s = rem % res;
        rem /= res;
        u.u[k] = axis[k][s];
        eu[k] = axis_exp[k][s];
      }
      if (use_fast && !fast(eu)) continue;
      const double m = exact(u);
      if (m <= grid.tol) out.push_back({u, m});
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(grid.workers, static_cast<unsigned>(std::min<std::uint64_t>(total, 1024))));
  if (workers == 1) {
    std::vector<GridMember> out;
    run(0, total, out);
    return out;
  }
  std::vector<std::vector<GridMember>> parts(workers);
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    threads.emplace_back(run, begin, end, std::ref(parts[w]));
  }
  for (auto& t : threads) t.join();
  std::vector<GridMember> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

/// Unique factors per generator (unions are idempotent).
std::vector<std::vector<HyperplaneTerms>> unique_terms(std::span<const ArrangementPoly> generators) {
  std::vector<std::vector<HyperplaneTerms>> out;
  out.reserve(generators.size());
  for (const auto& g : generators) {
    std::vector<HyperplaneTerms> terms;
    for (const auto& f : g.factors()) {
      bool dup = std::any_of(terms.begin(), terms.end(), [&](const HyperplaneTerms& t) { return t.form() == f; });
      if (!dup) terms.emplace_back(f);
    }
    out.push_back(std::move(terms));
  }
  return out;
}

void check_dim(std::size_t expected, const GridSpec& grid) {
  if (grid.dim() != expected)
    throw DomainError("grid has dimension " + std::to_string(grid.dim()) + ", expected " +
                      std::to_string(expected));
}

}  // namespace

std::vector<GridMember> grid_scan(std::span<const ArrangementPoly> generators, const GridSpec& grid) {
  if (generators.empty()) throw DomainError("empty basis");
  check_dim(generators.front().dim(), grid);
  const auto terms = unique_terms(generators);
  const double factor = std::exp(grid.tol + kPrefilterSlack);
  auto fast = [&](std::span<const double> eu) {
    for (const auto& gen : terms) {
      bool any = std::any_of(gen.begin(), gen.end(), [&](const HyperplaneTerms& t) { return t.member(eu, factor); });
      if (!any) return false;
    }
    return true;
  };
  auto exact = [&](const LogPoint& u) { return intersection_margin(generators, u); };
  return scan_nodes(grid, fast, exact);
}

std::vector<GridMember> grid_scan(const AmoebaBasis& basis, const GridSpec& grid) {
  return grid_scan(std::span<const ArrangementPoly>(basis.generators), grid);
}

VerificationReport verify_basis(const AmoebaBasis& basis, const SolutionSet& sols, const GridSpec& grid) {
  grid.validate();
  check_dim(sols.n(), grid);
  std::vector<LogPoint> images;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    LogPoint w = log_map(sols[i]);
    for (std::size_t k = 0; k < w.dim(); ++k) {
      const auto [lo, hi] = grid.box[k];
      if (w[k] < lo + 1.0 - 1e-12 || w[k] > hi - 1.0 + 1e-12)
        throw DomainError("grid box does not cover solution " + std::to_string(i + 1) +
                          " with padding 1.0 on axis " + std::to_string(k + 1));
    }
    images.push_back(std::move(w));
  }

  VerificationReport report;
  report.radius = grid.radius();
  report.member_points = grid_scan(basis, grid);
  for (const auto& m : report.member_points) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const auto& w : images) nearest = std::min(nearest, distance(m.u, w));
    report.max_distance = std::max(report.max_distance, nearest);
  }
  for (const auto& w : images) {
    const double m = intersection_margin(basis, w);
    report.solution_margins.push_back(m);
    if (!(m <= grid.tol)) report.missed.push_back(w);
  }
  report.passed = report.missed.empty() && report.max_distance <= report.radius;
  return report;
}

bool LemmaAReport::all_nonempty() const {
  return std::all_of(sets.begin(), sets.end(), [](const auto& s) { return !s.empty(); });
}

LemmaAReport lemma_a_sets(const FactorMatrix& fm, const LogPoint& w, double tol) {
  LemmaAReport report;
  report.sets.resize(fm.cols());
  for (std::size_t i = 0; i < fm.cols(); ++i)
    for (std::size_t j = 0; j < fm.rows(); ++j)
      if (fpt_margin(fm.at(j, i), w).margin > tol) report.sets[i].push_back(static_cast<int>(j));
  return report;
}

std::vector<GridMember> fixed_index_scan(const FactorMatrix& fm, std::size_t i, const GridSpec& grid) {
  check_dim(fm.n(), grid);
  const auto& forms = fm.column(i);
  std::vector<HyperplaneTerms> terms(forms.begin(), forms.end());
  const double factor = std::exp(grid.tol + kPrefilterSlack);
  auto fast = [&](std::span<const double> eu) {
    return std::all_of(terms.begin(), terms.end(), [&](const HyperplaneTerms& t) { return t.member(eu, factor); });
  };
  auto exact = [&](const LogPoint& u) { return fixed_index_margin(forms, u); };
  return scan_nodes(grid, fast, exact);
}

bool fixed_index_uniqueness(const FactorMatrix& fm, std::size_t i, const GridSpec& grid) {
  const LogPoint& w = fm.image(i);
  for (std::size_t k = 0; k < w.dim(); ++k) {
    const auto [lo, hi] = grid.box.at(k);
    if (w[k] < lo || w[k] > hi)
      throw DomainError("grid box does not cover solution " + std::to_string(i + 1));
  }
  const double r = grid.radius();
  const auto members = fixed_index_scan(fm, i, grid);
  return std::all_of(members.begin(), members.end(), [&](const GridMember& m) { return distance(m.u, w) <= r; });
}

namespace {

struct PhaseProblem {
  std::vector<Complex> terms;  // a_0, a_1 e^{u_1}, ..., a_n e^{u_n}

  Complex value(const Eigen::VectorXd& theta) const {
    Complex s = terms[0];
    for (Eigen::Index k = 0; k < theta.size(); ++k) s += terms[k + 1] * std::polar(1.0, theta[k]);
    return s;
  }
};

/// Damped Gauss-Newton on (Re f, Im f) over the phases.
double polish(const PhaseProblem& pb, Eigen::VectorXd theta) {
  const Eigen::Index n = theta.size();
  double best = std::abs(pb.value(theta));
  double lambda = 1e-3;
  for (int iter = 0; iter < 100 && best > 0.0; ++iter) {
    Complex f = pb.value(theta);
    Eigen::MatrixXd jac(2, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      Complex d = Complex{0.0, 1.0} * pb.terms[k + 1] * std::polar(1.0, theta[k]);
      jac(0, k) = d.real();
      jac(1, k) = d.imag();
    }
    Eigen::Vector2d r(f.real(), f.imag());
    Eigen::MatrixXd normal = jac.transpose() * jac;
    Eigen::VectorXd grad = jac.transpose() * r;
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      Eigen::MatrixXd damped = normal + lambda * Eigen::MatrixXd::Identity(n, n);
      Eigen::VectorXd step = damped.ldlt().solve(-grad);
      Eigen::VectorXd trial = theta + step;
      double val = std::abs(pb.value(trial));
      if (val < best) {
        theta = trial;
        best = val;
        lambda = std::max(lambda * 0.1, 1e-15);
        improved = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
  return best;
}

}  // namespace

double phase_min_relative(const AffineForm& f, const LogPoint& u, std::size_t samples) {
  const std::size_t n = f.dim();
  if (u.dim() != n) throw DomainError("dimension mismatch in phase oracle");
  PhaseProblem pb;
  pb.terms.push_back(f.b0());
  double scale = std::abs(f.b0());
  for (std::size_t k = 0; k < n; ++k) {
    pb.terms.push_back(f.b()[k] * std::exp(u[k]));
    scale += std::abs(pb.terms.back());
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("phase oracle: degenerate term moduli");

  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<std::pair<double, Eigen::VectorXd>> seeds;
  Eigen::VectorXd theta(static_cast<Eigen::Index>(n));
  auto record = [&] { seeds.emplace_back(std::abs(pb.value(theta)), theta); };

  if (n <= 2) {
    const auto per_axis = static_cast<std::size_t>(
        std::ceil(std::pow(static_cast<double>(std::max<std::size_t>(samples, 1)), 1.0 / static_cast<double>(n))));
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= per_axis;
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rem = idx;
      for (std::size_t k = 0; k < n; ++k) {
        theta[static_cast<Eigen::Index>(k)] = kTwoPi * static_cast<double>(rem % per_axis) / static_cast<double>(per_axis);
        rem /= per_axis;
      }
      record();
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_real_distribution<double> angle(0.0, kTwoPi);
    for (std::size_t s = 0; s < samples; ++s) {
      for (std::size_t k = 0; k < n; ++k) theta[static_cast<Eigen::Index>(k)] = angle(rng);
      record();
    }
  }

  const std::size_t keep = std::min<std::size_t>(8, seeds.size());
  std::partial_sort(seeds.begin(), seeds.begin() + static_cast<std::ptrdiff_t>(keep), seeds.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  double best = seeds.front().first;
  for (std::size_t s = 0; s < keep; ++s) best = std::min(best, polish(pb, seeds[s].second));
  return best / scale;
}

bool phase_oracle(const AffineForm& f, const LogPoint& u, std::size_t samples) {
  return phase_min_relative(f, u, samples) <= kPhaseOracleRelTol;
}

}  // namespace amoeba

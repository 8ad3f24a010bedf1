#include "amoeba/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "amoeba/polytope.hpp"

namespace amoeba {

namespace {

constexpr int kMaxSweeps = 500;
constexpr double kConvergence = 1e-12;
constexpr double kSolverMerge = 1e-6;

double max_abs(std::span<const Complex> c) {
  double m = 0.0;
  for (Complex x : c) m = std::max(m, std::abs(x));
  return m;
}

/// Drops leading coefficients below rel * max|c|.
UniPoly trim(UniPoly p, double rel) {
  const double cut = rel * max_abs(p);
  while (!p.empty() && std::abs(p.back()) <= cut) p.pop_back();
  return p;
}

double uni_scale(std::span<const Complex> coeffs, Complex z) {
  double s = 0.0, zp = 1.0;
  const double r = std::abs(z);
  for (Complex c : coeffs) {
    s += std::abs(c) * zp;
    zp *= r;
  }
  return s;
}

// ---- polynomial arithmetic on UniPoly, used for Bareiss elimination ----

UniPoly mul(const UniPoly& a, const UniPoly& b) {
  if (a.empty() || b.empty()) return {};
  UniPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

UniPoly sub(const UniPoly& a, const UniPoly& b) {
  UniPoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return r;
}

/// Quotient of an exact division; the remainder is rounding noise.
UniPoly exact_div(UniPoly num, const UniPoly& den) {
  if (num.empty()) return {};
  if (den.size() > num.size()) return {};
  UniPoly q(num.size() - den.size() + 1);
  const Complex lead = den.back();
  for (std::size_t k = q.size(); k-- > 0;) {
    Complex c = num[k + den.size() - 1] / lead;
    q[k] = c;
    for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
  }
  return q;
}

/// f as a polynomial in variable `e` with coefficients polynomial in the
/// other variable, exponents shifted to start at zero. Result[d][k] is the
/// coefficient of z_e^d z_o^k.
std::vector<UniPoly> as_nested(const LaurentPoly& f, std::size_t e) {
  const std::size_t o = 1 - e;
  int min_e = 0, min_o = 0, max_e = 0;
  bool first = true;
  for (const auto& t : f.terms()) {
    if (first) {
      min_e = max_e = t.exp[e];
      min_o = t.exp[o];
      first = false;
    }
    min_e = std::min(min_e, t.exp[e]);
    max_e = std::max(max_e, t.exp[e]);
    min_o = std::min(min_o, t.exp[o]);
  }
  std::vector<UniPoly> out(static_cast<std::size_t>(max_e - min_e + 1));
  for (const auto& t : f.terms()) {
    auto& row = out[static_cast<std::size_t>(t.exp[e] - min_e)];
    const auto k = static_cast<std::size_t>(t.exp[o] - min_o);
    if (row.size() <= k) row.resize(k + 1);
    row[k] += t.coef;
  }
  return out;
}

/// Univariate coefficients of f with variable `var` fixed to `value`, in the
/// remaining variable, exponents shifted to start at zero.
UniPoly substitute(const LaurentPoly& f, std::size_t var, Complex value) {
  const std::size_t other = 1 - var;
  int min_o = 0;
  bool first = true;
  for (const auto& t : f.terms()) {
    min_o = first ? t.exp[other] : std::min(min_o, t.exp[other]);
    first = false;
  }
  UniPoly out;
  for (const auto& t : f.terms()) {
    const auto k = static_cast<std::size_t>(t.exp[other] - min_o);
    if (out.size() <= k) out.resize(k + 1);
    out[k] += t.coef * std::pow(value, t.exp[var]);
  }
  return out;
}

int degree_in(const LaurentPoly& f, std::size_t var) {
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& t : f.terms()) {
    if (first) {
      lo = hi = t.exp[var];
      first = false;
    }
    lo = std::min(lo, t.exp[var]);
    hi = std::max(hi, t.exp[var]);
  }
  return hi - lo;
}

struct Cluster {
  Complex value;
  int mult;
};

std::vector<Cluster> cluster_roots(const std::vector<Complex>& roots) {
  std::vector<Cluster> out;
  for (Complex r : roots) {
    auto it = std::find_if(out.begin(), out.end(), [&](const Cluster& c) {
      return std::abs(c.value - r) < kSolverMerge * std::max(1.0, std::abs(r));
    });
    if (it == out.end()) {
      out.push_back({r, 1});
    } else {
      it->value = (it->value * static_cast<double>(it->mult) + r) / static_cast<double>(it->mult + 1);
      ++it->mult;
    }
  }
  return out;
}

std::string fmt_point(std::span<const Complex> z) {
  std::ostringstream s;
  s << '(';
  for (std::size_t k = 0; k < z.size(); ++k) s << (k ? ", " : "") << z[k];
  s << ')';
  return s.str();
}

void note(std::vector<std::string>* notes, std::string msg) {
  if (notes) notes->push_back(std::move(msg));
}

bool residual_ok(const LaurentPoly& f, std::span<const Complex> z) {
  return std::abs(f(z)) <= 1e-7 * std::max(1.0, f.term_modulus_sum(z));
}

/// Newton refinement of a candidate solution of a 2x2 system.
std::vector<Complex> newton_polish(const PolynomialSystem& sys, std::vector<Complex> z) {
  const std::size_t n = sys.n();
  auto residual = [&](std::span<const Complex> p) {
    double s = 0.0;
    for (const auto& f : sys.polys()) s += std::norm(f(p));
    return std::sqrt(s);
  };
  double best = residual(z);
  for (int iter = 0; iter < 20 && best > 0.0; ++iter) {
    Eigen::MatrixXcd jac(n, n);
    Eigen::VectorXcd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
      rhs[static_cast<Eigen::Index>(i)] = -sys.polys()[i](z);
      for (std::size_t j = 0; j < n; ++j)
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sys.polys()[i].derivative(j, z);
    }
    Eigen::VectorXcd step = jac.fullPivLu().solve(rhs);
    std::vector<Complex> trial = z;
    for (std::size_t k = 0; k < n; ++k) trial[k] += step[static_cast<Eigen::Index>(k)];
    const double r = residual(trial);
    if (!std::isfinite(r) || r >= best) break;
    z = std::move(trial);
    best = r;
  }
  return z;
}

bool lex_less(const TorusPoint& a, const TorusPoint& b) {
  for (std::size_t k = 0; k < a.dim(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

std::vector<Complex> torus_roots(UniPoly p, std::vector<std::string>* notes) {
  // Divide out z^k first; a multiple root at 0 would otherwise scatter
  // into a ring of spurious small roots.
  const double cut = 1e-14 * max_abs(p);
  std::size_t low = 0;
  while (low + 1 < p.size() && std::abs(p[low]) <= cut) ++low;
  if (low > 0) {
    note(notes, "discarded root 0 of multiplicity " + std::to_string(low));
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));
  }
  std::vector<Complex> out;
  if (p.size() < 2) return out;
  for (Complex r : solve_univariate(p)) {
    if (std::abs(r) <= kTorusThreshold)
      note(notes, "discarded off-torus root " + fmt_point(std::span<const Complex>(&r, 1)));
    else
      out.push_back(r);
  }
  return out;
}

SolutionSet finish(const PolynomialSystem& sys, std::vector<TorusPoint> pts, std::vector<std::string>* notes) {
  std::sort(pts.begin(), pts.end(), lex_less);
  SolutionSet sols(sys.n(), pts, kSolverMerge);
  try {
    std::vector<NewtonPolytope> polys;
    for (const auto& f : sys.polys()) polys.push_back(newton_polytope(f));
    sols.attach_mixed_volume(mixed_volume(polys));
    if (sols.count_mismatch())
      note(notes, "solution count " + std::to_string(sols.total_count()) + " differs from mixed volume " +
                      std::to_string(*sols.mixed_volume()));
  } catch (const std::exception& e) {
    note(notes, std::string("mixed volume unavailable: ") + e.what());
  }
  return sols;
}

}  // namespace

PolynomialSystem::PolynomialSystem(std::size_t n, std::vector<LaurentPoly> polys)
    : n_(n), polys_(std::move(polys)) {
  if (n_ == 0) throw DomainError("system dimension must be positive");
  if (polys_.size() != n_)
    throw DomainError("system has " + std::to_string(polys_.size()) + " polynomials but n = " +
                      std::to_string(n_));
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    if (polys_[i].empty()) throw DomainError("polynomial " + std::to_string(i + 1) + " is empty");
    if (polys_[i].dim() != n_)
      throw DomainError("polynomial " + std::to_string(i + 1) + " has the wrong number of variables");
  }
}

Complex evaluate_uni(std::span<const Complex> coeffs, Complex z) {
  Complex s{};
  for (std::size_t k = coeffs.size(); k-- > 0;) s = s * z + coeffs[k];
  return s;
}

std::vector<Complex> solve_univariate(std::span<const Complex> coeffs) {
  if (coeffs.size() < 2) throw DomainError("polynomial degree must be at least 1");
  if (coeffs.back() == Complex{}) throw DomainError("leading coefficient is zero");
  const std::size_t deg = coeffs.size() - 1;

  UniPoly monic(coeffs.begin(), coeffs.end());
  for (auto& c : monic) c /= coeffs.back();

  std::vector<Complex> roots(deg);
  const Complex seed{0.4, 0.9};
  Complex power{1.0, 0.0};
  for (std::size_t k = 0; k < deg; ++k) {
    roots[k] = power;
    power *= seed;
  }

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t i = 0; i < deg; ++i) {
      Complex denom{1.0, 0.0};
      for (std::size_t j = 0; j < deg; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      if (denom == Complex{}) denom = Complex{1e-300, 0.0};
      const Complex delta = evaluate_uni(monic, roots[i]) / denom;
      roots[i] -= delta;
      if (std::abs(delta) > kConvergence * std::max(1.0, std::abs(roots[i]))) converged = false;
    }
  }

  for (Complex r : roots) {
    const double res = std::abs(evaluate_uni(coeffs, r));
    if (!std::isfinite(res) || res > 1e-8 * uni_scale(coeffs, r))
      throw NumericError("Durand-Kerner iteration did not converge");
  }
  return roots;
}

UniPoly sylvester_resultant(const LaurentPoly& f, const LaurentPoly& g, std::size_t eliminate) {
  if (f.dim() != 2 || g.dim() != 2) throw DomainError("resultant needs bivariate polynomials");
  if (eliminate > 1) throw DomainError("eliminated variable must be 0 or 1");
  const auto fe = as_nested(f, eliminate);
  const auto ge = as_nested(g, eliminate);
  const std::size_t m = fe.size() - 1;
  const std::size_t k = ge.size() - 1;
  if (m == 0 || k == 0) throw DomainError("both polynomials need positive degree in the eliminated variable");

  // Rows: k shifted copies of f, then m of g, coefficients highest first.
  const std::size_t size = m + k;
  std::vector<std::vector<UniPoly>> mat(size, std::vector<UniPoly>(size));
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t d = 0; d <= m; ++d) mat[r][r + d] = fe[m - d];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t d = 0; d <= k; ++d) mat[k + r][r + d] = ge[k - d];

  double entry_scale = 1.0;
  for (const auto& row : mat)
    for (const auto& e : row) entry_scale = std::max(entry_scale, max_abs(e));

  // Fraction-free (Bareiss) elimination; minors of order s are bounded by
  // roughly (entry_scale)^s, which sets the zero test at each step.
  auto is_zero = [&](const UniPoly& p, std::size_t order) {
    return max_abs(p) <= 1e-11 * std::pow(entry_scale, static_cast<double>(order));
  };
  UniPoly prev{Complex{1.0, 0.0}};
  double sign = 1.0;
  for (std::size_t piv = 0; piv + 1 < size; ++piv) {
    if (is_zero(mat[piv][piv], piv + 1)) {
      std::size_t r = piv + 1;
      while (r < size && is_zero(mat[r][piv], piv + 1)) ++r;
      if (r == size) throw NumericError("zero resultant: the polynomials share a common component");
      std::swap(mat[piv], mat[r]);
      sign = -sign;
    }
    mat[piv][piv] = trim(mat[piv][piv], 1e-13);
    for (std::size_t i = piv + 1; i < size; ++i) {
      for (std::size_t j = piv + 1; j < size; ++j)
        mat[i][j] = trim(exact_div(sub(mul(mat[piv][piv], mat[i][j]), mul(mat[i][piv], mat[piv][j])), prev), 1e-13);
      mat[i][piv].clear();
    }
    prev = mat[piv][piv];
  }

  UniPoly det = mat[size - 1][size - 1];
  for (auto& c : det) c *= sign;
  det = trim(det, 1e-12);
  if (det.empty() || is_zero(det, size))
    throw NumericError("zero resultant: the polynomials share a common component");
  return det;
}

SolutionSet solve_system(const PolynomialSystem& sys, std::vector<std::string>* notes) {
  const std::size_t n = sys.n();
  if (n > 2) throw DomainError("built-in solving supports n <= 2; supply solutions through a file");

  std::vector<TorusPoint> pts;
  if (n == 1) {
    const LaurentPoly& f = sys.polys().front();
    int lo = f.terms().front().exp[0];
    for (const auto& t : f.terms()) lo = std::min(lo, t.exp[0]);
    UniPoly p;
    for (const auto& t : f.terms()) {
      const auto k = static_cast<std::size_t>(t.exp[0] - lo);
      if (p.size() <= k) p.resize(k + 1);
      p[k] += t.coef;
    }
    if (p.size() < 2) {
      note(notes, "polynomial is a monomial; no torus solutions");
      return finish(sys, {}, notes);
    }
    for (const auto& c : cluster_roots(torus_roots(p, notes))) pts.emplace_back(std::vector<Complex>{c.value}, c.mult);
    return finish(sys, std::move(pts), notes);
  }

  const LaurentPoly& f1 = sys.polys()[0];
  const LaurentPoly& f2 = sys.polys()[1];

  // An equation free of one variable already is the eliminant in the other,
  // with no extraneous factors; otherwise take the resultant in z_2.
  std::size_t elim = 1;
  if (degree_in(f1, 1) > 0 && degree_in(f2, 1) > 0 && (degree_in(f1, 0) == 0 || degree_in(f2, 0) == 0)) elim = 0;
  const std::size_t keep = 1 - elim;
  UniPoly eliminant;
  if (degree_in(f1, elim) > 0 && degree_in(f2, elim) > 0) {
    eliminant = sylvester_resultant(f1, f2, elim);
  } else {
    const LaurentPoly& uni = degree_in(f1, elim) == 0 ? f1 : f2;
    if (degree_in(uni, keep) == 0) throw DomainError("system contains a monomial equation");
    eliminant = substitute(uni, elim, Complex{1.0, 0.0});
  }
  eliminant = trim(eliminant, 1e-12);
  if (eliminant.size() < 2) {
    note(notes, "eliminant is constant; no torus solutions");
    return finish(sys, {}, notes);
  }

  for (const auto& cl : cluster_roots(torus_roots(eliminant, notes))) {
    std::vector<std::vector<Complex>> found;
    for (const LaurentPoly* f : {&f1, &f2}) {
      UniPoly p = trim(substitute(*f, keep, cl.value), 1e-9);
      if (p.size() < 2) continue;
      for (Complex e : solve_univariate(p)) {
        if (std::abs(e) <= kTorusThreshold) continue;
        std::vector<Complex> z(2);
        z[keep] = cl.value;
        z[elim] = e;
        z = newton_polish(sys, z);
        // Polishing may slide a spurious candidate onto a solution that
        // belongs to another eliminant root.
        if (std::abs(z[keep] - cl.value) > kSolverMerge * std::max(1.0, std::abs(cl.value))) continue;
        if (std::abs(z[0]) <= kTorusThreshold || std::abs(z[1]) <= kTorusThreshold) {
          note(notes, "discarded off-torus candidate " + fmt_point(z));
          continue;
        }
        if (!residual_ok(f1, z) || !residual_ok(f2, z)) continue;
        bool dup = std::any_of(found.begin(), found.end(), [&](const auto& q) {
          return std::max(std::abs(q[0] - z[0]), std::abs(q[1] - z[1])) < kSolverMerge * std::max(1.0, norm0(z));
        });
        if (!dup) found.push_back(z);
      }
      if (!found.empty()) break;
    }
    if (found.empty()) {
      note(notes, "no common solution above eliminant root " + fmt_point(std::span<const Complex>(&cl.value, 1)));
      continue;
    }
    // A root of the eliminant with multiplicity m lifts to k points; split m
    // evenly, which is exact for the generic cases k = 1 and k = m.
    const int k = static_cast<int>(found.size());
    const int each = std::max(1, cl.mult / k);
    if (k != 1 && k != cl.mult)
      note(notes, "ambiguous multiplicity split above eliminant root " + fmt_point(std::span<const Complex>(&cl.value, 1)));
    for (auto& z : found) pts.emplace_back(std::move(z), each);
  }
  return finish(sys, std::move(pts), notes);
}

GenericityReport check_generic(const PolynomialSystem& sys, const SolutionSet& sols, double tol) {
  GenericityReport report;
  if (sys.n() != sols.n()) throw DomainError("system and solutions differ in dimension");
  const auto n = static_cast<Eigen::Index>(sys.n());
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const auto& v = sols[i];
    if (v.mult() > 1) {
      report.generic = false;
      report.diagnostics.push_back("solution " + std::to_string(i + 1) + " has multiplicity " +
                                   std::to_string(v.mult()));
    }
    Eigen::MatrixXcd jac(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c)
        jac(r, c) = sys.polys()[static_cast<std::size_t>(r)].derivative(static_cast<std::size_t>(c), v.coords());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jac);
    const auto& s = svd.singularValues();
    const double hi = s.maxCoeff();
    const double lo = s.minCoeff();
    if (!(hi > 0.0) || !(lo > tol * hi)) {
      report.generic = false;
      std::ostringstream msg;
      msg << "Jacobian at solution " << i + 1 << " is singular (sigma_min/sigma_max = " << (hi > 0.0 ? lo / hi : 0.0)
          << ")";
      report.diagnostics.push_back(msg.str());
    }
  }
  return report;
}

}  // namespace amoeba

#include "amoeba/core.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace amoeba {

bool is_finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

TorusPoint::TorusPoint(std::vector<Complex> coords, int mult)
    : coords_(std::move(coords)), mult_(mult) {
  if (coords_.empty()) throw DomainError("torus point has no coordinates");
  if (mult_ < 1) throw DomainError("multiplicity must be at least 1");
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (!is_finite(coords_[k]))
      throw DomainError("coordinate " + std::to_string(k + 1) + " is not finite");
    if (std::abs(coords_[k]) < kTorusThreshold)
      throw DomainError("not in torus: coordinate " + std::to_string(k + 1) +
                        " has modulus below 1e-12");
  }
}

double coord_distance(const TorusPoint& a, const TorusPoint& b) {
  if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

SolutionSet::SolutionSet(std::size_t n, const std::vector<TorusPoint>& points,
                         double merge_threshold)
    : n_(n) {
  for (const auto& p : points) add(p, merge_threshold);
}

void SolutionSet::add(const TorusPoint& p, double merge_threshold) {
  if (p.dim() != n_)
    throw DomainError("point has dimension " + std::to_string(p.dim()) + ", expected " +
                      std::to_string(n_));
  for (auto& q : points_) {
    if (coord_distance(p, q) < merge_threshold) {
      q = q.with_mult(q.mult() + p.mult());
      return;
    }
  }
  points_.push_back(p);
}

std::int64_t SolutionSet::total_count() const {
  return std::accumulate(points_.begin(), points_.end(), std::int64_t{0},
                         [](std::int64_t s, const TorusPoint& p) { return s + p.mult(); });
}

bool SolutionSet::count_mismatch() const {
  return mixed_volume_.has_value() && *mixed_volume_ != total_count();
}

double distance(const LogPoint& a, const LogPoint& b) {
  if (a.dim() != b.dim()) throw DomainError("dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

AffineForm::AffineForm(Complex b0, std::vector<Complex> b) : b0_(b0), b_(std::move(b)) {
  if (b_.empty()) throw DomainError("affine form needs at least one variable");
  if (!is_finite(b0_) || !std::all_of(b_.begin(), b_.end(), is_finite))
    throw DomainError("affine form has a non-finite coefficient");
  if (std::all_of(b_.begin(), b_.end(), [](Complex c) { return c == Complex{}; }))
    throw DomainError("affine form has no linear part (not a hyperplane)");
}

std::string GeneratorLabel::str() const {
  switch (kind) {
    case Kind::G:
      return "g" + std::to_string(indices.at(0));
    case Kind::H: {
      std::string s = "h(";
      for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(indices[i]);
      }
      return s + ")";
    }
    case Kind::Other:
      break;
  }
  return "other";
}

GeneratorLabel GeneratorLabel::parse(const std::string& s) {
  auto bad = [&] { return InputError("unrecognized generator label '" + s + "'"); };
  try {
    if (s.size() >= 2 && s[0] == 'g') {
      std::size_t used = 0;
      int j = std::stoi(s.substr(1), &used);
      if (used != s.size() - 1) throw bad();
      return g(j);
    }
    if (s.size() >= 3 && s.rfind("h(", 0) == 0 && s.back() == ')') {
      std::vector<int> t;
      std::stringstream in(s.substr(2, s.size() - 3));
      std::string item;
      while (std::getline(in, item, ',')) t.push_back(std::stoi(item));
      return h(std::move(t));
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  if (s == "other") return {};
  throw bad();
}

ArrangementPoly::ArrangementPoly(std::vector<AffineForm> factors, GeneratorLabel label)
    : factors_(std::move(factors)), label_(std::move(label)) {
  if (factors_.empty()) throw DomainError("arrangement polynomial has no factors");
  for (const auto& f : factors_)
    if (f.dim() != factors_.front().dim())
      throw DomainError("arrangement factors have mixed dimensions");
}

LaurentPoly::LaurentPoly(std::size_t n, const std::vector<Monomial>& terms) : n_(n) {
  std::map<std::vector<int>, Complex> combined;
  for (const auto& t : terms) {
    if (t.exp.size() != n)
      throw DomainError("exponent vector has length " + std::to_string(t.exp.size()) +
                        ", expected " + std::to_string(n));
    if (!is_finite(t.coef)) throw DomainError("non-finite polynomial coefficient");
    combined[t.exp] += t.coef;
  }
  for (auto& [e, c] : combined)
    if (c != Complex{}) terms_.push_back({e, c});
}

namespace {

Complex monomial_value(const std::vector<int>& e, std::span<const Complex> z) {
  Complex v{1.0, 0.0};
  for (std::size_t k = 0; k < e.size(); ++k)
    if (e[k] != 0) v *= std::pow(z[k], e[k]);
  return v;
}

void check_dim(std::size_t expected, std::size_t got) {
  if (expected != got)
    throw DomainError("dimension mismatch: expected " + std::to_string(expected) +
                      " coordinates, got " + std::to_string(got));
}

}  // namespace

Complex LaurentPoly::operator()(std::span<const Complex> z) const {
  check_dim(n_, z.size());
  Complex s{};
  for (const auto& t : terms_) s += t.coef * monomial_value(t.exp, z);
  return s;
}

Complex LaurentPoly::derivative(std::size_t k, std::span<const Complex> z) const {
  check_dim(n_, z.size());
  Complex s{};
  for (const auto& t : terms_) {
    if (t.exp[k] == 0) continue;
    std::vector<int> e = t.exp;
    e[k] -= 1;
    s += t.coef * static_cast<double>(t.exp[k]) * monomial_value(e, z);
  }
  return s;
}

double LaurentPoly::term_modulus_sum(std::span<const Complex> z) const {
  check_dim(n_, z.size());
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coef * monomial_value(t.exp, z));
  return s;
}

int LaurentPoly::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) {
    int s = 0;
    for (int e : t.exp) s += std::abs(e);
    d = std::max(d, s);
  }
  return d;
}

std::string to_string(BasisMode mode) { return mode == BasisMode::Full ? "full" : "distinct"; }

BasisMode parse_mode(const std::string& s) {
  if (s == "full") return BasisMode::Full;
  if (s == "distinct") return BasisMode::Distinct;
  throw InputError("unknown mode '" + s + "' (expected full or distinct)");
}

std::size_t AmoebaBasis::max_degree() const {
  std::size_t d = 0;
  for (const auto& g : generators) d = std::max(d, g.degree());
  return d;
}

LogPoint log_map(const TorusPoint& p) {
  LogPoint w;
  w.u.reserve(p.dim());
  for (Complex c : p.coords()) {
    double m = std::abs(c);
    if (m < kTorusThreshold) throw DomainError("not in torus");
    w.u.push_back(std::log(m));
  }
  return w;
}

double norm0(std::span<const Complex> z) {
  double s = 0.0;
  for (Complex c : z) s += std::abs(c);
  return s;
}

double norm0(const TorusPoint& p) { return norm0(std::span<const Complex>(p.coords())); }

Complex evaluate_affine(const AffineForm& f, std::span<const Complex> z) {
  check_dim(f.dim(), z.size());
  Complex s = f.b0();
  for (std::size_t k = 0; k < z.size(); ++k) s += f.b()[k] * z[k];
  return s;
}

Complex evaluate_arrangement(const ArrangementPoly& g, std::span<const Complex> z) {
  Complex p{1.0, 0.0};
  for (const auto& f : g.factors()) p *= evaluate_affine(f, z);
  return p;
}

}  // namespace amoeba

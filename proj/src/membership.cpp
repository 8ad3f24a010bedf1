#include "amoeba/membership.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace amoeba {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_abs(Complex c) { return c == Complex{} ? kNegInf : std::log(std::abs(c)); }

}  // namespace

double log_sum_exp(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : xs)
    if (x != kNegInf) s += std::exp(x - hi);
  return hi + std::log(s);
}

MembershipReport fpt_margin(const AffineForm& f, const LogPoint& u) {
  const std::size_t n = f.dim();
  if (u.dim() != n)
    throw DomainError("log point has dimension " + std::to_string(u.dim()) + ", form has " +
                      std::to_string(n));

  std::vector<double> t(n + 1);
  t[0] = log_abs(f.b0());
  for (std::size_t k = 1; k <= n; ++k) {
    double lb = log_abs(f.b()[k - 1]);
    t[k] = lb == kNegInf ? kNegInf : lb + u[k - 1];
  }

  // Smallest index among equal maxima.
  int top = 0;
  for (std::size_t k = 1; k <= n; ++k)
    if (t[k] > t[top]) top = static_cast<int>(k);
  if (t[top] == kNegInf) throw DomainError("zero affine form");

  double top_value = t[top];
  t[top] = kNegInf;
  double rest = log_sum_exp(t);
  if (rest == kNegInf) return {std::numeric_limits<double>::infinity(), top};
  return {top_value - rest, top};
}

bool fpt_member(const AffineForm& f, const LogPoint& u, double tol) {
  if (tol < 0.0) throw DomainError("tolerance must be non-negative");
  return fpt_margin(f, u).margin <= tol;
}

double arrangement_margin(const ArrangementPoly& g, const LogPoint& u) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& f : g.factors()) m = std::min(m, fpt_margin(f, u).margin);
  return m;
}

double intersection_margin(std::span<const ArrangementPoly> generators, const LogPoint& u) {
  if (generators.empty()) throw DomainError("empty basis");
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& g : generators) m = std::max(m, arrangement_margin(g, u));
  return m;
}

double intersection_margin(const AmoebaBasis& basis, const LogPoint& u) {
  return intersection_margin(std::span<const ArrangementPoly>(basis.generators), u);
}

double fixed_index_margin(std::span<const AffineForm> forms, const LogPoint& u) {
  if (forms.size() != u.dim() + 1)
    throw DomainError("fixed-index margin needs n+1 = " + std::to_string(u.dim() + 1) +
                      " forms, got " + std::to_string(forms.size()));
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& f : forms) m = std::max(m, fpt_margin(f, u).margin);
  return m;
}

HyperplaneTerms::HyperplaneTerms(const AffineForm& f) : form_(f), b0_abs_(std::abs(f.b0())) {
  b_abs_.reserve(f.dim());
  for (Complex c : f.b()) b_abs_.push_back(std::abs(c));
}

bool HyperplaneTerms::member(std::span<const double> exp_u, double tol_factor) const {
  double top = b0_abs_;
  std::size_t top_k = 0;
  for (std::size_t k = 0; k < b_abs_.size(); ++k) {
    double term = b_abs_[k] * exp_u[k];
    if (term > top) {
      top = term;
      top_k = k + 1;
    }
  }
  double rest = top_k == 0 ? 0.0 : b0_abs_;
  for (std::size_t k = 0; k < b_abs_.size(); ++k)
    if (k + 1 != top_k) rest += b_abs_[k] * exp_u[k];
  if (rest <= 0.0) return false;
  return top <= rest * tol_factor;
}

}  // namespace amoeba

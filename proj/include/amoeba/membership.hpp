#pragma once

#include <span>
#include <vector>

#include "amoeba/core.hpp"

namespace amoeba {

inline constexpr double kDefaultMembershipTol = 1e-9;

/// Signed log-scale distance from the triangle-inequality boundary.
///
/// margin <= 0 exactly on the amoeba. tight_index names the inequality
/// attaining the margin: 0 for the constant term, k for the z_k term.
/// When only one term is nonzero the amoeba is empty and margin is +inf.
struct MembershipReport {
  double margin;
  int tight_index;
};

/// log(sum exp(x)) over finite entries; -inf when there are none.
double log_sum_exp(std::span<const double> xs);

MembershipReport fpt_margin(const AffineForm& f, const LogPoint& u);
bool fpt_member(const AffineForm& f, const LogPoint& u, double tol = kDefaultMembershipTol);

/// Union over factors: the smallest factor margin.
double arrangement_margin(const ArrangementPoly& g, const LogPoint& u);
/// Intersection over generators: the largest arrangement margin.
double intersection_margin(const AmoebaBasis& basis, const LogPoint& u);
double intersection_margin(std::span<const ArrangementPoly> generators, const LogPoint& u);
/// Largest margin over the n+1 forms g_0^(i)..g_n^(i) of one solution.
double fixed_index_margin(std::span<const AffineForm> forms, const LogPoint& u);

/// Precomputed term moduli of a hyperplane for repeated evaluation.
///
/// Works in the linear domain with caller-supplied e^{u_k}, so a grid scan
/// pays no transcendental call per factor. Valid while all products stay
/// inside double range; callers fall back to fpt_margin otherwise.
class HyperplaneTerms {
 public:
  explicit HyperplaneTerms(const AffineForm& f);

  /// True iff largest term <= (sum of the others) * tol_factor, where
  /// tol_factor = e^{tol}.
  bool member(std::span<const double> exp_u, double tol_factor) const;

  const AffineForm& form() const { return form_; }

 private:
  AffineForm form_;
  double b0_abs_;
  std::vector<double> b_abs_;
};

}  // namespace amoeba

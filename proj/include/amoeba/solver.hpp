#pragma once

#include <span>
#include <string>
#include <vector>

#include "amoeba/core.hpp"

namespace amoeba {

/// Square system f_1 = ... = f_n = 0 of Laurent polynomials in n variables.
class PolynomialSystem {
 public:
  PolynomialSystem(std::size_t n, std::vector<LaurentPoly> polys);

  std::size_t n() const { return n_; }
  const std::vector<LaurentPoly>& polys() const { return polys_; }

 private:
  std::size_t n_;
  std::vector<LaurentPoly> polys_;
};

/// Coefficients lowest degree first: coeffs[k] multiplies z^k.
using UniPoly = std::vector<Complex>;

Complex evaluate_uni(std::span<const Complex> coeffs, Complex z);

/// All roots by Durand-Kerner iteration (at most 500 sweeps, seeds
/// (0.4 + 0.9i)^k). Throws DomainError for degree < 1 or a zero leading
/// coefficient, NumericError if the iteration neither converges nor leaves
/// every residual within 1e-8 of the term-modulus scale.
std::vector<Complex> solve_univariate(std::span<const Complex> coeffs);

/// Resultant of two bivariate polynomials with respect to variable
/// `eliminate` (0 or 1), as a polynomial in the other variable. Negative
/// exponents are first cleared by monomial shifts, which only change the
/// result by a power of the remaining variable. Throws NumericError when
/// the resultant vanishes identically (common component).
UniPoly sylvester_resultant(const LaurentPoly& f, const LaurentPoly& g, std::size_t eliminate);

/// Torus solutions of a system with n in {1, 2}, merged with multiplicity
/// under a 1e-6 threshold and ordered lexicographically by (re, im). The
/// mixed volume of the system is attached when it can be computed; notes
/// (discarded off-torus roots, count mismatches) are appended to `notes`.
SolutionSet solve_system(const PolynomialSystem& sys, std::vector<std::string>* notes = nullptr);

struct GenericityReport {
  bool generic = true;
  std::vector<std::string> diagnostics;

  explicit operator bool() const { return generic; }
};

/// Every solution simple, with Jacobian smallest singular value above
/// tol * largest.
GenericityReport check_generic(const PolynomialSystem& sys, const SolutionSet& sols, double tol = 1e-8);

}  // namespace amoeba

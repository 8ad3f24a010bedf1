#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace amoeba {

using Complex = std::complex<double>;

/// Coordinates with modulus below this are treated as zero (off the torus).
inline constexpr double kTorusThreshold = 1e-12;
/// Coordinatewise distance under which two solutions are the same point.
inline constexpr double kMergeThreshold = 1e-9;

/// Raised when an input lies outside the domain of an operation
/// (off-torus coordinate, zero form, dimension mismatch).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised on malformed input files or arguments.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a numeric procedure fails (non-convergence, non-integral
/// mixed volume, degenerate elimination).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_finite(Complex c);

/// A point of (C*)^n carrying a multiplicity.
class TorusPoint {
 public:
  explicit TorusPoint(std::vector<Complex> coords, int mult = 1);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<Complex>& coords() const { return coords_; }
  Complex operator[](std::size_t k) const { return coords_[k]; }
  int mult() const { return mult_; }

  TorusPoint with_mult(int mult) const { return TorusPoint(coords_, mult); }

 private:
  std::vector<Complex> coords_;
  int mult_;
};

/// Largest coordinatewise modulus of the difference.
double coord_distance(const TorusPoint& a, const TorusPoint& b);

/// The finite variety V: distinct torus points with multiplicities.
///
/// Points closer than kMergeThreshold (coordinatewise) are merged and their
/// multiplicities added. When the set came from a polynomial system, the
/// mixed volume of that system can be attached to check Bernstein's count.
class SolutionSet {
 public:
  explicit SolutionSet(std::size_t n) : n_(n) {}
  SolutionSet(std::size_t n, const std::vector<TorusPoint>& points,
              double merge_threshold = kMergeThreshold);

  void add(const TorusPoint& p, double merge_threshold = kMergeThreshold);

  std::size_t n() const { return n_; }
  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<TorusPoint>& points() const { return points_; }
  const TorusPoint& operator[](std::size_t i) const { return points_[i]; }

  /// Sum of multiplicities.
  std::int64_t total_count() const;

  void attach_mixed_volume(std::int64_t mv) { mixed_volume_ = mv; }
  std::optional<std::int64_t> mixed_volume() const { return mixed_volume_; }
  /// True when a mixed volume is attached and differs from total_count().
  bool count_mismatch() const;

 private:
  std::size_t n_;
  std::vector<TorusPoint> points_;
  std::optional<std::int64_t> mixed_volume_;
};

/// Point of R^n in log-modulus coordinates.
struct LogPoint {
  std::vector<double> u;

  std::size_t dim() const { return u.size(); }
  double operator[](std::size_t k) const { return u[k]; }
};

double distance(const LogPoint& a, const LogPoint& b);

/// b0 + b1 z1 + ... + bn zn, with at least one of b1..bn nonzero.
class AffineForm {
 public:
  AffineForm(Complex b0, std::vector<Complex> b);

  std::size_t dim() const { return b_.size(); }
  Complex b0() const { return b0_; }
  const std::vector<Complex>& b() const { return b_; }
  /// Coefficient k in 0..n, where 0 is the constant term.
  Complex coeff(std::size_t k) const { return k == 0 ? b0_ : b_[k - 1]; }

  bool operator==(const AffineForm&) const = default;

 private:
  Complex b0_;
  std::vector<Complex> b_;
};

/// Provenance of a generator: g_j, or the h-product for a factor-row tuple.
struct GeneratorLabel {
  enum class Kind { G, H, Other };
  Kind kind = Kind::Other;
  std::vector<int> indices;

  static GeneratorLabel g(int j) { return {Kind::G, {j}}; }
  static GeneratorLabel h(std::vector<int> tuple) { return {Kind::H, std::move(tuple)}; }

  /// "g0", "h(0,1,2)", or "other".
  std::string str() const;
  static GeneratorLabel parse(const std::string& s);

  bool operator==(const GeneratorLabel&) const = default;
};

/// Ordered product of affine forms kept in factored form.
class ArrangementPoly {
 public:
  ArrangementPoly(std::vector<AffineForm> factors, GeneratorLabel label = {});

  std::size_t dim() const { return factors_.front().dim(); }
  std::size_t degree() const { return factors_.size(); }
  const std::vector<AffineForm>& factors() const { return factors_; }
  const GeneratorLabel& label() const { return label_; }

  bool operator==(const ArrangementPoly&) const = default;

 private:
  std::vector<AffineForm> factors_;
  GeneratorLabel label_;
};

struct Monomial {
  std::vector<int> exp;
  Complex coef;
};

/// Sparse Laurent polynomial in n variables.
///
/// Terms with equal exponents are combined on construction and exactly-zero
/// coefficients are dropped.
class LaurentPoly {
 public:
  LaurentPoly(std::size_t n, const std::vector<Monomial>& terms);

  std::size_t dim() const { return n_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  Complex operator()(std::span<const Complex> z) const;
  /// Partial derivative with respect to variable k, evaluated at z.
  Complex derivative(std::size_t k, std::span<const Complex> z) const;
  /// Sum over terms of |c| * |z^e|.
  double term_modulus_sum(std::span<const Complex> z) const;
  /// Largest |e|_1 over the support.
  int total_degree() const;

 private:
  std::size_t n_;
  std::vector<Monomial> terms_;
};

enum class BasisMode { Full, Distinct };

std::string to_string(BasisMode mode);
BasisMode parse_mode(const std::string& s);

struct AmoebaBasis {
  std::size_t n = 0;
  /// Number of solutions counted with multiplicity (bounds every degree).
  std::size_t l = 0;
  std::vector<ArrangementPoly> generators;
  BasisMode mode = BasisMode::Full;
  /// Length bound (n+1)(n^(mu-1)+1) for mu = l, when representable.
  std::optional<std::int64_t> mu_bound;

  std::size_t max_degree() const;
  bool operator==(const AmoebaBasis&) const = default;
};

LogPoint log_map(const TorusPoint& p);
double norm0(const TorusPoint& p);
double norm0(std::span<const Complex> z);

Complex evaluate_affine(const AffineForm& f, std::span<const Complex> z);
Complex evaluate_arrangement(const ArrangementPoly& g, std::span<const Complex> z);

}  // namespace amoeba

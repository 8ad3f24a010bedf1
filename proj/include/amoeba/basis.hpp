#pragma once

#include <cstdint>
#include <vector>

#include "amoeba/core.hpp"

namespace amoeba {

struct GridSpec;

/// Hyperplane through v with all n+1 terms balanced at v:
///   1 - (1/||v||_0) sum_k (|v_k|/v_k) z_k.
AffineForm build_factor_g0(const TorusPoint& v);
/// 1 - ((1 + ||v||_0 - |v_j|)/v_j) z_j + sum_{k != j} (|v_k|/v_k) z_k,
/// for 1 <= j <= n.
AffineForm build_factor_gj(const TorusPoint& v, std::size_t j);

/// Rows j = 0..n, one column per distinct solution; entry j,i vanishes at
/// solution i.
class FactorMatrix {
 public:
  explicit FactorMatrix(const SolutionSet& sols);

  std::size_t n() const { return n_; }
  std::size_t rows() const { return n_ + 1; }
  std::size_t cols() const { return cols_.size(); }
  const AffineForm& at(std::size_t j, std::size_t i) const { return cols_.at(i).at(j); }
  /// The n+1 forms g_0^(i)..g_n^(i).
  const std::vector<AffineForm>& column(std::size_t i) const { return cols_.at(i); }
  int mult(std::size_t i) const { return mults_.at(i); }
  /// Log-image w^(i) of solution i.
  const LogPoint& image(std::size_t i) const { return images_.at(i); }

 private:
  std::size_t n_;
  std::vector<std::vector<AffineForm>> cols_;
  std::vector<int> mults_;
  std::vector<LogPoint> images_;
};

/// g_0..g_n; a solution of multiplicity m contributes m equal factors.
std::vector<ArrangementPoly> build_generators_g(const SolutionSet& sols);

using TupleIndex = std::vector<int>;

/// Factor-row tuples for the h-products. Full: every non-constant tuple in
/// {0..n}^l. Distinct: tuples with pairwise-distinct entries (l <= n+1).
/// l = 1 gives no tuples.
std::vector<TupleIndex> enumerate_h_tuples(std::size_t n, std::size_t l, BasisMode mode);

/// g_{t(1)}^(1) ... g_{t(l)}^(l).
ArrangementPoly build_h(const TupleIndex& t, const FactorMatrix& fm);

AmoebaBasis build_basis(const SolutionSet& sols, BasisMode mode = BasisMode::Full);

/// Every generator vanishes at every solution, relative to
/// prod over factors of (1 + ||v||_0).
bool root_check(const AmoebaBasis& basis, const SolutionSet& sols, double tol = 1e-9);

/// Greedy removal (h-products first in listed order, then g_n..g_0), keeping
/// a removal only when grid verification still passes. Throws DomainError
/// if the input basis does not verify.
AmoebaBasis minimize_basis(const AmoebaBasis& basis, const SolutionSet& sols, const GridSpec& grid);

}  // namespace amoeba

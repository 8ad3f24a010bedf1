#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "amoeba/basis.hpp"
#include "amoeba/core.hpp"
#include "amoeba/membership.hpp"

namespace amoeba {

/// Regular grid over a box in log space.
struct GridSpec {
  std::vector<std::pair<double, double>> box;
  std::size_t resolution = 201;
  double tol = kDefaultMembershipTol;
  /// Members must lie within radius_factor * spacing() of a solution.
  double radius_factor = 3.0;
  std::uint64_t node_cap = 10'000'000;
  /// Worker threads for scans; results do not depend on this.
  unsigned workers = 1;

  std::size_t dim() const { return box.size(); }
  /// Throws DomainError on an empty box, lo >= hi, resolution < 2, or
  /// a node count above node_cap.
  void validate() const;
  std::uint64_t node_count() const;
  /// Largest per-axis node spacing.
  double spacing() const;
  double radius() const { return radius_factor * spacing(); }
  LogPoint node(std::uint64_t index) const;
};

/// Box around the log-images of the solutions padded by `padding`, with 201
/// nodes per axis for n <= 2, 51 for n = 3 and 15 beyond.
GridSpec default_grid(const SolutionSet& sols, double padding = 2.0);

struct GridMember {
  LogPoint u;
  double margin;
};

/// Nodes with intersection_margin <= grid.tol, in node-index order.
std::vector<GridMember> grid_scan(const AmoebaBasis& basis, const GridSpec& grid);
std::vector<GridMember> grid_scan(std::span<const ArrangementPoly> generators, const GridSpec& grid);

struct VerificationReport {
  std::vector<GridMember> member_points;
  /// Largest distance from a member to its nearest solution image; 0 with no members.
  double max_distance = 0.0;
  double radius = 0.0;
  /// Solution images whose intersection margin exceeds tol.
  std::vector<LogPoint> missed;
  std::vector<double> solution_margins;
  bool passed = false;
};

/// Two-sided grid check that the generators' amoebas meet exactly in the
/// log-images of the solutions. The box must contain each image with at
/// least 1.0 of padding on every side.
VerificationReport verify_basis(const AmoebaBasis& basis, const SolutionSet& sols, const GridSpec& grid);

struct LemmaAReport {
  /// sets[i] = { j : fpt_margin(g_j^(i), w) > tol }.
  std::vector<std::vector<int>> sets;

  bool all_nonempty() const;
};

LemmaAReport lemma_a_sets(const FactorMatrix& fm, const LogPoint& w, double tol = kDefaultMembershipTol);

/// Grid nodes where all n+1 forms of column i contain the node.
std::vector<GridMember> fixed_index_scan(const FactorMatrix& fm, std::size_t i, const GridSpec& grid);
/// True iff every node of fixed_index_scan lies within grid.radius() of the
/// log-image of solution i.
bool fixed_index_uniqueness(const FactorMatrix& fm, std::size_t i, const GridSpec& grid);

/// Relative threshold on min |f| / (sum of term moduli) for phase_oracle.
inline constexpr double kPhaseOracleRelTol = 1e-6;

/// min over phases theta of |f(e^{u+i theta})|, divided by the sum of term
/// moduli. Coarse sampling (regular grid for n <= 2, seeded random draws
/// otherwise) followed by damped Gauss-Newton polishing of the best seeds.
double phase_min_relative(const AffineForm& f, const LogPoint& u, std::size_t samples = 1000);
/// Brute-force hyperplane amoeba membership, independent of the
/// inequality characterization.
bool phase_oracle(const AffineForm& f, const LogPoint& u, std::size_t samples = 1000);

}  // namespace amoeba

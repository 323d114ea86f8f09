#pragma once

#include <optional>
#include <string>
#include <vector>

#include "roekms/asymptotics.hpp"
#include "roekms/kms.hpp"

namespace roekms::tree {

/// Word over the alphabet {1..n}; the empty word is the root.
using Word = std::vector<int>;

bool is_prefix(const Word& y, const Word& x);

/// chi_{y^T} * chi_{z^T} for prefix cylinders: the smaller cylinder when one
/// root extends the other, empty otherwise.
std::optional<Word> cylinder_product(const Word& y, const Word& z);

/// Points of the prefix cylinder y^T inside the truncation.
PointSet cylinder_points(const FiniteSpace& space, const Word& y);

/// The unique KMS state above the transition, level by level:
/// w(y) = e^{-beta |y|} - n e^{-beta(|y|+1)}, with the exact deficit
/// (n e^{-beta})^{depth+1} kept as mass at infinity instead of renormalizing.
/// beta below log n is an error (some weight would be negative); beta equal
/// to the representable log n is snapped so the critical weights are exactly
/// zero and the escaped mass exactly one.
DiagonalState explicit_tree_state(int n, double beta, int depth);

/// Weight the explicit state puts on one point of word length k.
double explicit_level_weight(int n, double beta, int k);

/// Sum of the state's weights over the prefix cylinder y^T (truncation part
/// only; escaping mass is reported separately below).
double cylinder_mass(const DiagonalState& phi, const Word& y);

/// The explicit state's mass that the cylinder y^T loses to the truncation
/// boundary: e^{-beta |y|} (n e^{-beta})^{depth - |y| + 1}. Adding it to
/// cylinder_mass gives the infinite-tree value e^{-beta |y|}.
double explicit_cylinder_escaped_mass(int n, double beta, int depth, int prefix_len);

/// Defect of phi against the branch-shift criterion: for each word y and set
/// A, compare phi(chi_{yshift(A)}) with e^{-beta |y|} phi(chi_A), where
/// yshift appends y as a suffix. Pairs whose image leaves the truncation are
/// restricted to the part that fits (noted in the witness).
KmsReport shift_kms_defect(const DiagonalState& phi, int n, double beta,
                           const std::vector<Word>& ys, const std::vector<PointSet>& As);

/// Total isometry of the truncation carrying the branch prefix x to the
/// branch prefix y, built by transposing the two relevant children at each
/// level along the path; all other subtrees ride along unchanged.
PartialTranslation branch_isometry(const Word& x_prefix, const Word& y_prefix,
                                   const SpacePtr& space);

/// phi o Ad(u_f) for a total bijective isometry f: w'(x) = w(f(x)).
DiagonalState pushforward_state(const DiagonalState& phi, const PartialTranslation& f);

/// Per-beta classification of the n-branching tree:
///   no-state       beta < log n (negative weight witness)
///   critical       beta = log n (all mass escapes at every depth)
///   unique-gibbs   beta > log n (Z converges; shift defect checked)
struct PhaseRow {
  double beta = 0.0;
  std::string verdict;
  double z_tail = 0.0;        // Z at the deepest scheduled depth (log-domain safe)
  double escaped_mass = 0.0;  // explicit-state mass at infinity at that depth
  double kms_defect = 0.0;    // shift defect of the explicit state; NaN if no state
  std::string witness;
};

struct PhaseReport {
  int n = 0;
  std::vector<long long> depths;
  std::vector<PhaseRow> rows;
  std::optional<double> boundary_lower;  // largest no-state beta
  std::optional<double> boundary_upper;  // smallest beta carrying a state
};

PhaseReport phase_report(int n, const std::vector<double>& beta_grid,
                         const std::vector<long long>& depths, int threads = 1);

}  // namespace roekms::tree

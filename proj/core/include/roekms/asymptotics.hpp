#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "roekms/kms.hpp"

namespace roekms {

/// One increment of a truncation sequence: log of the number of points added
/// at stage k, and the (common) potential value on them. Working with
/// logarithms keeps tree families with 2^2000 points representable.
struct LevelTerm {
  double log_count = 0.0;
  double h = 0.0;
};

using LevelRule = std::function<LevelTerm(long long k)>;

/// Built-in families: stage k of a tree adds n^k points at h = k; stage k of
/// the squares space adds one point at h = log k; stage k of the geometric
/// interval toy adds one point at h = k.
LevelRule tree_level_rule(int branching);
LevelRule squares_log_level_rule();
LevelRule interval_geometric_level_rule();

/// log of the partial sum sum_{k<=depth} count_k e^{-beta h_k}.
double log_partial_sum(const LevelRule& rule, double beta, long long depth);

enum class Verdict { converges, diverges, inconclusive };
std::string to_string(Verdict v);

struct ConvergenceVerdict {
  double beta = 0.0;
  Verdict verdict = Verdict::inconclusive;
  /// (depth, log partial sum) at each probe depth.
  std::vector<std::pair<long long, double>> evidence;
};

/// Heuristic: partial sums growing by a factor >= 1.5 across the last depth
/// doubling mean divergence; a tail increment below 1e-9 of the current sum
/// at the final depth means convergence; anything else is inconclusive.
ConvergenceVerdict classify_convergence(const LevelRule& rule, double beta,
                                        const std::vector<long long>& depths);

struct CriticalBetaResult {
  std::optional<double> estimate;
  std::optional<double> last_divergent;
  std::optional<double> first_convergent;
  bool monotone = true;
  std::vector<ConvergenceVerdict> per_beta;
};

/// Sweeps a sorted beta grid; the estimate is the midpoint of the bracket
/// (largest divergent beta, smallest convergent beta). A non-monotone verdict
/// sequence makes the whole sweep inconclusive.
CriticalBetaResult critical_beta(const LevelRule& rule, const std::vector<double>& grid,
                                 const std::vector<long long>& depths);

/// Greedy thin sequence: x_l is the smallest-id point with
/// d(x_k, x_l) >= max_{i,j<l} d(x_i,x_j) + l for all k < l.
struct ThinSet {
  PointSet points;  // in pick order (which is ascending for the greedy rule)
  bool exhausted = false;
};

ThinSet build_thin_set(const FiniteSpace& space, int count);
bool thin_set_invariant_holds(const FiniteSpace& space, const PointSet& pts);

/// For each core size m, the max of |f(x)-f(y)| over pairs outside the core
/// with d(x,y) <= R. Higson behavior shows up as decay to 0.
std::vector<std::pair<long long, double>> higson_variation(
    const FiniteSpace& ambient, const std::vector<long long>& core_sizes,
    const std::function<double(long long)>& f, double R);

/// Mass of the deepest state outside each earlier truncation core, plus the
/// max pointwise weight it leaves on that core. A limit dominated by the
/// strongly continuous part keeps its mass on bounded cores; a limit that
/// vanishes on the compacts pushes it out.
struct MassProfile {
  struct Row {
    long long core_size;
    double max_core_weight;
    double escaped;
  };
  std::vector<Row> rows;
  std::string classification;  // "strongly-continuous" | "compact-vanishing" | "mixed"
};

MassProfile mass_at_infinity_profile(const std::vector<DiagonalState>& states_per_depth);

}  // namespace roekms

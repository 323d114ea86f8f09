#include "roekms/asymptotics.hpp"

#include <algorithm>
#include <cmath>

namespace roekms {

LevelRule tree_level_rule(int branching) {
  double logn = std::log(static_cast<double>(branching));
  return [logn](long long k) {
    return LevelTerm{static_cast<double>(k) * logn, static_cast<double>(k)};
  };
}

LevelRule squares_log_level_rule() {
  return [](long long k) {
    // k-th point is k^2 with h = log sqrt(k^2) = log k; stage 0 is unused.
    return LevelTerm{0.0, std::log(static_cast<double>(std::max(k, 1ll)))};
  };
}

LevelRule interval_geometric_level_rule() {
  return [](long long k) { return LevelTerm{0.0, static_cast<double>(k)}; };
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::converges: return "converges";
    case Verdict::diverges: return "diverges";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {
// log(e^a + e^b)
double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}
}  // namespace

double log_partial_sum(const LevelRule& rule, double beta, long long depth) {
  double acc = -std::numeric_limits<double>::infinity();
  for (long long k = 0; k <= depth; ++k) {
    LevelTerm t = rule(k);
    acc = log_add(acc, t.log_count - beta * t.h);
  }
  return acc;
}

ConvergenceVerdict classify_convergence(const LevelRule& rule, double beta,
                                        const std::vector<long long>& depths) {
  ConvergenceVerdict cv;
  cv.beta = beta;
  double acc = -std::numeric_limits<double>::infinity();
  long long next = 0;
  double tail_increment_log = -std::numeric_limits<double>::infinity();
  for (long long d : depths) {
    double before = acc;
    for (; next <= d; ++next) {
      LevelTerm t = rule(next);
      acc = log_add(acc, t.log_count - beta * t.h);
    }
    // log(sum_d - sum_{prev}) is not directly available; track the last
    // single-stage increment instead, which bounds the probe tail behavior.
    LevelTerm t = rule(d);
    tail_increment_log = t.log_count - beta * t.h;
    (void)before;
    cv.evidence.emplace_back(d, acc);
  }
  if (cv.evidence.size() >= 2) {
    double last = cv.evidence.back().second;
    double prev = cv.evidence[cv.evidence.size() - 2].second;
    if (last - prev >= std::log(1.5)) {
      cv.verdict = Verdict::diverges;
      return cv;
    }
    if (tail_increment_log < last + std::log(1e-9)) {
      cv.verdict = Verdict::converges;
      return cv;
    }
  }
  cv.verdict = Verdict::inconclusive;
  return cv;
}

CriticalBetaResult critical_beta(const LevelRule& rule, const std::vector<double>& grid,
                                 const std::vector<long long>& depths) {
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw validation_error("critical_beta: beta grid must be sorted ascending");
  CriticalBetaResult res;
  res.per_beta.reserve(grid.size());
  for (double beta : grid) res.per_beta.push_back(classify_convergence(rule, beta, depths));

  // Verdicts must go divergent -> (inconclusive) -> convergent as beta grows.
  int stage = 0;  // 0 divergent region, 1 inconclusive band, 2 convergent region
  for (const auto& cv : res.per_beta) {
    int s = cv.verdict == Verdict::diverges ? 0 : (cv.verdict == Verdict::inconclusive ? 1 : 2);
    if (s < stage) {
      res.monotone = false;
      return res;
    }
    stage = s;
    if (cv.verdict == Verdict::diverges) res.last_divergent = cv.beta;
    if (cv.verdict == Verdict::converges && !res.first_convergent) res.first_convergent = cv.beta;
  }
  if (res.last_divergent && res.first_convergent)
    res.estimate = 0.5 * (*res.last_divergent + *res.first_convergent);
  else if (res.first_convergent && !res.last_divergent)
    res.estimate = 0.0;  // convergent everywhere on the grid
  return res;
}

ThinSet build_thin_set(const FiniteSpace& space, int count) {
  ThinSet ts;
  if (count <= 0) return ts;
  ts.points.push_back(0);
  double max_pair_dist = 0.0;
  while (static_cast<int>(ts.points.size()) < count) {
    auto l = static_cast<long long>(ts.points.size()) + 1;  // 1-based position being filled
    double need = max_pair_dist + static_cast<double>(l);
    long long pick = -1;
    for (long long x = ts.points.back() + 1; x < space.size(); ++x) {
      bool ok = true;
      for (long long p : ts.points)
        if (space.dist(p, x) < need) {
          ok = false;
          break;
        }
      if (ok) {
        pick = x;
        break;
      }
    }
    if (pick < 0) {
      ts.exhausted = true;
      break;
    }
    ts.points.push_back(pick);
    for (long long p : ts.points)
      max_pair_dist = std::max(max_pair_dist, space.dist(p, pick));
  }
  return ts;
}

bool thin_set_invariant_holds(const FiniteSpace& space, const PointSet& pts) {
  for (std::size_t l = 1; l < pts.size(); ++l) {
    double max_prev = 0.0;
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j)
        max_prev = std::max(max_prev, space.dist(pts[i], pts[j]));
    double need = max_prev + static_cast<double>(l + 1);  // position l is 1-based l+1
    for (std::size_t k = 0; k < l; ++k)
      if (space.dist(pts[k], pts[l]) < need) return false;
  }
  return true;
}

std::vector<std::pair<long long, double>> higson_variation(
    const FiniteSpace& ambient, const std::vector<long long>& core_sizes,
    const std::function<double(long long)>& f, double R) {
  std::vector<double> fx(static_cast<std::size_t>(ambient.size()));
  for (long long x = 0; x < ambient.size(); ++x) fx[static_cast<std::size_t>(x)] = f(x);

  std::vector<std::pair<long long, double>> out;
  out.reserve(core_sizes.size());
  for (long long core : core_sizes) {
    double var = 0.0;
    for (long long x = core; x < ambient.size(); ++x)
      for (long long y = x + 1; y < ambient.size(); ++y)
        if (ambient.dist(x, y) <= R)
          var = std::max(var, std::abs(fx[static_cast<std::size_t>(x)] -
                                       fx[static_cast<std::size_t>(y)]));
    out.emplace_back(core, var);
  }
  return out;
}

MassProfile mass_at_infinity_profile(const std::vector<DiagonalState>& states_per_depth) {
  if (states_per_depth.empty()) throw validation_error("mass profile: no states");
  const DiagonalState& deep = states_per_depth.back();
  MassProfile prof;
  for (const auto& st : states_per_depth) {
    long long core = st.space->size();
    if (core > deep.space->size())
      throw validation_error("mass profile: truncations must be nested");
    MassProfile::Row row;
    row.core_size = core;
    row.max_core_weight = 0.0;
    KahanSum on_core;
    for (long long x = 0; x < core; ++x) {
      row.max_core_weight = std::max(row.max_core_weight, deep.weight(x));
      on_core.add(deep.weight(x));
    }
    row.escaped = 1.0 - on_core.value();
    prof.rows.push_back(row);
  }
  double first_escaped = prof.rows.front().escaped;
  prof.classification = first_escaped <= 0.2   ? "strongly-continuous"
                        : first_escaped >= 0.8 ? "compact-vanishing"
                                               : "mixed";
  return prof;
}

}  // namespace roekms

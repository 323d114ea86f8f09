#include "roekms/tree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace roekms::tree {

bool is_prefix(const Word& y, const Word& x) {
  if (y.size() > x.size()) return false;
  return std::equal(y.begin(), y.end(), x.begin());
}

std::optional<Word> cylinder_product(const Word& y, const Word& z) {
  if (is_prefix(y, z)) return z;
  if (is_prefix(z, y)) return y;
  return std::nullopt;
}

PointSet cylinder_points(const FiniteSpace& space, const Word& y) {
  if (space.kind() != SpaceKind::tree)
    throw validation_error("cylinder_points: tree spaces only");
  PointSet out;
  auto len = static_cast<int>(y.size());
  if (len > space.tree_depth()) return out;
  int n = space.tree_branching();
  long long idx = 0;
  for (int letter : y) idx = idx * n + (letter - 1);
  long long width = 1;
  for (int L = len; L <= space.tree_depth(); ++L) {
    long long start = space.level_offset(L) + idx * width;
    for (long long i = 0; i < width; ++i) out.push_back(start + i);
    width *= n;
  }
  return out;
}

namespace {
double log_n(int n) { return std::log(static_cast<double>(n)); }

bool at_critical(int n, double beta) { return beta == log_n(n); }
}  // namespace

double explicit_level_weight(int n, double beta, int k) {
  if (at_critical(n, beta)) return 0.0;
  return std::exp(-beta * k) - n * std::exp(-beta * (k + 1));
}

DiagonalState explicit_tree_state(int n, double beta, int depth) {
  double q = n * std::exp(-beta);
  if (!at_critical(n, beta) && q > 1.0) {
    std::ostringstream os;
    os << "explicit tree state: beta = " << beta << " < log(" << n
       << "); weight at the root would be " << (1.0 - q) << " < 0";
    throw validation_error(os.str());
  }
  auto space = make_tree(n, depth);
  DiagonalState phi;
  phi.weights.resize(static_cast<std::size_t>(space->size()));
  for (int k = 0; k <= depth; ++k) {
    double w = explicit_level_weight(n, beta, k);
    long long lo = space->level_offset(k);
    long long hi = space->level_offset(k + 1);
    std::fill(phi.weights.begin() + lo, phi.weights.begin() + hi, w);
  }
  phi.mass_at_infinity =
      at_critical(n, beta) ? 1.0 : std::exp((depth + 1) * (log_n(n) - beta));
  phi.space = std::move(space);
  return phi;
}

double cylinder_mass(const DiagonalState& phi, const Word& y) {
  const FiniteSpace& X = *phi.space;
  if (X.kind() != SpaceKind::tree) throw validation_error("cylinder_mass: tree spaces only");
  auto len = static_cast<int>(y.size());
  if (len > X.tree_depth()) return 0.0;
  int n = X.tree_branching();
  long long idx = 0;
  for (int letter : y) {
    if (letter < 1 || letter > n) throw validation_error("cylinder_mass: letter out of range");
    idx = idx * n + (letter - 1);
  }
  KahanSum s;
  long long width = 1;
  for (int L = len; L <= X.tree_depth(); ++L) {
    long long start = X.level_offset(L) + idx * width;
    for (long long i = 0; i < width; ++i) s.add(phi.weight(start + i));
    width *= n;
  }
  return s.value();
}

double explicit_cylinder_escaped_mass(int n, double beta, int depth, int prefix_len) {
  if (at_critical(n, beta)) return std::exp(-beta * prefix_len);
  return std::exp(-beta * prefix_len) *
         std::exp((depth - prefix_len + 1) * (log_n(n) - beta));
}

KmsReport shift_kms_defect(const DiagonalState& phi, int n, double beta,
                           const std::vector<Word>& ys, const std::vector<PointSet>& As) {
  const FiniteSpace& X = *phi.space;
  if (X.kind() != SpaceKind::tree || X.tree_branching() != n)
    throw validation_error("shift_kms_defect: state not on the expected tree");
  KmsReport rep;
  rep.beta = beta;
  double worst = 0.0;
  for (const auto& y : ys) {
    double scale = std::exp(-beta * static_cast<double>(y.size()));
    for (const auto& A : As) {
      KahanSum shifted, base;
      bool clipped = false;
      for (long long xid : A) {
        Word w = X.word(xid);
        if (static_cast<int>(w.size() + y.size()) > X.tree_depth()) {
          clipped = true;
          continue;  // image would leave the truncation
        }
        Word wy = w;
        wy.insert(wy.end(), y.begin(), y.end());
        shifted.add(phi.weight(X.word_id(wy)));
        base.add(phi.weight(xid));
      }
      double d = std::abs(shifted.value() - scale * base.value());
      ++rep.samples;
      if (d >= worst) {
        worst = d;
        std::ostringstream os;
        os << "y of length " << y.size() << ", |A| = " << A.size();
        if (clipped) os << " (restricted to the truncation)";
        rep.worst_witness = os.str();
      }
    }
  }
  rep.defect_criterion = worst;
  return rep;
}

PartialTranslation branch_isometry(const Word& x_prefix, const Word& y_prefix,
                                   const SpacePtr& space) {
  if (x_prefix.size() != y_prefix.size())
    throw validation_error("branch_isometry: prefixes must have equal length");
  if (static_cast<int>(x_prefix.size()) > space->tree_depth())
    throw validation_error("branch_isometry: prefix longer than truncation depth");
  auto k = x_prefix.size();
  std::vector<std::pair<long long, long long>> pairs;
  pairs.reserve(static_cast<std::size_t>(space->size()));
  for (long long id = 0; id < space->size(); ++id) {
    Word w = space->word(id);
    Word out(w.size());
    bool on_path = true;
    for (std::size_t i = 0; i < w.size(); ++i) {
      int c = w[i];
      if (on_path && i < k) {
        if (c == x_prefix[i])
          out[i] = y_prefix[i];
        else if (c == y_prefix[i])
          out[i] = x_prefix[i];
        else
          out[i] = c;
        // The path survives a transposed letter on either side; the
        // condition is invariant under the transposition, which keeps the
        // whole map involutive.
        on_path = (c == x_prefix[i] || c == y_prefix[i]);
      } else {
        out[i] = c;
      }
    }
    pairs.emplace_back(id, space->word_id(out));
  }
  return PartialTranslation::from_pairs(space, std::move(pairs));
}

DiagonalState pushforward_state(const DiagonalState& phi, const PartialTranslation& f) {
  if (!f.is_total_bijection())
    throw validation_error("pushforward_state: need a total bijection");
  DiagonalState out;
  out.space = phi.space;
  out.mass_at_infinity = phi.mass_at_infinity;
  out.weights.resize(phi.weights.size());
  for (auto& [x, y] : f.pairs())
    out.weights[static_cast<std::size_t>(x)] = phi.weight(y);
  return out;
}

PhaseReport phase_report(int n, const std::vector<double>& beta_grid,
                         const std::vector<long long>& depths, int threads) {
  if (depths.empty()) throw validation_error("phase_report: empty depth schedule");
  PhaseReport rep;
  rep.n = n;
  rep.depths = depths;
  rep.rows.resize(beta_grid.size());
  long long deepest = *std::max_element(depths.begin(), depths.end());

  // The explicit state is materialized at the deepest depth whose truncation
  // still fits comfortably in memory.
  constexpr long long kStateCap = 1ll << 21;
  int state_depth = 1;
  for (long long d : depths) {
    long long sz = 1, pw = 1;
    for (long long L = 1; L <= d && sz <= kStateCap; ++L) {
      pw *= n;
      sz += pw;
    }
    if (sz <= kStateCap) state_depth = std::max<int>(state_depth, static_cast<int>(d));
  }

  auto rule = tree_level_rule(n);
  parallel_for(static_cast<int>(beta_grid.size()), threads, [&](int i) {
    double beta = beta_grid[static_cast<std::size_t>(i)];
    PhaseRow row;
    row.beta = beta;
    double log_z = log_partial_sum(rule, beta, deepest);
    row.z_tail = log_z > kExpLimit ? std::numeric_limits<double>::infinity() : std::exp(log_z);
    double q = n * std::exp(-beta);
    if (beta == std::log(static_cast<double>(n))) {
      row.verdict = "critical";
      row.escaped_mass = 1.0;
      row.kms_defect = 0.0;
      row.witness = "all weights vanish; mass escapes at every depth";
    } else if (q > 1.0) {
      row.verdict = "no-state";
      row.escaped_mass = std::numeric_limits<double>::quiet_NaN();
      row.kms_defect = std::numeric_limits<double>::quiet_NaN();
      std::ostringstream os;
      os << "negativity: w(root) = 1 - n e^{-beta} = " << (1.0 - q) << " < 0";
      row.witness = os.str();
    } else {
      row.verdict = "unique-gibbs";
      DiagonalState phi = explicit_tree_state(n, beta, state_depth);
      row.escaped_mass = phi.mass_at_infinity;
      std::vector<Word> ys = {{1}};
      if (state_depth >= 2) ys.push_back({1, std::min(2, n)});
      std::vector<PointSet> As = {cylinder_points(*phi.space, {}),
                                  cylinder_points(*phi.space, {1})};
      row.kms_defect = shift_kms_defect(phi, n, beta, ys, As).max_defect();
      row.witness = "";
    }
    rep.rows[static_cast<std::size_t>(i)] = std::move(row);
  });

  for (const auto& row : rep.rows) {
    if (row.verdict == "no-state")
      rep.boundary_lower = row.beta;
    else if (!rep.boundary_upper)
      rep.boundary_upper = row.beta;
  }
  return rep;
}

}  // namespace roekms::tree

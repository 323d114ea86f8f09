#include "roekms/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace roekms {

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::interval: return "interval";
    case SpaceKind::squares: return "squares";
    case SpaceKind::tree: return "tree";
    case SpaceKind::custom: return "custom";
  }
  return "?";
}

FiniteSpace FiniteSpace::interval(long long n) {
  if (n < 1) throw validation_error("interval: need at least one point");
  FiniteSpace s;
  s.kind_ = SpaceKind::interval;
  s.size_ = n;
  return s;
}

FiniteSpace FiniteSpace::squares(long long n) {
  if (n < 1) throw validation_error("squares: need at least one point");
  FiniteSpace s;
  s.kind_ = SpaceKind::squares;
  s.size_ = n;
  return s;
}

FiniteSpace FiniteSpace::tree(int branching, int depth) {
  if (branching < 1) throw validation_error("tree: branching must be positive");
  if (depth < 0) throw validation_error("tree: depth must be nonnegative");
  FiniteSpace s;
  s.kind_ = SpaceKind::tree;
  s.branching_ = branching;
  s.depth_ = depth;
  s.level_offsets_.assign(static_cast<std::size_t>(depth) + 2, 0);
  long long level = 1;
  for (int k = 0; k <= depth; ++k) {
    s.level_offsets_[static_cast<std::size_t>(k) + 1] =
        s.level_offsets_[static_cast<std::size_t>(k)] + level;
    if (level > (1ll << 40) / branching)
      throw validation_error("tree: truncation too large to index");
    level *= branching;
  }
  s.size_ = s.level_offsets_.back();
  return s;
}

FiniteSpace FiniteSpace::from_distance_matrix(const std::vector<std::vector<double>>& d) {
  auto n = static_cast<long long>(d.size());
  if (n == 0) throw validation_error("distance matrix: empty");
  for (const auto& row : d)
    if (static_cast<long long>(row.size()) != n)
      throw validation_error("distance matrix: not square");
  auto witness = [](const char* what, long long i, long long j, long long k = -1) {
    std::ostringstream os;
    os << "distance matrix: " << what << " at (" << i << "," << j;
    if (k >= 0) os << "," << k;
    os << ")";
    return validation_error(os.str());
  };
  for (long long i = 0; i < n; ++i) {
    if (d[i][i] != 0.0) throw witness("nonzero diagonal", i, i);
    for (long long j = 0; j < i; ++j) {
      if (d[i][j] != d[j][i]) throw witness("asymmetry", i, j);
      if (d[i][j] <= 0.0) throw witness("nonpositive off-diagonal", i, j);
    }
  }
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j < n; ++j)
      for (long long k = 0; k < n; ++k)
        if (d[i][j] > d[i][k] + d[k][j]) throw witness("triangle violation", i, j, k);

  FiniteSpace s;
  s.kind_ = SpaceKind::custom;
  s.size_ = n;
  s.dense_.resize(static_cast<std::size_t>(n * (n + 1) / 2));
  for (long long i = 0; i < n; ++i)
    for (long long j = 0; j <= i; ++j)
      s.dense_[static_cast<std::size_t>(i * (i + 1) / 2 + j)] = d[i][j];
  return s;
}

double FiniteSpace::dense_at(long long x, long long y) const {
  if (x < y) std::swap(x, y);
  return dense_[static_cast<std::size_t>(x * (x + 1) / 2 + y)];
}

int FiniteSpace::word_length(long long id) const {
  // level_offsets_ is short (depth+2); linear scan is fine.
  int k = 0;
  while (level_offsets_[static_cast<std::size_t>(k) + 1] <= id) ++k;
  return k;
}

long long FiniteSpace::level_offset(int k) const {
  return level_offsets_[static_cast<std::size_t>(k)];
}

std::vector<int> FiniteSpace::word(long long id) const {
  int len = word_length(id);
  long long idx = id - level_offsets_[static_cast<std::size_t>(len)];
  std::vector<int> w(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    w[static_cast<std::size_t>(i)] = static_cast<int>(idx % branching_) + 1;
    idx /= branching_;
  }
  return w;
}

long long FiniteSpace::word_id(const std::vector<int>& w) const {
  auto len = static_cast<int>(w.size());
  if (len > depth_) throw validation_error("word_id: word longer than truncation depth");
  long long idx = 0;
  for (int letter : w) {
    if (letter < 1 || letter > branching_) throw validation_error("word_id: letter out of range");
    idx = idx * branching_ + (letter - 1);
  }
  return level_offsets_[static_cast<std::size_t>(len)] + idx;
}

double FiniteSpace::dist(long long x, long long y) const {
  switch (kind_) {
    case SpaceKind::interval:
      return static_cast<double>(x < y ? y - x : x - y);
    case SpaceKind::squares: {
      long long a = (x + 1) * (x + 1), b = (y + 1) * (y + 1);
      return static_cast<double>(a < b ? b - a : a - b);
    }
    case SpaceKind::tree: {
      if (x == y) return 0.0;
      std::vector<int> wx = word(x), wy = word(y);
      std::size_t lcp = 0;
      while (lcp < wx.size() && lcp < wy.size() && wx[lcp] == wy[lcp]) ++lcp;
      return static_cast<double>(wx.size() + wy.size() - 2 * lcp);
    }
    case SpaceKind::custom:
      return dense_at(x, y);
  }
  return 0.0;
}

std::string FiniteSpace::label(long long id) const {
  switch (kind_) {
    case SpaceKind::interval:
    case SpaceKind::squares:
      return std::to_string(numeric_label(id));
    case SpaceKind::tree: {
      auto w = word(id);
      if (w.empty()) return "e";
      std::string out;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(w[i]);
      }
      return out;
    }
    case SpaceKind::custom:
      return "p" + std::to_string(id);
  }
  return {};
}

long long FiniteSpace::numeric_label(long long id) const {
  switch (kind_) {
    case SpaceKind::interval: return id;
    case SpaceKind::squares: return (id + 1) * (id + 1);
    default: throw validation_error("numeric_label: only interval and squares carry numeric labels");
  }
}

std::vector<long long> FiniteSpace::ball(long long center, double r) const {
  std::vector<long long> out;
  for (long long y = 0; y < size_; ++y)
    if (dist(center, y) <= r) out.push_back(y);
  return out;
}

long long FiniteSpace::max_ball_size(double r) const {
  long long best = 0;
  for (long long x = 0; x < size_; ++x) {
    long long count = 0;
    for (long long y = 0; y < size_; ++y)
      if (dist(x, y) <= r) ++count;
    best = std::max(best, count);
  }
  return best;
}

bool FiniteSpace::same_as(const FiniteSpace& other) const {
  return kind_ == other.kind_ && size_ == other.size_ && branching_ == other.branching_ &&
         depth_ == other.depth_;
}

std::vector<std::pair<double, long long>> growth_profile(const FiniteSpace& space,
                                                         const std::vector<double>& radii) {
  std::vector<std::pair<double, long long>> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (r < 0.0) throw validation_error("growth_profile: negative radius");
    out.emplace_back(r, space.max_ball_size(r));
  }
  return out;
}

FiniteSpace TruncationSequence::at(int depth) const {
  switch (kind) {
    case SpaceKind::interval: return FiniteSpace::interval(depth);
    case SpaceKind::squares: return FiniteSpace::squares(depth);
    case SpaceKind::tree: return FiniteSpace::tree(branching, depth);
    default: throw validation_error("TruncationSequence: only built-in families");
  }
}

SpacePtr TruncationSequence::at_shared(int depth) const {
  return std::make_shared<const FiniteSpace>(at(depth));
}

long long TruncationSequence::size_at(int depth) const { return at(depth).size(); }

}  // namespace roekms

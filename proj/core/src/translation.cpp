#include "roekms/translation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace roekms {

PointSet normalize_set(PointSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

PointSet set_union(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

PointSet set_intersection(const PointSet& a, const PointSet& b) {
  PointSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_equal(const PointSet& a, const PointSet& b) { return a == b; }

PartialTranslation PartialTranslation::empty(SpacePtr space) {
  PartialTranslation f;
  f.space_ = std::move(space);
  return f;
}

PartialTranslation PartialTranslation::identity(SpacePtr space, const PointSet& domain) {
  std::vector<std::pair<long long, long long>> pairs;
  pairs.reserve(domain.size());
  for (long long x : domain) pairs.emplace_back(x, x);
  return from_pairs(std::move(space), std::move(pairs));
}

PartialTranslation PartialTranslation::identity_all(SpacePtr space) {
  PointSet all(static_cast<std::size_t>(space->size()));
  for (long long i = 0; i < space->size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return identity(std::move(space), all);
}

PartialTranslation PartialTranslation::from_pairs(
    SpacePtr space, std::vector<std::pair<long long, long long>> pairs) {
  std::sort(pairs.begin(), pairs.end());
  for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
    if (pairs[i].first == pairs[i + 1].first)
      throw validation_error("partial translation: duplicate domain point");
  std::unordered_set<long long> seen;
  seen.reserve(pairs.size() * 2);
  long long n = space->size();
  for (auto& [x, y] : pairs) {
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw validation_error("partial translation: point id out of range");
    if (!seen.insert(y).second) throw validation_error("partial translation: not injective");
  }
  PartialTranslation f;
  f.space_ = std::move(space);
  f.pairs_ = std::move(pairs);
  return f;
}

PointSet PartialTranslation::domain() const {
  PointSet d;
  d.reserve(pairs_.size());
  for (auto& [x, y] : pairs_) d.push_back(x);
  return d;  // already sorted
}

PointSet PartialTranslation::image() const {
  PointSet im;
  im.reserve(pairs_.size());
  for (auto& [x, y] : pairs_) im.push_back(y);
  return normalize_set(std::move(im));
}

std::optional<long long> PartialTranslation::apply(long long x) const {
  auto it = std::lower_bound(pairs_.begin(), pairs_.end(), std::make_pair(x, -1ll));
  if (it != pairs_.end() && it->first == x) return it->second;
  return std::nullopt;
}

double PartialTranslation::displacement() const {
  double r = 0.0;
  for (auto& [x, y] : pairs_) r = std::max(r, space_->dist(x, y));
  return r;
}

PartialTranslation PartialTranslation::inverse() const {
  std::vector<std::pair<long long, long long>> inv;
  inv.reserve(pairs_.size());
  for (auto& [x, y] : pairs_) inv.emplace_back(y, x);
  return from_pairs(space_, std::move(inv));
}

PartialTranslation PartialTranslation::restrict_domain(const PointSet& a) const {
  std::vector<std::pair<long long, long long>> out;
  for (auto& [x, y] : pairs_)
    if (std::binary_search(a.begin(), a.end(), x)) out.emplace_back(x, y);
  return from_pairs(space_, std::move(out));
}

bool PartialTranslation::is_total_bijection() const {
  return static_cast<long long>(pairs_.size()) == space_->size();
}

PartialTranslation compose(const PartialTranslation& g, const PartialTranslation& f) {
  if (!f.space()->same_as(*g.space()))
    throw validation_error("compose: partial translations on different spaces");
  std::vector<std::pair<long long, long long>> out;
  for (auto& [x, y] : f.pairs())
    if (auto z = g.apply(y)) out.emplace_back(x, *z);
  return PartialTranslation::from_pairs(f.space(), std::move(out));
}

PointSet image_under(const PartialTranslation& f, const PointSet& a) {
  PointSet im;
  for (long long x : a)
    if (auto y = f.apply(x)) im.push_back(*y);
  return normalize_set(std::move(im));
}

std::pair<PartialTranslation, PartialTranslation> split_fixed(const PartialTranslation& f) {
  std::vector<std::pair<long long, long long>> fixed, free;
  for (auto& [x, y] : f.pairs()) (x == y ? fixed : free).emplace_back(x, y);
  return {PartialTranslation::from_pairs(f.space(), std::move(fixed)),
          PartialTranslation::from_pairs(f.space(), std::move(free))};
}

SeparatedPartition separated_partition(const PointSet& a, double s, const FiniteSpace& space) {
  if (s < 0.0) throw validation_error("separated_partition: negative separation");
  SeparatedPartition part;
  part.separation = s;
  for (long long x : a) {
    std::size_t cls = 0;
    for (; cls < part.classes.size(); ++cls) {
      bool ok = true;
      for (long long y : part.classes[cls])
        if (space.dist(x, y) <= s) {
          ok = false;
          break;
        }
      if (ok) break;
    }
    if (cls == part.classes.size()) part.classes.emplace_back();
    part.classes[cls].push_back(x);  // a is sorted, so classes stay sorted
  }
  return part;
}

long long proximity_max_degree(const PointSet& a, double s, const FiniteSpace& space) {
  long long best = 0;
  for (long long x : a) {
    long long deg = 0;
    for (long long y : a)
      if (x != y && space.dist(x, y) <= s) ++deg;
    best = std::max(best, deg);
  }
  return best;
}

namespace {
template <typename T>
std::vector<T> pullback_impl(const std::vector<T>& a, const PartialTranslation& f) {
  std::vector<T> out(static_cast<std::size_t>(f.space()->size()), T{});
  for (auto& [x, y] : f.pairs()) out[static_cast<std::size_t>(x)] = a[static_cast<std::size_t>(y)];
  return out;
}
}  // namespace

std::vector<double> pullback_diag(const std::vector<double>& a, const PartialTranslation& f) {
  return pullback_impl(a, f);
}

std::vector<std::complex<double>> pullback_diag(const std::vector<std::complex<double>>& a,
                                                const PartialTranslation& f) {
  return pullback_impl(a, f);
}

PartialTranslation random_partial_translation(SpacePtr space, double max_disp, Rng& rng) {
  std::vector<std::pair<long long, long long>> pairs;
  std::unordered_set<long long> used;
  long long n = space->size();
  for (long long x = 0; x < n; ++x) {
    if (rng.next_double() < 0.5) continue;  // leave x out of the domain
    auto near = space->ball(x, max_disp);
    // pick a random unused target within the displacement bound
    std::vector<long long> candidates;
    for (long long y : near)
      if (!used.count(y)) candidates.push_back(y);
    if (candidates.empty()) continue;
    long long y = candidates[static_cast<std::size_t>(rng.next_int(static_cast<int>(candidates.size())))];
    used.insert(y);
    pairs.emplace_back(x, y);
  }
  return PartialTranslation::from_pairs(std::move(space), std::move(pairs));
}

PointSet random_point_set(const FiniteSpace& space, double p, Rng& rng) {
  PointSet out;
  for (long long x = 0; x < space.size(); ++x)
    if (rng.next_double() < p) out.push_back(x);
  return out;
}

}  // namespace roekms

#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "roekms/space.hpp"

namespace roekms {

/// Sorted, duplicate-free set of point ids.
using PointSet = std::vector<long long>;

PointSet set_union(const PointSet& a, const PointSet& b);
PointSet set_intersection(const PointSet& a, const PointSet& b);
bool set_equal(const PointSet& a, const PointSet& b);
PointSet normalize_set(PointSet s);

/// A partial translation: an injective partial map of a space with finite
/// displacement sup d(x, f(x)). Stored as (domain, image) pairs sorted by
/// domain id. The empty map is a legal value.
class PartialTranslation {
public:
  static PartialTranslation empty(SpacePtr space);
  static PartialTranslation identity(SpacePtr space, const PointSet& domain);
  static PartialTranslation identity_all(SpacePtr space);
  // pairs (x, f(x)); validated injective.
  static PartialTranslation from_pairs(SpacePtr space,
                                       std::vector<std::pair<long long, long long>> pairs);

  const SpacePtr& space() const { return space_; }
  const std::vector<std::pair<long long, long long>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  PointSet domain() const;
  PointSet image() const;
  std::optional<long long> apply(long long x) const;
  double displacement() const;

  PartialTranslation inverse() const;
  PartialTranslation restrict_domain(const PointSet& a) const;
  bool is_total_bijection() const;

private:
  SpacePtr space_;
  std::vector<std::pair<long long, long long>> pairs_;
};

/// g after f, on f^{-1}[Dom(g)].
PartialTranslation compose(const PartialTranslation& g, const PartialTranslation& f);

/// f[A] = f(A ∩ Dom(f)).
PointSet image_under(const PartialTranslation& f, const PointSet& a);

/// Splits f into its fixed-point part and its fixed-point-free part.
std::pair<PartialTranslation, PartialTranslation> split_fixed(const PartialTranslation& f);

/// Partition of a point set into classes whose distinct members are strictly
/// more than `separation` apart.
struct SeparatedPartition {
  std::vector<PointSet> classes;
  double separation = 0.0;
};

/// Greedy coloring of the proximity graph {(x,y) : 0 < d(x,y) <= s}, visiting
/// points in ascending id order and picking the lowest admissible class. The
/// class count is bounded by 1 + max degree of that graph.
SeparatedPartition separated_partition(const PointSet& a, double s, const FiniteSpace& space);

/// Max degree of the proximity graph above, over vertices of `a`.
long long proximity_max_degree(const PointSet& a, double s, const FiniteSpace& space);

/// a∘f: x -> a(f(x)) on Dom(f), zero elsewhere.
std::vector<double> pullback_diag(const std::vector<double>& a, const PartialTranslation& f);
std::vector<std::complex<double>> pullback_diag(const std::vector<std::complex<double>>& a,
                                                const PartialTranslation& f);

/// Seeded generator used by audits and tests: a random partial translation
/// with displacement at most max_disp.
PartialTranslation random_partial_translation(SpacePtr space, double max_disp, Rng& rng);

/// Random subset where each point is kept with probability p.
PointSet random_point_set(const FiniteSpace& space, double p, Rng& rng);

}  // namespace roekms

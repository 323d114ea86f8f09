#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roekms/common.hpp"

namespace roekms {

enum class SpaceKind { interval, squares, tree, custom };

std::string to_string(SpaceKind k);

/// A finite truncation of a uniformly locally finite metric space.
///
/// The three built-in families (integer interval, square numbers with the
/// ambient metric, n-branching tree with the graph metric) store no per-pair
/// data: distances and labels are computed from point ids on demand, so even
/// trees with millions of points stay cheap to hold. Custom spaces carry a
/// dense lower-triangular distance table and are validated on construction.
///
/// Point ids are contiguous 0..N-1. For every family the id order is chosen
/// so that truncations are nested: the depth-D space is an initial segment of
/// the depth-D' space for D < D' (tree ids are breadth-first by word).
class FiniteSpace {
public:
  static FiniteSpace interval(long long n);
  static FiniteSpace squares(long long n);
  static FiniteSpace tree(int branching, int depth);
  // Validates symmetry, zero diagonal, positivity off the diagonal and the
  // triangle inequality; failures carry a witness triple in the message.
  static FiniteSpace from_distance_matrix(const std::vector<std::vector<double>>& d);

  long long size() const { return size_; }
  SpaceKind kind() const { return kind_; }
  double dist(long long x, long long y) const;

  std::string label(long long id) const;
  // interval: the coordinate; squares: the square number. Not for trees.
  long long numeric_label(long long id) const;

  // Tree accessors. Words use letters 1..n; the empty word is id 0.
  int tree_branching() const { return branching_; }
  int tree_depth() const { return depth_; }
  std::vector<int> word(long long id) const;
  long long word_id(const std::vector<int>& w) const;
  int word_length(long long id) const;
  // First id of tree level k (number of words shorter than k).
  long long level_offset(int k) const;

  // Closed ball {y : dist(x,y) <= r}.
  std::vector<long long> ball(long long center, double r) const;
  long long max_ball_size(double r) const;

  bool same_as(const FiniteSpace& other) const;

private:
  FiniteSpace() = default;

  SpaceKind kind_ = SpaceKind::custom;
  long long size_ = 0;
  int branching_ = 0;
  int depth_ = 0;
  std::vector<long long> level_offsets_;  // tree: size depth_+2
  std::vector<double> dense_;             // custom: row-major lower triangle
  double dense_at(long long x, long long y) const;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

inline SpacePtr make_interval(long long n) {
  return std::make_shared<const FiniteSpace>(FiniteSpace::interval(n));
}
inline SpacePtr make_squares(long long n) {
  return std::make_shared<const FiniteSpace>(FiniteSpace::squares(n));
}
inline SpacePtr make_tree(int branching, int depth) {
  return std::make_shared<const FiniteSpace>(FiniteSpace::tree(branching, depth));
}
inline SpacePtr make_custom(const std::vector<std::vector<double>>& d) {
  return std::make_shared<const FiniteSpace>(FiniteSpace::from_distance_matrix(d));
}

/// (r, max over centers of |B(x,r)|) for each requested radius.
std::vector<std::pair<double, long long>> growth_profile(const FiniteSpace& space,
                                                         const std::vector<double>& radii);

/// A rule producing nested truncations of one of the built-in families.
/// Embeddings are the identity on ids, which is an isometry by construction.
struct TruncationSequence {
  SpaceKind kind = SpaceKind::tree;
  int branching = 2;  // tree only

  FiniteSpace at(int depth) const;
  SpacePtr at_shared(int depth) const;
  long long size_at(int depth) const;
};

}  // namespace roekms

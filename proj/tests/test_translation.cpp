#include <doctest.h>

#include <set>

#include "roekms/translation.hpp"

using namespace roekms;

namespace {

PartialTranslation shift(const SpacePtr& s, long long lo, long long hi, long long by) {
  std::vector<std::pair<long long, long long>> p;
  for (long long x = lo; x <= hi; ++x) p.emplace_back(x, x + by);
  return PartialTranslation::from_pairs(s, std::move(p));
}

}  // namespace

TEST_CASE("construction and validation") {
  auto s = make_interval(10);
  auto f = shift(s, 0, 8, 1);
  CHECK(f.size() == 9);
  CHECK(f.displacement() == 1.0);
  CHECK(f.apply(3) == 4);
  CHECK(!f.apply(9).has_value());
  CHECK(!f.is_total_bijection());
  CHECK(PartialTranslation::identity_all(s).is_total_bijection());

  // Non-injective pairs are rejected.
  CHECK_THROWS_AS(PartialTranslation::from_pairs(s, {{0, 5}, {1, 5}}), validation_error);
  // Out-of-range points are rejected.
  CHECK_THROWS_AS(PartialTranslation::from_pairs(s, {{0, 10}}), validation_error);
  // Duplicate domain points are rejected.
  CHECK_THROWS_AS(PartialTranslation::from_pairs(s, {{0, 5}, {0, 6}}), validation_error);
}

TEST_CASE("composition") {
  auto s = make_interval(10);
  auto f = shift(s, 0, 8, 1);

  auto id_dom = PartialTranslation::identity(s, f.domain());
  CHECK(compose(f, id_dom).pairs() == f.pairs());

  auto g = shift(s, 0, 8, 1);
  auto gf = compose(g, f);
  CHECK(gf.pairs() == shift(s, 0, 7, 2).pairs());

  auto round = compose(f, f.inverse());
  CHECK(round.pairs() == PartialTranslation::identity(s, f.image()).pairs());
}

TEST_CASE("inverse") {
  auto s = make_interval(10);
  auto id = PartialTranslation::identity_all(s);
  CHECK(id.inverse().pairs() == id.pairs());

  auto f = shift(s, 0, 8, 1);
  CHECK(f.inverse().pairs() == shift(s, 1, 9, -1).pairs());

  auto t = make_tree(2, 4);
  Rng rng(42);
  for (int i = 0; i < 25; ++i) {
    auto r = random_partial_translation(t, 3.0, rng);
    CHECK(r.inverse().inverse().pairs() == r.pairs());
  }
}

TEST_CASE("image_under") {
  auto s = make_interval(10);
  auto f = shift(s, 0, 8, 1);
  CHECK(image_under(f, {}).empty());

  auto id = PartialTranslation::identity(s, {2, 3, 4});
  CHECK(image_under(id, {0, 3, 4, 9}) == PointSet{3, 4});

  CHECK(image_under(f, {0, 5, 9}) == PointSet{1, 6});
}

TEST_CASE("partial bijection set identity") {
  // f[A] ∩ g[B] = g[(g⁻¹∘f)[A] ∩ B] on seeded instances.
  for (auto space : {make_tree(2, 4), make_interval(12)}) {
    Rng rng(7);
    for (int i = 0; i < 250; ++i) {
      auto f = random_partial_translation(space, 3.0, rng);
      auto g = random_partial_translation(space, 3.0, rng);
      auto A = random_point_set(*space, 0.5, rng);
      auto B = random_point_set(*space, 0.5, rng);
      PointSet lhs = set_intersection(image_under(f, A), image_under(g, B));
      PointSet rhs =
          image_under(g, set_intersection(image_under(compose(g.inverse(), f), A), B));
      CHECK(set_equal(lhs, rhs));
    }
  }
}

TEST_CASE("split_fixed") {
  auto s = make_interval(10);
  auto id = PartialTranslation::identity_all(s);
  auto [fix_id, free_id] = split_fixed(id);
  CHECK(fix_id.pairs() == id.pairs());
  CHECK(free_id.size() == 0);

  auto f = shift(s, 0, 8, 1);
  auto [fix_f, free_f] = split_fixed(f);
  CHECK(fix_f.size() == 0);
  CHECK(free_f.pairs() == f.pairs());

  auto s5 = make_interval(5);
  auto mixed = PartialTranslation::from_pairs(s5, {{0, 0}, {1, 1}, {2, 3}, {3, 4}});
  auto [fx, fr] = split_fixed(mixed);
  CHECK(fx.domain() == PointSet{0, 1});
  CHECK(fr.domain() == PointSet{2, 3});
  for (auto& [x, y] : fr.pairs()) CHECK(x != y);
  // Recombination reproduces the map pointwise.
  for (auto& [x, y] : mixed.pairs()) {
    auto via = fx.apply(x) ? fx.apply(x) : fr.apply(x);
    CHECK(via == y);
  }
}

TEST_CASE("separated_partition") {
  auto s = make_interval(10);
  PointSet all{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};

  auto zero = separated_partition(all, 0.0, *s);
  CHECK(zero.classes.size() == 1);

  auto part = separated_partition(all, 2.0, *s);
  REQUIRE(part.classes.size() == 3);
  CHECK(part.classes[0] == PointSet{0, 3, 6, 9});
  CHECK(part.classes[1] == PointSet{1, 4, 7});
  CHECK(part.classes[2] == PointSet{2, 5, 8});

  auto t = make_tree(2, 4);
  PointSet full;
  for (long long x = 0; x < t->size(); ++x) full.push_back(x);
  auto tp = separated_partition(full, 2.0, *t);
  CHECK(static_cast<long long>(tp.classes.size()) <= 1 + proximity_max_degree(full, 2.0, *t));
  // Every class is strictly separated, and the classes cover the input.
  std::set<long long> seen;
  for (const auto& cls : tp.classes) {
    for (std::size_t i = 0; i < cls.size(); ++i) {
      seen.insert(cls[i]);
      for (std::size_t j = i + 1; j < cls.size(); ++j) CHECK(t->dist(cls[i], cls[j]) > 2.0);
    }
  }
  CHECK(seen.size() == full.size());
}

TEST_CASE("pullback_diag") {
  auto s = make_interval(5);
  std::vector<double> a{0, 1, 2, 3, 4};

  auto id = PartialTranslation::identity(s, {1, 3});
  auto p = pullback_diag(a, id);
  CHECK(p == std::vector<double>{0, 1, 0, 3, 0});

  auto f = shift(s, 0, 3, 1);
  std::vector<double> ones(5, 1.0);
  CHECK(pullback_diag(ones, f) == std::vector<double>{1, 1, 1, 1, 0});

  auto comp = pullback_diag(a, f);
  CHECK(comp == std::vector<double>{1, 2, 3, 4, 0});
}

TEST_CASE("displacement subadditivity under composition") {
  auto t = make_tree(2, 4);
  Rng rng(99);
  for (int i = 0; i < 50; ++i) {
    auto f = random_partial_translation(t, 4.0, rng);
    auto g = random_partial_translation(t, 4.0, rng);
    auto gf = compose(g, f);
    if (gf.size() == 0) continue;
    CHECK(gf.displacement() <= f.displacement() + g.displacement());
  }
}

#include <doctest.h>

#include <cmath>
#include <set>

#include "roekms/tree.hpp"

using namespace roekms;
using tree::Word;

TEST_CASE("cylinder products") {
  CHECK(tree::cylinder_product({}, {2, 1}) == Word{2, 1});
  CHECK(tree::cylinder_product({1}, {1, 2}) == Word{1, 2});
  CHECK(tree::cylinder_product({1, 2}, {1}) == Word{1, 2});
  CHECK(!tree::cylinder_product({1}, {2}).has_value());
  CHECK(!tree::cylinder_product({1, 1}, {1, 2}).has_value());
}

TEST_CASE("cylinder points") {
  auto t = FiniteSpace::tree(2, 4);
  for (const Word& y : {Word{}, Word{1}, Word{2, 1}, Word{1, 1, 1, 1}}) {
    PointSet expect;
    for (long long x = 0; x < t.size(); ++x)
      if (tree::is_prefix(y, t.word(x))) expect.push_back(x);
    CHECK(tree::cylinder_points(t, y) == expect);
  }
  CHECK(tree::cylinder_points(t, {1, 1, 1, 1, 1}).empty());
}

TEST_CASE("explicit state weights") {
  // n=2, beta=log 4: the root carries 1 - 2/4 = 1/2.
  auto phi = tree::explicit_tree_state(2, std::log(4.0), 8);
  CHECK(phi.weight(0) == doctest::Approx(0.5).epsilon(1e-14));
  phi.validate();
  CHECK(phi.mass_at_infinity ==
        doctest::Approx(std::pow(0.5, 9.0)).epsilon(1e-12));

  // Pointwise agreement with the closed normalizer Z = 1/(1 - n e^{-beta}).
  for (int n : {2, 3}) {
    for (double beta : {std::log(static_cast<double>(n)) + 0.1,
                        std::log(static_cast<double>(n)) + 1.0}) {
      auto st = tree::explicit_tree_state(n, beta, 12);
      st.validate(1e-9);
      double z = 1.0 / (1.0 - n * std::exp(-beta));
      for (int k = 0; k <= 12; ++k) {
        double expect = std::exp(-beta * k) / z;
        CHECK(std::abs(st.weight(st.space->level_offset(k)) - expect) <= 1e-12);
      }
    }
  }
}

TEST_CASE("critical snap and negativity") {
  for (int n : {2, 3, 5}) {
    auto crit = tree::explicit_tree_state(n, std::log(static_cast<double>(n)), 6);
    for (double w : crit.weights) CHECK(w == 0.0);
    CHECK(crit.mass_at_infinity == 1.0);

    CHECK_THROWS_AS(tree::explicit_tree_state(n, std::log(static_cast<double>(n)) - 0.05, 4),
                    validation_error);
  }
}

TEST_CASE("gibbs state converges to the explicit state in depth") {
  double beta = std::log(2.0) + 0.5;
  auto deep = tree::explicit_tree_state(2, beta, 16);
  for (int D : {8, 12, 16}) {
    auto t = make_tree(2, D);
    auto g = gibbs_state(named_potential(t, "word-length"), beta);
    double err = std::abs(g.weight(0) - deep.weight(0));
    // The finite-depth normalizer differs by the geometric tail.
    CHECK(err <= 2.0 * std::pow(2.0 * std::exp(-beta), D + 1));
  }
}

TEST_CASE("cylinder masses") {
  int D = 9;
  double beta = std::log(2.0) + 0.3;
  auto phi = tree::explicit_tree_state(2, beta, D);
  double q = 2.0 * std::exp(-beta);

  // y = empty word: everything that did not escape.
  CHECK(tree::cylinder_mass(phi, {}) ==
        doctest::Approx(1.0 - phi.mass_at_infinity).epsilon(1e-12));

  for (const Word& y : {Word{1}, Word{2, 1}, Word{1, 2, 2}}) {
    auto len = static_cast<int>(y.size());
    double expect = std::exp(-beta * len) * (1.0 - std::pow(q, D - len + 1));
    CHECK(tree::cylinder_mass(phi, y) == doctest::Approx(expect).epsilon(1e-12));
    // Together with the escaped share this is the full-tree value e^{-beta |y|}.
    double total = tree::cylinder_mass(phi, y) +
                   tree::explicit_cylinder_escaped_mass(2, beta, D, len);
    CHECK(total == doctest::Approx(std::exp(-beta * len)).epsilon(1e-12));
  }

  // Brute enumeration oracle.
  Word y{1, 2};
  double brute = 0.0;
  for (long long x = 0; x < phi.space->size(); ++x)
    if (tree::is_prefix(y, phi.space->word(x))) brute += phi.weight(x);
  CHECK(tree::cylinder_mass(phi, y) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("bernoulli limit of cylinder masses") {
  for (int n : {2, 3}) {
    double logn = std::log(static_cast<double>(n));
    for (int k = 1; k <= 4; ++k) {
      double beta = logn + std::pow(10.0, -k);
      for (int len = 0; len <= 3; ++len) {
        double full = std::exp(-beta * len);  // completed cylinder mass
        double target = std::pow(static_cast<double>(n), -len);
        CHECK(std::abs(full - target) <= 2.0 * (beta - logn) * len + 1e-9);
      }
    }
  }
}

TEST_CASE("shift defects") {
  int D = 8;
  auto phi = tree::explicit_tree_state(2, std::log(2.0) + 0.4, D);
  double beta = std::log(2.0) + 0.4;
  const FiniteSpace& X = *phi.space;

  // Empty shift: both sides are the same sum.
  auto zero = tree::shift_kms_defect(phi, 2, beta, {Word{}},
                                     {tree::cylinder_points(X, {1})});
  CHECK(zero.max_defect() == 0.0);

  // Single-word sets and all cylinders up to |y| <= 3.
  std::vector<PointSet> sets;
  sets.push_back({X.word_id({2, 1})});
  for (const Word& a : {Word{}, Word{1}, Word{2}, Word{1, 2}, Word{2, 2, 1}})
    sets.push_back(tree::cylinder_points(X, a));
  std::vector<Word> ys{{1}, {2}, {1, 2}, {2, 1, 1}};
  auto rep = tree::shift_kms_defect(phi, 2, beta, ys, sets);
  CHECK(rep.max_defect() <= 1e-12);
  CHECK(rep.samples == static_cast<long long>(ys.size() * sets.size()));

  // The uniform state is not shift-invariant in the KMS sense.
  auto uni = uniform_state(phi.space);
  auto bad = tree::shift_kms_defect(uni, 2, 1.0, {Word{1}},
                                    {tree::cylinder_points(X, {})});
  long long movable = X.level_offset(D);  // words short enough to append to
  double expect = std::abs(1.0 - std::exp(-1.0)) * static_cast<double>(movable) /
                  static_cast<double>(X.size());
  CHECK(bad.max_defect() == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("branch isometries") {
  auto t = make_tree(2, 3);
  auto id = tree::branch_isometry({1, 2}, {1, 2}, t);
  CHECK(id.pairs() == PartialTranslation::identity_all(t).pairs());

  // Swap the two depth-1 branches and check the isometry exhaustively.
  for (int n : {2, 3}) {
    for (int depth : {3, 4}) {
      auto space = make_tree(n, depth);
      auto f = tree::branch_isometry({1}, {2}, space);
      REQUIRE(f.is_total_bijection());
      for (long long x = 0; x < space->size(); ++x)
        for (long long y = x + 1; y < space->size(); ++y)
          CHECK(space->dist(*f.apply(x), *f.apply(y)) == space->dist(x, y));
      // Word length (the standard potential) is preserved.
      for (long long x = 0; x < space->size(); ++x)
        CHECK(space->word_length(*f.apply(x)) == space->word_length(x));
      // Swapping twice is the identity.
      CHECK(compose(f, f).pairs() == PartialTranslation::identity_all(space).pairs());
    }
  }

  // The source branch prefix maps onto the target branch prefix level by level.
  auto deep = make_tree(2, 5);
  Word xs{1, 1, 2, 1}, ys2{2, 1, 1, 2};
  auto g = tree::branch_isometry(xs, ys2, deep);
  for (std::size_t j = 1; j <= xs.size(); ++j) {
    Word src(xs.begin(), xs.begin() + static_cast<long>(j));
    Word dst(ys2.begin(), ys2.begin() + static_cast<long>(j));
    CHECK(*g.apply(deep->word_id(src)) == deep->word_id(dst));
  }
  // Total isometry check on a seeded pair sample.
  Rng rng(4);
  for (int i = 0; i < 2000; ++i) {
    long long x = rng.next_int(static_cast<int>(deep->size()));
    long long y = rng.next_int(static_cast<int>(deep->size()));
    CHECK(deep->dist(*g.apply(x), *g.apply(y)) == deep->dist(x, y));
  }
}

TEST_CASE("pushforward states") {
  auto t = make_tree(2, 6);
  double beta = std::log(2.0) + 0.6;
  auto phi = tree::explicit_tree_state(2, beta, 6);

  auto idp = tree::pushforward_state(phi, PartialTranslation::identity_all(t));
  for (long long x = 0; x < t->size(); ++x) CHECK(idp.weight(x) == phi.weight(x));

  // The explicit state only sees word length, so branch swaps fix it.
  auto f = tree::branch_isometry({1, 2}, {2, 1}, phi.space);
  auto moved = tree::pushforward_state(phi, f);
  for (long long x = 0; x < phi.space->size(); ++x) CHECK(moved.weight(x) == phi.weight(x));

  // A branch-concentrated state relocates cylinder by cylinder.
  std::vector<double> w(static_cast<std::size_t>(t->size()), 0.0);
  double c = 0.0;
  for (int k = 0; k <= 6; ++k) c += std::pow(0.5, k);
  for (int k = 0; k <= 6; ++k)
    w[static_cast<std::size_t>(t->word_id(Word(static_cast<std::size_t>(k), 1)))] =
        std::pow(0.5, k) / c;
  auto branch = state_from_weights(t, w);
  auto swap = tree::branch_isometry({1, 1, 1}, {2, 2, 2}, t);
  auto pushed = tree::pushforward_state(branch, swap);
  for (int k = 1; k <= 3; ++k) {
    Word ones(static_cast<std::size_t>(k), 1), twos(static_cast<std::size_t>(k), 2);
    CHECK(tree::cylinder_mass(pushed, twos) ==
          doctest::Approx(tree::cylinder_mass(branch, ones)).epsilon(1e-13));
  }
}

TEST_CASE("phase report") {
  std::vector<double> grid;
  for (int i = 0; i <= 16; ++i) grid.push_back(0.4 + 0.05 * i);
  auto rep = tree::phase_report(2, grid, {10, 100, 1000}, 1);
  REQUIRE(rep.rows.size() == grid.size());
  REQUIRE(rep.boundary_lower);
  REQUIRE(rep.boundary_upper);
  CHECK(*rep.boundary_lower < std::log(2.0));
  CHECK(*rep.boundary_upper > std::log(2.0));
  CHECK(*rep.boundary_upper - *rep.boundary_lower <= 0.051);
  for (const auto& row : rep.rows) {
    if (row.beta < std::log(2.0)) CHECK(row.verdict == "no-state");
    if (row.beta > std::log(2.0)) {
      CHECK(row.verdict == "unique-gibbs");
      CHECK(row.kms_defect <= 1e-12);
      CHECK(row.z_tail > 0.0);
    }
  }

  // The exact critical grid point is labeled as such.
  auto crit = tree::phase_report(3, {std::log(3.0)}, {10}, 1);
  CHECK(crit.rows[0].verdict == "critical");
  CHECK(crit.rows[0].escaped_mass == 1.0);

  // Degenerate single-branch tree: the boundary sits at log 1 = 0.
  auto line = tree::phase_report(1, {-0.5, 0.0, 0.5}, {10, 50}, 1);
  CHECK(line.rows[0].verdict == "no-state");
  CHECK(line.rows[1].verdict == "critical");
  CHECK(line.rows[2].verdict == "unique-gibbs");

  // Thread count changes nothing.
  auto rep4 = tree::phase_report(2, grid, {10, 100, 1000}, 4);
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].verdict == rep4.rows[i].verdict);
    CHECK(rep.rows[i].z_tail == rep4.rows[i].z_tail);
    if (rep.rows[i].verdict != "no-state")
      CHECK(rep.rows[i].escaped_mass == rep4.rows[i].escaped_mass);
  }
}

#include <doctest.h>

#include <cmath>

#include "roekms/flow.hpp"

using namespace roekms;

namespace {

PartialTranslation append_word(const SpacePtr& t, const std::vector<int>& y) {
  std::vector<std::pair<long long, long long>> p;
  for (long long x = 0; x < t->size(); ++x) {
    auto w = t->word(x);
    if (static_cast<int>(w.size() + y.size()) > t->tree_depth()) continue;
    w.insert(w.end(), y.begin(), y.end());
    p.emplace_back(x, t->word_id(w));
  }
  return PartialTranslation::from_pairs(t, std::move(p));
}

double max_entry_diff(const BandOperator& a, const BandOperator& b) {
  double m = 0.0;
  auto d = a - b;
  for (auto& [xy, v] : d.entries()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("coarseness modulus") {
  auto t = make_tree(2, 5);
  auto zero = named_potential(t, "zero");
  for (auto& [r, w] : coarseness_modulus(zero, {0, 1, 3}).pairs) CHECK(w == 0.0);

  auto h = named_potential(t, "word-length");
  auto prof = coarseness_modulus(h, {1}).pairs;
  CHECK(prof[0].second == 1.0);

  auto iv = make_interval(100);
  auto hl = named_potential(iv, "log-label");
  for (double r : {1.0, 4.0, 9.0}) {
    auto p = coarseness_modulus(hl, {r}).pairs;
    CHECK(p[0].second == doctest::Approx(std::log(1.0 + r)).epsilon(1e-12));
  }
}

TEST_CASE("unitary evolution") {
  auto t = make_tree(2, 4);
  auto h = named_potential(t, "word-length");
  Rng rng(12);
  auto a = random_band_operator(t, 2.0, 0.5, rng);

  CHECK(evolve(a, h, 0.0).same_entries(a));

  auto d = BandOperator::from_diagonal(a.expectation());
  CHECK(evolve(d, h, 1.7).same_entries(d));

  // v_f for f append-y picks up the uniform phase e^{it|y|}.
  auto f = append_word(t, {1, 2});
  auto v = BandOperator::isometry_of(f);
  double tt = 0.8;
  auto moved = evolve(v, h, tt);
  Complex phase{std::cos(2 * tt), std::sin(2 * tt)};
  CHECK(max_entry_diff(moved, v.scaled(phase)) <= 1e-15);

  // Propagation is untouched for bounded t.
  CHECK(moved.propagation() == v.propagation());
  CHECK(evolve(a, h, 3.1).propagation() == a.propagation());
}

TEST_CASE("evolution is a *-automorphism") {
  auto t = make_tree(2, 4);
  auto h = named_potential(t, "word-length");
  Rng rng(13);
  for (double tt : {0.3, 1.1}) {
    for (int i = 0; i < 20; ++i) {
      auto a = random_band_operator(t, 2.0, 0.4, rng);
      auto b = random_band_operator(t, 2.0, 0.4, rng);
      CHECK(max_entry_diff(evolve(a * b, h, tt), evolve(a, h, tt) * evolve(b, h, tt)) <= 1e-12);
      CHECK(max_entry_diff(evolve(a.adjoint(), h, tt), evolve(a, h, tt).adjoint()) <= 1e-12);
      CHECK(max_entry_diff(evolve(a + b, h, tt), evolve(a, h, tt) + evolve(b, h, tt)) <= 1e-12);
    }
  }
}

TEST_CASE("strong continuity bound for d v_f terms") {
  auto t = make_tree(2, 5);
  auto h = named_potential(t, "word-length");
  auto f = append_word(t, {2});
  Diagonal d = Diagonal::zero(t);
  Rng rng(21);
  for (long long x = 0; x < t->size(); ++x) d[x] = Complex{rng.next_signed(), rng.next_signed()};
  auto a = diag_times(d, BandOperator::isometry_of(f));
  double dmax = 0.0;
  for (long long x = 0; x < t->size(); ++x) dmax = std::max(dmax, std::abs(d[x]));

  for (double s : {0.0, 0.4, 1.3}) {
    for (double u : {0.1, 0.9, 2.0}) {
      // h(f(x)) - h(x) = 1 for every x in Dom(f).
      double bound = std::abs(Complex{std::cos(u - s), std::sin(u - s)} - Complex{1.0, 0.0}) * dmax;
      CHECK(max_entry_diff(evolve(a, h, u), evolve(a, h, s)) <= bound + 1e-12);
    }
  }
}

TEST_CASE("analytic continuation") {
  auto t = make_tree(2, 4);
  auto h = named_potential(t, "word-length");
  Rng rng(14);
  auto a = random_band_operator(t, 2.0, 0.5, rng);

  CHECK(analytic_evolve(a, h, 0.0).same_entries(a));
  auto d = BandOperator::from_diagonal(a.expectation());
  CHECK(analytic_evolve(d, h, 2.3).same_entries(d));

  // sigma_{i beta}(v_f^*) = e^{beta |y|} v_f^* for f = append-y.
  auto f = append_word(t, {1, 1});
  auto vstar = BandOperator::isometry_of(f).adjoint();
  double beta = 0.6;
  auto evolved = analytic_evolve(vstar, h, beta);
  CHECK(max_entry_diff(evolved, vstar.scaled(std::exp(2 * beta))) <= 1e-12);
  // and sigma_{i beta}(v_f) = e^{-beta |y|} v_f.
  auto v = BandOperator::isometry_of(f);
  CHECK(max_entry_diff(analytic_evolve(v, h, beta), v.scaled(std::exp(-2 * beta))) <= 1e-12);

  // Group law in the analytic parameter.
  for (int i = 0; i < 10; ++i) {
    auto b = random_band_operator(t, 2.0, 0.5, rng);
    CHECK(max_entry_diff(analytic_evolve(analytic_evolve(b, h, 0.7), h, 0.5),
                         analytic_evolve(b, h, 1.2)) <= 1e-12);
  }
}

TEST_CASE("analytic continuation overflow reporting") {
  auto iv = make_interval(300);
  auto h = named_potential(iv, "label");
  auto far = BandOperator::matrix_unit(iv, 0, 299);
  CHECK_THROWS_AS(analytic_evolve(far, h, 3.0), overflow_error);
  try {
    analytic_evolve(far, h, 3.0);
  } catch (const overflow_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("(0,299)") != std::string::npos);
  }
  // Within range it is fine.
  CHECK(analytic_evolve(far, h, 0.001).nnz() == 1);
}

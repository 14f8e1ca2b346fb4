#include "doctest.h"

#include "helpers.hpp"
#include "implic/basket.hpp"
#include "implic/io.hpp"
#include "implic/parse.hpp"

using namespace implic;
using test::letters;

namespace {

BasketSet random_baskets(test::Rng& rng, const UniversePtr& u, int max_n = 50) {
  std::uniform_int_distribution<int> count(1, max_n);
  int n = count(rng);
  std::vector<Mask> baskets;
  for (int i = 0; i < n; ++i)
    baskets.push_back(static_cast<Mask>(rng() & u->full_mask()));
  return BasketSet(u, std::move(baskets));
}

}  // namespace

TEST_CASE("support counts containing baskets") {
  auto u = letters(2);
  BasketSet b(u, {0b01, 0b11});  // {A}, {A,B}
  SupportFunction f = support(b);
  CHECK(f(Mask(0)) == 2);
  CHECK(f(Mask(0b01)) == 2);
  CHECK(f(Mask(0b10)) == 1);
  CHECK(f(Mask(0b11)) == 1);

  BasketSet full(u, {u->full_mask()});
  SupportFunction f1 = support(full);
  for (Mask w = 0; w < 4; ++w) CHECK(f1(w) == 1);
}

TEST_CASE("density of a support function counts exact baskets") {
  auto u = letters(2);
  BasketSet b(u, {0b01, 0b11});
  SupportFunction f = support(b);
  CHECK(density(f, 0b01) == 1);
  CHECK(density(f, 0b11) == 1);
  CHECK(density(f, 0b10) == 0);
  CHECK(density(f, 0) == 0);
}

TEST_CASE("density of the constant function concentrates on the full set") {
  auto u = letters(3);
  // N copies of the full basket: support is constantly N
  BasketSet b(u, std::vector<Mask>(5, u->full_mask()));
  SupportFunction f = support(b);
  CHECK(density(f, u->full_mask()) == 5);
  for (Mask w = 0; w < u->full_mask(); ++w) CHECK(density(f, w) == 0);
}

TEST_CASE("density of a step function is -1 at its agreement set") {
  auto u = letters(3);
  for (Mask m = 0; m < u->full_mask(); ++m) {
    SetFunctionQ h = step_function(VarSet(u, m));
    for (Mask w = 0; w < u->full_mask(); ++w)
      CHECK(density(h, VarSet(u, w)) == (w == m ? -1 : 0));
  }
}

TEST_CASE("basket polymatroids are positive and step-like for singletons") {
  auto u = letters(3);
  BasketSet single(u, {0b011});
  SetFunctionQ h = to_polymatroid(single);
  CHECK(h == step_function(VarSet(u, 0b011)));

  BasketSet full(u, std::vector<Mask>(4, u->full_mask()));
  SetFunctionQ hz = to_polymatroid(full);
  for (Mask w = 0; w < 8; ++w) CHECK(hz(w) == 0);

  test::Rng rng(61);
  for (int t = 0; t < 30; ++t) {
    auto uu = letters(2 + static_cast<int>(rng() % 4));
    BasketSet b = random_baskets(rng, uu, 20);
    CHECK(is_positive_polymatroid(to_polymatroid(b)));
  }
}

TEST_CASE("support density equals basket multiplicity on random basket sets") {
  test::Rng rng(62);
  for (int t = 0; t < 50; ++t) {
    auto u = letters(2 + static_cast<int>(rng() % 4));
    BasketSet b = random_baskets(rng, u, 30);
    SupportFunction f = support(b);
    for (Mask w = 0; w < u->subset_count(); ++w) {
      std::int64_t expect = 0;
      for (Mask basket : b.baskets) expect += basket == w ? 1 : 0;
      CHECK(density(f, w) == expect);
    }
    // d_f(W) = -d_h(W) on proper subsets, h = N - f
    SetFunctionQ h = to_polymatroid(b);
    for (Mask w = 0; w < u->full_mask(); ++w)
      CHECK(Rational(static_cast<long>(density(f, w))) == -density(h, VarSet(u, w)));
  }
}

TEST_CASE("cone points round trip through basket sets") {
  auto u = letters(3);
  BasketSet one = baskets_from_cone_point({{0b010, 1}}, 1, u);
  REQUIRE(one.baskets.size() == 1);
  CHECK(one.baskets[0] == 0b010);

  BasketSet mix = baskets_from_cone_point({{0b001, 2}, {0b010, 3}}, 6, u);
  CHECK(mix.baskets.size() == 6);
  CHECK(std::count(mix.baskets.begin(), mix.baskets.end(), u->full_mask()) == 1);

  CHECK_THROWS(baskets_from_cone_point({{0b001, 2}}, 1, u));

  test::Rng rng(63);
  for (int t = 0; t < 40; ++t) {
    auto uu = letters(2 + static_cast<int>(rng() % 4));
    std::map<Mask, std::uint64_t> coeffs;
    std::uint64_t total = 0;
    for (Mask m = 0; m < uu->full_mask(); ++m) {
      std::uint64_t c = rng() % 3;
      if (c) coeffs[m] = c;
      total += c;
    }
    if (coeffs.empty()) coeffs[0] = total = 1;
    BasketSet b = baskets_from_cone_point(coeffs, total + rng() % 3, uu);
    auto back = step_decomposition(to_polymatroid(b));
    CHECK(back.size() == coeffs.size());
    for (const auto& [mask, c] : coeffs)
      CHECK(back[mask] == Rational(static_cast<unsigned long>(c)));
  }
}

TEST_CASE("i-measure constraints evaluate as atom sums") {
  auto u = letters(3);
  SetFunctionQ h = step_function(VarSet(u, 0b011));
  Constraint single = Constraint::differential(u, {0b011});
  CHECK(eval_imeasure_constraint(h, single) == 1);
  Constraint other = Constraint::differential(u, {0b001});
  CHECK(eval_imeasure_constraint(h, other) == 0);

  // number of baskets equal to W, via the basket polymatroid
  test::Rng rng(64);
  BasketSet b = random_baskets(rng, u, 12);
  SetFunctionQ hb = to_polymatroid(b);
  SupportFunction f = support(b);
  for (Mask w = 0; w < u->full_mask(); ++w) {
    Constraint c = Constraint::differential(u, {w});
    CHECK(eval_imeasure_constraint(hb, c) == Rational(static_cast<long>(density(f, w))));
  }
}

TEST_CASE("CI terms embed as i-measure constraints") {
  test::Rng rng(65);
  auto u = letters(4);
  for (int t = 0; t < 30; ++t) {
    SetFunctionQ h = test::random_positive_polymatroid(rng, u);
    Constraint ci = test::random_ci(rng, u);
    if (ci.has_zero_vector()) continue;
    CHECK(eval_imeasure_constraint(h, ci) == eval_constraint(h, ci));
    Constraint cond = test::random_conditional(rng, u);
    if (cond.has_zero_vector()) continue;
    CHECK(eval_imeasure_constraint(h, cond) == eval_constraint(h, cond));
  }
}

TEST_CASE("differential implication by atom coverage") {
  auto u = letters(4);  // A,B,C,D
  Constraint s1 = to_differential(parse_constraint("I(B,C;C,D|A)", u));
  Constraint s2 = to_differential(parse_constraint("H(D|C)", u));
  Constraint tau = to_differential(parse_constraint("H(D|A,B)", u));
  Verdict v = differential_implication({s1, s2}, tau);
  CHECK(v.holds);
  CHECK(v.atom_cover.size() == tau.atoms.size());

  // consequent with an uncovered atom fails with a step-function witness
  Constraint bad = Constraint::differential(u, {0b0000});
  Verdict bv = differential_implication({s1}, bad);
  CHECK_FALSE(bv.holds);
  REQUIRE(bv.witness.has_value());
  CHECK(eval_imeasure_constraint(*bv.witness, s1) == 0);
  CHECK(eval_imeasure_constraint(*bv.witness, bad) == 1);

  CHECK(differential_implication({tau}, tau).holds);
}

TEST_CASE("differential implication agrees with the positive-cone decider on CI embeddings") {
  test::Rng rng(66);
  auto u = letters(4);
  for (int t = 0; t < 40; ++t) {
    std::vector<Constraint> sigma{test::random_ci(rng, u), test::random_ci(rng, u)};
    Constraint tau = test::random_ci(rng, u);
    if (tau.has_zero_vector()) continue;
    bool skip = false;
    for (const auto& s : sigma) skip = skip || s.has_zero_vector();
    if (skip) continue;

    std::vector<Constraint> sigma_d;
    for (const auto& s : sigma) sigma_d.push_back(to_differential(s));
    Verdict diff = differential_implication(sigma_d, to_differential(tau));
    Verdict pos = ei_check(Implication(sigma, tau), ModelClass::PositivePolymatroids);
    CHECK(diff.holds == pos.holds);
  }
}

TEST_CASE("the worked differential example relaxes numerically") {
  auto u = make_universe({"A", "B", "C", "D"});
  test::Rng rng(67);
  for (int t = 0; t < 50; ++t) {
    BasketSet b = random_baskets(rng, u, 40);
    SupportFunction f = support(b);
    std::int64_t d1 = f(VarSet::of(u, {"A"})) + f(VarSet::of(u, {"A", "B", "C", "D"})) -
                      f(VarSet::of(u, {"A", "B", "C"})) - f(VarSet::of(u, {"A", "C", "D"}));
    std::int64_t d2 = f(VarSet::of(u, {"C"})) - f(VarSet::of(u, {"C", "D"}));
    std::int64_t d = f(VarSet::of(u, {"A", "B"})) - f(VarSet::of(u, {"A", "B", "D"}));
    CHECK(d1 >= 0);
    CHECK(d2 >= 0);
    CHECK(d >= 0);
    CHECK(d <= d1 + d2);  // h(tau) <= h(sigma1) + h(sigma2) on the basket model

    SetFunctionQ h = to_polymatroid(b);
    CHECK(eval_constraint(h, parse_constraint("I(B,C;C,D|A)", u)) ==
          Rational(static_cast<long>(d1)));
    CHECK(eval_constraint(h, parse_constraint("H(D|C)", u)) == Rational(static_cast<long>(d2)));
    CHECK(eval_constraint(h, parse_constraint("H(D|A,B)", u)) == Rational(static_cast<long>(d)));
  }
}

TEST_CASE("basket files parse with comments and repeats") {
  BasketSet b = read_baskets("# comment\nA B\nA\nA\n");
  CHECK(b.baskets.size() == 3);
  CHECK(b.universe->size() == 2);
  auto u = letters(3);
  BasketSet c = read_baskets("A C\n", u);
  CHECK(c.baskets[0] == 0b101);
  CHECK_THROWS(read_baskets("Q\n", u));
}

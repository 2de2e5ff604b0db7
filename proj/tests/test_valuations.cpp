#include <catch2/catch_amalgamated.hpp>

#include "endowkit/generators.hpp"
#include "endowkit/properties.hpp"
#include "endowkit/rational.hpp"
#include "endowkit/valuation.hpp"

using namespace endowkit;

namespace {
Bundle b(std::initializer_list<int> items) { return Bundle::from_items(items); }
}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/2") == make_rational(3, 2));
  CHECK(parse_rational("-4/6") == make_rational(-2, 3));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(format_rational(make_rational(10, -4)) == "-5/2");
  CHECK(format_rational(Rational(5)) == "5");
  CHECK(parse_rational(format_rational(make_rational(22, 7))) == make_rational(22, 7));
  CHECK_THROWS_AS(parse_rational("1/0"), std::domain_error);
  CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.5"), std::invalid_argument);
}

TEST_CASE("explicit tables validate monotonicity and normalization") {
  CHECK_THROWS_AS(Valuation::explicit_table(1, {Rational(1), Rational(2)}),
                  std::invalid_argument);  // not normalized
  CHECK_THROWS_AS(Valuation::explicit_table(2, {Rational(0), Rational(2), Rational(1), Rational(1)}),
                  std::invalid_argument);  // not monotone
  // opt-out admits a deliberately pathological fixture
  const auto pathological =
      Valuation::explicit_table(2, {Rational(0), Rational(2), Rational(1), Rational(1)}, false);
  CHECK_FALSE(is_monotone(pathological));
  CHECK(is_monotone(pathological).a == Bundle(1));
}

TEST_CASE("eval per class") {
  const auto fv = gen_feige_vondrak();
  CHECK(fv.valuation(0).value(b({0, 1})) == 2);           // Alice {a,b}
  CHECK(fv.valuation(0).value(Bundle::empty()) == 0);
  CHECK(fv.valuation(0).value(b({0, 3})) == make_rational(5, 3));
  CHECK(fv.valuation(1).value(b({0, 2})) == 2);           // Bob {a,c}

  const auto add = Valuation::additive({Rational(1), Rational(2), Rational(3)});
  CHECK(add.value(b({0, 2})) == 4);
  CHECK(add.marginal(b({2}), b({0, 1})) == 3);

  const auto budget = Valuation::budget_additive({Rational(1), Rational(1), Rational(2)},
                                                 make_rational(5, 2));
  CHECK(budget.value(b({0, 1, 2})) == make_rational(5, 2));
  CHECK(budget.value(b({0, 1})) == 2);

  const auto unit = Valuation::unit_demand({Rational(1), Rational(4)});
  CHECK(unit.value(b({0, 1})) == 4);
  CHECK(unit.value(Bundle::empty()) == 0);

  const auto xos = gen_xos_three_items(Rational(2));
  CHECK(xos.valuation(0).value(b({0, 1})) == 1 + make_rational(1, 48));

  const auto cut = Valuation::graph_cut(3, {{0, 1, Rational(1)}, {1, 2, Rational(1)}, {0, 2, Rational(1)}});
  CHECK(cut.value(b({0})) == 2);
  CHECK(cut.value(b({0, 1, 2})) == 3);

  CHECK_THROWS_AS(add.value(Bundle(1u << 3)), std::domain_error);
}

TEST_CASE("marginal values") {
  const auto fv = gen_feige_vondrak();
  CHECK(fv.valuation(0).marginal(b({2}), b({0, 1})) == 0);  // v_A(c | {a,b})
  const auto add = Valuation::additive({Rational(2), Rational(5)});
  CHECK(add.marginal(Bundle::empty(), b({1})) == 0);
}

TEST_CASE("endowment transform") {
  const auto fv = gen_feige_vondrak();
  const auto& alice = fv.valuation(0);
  CHECK_THROWS_AS(endow(alice, b({0}), Rational(-1)), std::domain_error);

  const auto endowed = endow(alice, b({0, 1}), make_rational(3, 2));
  CHECK(endowed.value(b({0, 2})) == make_rational(11, 6));
  CHECK(endowed.cls() == ValuationClass::Endowed);

  // alpha = 1 and empty endowment recover the original on every bundle
  const auto identity = endow(alice, b({1, 3}), Rational(1));
  const auto empty = endow(alice, Bundle::empty(), Rational(7));
  for (std::uint32_t t = 0; t < 16; ++t) {
    CHECK(identity.value(Bundle(t)) == alice.value(Bundle(t)));
    CHECK(empty.value(Bundle(t)) == alice.value(Bundle(t)));
  }
}

TEST_CASE("transform identity holds on both forms") {
  // v(T) + (a-1) v(S&T)  ==  a v(S&T) + [v(T|S&T) form], exhaustively
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    const auto inst = gen_random_submodular(seed, 1, 6);
    const auto& v = inst.valuation(0);
    const Bundle s(0b101101u & 0b111111u);
    for (const Rational& alpha : {make_rational(1, 2), Rational(1), Rational(3)}) {
      const auto w = endow(v, s, alpha);
      for (std::uint32_t t = 0; t < 64; ++t) {
        const Bundle bt(t);
        const Rational lhs = w.value(bt);
        CHECK(lhs == v.value(bt) + (alpha - 1) * v.value(s & bt));
        CHECK(lhs == alpha * v.value(s & bt) + v.marginal(bt - s, s & bt));
      }
    }
  }
}

TEST_CASE("endowed endowed composition nests the formula") {
  const auto base = Valuation::additive({Rational(1), Rational(2), Rational(4)});
  const auto once = endow(base, b({0, 1}), Rational(2));
  const auto twice = endow(once, b({1, 2}), Rational(3));
  for (std::uint32_t t = 0; t < 8; ++t) {
    const Bundle bt(t);
    CHECK(twice.value(bt) == once.value(bt) + 2 * once.value(b({1, 2}) & bt));
  }
}

TEST_CASE("endowing a submodular valuation at alpha >= 1 stays monotone submodular") {
  for (std::uint64_t seed : {10ull, 11ull, 12ull, 13ull}) {
    const auto inst = gen_random_submodular(seed, 1, 5);
    const auto& v = inst.valuation(0);
    detail::Rng rng(seed * 31);
    const Bundle s(static_cast<std::uint32_t>(rng.word()) & 0b11111u);
    for (const Rational& alpha : {Rational(1), make_rational(3, 2), Rational(4)}) {
      const auto w = endow(v, s, alpha);
      CHECK(is_monotone(w));
      CHECK(is_submodular(w));
    }
  }
}

TEST_CASE("class hierarchy") {
  const auto add = Valuation::additive({Rational(3), Rational(1), Rational(2)});
  CHECK(is_submodular(add));
  const auto budget = Valuation::budget_additive({Rational(3), Rational(1), Rational(2)}, Rational(4));
  CHECK(is_submodular(budget));
  const auto cut = Valuation::graph_cut(4, {{0, 1, Rational(2)}, {2, 3, Rational(1)}, {1, 2, Rational(5)}});
  CHECK(is_submodular(cut));
  CHECK(is_monotone(cut));

  const auto xos = gen_xos_three_items(Rational(2)).valuation(0);
  CHECK(is_subadditive(xos));
  const auto sub = is_submodular(xos);
  CHECK_FALSE(sub);
  // the reported witness is a genuine lattice violation
  CHECK(xos.value(sub.a) + xos.value(sub.b) < xos.value(sub.a | sub.b) + xos.value(sub.a & sub.b));
}

TEST_CASE("perturbation preserves subadditivity and monotonicity") {
  for (std::uint64_t seed : {20ull, 21ull, 22ull}) {
    const auto inst = gen_random_subadditive(seed, 1, 5);
    const auto bumped = perturb(inst.valuation(0), make_rational(1, 7));
    CHECK(is_subadditive(bumped));
    CHECK(is_monotone(bumped));
    CHECK(is_normalized(bumped));
    CHECK(bumped.value(b({0, 2})) == inst.valuation(0).value(b({0, 2})) + make_rational(2, 7));
  }
}

TEST_CASE("checker witnesses violate the defining inequality") {
  const auto bad =
      Valuation::explicit_table(2, {Rational(0), Rational(1), Rational(1), Rational(3)}, false);
  const auto sub = is_subadditive(bad);
  REQUIRE_FALSE(sub);
  CHECK(bad.value(sub.a) + bad.value(sub.b) < bad.value(sub.a | sub.b));
}

TEST_CASE("property checks enforce the size cap") {
  const auto big = Valuation::additive(std::vector<Rational>(17, Rational(1)));
  CHECK_THROWS_AS(is_submodular(big), std::length_error);
  CHECK_THROWS_AS(is_subadditive(big), std::length_error);
}

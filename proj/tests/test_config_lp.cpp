#include <catch2/catch_amalgamated.hpp>

#include "endowkit/config_lp.hpp"
#include "endowkit/generators.hpp"
#include "endowkit/local_search.hpp"
#include "helpers.hpp"

using namespace endowkit;

namespace {
Bundle b(std::initializer_list<int> items) { return Bundle::from_items(items); }

// the fractional solution exhibited for the integrality-gap instance
FractionalSolution fv_half_half() {
  FractionalSolution x;
  x.objective = 4;
  x.weights = {{0, b({0, 1}), make_rational(1, 2)},
               {0, b({2, 3}), make_rational(1, 2)},
               {1, b({0, 2}), make_rational(1, 2)},
               {1, b({1, 3}), make_rational(1, 2)}};
  return x;
}

void for_each_allocation(int n, int m, auto&& fn) {
  std::vector<int> owners(m, kUnallocated);
  bool done = false;
  while (!done) {
    fn(Allocation(owners));
    int pos = 0;
    while (pos < m) {
      if (owners[pos] + 1 < n) { ++owners[pos]; break; }
      owners[pos] = kUnallocated;
      ++pos;
    }
    done = (pos == m);
  }
}
}  // namespace

TEST_CASE("configuration LP on the integrality-gap instance") {
  const auto fv = gen_feige_vondrak();
  const auto x = solve_config_lp(fv);
  CHECK(x.objective == 4);
  validate_fractional_solution(fv, x);

  const auto [opt, opt_allocation] = integral_opt(fv);
  CHECK(opt == make_rational(10, 3));
  CHECK(welfare(fv, opt_allocation) == opt);
}

TEST_CASE("single additive player: LP value is the grand-bundle value") {
  const Instance single(3, {Valuation::additive({Rational(1), Rational(2), Rational(4)})});
  CHECK(solve_config_lp(single).objective == 7);
  CHECK(integral_opt(single).first == 7);
}

TEST_CASE("psi against the exhibited fractional solution") {
  const auto fv = gen_feige_vondrak();
  const auto x = fv_half_half();
  validate_fractional_solution(fv, x);
  CHECK(psi(fv, Allocation({0, 0, 1, 1}), x) == 2);
  CHECK(psi(fv, Allocation({0, 1, 1, 0}), x) == 2);  // ({ad},{bc})
  CHECK(psi(fv, Allocation::none(4), x) == 0);
}

TEST_CASE("is_supported_lp") {
  const auto fv = gen_feige_vondrak();
  const Allocation ab_cd({0, 0, 1, 1});
  CHECK(is_supported_lp(fv, ab_cd, make_rational(3, 2)));
  CHECK_FALSE(is_supported_lp(fv, ab_cd, make_rational(7, 5)));

  // the grand bundle is non-maximal, hence unsupported at every alpha
  const Allocation grand({0, 0, 0, 0});
  for (const Rational& alpha : {make_rational(3, 2), Rational(2), Rational(10)})
    CHECK_FALSE(is_supported_lp(fv, grand, alpha));

  const auto unit = gen_unit_demand_identical(3);
  CHECK(is_supported_lp(unit, Allocation({0, 1, 2}), Rational(1)));
}

TEST_CASE("alpha monotonicity of LP support") {
  const auto fv = gen_feige_vondrak();
  const Allocation ab_cd({0, 0, 1, 1});
  for (const Rational& alpha : {make_rational(3, 2), Rational(2), Rational(5)})
    CHECK(is_supported_lp(fv, ab_cd, alpha));
}

TEST_CASE("minimal supporting alpha") {
  const auto fv = gen_feige_vondrak();
  const auto best = min_supporting_alpha(fv, Allocation({0, 0, 1, 1}));
  REQUIRE(best.supportable);
  CHECK(best.alpha == make_rational(3, 2));
  CHECK(best.attained);

  const auto diagonal = min_supporting_alpha(fv, Allocation({0, 1, 1, 0}));
  REQUIRE(diagonal.supportable);
  CHECK(diagonal.alpha == make_rational(3, 2));

  CHECK_FALSE(min_supporting_alpha(fv, Allocation({0, 0, 0, 0})).supportable);

  const auto example = gen_example_opt_not_supported();
  CHECK_FALSE(min_supporting_alpha(example, Allocation({0, 0, 0})).supportable);

  const auto unit = gen_unit_demand_identical(3);
  const auto matching = min_supporting_alpha(unit, Allocation({0, 1, 2}));
  REQUIRE(matching.supportable);
  CHECK(matching.alpha == 1);
  CHECK(matching.attained);

  // the unclamped per-allocation infimum can drop below 1
  const Instance single(2, {Valuation::additive({Rational(1), Rational(2)})});
  const auto everything = min_supporting_alpha(single, Allocation({0, 0}));
  REQUIRE(everything.supportable);
  CHECK(everything.alpha == 0);
  CHECK(everything.attained);
}

TEST_CASE("find_supporting_prices") {
  const auto fv = gen_feige_vondrak();
  const Allocation ab_cd({0, 0, 1, 1});
  const auto p = find_supporting_prices(fv, ab_cd, make_rational(3, 2));
  REQUIRE(p.has_value());
  CHECK(verify_endowed_equilibrium(fv, ab_cd, *p, make_rational(3, 2)).valid);
  CHECK_FALSE(find_supporting_prices(fv, ab_cd, make_rational(7, 5)).has_value());

  for (std::uint64_t seed : {500ull, 501ull}) {
    const auto inst = gen_random_submodular(seed, 2, 4);
    const auto optimum = local_search(inst, Allocation::none(4)).allocation;
    const auto supporting = find_supporting_prices(inst, optimum, Rational(2));
    REQUIRE(supporting.has_value());
    CHECK(verify_endowed_equilibrium(inst, optimum, *supporting, Rational(2)).valid);
  }
}

TEST_CASE("support inequality holds at every vertex of the polytope") {
  // at alpha = min_supporting_alpha: alpha*W >= sum x.v + (alpha-1) psi
  const auto instances = {gen_xos_three_items(Rational(2)), gen_random_submodular(9, 2, 3)};
  for (const auto& inst : instances) {
    const auto lp = detail::config_lp_from_tables(inst.item_count(), detail::value_tables(inst));
    const auto vertices = testing::enumerate_basic_feasible_solutions(lp);
    const std::uint32_t bundles = 1u << inst.item_count();
    for_each_allocation(inst.player_count(), inst.item_count(), [&](const Allocation& a) {
      const auto result = min_supporting_alpha(inst, a, /*check_attainment=*/false);
      if (!result.supportable) return;
      const Rational w = welfare(inst, a);
      for (std::size_t v = 0; v < vertices.vertices.size(); ++v) {
        Rational psi_value = 0;
        for (int i = 0; i < inst.player_count(); ++i) {
          const Bundle owned = a.bundle_of(i);
          for (std::uint32_t s = 0; s < bundles; ++s) {
            const Rational& weight = vertices.vertices[v][i * bundles + s];
            if (weight != 0) psi_value += weight * inst.valuation(i).value(Bundle(s) & owned);
          }
        }
        CHECK(result.alpha * w >= vertices.objectives[v] + (result.alpha - 1) * psi_value);
      }
    });
  }
}

TEST_CASE("route equivalence between LP support and price feasibility") {
  detail::Rng rng(777);
  const Rational alphas[] = {Rational(0),           make_rational(1, 2), Rational(1),
                             make_rational(3, 2),   Rational(2),         Rational(3)};
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + rng.below(2);
    const int m = 2 + rng.below(3);
    const auto inst = (trial % 2 == 0) ? gen_random_submodular(900 + trial, n, m)
                                       : gen_random_subadditive(900 + trial, n, m);
    std::vector<int> owners(m);
    for (int j = 0; j < m; ++j) owners[j] = rng.below(n + 1) - 1;
    const Allocation a(owners);
    const Rational& alpha = alphas[rng.below(6)];
    const bool lp_route = is_supported_lp(inst, a, alpha);
    const auto price_route = find_supporting_prices(inst, a, alpha);
    CHECK(lp_route == price_route.has_value());
    if (price_route) {
      CHECK(verify_endowed_equilibrium(inst, a, *price_route, alpha).valid);
      // support is upward closed in alpha
      CHECK(is_supported_lp(inst, a, alpha + 1));
      // a supported allocation alpha-approximates the fractional optimum
      CHECK(alpha * welfare(inst, a) >= solve_config_lp(inst).objective);
    }
  }
}

TEST_CASE("endowment gap report on the integrality-gap instance") {
  const auto fv = gen_feige_vondrak();
  const auto report = endowment_gap_instance(fv);
  CHECK(report.lp_value == 4);
  CHECK(report.integral_opt == make_rational(10, 3));
  CHECK(report.integrality_gap == make_rational(6, 5));
  REQUIRE(report.endowment_gap.has_value());
  CHECK(*report.endowment_gap == make_rational(3, 2));

  int supportable = 0;
  for (const auto& row : report.rows) {
    CHECK(row.maximal == row.supportable);
    if (row.supportable) {
      ++supportable;
      CHECK(row.min_alpha == make_rational(3, 2));
      CHECK(row.welfare == make_rational(10, 3));
      CHECK(row.psi == 2);
    }
  }
  CHECK(supportable == 6);  // exactly the two-two splits
}

TEST_CASE("endowment gap is 1 on Walrasian instances and above alpha on the XOS family") {
  const auto unit = endowment_gap_instance(gen_unit_demand_identical(2));
  REQUIRE(unit.endowment_gap.has_value());
  CHECK(*unit.endowment_gap == 1);
  CHECK(unit.integrality_gap == 1);

  const auto xos = endowment_gap_instance(gen_xos_three_items(Rational(2)));
  REQUIRE(xos.endowment_gap.has_value());
  CHECK(*xos.endowment_gap > 2);
}

TEST_CASE("budget-additive endowment gap is exactly 3/(2 + eps)") {
  // the binding constraint sum uses the c-holder's endowed value (2+eps)*alpha,
  // so the exact gap lands at 3/(2+eps), a hair under 3/(2+eps/2)
  const Rational eps = make_rational(1, 100);
  const auto inst = gen_budget_additive(eps);
  const auto report = endowment_gap_instance(inst);
  REQUIRE(report.endowment_gap.has_value());
  CHECK(*report.endowment_gap == 3 / (2 + eps));
  CHECK(*report.endowment_gap == make_rational(100, 67));
  CHECK(*report.endowment_gap < make_rational(600, 401));

  // one attaining allocation: b1 {x1,c}, a1 {x2}, b2 {y1}, a2 {y2}
  const Allocation witness({2, 0, 3, 1, 2});
  const auto least = min_supporting_alpha(inst, witness);
  REQUIRE(least.supportable);
  CHECK(least.alpha == make_rational(100, 67));
  CHECK(least.attained);
  const auto p = find_supporting_prices(inst, witness, least.alpha);
  REQUIRE(p.has_value());
  CHECK(verify_endowed_equilibrium(inst, witness, *p, least.alpha).valid);
  CHECK_FALSE(is_supported_lp(inst, witness, make_rational(100, 67) - make_rational(1, 1000)));
}

TEST_CASE("gap invariants on random instances") {
  for (std::uint64_t seed : {600ull, 601ull, 602ull, 603ull}) {
    const auto inst = gen_random_submodular(seed, 2, 4);
    const auto report = endowment_gap_instance(inst);
    CHECK(report.lp_value >= report.integral_opt);
    CHECK(report.integrality_gap >= 1);
    REQUIRE(report.endowment_gap.has_value());
    CHECK(*report.endowment_gap >= report.integrality_gap);
    // Walrasian existence (gap 1) exactly when the optimum supports at alpha 1
    const bool walrasian =
        find_supporting_prices(inst, report.integral_opt_allocation, Rational(1)).has_value();
    CHECK(walrasian == (report.integrality_gap == 1));
    // attainment spot-check on the gap minimizer
    if (report.best_allocation) {
      const auto best = min_supporting_alpha(inst, *report.best_allocation);
      CHECK(best.attained);
    }
  }
}

TEST_CASE("two-player subadditive rounding") {
  const auto fv = gen_feige_vondrak();
  const auto result = round_two_player_subadditive(fv, fv_half_half());
  CHECK(result.expected_welfare == make_rational(10, 3));
  CHECK(result.bound == make_rational(5, 2));  // (1/2 + 1/8) * 4
  CHECK(result.best_welfare == make_rational(10, 3));

  // a concentrated integral solution rounds to itself
  FractionalSolution integral;
  integral.objective = make_rational(10, 3);
  integral.weights = {{0, b({0, 1}), Rational(1)}, {1, b({2, 3}), Rational(1)}};
  const auto fixed = round_two_player_subadditive(fv, integral);
  CHECK(fixed.expected_welfare == make_rational(10, 3));
  CHECK(fixed.best.owners() == std::vector<int>{0, 0, 1, 1});

  for (std::uint64_t seed : {700ull, 701ull, 702ull, 703ull, 704ull}) {
    const auto inst = gen_random_subadditive(seed, 2, 2 + static_cast<int>(seed % 5));
    const auto x = solve_config_lp(inst);
    const auto rounded = round_two_player_subadditive(inst, x);
    CHECK(rounded.expected_welfare >= rounded.bound);
    CHECK(rounded.best_welfare >= rounded.expected_welfare);
  }

  CHECK_THROWS_AS(round_two_player_subadditive(gen_unit_demand_identical(3), FractionalSolution{}),
                  std::invalid_argument);
}

TEST_CASE("perturbation amplifies the gap exactly") {
  const auto fv = gen_feige_vondrak();
  const auto report = perturbation_gap_check(fv, make_rational(1, 10));
  CHECK(report.base_gap == make_rational(6, 5));
  CHECK(report.epsilon == make_rational(1, 10));
  CHECK(report.perturbed_gap == make_rational(33, 28));
  CHECK(report.endowment_gap_lower == make_rational(28, 23));
  CHECK(report.perturbed_endowment_gap >= make_rational(28, 23));
  CHECK(report.perturbed_endowment_gap > make_rational(33, 28));

  CHECK(perturbed_gap_formula(make_rational(6, 5), Rational(0)) == make_rational(6, 5));

  // an instance with gap 1 has nothing to amplify
  CHECK_THROWS_AS(perturbation_gap_check(gen_unit_demand_identical(2), make_rational(1, 10)),
                  std::domain_error);
  CHECK_THROWS_AS(perturbation_gap_check(fv, Rational(0)), std::domain_error);
}

TEST_CASE("size caps are enforced") {
  const Instance wide(15, {Valuation::additive(std::vector<Rational>(15, Rational(1)))});
  CHECK_THROWS_AS(solve_config_lp(wide), std::length_error);
  CHECK_THROWS_AS(min_supporting_alpha(wide, Allocation::none(15)), std::length_error);

  const auto unit24 = gen_unit_demand_identical(24);
  CHECK_THROWS_AS(integral_opt(unit24), std::length_error);
  CHECK_THROWS_AS(endowment_gap_instance(unit24), std::length_error);
}

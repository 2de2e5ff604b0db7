#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "endowkit/allocation.hpp"
#include "endowkit/equilibrium.hpp"
#include "endowkit/instance.hpp"
#include "endowkit/properties.hpp"
#include "endowkit/rational.hpp"
#include "endowkit/simplex.hpp"

namespace endowkit {

// Full column enumeration keeps the configuration LP honest at desk scale.
inline constexpr int kMaxLpItems = 14;

struct FractionalWeight {
  int player = 0;
  Bundle bundle{};
  Rational weight;
};

// Sparse point of the configuration-LP polytope, weights sorted by
// (player, bundle) with no duplicates.
struct FractionalSolution {
  Rational objective;
  std::vector<FractionalWeight> weights;
};

namespace detail {

inline void check_lp_item_cap(const Instance& inst) {
  if (inst.item_count() > kMaxLpItems)
    throw std::length_error("configuration LP: item count exceeds the cap of 14");
}

// Counts n^m against a cap without overflowing.
inline bool allocation_space_within(int base, int exponent, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (int i = 0; i < exponent; ++i) {
    total *= static_cast<std::uint64_t>(base);
    if (total > cap) return false;
  }
  return true;
}

inline std::vector<std::vector<Rational>> value_tables(const Instance& inst) {
  std::vector<std::vector<Rational>> tables;
  tables.reserve(inst.player_count());
  const std::uint32_t size = std::uint32_t{1} << inst.item_count();
  for (const auto& v : inst.valuations()) {
    std::vector<Rational> table;
    table.reserve(size);
    for (std::uint32_t t = 0; t < size; ++t) table.push_back(v.value(Bundle(t)));
    tables.push_back(std::move(table));
  }
  return tables;
}

// One variable per (player, bundle) pair: var = player * 2^m + bundle bits.
inline LinearProgram config_lp_from_tables(int item_count,
                                           const std::vector<std::vector<Rational>>& tables,
                                           int extra_variables = 0) {
  const int players = static_cast<int>(tables.size());
  const std::uint32_t bundles = std::uint32_t{1} << item_count;
  LinearProgram lp;
  lp.variable_count = players * static_cast<int>(bundles) + extra_variables;
  lp.objective.assign(lp.variable_count, Rational(0));
  for (int i = 0; i < players; ++i)
    for (std::uint32_t s = 0; s < bundles; ++s)
      lp.objective[i * bundles + s] = tables[i][s];

  for (int j = 0; j < item_count; ++j) {
    LpConstraint row;
    row.relation = Relation::LessEq;
    row.rhs = 1;
    for (int i = 0; i < players; ++i)
      for (std::uint32_t s = 0; s < bundles; ++s)
        if ((s >> j) & 1u) row.terms.emplace_back(i * bundles + s, Rational(1));
    lp.constraints.push_back(std::move(row));
  }
  for (int i = 0; i < players; ++i) {
    LpConstraint row;
    row.relation = Relation::LessEq;
    row.rhs = 1;
    for (std::uint32_t s = 0; s < bundles; ++s)
      row.terms.emplace_back(i * bundles + s, Rational(1));
    lp.constraints.push_back(std::move(row));
  }
  return lp;
}

inline FractionalSolution extract_solution(int item_count, int players, const LpResult& res) {
  const std::uint32_t bundles = std::uint32_t{1} << item_count;
  FractionalSolution out;
  out.objective = res.objective;
  for (int i = 0; i < players; ++i)
    for (std::uint32_t s = 0; s < bundles; ++s) {
      const Rational& w = res.solution[i * bundles + s];
      if (w != 0) out.weights.push_back({i, Bundle(s), w});
    }
  return out;
}

}  // namespace detail

inline void validate_fractional_solution(const Instance& inst, const FractionalSolution& x) {
  std::vector<Rational> bidder_mass(inst.player_count(), Rational(0));
  std::vector<Rational> item_mass(inst.item_count(), Rational(0));
  Rational objective = 0;
  const FractionalWeight* previous = nullptr;
  for (const auto& w : x.weights) {
    if (w.player < 0 || w.player >= inst.player_count())
      throw std::invalid_argument("fractional solution: player index out of range");
    if (w.bundle.bits >> inst.item_count())
      throw std::invalid_argument("fractional solution: bundle out of range");
    if (w.weight < 0) throw std::invalid_argument("fractional solution: negative weight");
    if (previous && !(previous->player < w.player ||
                      (previous->player == w.player && previous->bundle < w.bundle)))
      throw std::invalid_argument("fractional solution: weights must be sorted and unique");
    previous = &w;
    bidder_mass[w.player] += w.weight;
    for (int j : w.bundle.items()) item_mass[j] += w.weight;
    objective += w.weight * inst.valuation(w.player).value(w.bundle);
  }
  for (const auto& mass : bidder_mass)
    if (mass > 1) throw std::invalid_argument("fractional solution: bidder constraint violated");
  for (const auto& mass : item_mass)
    if (mass > 1) throw std::invalid_argument("fractional solution: item constraint violated");
  if (objective != x.objective)
    throw std::invalid_argument("fractional solution: stated objective does not match weights");
}

// Exact optimum of the configuration LP by primal simplex over rationals.
inline FractionalSolution solve_config_lp(const Instance& inst) {
  detail::check_lp_item_cap(inst);
  const auto tables = detail::value_tables(inst);
  const auto lp = detail::config_lp_from_tables(inst.item_count(), tables);
  const auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("configuration LP: solver must reach an optimum");
  return detail::extract_solution(inst.item_count(), inst.player_count(), res);
}

// Exhaustive maximum welfare over all allocations, partial ones included.
// Ties resolve to the first allocation in little-endian owner order with
// owners cycling through unallocated, then players in index order.
inline std::pair<Rational, Allocation> integral_opt(const Instance& inst) {
  // the enumeration includes partial allocations, so the cap counts them
  if (!detail::allocation_space_within(inst.player_count() + 1, inst.item_count(), 10000000ull))
    throw std::length_error("integral optimum: the allocation count exceeds the cap of 10^7");
  const int m = inst.item_count();
  const int n = inst.player_count();
  std::vector<int> owners(m, kUnallocated);
  Allocation best(owners);
  Rational best_welfare = 0;  // the all-unallocated allocation has welfare 0
  while (true) {
    int pos = 0;
    while (pos < m) {
      if (owners[pos] + 1 < n) {
        ++owners[pos];
        break;
      }
      owners[pos] = kUnallocated;
      ++pos;
    }
    if (pos == m) break;
    Allocation a(owners);
    Rational w = welfare(inst, a);
    if (w > best_welfare) {
      best_welfare = std::move(w);
      best = a;
    }
  }
  return {best_welfare, best};
}

// psi(A, x) = sum over weights of x_{i,S} * v_i(S ∩ A_i).
inline Rational psi(const Instance& inst, const Allocation& a, const FractionalSolution& x) {
  check_allocation(inst, a);
  Rational total = 0;
  for (const auto& w : x.weights)
    total += w.weight * inst.valuation(w.player).value(w.bundle & a.bundle_of(w.player));
  return total;
}

// A is supported by alpha iff A is an optimal solution of the configuration
// LP of the instance endowed around A, i.e. the LP optimum equals the
// endowed welfare of A exactly.
inline bool is_supported_lp(const Instance& inst, const Allocation& a, const Rational& alpha) {
  detail::check_lp_item_cap(inst);
  check_allocation(inst, a);
  if (alpha < 0) throw std::domain_error("is_supported_lp: alpha must be nonnegative");
  const auto tables = detail::value_tables(inst);
  const std::uint32_t bundles = std::uint32_t{1} << inst.item_count();
  std::vector<std::vector<Rational>> endowed_tables(inst.player_count());
  Rational endowed_welfare = 0;
  const Rational shift = alpha - 1;
  for (int i = 0; i < inst.player_count(); ++i) {
    const std::uint32_t owned = a.bundle_of(i).bits;
    auto& table = endowed_tables[i];
    table.reserve(bundles);
    for (std::uint32_t s = 0; s < bundles; ++s)
      table.push_back(tables[i][s] + shift * tables[i][s & owned]);
    endowed_welfare += table[owned];
  }
  const auto lp = detail::config_lp_from_tables(inst.item_count(), endowed_tables);
  const auto res = solve_lp(lp);
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("is_supported_lp: solver must reach an optimum");
  return res.objective == endowed_welfare;
}

struct MinAlphaResult {
  bool supportable = false;
  Rational alpha;        // meaningful when supportable
  bool attained = false; // support at alpha itself re-verified through the LP
};

// The infimum of the alphas supporting A, as the supremum of
//   (sum x.v - psi) / (W(A) - psi)
// over the LP polytope restricted to positive denominators.  The
// linear-fractional program is homogenized with a scale variable t >= 0
// (denominator normalized to 1); an unbounded ray is exactly a fractional
// solution with zero denominator and positive numerator, which is the
// unsupportable case and coincides with non-maximality of A.
inline MinAlphaResult min_supporting_alpha(const Instance& inst, const Allocation& a,
                                           bool check_attainment = true) {
  detail::check_lp_item_cap(inst);
  check_allocation(inst, a);
  const Rational total_welfare = welfare(inst, a);
  if (total_welfare == 0) {
    // No fractional solution has a positive denominator.  Support at any
    // alpha requires the whole LP to be worthless.
    if (solve_config_lp(inst).objective == 0)
      return {true, Rational(0), !check_attainment || is_supported_lp(inst, a, Rational(0))};
    return {};
  }

  const auto tables = detail::value_tables(inst);
  const std::uint32_t bundles = std::uint32_t{1} << inst.item_count();
  const int players = inst.player_count();
  auto lp = detail::config_lp_from_tables(inst.item_count(), tables, /*extra_variables=*/1);
  const int scale_var = players * static_cast<int>(bundles);

  LpConstraint normalization;
  normalization.relation = Relation::Equal;
  normalization.rhs = 1;
  normalization.terms.emplace_back(scale_var, total_welfare);
  for (int i = 0; i < players; ++i) {
    const std::uint32_t owned = a.bundle_of(i).bits;
    for (std::uint32_t s = 0; s < bundles; ++s) {
      const int var = i * static_cast<int>(bundles) + static_cast<int>(s);
      const Rational& capped = tables[i][s & owned];
      lp.objective[var] = tables[i][s] - capped;
      if (capped != 0) normalization.terms.emplace_back(var, -capped);
    }
  }
  // Homogenized polytope rows: sums bounded by t instead of 1.
  for (auto& row : lp.constraints) {
    row.terms.emplace_back(scale_var, Rational(-1));
    row.rhs = 0;
  }
  lp.constraints.push_back(std::move(normalization));

  const auto res = solve_lp(lp);
  if (res.status == LpStatus::Unbounded) return {};
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("min_supporting_alpha: homogenized program must be feasible");
  MinAlphaResult out;
  out.supportable = true;
  out.alpha = res.objective;
  out.attained = !check_attainment || is_supported_lp(inst, a, out.alpha);
  return out;
}

// Feasibility route to the equilibrium definition: the conditions are linear
// in the prices once the allocation and alpha are fixed.  Returns a vertex
// minimizing the price sum, or nothing when no prices support A at alpha.
inline std::optional<PriceVector> find_supporting_prices(const Instance& inst,
                                                         const Allocation& a,
                                                         const Rational& alpha) {
  detail::check_lp_item_cap(inst);
  check_allocation(inst, a);
  if (alpha < 0) throw std::domain_error("find_supporting_prices: alpha must be nonnegative");
  const auto tables = detail::value_tables(inst);
  const std::uint32_t bundles = std::uint32_t{1} << inst.item_count();
  const int m = inst.item_count();
  const Rational shift = alpha - 1;

  LinearProgram lp;
  lp.variable_count = m;
  lp.objective.assign(m, Rational(-1));  // any feasible vertex works; keep prices small
  for (int j = 0; j < m; ++j) {
    if (a.owner(j) != kUnallocated) continue;
    LpConstraint row;
    row.relation = Relation::Equal;
    row.rhs = 0;
    row.terms.emplace_back(j, Rational(1));
    lp.constraints.push_back(std::move(row));
  }
  for (int i = 0; i < inst.player_count(); ++i) {
    const std::uint32_t owned = a.bundle_of(i).bits;
    const Rational own_value = tables[i][owned] + shift * tables[i][owned];
    for (std::uint32_t t = 0; t < bundles; ++t) {
      if (t == owned) continue;
      // p(T - A_i) - p(A_i - T) >= v^(T) - v^(A_i)
      LpConstraint row;
      row.relation = Relation::GreaterEq;
      row.rhs = tables[i][t] + shift * tables[i][t & owned] - own_value;
      for (int j = 0; j < m; ++j) {
        const bool in_t = (t >> j) & 1u;
        const bool in_owned = (owned >> j) & 1u;
        if (in_t && !in_owned)
          row.terms.emplace_back(j, Rational(1));
        else if (!in_t && in_owned)
          row.terms.emplace_back(j, Rational(-1));
      }
      lp.constraints.push_back(std::move(row));
    }
  }
  const auto res = solve_lp(lp);
  if (res.status == LpStatus::Infeasible) return std::nullopt;
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("find_supporting_prices: bounded program cannot be unbounded");
  return PriceVector(res.solution);
}

struct AllocationGapRow {
  Allocation allocation;
  Rational welfare;
  Rational psi;  // against the computed optimal fractional solution
  bool maximal = false;
  bool supportable = false;
  Rational min_alpha;  // meaningful when supportable
  bool attained = false;
};

struct GapReport {
  Rational lp_value;
  Rational integral_opt;
  Allocation integral_opt_allocation;
  Rational integrality_gap;
  std::optional<Rational> endowment_gap;        // min over allocations, clamped to >= 1
  std::optional<Allocation> best_allocation;    // attains the unclamped minimum
  std::vector<AllocationGapRow> rows;
};

// Enumerates every allocation; non-maximal ones are unsupportable by any
// alpha, maximal ones get an exact minimal supporting alpha.  The instance
// endowment gap reads the per-allocation minima at intensities >= 1, the
// regime where the endowment transform models ownership bias, so it is 1 on
// every instance admitting a Walrasian equilibrium and always at least the
// integrality gap.
inline GapReport endowment_gap_instance(const Instance& inst) {
  if (!detail::allocation_space_within(inst.player_count() + 1, inst.item_count(), 1000000ull))
    throw std::length_error("endowment gap: the allocation count exceeds the cap of 10^6");
  detail::check_lp_item_cap(inst);
  const auto x = solve_config_lp(inst);
  const int m = inst.item_count();
  const int n = inst.player_count();

  GapReport report{x.objective, Rational(0), Allocation::none(m), Rational(1),
                   std::nullopt,  std::nullopt, {}};
  std::optional<Rational> raw_min;

  std::vector<int> owners(m, kUnallocated);
  bool done = false;
  while (!done) {
    Allocation a(owners);
    AllocationGapRow row{a, welfare(inst, a), psi(inst, a, x), false, false, Rational(0), false};
    if (row.welfare > report.integral_opt) {
      report.integral_opt = row.welfare;
      report.integral_opt_allocation = a;
    }
    row.maximal = is_maximal(inst, a);
    if (row.maximal) {
      auto result = min_supporting_alpha(inst, a, /*check_attainment=*/false);
      row.supportable = result.supportable;
      if (result.supportable) {
        row.min_alpha = result.alpha;
        row.attained = true;  // the homogenized optimum is attained at a vertex
        if (!raw_min || row.min_alpha < *raw_min) {
          raw_min = row.min_alpha;
          report.best_allocation = a;
        }
      }
    }
    report.rows.push_back(std::move(row));

    int pos = 0;
    while (pos < m) {
      if (owners[pos] + 1 < n) {
        ++owners[pos];
        break;
      }
      owners[pos] = kUnallocated;
      ++pos;
    }
    done = (pos == m);
  }

  if (report.integral_opt != 0)
    report.integrality_gap = report.lp_value / report.integral_opt;
  if (raw_min) report.endowment_gap = *raw_min < 1 ? Rational(1) : *raw_min;
  return report;
}

struct RoundingResult {
  Rational expected_welfare;  // exact, derandomized over the support
  Rational fractional_value;
  Rational bound;  // (1/2 + 1/(2m)) * fractional value
  Allocation best;
  Rational best_welfare;
};

// Two-player subadditive rounding: allocate S to the fractionally heavier
// player with probability x_{1,S} and the complement to the other.  The
// expectation is computed exactly over the support (padded with the empty
// bundle to a full distribution) and must reach (1/2 + 1/(2m)) of the
// fractional value.
inline RoundingResult round_two_player_subadditive(const Instance& inst,
                                                   const FractionalSolution& x) {
  if (inst.player_count() != 2)
    throw std::invalid_argument("rounding: requires exactly two players");
  for (int i = 0; i < 2; ++i)
    if (!is_subadditive(inst.valuation(i)))
      throw std::invalid_argument("rounding: player " + std::to_string(i) +
                                  " is not subadditive");
  validate_fractional_solution(inst, x);

  Rational value[2] = {Rational(0), Rational(0)};
  for (const auto& w : x.weights)
    value[w.player] += w.weight * inst.valuation(w.player).value(w.bundle);
  const int first = value[0] >= value[1] ? 0 : 1;
  const int other = 1 - first;

  std::vector<std::pair<Bundle, Rational>> support;
  Rational mass = 0;
  for (const auto& w : x.weights) {
    if (w.player != first || w.weight == 0) continue;
    support.emplace_back(w.bundle, w.weight);
    mass += w.weight;
  }
  if (mass < 1) {
    if (!support.empty() && support.front().first == Bundle::empty())
      support.front().second += 1 - mass;
    else
      support.insert(support.begin(), {Bundle::empty(), 1 - mass});
  }

  const Bundle everything = Bundle::full(inst.item_count());
  RoundingResult out{Rational(0), value[0] + value[1], Rational(0),
                     Allocation::none(inst.item_count()), Rational(0)};
  bool have_best = false;
  for (const auto& [bundle, weight] : support) {
    const Rational w = inst.valuation(first).value(bundle) +
                       inst.valuation(other).value(everything - bundle);
    out.expected_welfare += weight * w;
    if (!have_best || w > out.best_welfare) {
      have_best = true;
      out.best_welfare = w;
      std::vector<int> owners(inst.item_count(), other);
      for (int j : bundle.items()) owners[j] = first;
      out.best = Allocation(std::move(owners));
    }
  }
  out.bound = (Rational(1) / 2 + Rational(1) / (2 * inst.item_count())) * out.fractional_value;
  if (out.expected_welfare < out.bound)
    throw std::logic_error("rounding: expected welfare fell below the subadditive guarantee");
  return out;
}

inline Rational perturbed_gap_formula(const Rational& y, const Rational& delta) {
  return y * (1 + delta) / (1 + delta * y);
}

struct PerturbationReport {
  Rational epsilon;
  Rational base_gap;             // y, the original integrality gap
  Rational perturbed_gap;        // x = y(1+d)/(1+dy), verified exactly
  Rational endowment_gap_lower;  // 1/(2-x)
  Rational perturbed_endowment_gap;
  Instance perturbed;
};

// Adds the per-item bonus eps = delta * OPT* / m to both players and checks
// that the integrality gap moves exactly to y(1+d)/(1+dy) while the
// endowment gap rises strictly above it (to at least 1/(2-x)).
inline PerturbationReport perturbation_gap_check(const Instance& inst, const Rational& delta) {
  if (inst.player_count() != 2)
    throw std::invalid_argument("perturbation: requires exactly two players");
  if (delta <= 0) throw std::domain_error("perturbation: delta must be positive");
  for (int i = 0; i < 2; ++i)
    if (!is_subadditive(inst.valuation(i)))
      throw std::invalid_argument("perturbation: player " + std::to_string(i) +
                                  " is not subadditive");
  const auto base_lp = solve_config_lp(inst);
  const auto [base_opt, base_opt_allocation] = integral_opt(inst);
  if (base_opt == 0) throw std::domain_error("perturbation: instance has no welfare");
  const Rational y = base_lp.objective / base_opt;
  if (y == 1)
    throw std::domain_error("perturbation: instance has integrality gap 1, nothing to amplify");

  const Rational eps = delta * base_lp.objective / inst.item_count();
  std::vector<Valuation> perturbed_valuations;
  for (const auto& v : inst.valuations()) perturbed_valuations.push_back(perturb(v, eps));
  Instance perturbed(inst.item_count(), std::move(perturbed_valuations),
                     inst.label().empty() ? "perturbed" : inst.label() + "-perturbed");

  const Rational expected = perturbed_gap_formula(y, delta);
  auto report = endowment_gap_instance(perturbed);
  if (report.integrality_gap != expected)
    throw std::logic_error("perturbation: integrality gap did not match y(1+d)/(1+dy)");
  if (!report.endowment_gap)
    throw std::logic_error("perturbation: perturbed instance has no supportable allocation");
  const Rational lower = Rational(1) / (2 - expected);
  if (*report.endowment_gap < lower || !(*report.endowment_gap > expected))
    throw std::logic_error("perturbation: endowment gap fell below the guarantee");
  return PerturbationReport{eps,   y, expected, lower, *report.endowment_gap,
                            std::move(perturbed)};
}

}  // namespace endowkit

#pragma once

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

namespace endowkit {

struct SingleItemMove {
  int item = -1;
  int from = -1;
  int to = -1;
};

struct LocalOptimumCheck {
  bool local_optimum = false;
  std::optional<SingleItemMove> violation;  // first improving move, lexicographic
};

// Local optimum: every item is allocated and no single-item reallocation
// strictly increases welfare.
inline LocalOptimumCheck is_local_optimum(const Instance& inst, const Allocation& a) {
  check_allocation(inst, a);
  LocalOptimumCheck out;
  for (int j = 0; j < inst.item_count(); ++j) {
    if (a.owner(j) == kUnallocated) {
      out.violation = SingleItemMove{j, kUnallocated, -1};
      return out;
    }
  }
  std::vector<Bundle> bundles;
  std::vector<Rational> values;
  for (int i = 0; i < inst.player_count(); ++i) {
    bundles.push_back(a.bundle_of(i));
    values.push_back(inst.valuation(i).value(bundles.back()));
  }
  for (int j = 0; j < inst.item_count(); ++j) {
    const int from = a.owner(j);
    const Rational from_after = inst.valuation(from).value(bundles[from].without(j));
    for (int to = 0; to < inst.player_count(); ++to) {
      if (to == from) continue;
      const Rational to_after = inst.valuation(to).value(bundles[to].with(j));
      if (from_after + to_after > values[from] + values[to]) {
        out.violation = SingleItemMove{j, from, to};
        return out;
      }
    }
  }
  out.local_optimum = true;
  return out;
}

struct LocalSearchTrace {
  struct Move {
    int item;
    int from;
    int to;
    Rational welfare_delta;  // strictly positive
  };
  Allocation initial;
  Allocation final;
  std::vector<Move> moves;
};

struct LocalSearchResult {
  Allocation allocation;
  LocalSearchTrace trace;
};

// Greedy single-item improvement: repeatedly applies the lexicographically
// first strictly improving move (item index, then destination player) until
// none exists.  Unallocated items are first assigned to the player with the
// highest singleton value, ties to the lowest index, so the search always
// maintains a full allocation.
inline LocalSearchResult local_search(const Instance& inst, const Allocation& initial) {
  check_allocation(inst, initial);
  Allocation current = initial;
  for (int j = 0; j < inst.item_count(); ++j) {
    if (current.owner(j) != kUnallocated) continue;
    int best_player = 0;
    Rational best_value = inst.valuation(0).value(Bundle::single(j));
    for (int i = 1; i < inst.player_count(); ++i) {
      Rational value = inst.valuation(i).value(Bundle::single(j));
      if (value > best_value) {
        best_value = std::move(value);
        best_player = i;
      }
    }
    current.assign(j, best_player);
  }

  LocalSearchTrace trace{current, current, {}};
  while (true) {
    const auto check = is_local_optimum(inst, current);
    if (check.local_optimum) break;
    const auto move = *check.violation;
    const Bundle from_bundle = current.bundle_of(move.from);
    const Bundle to_bundle = current.bundle_of(move.to);
    Rational delta = inst.valuation(move.from).value(from_bundle.without(move.item)) +
                     inst.valuation(move.to).value(to_bundle.with(move.item)) -
                     inst.valuation(move.from).value(from_bundle) -
                     inst.valuation(move.to).value(to_bundle);
    current.assign(move.item, move.to);
    trace.moves.push_back({move.item, move.from, move.to, std::move(delta)});
  }
  trace.final = current;
  return LocalSearchResult{current, std::move(trace)};
}

// p_j = owner's marginal value v_i(j | O_i - j).  Requires a full allocation.
inline PriceVector marginal_prices(const Instance& inst, const Allocation& a) {
  check_allocation(inst, a);
  std::vector<Rational> prices(inst.item_count());
  for (int j = 0; j < inst.item_count(); ++j) {
    const int i = a.owner(j);
    if (i == kUnallocated)
      throw std::domain_error("marginal prices: every item must be allocated");
    prices[j] = inst.valuation(i).marginal(Bundle::single(j), a.bundle_of(i).without(j));
  }
  return PriceVector(std::move(prices));
}

// p_j = max over other players of v_i'(j | O_i').  At a local optimum this is
// a componentwise lower bound on marginal_prices, and any intermediate price
// vector also supports the allocation at alpha >= 2.
inline PriceVector second_highest_marginal_prices(const Instance& inst, const Allocation& a) {
  check_allocation(inst, a);
  std::vector<Rational> prices(inst.item_count(), Rational(0));
  for (int j = 0; j < inst.item_count(); ++j) {
    if (a.owner(j) == kUnallocated)
      throw std::domain_error("second-highest marginal prices: every item must be allocated");
    for (int i = 0; i < inst.player_count(); ++i) {
      if (i == a.owner(j)) continue;
      Rational marginal = inst.valuation(i).marginal(Bundle::single(j), a.bundle_of(i));
      if (marginal > prices[j]) prices[j] = std::move(marginal);
    }
  }
  return PriceVector(std::move(prices));
}

// Builds marginal prices for a local optimum of a submodular instance and
// verifies the endowed equilibrium at alpha >= 2.  The verification must
// succeed; a Valid=false outcome here is a bug, not a data condition.
inline EquilibriumCertificate support_local_optimum(const Instance& inst, const Allocation& a,
                                                    const Rational& alpha = Rational(2)) {
  if (alpha < 2)
    throw std::domain_error("support_local_optimum: requires alpha >= 2");
  if (!is_local_optimum(inst, a).local_optimum)
    throw std::domain_error("support_local_optimum: allocation is not a local optimum");
  if (inst.item_count() <= kMaxCheckItems) {
    for (int i = 0; i < inst.player_count(); ++i)
      if (!is_submodular(inst.valuation(i)))
        throw std::domain_error("support_local_optimum: player " + std::to_string(i) +
                                " is not submodular");
  }
  auto cert = verify_endowed_equilibrium(inst, a, marginal_prices(inst, a), alpha);
  if (!cert.valid)
    throw std::logic_error("support_local_optimum: marginal prices failed to verify");
  return cert;
}

}  // namespace endowkit

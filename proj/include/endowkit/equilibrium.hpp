#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "endowkit/allocation.hpp"
#include "endowkit/bundle.hpp"
#include "endowkit/instance.hpp"
#include "endowkit/rational.hpp"
#include "endowkit/valuation.hpp"

namespace endowkit {

inline Rational profit(const Valuation& v, Bundle t, const PriceVector& p) {
  return v.value(t) - p.total(t);
}

namespace detail {

struct BestResponse {
  Rational best_profit;
  Bundle first_best;  // smallest bitmask attaining the maximum
};

inline BestResponse best_response(const Valuation& v, const PriceVector& p) {
  const std::uint32_t n = std::uint32_t{1} << v.item_count();
  BestResponse out{profit(v, Bundle::empty(), p), Bundle::empty()};
  for (std::uint32_t t = 1; t < n; ++t) {
    Rational q = profit(v, Bundle(t), p);
    if (q > out.best_profit) {
      out.best_profit = std::move(q);
      out.first_best = Bundle(t);
    }
  }
  return out;
}

}  // namespace detail

// All bundles attaining the maximum profit, in ascending bitmask order.
inline std::vector<Bundle> demand_set(const Valuation& v, const PriceVector& p) {
  if (p.item_count() != v.item_count())
    throw std::invalid_argument("demand: price vector size does not match the item count");
  const auto best = detail::best_response(v, p);
  std::vector<Bundle> out;
  const std::uint32_t n = std::uint32_t{1} << v.item_count();
  for (std::uint32_t t = 0; t < n; ++t)
    if (profit(v, Bundle(t), p) == best.best_profit) out.push_back(Bundle(t));
  return out;
}

struct EquilibriumWitness {
  enum class Kind { PricedUnallocatedItem, ProfitableDeviation };
  Kind kind = Kind::ProfitableDeviation;
  int item = -1;        // priced-unallocated witness
  int player = -1;      // deviation witness
  Bundle deviation{};   // smallest profit-maximizing bundle differing from the assigned one
  Rational profit_gap;  // deviation profit minus equilibrium profit (> 0)
};

struct EquilibriumCertificate {
  Allocation allocation;
  PriceVector prices;
  Rational alpha;
  bool valid = false;
  std::optional<EquilibriumWitness> witness;
};

// Checks the two endowed-equilibrium conditions exactly, with weak
// inequalities: every player's assigned bundle maximizes endowed profit, and
// unallocated items are priced at zero.  Ties do not invalidate.
inline EquilibriumCertificate verify_endowed_equilibrium(const Instance& inst,
                                                         const Allocation& a,
                                                         const PriceVector& p,
                                                         const Rational& alpha) {
  check_allocation(inst, a);
  if (p.item_count() != inst.item_count())
    throw std::invalid_argument("verify: price vector size does not match the instance");
  if (alpha < 0) throw std::domain_error("verify: alpha must be nonnegative");

  EquilibriumCertificate cert{a, p, alpha, true, std::nullopt};

  for (int j = 0; j < inst.item_count(); ++j) {
    if (a.owner(j) == kUnallocated && p.price(j) != 0) {
      EquilibriumWitness w;
      w.kind = EquilibriumWitness::Kind::PricedUnallocatedItem;
      w.item = j;
      cert.valid = false;
      cert.witness = w;
      return cert;
    }
  }

  for (int i = 0; i < inst.player_count(); ++i) {
    const Bundle assigned = a.bundle_of(i);
    const Valuation endowed = endow(inst.valuation(i), assigned, alpha);
    const Rational own = profit(endowed, assigned, p);
    const auto best = detail::best_response(endowed, p);
    if (best.best_profit > own) {
      EquilibriumWitness w;
      w.kind = EquilibriumWitness::Kind::ProfitableDeviation;
      w.player = i;
      w.deviation = best.first_best;
      w.profit_gap = best.best_profit - own;
      cert.valid = false;
      cert.witness = w;
      return cert;
    }
  }
  return cert;
}

struct MarginalProfile {
  std::vector<Rational> contribution;  // q_j; zero for unallocated items
  Bundle zero_set;                     // Z = { j : q_j = 0 }
};

inline MarginalProfile marginal_profile(const Instance& inst, const Allocation& a) {
  check_allocation(inst, a);
  MarginalProfile out;
  out.contribution.assign(inst.item_count(), Rational(0));
  for (int j = 0; j < inst.item_count(); ++j) {
    const int i = a.owner(j);
    if (i != kUnallocated) {
      const Bundle s = a.bundle_of(i);
      out.contribution[j] = inst.valuation(i).marginal(Bundle::single(j), s.without(j));
    }
    if (out.contribution[j] == 0) out.zero_set = out.zero_set.with(j);
  }
  return out;
}

// Maximal: no player's value grows by absorbing the zero-contribution set Z.
inline bool is_maximal(const Instance& inst, const Allocation& a) {
  const auto profile = marginal_profile(inst, a);
  for (int i = 0; i < inst.player_count(); ++i) {
    const Bundle s = a.bundle_of(i);
    if (inst.valuation(i).value(s | profile.zero_set) != inst.valuation(i).value(s)) return false;
  }
  return true;
}

struct SupportPlan {
  PriceVector prices;
  Rational alpha;
};

// Universal support for maximal allocations: price 2*OPTbar on every item
// with positive marginal contribution, zero on Z, and
// alpha = 20*m*OPTbar / min q_j with OPTbar = n * max_i v_i(M).  When every
// item has zero contribution, zero prices support the allocation at any
// alpha; alpha = 2 is returned as the canonical choice.  Returns nullopt for
// non-maximal allocations, which no alpha supports.
inline std::optional<SupportPlan> support_construct(const Instance& inst, const Allocation& a) {
  if (!is_maximal(inst, a)) return std::nullopt;
  const auto profile = marginal_profile(inst, a);
  const Bundle everything = Bundle::full(inst.item_count());
  Rational max_value = 0;
  for (const auto& v : inst.valuations()) {
    Rational value = v.value(everything);
    if (value > max_value) max_value = std::move(value);
  }
  const Rational opt_bar = Rational(inst.player_count()) * max_value;

  const Bundle positive = everything - profile.zero_set;
  if (positive.is_empty())
    return SupportPlan{PriceVector::zeros(inst.item_count()), Rational(2)};

  std::optional<Rational> min_contribution;
  for (int j : positive.items())
    if (!min_contribution || profile.contribution[j] < *min_contribution)
      min_contribution = profile.contribution[j];

  std::vector<Rational> prices(inst.item_count(), Rational(0));
  for (int j : positive.items()) prices[j] = 2 * opt_bar;
  const Rational alpha = 20 * inst.item_count() * opt_bar / *min_contribution;
  return SupportPlan{PriceVector(std::move(prices)), alpha};
}

// Sequential maximal construction: each player in turn takes the remaining
// items and drops zero-marginal ones (ascending index, rescanning after each
// drop) until every kept item contributes.  Uses O(n * m^2) value queries.
inline Allocation greedy_maximal(const Instance& inst) {
  const int m = inst.item_count();
  Allocation out = Allocation::none(m);
  Bundle remaining = Bundle::full(m);
  for (int i = 0; i < inst.player_count(); ++i) {
    Bundle s = remaining;
    bool dropped = true;
    while (dropped && !s.is_empty()) {
      dropped = false;
      for (int j : s.items()) {
        if (inst.valuation(i).marginal(Bundle::single(j), s.without(j)) == 0) {
          s = s.without(j);
          dropped = true;
          break;
        }
      }
    }
    for (int j : s.items()) out.assign(j, i);
    remaining = remaining - s;
  }
  return out;
}

}  // namespace endowkit

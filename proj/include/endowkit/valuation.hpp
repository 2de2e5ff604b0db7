#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "endowkit/bundle.hpp"
#include "endowkit/rational.hpp"

namespace endowkit {

enum class ValuationClass {
  Explicit,
  Additive,
  BudgetAdditive,
  UnitDemand,
  Xos,
  GraphCut,
  Endowed,
  Perturbed,
};

inline const char* to_string(ValuationClass c) {
  switch (c) {
    case ValuationClass::Explicit: return "explicit";
    case ValuationClass::Additive: return "additive";
    case ValuationClass::BudgetAdditive: return "budget-additive";
    case ValuationClass::UnitDemand: return "unit-demand";
    case ValuationClass::Xos: return "xos";
    case ValuationClass::GraphCut: return "graph-cut";
    case ValuationClass::Endowed: return "endowed";
    case ValuationClass::Perturbed: return "perturbed";
  }
  return "?";
}

struct GraphEdge {
  int u = 0;
  int v = 0;
  Rational weight;
};

// A combinatorial valuation: a set function over bundles of `item_count`
// items with a declared structural class.  Immutable after construction;
// safe to share across threads for read-only queries.
//
// Every class except Explicit is monotone and normalized by construction
// (given nonnegative inputs).  Explicit tables are validated unless the
// caller opts out for deliberately pathological fixtures.  Endowed wrappers
// with alpha < 1 may be non-monotone; that is inherent to the transform.
class Valuation {
 public:
  struct Explicit {
    std::vector<Rational> table;  // indexed by bundle bitmask, size 2^m
  };
  struct Additive {
    std::vector<Rational> values;  // v(S) = sum of per-item values
  };
  struct BudgetAdditive {
    std::vector<Rational> values;  // v(S) = min(budget, sum)
    Rational budget;
  };
  struct UnitDemand {
    std::vector<Rational> values;  // v(S) = max over items in S
  };
  struct Xos {
    std::vector<std::vector<Rational>> clauses;  // v(S) = max clause sum
  };
  struct GraphCut {
    std::vector<GraphEdge> edges;  // v(S) = weight of edges touching S
  };
  struct Endowed {
    std::shared_ptr<const Valuation> inner;
    Bundle endowment;
    Rational alpha;  // v(T) + (alpha-1) * inner(endowment & T)
  };
  struct Perturbed {
    std::shared_ptr<const Valuation> inner;
    Rational bonus;  // v(T) = inner(T) + |T| * bonus
  };

  using Payload = std::variant<Explicit, Additive, BudgetAdditive, UnitDemand, Xos, GraphCut,
                               Endowed, Perturbed>;

  static Valuation explicit_table(int item_count, std::vector<Rational> table,
                                  bool validate = true) {
    check_item_count(item_count);
    if (table.size() != (std::size_t{1} << item_count))
      throw std::invalid_argument("explicit valuation: table must have 2^m entries");
    if (validate) {
      if (table[0] != 0)
        throw std::invalid_argument("explicit valuation: not normalized, v(empty) != 0");
      for (std::uint32_t t = 0; t < table.size(); ++t) {
        for (int j = 0; j < item_count; ++j) {
          if ((t >> j) & 1u) continue;
          if (table[t] > table[t | (std::uint32_t{1} << j)])
            throw std::invalid_argument("explicit valuation: not monotone");
        }
      }
    }
    return Valuation(item_count, Explicit{std::move(table)});
  }

  static Valuation additive(std::vector<Rational> values) {
    check_values(values);
    const int m = static_cast<int>(values.size());
    return Valuation(m, Additive{std::move(values)});
  }

  static Valuation budget_additive(std::vector<Rational> values, Rational budget) {
    check_values(values);
    if (budget < 0) throw std::invalid_argument("budget-additive valuation: negative budget");
    const int m = static_cast<int>(values.size());
    return Valuation(m, BudgetAdditive{std::move(values), std::move(budget)});
  }

  static Valuation unit_demand(std::vector<Rational> values) {
    check_values(values);
    const int m = static_cast<int>(values.size());
    return Valuation(m, UnitDemand{std::move(values)});
  }

  static Valuation xos(int item_count, std::vector<std::vector<Rational>> clauses) {
    check_item_count(item_count);
    for (const auto& clause : clauses) {
      if (clause.size() != static_cast<std::size_t>(item_count))
        throw std::invalid_argument("xos valuation: clause length must equal item count");
      for (const auto& value : clause)
        if (value < 0) throw std::invalid_argument("xos valuation: negative clause value");
    }
    return Valuation(item_count, Xos{std::move(clauses)});
  }

  static Valuation graph_cut(int item_count, std::vector<GraphEdge> edges) {
    check_item_count(item_count);
    for (const auto& e : edges) {
      if (e.u < 0 || e.u >= item_count || e.v < 0 || e.v >= item_count)
        throw std::invalid_argument("graph-cut valuation: edge endpoint out of range");
      if (e.weight < 0) throw std::invalid_argument("graph-cut valuation: negative edge weight");
    }
    return Valuation(item_count, GraphCut{std::move(edges)});
  }

  int item_count() const { return item_count_; }

  ValuationClass cls() const {
    return static_cast<ValuationClass>(payload_.index());
  }

  const Payload& payload() const { return payload_; }

  // v(T); rejects bundles with bits at or beyond item_count.
  Rational value(Bundle t) const {
    check_bundle(t);
    return value_unchecked(t);
  }

  // v(X|Y) = v(X ∪ Y) − v(Y)
  Rational marginal(Bundle x, Bundle y) const { return value(x | y) - value(y); }

 private:
  friend Valuation endow(const Valuation&, Bundle, const Rational&);
  friend Valuation perturb(const Valuation&, const Rational&);

  Valuation(int item_count, Payload payload)
      : item_count_(item_count), payload_(std::move(payload)) {}

  static void check_item_count(int item_count) {
    if (item_count < 1 || item_count > kMaxItems)
      throw std::length_error("valuation: item count must be between 1 and 24");
  }

  static void check_values(const std::vector<Rational>& values) {
    check_item_count(static_cast<int>(values.size()));
    for (const auto& value : values)
      if (value < 0) throw std::invalid_argument("valuation: negative per-item value");
  }

  void check_bundle(Bundle t) const {
    if (t.bits >> item_count_)
      throw std::domain_error("bundle uses item indices at or beyond the item count");
  }

  Rational value_unchecked(Bundle t) const {
    switch (cls()) {
      case ValuationClass::Explicit:
        return std::get<Explicit>(payload_).table[t.bits];
      case ValuationClass::Additive: {
        const auto& values = std::get<Additive>(payload_).values;
        Rational sum = 0;
        for (int j : t.items()) sum += values[j];
        return sum;
      }
      case ValuationClass::BudgetAdditive: {
        const auto& data = std::get<BudgetAdditive>(payload_);
        Rational sum = 0;
        for (int j : t.items()) sum += data.values[j];
        return sum < data.budget ? sum : data.budget;
      }
      case ValuationClass::UnitDemand: {
        const auto& values = std::get<UnitDemand>(payload_).values;
        Rational best = 0;
        for (int j : t.items())
          if (values[j] > best) best = values[j];
        return best;
      }
      case ValuationClass::Xos: {
        const auto& clauses = std::get<Xos>(payload_).clauses;
        Rational best = 0;
        for (const auto& clause : clauses) {
          Rational sum = 0;
          for (int j : t.items()) sum += clause[j];
          if (sum > best) best = sum;
        }
        return best;
      }
      case ValuationClass::GraphCut: {
        const auto& edges = std::get<GraphCut>(payload_).edges;
        Rational sum = 0;
        for (const auto& e : edges)
          if (t.contains(e.u) || t.contains(e.v)) sum += e.weight;
        return sum;
      }
      case ValuationClass::Endowed: {
        const auto& data = std::get<Endowed>(payload_);
        return data.inner->value_unchecked(t) +
               (data.alpha - 1) * data.inner->value_unchecked(data.endowment & t);
      }
      case ValuationClass::Perturbed: {
        const auto& data = std::get<Perturbed>(payload_);
        return data.inner->value_unchecked(t) + t.size() * data.bonus;
      }
    }
    throw std::logic_error("valuation: unknown class");
  }

  int item_count_;
  Payload payload_;
};

// The endowment transform around bundle `endowment` at intensity `alpha`.
// Composing endowed wrappers nests the transform.
inline Valuation endow(const Valuation& v, Bundle endowment, const Rational& alpha) {
  if (alpha < 0) throw std::domain_error("endow: alpha must be nonnegative");
  if (endowment.bits >> v.item_count())
    throw std::domain_error("endow: endowment uses item indices beyond the item count");
  return Valuation(v.item_count(),
                   Valuation::Endowed{std::make_shared<Valuation>(v), endowment, alpha});
}

// Adds a per-item bonus: v(T) + |T| * bonus.  Preserves subadditivity.
inline Valuation perturb(const Valuation& v, const Rational& bonus) {
  if (bonus < 0) throw std::domain_error("perturb: bonus must be nonnegative");
  return Valuation(v.item_count(), Valuation::Perturbed{std::make_shared<Valuation>(v), bonus});
}

}  // namespace endowkit

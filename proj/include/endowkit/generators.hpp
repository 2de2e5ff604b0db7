#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "endowkit/allocation.hpp"
#include "endowkit/instance.hpp"
#include "endowkit/properties.hpp"
#include "endowkit/rational.hpp"
#include "endowkit/valuation.hpp"

namespace endowkit {

// Two players, four items {a,b,c,d} = {0,1,2,3}.  Singletons are worth 1,
// bundles of three or more are worth 2, and the pair values realize the
// integrality gap of 6/5 for two submodular players.
inline Instance gen_feige_vondrak() {
  const Rational two(2), four_thirds = make_rational(4, 3), five_thirds = make_rational(5, 3);
  const std::uint32_t ab = 0b0011, cd = 0b1100, ac = 0b0101, bd = 0b1010, ad = 0b1001,
                      bc = 0b0110;
  auto build = [&](bool alice) {
    std::vector<Rational> table(16, Rational(0));
    for (std::uint32_t s = 1; s < 16; ++s) {
      const int size = std::popcount(s);
      if (size == 1) table[s] = 1;
      if (size >= 3) table[s] = 2;
    }
    table[ab] = table[cd] = alice ? two : four_thirds;
    table[ac] = table[bd] = alice ? four_thirds : two;
    table[ad] = table[bc] = five_thirds;
    return Valuation::explicit_table(4, std::move(table));
  };
  return Instance(4, {build(true), build(false)}, "feige-vondrak");
}

// Two identical XOS players over three identical items, built from the
// explicit clause list: a unit clause per item, a clause per pair at
// 1/2 + 1/(24a^2) each, and one clause (1/2, 1/2, 1/(3a)).  The symmetric
// values come out to v(1)=1, v(2)=1+1/(12a^2), v(3)=1+1/(3a), and no
// allocation of the instance is supported by the alpha it was built with.
inline Instance gen_xos_three_items(const Rational& alpha) {
  if (alpha <= 1) throw std::domain_error("xos instance: requires alpha > 1");
  const Rational half = make_rational(1, 2);
  const Rational pair_entry = half + 1 / (24 * alpha * alpha);
  const Rational third_entry = 1 / (3 * alpha);
  std::vector<std::vector<Rational>> clauses;
  for (int j = 0; j < 3; ++j) {
    std::vector<Rational> clause(3, Rational(0));
    clause[j] = 1;
    clauses.push_back(std::move(clause));
  }
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      std::vector<Rational> clause(3, Rational(0));
      clause[j] = clause[k] = pair_entry;
      clauses.push_back(std::move(clause));
    }
  clauses.push_back({half, half, third_entry});
  const Valuation v = Valuation::xos(3, clauses);
  return Instance(3, {v, v}, "xos-three-items");
}

// Four budget-additive players over items {x1,x2,y1,y2,c} = {0..4}.
// a-players have budget 1, b-players budget 2+eps; b-players value item c
// at 2.  The endowment gap of the instance is at least 3/(2+eps/2).
inline Instance gen_budget_additive(const Rational& epsilon) {
  if (epsilon <= 0 || epsilon >= 1)
    throw std::domain_error("budget-additive instance: requires 0 < epsilon < 1");
  const Rational one(1), zero(0), big_budget = 2 + epsilon;
  const Valuation a1 = Valuation::budget_additive({one, one, zero, zero, zero}, one);
  const Valuation a2 = Valuation::budget_additive({zero, zero, one, one, zero}, one);
  const Valuation b1 = Valuation::budget_additive({one, one, zero, zero, Rational(2)}, big_budget);
  const Valuation b2 = Valuation::budget_additive({zero, zero, one, one, Rational(2)}, big_budget);
  return Instance(5, {a1, a2, b1, b2}, "budget-additive");
}

// Tightness construction for the local-optimum support bound: four
// submodular players over 2k+1 items, X = {0..k-1}, Y = {k..2k-1}, c = 2k,
// with eps = 1/k^2.  Unit-demand a-players want one item of their block at
// 1/k; b-players add a per-item bonus eps on top of a budget-1 valuation
// that prices their block at 1/k per item and item c at 1.
inline Instance gen_local_opt_tightness(int k) {
  if (k < 2) throw std::domain_error("tightness instance: requires k >= 2");
  const int m = 2 * k + 1;
  if (m > kMaxItems) throw std::length_error("tightness instance: 2k+1 exceeds the item cap");
  const Rational share = make_rational(1, k);
  const Rational eps = make_rational(1, static_cast<long long>(k) * k);
  std::vector<Rational> a1_values(m, Rational(0)), a2_values(m, Rational(0)),
      b1_values(m, Rational(0)), b2_values(m, Rational(0));
  for (int j = 0; j < k; ++j) {
    a1_values[j] = share;
    b1_values[j] = share;
    a2_values[k + j] = share;
    b2_values[k + j] = share;
  }
  b1_values[2 * k] = 1;
  b2_values[2 * k] = 1;
  const Valuation a1 = Valuation::unit_demand(std::move(a1_values));
  const Valuation a2 = Valuation::unit_demand(std::move(a2_values));
  const Valuation b1 = perturb(Valuation::budget_additive(std::move(b1_values), Rational(1)), eps);
  const Valuation b2 = perturb(Valuation::budget_additive(std::move(b2_values), Rational(1)), eps);
  return Instance(m, {a1, a2, b1, b2}, "tightness-k" + std::to_string(k));
}

// The unique-up-to-symmetry local optimum of the tightness instance:
// a1 <- {x1}, b1 <- X u {c} - {x1}, b2 <- Y, a2 <- nothing.
inline Allocation tightness_local_optimum(int k) {
  const int m = 2 * k + 1;
  std::vector<int> owners(m, 2);
  owners[0] = 0;
  for (int j = 0; j < k; ++j) owners[k + j] = 3;
  return Allocation(std::move(owners));
}

struct SupportedAllocation {
  Allocation allocation;
  PriceVector prices;
  Rational alpha;
};

// The alternative allocation of the tightness construction together with its
// stated price vector (p_c = 1/k + eps, p_x = eps, p_y = 1/(2k) + eps,
// p_{y1} = 1/k + eps) at alpha = 3/2 + eps.  The prices verify for k = 2
// only: from k = 3 the bundle X beats X u {c} - {x1} under them.  The
// allocation itself is supported at 3/2 + eps for every k; ask
// find_supporting_prices for a working vector.
inline SupportedAllocation tightness_alternative(int k) {
  const int m = 2 * k + 1;
  const Rational share = make_rational(1, k);
  const Rational eps = make_rational(1, static_cast<long long>(k) * k);
  std::vector<int> owners(m, 2);
  owners[0] = 0;
  owners[k] = 1;  // y1 to a2
  for (int j = 1; j < k; ++j) owners[k + j] = 3;
  std::vector<Rational> prices(m);
  for (int j = 0; j < k; ++j) prices[j] = eps;
  prices[k] = share + eps;
  for (int j = 1; j < k; ++j) prices[k + j] = make_rational(1, 2 * k) + eps;
  prices[2 * k] = share + eps;
  return SupportedAllocation{Allocation(std::move(owners)), PriceVector(std::move(prices)),
                             make_rational(3, 2) + eps};
}

// n identical unit-demand players, n identical items, value 1.  Admits a
// Walrasian equilibrium (all prices zero) but no endowed equilibrium at any
// alpha < 1.
inline Instance gen_unit_demand_identical(int n) {
  if (n < 1) throw std::domain_error("unit-demand instance: requires n >= 1");
  if (n > kMaxItems) throw std::length_error("unit-demand instance: n exceeds the item cap");
  const Valuation v = Valuation::unit_demand(std::vector<Rational>(n, Rational(1)));
  return Instance(n, std::vector<Valuation>(n, v), "unit-demand-" + std::to_string(n));
}

struct WeightedGraph {
  int vertex_count = 0;
  std::vector<GraphEdge> edges;
};

// Two identical players whose value for S is the total weight of edges
// touching S.  The welfare of (S, V-S) is the total edge weight plus the
// cut weight, so auction local optima are exactly locally optimal cuts.
inline Instance gen_maxcut_reduction(const WeightedGraph& graph) {
  if (graph.vertex_count < 1 || graph.vertex_count > 16)
    throw std::length_error("max-cut instance: vertex count must be between 1 and 16");
  for (const auto& e : graph.edges) {
    if (e.weight < 0) throw std::domain_error("max-cut instance: negative edge weight");
    if (e.u == e.v) throw std::invalid_argument("max-cut instance: self-loop");
  }
  const Valuation v = Valuation::graph_cut(graph.vertex_count, graph.edges);
  return Instance(graph.vertex_count, {v, v}, "maxcut");
}

using SubsetLabels = std::map<Bundle, Rational>;

namespace detail {
inline Rational label_for(const SubsetLabels& labels, Bundle s) {
  const auto it = labels.find(s);
  return it == labels.end() ? Rational(0) : it->second;
}
}  // namespace detail

// Odd-graph local-search family over m = 2k+1 items: v(S) = |S| up to size
// k, then k + 1/2 + c_S at size k+1, then k+1.  Labels live in [0, 1/2) and
// attach to (k+1)-subsets; both players share them, making auction local
// optima correspond to local maxima of the labeled odd graph.
inline Instance gen_odd_graph_family(int k, const SubsetLabels& labels) {
  if (k < 1) throw std::domain_error("odd-graph instance: requires k >= 1");
  const int m = 2 * k + 1;
  if (m > 15) throw std::length_error("odd-graph instance: 2k+1 must stay at or below 15");
  const Rational half = make_rational(1, 2);
  for (const auto& [subset, label] : labels) {
    if (subset.size() != k + 1)
      throw std::invalid_argument("odd-graph instance: labels must key (k+1)-subsets");
    if (subset.bits >> m) throw std::domain_error("odd-graph instance: label subset out of range");
    if (label < 0 || label >= half)
      throw std::domain_error("odd-graph instance: labels must lie in [0, 1/2)");
  }
  std::vector<Rational> table(std::size_t{1} << m);
  for (std::uint32_t s = 0; s < table.size(); ++s) {
    const int size = std::popcount(s);
    if (size <= k)
      table[s] = size;
    else if (size == k + 1)
      table[s] = k + half + detail::label_for(labels, Bundle(s));
    else
      table[s] = k + 1;
  }
  const Valuation v = Valuation::explicit_table(m, std::move(table));
  return Instance(m, {v, v}, "odd-graph-k" + std::to_string(k));
}

// Communication variant with per-player labels: the size-k level reads the
// label of the complement, so v1(S) + v2(M-S) is symmetric in S.  Labels
// must lie in [1/8, 1/4]: the upper end keeps the size-(k+1) -> (k+2)
// marginals nonnegative, and the floor keeps the diminishing-returns
// inequality c_{T+j} + c_{T+j'} >= c_{M-T} across the size-k level (labels
// capped at 1/4 alone admit lattice violations).  Any label function squashes
// affinely into this window without reordering label sums.  Missing keys
// default to the floor of 1/8.
inline Instance gen_odd_graph_family_comm(int k, const SubsetLabels& labels_a,
                                          const SubsetLabels& labels_b) {
  if (k < 1) throw std::domain_error("odd-graph instance: requires k >= 1");
  const int m = 2 * k + 1;
  if (m > 15) throw std::length_error("odd-graph instance: 2k+1 must stay at or below 15");
  const Rational half = make_rational(1, 2), quarter = make_rational(1, 4),
                 eighth = make_rational(1, 8), three_quarters = make_rational(3, 4);
  auto check = [&](const SubsetLabels& labels) {
    for (const auto& [subset, label] : labels) {
      if (subset.size() != k + 1)
        throw std::invalid_argument("odd-graph instance: labels must key (k+1)-subsets");
      if (subset.bits >> m)
        throw std::domain_error("odd-graph instance: label subset out of range");
      if (label < eighth || label > quarter)
        throw std::domain_error("odd-graph instance: labels must lie in [1/8, 1/4]");
    }
  };
  check(labels_a);
  check(labels_b);
  const Bundle everything = Bundle::full(m);
  auto label_or_floor = [&](const SubsetLabels& labels, Bundle s) {
    const auto it = labels.find(s);
    return it == labels.end() ? eighth : it->second;
  };
  auto build = [&](const SubsetLabels& labels) {
    std::vector<Rational> table(std::size_t{1} << m);
    for (std::uint32_t s = 0; s < table.size(); ++s) {
      const int size = std::popcount(s);
      if (size <= k - 1)
        table[s] = size;
      else if (size == k)
        table[s] = k - 1 + half + label_or_floor(labels, everything - Bundle(s));
      else if (size == k + 1)
        table[s] = k - 1 + three_quarters + label_or_floor(labels, Bundle(s));
      else
        table[s] = k;
    }
    return Valuation::explicit_table(m, std::move(table));
  };
  return Instance(m, {build(labels_a), build(labels_b)},
                  "odd-graph-comm-k" + std::to_string(k));
}

// Three items, two players, value a function of bundle size only: player 1
// is worth 1 on any nonempty bundle, player 2 is worth 1/2.  Allocating
// everything to player 1 maximizes welfare yet is unsupportable by any
// alpha.  The sizes the construction leaves open are filled flat.
inline Instance gen_example_opt_not_supported() {
  std::vector<Rational> p1(8, Rational(1)), p2(8, make_rational(1, 2));
  p1[0] = 0;
  p2[0] = 0;
  return Instance(3,
                  {Valuation::explicit_table(3, std::move(p1)),
                   Valuation::explicit_table(3, std::move(p2))},
                  "opt-not-supported");
}

namespace detail {

// mt19937_64 has a standardized stream, so seeded instances are identical
// across platforms.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  std::uint64_t word() { return engine(); }
  int below(int n) { return static_cast<int>(word() % static_cast<std::uint64_t>(n)); }
};

}  // namespace detail

// Random weighted coverage function: items cover random subsets of a small
// universe with integer weights, giving a monotone submodular valuation.
inline Instance gen_random_submodular(std::uint64_t seed, int n, int m) {
  if (n < 1) throw std::domain_error("random instance: requires n >= 1");
  if (m < 1 || m > 8) throw std::length_error("random instance: m must be between 1 and 8");
  detail::Rng rng(seed);
  std::vector<Valuation> valuations;
  for (int i = 0; i < n; ++i) {
    for (int attempt = 0;; ++attempt) {
      const int universe = m + rng.below(m + 1);
      std::vector<Rational> element_weight;
      for (int e = 0; e < universe; ++e) element_weight.push_back(rng.below(10));
      std::vector<std::uint32_t> covers(m);
      for (int j = 0; j < m; ++j)
        covers[j] = static_cast<std::uint32_t>(rng.word()) & ((std::uint32_t{1} << universe) - 1);
      std::vector<Rational> table(std::size_t{1} << m, Rational(0));
      for (std::uint32_t s = 1; s < table.size(); ++s) {
        std::uint32_t covered = 0;
        for (int j = 0; j < m; ++j)
          if ((s >> j) & 1u) covered |= covers[j];
        Rational total = 0;
        for (int e = 0; e < universe; ++e)
          if ((covered >> e) & 1u) total += element_weight[e];
        table[s] = std::move(total);
      }
      Valuation v = Valuation::explicit_table(m, std::move(table));
      if (is_submodular(v)) {
        valuations.push_back(std::move(v));
        break;
      }
      if (attempt >= 10)
        throw std::logic_error("random instance: coverage construction failed the checker");
    }
  }
  return Instance(m, std::move(valuations), "random-submodular-" + std::to_string(seed));
}

// Random max-of-sums clipped by a budget; the cap keeps subadditivity while
// usually breaking the XOS structure.
inline Instance gen_random_subadditive(std::uint64_t seed, int n, int m) {
  if (n < 1) throw std::domain_error("random instance: requires n >= 1");
  if (m < 1 || m > 8) throw std::length_error("random instance: m must be between 1 and 8");
  detail::Rng rng(seed);
  std::vector<Valuation> valuations;
  for (int i = 0; i < n; ++i) {
    for (int attempt = 0;; ++attempt) {
      const int clause_count = 1 + rng.below(3);
      std::vector<std::vector<Rational>> clauses;
      Rational max_singleton = 0;
      for (int c = 0; c < clause_count; ++c) {
        std::vector<Rational> clause;
        for (int j = 0; j < m; ++j) {
          clause.push_back(rng.below(8));
          if (clause.back() > max_singleton) max_singleton = clause.back();
        }
        clauses.push_back(std::move(clause));
      }
      const Rational budget = max_singleton + rng.below(6);
      const Valuation raw = Valuation::xos(m, std::move(clauses));
      std::vector<Rational> table;
      for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s) {
        Rational value = raw.value(Bundle(s));
        table.push_back(value < budget ? std::move(value) : budget);
      }
      Valuation v = Valuation::explicit_table(m, std::move(table));
      if (is_subadditive(v)) {
        valuations.push_back(std::move(v));
        break;
      }
      if (attempt >= 10)
        throw std::logic_error("random instance: clipped max-of-sums failed the checker");
    }
  }
  return Instance(m, std::move(valuations), "random-subadditive-" + std::to_string(seed));
}

// Random labels in [0, 1/2) for the odd-graph family.
inline SubsetLabels gen_random_odd_graph_labels(int k, std::uint64_t seed) {
  const int m = 2 * k + 1;
  detail::Rng rng(seed);
  SubsetLabels labels;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << m); ++s)
    if (std::popcount(s) == k + 1) labels[Bundle(s)] = make_rational(rng.below(50), 100);
  return labels;
}

// Random weighted graph for the max-cut reduction.
inline WeightedGraph gen_random_graph(int vertices, std::uint64_t seed) {
  if (vertices < 2 || vertices > 16)
    throw std::length_error("random graph: vertex count must be between 2 and 16");
  detail::Rng rng(seed);
  WeightedGraph g{vertices, {}};
  for (int u = 0; u < vertices; ++u)
    for (int v = u + 1; v < vertices; ++v)
      if (rng.below(2) == 1) g.edges.push_back({u, v, Rational(rng.below(10))});
  return g;
}

}  // namespace endowkit

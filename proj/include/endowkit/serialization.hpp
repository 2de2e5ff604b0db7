#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "endowkit/allocation.hpp"
#include "endowkit/config_lp.hpp"
#include "endowkit/equilibrium.hpp"
#include "endowkit/generators.hpp"
#include "endowkit/instance.hpp"
#include "endowkit/local_search.hpp"
#include "endowkit/valuation.hpp"

// JSON wire formats.  Rationals are "p/q" strings (never decimals), bundles
// are sorted item-index arrays, allocations are per-item owner arrays with
// -1 for unallocated, explicit tables are keyed by bitmask integer.
namespace endowkit {

using Json = nlohmann::json;

inline Json rational_to_json(const Rational& r) { return format_rational(r); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw std::invalid_argument("json: rationals must be \"p/q\" strings");
  return parse_rational(j.get<std::string>());
}

inline Json bundle_to_json(Bundle b) { return Json(b.items()); }

inline Bundle bundle_from_json(const Json& j, int item_count) {
  if (!j.is_array()) throw std::invalid_argument("json: bundles must be item-index arrays");
  Bundle b;
  for (const auto& entry : j) {
    const int item = entry.get<int>();
    if (item < 0 || item >= item_count)
      throw std::domain_error("json: bundle item index out of range");
    b = b.with(item);
  }
  return b;
}

inline Json rational_vector_to_json(const std::vector<Rational>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(rational_to_json(v));
  return out;
}

inline std::vector<Rational> rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("json: expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& entry : j) out.push_back(rational_from_json(entry));
  return out;
}

inline Json valuation_to_json(const Valuation& v) {
  Json payload;
  switch (v.cls()) {
    case ValuationClass::Explicit: {
      const auto& data = std::get<Valuation::Explicit>(v.payload());
      Json table = Json::object();
      for (std::size_t s = 0; s < data.table.size(); ++s)
        table[std::to_string(s)] = rational_to_json(data.table[s]);
      payload = Json{{"table", std::move(table)}};
      break;
    }
    case ValuationClass::Additive:
      payload = Json{{"values", rational_vector_to_json(std::get<Valuation::Additive>(v.payload()).values)}};
      break;
    case ValuationClass::BudgetAdditive: {
      const auto& data = std::get<Valuation::BudgetAdditive>(v.payload());
      payload = Json{{"values", rational_vector_to_json(data.values)},
                     {"budget", rational_to_json(data.budget)}};
      break;
    }
    case ValuationClass::UnitDemand:
      payload = Json{{"values", rational_vector_to_json(std::get<Valuation::UnitDemand>(v.payload()).values)}};
      break;
    case ValuationClass::Xos: {
      const auto& data = std::get<Valuation::Xos>(v.payload());
      Json clauses = Json::array();
      for (const auto& clause : data.clauses) clauses.push_back(rational_vector_to_json(clause));
      payload = Json{{"clauses", std::move(clauses)}};
      break;
    }
    case ValuationClass::GraphCut: {
      const auto& data = std::get<Valuation::GraphCut>(v.payload());
      Json edges = Json::array();
      for (const auto& e : data.edges)
        edges.push_back(Json::array({e.u, e.v, rational_to_json(e.weight)}));
      payload = Json{{"edges", std::move(edges)}};
      break;
    }
    case ValuationClass::Endowed: {
      const auto& data = std::get<Valuation::Endowed>(v.payload());
      payload = Json{{"inner", valuation_to_json(*data.inner)},
                     {"endowment", bundle_to_json(data.endowment)},
                     {"alpha", rational_to_json(data.alpha)}};
      break;
    }
    case ValuationClass::Perturbed: {
      const auto& data = std::get<Valuation::Perturbed>(v.payload());
      payload = Json{{"inner", valuation_to_json(*data.inner)},
                     {"bonus", rational_to_json(data.bonus)}};
      break;
    }
  }
  return Json{{"class", to_string(v.cls())}, {"payload", std::move(payload)}};
}

inline Valuation valuation_from_json(const Json& j, int item_count) {
  const std::string cls = j.at("class").get<std::string>();
  const Json& payload = j.at("payload");
  if (cls == "explicit") {
    const Json& table_json = payload.at("table");
    std::vector<Rational> table(std::size_t{1} << item_count, Rational(0));
    if (!table_json.is_object() || table_json.size() != table.size())
      throw std::invalid_argument("json: explicit table must list all 2^m bitmask keys");
    for (const auto& [key, value] : table_json.items()) {
      const unsigned long mask = std::stoul(key);
      if (mask >= table.size()) throw std::domain_error("json: explicit table key out of range");
      table[mask] = rational_from_json(value);
    }
    return Valuation::explicit_table(item_count, std::move(table));
  }
  if (cls == "additive") return Valuation::additive(rational_vector_from_json(payload.at("values")));
  if (cls == "budget-additive")
    return Valuation::budget_additive(rational_vector_from_json(payload.at("values")),
                                      rational_from_json(payload.at("budget")));
  if (cls == "unit-demand")
    return Valuation::unit_demand(rational_vector_from_json(payload.at("values")));
  if (cls == "xos") {
    std::vector<std::vector<Rational>> clauses;
    for (const auto& clause : payload.at("clauses"))
      clauses.push_back(rational_vector_from_json(clause));
    return Valuation::xos(item_count, std::move(clauses));
  }
  if (cls == "graph-cut") {
    std::vector<GraphEdge> edges;
    for (const auto& e : payload.at("edges")) {
      if (!e.is_array() || e.size() != 3)
        throw std::invalid_argument("json: graph-cut edges must be [u, v, weight]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), rational_from_json(e[2])});
    }
    return Valuation::graph_cut(item_count, std::move(edges));
  }
  if (cls == "endowed") {
    Valuation inner = valuation_from_json(payload.at("inner"), item_count);
    return endow(inner, bundle_from_json(payload.at("endowment"), item_count),
                 rational_from_json(payload.at("alpha")));
  }
  if (cls == "perturbed") {
    Valuation inner = valuation_from_json(payload.at("inner"), item_count);
    return perturb(inner, rational_from_json(payload.at("bonus")));
  }
  throw std::invalid_argument("json: unknown valuation class '" + cls + "'");
}

inline Json instance_to_json(const Instance& inst) {
  Json players = Json::array();
  for (const auto& v : inst.valuations()) players.push_back(valuation_to_json(v));
  return Json{{"m", inst.item_count()}, {"label", inst.label()}, {"players", std::move(players)}};
}

inline Instance instance_from_json(const Json& j) {
  const int m = j.at("m").get<int>();
  if (m < 1 || m > kMaxItems) throw std::length_error("json: m must be between 1 and 24");
  std::vector<Valuation> valuations;
  for (const auto& player : j.at("players")) valuations.push_back(valuation_from_json(player, m));
  Instance inst(m, std::move(valuations), j.value("label", std::string{}));
  validate_instance(inst);
  return inst;
}

inline Json allocation_to_json(const Allocation& a) { return Json(a.owners()); }

inline Allocation allocation_from_json(const Json& j, const Instance& inst) {
  if (!j.is_array()) throw std::invalid_argument("json: allocations are owner arrays");
  Allocation a(j.get<std::vector<int>>());
  check_allocation(inst, a);
  return a;
}

inline Json prices_to_json(const PriceVector& p) { return rational_vector_to_json(p.prices()); }

inline PriceVector prices_from_json(const Json& j, const Instance& inst) {
  PriceVector p(rational_vector_from_json(j));
  if (p.item_count() != inst.item_count())
    throw std::invalid_argument("json: price vector length must equal m");
  return p;
}

inline Json certificate_to_json(const EquilibriumCertificate& cert) {
  Json witness;
  if (!cert.witness) {
    witness = nullptr;
  } else if (cert.witness->kind == EquilibriumWitness::Kind::PricedUnallocatedItem) {
    witness = Json{{"type", "priced-unallocated-item"}, {"item", cert.witness->item}};
  } else {
    witness = Json{{"type", "deviation"},
                   {"player", cert.witness->player},
                   {"bundle", bundle_to_json(cert.witness->deviation)},
                   {"profit_gap", rational_to_json(cert.witness->profit_gap)}};
  }
  return Json{{"valid", cert.valid},
              {"alpha", rational_to_json(cert.alpha)},
              {"allocation", allocation_to_json(cert.allocation)},
              {"prices", prices_to_json(cert.prices)},
              {"witness", std::move(witness)}};
}

inline Json fractional_solution_to_json(const FractionalSolution& x) {
  Json weights = Json::array();
  for (const auto& w : x.weights)
    weights.push_back(Json{{"player", w.player},
                           {"bundle", bundle_to_json(w.bundle)},
                           {"weight", rational_to_json(w.weight)}});
  return Json{{"objective", rational_to_json(x.objective)}, {"weights", std::move(weights)}};
}

inline FractionalSolution fractional_solution_from_json(const Json& j, const Instance& inst) {
  FractionalSolution x;
  x.objective = rational_from_json(j.at("objective"));
  for (const auto& w : j.at("weights"))
    x.weights.push_back({w.at("player").get<int>(), bundle_from_json(w.at("bundle"), inst.item_count()),
                         rational_from_json(w.at("weight"))});
  validate_fractional_solution(inst, x);
  return x;
}

inline Json trace_move_to_json(const LocalSearchTrace::Move& move) {
  return Json{{"item", move.item},
              {"from", move.from},
              {"to", move.to},
              {"delta", rational_to_json(move.welfare_delta)}};
}

inline Json gap_report_to_json(const GapReport& report, bool include_rows = true) {
  Json out{{"lp_value", rational_to_json(report.lp_value)},
           {"integral_opt", rational_to_json(report.integral_opt)},
           {"integral_opt_allocation", allocation_to_json(report.integral_opt_allocation)},
           {"integrality_gap", rational_to_json(report.integrality_gap)}};
  out["endowment_gap"] =
      report.endowment_gap ? Json(format_rational(*report.endowment_gap)) : Json(nullptr);
  out["endowment_gap_allocation"] =
      report.best_allocation ? allocation_to_json(*report.best_allocation) : Json(nullptr);
  if (include_rows) {
    Json rows = Json::array();
    for (const auto& row : report.rows) {
      Json entry{{"owners", allocation_to_json(row.allocation)},
                 {"welfare", rational_to_json(row.welfare)},
                 {"psi", rational_to_json(row.psi)},
                 {"maximal", row.maximal}};
      entry["min_alpha"] = row.supportable ? Json(format_rational(row.min_alpha))
                                           : Json("unsupportable");
      rows.push_back(std::move(entry));
    }
    out["allocations"] = std::move(rows);
  }
  return out;
}

// Canonical text form: sorted keys (the default object ordering), two-space
// indent, trailing newline.  generate -> parse -> generate is byte-stable.
inline std::string canonical_dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace endowkit

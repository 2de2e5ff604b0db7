// endowkit command-line driver: generate instances, run checks and solvers,
// emit JSON (or table) reports.  Exit status: 0 on success or a Valid
// verdict, 1 on Invalid / Infeasible / Unsupportable verdicts, 2 on input
// errors.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "endowkit/config_lp.hpp"
#include "endowkit/equilibrium.hpp"
#include "endowkit/generators.hpp"
#include "endowkit/local_search.hpp"
#include "endowkit/serialization.hpp"

namespace ek = endowkit;

namespace {

struct InstanceSource {
  std::string file;
  std::string generator;
  std::vector<std::string> params;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string graph_file;
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& params) {
  std::map<std::string, std::string> out;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--param expects key=value, got '" + p + "'");
    out[p.substr(0, eq)] = p.substr(eq + 1);
  }
  return out;
}

ek::Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file '" + path + "'");
  ek::Json j;
  in >> j;
  return j;
}

int param_int(const std::map<std::string, std::string>& params, const std::string& key,
              int fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : std::stoi(it->second);
}

ek::Rational param_rational(const std::map<std::string, std::string>& params,
                            const std::string& key, const ek::Rational& fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : ek::parse_rational(it->second);
}

ek::WeightedGraph graph_from_json(const ek::Json& j) {
  ek::WeightedGraph g;
  g.vertex_count = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 3)
      throw std::invalid_argument("graph file: edges must be [u, v, weight]");
    g.edges.push_back({e[0].get<int>(), e[1].get<int>(), ek::rational_from_json(e[2])});
  }
  return g;
}

ek::Instance resolve_generator(const InstanceSource& source) {
  const auto params = parse_params(source.params);
  const std::string& name = source.generator;
  if (name == "feige-vondrak") return ek::gen_feige_vondrak();
  if (name == "xos-three-items")
    return ek::gen_xos_three_items(param_rational(params, "alpha", ek::Rational(2)));
  if (name == "budget-additive")
    return ek::gen_budget_additive(param_rational(params, "epsilon", ek::make_rational(1, 100)));
  if (name == "tightness") return ek::gen_local_opt_tightness(param_int(params, "k", 2));
  if (name == "unit-demand") return ek::gen_unit_demand_identical(param_int(params, "n", 3));
  if (name == "opt-not-supported") return ek::gen_example_opt_not_supported();
  if (name == "maxcut") {
    if (!source.graph_file.empty())
      return ek::gen_maxcut_reduction(graph_from_json(load_json(source.graph_file)));
    return ek::gen_maxcut_reduction(
        ek::gen_random_graph(param_int(params, "vertices", 5), source.seed));
  }
  if (name == "odd-graph") {
    const int k = param_int(params, "k", 2);
    const auto labels = source.seed_set ? ek::gen_random_odd_graph_labels(k, source.seed)
                                        : ek::SubsetLabels{};
    return ek::gen_odd_graph_family(k, labels);
  }
  if (name == "random-submodular")
    return ek::gen_random_submodular(source.seed, param_int(params, "n", 2),
                                     param_int(params, "m", 4));
  if (name == "random-subadditive")
    return ek::gen_random_subadditive(source.seed, param_int(params, "n", 2),
                                      param_int(params, "m", 4));
  throw std::invalid_argument("unknown generator '" + name + "'");
}

ek::Instance load_instance(const InstanceSource& source) {
  if (!source.file.empty() && !source.generator.empty())
    throw std::invalid_argument("give either --instance or --generate, not both");
  if (!source.file.empty()) return ek::instance_from_json(load_json(source.file));
  if (!source.generator.empty()) return resolve_generator(source);
  throw std::invalid_argument("an instance is required: --instance FILE or --generate NAME");
}

// Inline "0,0,1,-1" owner list or @file.json.
ek::Allocation parse_allocation(const std::string& text, const ek::Instance& inst) {
  if (!text.empty() && text[0] == '@')
    return ek::allocation_from_json(load_json(text.substr(1)), inst);
  std::vector<int> owners;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) owners.push_back(std::stoi(part));
  ek::Allocation a(std::move(owners));
  ek::check_allocation(inst, a);
  return a;
}

ek::PriceVector parse_prices(const std::string& text, const ek::Instance& inst) {
  if (!text.empty() && text[0] == '@')
    return ek::prices_from_json(load_json(text.substr(1)), inst);
  std::vector<ek::Rational> prices;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ',')) prices.push_back(ek::parse_rational(part));
  ek::PriceVector p(std::move(prices));
  if (p.item_count() != inst.item_count())
    throw std::invalid_argument("price vector length must equal m");
  return p;
}

void add_source_options(CLI::App* cmd, InstanceSource& source) {
  cmd->add_option("--instance", source.file, "instance JSON file");
  cmd->add_option("--generate", source.generator, "generator name instead of a file");
  cmd->add_option("--param", source.params, "generator parameter key=value")->take_all();
  cmd->add_option("--seed", source.seed, "seed for random generators")
      ->each([&source](const std::string&) { source.seed_set = true; });
  cmd->add_option("--graph", source.graph_file, "graph JSON file for the maxcut generator");
}

void emit(const ek::Json& j) { std::cout << ek::canonical_dump(j); }

std::string owners_compact(const ek::Allocation& a) {
  std::string out = "[";
  for (int j = 0; j < a.item_count(); ++j) {
    if (j) out += ",";
    out += std::to_string(a.owner(j));
  }
  return out + "]";
}

void print_gap_table(const ek::GapReport& report) {
  std::cout << "lp value:        " << ek::format_rational(report.lp_value) << "\n";
  std::cout << "integral opt:    " << ek::format_rational(report.integral_opt) << "  at "
            << owners_compact(report.integral_opt_allocation) << "\n";
  std::cout << "integrality gap: " << ek::format_rational(report.integrality_gap) << "\n";
  std::cout << "endowment gap:   "
            << (report.endowment_gap ? ek::format_rational(*report.endowment_gap) : "unbounded")
            << "\n\n";
  std::cout << "allocation | welfare | psi | min alpha\n";
  for (const auto& row : report.rows) {
    if (!row.maximal) continue;  // unsupportable; keep the table at paper scale
    std::cout << owners_compact(row.allocation) << " | " << ek::format_rational(row.welfare)
              << " | " << ek::format_rational(row.psi) << " | "
              << (row.supportable ? ek::format_rational(row.min_alpha) : "unsupportable") << "\n";
  }
}

int run(int argc, char** argv) {
  CLI::App app{"combinatorial auctions with endowed bidders: equilibria, gaps, local search"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format: json or table")
      ->check(CLI::IsMember({"json", "table"}));

  InstanceSource source;

  auto* cmd_generate = app.add_subcommand("generate", "emit an instance as JSON");
  std::string generator_name;
  cmd_generate->add_option("name", generator_name, "generator name")->required();
  cmd_generate->add_option("--param", source.params, "generator parameter key=value")->take_all();
  cmd_generate->add_option("--seed", source.seed, "seed for random generators")
      ->each([&](const std::string&) { source.seed_set = true; });
  cmd_generate->add_option("--graph", source.graph_file, "graph JSON file (maxcut)");

  auto* cmd_check = app.add_subcommand("check", "run the structural class checkers");
  add_source_options(cmd_check, source);

  auto* cmd_search = app.add_subcommand("local-search", "run single-item local search");
  add_source_options(cmd_search, source);
  std::string initial_text;
  bool trace = false;
  cmd_search->add_option("--initial", initial_text, "starting allocation (owners or @file)");
  cmd_search->add_flag("--trace", trace, "emit one JSON line per improving move");

  auto* cmd_eq = app.add_subcommand("equilibrium", "verify or construct endowed equilibria");
  cmd_eq->require_subcommand(1);
  auto* cmd_verify = cmd_eq->add_subcommand("verify", "check an (allocation, prices, alpha) triple");
  add_source_options(cmd_verify, source);
  std::string allocation_text, prices_text, alpha_text = "1";
  cmd_verify->add_option("--allocation", allocation_text)->required();
  cmd_verify->add_option("--prices", prices_text)->required();
  cmd_verify->add_option("--alpha", alpha_text)->required();

  auto* cmd_support = cmd_eq->add_subcommand("support", "construct supporting prices");
  add_source_options(cmd_support, source);
  std::string support_allocation, support_method = "maximal", support_alpha = "2";
  cmd_support->add_option("--allocation", support_allocation)->required();
  cmd_support->add_option("--method", support_method, "maximal or local")
      ->check(CLI::IsMember({"maximal", "local"}));
  cmd_support->add_option("--alpha", support_alpha, "alpha for --method local (>= 2)");

  auto* cmd_lp = app.add_subcommand("lp", "configuration-LP solvers");
  cmd_lp->require_subcommand(1);
  auto* cmd_lp_solve = cmd_lp->add_subcommand("solve", "exact optimum of the configuration LP");
  add_source_options(cmd_lp_solve, source);

  auto* cmd_gap = app.add_subcommand("gap", "integrality and endowment gap report");
  add_source_options(cmd_gap, source);

  auto* cmd_alpha = app.add_subcommand("alpha-min", "minimal supporting alpha of an allocation");
  add_source_options(cmd_alpha, source);
  std::string alpha_allocation;
  bool no_routes = false;
  cmd_alpha->add_option("--allocation", alpha_allocation)->required();
  cmd_alpha->add_flag("--no-verify-routes", no_routes,
                      "skip the price-feasibility cross-check of the result");

  auto* cmd_round = app.add_subcommand("round", "two-player subadditive rounding");
  add_source_options(cmd_round, source);
  std::string solution_file;
  cmd_round->add_option("--solution", solution_file,
                        "fractional solution JSON (defaults to solving the LP)");

  auto* cmd_perturb = app.add_subcommand("perturb", "per-item perturbation gap amplification");
  add_source_options(cmd_perturb, source);
  std::string delta_text = "1/10";
  cmd_perturb->add_option("--delta", delta_text)->required();

  // let --format (given after a subcommand) reach the main app
  auto enable_fallthrough = [](CLI::App* cmd, auto&& self) -> void {
    cmd->fallthrough();
    for (auto* sub : cmd->get_subcommands({})) self(sub, self);
  };
  enable_fallthrough(&app, enable_fallthrough);

  CLI11_PARSE(app, argc, argv);
  const bool table = format == "table";

  if (cmd_generate->parsed()) {
    source.generator = generator_name;
    emit(ek::instance_to_json(resolve_generator(source)));
    return 0;
  }

  if (cmd_check->parsed()) {
    const auto inst = load_instance(source);
    const bool checkable = inst.item_count() <= ek::kMaxCheckItems;
    ek::Json players = ek::Json::array();
    for (int i = 0; i < inst.player_count(); ++i) {
      const auto& v = inst.valuation(i);
      ek::Json entry{{"class", ek::to_string(v.cls())},
                     {"normalized", static_cast<bool>(ek::is_normalized(v))}};
      if (checkable) {
        entry["monotone"] = static_cast<bool>(ek::is_monotone(v));
        entry["submodular"] = static_cast<bool>(ek::is_submodular(v));
        entry["subadditive"] = static_cast<bool>(ek::is_subadditive(v));
      }
      players.push_back(std::move(entry));
      if (table) {
        std::cout << "player " << i << ": " << ek::to_string(v.cls());
        if (checkable)
          std::cout << (ek::is_submodular(v) ? ", submodular" : "")
                    << (ek::is_subadditive(v) ? ", subadditive" : "") << "\n";
        else
          std::cout << " (checks skipped: m > 16)\n";
      }
    }
    if (!table)
      emit(ek::Json{{"m", inst.item_count()}, {"label", inst.label()}, {"players", players}});
    return 0;
  }

  if (cmd_search->parsed()) {
    const auto inst = load_instance(source);
    const auto initial = initial_text.empty() ? ek::Allocation::none(inst.item_count())
                                              : parse_allocation(initial_text, inst);
    const auto result = ek::local_search(inst, initial);
    if (trace)
      for (const auto& move : result.trace.moves)
        std::cout << ek::trace_move_to_json(move).dump() << "\n";
    emit(ek::Json{{"initial", ek::allocation_to_json(result.trace.initial)},
                  {"final", ek::allocation_to_json(result.allocation)},
                  {"welfare", ek::format_rational(ek::welfare(inst, result.allocation))},
                  {"moves", result.trace.moves.size()}});
    return 0;
  }

  if (cmd_verify->parsed()) {
    const auto inst = load_instance(source);
    const auto cert = ek::verify_endowed_equilibrium(
        inst, parse_allocation(allocation_text, inst), parse_prices(prices_text, inst),
        ek::parse_rational(alpha_text));
    emit(ek::certificate_to_json(cert));
    return cert.valid ? 0 : 1;
  }

  if (cmd_support->parsed()) {
    const auto inst = load_instance(source);
    const auto allocation = parse_allocation(support_allocation, inst);
    if (support_method == "maximal") {
      const auto plan = ek::support_construct(inst, allocation);
      if (!plan) {
        emit(ek::Json{{"maximal", false}, {"supported", false}});
        return 1;
      }
      const auto cert = ek::verify_endowed_equilibrium(inst, allocation, plan->prices, plan->alpha);
      emit(ek::Json{{"maximal", true},
                    {"supported", cert.valid},
                    {"alpha", ek::format_rational(plan->alpha)},
                    {"prices", ek::prices_to_json(plan->prices)},
                    {"certificate", ek::certificate_to_json(cert)}});
      return cert.valid ? 0 : 1;
    }
    const auto cert = ek::support_local_optimum(inst, allocation, ek::parse_rational(support_alpha));
    emit(ek::Json{{"supported", cert.valid},
                  {"alpha", ek::format_rational(cert.alpha)},
                  {"prices", ek::prices_to_json(cert.prices)},
                  {"certificate", ek::certificate_to_json(cert)}});
    return cert.valid ? 0 : 1;
  }

  if (cmd_lp_solve->parsed()) {
    const auto inst = load_instance(source);
    emit(ek::fractional_solution_to_json(ek::solve_config_lp(inst)));
    return 0;
  }

  if (cmd_gap->parsed()) {
    const auto inst = load_instance(source);
    const auto report = ek::endowment_gap_instance(inst);
    if (table)
      print_gap_table(report);
    else
      emit(ek::gap_report_to_json(report));
    return 0;
  }

  if (cmd_alpha->parsed()) {
    const auto inst = load_instance(source);
    const auto allocation = parse_allocation(alpha_allocation, inst);
    const auto result = ek::min_supporting_alpha(inst, allocation);
    ek::Json out{{"supportable", result.supportable}};
    if (result.supportable) {
      out["min_alpha"] = ek::format_rational(result.alpha);
      out["attained"] = result.attained;
      if (!no_routes) {
        const auto prices = ek::find_supporting_prices(inst, allocation, result.alpha);
        out["prices_feasible"] = prices.has_value();
        if (prices) {
          const auto cert =
              ek::verify_endowed_equilibrium(inst, allocation, *prices, result.alpha);
          out["prices"] = ek::prices_to_json(*prices);
          out["certificate"] = ek::certificate_to_json(cert);
        }
      }
    }
    emit(out);
    return result.supportable ? 0 : 1;
  }

  if (cmd_round->parsed()) {
    const auto inst = load_instance(source);
    const auto x = solution_file.empty()
                       ? ek::solve_config_lp(inst)
                       : ek::fractional_solution_from_json(load_json(solution_file), inst);
    const auto result = ek::round_two_player_subadditive(inst, x);
    emit(ek::Json{{"expected_welfare", ek::format_rational(result.expected_welfare)},
                  {"fractional_value", ek::format_rational(result.fractional_value)},
                  {"bound", ek::format_rational(result.bound)},
                  {"best_allocation", ek::allocation_to_json(result.best)},
                  {"best_welfare", ek::format_rational(result.best_welfare)}});
    return 0;
  }

  if (cmd_perturb->parsed()) {
    const auto inst = load_instance(source);
    const auto report = ek::perturbation_gap_check(inst, ek::parse_rational(delta_text));
    emit(ek::Json{{"epsilon", ek::format_rational(report.epsilon)},
                  {"base_integrality_gap", ek::format_rational(report.base_gap)},
                  {"perturbed_integrality_gap", ek::format_rational(report.perturbed_gap)},
                  {"endowment_gap_lower_bound", ek::format_rational(report.endowment_gap_lower)},
                  {"perturbed_endowment_gap",
                   ek::format_rational(report.perturbed_endowment_gap)},
                  {"perturbed_instance", ek::instance_to_json(report.perturbed)}});
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

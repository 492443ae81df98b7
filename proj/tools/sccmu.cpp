/*
 * Copyright 2026 The sccmu authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end: graph/automaton/formula file handling,
// reproducible random sweeps, and the model-checking benchmark.
// Results go to stdout (JSON with --json), diagnostics to stderr;
// the exit code is nonzero exactly on failure or violation.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sccmu/bench.hpp"
#include "sccmu/collapse.hpp"
#include "sccmu/formula.hpp"
#include "sccmu/gamma.hpp"
#include "sccmu/suites.hpp"

namespace {

using sccmu::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

sccmu::ParityAutomaton load_automaton(const std::string& path) {
  return sccmu::automaton_from_json(load_json(path));
}

sccmu::ColoredGraph load_graph(const std::string& path) {
  return sccmu::graph_from_json(load_json(path));
}

sccmu::ParityAutomaton ensure_covers(const sccmu::ParityAutomaton& a) {
  if (sccmu::all_cover(a)) return a;
  std::cerr << "note: cover-normalizing the automaton (adds the accept-all state)\n";
  return sccmu::normalize_to_covers(a);
}

int thread_count() {
  const char* env = std::getenv("SCCMU_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  return n < 1 ? 1 : n;
}

json strategy_to_json(const sccmu::PositionalStrategy& s) {
  json j = json::object();
  for (const auto& [from, to] : s.choices) j[std::to_string(from)] = to;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for parity automata and the mu-calculus on graphs "
               "with small strongly connected components"};
  app.require_subcommand(1);
  app.fallthrough();  // lets --json trail the subcommand

  std::string out_path;
  bool as_json = false;
  app.add_flag("--json", as_json, "structured JSON output on stdout");

  // ---- graph ----------------------------------------------------------
  auto* graph_cmd = app.add_subcommand("graph", "generate and validate graph files");
  graph_cmd->require_subcommand(1);

  auto* graph_gen = graph_cmd->add_subcommand("gen", "generate a graph");
  std::string gen_kind = "gk";
  int gen_k = 1, gen_max_vertices = 8, gen_length = 8;
  std::uint64_t gen_seed = 1;
  std::string gen_preds = "F";
  graph_gen->add_option("--kind", gen_kind, "gk | nloop | chain | random | random-scck")
      ->check(CLI::IsMember({"gk", "nloop", "chain", "random", "random-scck"}));
  graph_gen->add_option("--k", gen_k, "parameter k");
  graph_gen->add_option("--length", gen_length, "chain length");
  graph_gen->add_option("--seed", gen_seed, "random seed");
  graph_gen->add_option("--max-vertices", gen_max_vertices, "vertex bound for random graphs");
  graph_gen->add_option("--preds", gen_preds, "comma-separated predicate names");
  graph_gen->add_option("-o,--output", out_path, "write to file instead of stdout");
  graph_gen->callback([&] {
    std::vector<std::string> preds;
    std::stringstream ss(gen_preds);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) preds.push_back(item);
    sccmu::ColoredGraph g = [&]() -> sccmu::ColoredGraph {
      if (gen_kind == "gk") return sccmu::make_gk(gen_k);
      if (gen_kind == "nloop") return sccmu::make_nloop();
      if (gen_kind == "chain") return sccmu::make_chain_graph(gen_length);
      if (gen_kind == "random") return sccmu::random_graph(gen_seed, gen_max_vertices, preds);
      return sccmu::random_scck(gen_seed, gen_k, gen_max_vertices, preds);
    }();
    emit(sccmu::graph_to_json(g), out_path);
  });

  auto* graph_validate = graph_cmd->add_subcommand("validate", "check a graph file");
  std::string graph_file;
  graph_validate->add_option("file", graph_file, "graph JSON file")->required();
  graph_validate->callback([&] {
    sccmu::ColoredGraph g = load_graph(graph_file);
    json info;
    info["valid"] = true;
    info["vertices"] = g.num_vertices();
    info["max_scc_size"] = sccmu::max_scc_size(g);
    info["pseudotree"] = sccmu::is_pseudotree(g);
    if (as_json)
      std::cout << info.dump(2) << "\n";
    else
      std::cout << "ok: " << g.num_vertices() << " vertices, max component "
                << info["max_scc_size"] << "\n";
  });

  // ---- formula --------------------------------------------------------
  auto* formula_cmd = app.add_subcommand("formula", "parse, classify and evaluate formulas");
  formula_cmd->require_subcommand(1);
  std::string formula_text, formula_graph_file;

  auto* formula_parse = formula_cmd->add_subcommand("parse", "parse and print canonically");
  formula_parse->add_option("text", formula_text, "formula text")->required();
  formula_parse->callback([&] {
    auto f = sccmu::parse_formula(formula_text);
    if (as_json) {
      json j;
      j["formula"] = sccmu::print_formula(f);
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << sccmu::print_formula(f) << "\n";
    }
  });

  auto* formula_classify = formula_cmd->add_subcommand("classify", "alternation level");
  formula_classify->add_option("text", formula_text, "formula text")->required();
  formula_classify->callback([&] {
    auto f = sccmu::parse_formula(formula_text);
    auto level = sccmu::classify(f);
    if (as_json) {
      json j;
      j["formula"] = sccmu::print_formula(f);
      j["level"] = level.to_string();
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << level.to_string() << "\n";
    }
  });

  auto* formula_eval = formula_cmd->add_subcommand("eval", "evaluate on a graph");
  formula_eval->add_option("text", formula_text, "formula text")->required();
  formula_eval->add_option("graph", formula_graph_file, "graph JSON file")->required();
  formula_eval->callback([&] {
    auto f = sccmu::parse_formula(formula_text);
    auto g = load_graph(formula_graph_file);
    auto sat = sccmu::evaluate(g, f);
    bool at_point = std::binary_search(sat.begin(), sat.end(), g.point());
    if (as_json) {
      json j;
      j["vertices"] = sat;
      j["point_satisfies"] = at_point;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << (at_point ? "satisfied" : "not satisfied") << " at the point; holds at:";
      for (auto v : sat) std::cout << " " << v;
      std::cout << "\n";
    }
  });

  // ---- game -----------------------------------------------------------
  auto* game_cmd = app.add_subcommand("game", "parity games");
  game_cmd->require_subcommand(1);
  auto* game_solve = game_cmd->add_subcommand("solve", "winning regions and strategies");
  std::string arena_file;
  game_solve->add_option("file", arena_file, "arena JSON file")->required();
  game_solve->callback([&] {
    sccmu::ParityArena a = sccmu::arena_from_json(load_json(arena_file));
    sccmu::SolveResult r = sccmu::solve(a);
    json j;
    j["even_region"] = r.region(sccmu::Player::Even);
    j["odd_region"] = r.region(sccmu::Player::Odd);
    j["strategy_even"] = strategy_to_json(r.strategy_even);
    j["strategy_odd"] = strategy_to_json(r.strategy_odd);
    j["start_winner"] =
        r.winner[static_cast<size_t>(a.start)] == sccmu::Player::Even ? "even" : "odd";
    std::cout << j.dump(2) << "\n";
  });

  // ---- automaton ------------------------------------------------------
  auto* auto_cmd = app.add_subcommand("automaton", "cover parity automata");
  auto_cmd->require_subcommand(1);
  std::string automaton_file, check_graph_file;

  auto* auto_accept = auto_cmd->add_subcommand("accept", "run the acceptance game");
  auto_accept->add_option("automaton", automaton_file, "automaton JSON")->required();
  auto_accept->add_option("graph", check_graph_file, "graph JSON")->required();
  auto_accept->callback([&] {
    auto a = ensure_covers(load_automaton(automaton_file));
    auto g = load_graph(check_graph_file);
    bool verdict = sccmu::accepts(a, g);
    if (as_json) {
      json j;
      j["accepts"] = verdict;
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << (verdict ? "accepts" : "rejects") << "\n";
    }
  });

  auto* auto_normalize = auto_cmd->add_subcommand("normalize", "rewrite to cover clauses");
  auto_normalize->add_option("automaton", automaton_file, "automaton JSON")->required();
  auto_normalize->add_option("-o,--output", out_path, "write to file instead of stdout");
  auto_normalize->callback([&] {
    emit(sccmu::automaton_to_json(sccmu::normalize_to_covers(load_automaton(automaton_file))),
         out_path);
  });

  auto* auto_classify = auto_cmd->add_subcommand("classify", "weak / Buchi / coBuchi flags");
  auto_classify->add_option("automaton", automaton_file, "automaton JSON")->required();
  auto_classify->callback([&] {
    auto a = load_automaton(automaton_file);
    json j;
    j["weak"] = sccmu::is_weak(a);
    j["buchi"] = sccmu::is_buchi(a);
    j["cobuchi"] = sccmu::is_cobuchi(a);
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << "weak=" << j["weak"] << " buchi=" << j["buchi"] << " cobuchi=" << j["cobuchi"]
                << "\n";
  });

  // ---- collapse -------------------------------------------------------
  auto* collapse_cmd = app.add_subcommand("collapse", "the Buchi -> coBuchi window construction");
  collapse_cmd->require_subcommand(1);
  int collapse_k = 1, collapse_bound = 6, sweep_samples = 200, sweep_max_vertices = 10;
  std::uint64_t sweep_seed = 1;

  auto* collapse_run = collapse_cmd->add_subcommand("run", "collapse one automaton");
  collapse_run->add_option("automaton", automaton_file, "Buchi automaton JSON")->required();
  collapse_run->add_option("--k", collapse_k, "component size bound")->required();
  collapse_run->add_option("--check", check_graph_file, "also compare verdicts on this graph");
  collapse_run->add_option("-o,--output", out_path, "write to file instead of stdout");
  collapse_run->callback([&] {
    auto b = ensure_covers(load_automaton(automaton_file));
    auto c = sccmu::buchi_to_cobuchi(b, collapse_k);
    if (check_graph_file.empty()) {
      emit(sccmu::automaton_to_json(c), out_path);
      return;
    }
    auto g = load_graph(check_graph_file);
    json j;
    j["automaton"] = sccmu::automaton_to_json(c);
    j["check"] = {{"buchi_accepts", sccmu::accepts(b, g)},
                  {"cobuchi_accepts", sccmu::accepts(c, g)}};
    emit(j, out_path);
  });

  auto* collapse_sweep = collapse_cmd->add_subcommand("sweep", "equivalence sweep inside SCCk");
  collapse_sweep->add_option("--k", collapse_k, "component size bound");
  collapse_sweep->add_option("--seed", sweep_seed, "run seed");
  collapse_sweep->add_option("--samples", sweep_samples, "sample count");
  collapse_sweep->add_option("--max-vertices", sweep_max_vertices, "graph size bound");
  collapse_sweep->callback([&] {
    sccmu::SweepConfig cfg;
    cfg.suite = "collapse-equivalence";
    cfg.seed = sweep_seed;
    cfg.samples = sweep_samples;
    cfg.max_vertices = sweep_max_vertices;
    cfg.k = collapse_k;
    auto report = sccmu::run_suite(cfg, thread_count());
    std::cout << sccmu::suite_report_to_json(report).dump(2) << "\n";
    if (!report.ok()) throw std::runtime_error("collapse sweep found disagreements");
  });

  auto* collapse_disagree =
      collapse_cmd->add_subcommand("disagree", "search for a witness outside SCCk");
  collapse_disagree->add_option("automaton", automaton_file, "Buchi automaton JSON")->required();
  collapse_disagree->add_option("--k", collapse_k, "component size bound");
  collapse_disagree->add_option("--bound", collapse_bound, "maximum cycle length");
  collapse_disagree->callback([&] {
    auto b = ensure_covers(load_automaton(automaton_file));
    auto found = sccmu::find_disagreement_outside_scck(b, collapse_k, collapse_bound);
    json j;
    j["found"] = found.has_value();
    if (found) {
      auto c = sccmu::buchi_to_cobuchi(b, collapse_k);
      j["graph"] = sccmu::graph_to_json(*found);
      j["buchi_accepts"] = sccmu::accepts(b, *found);
      j["cobuchi_accepts"] = sccmu::accepts(c, *found);
      j["max_scc_size"] = sccmu::max_scc_size(*found);
    }
    std::cout << j.dump(2) << "\n";
  });

  // ---- gamma ----------------------------------------------------------
  auto* gamma_cmd = app.add_subcommand("gamma", "the Gamma game laboratory");
  gamma_cmd->require_subcommand(1);

  auto* gamma_solve = gamma_cmd->add_subcommand("solve", "winner of the Gamma game");
  gamma_solve->add_option("graph", check_graph_file, "graph JSON")->required();
  gamma_solve->callback([&] {
    auto g = load_graph(check_graph_file);
    auto verdict = sccmu::gamma_winner(g);
    json j;
    j["winner"] = verdict.winner == sccmu::GammaPlayer::PN ? "PN" : "PF";
    j["strategy"] = strategy_to_json(verdict.strategy);
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << j["winner"].get<std::string>() << "\n";
  });

  auto* gamma_bstar = gamma_cmd->add_subcommand("check-bstar", "box-star Gamma at every vertex");
  gamma_bstar->add_option("graph", check_graph_file, "graph JSON")->required();
  gamma_bstar->callback([&] {
    auto g = load_graph(check_graph_file);
    bool semantic = sccmu::box_star_gamma_semantic(g);
    bool automaton = sccmu::accepts(sccmu::make_box_star_gamma_automaton(), g);
    json j;
    j["semantic"] = semantic;
    j["automaton"] = automaton;
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << (semantic ? "holds" : "fails") << "\n";
    if (semantic != automaton)
      throw std::runtime_error("oracle disagreement between automaton and game semantics");
  });

  auto* gamma_falsify = gamma_cmd->add_subcommand(
      "falsify", "counterexample separating a weak automaton from box-star Gamma");
  gamma_falsify->add_option("automaton", automaton_file, "weak automaton JSON")->required();
  gamma_falsify->callback([&] {
    auto w = load_automaton(automaton_file);
    sccmu::WitnessReport report = sccmu::falsify_weak(w);
    std::cout << sccmu::witness_report_to_json(report).dump(2) << "\n";
  });

  // ---- suite ----------------------------------------------------------
  auto* suite_cmd = app.add_subcommand("suite", "reproducible experiment suites");
  suite_cmd->require_subcommand(1);
  auto* suite_run = suite_cmd->add_subcommand("run", "run a named suite");
  std::string suite_name;
  suite_run->add_option("name", suite_name, "suite id")
      ->required()
      ->check(CLI::IsMember(sccmu::suite_names()));
  suite_run->add_option("--seed", sweep_seed, "run seed");
  suite_run->add_option("--samples", sweep_samples, "sample count");
  suite_run->add_option("--max-vertices", sweep_max_vertices, "graph size bound");
  suite_run->add_option("--k", collapse_k, "component size bound");
  suite_run->callback([&] {
    sccmu::SweepConfig cfg;
    cfg.suite = suite_name;
    cfg.seed = sweep_seed;
    cfg.samples = sweep_samples;
    cfg.max_vertices = sweep_max_vertices;
    cfg.k = collapse_k;
    auto report = sccmu::run_suite(cfg, thread_count());
    std::cout << sccmu::suite_report_to_json(report).dump(2) << "\n";
    if (!report.ok()) throw std::runtime_error("suite reported failures");
  });

  // ---- bench ----------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "model-checking benchmark");
  std::string bench_automaton_file, bench_family = "chain", bench_sizes = "64,128,256,512,1024";
  bool bench_builtin = false;
  bench_cmd->add_option("--automaton", bench_automaton_file, "automaton JSON file");
  bench_cmd->add_flag("--builtin-collapsed-bgamma", bench_builtin,
                      "use the collapsed Gamma automaton");
  bench_cmd->add_option("--family", bench_family, "gk | chain")
      ->check(CLI::IsMember({"gk", "chain"}));
  bench_cmd->add_option("--sizes", bench_sizes, "comma-separated strictly increasing sizes");
  bench_cmd->callback([&] {
    sccmu::ParityAutomaton a = [&]() -> sccmu::ParityAutomaton {
      if (bench_builtin || bench_automaton_file.empty())
        return sccmu::buchi_to_cobuchi(sccmu::normalize_to_covers(sccmu::make_b_gamma()), 1);
      return ensure_covers(load_automaton(bench_automaton_file));
    }();
    std::vector<int> sizes;
    std::stringstream ss(bench_sizes);
    std::string item;
    while (std::getline(ss, item, ',')) sizes.push_back(std::stoi(item));
    auto family = bench_family == "gk" ? sccmu::BenchFamily::Gk : sccmu::BenchFamily::Chain;
    auto report = sccmu::bench_modelcheck(a, family, sizes);
    std::cout << sccmu::bench_report_to_json(report).dump(2) << "\n";
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

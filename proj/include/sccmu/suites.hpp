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

#pragma once

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "collapse.hpp"
#include "gamma.hpp"
#include "generators.hpp"

namespace sccmu {

// ---------------------------------------------------------------------------
// Reproducible cross-module sweeps
//
// Each suite checks one equivalence or invariant on `samples` random
// instances. Per-sample seeds are split from the run seed by index, so a
// report is byte-identical for a fixed config regardless of thread count.

struct SweepConfig {
  std::string suite;
  std::uint64_t seed = 1;
  int samples = 100;
  int max_vertices = 10;
  int k = 1;
};

struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int samples = 0;
  int passed = 0;
  int failed = 0;
  std::optional<int> first_failure_index;
  std::string first_failure_note;

  bool ok() const { return failed == 0; }
};

inline json suite_report_to_json(const SuiteReport& r) {
  json j;
  j["suite"] = r.suite;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["passed"] = r.passed;
  j["failed"] = r.failed;
  if (r.first_failure_index) {
    j["first_failure_index"] = *r.first_failure_index;
    j["first_failure"] = r.first_failure_note;
  }
  return j;
}

namespace detail {

/// Runs `body(i)` for i in [0, samples) on up to `threads` workers and
/// reduces failures order-insensitively to the smallest failing index.
inline SuiteReport run_samples(const SweepConfig& cfg, int threads,
                               const std::function<std::optional<std::string>(int)>& body) {
  SuiteReport report;
  report.suite = cfg.suite;
  report.seed = cfg.seed;
  report.samples = cfg.samples;
  std::vector<std::optional<std::string>> failures(static_cast<size_t>(cfg.samples));
  if (threads <= 1) {
    for (int i = 0; i < cfg.samples; ++i) failures[static_cast<size_t>(i)] = body(i);
  } else {
    std::atomic<int> next{0};
    auto worker = [&] {
      while (true) {
        int i = next.fetch_add(1);
        if (i >= cfg.samples) return;
        failures[static_cast<size_t>(i)] = body(i);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (int i = 0; i < cfg.samples; ++i) {
    if (failures[static_cast<size_t>(i)]) {
      ++report.failed;
      if (!report.first_failure_index) {
        report.first_failure_index = i;
        report.first_failure_note = *failures[static_cast<size_t>(i)];
      }
    } else {
      ++report.passed;
    }
  }
  return report;
}

inline std::vector<std::set<Vertex>> reachability_classes(const ColoredGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<bool>> reach(static_cast<size_t>(n),
                                       std::vector<bool>(static_cast<size_t>(n), false));
  for (int i = 0; i < n; ++i) reach[static_cast<size_t>(i)][static_cast<size_t>(i)] = true;
  for (const auto& [u, v] : g.edges())
    reach[static_cast<size_t>(g.index_of(u))][static_cast<size_t>(g.index_of(v))] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[static_cast<size_t>(i)][static_cast<size_t>(k)] &&
            reach[static_cast<size_t>(k)][static_cast<size_t>(j)])
          reach[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
  std::vector<std::set<Vertex>> classes;
  std::vector<bool> done(static_cast<size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (done[static_cast<size_t>(i)]) continue;
    std::set<Vertex> cls;
    for (int j = 0; j < n; ++j)
      if (reach[static_cast<size_t>(i)][static_cast<size_t>(j)] &&
          reach[static_cast<size_t>(j)][static_cast<size_t>(i)]) {
        cls.insert(g.vertex_at(j));
        done[static_cast<size_t>(j)] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

}  // namespace detail

/// Runs one of the named experiment suites. Deterministic in the config;
/// `threads` only changes the wall time.
inline SuiteReport run_suite(const SweepConfig& cfg, int threads = 1) {
  using detail::run_samples;
  if (cfg.samples < 1 || cfg.max_vertices < 1 || cfg.k < 1)
    throw std::invalid_argument("run_suite: counts must be positive");

  if (cfg.suite == "scc-oracle") {
    return run_samples(cfg, threads, [&](int i) -> std::optional<std::string> {
      ColoredGraph g = random_graph(sample_seed(cfg.seed, static_cast<std::uint64_t>(i)),
                                    cfg.max_vertices, {"F"});
      auto classes = detail::reachability_classes(g);
      auto dec = scc_decompose(g);
      std::set<std::set<Vertex>> a, b;
      for (const auto& c : dec.components) a.insert(std::set<Vertex>(c.begin(), c.end()));
      for (const auto& c : classes) b.insert(c);
      if (a != b) return "scc decomposition disagrees with the reachability closure";
      return std::nullopt;
    });
  }

  if (cfg.suite == "game-oracle") {
    return run_samples(cfg, threads, [&](int i) -> std::optional<std::string> {
      ParityArena a = random_arena(sample_seed(cfg.seed, static_cast<std::uint64_t>(i)),
                                   std::min(cfg.max_vertices, 8));
      SolveResult s = solve(a);
      Regions r = brute_force_solve(a);
      if (s.region(Player::Even) != r.even_region || s.region(Player::Odd) != r.odd_region)
        return "solver disagrees with the strategy-pair enumeration";
      if (!verify_strategy(a, s.strategy_even, Player::Even, s.region(Player::Even)))
        return "even strategy failed verification";
      if (!verify_strategy(a, s.strategy_odd, Player::Odd, s.region(Player::Odd)))
        return "odd strategy failed verification";
      return std::nullopt;
    });
  }

  if (cfg.suite == "bgamma-vs-gamma") {
    const ParityAutomaton bg = normalize_to_covers(make_b_gamma());
    return run_samples(cfg, threads, [&](int i) -> std::optional<std::string> {
      ColoredGraph g = random_graph(sample_seed(cfg.seed, static_cast<std::uint64_t>(i)),
                                    cfg.max_vertices, {"F"});
      bool by_automaton = accepts(bg, g);
      bool by_game = gamma_winner(g).winner == GammaPlayer::PN;
      if (by_automaton != by_game) return "automaton and game verdicts differ";
      return std::nullopt;
    });
  }

  if (cfg.suite == "collapse-equivalence") {
    return run_samples(cfg, threads, [&](int i) -> std::optional<std::string> {
      std::uint64_t s = sample_seed(cfg.seed, static_cast<std::uint64_t>(i));
      ParityAutomaton b = random_buchi_automaton(splitmix64(s), 3);
      ParityAutomaton c = buchi_to_cobuchi(b, cfg.k);
      if (!is_cobuchi(c)) return "collapse output is not coBuchi";
      ColoredGraph g = random_scck(splitmix64(s ^ 0xabcdef), cfg.k, cfg.max_vertices, {"F"});
      if (accepts(b, g) != accepts(c, g)) return "collapse changed the verdict inside SCCk";
      return std::nullopt;
    });
  }

  if (cfg.suite == "bstar-vs-semantic") {
    const ParityAutomaton bs = make_box_star_gamma_automaton();
    return run_samples(cfg, threads, [&](int i) -> std::optional<std::string> {
      ColoredGraph g = random_scck(sample_seed(cfg.seed, static_cast<std::uint64_t>(i)), 1,
                                   cfg.max_vertices, {"F"});
      if (accepts(bs, g) != box_star_gamma_semantic(g))
        return "box-star automaton disagrees with the semantic oracle";
      return std::nullopt;
    });
  }

  if (cfg.suite == "pseudotree-invariance") {
    const ParityAutomaton bg = normalize_to_covers(make_b_gamma());
    const ParityAutomaton bs = make_box_star_gamma_automaton();
    return run_samples(cfg, threads, [&](int i) -> std::optional<std::string> {
      ColoredGraph g = random_scck(sample_seed(cfg.seed, static_cast<std::uint64_t>(i)), 1,
                                   cfg.max_vertices, {"F"});
      ColoredGraph t = pseudotree_of(g);
      if (!is_pseudotree(t)) return "unfolding is not a pseudotree";
      if (!in_scck(t, 1)) return "unfolding left SCC1";
      if (!bisimilar(g, t)) return "unfolding is not bisimilar to the input";
      if (accepts(bg, g) != accepts(bg, t)) return "Gamma automaton verdict not invariant";
      if (accepts(bs, g) != accepts(bs, t)) return "box-star automaton verdict not invariant";
      return std::nullopt;
    });
  }

  throw std::invalid_argument("run_suite: unknown suite '" + cfg.suite + "'");
}

inline std::vector<std::string> suite_names() {
  return {"scc-oracle",          "game-oracle",       "bgamma-vs-gamma",
          "collapse-equivalence", "bstar-vs-semantic", "pseudotree-invariance"};
}

}  // namespace sccmu

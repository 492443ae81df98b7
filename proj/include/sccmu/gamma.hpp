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

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "automaton.hpp"
#include "collapse.hpp"
#include "game.hpp"
#include "graph.hpp"

namespace sccmu {

// ---------------------------------------------------------------------------
// The Gamma game
//
// Played on an F/N-colored graph: PN moves at N vertices, PF at F
// vertices, a stuck player loses, and PN wins an infinite play iff it
// visits F vertices infinitely often. Encoded as a min-parity game with
// PN as Even, priority 0 on F vertices and 1 on N vertices.

enum class GammaPlayer { PN, PF };

struct GammaVerdict {
  GammaPlayer winner;
  /// Positional strategy of the winner, over arena positions; position i
  /// is the vertex g.vertex_at(i).
  PositionalStrategy strategy;
};

namespace detail {
inline void require_fn_colored(const ColoredGraph& g, const char* fn) {
  if (g.predicates() != std::vector<std::string>{"F"})
    throw std::invalid_argument(std::string(fn) + ": graph must be colored by {F} only");
}
}  // namespace detail

inline ParityArena gamma_arena(const ColoredGraph& g) {
  detail::require_fn_colored(g, "gamma_arena");
  ParityArena a;
  const int n = g.num_vertices();
  a.owner.reserve(n);
  a.priority.reserve(n);
  a.moves.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vertex v = g.vertex_at(i);
    bool is_f = g.color_mask(v) != 0;
    a.owner.push_back(is_f ? Player::Odd : Player::Even);
    a.priority.push_back(is_f ? 0 : 1);
    std::vector<int> moves;
    for (Vertex w : g.successors(v)) moves.push_back(g.index_of(w));
    a.moves.push_back(std::move(moves));
  }
  a.start = g.index_of(g.point());
  a.validate();
  return a;
}

inline GammaVerdict gamma_winner(const ColoredGraph& g) {
  ParityArena a = gamma_arena(g);
  SolveResult r = solve(a);
  bool pn = r.winner[static_cast<size_t>(a.start)] == Player::Even;
  return GammaVerdict{pn ? GammaPlayer::PN : GammaPlayer::PF,
                      pn ? r.strategy_even : r.strategy_odd};
}

/// True iff PN wins the Gamma game from every vertex reachable from the
/// point. Winning regions of a parity game do not depend on the start
/// position, so one solve answers all the re-pointed queries at once.
inline bool box_star_gamma_semantic(const ColoredGraph& g) {
  ParityArena a = gamma_arena(g);
  SolveResult r = solve(a);
  for (Vertex v : reachable_from(g, g.point()))
    if (r.winner[static_cast<size_t>(g.index_of(v))] != Player::Even) return false;
  return true;
}

// ---------------------------------------------------------------------------
// The Buchi automaton for Gamma
//
// States q0 (initial), qN (nonfinal) and qF (final):
//   delta(q0,N) = delta(qN,N) = dia(qN) | dia(qF)
//   delta(q0,F) = delta(qF,F) = box(qN,qF)
//   delta(qF,N) = delta(qN,F) = false

inline ParityAutomaton make_b_gamma() {
  ParityAutomaton a;
  a.predicates = {"F"};
  a.state_names = {"q0", "qN", "qF"};
  a.initial = 0;
  a.priority = {0, 1, 0};
  const Letter n_letter = 0, f_letter = 1;
  const int q0 = 0, qn = 1, qf = 2;
  TransitionFormula move_n = {make_clause(ClauseKind::Dia, {qn}),
                              make_clause(ClauseKind::Dia, {qf})};
  TransitionFormula move_f = {make_clause(ClauseKind::Box, {qn, qf})};
  a.delta[{q0, n_letter}] = move_n;
  a.delta[{qn, n_letter}] = move_n;
  a.delta[{q0, f_letter}] = move_f;
  a.delta[{qf, f_letter}] = move_f;
  a.validate();
  return a;
}

// ---------------------------------------------------------------------------
// The Buchi automaton for box-star Gamma
//
// Composition of the always-modality with the Gamma automaton. A bare
// universal state u would need conjunctions of a Gamma clause with
// "u at every successor", which the clause grammar cannot express, so
// the propagation is distributed through the Gamma clauses: uN and uF
// track the Gamma run of qN/qF while still imposing u everywhere below.
// The result is cover-normalized; its correctness gate is the agreement
// sweep against box_star_gamma_semantic.

inline ParityAutomaton make_box_star_gamma_automaton() {
  ParityAutomaton a;
  a.predicates = {"F"};
  a.state_names = {"u", "uN", "uF"};
  a.initial = 0;
  a.priority = {0, 1, 0};
  const Letter n_letter = 0, f_letter = 1;
  const int u = 0, un = 1, uf = 2;
  TransitionFormula move_n = {make_clause(ClauseKind::Cover, {un, u}),
                              make_clause(ClauseKind::Cover, {uf, u})};
  TransitionFormula move_f = {make_clause(ClauseKind::Box, {un, uf})};
  a.delta[{u, n_letter}] = move_n;
  a.delta[{un, n_letter}] = move_n;
  a.delta[{u, f_letter}] = move_f;
  a.delta[{uf, f_letter}] = move_f;
  a.validate();
  return normalize_to_covers(a);
}

// ---------------------------------------------------------------------------
// Falsifier for weak automata
//
// For any weak parity automaton over {F}, finds an SCC1 graph on which
// the automaton and the box-star-Gamma semantics disagree. The engine is
// the chain-graph induction: a weak automaton with h states that accepts
// the chain graph of h levels either already accepts the N-loop, or has
// a lower-priority state on the first chain segment (then the run is
// followed into the second level and the argument recurses on fewer
// states), or the label sets along the segment repeat and pumping shows
// some labeling state accepts the N-loop, so grafting the N-loop at that
// chain vertex preserves acceptance while breaking the semantics.
//
// Witnesses found below a descent are against an inner state; they are
// lifted with the substitution construction: unfold the winning strategy
// level by level down to the first occurrence of the descent label,
// insert the inner witness there, attach the real subgraphs everywhere
// else at that depth. Every branch re-verifies the returned graph with
// fresh solver and oracle calls before it is reported.

struct WitnessReport {
  ColoredGraph counterexample;
  bool automaton_verdict;
  bool semantic_verdict;
  std::string derivation;  // accepted-n-loop | rejected-g-chain | pumped-n-loop-graft
  std::vector<std::string> steps;
};

namespace detail {

struct ChainSpine {
  Vertex root;
  std::vector<Vertex> chain;  // the N vertices of the first segment
  Vertex next_f;              // the F vertex closing the segment
};

inline ChainSpine chain_spine(const ColoredGraph& g) {
  ChainSpine s;
  s.root = g.point();
  Vertex cur = s.root;
  while (true) {
    Vertex next = -1;
    int count = 0;
    for (Vertex w : g.successors(cur))
      if (w != cur) {
        next = w;
        ++count;
      }
    if (count != 1)
      throw std::logic_error("falsify_weak: graph lost its chain shape");
    if (g.satisfies("F", next)) {
      s.next_f = next;
      return s;
    }
    s.chain.push_back(next);
    cur = next;
  }
}

struct FalsifyLevel {
  std::unique_ptr<ColoredGraph> graph;
  int initial;
  std::unique_ptr<AcceptanceGame> game;  // solved and winning on *graph
  int descend_state;                     // the lower-priority state at next_f
  Vertex descend_vertex;                 // next_f of this level's spine
};

/// The substitution step: a graph accepted from `level.initial` that
/// reaches a copy of `donor` exactly where the strategy first visits the
/// descent label.
inline ColoredGraph lift_witness(const ParityAutomaton& w, FalsifyLevel& level,
                                 const ColoredGraph& donor) {
  const std::pair<int, Vertex> target{level.descend_state, level.descend_vertex};
  const ColoredGraph& host = *level.graph;
  std::vector<std::vector<std::pair<int, Vertex>>> level_sets;
  level_sets.push_back({{level.initial, host.point()}});
  const int pair_limit = w.num_states() * host.num_vertices() + 2;
  int m = -1;
  for (int d = 0;; ++d) {
    const auto& cur = level_sets[static_cast<size_t>(d)];
    if (std::find(cur.begin(), cur.end(), target) != cur.end()) {
      m = d;
      break;
    }
    if (d > pair_limit) throw std::logic_error("lift_witness: descent label unreachable");
    std::set<std::pair<int, Vertex>> next;
    for (const auto& [q, v] : cur)
      for (const auto& child : level.game->macro_children(q, v)) next.insert(child);
    level_sets.emplace_back(next.begin(), next.end());
  }
  if (m == 0) return donor;  // the witness already sits at the level root

  // Ids: unfolding nodes by level, then the needed part of the host,
  // then the donor.
  std::map<std::pair<int, std::pair<int, Vertex>>, Vertex> tree_id;
  Vertex next_id = 0;
  for (int d = 0; d < m; ++d)
    for (const auto& pr : level_sets[static_cast<size_t>(d)]) tree_id[{d, pr}] = next_id++;

  // Attach points at depth m: the real host subgraph for every non-target
  // label, the donor for the target.
  std::set<Vertex> host_roots;
  for (const auto& pr : level_sets[static_cast<size_t>(m)])
    if (pr != target) host_roots.insert(pr.second);
  std::set<Vertex> host_keep;
  for (Vertex r : host_roots)
    for (Vertex v : reachable_from(host, r)) host_keep.insert(v);
  std::map<Vertex, Vertex> host_id;
  for (Vertex v : host_keep) host_id[v] = next_id++;
  std::map<Vertex, Vertex> donor_id;
  for (Vertex v : donor.vertices()) donor_id[v] = next_id++;

  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<SatPair> sat;
  for (Vertex v = 0; v < next_id; ++v) vertices.push_back(v);

  auto color_in = [&](const ColoredGraph& g, Vertex v, Vertex fresh) {
    for (size_t b = 0; b < g.predicates().size(); ++b)
      if ((g.color_mask(v) >> b) & 1u) sat.emplace_back(g.predicates()[b], fresh);
  };

  for (int d = 0; d < m; ++d) {
    for (const auto& pr : level_sets[static_cast<size_t>(d)]) {
      Vertex self = tree_id.at({d, pr});
      color_in(host, pr.second, self);
      for (const auto& child : level.game->macro_children(pr.first, pr.second)) {
        if (d + 1 < m)
          edges.emplace_back(self, tree_id.at({d + 1, child}));
        else if (child == target)
          edges.emplace_back(self, donor_id.at(donor.point()));
        else
          edges.emplace_back(self, host_id.at(child.second));
      }
    }
  }
  for (Vertex v : host_keep) {
    color_in(host, v, host_id.at(v));
    for (Vertex s : host.successors(v)) edges.emplace_back(host_id.at(v), host_id.at(s));
  }
  for (Vertex v : donor.vertices()) {
    color_in(donor, v, donor_id.at(v));
    for (Vertex s : donor.successors(v)) edges.emplace_back(donor_id.at(v), donor_id.at(s));
  }
  Vertex point = tree_id.at({0, {level.initial, host.point()}});
  return ColoredGraph(host.predicates(), std::move(vertices), std::move(edges), std::move(sat),
                      point);
}

}  // namespace detail

inline WitnessReport falsify_weak(const ParityAutomaton& w_in) {
  w_in.validate();
  if (!is_weak(w_in)) throw std::invalid_argument("falsify_weak: automaton is not weak");
  if (w_in.predicates != std::vector<std::string>{"F"})
    throw std::invalid_argument("falsify_weak: automaton must be over the predicate set {F}");
  const ParityAutomaton w = normalize_to_covers(w_in);
  const int h = w.num_states();
  if (h > 12)
    throw std::invalid_argument(
        "falsify_weak: chain construction would be astronomically large for this many states");

  const ColoredGraph nloop = make_nloop();
  std::vector<detail::FalsifyLevel> levels;
  std::vector<std::string> steps;

  auto current_graph = std::make_unique<ColoredGraph>(make_gk(h));
  int current_initial = w.initial;
  steps.push_back("start on the " + std::to_string(h) + "-level chain graph with state " +
                  w.state_names[static_cast<size_t>(current_initial)]);

  std::optional<ColoredGraph> witness;
  std::string tag;

  for (int round = 0;; ++round) {
    if (round > h + 1) throw std::logic_error("falsify_weak: descent failed to terminate");

    if (accepts_from(w, current_initial, nloop)) {
      witness = nloop;
      tag = "accepted-n-loop";
      steps.push_back("state " + w.state_names[static_cast<size_t>(current_initial)] +
                      " accepts the N-loop");
      break;
    }

    auto game = std::make_unique<AcceptanceGame>(w, *current_graph, current_initial,
                                                 current_graph->point());
    if (!game->duplicator_wins()) {
      if (!levels.empty())
        throw std::logic_error("falsify_weak: residual chain rejected after a descent");
      witness = *current_graph;
      tag = "rejected-g-chain";
      steps.push_back("the automaton rejects the chain graph, which satisfies the property");
      break;
    }

    detail::ChainSpine spine = detail::chain_spine(*current_graph);
    auto pairs = game->reachable_pairs();
    const int base_prio = w.priority[static_cast<size_t>(current_initial)];

    std::optional<std::pair<int, Vertex>> low;
    for (const auto& pr : pairs) {
      bool on_spine = pr.second == spine.root ||
                      std::find(spine.chain.begin(), spine.chain.end(), pr.second) !=
                          spine.chain.end();
      if (on_spine && w.priority[static_cast<size_t>(pr.first)] < base_prio) {
        low = pr;
        break;
      }
    }

    if (low) {
      // Follow the strategy from the low label to the next F vertex.
      std::vector<std::pair<int, Vertex>> order{*low};
      std::set<std::pair<int, Vertex>> seen{*low};
      std::optional<std::pair<int, Vertex>> descend;
      for (size_t i = 0; i < order.size() && !descend; ++i) {
        for (const auto& child : game->macro_children(order[i].first, order[i].second)) {
          if (child.second == spine.next_f) {
            descend = child;
            break;
          }
          if (seen.insert(child).second) order.push_back(child);
        }
      }
      if (!descend) throw std::logic_error("falsify_weak: no strategy path to the next level");
      if (w.priority[static_cast<size_t>(descend->first)] >= base_prio)
        throw std::logic_error("falsify_weak: weakness violated along the descent");
      steps.push_back("descend: state " + w.state_names[static_cast<size_t>(descend->first)] +
                      " enters the next level below priority " + std::to_string(base_prio));
      detail::FalsifyLevel level{std::move(current_graph), current_initial, std::move(game),
                                 descend->first, descend->second};
      levels.push_back(std::move(level));
      current_graph = std::make_unique<ColoredGraph>(
          reachable_subgraph(*levels.back().graph, descend->second));
      current_initial = descend->first;
      continue;
    }

    // Pigeonhole pump: the label sets along the first chain segment
    // repeat; any labeling state of a repeated set accepts the N-loop.
    std::map<Vertex, std::set<int>> labels;
    for (const auto& [q, v] : pairs) labels[v].insert(q);
    std::map<std::set<int>, size_t> first_seen;
    std::optional<std::pair<size_t, size_t>> repeat;
    for (size_t i = 0; i < spine.chain.size() && !repeat; ++i) {
      const std::set<int>& qi = labels[spine.chain[i]];
      if (qi.empty()) throw std::logic_error("falsify_weak: uncovered chain vertex");
      auto [it, inserted] = first_seen.emplace(qi, i);
      if (!inserted) repeat = std::make_pair(it->second, i);
    }
    if (!repeat)
      throw std::logic_error("falsify_weak: pigeonhole failed on the chain segment");
    const std::set<int>& qset = labels[spine.chain[repeat->first]];
    bool found = false;
    for (int qstar : qset) {
      if (!accepts_from(w, qstar, nloop)) continue;
      ColoredGraph grafted = graft(*current_graph, spine.chain[repeat->first], nloop);
      if (!accepts_from(w, current_initial, grafted)) continue;
      steps.push_back("pump: label sets repeat at segment positions " +
                      std::to_string(repeat->first + 1) + " and " +
                      std::to_string(repeat->second + 1) + "; state " +
                      w.state_names[static_cast<size_t>(qstar)] +
                      " accepts the N-loop, grafted there");
      witness = std::move(grafted);
      tag = "pumped-n-loop-graft";
      found = true;
      break;
    }
    if (!found)
      throw std::logic_error(
          "falsify_weak: no branch produced a verified witness (internal inconsistency)");
    break;
  }

  while (!levels.empty()) {
    detail::FalsifyLevel& level = levels.back();
    ColoredGraph lifted = detail::lift_witness(w, level, *witness);
    if (!accepts_from(w, level.initial, lifted))
      throw std::logic_error("falsify_weak: lifted witness failed acceptance re-verification");
    if (box_star_gamma_semantic(lifted))
      throw std::logic_error("falsify_weak: lifted witness failed semantic re-verification");
    steps.push_back("lift the witness through the level of state " +
                    w.state_names[static_cast<size_t>(level.initial)]);
    witness = std::move(lifted);
    levels.pop_back();
  }

  bool automaton_verdict = accepts(w, *witness);
  bool semantic_verdict = box_star_gamma_semantic(*witness);
  if (automaton_verdict == semantic_verdict)
    throw std::logic_error("falsify_weak: verdicts agree on the candidate witness");
  if (!in_scck(*witness, 1))
    throw std::logic_error("falsify_weak: witness left SCC1");
  return WitnessReport{std::move(*witness), automaton_verdict, semantic_verdict, tag,
                       std::move(steps)};
}

// ---------------------------------------------------------------------------
// JSON

inline json witness_report_to_json(const WitnessReport& r) {
  json j;
  j["derivation"] = r.derivation;
  j["automaton_verdict"] = r.automaton_verdict;
  j["semantic_verdict"] = r.semantic_verdict;
  j["counterexample"] = graph_to_json(r.counterexample);
  j["steps"] = r.steps;
  return j;
}

}  // namespace sccmu

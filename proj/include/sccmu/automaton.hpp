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

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "game.hpp"
#include "graph.hpp"

namespace sccmu {

// ---------------------------------------------------------------------------
// Transition formulas
//
// A transition is a disjunction of clauses over the state set:
//   cover(q1..qn)  -- each qi at some successor, every successor some qi
//   dia(q1..qn)    -- conjunction of diamonds, no covering obligation
//   box(q1..qn)    -- every successor satisfies some qi, no diamonds
// The empty disjunction is false; cover() is satisfied exactly at leaves.

enum class ClauseKind { Cover, Dia, Box };

struct Clause {
  ClauseKind kind;
  std::vector<int> states;  // sorted, unique

  bool operator==(const Clause&) const = default;
};

inline Clause make_clause(ClauseKind kind, std::vector<int> states) {
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  return Clause{kind, std::move(states)};
}

using TransitionFormula = std::vector<Clause>;  // disjunction

using Letter = std::uint32_t;  // bitmask over the predicate list

/// Parity automaton with cover-style transitions over the alphabet
/// Powerset(Pred). delta is total: letters without an entry map to false.
struct ParityAutomaton {
  std::vector<std::string> predicates;  // sorted, unique
  std::vector<std::string> state_names;
  int initial = 0;
  std::vector<int> priority;
  std::map<std::pair<int, Letter>, TransitionFormula> delta;

  int num_states() const { return static_cast<int>(state_names.size()); }
  Letter num_letters() const { return Letter{1} << predicates.size(); }

  const TransitionFormula& delta_at(int state, Letter letter) const {
    static const TransitionFormula kFalse;
    auto it = delta.find({state, letter});
    return it == delta.end() ? kFalse : it->second;
  }

  int state_index(const std::string& name) const {
    auto it = std::find(state_names.begin(), state_names.end(), name);
    if (it == state_names.end())
      throw std::invalid_argument("ParityAutomaton: unknown state " + name);
    return static_cast<int>(it - state_names.begin());
  }

  void validate() const {
    const int n = num_states();
    if (n == 0) throw std::invalid_argument("ParityAutomaton: no states");
    if (predicates.size() > 20)
      throw std::invalid_argument("ParityAutomaton: too many predicates");
    if (!std::is_sorted(predicates.begin(), predicates.end()) ||
        std::adjacent_find(predicates.begin(), predicates.end()) != predicates.end())
      throw std::invalid_argument("ParityAutomaton: predicates must be sorted and unique");
    if (static_cast<int>(priority.size()) != n)
      throw std::invalid_argument("ParityAutomaton: priority table size mismatch");
    if (initial < 0 || initial >= n)
      throw std::invalid_argument("ParityAutomaton: initial state out of range");
    {
      std::set<std::string> seen(state_names.begin(), state_names.end());
      if (static_cast<int>(seen.size()) != n)
        throw std::invalid_argument("ParityAutomaton: duplicate state names");
    }
    for (int p : priority)
      if (p < 0) throw std::invalid_argument("ParityAutomaton: negative priority");
    for (const auto& [key, tf] : delta) {
      if (key.first < 0 || key.first >= n)
        throw std::invalid_argument("ParityAutomaton: delta entry for unknown state");
      if (key.second >= num_letters())
        throw std::invalid_argument("ParityAutomaton: delta entry for unknown letter");
      for (const Clause& c : tf)
        for (int q : c.states)
          if (q < 0 || q >= n)
            throw std::invalid_argument("ParityAutomaton: clause mentions unknown state");
    }
  }
};

inline bool all_cover(const ParityAutomaton& a) {
  for (const auto& [key, tf] : a.delta)
    for (const Clause& c : tf)
      if (c.kind != ClauseKind::Cover) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Class predicates

/// Weak: priorities never increase along transitions.
inline bool is_weak(const ParityAutomaton& a) {
  for (const auto& [key, tf] : a.delta) {
    int from_prio = a.priority[static_cast<size_t>(key.first)];
    for (const Clause& c : tf)
      for (int q : c.states)
        if (a.priority[static_cast<size_t>(q)] > from_prio) return false;
  }
  return true;
}

inline bool is_buchi(const ParityAutomaton& a) {
  return std::all_of(a.priority.begin(), a.priority.end(),
                     [](int p) { return p == 0 || p == 1; });
}

inline bool is_cobuchi(const ParityAutomaton& a) {
  return std::all_of(a.priority.begin(), a.priority.end(),
                     [](int p) { return p == 1 || p == 2; });
}

// ---------------------------------------------------------------------------
// Cover normalization
//
// dia(q1..qn) becomes cover(q1..qn,qt) for a fresh accept-all state qt
// with priority 0 and delta(qt,c) = cover(qt) | cover(); box(S) becomes
// the disjunction of cover(S') over all subsets S' of S, including the
// empty one. qt is added exactly when some non-cover clause exists.

inline ParityAutomaton normalize_to_covers(const ParityAutomaton& a) {
  a.validate();
  if (all_cover(a)) return a;
  ParityAutomaton out = a;
  std::string qt_name = "q_t";
  while (std::find(out.state_names.begin(), out.state_names.end(), qt_name) !=
         out.state_names.end())
    qt_name += "'";
  const int qt = out.num_states();
  out.state_names.push_back(qt_name);
  out.priority.push_back(0);
  for (Letter c = 0; c < out.num_letters(); ++c)
    out.delta[{qt, c}] = {make_clause(ClauseKind::Cover, {qt}),
                          make_clause(ClauseKind::Cover, {})};
  for (auto& [key, tf] : out.delta) {
    if (key.first == qt) continue;
    TransitionFormula replaced;
    for (const Clause& c : tf) {
      switch (c.kind) {
        case ClauseKind::Cover:
          replaced.push_back(c);
          break;
        case ClauseKind::Dia: {
          std::vector<int> states = c.states;
          states.push_back(qt);
          replaced.push_back(make_clause(ClauseKind::Cover, std::move(states)));
          // The empty conjunction holds everywhere, including leaves,
          // where cover(qt) alone would fail.
          if (c.states.empty()) replaced.push_back(make_clause(ClauseKind::Cover, {}));
          break;
        }
        case ClauseKind::Box: {
          const size_t k = c.states.size();
          for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
            std::vector<int> subset;
            for (size_t i = 0; i < k; ++i)
              if ((mask >> i) & 1u) subset.push_back(c.states[i]);
            replaced.push_back(make_clause(ClauseKind::Cover, std::move(subset)));
          }
          break;
        }
      }
    }
    // Drop duplicate disjuncts introduced by overlapping box expansions.
    TransitionFormula dedup;
    for (auto& cl : replaced)
      if (std::find(dedup.begin(), dedup.end(), cl) == dedup.end()) dedup.push_back(cl);
    tf = std::move(dedup);
  }
  out.validate();
  return out;
}

// ---------------------------------------------------------------------------
// Acceptance game
//
// Duplicator's marking move is decomposed to avoid enumerating all
// markings: at (q,v) Duplicator picks a cover disjunct; Spoiler then
// challenges either a diamond obligation (Duplicator answers with a
// witness successor) or a successor (Duplicator answers with a cover
// member for it). Every position of a macro round carries the priority
// of the round's source state, so a round contributes exactly one state
// priority to the play.
//
// The game keeps references to the automaton and the graph; both must
// outlive it.

class AcceptanceGame {
 public:
  AcceptanceGame(const ParityAutomaton& a, const ColoredGraph& g, int start_state,
                 Vertex start_vertex)
      : automaton_(a), graph_(g) {
    a.validate();
    if (a.predicates != g.predicates())
      throw std::invalid_argument("AcceptanceGame: automaton and graph predicate sets differ");
    if (!all_cover(a))
      throw std::invalid_argument("AcceptanceGame: automaton is not cover-normalized");
    if (start_state < 0 || start_state >= a.num_states())
      throw std::invalid_argument("AcceptanceGame: start state out of range");
    build(start_state, start_vertex);
  }

  const ParityArena& arena() const { return arena_; }

  bool duplicator_wins() {
    ensure_solved();
    return solved_->winner[static_cast<size_t>(arena_.start)] == Player::Even;
  }

  const SolveResult& solution() {
    ensure_solved();
    return *solved_;
  }

  /// All (state, vertex) pairs a Spoiler challenge can reach in one round
  /// from (q,v) when Duplicator follows the solved winning strategy.
  /// Only meaningful on pairs won by Duplicator.
  std::vector<std::pair<int, Vertex>> macro_children(int q, Vertex v) {
    ensure_solved();
    auto it = state_pos_.find({q, v});
    if (it == state_pos_.end())
      throw std::invalid_argument("macro_children: pair was never constructed");
    int pos = it->second;
    const auto& strat = solved_->strategy_even.choices;
    auto choice = strat.find(pos);
    if (choice == strat.end())
      throw std::invalid_argument("macro_children: no winning move at this pair");
    const Node& clause_node = nodes_[static_cast<size_t>(choice->second)];
    const Clause& clause =
        automaton_.delta_at(q, graph_.color_mask(v))[static_cast<size_t>(clause_node.clause)];
    std::set<std::pair<int, Vertex>> out;
    for (int qi : clause.states) {
      int dia = dia_pos_.at({q, qi, v});
      int succ_state_pos = strat.at(dia);
      out.insert(decode_state_pos(succ_state_pos));
    }
    for (Vertex w : graph_.successors(v)) {
      int sp = succ_pos_.at({state_pos_.at({q, v}), clause_node.clause, w});
      int follow = strat.at(sp);
      out.insert(decode_state_pos(follow));
    }
    return {out.begin(), out.end()};
  }

  /// All pairs reachable from the start pair under the winning strategy.
  std::vector<std::pair<int, Vertex>> reachable_pairs() {
    ensure_solved();
    std::vector<std::pair<int, Vertex>> order{start_pair_};
    std::set<std::pair<int, Vertex>> seen{start_pair_};
    for (size_t i = 0; i < order.size(); ++i)
      for (const auto& child : macro_children(order[i].first, order[i].second))
        if (seen.insert(child).second) order.push_back(child);
    return order;
  }

  std::pair<int, Vertex> start_pair() const { return start_pair_; }

 private:
  struct Node {
    enum Kind { State, Clause, Dia, Succ } kind;
    int q;           // source state of the macro round
    Vertex v;        // vertex of the macro round
    int clause;      // clause index (Clause/Succ)
    int obligation;  // Dia: challenged state; Succ: challenged successor vertex
  };

  std::pair<int, Vertex> decode_state_pos(int pos) const {
    const Node& n = nodes_[static_cast<size_t>(pos)];
    if (n.kind != Node::State)
      throw std::logic_error("AcceptanceGame: expected a state position");
    return {n.q, n.v};
  }

  int intern(Node node, std::map<std::tuple<int, int, Vertex, int, int>, int>& table) {
    auto key = std::make_tuple(static_cast<int>(node.kind), node.q, node.v, node.clause,
                               node.obligation);
    auto it = table.find(key);
    if (it != table.end()) return it->second;
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back(node);
    arena_.owner.push_back(node.kind == Node::Clause ? Player::Odd : Player::Even);
    arena_.priority.push_back(automaton_.priority[static_cast<size_t>(node.q)]);
    arena_.moves.emplace_back();
    table.emplace(std::move(key), id);
    return id;
  }

  void build(int start_state, Vertex start_vertex) {
    std::map<std::tuple<int, int, Vertex, int, int>, int> table;
    auto state_node = [&](int q, Vertex v) {
      int id = intern({Node::State, q, v, -1, -1}, table);
      state_pos_[{q, v}] = id;
      return id;
    };
    start_pair_ = {start_state, start_vertex};
    int start = state_node(start_state, start_vertex);
    arena_.start = start;
    std::vector<int> work{start};
    std::set<int> expanded;
    while (!work.empty()) {
      int pos = work.back();
      work.pop_back();
      if (!expanded.insert(pos).second) continue;
      Node node = nodes_[static_cast<size_t>(pos)];
      if (node.kind != Node::State) continue;
      const int q = node.q;
      const Vertex v = node.v;
      const TransitionFormula& tf = automaton_.delta_at(q, graph_.color_mask(v));
      for (int ci = 0; ci < static_cast<int>(tf.size()); ++ci) {
        int clause_id = intern({Node::Clause, q, v, ci, -1}, table);
        arena_.moves[static_cast<size_t>(pos)].push_back(clause_id);
        const Clause& clause = tf[static_cast<size_t>(ci)];
        for (int qi : clause.states) {
          int dia_id = intern({Node::Dia, q, v, -1, qi}, table);
          dia_pos_[{q, qi, v}] = dia_id;
          arena_.moves[static_cast<size_t>(clause_id)].push_back(dia_id);
          if (arena_.moves[static_cast<size_t>(dia_id)].empty())
            for (Vertex w : graph_.successors(v)) {
              int next = state_node(qi, w);
              arena_.moves[static_cast<size_t>(dia_id)].push_back(next);
              work.push_back(next);
            }
        }
        for (Vertex w : graph_.successors(v)) {
          int succ_id = intern({Node::Succ, q, v, ci, w}, table);
          succ_pos_[{pos, ci, w}] = succ_id;
          arena_.moves[static_cast<size_t>(clause_id)].push_back(succ_id);
          if (arena_.moves[static_cast<size_t>(succ_id)].empty())
            for (int qi : clause.states) {
              int next = state_node(qi, w);
              arena_.moves[static_cast<size_t>(succ_id)].push_back(next);
              work.push_back(next);
            }
        }
      }
    }
    arena_.validate();
  }

  void ensure_solved() {
    if (!solved_) solved_ = solve(arena_);
  }

  const ParityAutomaton& automaton_;
  const ColoredGraph& graph_;
  ParityArena arena_;
  std::vector<Node> nodes_;
  std::map<std::pair<int, Vertex>, int> state_pos_;
  std::map<std::tuple<int, int, Vertex>, int> dia_pos_;    // (q, obligation, v)
  std::map<std::tuple<int, int, Vertex>, int> succ_pos_;   // (state pos, clause, w)
  std::pair<int, Vertex> start_pair_;
  std::optional<SolveResult> solved_;
};

/// Arena of the acceptance game started at (initial, point).
inline ParityArena acceptance_arena(const ParityAutomaton& a, const ColoredGraph& g) {
  return AcceptanceGame(a, g, a.initial, g.point()).arena();
}

inline bool accepts_from(const ParityAutomaton& a, int state, const ColoredGraph& g,
                         Vertex vertex) {
  return AcceptanceGame(a, g, state, vertex).duplicator_wins();
}

inline bool accepts_from(const ParityAutomaton& a, int state, const ColoredGraph& g) {
  return accepts_from(a, state, g, g.point());
}

inline bool accepts(const ParityAutomaton& a, const ColoredGraph& g) {
  return accepts_from(a, a.initial, g, g.point());
}

// ---------------------------------------------------------------------------
// Strategy trees

/// Tree of (state, vertex) labels generated by Duplicator's positional
/// winning strategy. A node whose label already occurred on its root path
/// is not expanded again; `backlink` points at that earlier occurrence
/// (positionality makes the subtrees equal). Nodes cut off by the depth
/// bound instead have `truncated` set.
struct StrategyTree {
  struct Node {
    int state;
    Vertex vertex;
    std::vector<int> children;
    std::optional<int> backlink;
    bool truncated = false;
  };
  std::vector<Node> nodes;  // node 0 is the root

  std::set<int> states_at(Vertex v) const {
    std::set<int> out;
    for (const auto& n : nodes)
      if (n.vertex == v) out.insert(n.state);
    return out;
  }
};

inline StrategyTree strategy_tree(const ParityAutomaton& a, const ColoredGraph& g,
                                  int depth_bound) {
  AcceptanceGame game(a, g, a.initial, g.point());
  if (!game.duplicator_wins())
    throw std::invalid_argument("strategy_tree: the automaton rejects the graph");
  StrategyTree tree;
  struct Item {
    int node;
    int depth;
    std::vector<int> path;  // ancestor node indices, root first
  };
  tree.nodes.push_back({a.initial, g.point(), {}, std::nullopt, false});
  std::vector<Item> work{{0, 0, {}}};
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    std::pair<int, Vertex> label{tree.nodes[static_cast<size_t>(item.node)].state,
                                 tree.nodes[static_cast<size_t>(item.node)].vertex};
    int repeat = -1;
    for (int anc : item.path) {
      const auto& an = tree.nodes[static_cast<size_t>(anc)];
      if (an.state == label.first && an.vertex == label.second) {
        repeat = anc;
        break;
      }
    }
    if (repeat != -1) {
      // Positional strategy: the subtree here repeats the ancestor's.
      tree.nodes[static_cast<size_t>(item.node)].backlink = repeat;
      continue;
    }
    if (item.depth >= depth_bound) {
      tree.nodes[static_cast<size_t>(item.node)].truncated = true;
      continue;
    }
    std::vector<int> path = item.path;
    path.push_back(item.node);
    for (const auto& [qc, vc] : game.macro_children(label.first, label.second)) {
      int child = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back({qc, vc, {}, std::nullopt, false});
      tree.nodes[static_cast<size_t>(item.node)].children.push_back(child);
      work.push_back({child, item.depth + 1, path});
    }
  }
  return tree;
}

// ---------------------------------------------------------------------------
// JSON format
//
// {"predicates":[...], "states":[...], "initial":"q0",
//  "priorities":{"q0":0,...},
//  "delta":[{"state":"q0","letter":["F"],
//            "clauses":[{"kind":"cover","states":["q1"]}]} ...]}
// Letters not listed default to false.

using json = nlohmann::ordered_json;

inline json automaton_to_json(const ParityAutomaton& a) {
  json j;
  j["predicates"] = a.predicates;
  j["states"] = a.state_names;
  j["initial"] = a.state_names[static_cast<size_t>(a.initial)];
  json prios = json::object();
  for (int q = 0; q < a.num_states(); ++q)
    prios[a.state_names[static_cast<size_t>(q)]] = a.priority[static_cast<size_t>(q)];
  j["priorities"] = std::move(prios);
  json delta = json::array();
  for (const auto& [key, tf] : a.delta) {
    json entry;
    entry["state"] = a.state_names[static_cast<size_t>(key.first)];
    json letter = json::array();
    for (size_t b = 0; b < a.predicates.size(); ++b)
      if ((key.second >> b) & 1u) letter.push_back(a.predicates[b]);
    entry["letter"] = std::move(letter);
    json clauses = json::array();
    for (const Clause& c : tf) {
      json cj;
      switch (c.kind) {
        case ClauseKind::Cover: cj["kind"] = "cover"; break;
        case ClauseKind::Dia: cj["kind"] = "dia"; break;
        case ClauseKind::Box: cj["kind"] = "box"; break;
      }
      json states = json::array();
      for (int q : c.states) states.push_back(a.state_names[static_cast<size_t>(q)]);
      cj["states"] = std::move(states);
      clauses.push_back(std::move(cj));
    }
    entry["clauses"] = std::move(clauses);
    delta.push_back(std::move(entry));
  }
  j["delta"] = std::move(delta);
  return j;
}

inline ParityAutomaton automaton_from_json(const json& j) {
  for (const char* key : {"predicates", "states", "initial", "priorities", "delta"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("automaton json: missing field '") + key + "'");
  ParityAutomaton a;
  a.predicates = j.at("predicates").get<std::vector<std::string>>();
  std::sort(a.predicates.begin(), a.predicates.end());
  a.predicates.erase(std::unique(a.predicates.begin(), a.predicates.end()),
                     a.predicates.end());
  a.state_names = j.at("states").get<std::vector<std::string>>();
  a.initial = a.state_index(j.at("initial").get<std::string>());
  a.priority.assign(static_cast<size_t>(a.num_states()), 0);
  for (const auto& [name, p] : j.at("priorities").items())
    a.priority[static_cast<size_t>(a.state_index(name))] = p.get<int>();
  for (const auto& entry : j.at("delta")) {
    int state = a.state_index(entry.at("state").get<std::string>());
    Letter letter = 0;
    for (const auto& pred : entry.at("letter")) {
      auto it = std::lower_bound(a.predicates.begin(), a.predicates.end(),
                                 pred.get<std::string>());
      if (it == a.predicates.end() || *it != pred.get<std::string>())
        throw std::invalid_argument("automaton json: letter uses undeclared predicate");
      letter |= Letter{1} << (it - a.predicates.begin());
    }
    TransitionFormula tf;
    for (const auto& cj : entry.at("clauses")) {
      std::string kind = cj.at("kind").get<std::string>();
      ClauseKind ck;
      if (kind == "cover")
        ck = ClauseKind::Cover;
      else if (kind == "dia")
        ck = ClauseKind::Dia;
      else if (kind == "box")
        ck = ClauseKind::Box;
      else
        throw std::invalid_argument("automaton json: clause kind must be cover|dia|box");
      std::vector<int> states;
      for (const auto& s : cj.at("states")) states.push_back(a.state_index(s.get<std::string>()));
      tf.push_back(make_clause(ck, std::move(states)));
    }
    if (a.delta.count({state, letter}))
      throw std::invalid_argument("automaton json: duplicate delta entry");
    a.delta[{state, letter}] = std::move(tf);
  }
  a.validate();
  return a;
}

}  // namespace sccmu

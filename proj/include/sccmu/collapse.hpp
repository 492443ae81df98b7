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
#include <optional>
#include <string>
#include <vector>

#include "automaton.hpp"
#include "graph.hpp"

namespace sccmu {

// ---------------------------------------------------------------------------
// Buchi -> coBuchi window construction
//
// On graphs whose strongly connected components have at most k vertices,
// a Buchi automaton B is equivalent to the coBuchi automaton C that plays
// B while memorizing the last W = |Q|*k states: once every component is
// that small, a winning play must revisit a final state at least every W
// moves from some point on, so "the current window contains a final
// state" eventually holds forever.

/// State of the collapsed automaton: the window of recently visited
/// source states, grown from [q0] until it reaches length W and sliding
/// afterwards.
using ListState = std::vector<int>;

namespace detail {

inline std::string list_state_name(const ParityAutomaton& b, const ListState& window) {
  std::string name = "[";
  for (size_t i = 0; i < window.size(); ++i) {
    if (i) name += ",";
    name += b.state_names[static_cast<size_t>(window[i])];
  }
  return name + "]";
}

}  // namespace detail

/// The window construction, restricted to the lists reachable from the
/// initial singleton [q0] (the full list space is |Q|^W and mostly dead).
/// Requires a cover-normalized Buchi automaton; the output is coBuchi
/// with final (priority 2) exactly the full-length windows containing a
/// final state of b, nonfinal windows having priority 1.
inline ParityAutomaton buchi_to_cobuchi(const ParityAutomaton& b, int k,
                                        std::optional<int> window_override = std::nullopt) {
  b.validate();
  if (k < 1) throw std::invalid_argument("buchi_to_cobuchi: k must be positive");
  if (!is_buchi(b)) throw std::invalid_argument("buchi_to_cobuchi: input is not Buchi");
  if (!all_cover(b))
    throw std::invalid_argument("buchi_to_cobuchi: input is not cover-normalized");
  const int window_size = window_override.value_or(b.num_states() * k);
  if (window_size < 1) throw std::invalid_argument("buchi_to_cobuchi: empty window");

  auto is_final_window = [&](const ListState& w) {
    if (static_cast<int>(w.size()) != window_size) return false;
    for (int q : w)
      if (b.priority[static_cast<size_t>(q)] == 0) return true;
    return false;
  };

  ParityAutomaton c;
  c.predicates = b.predicates;
  std::map<ListState, int> ids;
  std::vector<ListState> order;
  auto intern = [&](const ListState& w) {
    auto it = ids.find(w);
    if (it != ids.end()) return it->second;
    int id = static_cast<int>(ids.size());
    ids.emplace(w, id);
    order.push_back(w);
    c.state_names.push_back(detail::list_state_name(b, w));
    c.priority.push_back(is_final_window(w) ? 2 : 1);
    return id;
  };
  ListState init{b.initial};
  c.initial = intern(init);
  for (size_t next = 0; next < order.size(); ++next) {
    ListState window = order[next];
    int id = ids.at(window);
    ListState slid = window;
    if (static_cast<int>(slid.size()) >= window_size) slid.erase(slid.begin());
    for (Letter letter = 0; letter < b.num_letters(); ++letter) {
      const TransitionFormula& tf = b.delta_at(window.back(), letter);
      if (tf.empty()) continue;
      TransitionFormula out;
      for (const Clause& clause : tf) {
        std::vector<int> targets;
        for (int q : clause.states) {
          ListState extended = slid;
          extended.push_back(q);
          targets.push_back(intern(extended));
        }
        out.push_back(make_clause(ClauseKind::Cover, std::move(targets)));
      }
      c.delta[{id, letter}] = std::move(out);
    }
  }
  c.validate();
  return c;
}

// ---------------------------------------------------------------------------
// Witness search outside the SCCk hypothesis
//
// The equivalence argument pigeonholes inside a small component; on a
// single directed cycle longer than k it can fail. The search sweeps all
// F/N colorings of cycles of length k+1 .. search_bound and reports the
// first graph on which b and its collapse disagree.

inline ColoredGraph colored_cycle(int length, std::uint32_t f_bits) {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<SatPair> sat;
  for (int v = 0; v < length; ++v) {
    vertices.push_back(v);
    edges.emplace_back(v, (v + 1) % length);
    if ((f_bits >> v) & 1u) sat.emplace_back("F", v);
  }
  return ColoredGraph({"F"}, std::move(vertices), std::move(edges), std::move(sat), 0);
}

inline std::optional<ColoredGraph> find_disagreement_outside_scck(const ParityAutomaton& b,
                                                                  int k, int search_bound) {
  if (b.predicates != std::vector<std::string>{"F"})
    throw std::invalid_argument("find_disagreement_outside_scck: automaton must be over {F}");
  ParityAutomaton c = buchi_to_cobuchi(b, k);
  for (int length = k + 1; length <= search_bound; ++length) {
    for (std::uint32_t f_bits = 0; f_bits < (1u << length); ++f_bits) {
      ColoredGraph g = colored_cycle(length, f_bits);
      if (accepts(b, g) != accepts(c, g)) return g;
    }
  }
  return std::nullopt;
}

}  // namespace sccmu

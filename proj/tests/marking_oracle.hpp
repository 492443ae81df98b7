// Test-only reference construction for the acceptance game: Duplicator's
// move enumerates whole marking functions m : Succ(v) -> Powerset(Q)
// instead of the decomposed clause/challenge encoding. Exponential in
// |Q|*|Succ(v)|, so only usable on tiny instances, but it evaluates the
// transition formula directly (covers, diamond conjunctions and boxes)
// and is independent of the production encoding.

#pragma once

#include <map>
#include <vector>

#include "sccmu/automaton.hpp"
#include "sccmu/game.hpp"
#include "sccmu/graph.hpp"

namespace sccmu_test {

using namespace sccmu;

inline bool marking_satisfies(const Clause& clause, const std::vector<std::uint32_t>& marks) {
  switch (clause.kind) {
    case ClauseKind::Cover: {
      for (int q : clause.states) {
        bool witnessed = false;
        for (std::uint32_t m : marks)
          if ((m >> q) & 1u) witnessed = true;
        if (!witnessed) return false;
      }
      for (std::uint32_t m : marks) {
        bool covered = false;
        for (int q : clause.states)
          if ((m >> q) & 1u) covered = true;
        if (!covered) return false;
      }
      return true;
    }
    case ClauseKind::Dia: {
      for (int q : clause.states) {
        bool witnessed = false;
        for (std::uint32_t m : marks)
          if ((m >> q) & 1u) witnessed = true;
        if (!witnessed) return false;
      }
      return true;
    }
    case ClauseKind::Box: {
      for (std::uint32_t m : marks) {
        bool covered = false;
        for (int q : clause.states)
          if ((m >> q) & 1u) covered = true;
        if (!covered) return false;
      }
      return true;
    }
  }
  return false;
}

inline bool marking_satisfies(const TransitionFormula& tf,
                              const std::vector<std::uint32_t>& marks) {
  for (const Clause& c : tf)
    if (marking_satisfies(c, marks)) return true;
  return false;
}

/// Acceptance by the explicit-marking game. Works on automata with any
/// clause mix; no normalization required.
inline bool marking_oracle_accepts(const ParityAutomaton& a, const ColoredGraph& g,
                                   int start_state, Vertex start_vertex) {
  a.validate();
  if (a.predicates != g.predicates())
    throw std::invalid_argument("marking_oracle: predicate sets differ");
  const int num_states = a.num_states();

  ParityArena arena;
  std::map<std::pair<int, Vertex>, int> state_pos;
  struct Pending {
    int q;
    Vertex v;
  };
  std::vector<Pending> todo;
  auto intern_state = [&](int q, Vertex v) {
    auto it = state_pos.find({q, v});
    if (it != state_pos.end()) return it->second;
    int id = static_cast<int>(arena.owner.size());
    arena.owner.push_back(Player::Even);
    arena.priority.push_back(a.priority[static_cast<size_t>(q)]);
    arena.moves.emplace_back();
    state_pos[{q, v}] = id;
    todo.push_back({q, v});
    return id;
  };
  arena.start = intern_state(start_state, start_vertex);

  while (!todo.empty()) {
    auto [q, v] = todo.back();
    todo.pop_back();
    int self = state_pos.at({q, v});
    const TransitionFormula& tf = a.delta_at(q, g.color_mask(v));
    const auto& succ = g.successors(v);
    const size_t fanout = succ.size();
    if (static_cast<size_t>(num_states) * fanout > 18)
      throw std::invalid_argument("marking_oracle: instance too large to enumerate");
    // Every marking function Succ(v) -> Powerset(Q).
    std::vector<std::uint32_t> marks(fanout, 0);
    const std::uint64_t total = [&] {
      std::uint64_t t = 1;
      for (size_t i = 0; i < fanout; ++i) t *= (1ull << num_states);
      return t;
    }();
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t rest = code;
      for (size_t i = 0; i < fanout; ++i) {
        marks[i] = static_cast<std::uint32_t>(rest & ((1ull << num_states) - 1));
        rest >>= num_states;
      }
      if (!marking_satisfies(tf, marks)) continue;
      int mark_pos = static_cast<int>(arena.owner.size());
      arena.owner.push_back(Player::Odd);
      arena.priority.push_back(a.priority[static_cast<size_t>(q)]);
      arena.moves.emplace_back();
      arena.moves[static_cast<size_t>(self)].push_back(mark_pos);
      for (size_t i = 0; i < fanout; ++i)
        for (int qn = 0; qn < num_states; ++qn)
          if ((marks[i] >> qn) & 1u) {
            int target = intern_state(qn, succ[i]);  // may reallocate arena.moves
            arena.moves[static_cast<size_t>(mark_pos)].push_back(target);
          }
    }
    (void)self;
  }
  arena.validate();
  SolveResult r = solve(arena);
  return r.winner[static_cast<size_t>(arena.start)] == Player::Even;
}

inline bool marking_oracle_accepts(const ParityAutomaton& a, const ColoredGraph& g) {
  return marking_oracle_accepts(a, g, a.initial, g.point());
}

}  // namespace sccmu_test

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

#include <string>
#include <vector>

#include "automaton.hpp"
#include "game.hpp"
#include "random.hpp"

namespace sccmu {

/// Random min-parity arena for oracle sweeps: small out-degrees, a few
/// dead ends, priorities in [0, max_priority].
inline ParityArena random_arena(std::uint64_t seed, int max_positions, int max_priority = 3,
                                int max_branching = 3) {
  Rng rng(seed);
  ParityArena a;
  const int n = rng.range(1, max_positions);
  for (int v = 0; v < n; ++v) {
    a.owner.push_back(rng.chance(0.5) ? Player::Even : Player::Odd);
    a.priority.push_back(rng.range(0, max_priority));
    std::vector<int> moves;
    int degree = rng.chance(0.1) ? 0 : rng.range(1, max_branching);
    for (int d = 0; d < degree; ++d) {
      int target = rng.range(0, n - 1);
      if (std::find(moves.begin(), moves.end(), target) == moves.end())
        moves.push_back(target);
    }
    a.moves.push_back(std::move(moves));
  }
  a.start = 0;
  a.validate();
  return a;
}

/// Random cover-form Buchi automaton over {F}. Already normalized, so it
/// feeds the window construction directly.
inline ParityAutomaton random_buchi_automaton(std::uint64_t seed, int max_states) {
  Rng rng(seed);
  ParityAutomaton a;
  a.predicates = {"F"};
  const int n = rng.range(1, max_states);
  for (int q = 0; q < n; ++q) {
    a.state_names.push_back("q" + std::to_string(q));
    a.priority.push_back(rng.chance(0.5) ? 0 : 1);
  }
  a.initial = 0;
  for (int q = 0; q < n; ++q) {
    for (Letter letter = 0; letter < a.num_letters(); ++letter) {
      int disjuncts = rng.range(0, 2);
      TransitionFormula tf;
      for (int d = 0; d < disjuncts; ++d) {
        std::vector<int> states;
        for (int s = 0; s < n; ++s)
          if (rng.chance(0.45)) states.push_back(s);
        Clause c = make_clause(ClauseKind::Cover, std::move(states));
        if (std::find(tf.begin(), tf.end(), c) == tf.end()) tf.push_back(std::move(c));
      }
      if (!tf.empty()) a.delta[{q, letter}] = std::move(tf);
    }
  }
  a.validate();
  return a;
}

/// Random weak automaton over {F}: clause states are drawn at or below
/// the source state's priority, so priorities never increase.
inline ParityAutomaton random_weak_automaton(std::uint64_t seed, int max_states) {
  Rng rng(seed);
  ParityAutomaton a;
  a.predicates = {"F"};
  const int n = rng.range(1, max_states);
  for (int q = 0; q < n; ++q) {
    a.state_names.push_back("w" + std::to_string(q));
    a.priority.push_back(rng.range(0, 3));
  }
  a.initial = 0;
  for (int q = 0; q < n; ++q) {
    std::vector<int> allowed;
    for (int s = 0; s < n; ++s)
      if (a.priority[static_cast<size_t>(s)] <= a.priority[static_cast<size_t>(q)])
        allowed.push_back(s);
    for (Letter letter = 0; letter < a.num_letters(); ++letter) {
      int disjuncts = rng.range(0, 2);
      TransitionFormula tf;
      for (int d = 0; d < disjuncts; ++d) {
        std::vector<int> states;
        for (int s : allowed)
          if (rng.chance(0.5)) states.push_back(s);
        ClauseKind kind = static_cast<ClauseKind>(rng.range(0, 2));
        Clause c = make_clause(kind, std::move(states));
        if (std::find(tf.begin(), tf.end(), c) == tf.end()) tf.push_back(std::move(c));
      }
      if (!tf.empty()) a.delta[{q, letter}] = std::move(tf);
    }
  }
  a.validate();
  return a;
}

/// Random automaton with mixed clause kinds, for normalization sweeps.
inline ParityAutomaton random_mixed_automaton(std::uint64_t seed, int max_states,
                                              int max_priority = 2) {
  Rng rng(seed);
  ParityAutomaton a;
  a.predicates = {"F"};
  const int n = rng.range(1, max_states);
  for (int q = 0; q < n; ++q) {
    a.state_names.push_back("q" + std::to_string(q));
    a.priority.push_back(rng.range(0, max_priority));
  }
  a.initial = 0;
  for (int q = 0; q < n; ++q) {
    for (Letter letter = 0; letter < a.num_letters(); ++letter) {
      int disjuncts = rng.range(0, 2);
      TransitionFormula tf;
      for (int d = 0; d < disjuncts; ++d) {
        std::vector<int> states;
        for (int s = 0; s < n; ++s)
          if (rng.chance(0.4)) states.push_back(s);
        ClauseKind kind = static_cast<ClauseKind>(rng.range(0, 2));
        Clause c = make_clause(kind, std::move(states));
        if (std::find(tf.begin(), tf.end(), c) == tf.end()) tf.push_back(std::move(c));
      }
      if (!tf.empty()) a.delta[{q, letter}] = std::move(tf);
    }
  }
  a.validate();
  return a;
}

}  // namespace sccmu

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
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace sccmu {

enum class Player { Even, Odd };

inline Player opponent(Player p) { return p == Player::Even ? Player::Odd : Player::Even; }

inline Player parity_winner_of(int priority) {
  return priority % 2 == 0 ? Player::Even : Player::Odd;
}

/// Min-parity game arena: Even wins an infinite play iff the smallest
/// priority occurring infinitely often is even; a player with no move
/// loses immediately. Positions are dense 0..n-1.
struct ParityArena {
  std::vector<Player> owner;
  std::vector<int> priority;
  std::vector<std::vector<int>> moves;
  int start = 0;

  int size() const { return static_cast<int>(owner.size()); }

  void validate() const {
    const int n = size();
    if (n == 0) throw std::invalid_argument("ParityArena: empty arena");
    if (priority.size() != owner.size() || moves.size() != owner.size())
      throw std::invalid_argument("ParityArena: component sizes differ");
    if (start < 0 || start >= n) throw std::invalid_argument("ParityArena: start out of range");
    for (const auto& ms : moves)
      for (int m : ms)
        if (m < 0 || m >= n) throw std::invalid_argument("ParityArena: move out of range");
    for (int p : priority)
      if (p < 0) throw std::invalid_argument("ParityArena: negative priority");
  }
};

/// Positional strategy: one chosen move per position, defined on the
/// owner's winning region.
struct PositionalStrategy {
  std::map<int, int> choices;
};

struct SolveResult {
  std::vector<Player> winner;  // per position
  PositionalStrategy strategy_even;
  PositionalStrategy strategy_odd;

  std::vector<int> region(Player p) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(winner.size()); ++v)
      if (winner[static_cast<size_t>(v)] == p) out.push_back(v);
    return out;
  }
};

namespace detail {

/// Zielonka with the attractor recursion. The input is totalized first
/// (dead ends get a forced move to a sink losing for their owner), so
/// every subgame arising below keeps at least one move per position.
/// The recursion on the second subgame is turned into a loop, which
/// bounds the call depth by the number of distinct priorities.
class ZielonkaSolver {
 public:
  explicit ZielonkaSolver(const ParityArena& a) : original_(a) {
    const int n = a.size();
    int max_prio = 0;
    for (int p : a.priority) max_prio = std::max(max_prio, p);
    // Positions n and n+1 are sinks where Even resp. Odd win.
    total_owner_ = a.owner;
    total_prio_ = a.priority;
    total_moves_ = a.moves;
    even_sink_ = n;
    odd_sink_ = n + 1;
    total_owner_.push_back(Player::Even);
    total_owner_.push_back(Player::Even);
    // Sink priorities sit at or above the existing range; each sink only
    // ever cycles on itself, so only its parity matters.
    int even_sink_prio = (max_prio % 2 == 0) ? max_prio : max_prio + 1;
    int odd_sink_prio = even_sink_prio + 1;
    total_prio_.push_back(even_sink_prio);
    total_prio_.push_back(odd_sink_prio);
    total_moves_.push_back({even_sink_});
    total_moves_.push_back({odd_sink_});
    for (int v = 0; v < n; ++v)
      if (total_moves_[static_cast<size_t>(v)].empty())
        total_moves_[static_cast<size_t>(v)].push_back(
            a.owner[static_cast<size_t>(v)] == Player::Even ? odd_sink_ : even_sink_);
    const int total = n + 2;
    pred_.assign(static_cast<size_t>(total), {});
    for (int v = 0; v < total; ++v)
      for (int w : total_moves_[static_cast<size_t>(v)])
        pred_[static_cast<size_t>(w)].push_back(v);
    winner_.assign(static_cast<size_t>(total), Player::Even);
    strat_even_.assign(static_cast<size_t>(total), -1);
    strat_odd_.assign(static_cast<size_t>(total), -1);
    in_game_.assign(static_cast<size_t>(total), 1);
  }

  SolveResult run() {
    std::vector<char> all = in_game_;
    solve(all);
    SolveResult result;
    const int n = original_.size();
    result.winner.assign(static_cast<size_t>(n), Player::Even);
    for (int v = 0; v < n; ++v) {
      Player w = winner_[static_cast<size_t>(v)];
      result.winner[static_cast<size_t>(v)] = w;
      if (original_.owner[static_cast<size_t>(v)] != w) continue;
      if (original_.moves[static_cast<size_t>(v)].empty()) continue;
      int choice = (w == Player::Even) ? strat_even_[static_cast<size_t>(v)]
                                       : strat_odd_[static_cast<size_t>(v)];
      if (choice < 0 || choice >= n) continue;  // move onto a sink never wins
      if (w == Player::Even)
        result.strategy_even.choices[v] = choice;
      else
        result.strategy_odd.choices[v] = choice;
    }
    return result;
  }

 private:
  int total_size() const { return static_cast<int>(total_owner_.size()); }

  int& strat_of(Player p, int v) {
    return p == Player::Even ? strat_even_[static_cast<size_t>(v)]
                             : strat_odd_[static_cast<size_t>(v)];
  }

  /// sigma-attractor of `targets` within `game`; removes nothing, just
  /// reports membership and fills the attractor strategy for sigma on
  /// newly attracted sigma positions.
  std::vector<char> attractor(Player sigma, const std::vector<char>& game,
                              const std::vector<int>& targets) {
    const int total = total_size();
    std::vector<char> in_attr(static_cast<size_t>(total), 0);
    std::vector<int> cnt(static_cast<size_t>(total), 0);
    for (int v = 0; v < total; ++v) {
      if (!game[static_cast<size_t>(v)]) continue;
      int c = 0;
      for (int w : total_moves_[static_cast<size_t>(v)])
        if (game[static_cast<size_t>(w)]) ++c;
      cnt[static_cast<size_t>(v)] = c;
    }
    std::vector<int> queue;
    for (int t : targets) {
      in_attr[static_cast<size_t>(t)] = 1;
      queue.push_back(t);
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (int v : pred_[static_cast<size_t>(u)]) {
        if (!game[static_cast<size_t>(v)] || in_attr[static_cast<size_t>(v)]) continue;
        if (total_owner_[static_cast<size_t>(v)] == sigma) {
          in_attr[static_cast<size_t>(v)] = 1;
          strat_of(sigma, v) = u;
          queue.push_back(v);
        } else if (--cnt[static_cast<size_t>(v)] == 0) {
          in_attr[static_cast<size_t>(v)] = 1;
          queue.push_back(v);
        }
      }
    }
    return in_attr;
  }

  void solve(std::vector<char> game) {
    const int total = total_size();
    while (true) {
      int min_prio = -1;
      for (int v = 0; v < total; ++v)
        if (game[static_cast<size_t>(v)])
          min_prio = (min_prio == -1) ? total_prio_[static_cast<size_t>(v)]
                                      : std::min(min_prio, total_prio_[static_cast<size_t>(v)]);
      if (min_prio == -1) return;  // empty subgame
      Player sigma = parity_winner_of(min_prio);
      std::vector<int> tops;
      for (int v = 0; v < total; ++v)
        if (game[static_cast<size_t>(v)] && total_prio_[static_cast<size_t>(v)] == min_prio)
          tops.push_back(v);
      std::vector<char> attr = attractor(sigma, game, tops);

      std::vector<char> rest(static_cast<size_t>(total), 0);
      bool rest_empty = true;
      for (int v = 0; v < total; ++v)
        if (game[static_cast<size_t>(v)] && !attr[static_cast<size_t>(v)]) {
          rest[static_cast<size_t>(v)] = 1;
          rest_empty = false;
        }
      if (!rest_empty) solve(rest);  // min priority there exceeds min_prio

      std::vector<int> opp_won;
      for (int v = 0; v < total; ++v)
        if (rest[static_cast<size_t>(v)] && winner_[static_cast<size_t>(v)] == opponent(sigma))
          opp_won.push_back(v);

      if (opp_won.empty()) {
        for (int v = 0; v < total; ++v) {
          if (!game[static_cast<size_t>(v)]) continue;
          if (attr[static_cast<size_t>(v)]) winner_[static_cast<size_t>(v)] = sigma;
        }
        // Top-priority sigma positions may move anywhere inside the game.
        for (int v : tops) {
          if (total_owner_[static_cast<size_t>(v)] != sigma) continue;
          for (int w : total_moves_[static_cast<size_t>(v)])
            if (game[static_cast<size_t>(w)]) {
              strat_of(sigma, v) = w;
              break;
            }
        }
        return;
      }

      std::vector<char> trap = attractor(opponent(sigma), game, opp_won);
      for (int v = 0; v < total; ++v)
        if (trap[static_cast<size_t>(v)]) {
          winner_[static_cast<size_t>(v)] = opponent(sigma);
          game[static_cast<size_t>(v)] = 0;
        }
      // Loop on the remainder instead of recursing.
    }
  }

  const ParityArena& original_;
  std::vector<Player> total_owner_;
  std::vector<int> total_prio_;
  std::vector<std::vector<int>> total_moves_;
  std::vector<std::vector<int>> pred_;
  std::vector<Player> winner_;
  std::vector<int> strat_even_, strat_odd_;
  std::vector<char> in_game_;
  int even_sink_ = -1, odd_sink_ = -1;
};

}  // namespace detail

/// Solves a min-parity game: winning regions partition the positions and
/// each returned strategy is positional and winning on its region.
inline SolveResult solve(const ParityArena& a) {
  a.validate();
  return detail::ZielonkaSolver(a).run();
}

// ---------------------------------------------------------------------------
// Brute-force oracle
//
// Positional determinacy licenses quantifying over positional strategies
// only: a position is won by Even iff some positional Even strategy beats
// every positional Odd strategy, and dually. With both strategies fixed
// the play from each position is a forced lasso.

struct Regions {
  std::vector<int> even_region;
  std::vector<int> odd_region;
};

namespace detail {

class StrategyEnumerator {
 public:
  StrategyEnumerator(const ParityArena& a, Player p) {
    for (int v = 0; v < a.size(); ++v)
      if (a.owner[static_cast<size_t>(v)] == p && !a.moves[static_cast<size_t>(v)].empty()) {
        positions_.push_back(v);
        limits_.push_back(static_cast<int>(a.moves[static_cast<size_t>(v)].size()));
      }
    choice_.assign(positions_.size(), 0);
  }

  void apply(std::vector<int>& next, const ParityArena& a) const {
    for (size_t i = 0; i < positions_.size(); ++i)
      next[static_cast<size_t>(positions_[i])] =
          a.moves[static_cast<size_t>(positions_[i])][static_cast<size_t>(choice_[i])];
  }

  bool advance() {
    for (size_t i = 0; i < choice_.size(); ++i) {
      if (++choice_[i] < limits_[i]) return true;
      choice_[i] = 0;
    }
    return false;
  }

  void reset() { std::fill(choice_.begin(), choice_.end(), 0); }

 private:
  std::vector<int> positions_;
  std::vector<int> limits_;
  std::vector<int> choice_;
};

/// Winner per position of the one-path play induced by a strategy pair.
/// next[v] == -1 marks a dead end (the owner of v loses there).
inline void forced_play_winners(const ParityArena& a, const std::vector<int>& next,
                                std::vector<Player>& out) {
  const int n = a.size();
  out.assign(static_cast<size_t>(n), Player::Even);
  std::vector<int> state(static_cast<size_t>(n), 0);  // 0 new, 1 on path, 2 done
  std::vector<int> path;
  for (int s = 0; s < n; ++s) {
    if (state[static_cast<size_t>(s)] == 2) continue;
    path.clear();
    int v = s;
    while (true) {
      if (state[static_cast<size_t>(v)] == 2) {
        for (auto it = path.rbegin(); it != path.rend(); ++it)
          out[static_cast<size_t>(*it)] = out[static_cast<size_t>(v)];
        break;
      }
      if (state[static_cast<size_t>(v)] == 1) {
        // Cycle found: min priority on the cycle decides.
        int min_prio = a.priority[static_cast<size_t>(v)];
        bool in_cycle = false;
        for (int u : path) {
          if (u == v) in_cycle = true;
          if (in_cycle) min_prio = std::min(min_prio, a.priority[static_cast<size_t>(u)]);
        }
        Player w = parity_winner_of(min_prio);
        for (auto it = path.rbegin(); it != path.rend(); ++it)
          out[static_cast<size_t>(*it)] = w;
        break;
      }
      state[static_cast<size_t>(v)] = 1;
      path.push_back(v);
      int nx = next[static_cast<size_t>(v)];
      if (nx == -1) {
        Player w = opponent(a.owner[static_cast<size_t>(v)]);
        for (auto it = path.rbegin(); it != path.rend(); ++it)
          out[static_cast<size_t>(*it)] = w;
        break;
      }
      v = nx;
    }
    for (int u : path) state[static_cast<size_t>(u)] = 2;
  }
}

inline std::vector<char> exists_forall_wins(const ParityArena& a, Player player) {
  const int n = a.size();
  std::vector<char> wins(static_cast<size_t>(n), 0);
  StrategyEnumerator mine(a, player);
  std::vector<int> next(static_cast<size_t>(n), -1);
  std::vector<Player> outcome;
  do {
    StrategyEnumerator theirs(a, opponent(player));
    std::vector<char> all(static_cast<size_t>(n), 1);
    do {
      std::fill(next.begin(), next.end(), -1);
      mine.apply(next, a);
      theirs.apply(next, a);
      forced_play_winners(a, next, outcome);
      for (int v = 0; v < n; ++v)
        if (outcome[static_cast<size_t>(v)] != player) all[static_cast<size_t>(v)] = 0;
    } while (theirs.advance());
    for (int v = 0; v < n; ++v)
      if (all[static_cast<size_t>(v)]) wins[static_cast<size_t>(v)] = 1;
  } while (mine.advance());
  return wins;
}

}  // namespace detail

inline Regions brute_force_solve(const ParityArena& a, int bound = 8) {
  a.validate();
  if (a.size() > bound)
    throw std::invalid_argument("brute_force_solve: arena exceeds the position bound");
  std::vector<char> even = detail::exists_forall_wins(a, Player::Even);
  std::vector<char> odd = detail::exists_forall_wins(a, Player::Odd);
  Regions r;
  for (int v = 0; v < a.size(); ++v) {
    bool e = even[static_cast<size_t>(v)] != 0;
    bool o = odd[static_cast<size_t>(v)] != 0;
    if (e == o)
      throw std::logic_error("brute_force_solve: determinacy violated at position " +
                             std::to_string(v));
    (e ? r.even_region : r.odd_region).push_back(v);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Strategy verification

namespace detail {

/// True iff the induced subgraph on `verts` (indices into the restricted
/// move table) contains no cycle whose minimum priority has the bad
/// parity. Standard peel-off check: inspect the minimum priority of each
/// nontrivial SCC, then remove its carriers and look again.
inline bool cycles_all_good(const std::vector<std::vector<int>>& succ,
                            const std::vector<int>& priority, std::vector<int> verts,
                            Player player) {
  if (verts.empty()) return true;
  // Tarjan on the induced subgraph.
  std::map<int, int> idx, low, comp;
  std::vector<int> stack;
  std::map<int, bool> on_stack;
  int counter = 0, comp_count = 0;
  std::vector<std::vector<int>> comps;
  std::vector<char> in_set_all(priority.size(), 0);
  for (int v : verts) in_set_all[static_cast<size_t>(v)] = 1;

  struct Frame {
    int v;
    size_t child;
  };
  for (int root : verts) {
    if (idx.count(root)) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& sl = succ[static_cast<size_t>(f.v)];
      bool descended = false;
      while (f.child < sl.size()) {
        int w = sl[f.child++];
        if (!in_set_all[static_cast<size_t>(w)]) continue;
        if (!idx.count(w)) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) low[f.v] = std::min(low[f.v], idx[w]);
      }
      if (descended) continue;
      if (f.child >= sl.size()) {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == idx[v]) {
          std::vector<int> c;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp[w] = comp_count;
            c.push_back(w);
            if (w == v) break;
          }
          comps.push_back(std::move(c));
          ++comp_count;
        }
      }
    }
  }
  for (const auto& c : comps) {
    bool has_internal_edge = false;
    std::vector<char> in_c(priority.size(), 0);
    for (int v : c) in_c[static_cast<size_t>(v)] = 1;
    for (int v : c)
      for (int w : succ[static_cast<size_t>(v)])
        if (in_c[static_cast<size_t>(w)]) has_internal_edge = true;
    if (!has_internal_edge) continue;
    int min_prio = priority[static_cast<size_t>(c.front())];
    for (int v : c) min_prio = std::min(min_prio, priority[static_cast<size_t>(v)]);
    if (parity_winner_of(min_prio) != player) return false;
    std::vector<int> trimmed;
    for (int v : c)
      if (priority[static_cast<size_t>(v)] != min_prio) trimmed.push_back(v);
    if (!cycles_all_good(succ, priority, std::move(trimmed), player)) return false;
  }
  return true;
}

}  // namespace detail

/// Checks that a positional strategy wins for `player` from every
/// position of `region`: fix the player's moves to the strategy, keep all
/// opponent moves, and require that no reachable dead end belongs to the
/// player and every reachable cycle has a minimum priority of the
/// player's parity. Throws if the strategy selects an illegal move.
inline bool verify_strategy(const ParityArena& a, const PositionalStrategy& s, Player player,
                            const std::vector<int>& region) {
  a.validate();
  const int n = a.size();
  for (const auto& [v, w] : s.choices) {
    if (v < 0 || v >= n) throw std::invalid_argument("verify_strategy: unknown position");
    const auto& ms = a.moves[static_cast<size_t>(v)];
    if (std::find(ms.begin(), ms.end(), w) == ms.end())
      throw std::invalid_argument("verify_strategy: strategy selects an illegal move at " +
                                  std::to_string(v));
  }
  std::vector<std::vector<int>> succ(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (a.owner[static_cast<size_t>(v)] == player) {
      auto it = s.choices.find(v);
      if (it != s.choices.end()) succ[static_cast<size_t>(v)].push_back(it->second);
    } else {
      succ[static_cast<size_t>(v)] = a.moves[static_cast<size_t>(v)];
    }
  }
  // Reachable set from the region under the restriction.
  std::vector<char> seen(static_cast<size_t>(n), 0);
  std::vector<int> queue;
  for (int v : region) {
    if (v < 0 || v >= n) throw std::invalid_argument("verify_strategy: region position unknown");
    if (!seen[static_cast<size_t>(v)]) {
      seen[static_cast<size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  for (size_t qi = 0; qi < queue.size(); ++qi)
    for (int w : succ[static_cast<size_t>(queue[qi])])
      if (!seen[static_cast<size_t>(w)]) {
        seen[static_cast<size_t>(w)] = 1;
        queue.push_back(w);
      }
  for (int v : queue)
    if (succ[static_cast<size_t>(v)].empty() && a.owner[static_cast<size_t>(v)] == player)
      return false;  // the player is stuck (dead end or missing choice)
  return detail::cycles_all_good(succ, a.priority, queue, player);
}

// ---------------------------------------------------------------------------
// JSON format
//
// {"positions":[{"id":0,"owner":"even","priority":0,"moves":[1,2]},...],
//  "start":0}  -- ids must be 0..n-1 in order.

using json = nlohmann::ordered_json;

inline json arena_to_json(const ParityArena& a) {
  json positions = json::array();
  for (int v = 0; v < a.size(); ++v) {
    json p;
    p["id"] = v;
    p["owner"] = a.owner[static_cast<size_t>(v)] == Player::Even ? "even" : "odd";
    p["priority"] = a.priority[static_cast<size_t>(v)];
    p["moves"] = a.moves[static_cast<size_t>(v)];
    positions.push_back(std::move(p));
  }
  json j;
  j["positions"] = std::move(positions);
  j["start"] = a.start;
  return j;
}

inline ParityArena arena_from_json(const json& j) {
  if (!j.is_object() || !j.contains("positions") || !j.contains("start"))
    throw std::invalid_argument("arena json: expected {positions, start}");
  ParityArena a;
  int expect_id = 0;
  for (const auto& p : j.at("positions")) {
    if (p.at("id").get<int>() != expect_id++)
      throw std::invalid_argument("arena json: position ids must be 0..n-1 in order");
    std::string owner = p.at("owner").get<std::string>();
    if (owner != "even" && owner != "odd")
      throw std::invalid_argument("arena json: owner must be \"even\" or \"odd\"");
    a.owner.push_back(owner == "even" ? Player::Even : Player::Odd);
    a.priority.push_back(p.at("priority").get<int>());
    a.moves.push_back(p.at("moves").get<std::vector<int>>());
  }
  a.start = j.at("start").get<int>();
  a.validate();
  return a;
}

}  // namespace sccmu

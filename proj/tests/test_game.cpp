#include <catch2/catch_amalgamated.hpp>

#include "sccmu/game.hpp"
#include "sccmu/generators.hpp"

using namespace sccmu;

namespace {

ParityArena single(Player owner, int priority, bool loop) {
  ParityArena a;
  a.owner = {owner};
  a.priority = {priority};
  a.moves = {loop ? std::vector<int>{0} : std::vector<int>{}};
  a.start = 0;
  return a;
}

}  // namespace

TEST_CASE("self-loop with even priority is won by Even") {
  auto a = single(Player::Even, 0, true);
  auto r = solve(a);
  REQUIRE(r.winner[0] == Player::Even);
  REQUIRE(r.strategy_even.choices.at(0) == 0);
}

TEST_CASE("a stuck player loses") {
  auto odd_stuck = single(Player::Odd, 0, false);
  REQUIRE(solve(odd_stuck).winner[0] == Player::Even);
  auto even_stuck = single(Player::Even, 0, false);
  REQUIRE(solve(even_stuck).winner[0] == Player::Odd);
}

TEST_CASE("self-loop winners follow the priority parity") {
  for (int p = 0; p <= 3; ++p) {
    for (Player owner : {Player::Even, Player::Odd}) {
      auto a = single(owner, p, true);
      Player expect = parity_winner_of(p);
      REQUIRE(solve(a).winner[0] == expect);
      auto r = brute_force_solve(a);
      REQUIRE((expect == Player::Even ? r.even_region : r.odd_region) ==
              std::vector<int>{0});
    }
  }
}

TEST_CASE("two-cycle with priorities 1,2 goes to Odd") {
  ParityArena a;
  a.owner = {Player::Even, Player::Odd};
  a.priority = {1, 2};
  a.moves = {{1}, {0}};
  a.start = 0;
  auto r = solve(a);
  REQUIRE(r.winner[0] == Player::Odd);
  REQUIRE(r.winner[1] == Player::Odd);
  auto b = brute_force_solve(a);
  REQUIRE(b.odd_region == std::vector<int>{0, 1});
}

TEST_CASE("solver matches the brute-force oracle on random arenas") {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    ParityArena a = random_arena(sample_seed(1234, seed), 8);
    auto s = solve(a);
    auto b = brute_force_solve(a);
    INFO("seed " << seed);
    REQUIRE(s.region(Player::Even) == b.even_region);
    REQUIRE(s.region(Player::Odd) == b.odd_region);
  }
}

TEST_CASE("regions partition the positions") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ParityArena a = random_arena(sample_seed(4321, seed), 10);
    auto s = solve(a);
    auto even = s.region(Player::Even);
    auto odd = s.region(Player::Odd);
    REQUIRE(static_cast<int>(even.size() + odd.size()) == a.size());
  }
}

TEST_CASE("solver strategies pass verification") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    ParityArena a = random_arena(sample_seed(888, seed), 9);
    auto s = solve(a);
    INFO("seed " << seed);
    REQUIRE(verify_strategy(a, s.strategy_even, Player::Even, s.region(Player::Even)));
    REQUIRE(verify_strategy(a, s.strategy_odd, Player::Odd, s.region(Player::Odd)));
  }
}

TEST_CASE("a corrupted strategy fails verification") {
  // Even must move 0 -> 1 (priority 0 cycle); the move 0 -> 2 hands the
  // play to an odd-priority cycle.
  ParityArena a;
  a.owner = {Player::Even, Player::Odd, Player::Odd};
  a.priority = {0, 0, 1};
  a.moves = {{1, 2}, {0}, {2}};
  a.start = 0;
  auto s = solve(a);
  REQUIRE(s.winner[0] == Player::Even);
  REQUIRE(verify_strategy(a, s.strategy_even, Player::Even, {0, 1}));
  PositionalStrategy bad;
  bad.choices[0] = 2;
  REQUIRE_FALSE(verify_strategy(a, bad, Player::Even, {0, 1}));
  PositionalStrategy illegal;
  illegal.choices[0] = 0;  // not a move of position 0
  REQUIRE_THROWS_AS(verify_strategy(a, illegal, Player::Even, {0}), std::invalid_argument);
}

TEST_CASE("verification is vacuous on an empty region") {
  ParityArena a = single(Player::Even, 1, true);
  PositionalStrategy empty;
  REQUIRE(verify_strategy(a, empty, Player::Even, {}));
}

TEST_CASE("brute force rejects oversized arenas") {
  ParityArena a;
  for (int i = 0; i < 9; ++i) {
    a.owner.push_back(Player::Even);
    a.priority.push_back(0);
    a.moves.push_back({i});
  }
  a.start = 0;
  REQUIRE_THROWS_AS(brute_force_solve(a, 8), std::invalid_argument);
}

TEST_CASE("exhaustive agreement on tiny arenas") {
  // All arenas with up to 3 positions, priorities in {0,1}, out-degree <= 2.
  for (int n = 1; n <= 3; ++n) {
    std::vector<std::vector<int>> move_options;
    std::vector<int> empty_move;
    move_options.push_back(empty_move);
    for (int i = 0; i < n; ++i) {
      move_options.push_back({i});
      for (int j = i + 1; j < n; ++j) move_options.push_back({i, j});
    }
    const size_t mo = move_options.size();
    size_t total_moves = 1;
    for (int i = 0; i < n; ++i) total_moves *= mo;
    for (std::uint32_t owner_bits = 0; owner_bits < (1u << n); ++owner_bits)
      for (std::uint32_t prio_bits = 0; prio_bits < (1u << n); ++prio_bits)
        for (size_t move_code = 0; move_code < total_moves; ++move_code) {
          ParityArena a;
          size_t rest = move_code;
          for (int v = 0; v < n; ++v) {
            a.owner.push_back((owner_bits >> v) & 1u ? Player::Odd : Player::Even);
            a.priority.push_back((prio_bits >> v) & 1u);
            a.moves.push_back(move_options[rest % mo]);
            rest /= mo;
          }
          a.start = 0;
          auto s = solve(a);
          auto b = brute_force_solve(a);
          if (s.region(Player::Even) != b.even_region) {
            INFO("n=" << n << " owners=" << owner_bits << " prios=" << prio_bits
                      << " moves=" << move_code);
            REQUIRE(false);
          }
        }
  }
  SUCCEED();
}

TEST_CASE("arena json round trip") {
  ParityArena a = random_arena(99, 6);
  json j = arena_to_json(a);
  ParityArena b = arena_from_json(j);
  REQUIRE(arena_to_json(b).dump() == j.dump());
  json broken = j;
  broken["positions"][0]["owner"] = "neither";
  REQUIRE_THROWS_AS(arena_from_json(broken), std::invalid_argument);
}

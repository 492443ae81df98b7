// Acceptance suite: one pass/fail line per criterion, nonzero exit on
// any failure. Each criterion pins its tolerances in code; sweeps are
// seeded and deterministic.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sccmu/bench.hpp"
#include "sccmu/collapse.hpp"
#include "sccmu/formula.hpp"
#include "sccmu/gamma.hpp"
#include "sccmu/generators.hpp"
#include "sccmu/suites.hpp"

using namespace sccmu;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::vector<std::vector<int>> move_options(int n) {
  std::vector<std::vector<int>> options;
  options.push_back({});
  for (int i = 0; i < n; ++i) {
    options.push_back({i});
    for (int j = i + 1; j < n; ++j) options.push_back({i, j});
  }
  return options;
}

bool arenas_agree(const ParityArena& a) {
  SolveResult s = solve(a);
  Regions b = brute_force_solve(a);
  return s.region(Player::Even) == b.even_region && s.region(Player::Odd) == b.odd_region;
}

// --- criterion 1 -----------------------------------------------------------

Outcome solver_oracle_equivalence() {
  long long checked = 0;
  // Exhaustive over arenas with <= 4 positions, priorities in {0,1},
  // out-degree <= 2.
  for (int n = 1; n <= 4; ++n) {
    const auto options = move_options(n);
    const size_t mo = options.size();
    size_t total_moves = 1;
    for (int i = 0; i < n; ++i) total_moves *= mo;
    for (std::uint32_t owner_bits = 0; owner_bits < (1u << n); ++owner_bits)
      for (std::uint32_t prio_bits = 0; prio_bits < (1u << n); ++prio_bits)
        for (size_t code = 0; code < total_moves; ++code) {
          ParityArena a;
          size_t rest = code;
          for (int v = 0; v < n; ++v) {
            a.owner.push_back((owner_bits >> v) & 1u ? Player::Odd : Player::Even);
            a.priority.push_back(static_cast<int>((prio_bits >> v) & 1u));
            a.moves.push_back(options[rest % mo]);
            rest /= mo;
          }
          a.start = 0;
          ++checked;
          if (!arenas_agree(a))
            return {false, "disagreement at n=" + std::to_string(n) +
                               " code=" + std::to_string(code)};
        }
  }
  // The full 5-position family has ~2^30 members; a strided deterministic
  // sample covers it densely within the time budget.
  {
    const int n = 5;
    const auto options = move_options(n);  // exactly 16 entries
    const std::uint64_t space = (1ull << 20) * 32ull * 32ull;
    const std::uint64_t stride = 1009;
    for (std::uint64_t code = 0; code < space; code += stride) {
      ParityArena a;
      std::uint64_t rest = code;
      std::uint32_t owner_bits = static_cast<std::uint32_t>(rest & 31);
      rest >>= 5;
      std::uint32_t prio_bits = static_cast<std::uint32_t>(rest & 31);
      rest >>= 5;
      for (int v = 0; v < n; ++v) {
        a.owner.push_back((owner_bits >> v) & 1u ? Player::Odd : Player::Even);
        a.priority.push_back(static_cast<int>((prio_bits >> v) & 1u));
        a.moves.push_back(options[rest & 15]);
        rest >>= 4;
      }
      a.start = 0;
      ++checked;
      if (!arenas_agree(a))
        return {false, "disagreement in the 5-position sample at code=" + std::to_string(code)};
    }
  }
  // 1000 random arenas with up to 8 positions.
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    ParityArena a = random_arena(sample_seed(1, seed), 8);
    ++checked;
    if (!arenas_agree(a)) return {false, "random arena seed " + std::to_string(seed)};
  }
  return {true, std::to_string(checked) + " arenas, exact agreement"};
}

// --- criterion 2 -----------------------------------------------------------

Outcome gamma_correspondence() {
  ParityAutomaton bg = normalize_to_covers(make_b_gamma());
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    ColoredGraph g = random_graph(sample_seed(2, seed), 10, {"F"});
    bool by_automaton = accepts(bg, g);
    bool by_game = gamma_winner(g).winner == GammaPlayer::PN;
    ++checked;
    if (by_automaton != by_game) return {false, "seed " + std::to_string(seed)};
  }
  for (int k = 1; k <= 4; ++k) {
    ColoredGraph g = make_gk(k);
    ++checked;
    if (!accepts(bg, g) || gamma_winner(g).winner != GammaPlayer::PN)
      return {false, "chain graph k=" + std::to_string(k)};
  }
  ++checked;
  if (accepts(bg, make_nloop()) || gamma_winner(make_nloop()).winner != GammaPlayer::PF)
    return {false, "N-loop"};
  return {true, std::to_string(checked) + " graphs, exact agreement"};
}

// --- criteria 3 and 4 ------------------------------------------------------

Outcome collapse_equivalence() {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::uint64_t s = sample_seed(3, seed);
    int k = 1 + static_cast<int>(seed % 2);
    ParityAutomaton b = random_buchi_automaton(splitmix64(s), 3);
    ParityAutomaton c = buchi_to_cobuchi(b, k);
    if (!is_cobuchi(c)) return {false, "output not coBuchi at seed " + std::to_string(seed)};
    ColoredGraph g = random_scck(splitmix64(s ^ 0x5eed), k, 10, {"F"});
    if (accepts(b, g) != accepts(c, g))
      return {false, "verdicts differ inside SCCk at seed " + std::to_string(seed)};
    ++checked;
  }
  return {true, "200/200 pairs agree, all outputs coBuchi"};
}

Outcome collapse_soundness() {
  int implications = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::uint64_t s = sample_seed(4, seed);
    ParityAutomaton b = random_buchi_automaton(splitmix64(s), 3);
    ParityAutomaton c = buchi_to_cobuchi(b, 1);
    ColoredGraph g = random_graph(splitmix64(s ^ 0xfeed), 10, {"F"});
    if (accepts(c, g)) {
      if (!accepts(b, g))
        return {false, "collapse accepted but the source rejected at seed " +
                           std::to_string(seed)};
      ++implications;
    }
  }
  return {true, "200 unrestricted graphs, " + std::to_string(implications) +
                    " nonvacuous implications, no violation"};
}

// --- criterion 5 -----------------------------------------------------------

Outcome hypothesis_necessity() {
  ParityAutomaton bg = normalize_to_covers(make_b_gamma());
  auto witness = find_disagreement_outside_scck(bg, 1, 6);
  if (!witness) return {false, "no disagreement found up to cycle length 6"};
  if (max_scc_size(*witness) <= 1) return {false, "witness is inside SCC1"};
  ParityAutomaton c = buchi_to_cobuchi(bg, 1);
  bool b_accepts = accepts(bg, *witness);
  bool c_accepts = accepts(c, *witness);
  if (b_accepts == c_accepts) return {false, "re-check failed: verdicts agree"};
  auto again = find_disagreement_outside_scck(bg, 1, 6);
  if (!again || !graph_equal(*witness, *again)) return {false, "search is not deterministic"};
  int f_count = 0;
  for (Vertex v : witness->vertices())
    if (witness->satisfies("F", v)) ++f_count;
  std::ostringstream os;
  os << "cycle of length " << witness->num_vertices() << " with " << f_count
     << " F vertex; source accepts=" << b_accepts << ", collapse accepts=" << c_accepts;
  return {true, os.str()};
}

// --- criterion 6 -----------------------------------------------------------

Outcome box_star_gate() {
  ParityAutomaton bs = make_box_star_gamma_automaton();
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    ColoredGraph g = random_scck(sample_seed(6, seed), 1, 10, {"F"});
    if (accepts(bs, g) != box_star_gamma_semantic(g))
      return {false, "oracle disagreement at seed " + std::to_string(seed)};
  }
  for (int k = 1; k <= 4; ++k)
    if (!accepts(bs, make_gk(k)))
      return {false, "chain graph k=" + std::to_string(k) + " rejected"};
  if (accepts(bs, make_nloop())) return {false, "N-loop accepted"};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ColoredGraph host = pseudotree_of(random_scck(sample_seed(66, seed), 1, 6, {"F"}));
    Rng rng(seed);
    Vertex at = host.vertices()[rng.below(host.vertices().size())];
    ColoredGraph grafted = graft(host, at, make_nloop());
    if (accepts(bs, grafted) || box_star_gamma_semantic(grafted))
      return {false, "grafted N-loop not rejected at seed " + std::to_string(seed)};
  }
  return {true, "500 sweep graphs, 4 chain graphs, N-loop and 20 grafts, exact"};
}

// --- criterion 7 -----------------------------------------------------------

Outcome falsifier_gate() {
  std::vector<std::pair<std::string, ParityAutomaton>> candidates;
  {
    ParityAutomaton a;
    a.predicates = {"F"};
    a.state_names = {"q0"};
    a.initial = 0;
    a.priority = {0};
    for (Letter l = 0; l < 2; ++l)
      a.delta[{0, l}] = {make_clause(ClauseKind::Cover, {0}),
                         make_clause(ClauseKind::Cover, {})};
    candidates.emplace_back("accept-all", a);
  }
  {
    ParityAutomaton a;
    a.predicates = {"F"};
    a.state_names = {"s"};
    a.initial = 0;
    a.priority = {0};
    a.delta[{0, 1}] = {make_clause(ClauseKind::Cover, {0}), make_clause(ClauseKind::Cover, {})};
    candidates.emplace_back("box-star-F", a);
  }
  {
    ParityAutomaton a;
    a.predicates = {"F"};
    a.state_names = {"u", "r"};
    a.initial = 0;
    a.priority = {2, 1};
    a.delta[{0, 1}] = {make_clause(ClauseKind::Cover, {0}), make_clause(ClauseKind::Cover, {})};
    a.delta[{0, 0}] = {make_clause(ClauseKind::Cover, {0, 1})};
    a.delta[{1, 0}] = {make_clause(ClauseKind::Dia, {1})};
    a.delta[{1, 1}] = {make_clause(ClauseKind::Dia, {}), make_clause(ClauseKind::Cover, {})};
    candidates.emplace_back("reach-F-approximation", a);
  }
  {
    ParityAutomaton a;
    a.predicates = {"F"};
    a.state_names = {"go", "stay"};
    a.initial = 0;
    a.priority = {0, 0};
    a.delta[{0, 1}] = {make_clause(ClauseKind::Cover, {1}), make_clause(ClauseKind::Cover, {})};
    a.delta[{1, 0}] = {make_clause(ClauseKind::Cover, {1})};
    a.delta[{1, 1}] = {make_clause(ClauseKind::Cover, {1}), make_clause(ClauseKind::Cover, {})};
    candidates.emplace_back("point-is-F", a);
  }
  std::ostringstream os;
  for (auto& [name, w] : candidates) {
    if (!is_weak(w)) return {false, name + " is not weak"};
    WitnessReport r = falsify_weak(w);
    if (r.automaton_verdict == r.semantic_verdict)
      return {false, name + ": verdicts agree on the witness"};
    if (!in_scck(r.counterexample, 1)) return {false, name + ": witness left SCC1"};
    if (accepts(normalize_to_covers(w), r.counterexample) != r.automaton_verdict)
      return {false, name + ": automaton verdict did not re-verify"};
    if (box_star_gamma_semantic(r.counterexample) != r.semantic_verdict)
      return {false, name + ": semantic verdict did not re-verify"};
    os << name << "=" << r.derivation << " ";
  }
  return {true, os.str()};
}

// --- criterion 8 -----------------------------------------------------------

Outcome bisimulation_invariance() {
  ParityAutomaton bg = normalize_to_covers(make_b_gamma());
  ParityAutomaton bs = make_box_star_gamma_automaton();
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    ColoredGraph g = random_scck(sample_seed(8, seed), 1, 8, {"F"});
    ColoredGraph t = pseudotree_of(g);
    if (!bisimilar(g, t)) return {false, "not bisimilar at seed " + std::to_string(seed)};
    if (!is_pseudotree(t)) return {false, "not a pseudotree at seed " + std::to_string(seed)};
    if (!in_scck(t, 1)) return {false, "left SCC1 at seed " + std::to_string(seed)};
    if (accepts(bg, g) != accepts(bg, t))
      return {false, "Gamma automaton verdict changed at seed " + std::to_string(seed)};
    if (accepts(bs, g) != accepts(bs, t))
      return {false, "box-star verdict changed at seed " + std::to_string(seed)};
  }
  return {true, "200 unfoldings: bisimilar pseudotrees in SCC1, verdicts preserved"};
}

// --- criterion 9 -----------------------------------------------------------

Outcome hierarchy_table() {
  const std::vector<std::pair<std::string, std::string>> table = {
      {"P & <> P", "Delta0"},
      {"!P | (Q & [] R)", "Delta0"},
      {"F P", "Sigma1"},
      {"mu X. Q | <> <> X", "Sigma1"},
      {"G P", "Pi1"},
      {"nu X. (P & Q) & [] X", "Pi1"},
      {"mu X. nu Y. ((P & [] Y) | <> X)", "Sigma2"},
      {"nu X. mu Y. ((P & <> X) | <> Y)", "Pi2"},
  };
  for (const auto& [text, expected] : table) {
    std::string got = classify(parse_formula(text)).to_string();
    if (got != expected)
      return {false, "'" + text + "' classified " + got + ", expected " + expected};
  }
  return {true, "8/8 formulas labeled exactly"};
}

// --- criterion 10 ----------------------------------------------------------

Outcome benchmark_sanity() {
  ParityAutomaton c = buchi_to_cobuchi(normalize_to_covers(make_b_gamma()), 1);
  BenchReport r = bench_modelcheck(c, BenchFamily::Chain, {64, 128, 256, 512, 1024});
  std::ostringstream os;
  os << "fitted slope " << r.accept_slope << " (baseline " << r.baseline_slope << ")";
  for (const auto& p : r.points)
    if (!p.accepted) return {false, "collapsed automaton rejected a chain instance"};
  if (!(r.accept_slope <= 2.5)) return {false, os.str() + " exceeds 2.5"};
  return {true, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 parity-solver oracle equivalence", solver_oracle_equivalence},
      {"2 Gamma game vs automaton correspondence", gamma_correspondence},
      {"3 Buchi->coBuchi equivalence inside SCCk", collapse_equivalence},
      {"4 collapse soundness on arbitrary graphs", collapse_soundness},
      {"5 SCCk hypothesis necessity", hypothesis_necessity},
      {"6 box-star Gamma automaton gate", box_star_gate},
      {"7 weak-automaton falsifier", falsifier_gate},
      {"8 bisimulation invariance of unfolding", bisimulation_invariance},
      {"9 hierarchy classifier table", hierarchy_table},
      {"10 benchmark slope sanity", benchmark_sanity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    auto t1 = std::chrono::steady_clock::now();
    double secs = std::chrono::duration<double>(t1 - t0).count();
    std::printf("[%s] criterion %s: %s (%.2fs)\n", outcome.pass ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str(), secs);
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}

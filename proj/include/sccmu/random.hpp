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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "graph.hpp"

namespace sccmu {

/// splitmix64 step, used to derive independent per-sample seeds from a
/// run seed. Stable across platforms, unlike std distributions.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t sample_seed(std::uint64_t run_seed, std::uint64_t sample_index) {
  return splitmix64(run_seed ^ splitmix64(sample_index + 1));
}

/// Thin deterministic wrapper around mt19937_64. All draws go through
/// explicit helpers so generated objects are byte-identical for a fixed
/// seed on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform-ish value in [0, n). Modulo bias is irrelevant at the n used here.
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }

  int range(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) {
    return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0) < p;
  }

 private:
  std::mt19937_64 engine_;
};

/// Random graph whose strongly connected components all have size <= k,
/// built as a DAG of blocks with each block strongly connected. The point
/// is vertex 0 in the first block, which no later block can reach, and
/// every block is reachable from the first.
inline ColoredGraph random_scck(std::uint64_t seed, int k, int max_vertices,
                                std::vector<std::string> predicates) {
  if (k < 1 || max_vertices < 1)
    throw std::invalid_argument("random_scck: bounds must be positive");
  Rng rng(seed);
  const int n = rng.range(1, max_vertices);
  std::vector<std::pair<int, int>> blocks;  // [first, last] vertex ids
  int next = 0;
  while (next < n) {
    int size = rng.range(1, std::min(k, n - next));
    blocks.emplace_back(next, next + size - 1);
    next += size;
  }
  std::vector<Edge> edges;
  for (const auto& [lo, hi] : blocks) {
    int size = hi - lo + 1;
    if (size == 1) {
      if (rng.chance(0.5)) edges.emplace_back(lo, lo);
    } else {
      for (int v = lo; v <= hi; ++v) edges.emplace_back(v, v == hi ? lo : v + 1);
      for (int u = lo; u <= hi; ++u)
        for (int v = lo; v <= hi; ++v)
          if (rng.chance(0.2)) edges.emplace_back(u, v);
    }
  }
  for (size_t b = 1; b < blocks.size(); ++b) {
    size_t from_block = rng.below(b);
    Vertex u = static_cast<Vertex>(
        rng.range(blocks[from_block].first, blocks[from_block].second));
    Vertex v = static_cast<Vertex>(rng.range(blocks[b].first, blocks[b].second));
    edges.emplace_back(u, v);
    for (size_t b2 = 0; b2 < b; ++b2)
      if (rng.chance(0.15))
        edges.emplace_back(rng.range(blocks[b2].first, blocks[b2].second),
                           rng.range(blocks[b].first, blocks[b].second));
  }
  std::vector<Vertex> vertices(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) vertices[static_cast<size_t>(v)] = v;
  std::vector<SatPair> sat;
  for (const auto& p : predicates)
    for (int v = 0; v < n; ++v)
      if (rng.chance(0.5)) sat.emplace_back(p, v);
  return ColoredGraph(std::move(predicates), std::move(vertices), std::move(edges),
                      std::move(sat), 0);
}

/// Random graph with no bound on component size.
inline ColoredGraph random_graph(std::uint64_t seed, int max_vertices,
                                 std::vector<std::string> predicates) {
  if (max_vertices < 1) throw std::invalid_argument("random_graph: bounds must be positive");
  Rng rng(seed);
  const int n = rng.range(1, max_vertices);
  const double p = std::min(0.5, 2.5 / n);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (rng.chance(p)) edges.emplace_back(u, v);
  std::vector<Vertex> vertices(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) vertices[static_cast<size_t>(v)] = v;
  std::vector<SatPair> sat;
  for (const auto& pred : predicates)
    for (int v = 0; v < n; ++v)
      if (rng.chance(0.5)) sat.emplace_back(pred, v);
  return ColoredGraph(std::move(predicates), std::move(vertices), std::move(edges),
                      std::move(sat), 0);
}

}  // namespace sccmu

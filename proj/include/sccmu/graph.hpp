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
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

namespace sccmu {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;
using SatPair = std::pair<std::string, Vertex>;

/// A finite directed graph with unary-predicate coloring and a
/// distinguished point. Immutable after construction; construction
/// canonicalizes the order of all component lists and validates that
/// edges, sat pairs and the point refer to declared vertices/predicates.
class ColoredGraph {
 public:
  ColoredGraph(std::vector<std::string> predicates, std::vector<Vertex> vertices,
               std::vector<Edge> edges, std::vector<SatPair> sat, Vertex point)
      : predicates_(std::move(predicates)),
        vertices_(std::move(vertices)),
        edges_(std::move(edges)),
        sat_(std::move(sat)),
        point_(point) {
    canonicalize_lists();
    validate();
    build_tables();
  }

  const std::vector<std::string>& predicates() const { return predicates_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<SatPair>& sat() const { return sat_; }
  Vertex point() const { return point_; }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }

  bool has_vertex(Vertex v) const { return index_.count(v) != 0; }

  int index_of(Vertex v) const {
    auto it = index_.find(v);
    if (it == index_.end())
      throw std::invalid_argument("ColoredGraph: unknown vertex " + std::to_string(v));
    return it->second;
  }

  Vertex vertex_at(int idx) const { return vertices_.at(static_cast<size_t>(idx)); }

  const std::vector<Vertex>& successors(Vertex v) const {
    return succ_[static_cast<size_t>(index_of(v))];
  }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& s = successors(u);
    return std::binary_search(s.begin(), s.end(), v);
  }

  /// Bitmask of satisfied predicates, bit i <-> predicates()[i].
  std::uint32_t color_mask(Vertex v) const {
    return color_[static_cast<size_t>(index_of(v))];
  }

  bool satisfies(const std::string& pred, Vertex v) const {
    auto it = std::lower_bound(predicates_.begin(), predicates_.end(), pred);
    if (it == predicates_.end() || *it != pred)
      throw std::invalid_argument("ColoredGraph: unknown predicate " + pred);
    int bit = static_cast<int>(it - predicates_.begin());
    return (color_mask(v) >> bit) & 1u;
  }

  ColoredGraph repointed(Vertex new_point) const {
    return ColoredGraph(predicates_, vertices_, edges_, sat_, new_point);
  }

  bool same_components(const ColoredGraph& other) const {
    return predicates_ == other.predicates_ && vertices_ == other.vertices_ &&
           edges_ == other.edges_ && sat_ == other.sat_ && point_ == other.point_;
  }

 private:
  void canonicalize_lists() {
    auto dedup_sort = [](auto& xs) {
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    };
    dedup_sort(predicates_);
    dedup_sort(vertices_);
    dedup_sort(edges_);
    dedup_sort(sat_);
  }

  void validate() const {
    if (predicates_.size() > 32)
      throw std::invalid_argument("ColoredGraph: at most 32 predicates supported");
    if (vertices_.empty())
      throw std::invalid_argument("ColoredGraph: vertex set must be nonempty");
    if (!std::binary_search(vertices_.begin(), vertices_.end(), point_))
      throw std::invalid_argument("ColoredGraph: point is not a vertex");
    for (const auto& [u, v] : edges_) {
      if (!std::binary_search(vertices_.begin(), vertices_.end(), u) ||
          !std::binary_search(vertices_.begin(), vertices_.end(), v))
        throw std::invalid_argument("ColoredGraph: edge endpoint is not a vertex");
    }
    for (const auto& [p, v] : sat_) {
      if (!std::binary_search(predicates_.begin(), predicates_.end(), p))
        throw std::invalid_argument("ColoredGraph: sat pair uses undeclared predicate " + p);
      if (!std::binary_search(vertices_.begin(), vertices_.end(), v))
        throw std::invalid_argument("ColoredGraph: sat pair uses unknown vertex");
    }
  }

  void build_tables() {
    index_.reserve(vertices_.size());
    for (size_t i = 0; i < vertices_.size(); ++i) index_[vertices_[i]] = static_cast<int>(i);
    succ_.assign(vertices_.size(), {});
    for (const auto& [u, v] : edges_) succ_[static_cast<size_t>(index_.at(u))].push_back(v);
    color_.assign(vertices_.size(), 0);
    for (const auto& [p, v] : sat_) {
      auto it = std::lower_bound(predicates_.begin(), predicates_.end(), p);
      int bit = static_cast<int>(it - predicates_.begin());
      color_[static_cast<size_t>(index_.at(v))] |= (1u << bit);
    }
  }

  std::vector<std::string> predicates_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<SatPair> sat_;
  Vertex point_ = 0;

  std::unordered_map<Vertex, int> index_;
  std::vector<std::vector<Vertex>> succ_;
  std::vector<std::uint32_t> color_;
};

// ---------------------------------------------------------------------------
// Strongly connected components

/// Partition of the vertex set into strongly connected components.
/// `components` is listed in a topological order of the condensation:
/// edges between distinct blocks always go from an earlier block to a
/// later one. A vertex is always in its own block, so a reflexive
/// vertex still forms a block of size one.
struct SccDecomposition {
  std::vector<std::vector<Vertex>> components;
};

inline SccDecomposition scc_decompose(const ColoredGraph& g) {
  // Iterative Tarjan over vertex indices.
  const int n = g.num_vertices();
  std::vector<int> idx(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  std::vector<std::vector<Vertex>> comps;
  int counter = 0;

  struct Frame {
    int v;
    size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (idx[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    idx[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& succ = g.successors(g.vertex_at(f.v));
      if (f.child < succ.size()) {
        int w = g.index_of(succ[f.child++]);
        if (idx[w] == -1) {
          idx[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], idx[w]);
        }
      } else {
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
        if (low[v] == idx[v]) {
          std::vector<Vertex> comp;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp.push_back(g.vertex_at(w));
            if (w == v) break;
          }
          std::sort(comp.begin(), comp.end());
          comps.push_back(std::move(comp));
        }
      }
    }
  }
  // Tarjan emits components in reverse topological order.
  std::reverse(comps.begin(), comps.end());
  return SccDecomposition{std::move(comps)};
}

inline int max_scc_size(const ColoredGraph& g) {
  int m = 0;
  for (const auto& c : scc_decompose(g).components) m = std::max<int>(m, static_cast<int>(c.size()));
  return m;
}

inline bool in_scck(const ColoredGraph& g, int k) {
  if (k < 1) throw std::invalid_argument("in_scck: k must be positive");
  return max_scc_size(g) <= k;
}

// ---------------------------------------------------------------------------
// Reachability helpers

inline std::vector<Vertex> reachable_from(const ColoredGraph& g, Vertex start) {
  std::vector<bool> seen(static_cast<size_t>(g.num_vertices()), false);
  std::vector<Vertex> order;
  std::queue<Vertex> q;
  q.push(start);
  seen[static_cast<size_t>(g.index_of(start))] = true;
  while (!q.empty()) {
    Vertex v = q.front();
    q.pop();
    order.push_back(v);
    for (Vertex w : g.successors(v)) {
      size_t wi = static_cast<size_t>(g.index_of(w));
      if (!seen[wi]) {
        seen[wi] = true;
        q.push(w);
      }
    }
  }
  return order;  // BFS order, successors visited in ascending id order
}

/// Induced subgraph on the descendants of `root`, re-pointed at `root`.
inline ColoredGraph reachable_subgraph(const ColoredGraph& g, Vertex root) {
  std::vector<Vertex> keep = reachable_from(g, root);
  std::sort(keep.begin(), keep.end());
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges())
    if (std::binary_search(keep.begin(), keep.end(), u) &&
        std::binary_search(keep.begin(), keep.end(), v))
      edges.emplace_back(u, v);
  std::vector<SatPair> sat;
  for (const auto& [p, v] : g.sat())
    if (std::binary_search(keep.begin(), keep.end(), v)) sat.emplace_back(p, v);
  return ColoredGraph(g.predicates(), std::move(keep), std::move(edges), std::move(sat), root);
}

// ---------------------------------------------------------------------------
// Pseudotrees

/// True iff the graph minus all loops is a tree rooted at the point
/// (a unique path from the point to every vertex).
inline bool is_pseudotree(const ColoredGraph& g) {
  const int n = g.num_vertices();
  std::vector<int> indeg(static_cast<size_t>(n), 0);
  int nonloop_edges = 0;
  for (const auto& [u, v] : g.edges()) {
    if (u == v) continue;
    ++nonloop_edges;
    indeg[static_cast<size_t>(g.index_of(v))]++;
  }
  int root = g.index_of(g.point());
  if (indeg[static_cast<size_t>(root)] != 0) return false;
  if (nonloop_edges != n - 1) return false;
  for (int i = 0; i < n; ++i)
    if (i != root && indeg[static_cast<size_t>(i)] != 1) return false;
  // In-degree profile is tree-like; reachability of every vertex seals it.
  return static_cast<int>(reachable_from(g, g.point()).size()) == n;
}

/// Unfolds the loop-free part of an SCC1 graph from its point into a
/// finite tree and re-attaches a loop to every copy of a vertex that had
/// one, giving a pseudotree bisimilar to the input. Paths are colored as
/// their last vertex. Throws if the input is not in SCC1 (the unfolding
/// would be infinite) or if the unfolding exceeds `size_limit`.
inline ColoredGraph pseudotree_of(const ColoredGraph& g, int size_limit = 1 << 20) {
  if (!in_scck(g, 1))
    throw std::invalid_argument("pseudotree_of: input graph is not in SCC1");
  struct Node {
    Vertex original;
    std::vector<int> children;
  };
  std::vector<Node> nodes;
  nodes.push_back({g.point(), {}});
  std::queue<int> work;
  work.push(0);
  while (!work.empty()) {
    int id = work.front();
    work.pop();
    Vertex v = nodes[static_cast<size_t>(id)].original;
    for (Vertex w : g.successors(v)) {
      if (w == v) continue;  // loops re-attached below
      int child = static_cast<int>(nodes.size());
      if (child > size_limit)
        throw std::runtime_error("pseudotree_of: unfolding exceeds size limit");
      nodes.push_back({w, {}});
      nodes[static_cast<size_t>(id)].children.push_back(child);
      work.push(child);
    }
  }
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<SatPair> sat;
  for (int id = 0; id < static_cast<int>(nodes.size()); ++id) {
    vertices.push_back(id);
    const Node& node = nodes[static_cast<size_t>(id)];
    for (int c : node.children) edges.emplace_back(id, c);
    if (g.has_edge(node.original, node.original)) edges.emplace_back(id, id);
    for (size_t b = 0; b < g.predicates().size(); ++b)
      if ((g.color_mask(node.original) >> b) & 1u) sat.emplace_back(g.predicates()[b], id);
  }
  return ColoredGraph(g.predicates(), std::move(vertices), std::move(edges), std::move(sat), 0);
}

// ---------------------------------------------------------------------------
// Bisimulation

/// Coarsest-bisimulation witness between the points of g and h, computed by
/// partition refinement on the disjoint union. Returns std::nullopt when the
/// points are not bisimilar, otherwise all related cross pairs (v in g, w in h).
/// Throws when the predicate sets differ.
inline std::optional<std::vector<std::pair<Vertex, Vertex>>> bisimulation_witness(
    const ColoredGraph& g, const ColoredGraph& h) {
  if (g.predicates() != h.predicates())
    throw std::invalid_argument("bisimulation_witness: predicate sets differ");
  const int ng = g.num_vertices();
  const int nh = h.num_vertices();
  const int n = ng + nh;
  auto graph_of = [&](int u) -> const ColoredGraph& { return u < ng ? g : h; };
  auto vertex_of = [&](int u) { return u < ng ? g.vertex_at(u) : h.vertex_at(u - ng); };

  // Initial partition by color, refined by the set of successor blocks.
  std::vector<int> block(static_cast<size_t>(n));
  {
    std::map<std::uint32_t, int> by_color;
    for (int u = 0; u < n; ++u) {
      std::uint32_t c = graph_of(u).color_mask(vertex_of(u));
      auto [it, inserted] = by_color.emplace(c, static_cast<int>(by_color.size()));
      block[static_cast<size_t>(u)] = it->second;
    }
  }
  while (true) {
    std::map<std::pair<int, std::vector<int>>, int> sig_to_block;
    std::vector<int> next(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
      std::vector<int> succ_blocks;
      const ColoredGraph& gr = graph_of(u);
      Vertex v = vertex_of(u);
      for (Vertex w : gr.successors(v)) {
        int wi = (u < ng) ? gr.index_of(w) : gr.index_of(w) + ng;
        succ_blocks.push_back(block[static_cast<size_t>(wi)]);
      }
      std::sort(succ_blocks.begin(), succ_blocks.end());
      succ_blocks.erase(std::unique(succ_blocks.begin(), succ_blocks.end()), succ_blocks.end());
      auto key = std::make_pair(block[static_cast<size_t>(u)], std::move(succ_blocks));
      auto [it, inserted] = sig_to_block.emplace(std::move(key), static_cast<int>(sig_to_block.size()));
      next[static_cast<size_t>(u)] = it->second;
    }
    if (next == block) break;
    block = std::move(next);
  }
  int pg = block[static_cast<size_t>(g.index_of(g.point()))];
  int ph = block[static_cast<size_t>(h.index_of(h.point()) + ng)];
  if (pg != ph) return std::nullopt;
  std::vector<std::pair<Vertex, Vertex>> witness;
  for (int u = 0; u < ng; ++u)
    for (int w = 0; w < nh; ++w)
      if (block[static_cast<size_t>(u)] == block[static_cast<size_t>(w + ng)])
        witness.emplace_back(g.vertex_at(u), h.vertex_at(w));
  return witness;
}

inline bool bisimilar(const ColoredGraph& g, const ColoredGraph& h) {
  return bisimulation_witness(g, h).has_value();
}

// ---------------------------------------------------------------------------
// Canonical structural comparison

/// Renumbers the graph by BFS order from the point (successors scanned in
/// ascending id order); vertices unreachable from the point keep their
/// relative order after the reachable part. Two graphs that agree after
/// canonicalization are equal up to the harmless renaming of vertex ids.
inline ColoredGraph canonical_form(const ColoredGraph& g) {
  std::vector<Vertex> order = reachable_from(g, g.point());
  std::vector<bool> placed(static_cast<size_t>(g.num_vertices()), false);
  for (Vertex v : order) placed[static_cast<size_t>(g.index_of(v))] = true;
  for (Vertex v : g.vertices())
    if (!placed[static_cast<size_t>(g.index_of(v))]) order.push_back(v);
  std::unordered_map<Vertex, Vertex> renumber;
  for (size_t i = 0; i < order.size(); ++i) renumber[order[i]] = static_cast<Vertex>(i);
  std::vector<Vertex> vertices(order.size());
  for (size_t i = 0; i < order.size(); ++i) vertices[i] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) edges.emplace_back(renumber.at(u), renumber.at(v));
  std::vector<SatPair> sat;
  for (const auto& [p, v] : g.sat()) sat.emplace_back(p, renumber.at(v));
  return ColoredGraph(g.predicates(), std::move(vertices), std::move(edges), std::move(sat),
                      renumber.at(g.point()));
}

inline bool graph_equal(const ColoredGraph& g, const ColoredGraph& h) {
  return canonical_form(g).same_components(canonical_form(h));
}

// ---------------------------------------------------------------------------
// The witness graphs

/// The chain graph with k+1 reflexive F vertices joined by runs of
/// n = 2^k + 1 irreflexive N vertices, pointed at the first F vertex.
/// Vertex ids run 0..(k+1)+k*(2^k+1)-1 along the chain.
inline ColoredGraph make_gk(int k) {
  if (k < 1) throw std::invalid_argument("make_gk: k must be positive");
  if (k > 20) throw std::invalid_argument("make_gk: k too large for explicit construction");
  const long long n = (1LL << k) + 1;
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  std::vector<SatPair> sat;
  Vertex id = 0;
  for (int i = 0; i <= k; ++i) {
    Vertex fi = id++;
    vertices.push_back(fi);
    edges.emplace_back(fi, fi);
    sat.emplace_back("F", fi);
    if (i == k) break;
    Vertex prev = fi;
    for (long long j = 1; j <= n; ++j) {
      Vertex nj = id++;
      vertices.push_back(nj);
      edges.emplace_back(prev, nj);
      prev = nj;
    }
    edges.emplace_back(prev, id);  // id is the next F vertex, created next turn
  }
  return ColoredGraph({"F"}, std::move(vertices), std::move(edges), std::move(sat), 0);
}

/// A single reflexive N vertex.
inline ColoredGraph make_nloop() {
  return ColoredGraph({"F"}, {0}, {{0, 0}}, {}, 0);
}

// ---------------------------------------------------------------------------
// Grafting

/// Replaces the subtree of a pseudotree rooted at `at` by `donor`:
/// edges that entered `at` now enter donor's point. Grafting at the point
/// yields a graph isomorphic to the donor. Host and donor must share the
/// predicate set; `at` must be a vertex of the host.
inline ColoredGraph graft(const ColoredGraph& host, Vertex at, const ColoredGraph& donor) {
  if (!is_pseudotree(host)) throw std::invalid_argument("graft: host is not a pseudotree");
  if (!host.has_vertex(at)) throw std::invalid_argument("graft: vertex not reachable from point");
  if (host.predicates() != donor.predicates())
    throw std::invalid_argument("graft: predicate sets differ");

  // Subtree of `at` in the loop-free tree.
  std::vector<bool> in_subtree(static_cast<size_t>(host.num_vertices()), false);
  {
    std::queue<Vertex> q;
    q.push(at);
    in_subtree[static_cast<size_t>(host.index_of(at))] = true;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : host.successors(v)) {
        if (w == v) continue;
        size_t wi = static_cast<size_t>(host.index_of(w));
        if (!in_subtree[wi]) {
          in_subtree[wi] = true;
          q.push(w);
        }
      }
    }
  }

  std::unordered_map<Vertex, Vertex> renumber;
  std::vector<Vertex> vertices;
  for (Vertex v : host.vertices()) {
    if (in_subtree[static_cast<size_t>(host.index_of(v))]) continue;
    Vertex fresh = static_cast<Vertex>(vertices.size());
    renumber[v] = fresh;
    vertices.push_back(fresh);
  }
  const Vertex donor_base = static_cast<Vertex>(vertices.size());
  std::unordered_map<Vertex, Vertex> donor_renumber;
  for (Vertex v : donor.vertices()) {
    Vertex fresh = static_cast<Vertex>(vertices.size());
    donor_renumber[v] = fresh;
    vertices.push_back(fresh);
  }
  (void)donor_base;
  const Vertex donor_point = donor_renumber.at(donor.point());

  std::vector<Edge> edges;
  for (const auto& [u, v] : host.edges()) {
    bool u_kept = renumber.count(u) != 0;
    bool v_kept = renumber.count(v) != 0;
    if (u_kept && v_kept)
      edges.emplace_back(renumber.at(u), renumber.at(v));
    else if (u_kept && v == at)
      edges.emplace_back(renumber.at(u), donor_point);
  }
  for (const auto& [u, v] : donor.edges())
    edges.emplace_back(donor_renumber.at(u), donor_renumber.at(v));

  std::vector<SatPair> sat;
  for (const auto& [p, v] : host.sat())
    if (renumber.count(v)) sat.emplace_back(p, renumber.at(v));
  for (const auto& [p, v] : donor.sat()) sat.emplace_back(p, donor_renumber.at(v));

  Vertex point = (at == host.point()) ? donor_point : renumber.at(host.point());
  return ColoredGraph(host.predicates(), std::move(vertices), std::move(edges), std::move(sat),
                      point);
}

// ---------------------------------------------------------------------------
// JSON format
//
// {"predicates":[...], "vertices":[id...], "edges":[[u,v]...],
//  "sat":[["P",v]...], "point":id}

using json = nlohmann::ordered_json;

inline json graph_to_json(const ColoredGraph& g) {
  json j;
  j["predicates"] = g.predicates();
  j["vertices"] = g.vertices();
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back(json::array({u, v}));
  j["edges"] = std::move(edges);
  json sat = json::array();
  for (const auto& [p, v] : g.sat()) sat.push_back(json::array({p, v}));
  j["sat"] = std::move(sat);
  j["point"] = g.point();
  return j;
}

inline ColoredGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("graph json: expected an object");
  for (const char* key : {"predicates", "vertices", "edges", "sat", "point"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("graph json: missing field '") + key + "'");
  std::vector<std::string> preds = j.at("predicates").get<std::vector<std::string>>();
  std::vector<Vertex> vertices = j.at("vertices").get<std::vector<Vertex>>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph json: edge must be a pair [u,v]");
    edges.emplace_back(e.at(0).get<Vertex>(), e.at(1).get<Vertex>());
  }
  std::vector<SatPair> sat;
  for (const auto& s : j.at("sat")) {
    if (!s.is_array() || s.size() != 2)
      throw std::invalid_argument("graph json: sat entry must be a pair [\"P\",v]");
    sat.emplace_back(s.at(0).get<std::string>(), s.at(1).get<Vertex>());
  }
  return ColoredGraph(std::move(preds), std::move(vertices), std::move(edges), std::move(sat),
                      j.at("point").get<Vertex>());
}

}  // namespace sccmu

#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "sccmu/graph.hpp"
#include "sccmu/random.hpp"

using namespace sccmu;

namespace {

ColoredGraph two_cycle() {
  return ColoredGraph({"F"}, {0, 1}, {{0, 1}, {1, 0}}, {{"F", 0}}, 0);
}

// Brute-force mutual-reachability classes via transitive closure.
std::vector<std::set<Vertex>> closure_classes(const ColoredGraph& g) {
  const int n = g.num_vertices();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) reach[i][i] = true;
  for (const auto& [u, v] : g.edges()) reach[g.index_of(u)][g.index_of(v)] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
  std::vector<std::set<Vertex>> classes;
  std::vector<bool> done(n, false);
  for (int i = 0; i < n; ++i) {
    if (done[i]) continue;
    std::set<Vertex> cls;
    for (int j = 0; j < n; ++j)
      if (reach[i][j] && reach[j][i]) {
        cls.insert(g.vertex_at(j));
        done[j] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool same_partition(const SccDecomposition& d, const std::vector<std::set<Vertex>>& classes) {
  std::set<std::set<Vertex>> a, b;
  for (const auto& c : d.components) a.insert(std::set<Vertex>(c.begin(), c.end()));
  for (const auto& c : classes) b.insert(c);
  return a == b;
}

}  // namespace

TEST_CASE("scc of a single vertex") {
  ColoredGraph g({"F"}, {0}, {}, {}, 0);
  auto d = scc_decompose(g);
  REQUIRE(d.components.size() == 1);
  REQUIRE(d.components[0] == std::vector<Vertex>{0});
  REQUIRE(max_scc_size(g) == 1);
}

TEST_CASE("a loop does not enlarge the component") {
  ColoredGraph g({"F"}, {0}, {{0, 0}}, {}, 0);
  auto d = scc_decompose(g);
  REQUIRE(d.components.size() == 1);
  REQUIRE(d.components[0].size() == 1);
  REQUIRE(in_scck(g, 1));
}

TEST_CASE("two-cycle forms one block of size 2") {
  auto g = two_cycle();
  auto d = scc_decompose(g);
  REQUIRE(d.components.size() == 1);
  REQUIRE(d.components[0] == std::vector<Vertex>{0, 1});
  REQUIRE_FALSE(in_scck(g, 1));
  REQUIRE(in_scck(g, 2));
}

TEST_CASE("scc agrees with reachability closure on small random graphs") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    auto g = random_graph(sample_seed(42, seed), 6, {"F"});
    auto d = scc_decompose(g);
    INFO("seed " << seed);
    REQUIRE(same_partition(d, closure_classes(g)));
    // Blocks cover all vertices and are pairwise disjoint.
    std::set<Vertex> all;
    size_t total = 0;
    for (const auto& c : d.components) {
      total += c.size();
      all.insert(c.begin(), c.end());
    }
    REQUIRE(total == all.size());
    REQUIRE(all.size() == static_cast<size_t>(g.num_vertices()));
  }
}

TEST_CASE("topological order of components respects edges") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = random_graph(sample_seed(99, seed), 7, {"F"});
    auto d = scc_decompose(g);
    std::map<Vertex, int> block_of;
    for (size_t b = 0; b < d.components.size(); ++b)
      for (Vertex v : d.components[b]) block_of[v] = static_cast<int>(b);
    for (const auto& [u, v] : g.edges()) REQUIRE(block_of[u] <= block_of[v]);
  }
}

TEST_CASE("pseudotree recognition") {
  REQUIRE(is_pseudotree(make_gk(1)));
  REQUIRE(is_pseudotree(make_gk(3)));
  REQUIRE_FALSE(is_pseudotree(two_cycle()));
  // A plain tree is a pseudotree with zero loops.
  ColoredGraph tree({"F"}, {0, 1, 2}, {{0, 1}, {0, 2}}, {}, 0);
  REQUIRE(is_pseudotree(tree));
  // Unreachable vertex breaks treeness.
  ColoredGraph forest({"F"}, {0, 1}, {}, {}, 0);
  REQUIRE_FALSE(is_pseudotree(forest));
}

TEST_CASE("make_gk shape and counts") {
  auto g1 = make_gk(1);
  REQUIRE(g1.num_vertices() == 5);
  REQUIRE(g1.satisfies("F", 0));
  REQUIRE(g1.has_edge(0, 0));
  REQUIRE(g1.satisfies("F", 4));
  REQUIRE(g1.has_edge(4, 4));
  for (Vertex v : {1, 2, 3}) {
    REQUIRE_FALSE(g1.satisfies("F", v));
    REQUIRE_FALSE(g1.has_edge(v, v));
  }
  for (int k = 1; k <= 5; ++k) {
    auto g = make_gk(k);
    long long expect = (k + 1) + static_cast<long long>(k) * ((1LL << k) + 1);
    REQUIRE(g.num_vertices() == expect);
    REQUIRE(is_pseudotree(g));
    REQUIRE(in_scck(g, 1));
  }
  REQUIRE(make_gk(2).num_vertices() == 13);
  REQUIRE_THROWS_AS(make_gk(0), std::invalid_argument);
}

TEST_CASE("nloop") {
  auto n = make_nloop();
  REQUIRE(n.num_vertices() == 1);
  REQUIRE(n.edges().size() == 1);
  REQUIRE_FALSE(n.satisfies("F", 0));
  REQUIRE(is_pseudotree(n));
  REQUIRE(in_scck(n, 1));
}

TEST_CASE("bisimilarity basics") {
  auto g1 = make_gk(1);
  REQUIRE(bisimilar(g1, g1));
  REQUIRE_FALSE(bisimilar(make_nloop(), g1));
  // F-loop vs N-loop differ in color.
  ColoredGraph floop({"F"}, {0}, {{0, 0}}, {{"F", 0}}, 0);
  REQUIRE_FALSE(bisimilar(floop, make_nloop()));
  ColoredGraph other_preds({"Q"}, {0}, {}, {}, 0);
  REQUIRE_THROWS_AS(bisimilar(floop, other_preds), std::invalid_argument);
}

TEST_CASE("pseudotree_of unfolds a diamond into a tree") {
  // Root with two paths to one sink.
  ColoredGraph diamond({"F"}, {0, 1, 2, 3}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}, {{"F", 3}}, 0);
  auto t = pseudotree_of(diamond);
  REQUIRE(is_pseudotree(t));
  REQUIRE(t.num_vertices() == 5);  // sink duplicated
  REQUIRE(bisimilar(diamond, t));
}

TEST_CASE("pseudotree_of keeps loops") {
  ColoredGraph g({"F"}, {0, 1}, {{0, 0}, {0, 1}}, {{"F", 0}}, 0);
  auto t = pseudotree_of(g);
  REQUIRE(graph_equal(g, t));
  REQUIRE(bisimilar(g, t));
}

TEST_CASE("pseudotree_of is idempotent up to bisimulation and rejects big components") {
  auto g1 = make_gk(1);
  auto t = pseudotree_of(g1);
  REQUIRE(is_pseudotree(t));
  REQUIRE(bisimilar(g1, t));
  REQUIRE_THROWS_AS(pseudotree_of(two_cycle()), std::invalid_argument);
}

TEST_CASE("pseudotree_of on random scc1 graphs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto g = random_scck(sample_seed(7, seed), 1, 8, {"F"});
    REQUIRE(in_scck(g, 1));
    auto t = pseudotree_of(g);
    INFO("seed " << seed);
    REQUIRE(is_pseudotree(t));
    REQUIRE(in_scck(t, 1));
    REQUIRE(bisimilar(g, t));
  }
}

TEST_CASE("bisimilar is an equivalence on sampled graphs") {
  std::vector<ColoredGraph> pool;
  for (std::uint64_t seed = 0; seed < 12; ++seed)
    pool.push_back(random_scck(sample_seed(13, seed), 2, 5, {"F"}));
  for (const auto& g : pool) REQUIRE(bisimilar(g, g));
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = 0; j < pool.size(); ++j) {
      bool ij = bisimilar(pool[i], pool[j]);
      REQUIRE(ij == bisimilar(pool[j], pool[i]));
      if (!ij) continue;
      for (size_t k = 0; k < pool.size(); ++k)
        if (bisimilar(pool[j], pool[k])) REQUIRE(bisimilar(pool[i], pool[k]));
    }
}

TEST_CASE("random_scck determinism and bound") {
  auto a = random_scck(123, 2, 10, {"F"});
  auto b = random_scck(123, 2, 10, {"F"});
  REQUIRE(a.same_components(b));
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    auto g = random_scck(sample_seed(5, seed), 3, 9, {"F"});
    REQUIRE(in_scck(g, 3));
  }
}

TEST_CASE("every vertex of a random_scck graph is reachable from the point") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    auto g = random_scck(sample_seed(31, seed), 2, 9, {"F"});
    REQUIRE(reachable_from(g, g.point()).size() == static_cast<size_t>(g.num_vertices()));
  }
}

TEST_CASE("graft at the root is the donor") {
  auto g1 = make_gk(1);
  auto n = make_nloop();
  auto r = graft(g1, g1.point(), n);
  REQUIRE(graph_equal(r, n));
}

TEST_CASE("graft replaces the tail of G_1") {
  auto g1 = make_gk(1);
  auto n = make_nloop();
  // Graft at the second chain vertex: vertices 2,3,4 disappear.
  auto r = graft(g1, 2, n);
  REQUIRE(r.num_vertices() == 3);
  REQUIRE(in_scck(r, 1));
  // The N-loop's vertex is reachable and has a loop, no F.
  auto reach = reachable_from(r, r.point());
  REQUIRE(reach.size() == 3);
  bool found_nloop = false;
  for (Vertex v : r.vertices())
    if (r.has_edge(v, v) && !r.satisfies("F", v)) found_nloop = true;
  REQUIRE(found_nloop);
}

TEST_CASE("graft preserves scc1") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto host = pseudotree_of(random_scck(sample_seed(77, seed), 1, 6, {"F"}));
    Rng rng(seed);
    Vertex at = host.vertices()[rng.below(host.vertices().size())];
    auto r = graft(host, at, make_nloop());
    INFO("seed " << seed);
    REQUIRE(in_scck(r, 1));
  }
}

TEST_CASE("graft input validation") {
  auto g1 = make_gk(1);
  REQUIRE_THROWS_AS(graft(two_cycle(), 0, make_nloop()), std::invalid_argument);
  REQUIRE_THROWS_AS(graft(g1, 99, make_nloop()), std::invalid_argument);
}

TEST_CASE("graph json round trip is a fixpoint") {
  auto g1 = make_gk(1);
  json j = graph_to_json(g1);
  auto g2 = graph_from_json(j);
  REQUIRE(g1.same_components(g2));
  REQUIRE(graph_to_json(g2).dump() == j.dump());
  std::string text = j.dump(2);
  auto g3 = graph_from_json(json::parse(text));
  REQUIRE(graph_to_json(g3).dump(2) == text);
}

TEST_CASE("graph json rejects malformed input") {
  json j = graph_to_json(make_nloop());
  j["edges"].push_back(json::array({0, 7}));  // endpoint not a vertex
  REQUIRE_THROWS_AS(graph_from_json(j), std::invalid_argument);
  json k = graph_to_json(make_nloop());
  k["sat"].push_back(json::array({"Nope", 0}));
  REQUIRE_THROWS_AS(graph_from_json(k), std::invalid_argument);
  json m = graph_to_json(make_nloop());
  m.erase("point");
  REQUIRE_THROWS_AS(graph_from_json(m), std::invalid_argument);
}

TEST_CASE("exhaustive scc oracle on small graphs") {
  auto check_mask = [](int n, std::uint32_t mask) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if ((mask >> (u * n + v)) & 1u) edges.emplace_back(u, v);
    std::vector<Vertex> vertices(n);
    for (int v = 0; v < n; ++v) vertices[v] = v;
    ColoredGraph g({"F"}, vertices, edges, {}, 0);
    return same_partition(scc_decompose(g), closure_classes(g));
  };
  // Every graph with up to 4 vertices.
  for (int n = 1; n <= 4; ++n) {
    const int bits = n * n;
    for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
      if (!check_mask(n, mask)) {
        INFO("n=" << n << " mask=" << mask);
        REQUIRE(false);
      }
    }
  }
  // The 5-vertex family has 2^25 members; stride through it densely.
  for (std::uint32_t mask = 0; mask < (1u << 25); mask += 127) {
    if (!check_mask(5, mask)) {
      INFO("n=5 mask=" << mask);
      REQUIRE(false);
    }
  }
  SUCCEED();
}

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "plurichrome/encodings.hpp"

using namespace plurichrome;

namespace {

std::vector<std::vector<Edge>> edge_sets(const Plurigraph& g) {
  std::vector<std::vector<Edge>> out;
  for (const auto& e : g.pluriedges()) out.push_back(e.edges());
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<Edge>> sorted(std::vector<std::vector<Edge>> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<Edge> all_pairs(int n) {
  std::vector<Edge> out;
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) out.emplace_back(u, v);
  return out;
}

// Every simple graph on [n].
void for_each_graph(int n, const std::function<void(const Graph&)>& fn) {
  const auto pairs = all_pairs(n);
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    std::vector<Edge> es;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1) es.push_back(pairs[i]);
    fn(Graph(n, es));
  }
}

void for_each_coloring(int n, int k, const std::function<void(const Coloring&)>& fn) {
  Coloring f(static_cast<std::size_t>(n), 1);
  for (;;) {
    fn(f);
    std::size_t i = 0;
    while (i < f.size() && ++f[i] > k) f[i++] = 1;
    if (i == f.size()) return;
  }
}

bool graph_proper(const Graph& g, const Coloring& f) {
  for (auto [u, v] : g.edges())
    if (f[static_cast<std::size_t>(u - 1)] == f[static_cast<std::size_t>(v - 1)]) return false;
  return true;
}

// Edges of g with both ends colored a or b.
std::vector<Edge> two_color_subgraph(const Graph& g, const Coloring& f, int a, int b) {
  std::vector<Edge> out;
  auto in = [&](int v) { return f[static_cast<std::size_t>(v - 1)] == a || f[static_cast<std::size_t>(v - 1)] == b; };
  for (auto [u, v] : g.edges())
    if (in(u) && in(v)) out.emplace_back(u, v);
  return out;
}

bool is_forest(int n, const std::vector<Edge>& es) {
  std::vector<int> parent(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) parent[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) { return parent[static_cast<std::size_t>(x)] == x ? x : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]); };
  for (auto [u, v] : es) {
    const int a = find(u), b = find(v);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
  }
  return true;
}

// Forest whose components each have at most one vertex of degree above 1.
bool is_star_forest(int n, const std::vector<Edge>& es) {
  if (!is_forest(n, es)) return false;
  std::vector<int> deg(static_cast<std::size_t>(n) + 1, 0);
  for (auto [u, v] : es) {
    ++deg[static_cast<std::size_t>(u)];
    ++deg[static_cast<std::size_t>(v)];
  }
  for (auto [u, v] : es)
    if (deg[static_cast<std::size_t>(u)] > 1 && deg[static_cast<std::size_t>(v)] > 1) return false;
  return true;
}

bool acyclic_coloring(const Graph& g, const Coloring& f, int k) {
  if (!graph_proper(g, f)) return false;
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      if (!is_forest(g.size(), two_color_subgraph(g, f, a, b))) return false;
  return true;
}

bool star_coloring(const Graph& g, const Coloring& f, int k) {
  if (!graph_proper(g, f)) return false;
  for (int a = 1; a <= k; ++a)
    for (int b = a + 1; b <= k; ++b)
      if (!is_star_forest(g.size(), two_color_subgraph(g, f, a, b))) return false;
  return true;
}

bool oriented_coloring(const OrientedGraph& d, const Coloring& f) {
  auto c = [&](int v) { return f[static_cast<std::size_t>(v - 1)]; };
  for (auto [u, v] : d.arcs())
    if (c(u) == c(v)) return false;
  for (auto [u1, v1] : d.arcs())
    for (auto [u2, v2] : d.arcs())
      if (c(u1) == c(v2) && c(u2) == c(v1)) return false;
  return true;
}

// Every oriented graph on [n]: each pair is absent, forward, or backward.
void for_each_oriented(int n, const std::function<void(const OrientedGraph&)>& fn) {
  const auto pairs = all_pairs(n);
  std::vector<int> state(pairs.size(), 0);
  for (;;) {
    std::vector<Arc> arcs;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (state[i] == 1) arcs.push_back(pairs[i]);
      if (state[i] == 2) arcs.emplace_back(pairs[i].second, pairs[i].first);
    }
    fn(OrientedGraph(n, arcs));
    std::size_t i = 0;
    while (i < state.size() && ++state[i] == 3) state[i++] = 0;
    if (i == state.size()) return;
  }
}

Graph random_graph(std::mt19937& rng, int n, double p) {
  std::vector<Edge> es;
  std::bernoulli_distribution coin(p);
  for (const auto& e : all_pairs(n))
    if (coin(rng)) es.push_back(e);
  return Graph(n, es);
}

// k-subsets of a sorted vertex list.
std::set<std::vector<int>> subsets_of_size(const std::vector<int>& f, std::size_t k) {
  std::set<std::vector<int>> out;
  const std::size_t n = f.size();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) s.push_back(f[i]);
    if (s.size() == k) out.insert(s);
  }
  return out;
}

SimplicialComplex random_complex(std::mt19937& rng, int n) {
  std::vector<std::vector<int>> faces;
  const int count = static_cast<int>(rng() % 4);
  for (int i = 0; i < count; ++i) {
    std::vector<int> f;
    for (int v = 1; v <= n; ++v)
      if (rng() % 2) f.push_back(v);
    if (!f.empty()) faces.push_back(f);
  }
  return SimplicialComplex(n, faces);
}

}  // namespace

TEST(GraphEncoding, Examples) {
  const Graph triangle(3, {{1, 2}, {1, 3}, {2, 3}});
  EXPECT_EQ(edge_sets(graph_to_plurigraph(triangle)), sorted({{{1, 2}}, {{1, 3}}, {{2, 3}}}));
  EXPECT_EQ(graph_to_plurigraph(Graph(4)).num_pluriedges(), 0u);
}

TEST(GraphEncoding, ProperColoringsCorrespond) {
  for (int n = 1; n <= 5; ++n)
    for_each_graph(n, [&](const Graph& g) {
      const auto pg = graph_to_plurigraph(g);
      for_each_coloring(n, 3, [&](const Coloring& f) { ASSERT_EQ(is_proper(pg, f), graph_proper(g, f)); });
    });
}

TEST(HypergraphEncoding, CliqueAndPath) {
  const Hypergraph h(3, {{1, 2, 3}});
  EXPECT_EQ(edge_sets(hypergraph_to_plurigraph(h, HyperedgeMode::clique)), sorted({{{1, 2}, {1, 3}, {2, 3}}}));
  EXPECT_EQ(edge_sets(hypergraph_to_plurigraph(h, HyperedgeMode::path)), sorted({{{1, 2}, {2, 3}}}));
}

TEST(HypergraphEncoding, ModesGiveEqualY) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    std::set<Hyperedge> es;
    for (int i = static_cast<int>(rng() % 4); i > 0; --i) {
      Hyperedge e;
      for (int v = 1; v <= n; ++v)
        if (rng() % 2) e.push_back(v);
      if (e.size() >= 2) es.insert(e);
    }
    const Hypergraph h(n, std::vector<Hyperedge>(es.begin(), es.end()));
    EXPECT_EQ(chromatic_ncsym_powersum(hypergraph_to_plurigraph(h, HyperedgeMode::clique)),
              chromatic_ncsym_powersum(hypergraph_to_plurigraph(h, HyperedgeMode::path)));
  }
}

TEST(Complex, FacetsAreMaximal) {
  const SimplicialComplex k(5, {{1, 2, 3}, {1, 2}, {3, 4}});
  EXPECT_EQ(k.facets(), (std::vector<std::vector<int>>{{1, 2, 3}, {3, 4}, {5}}));
  EXPECT_EQ(hypergraph_to_complex(Hypergraph(5, {{1, 2, 3}, {3, 4, 5}})).facets(), (std::vector<std::vector<int>>{{1, 2, 3}, {3, 4, 5}}));
  EXPECT_EQ(hypergraph_to_complex(Hypergraph(3)).facets(), (std::vector<std::vector<int>>{{1}, {2}, {3}}));
}

TEST(Complex, FaceHypergraph) {
  const SimplicialComplex k(3, {{1, 2, 3}});
  EXPECT_EQ(complex_to_hypergraph(k, 1), Hypergraph(3, {{1, 2}, {1, 3}, {2, 3}}));
  EXPECT_EQ(complex_to_hypergraph(k, 3), Hypergraph(3));
  EXPECT_EQ(complex_to_hypergraph(k, 2), Hypergraph(3, {{1, 2, 3}}));
  EXPECT_THROW(complex_to_hypergraph(k, 0), invalid_input);
}

TEST(Complex, SimplicialColoring) {
  const SimplicialComplex k(3, {{1, 2, 3}});
  EXPECT_TRUE(s_simplicial_proper(k, 2, {1, 1, 2}));
  EXPECT_FALSE(s_simplicial_proper(k, 2, {1, 1, 1}));
}

TEST(Complex, ColoringEquivalences) {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const auto k = random_complex(rng, n);
    for (int s = 1; s <= 3; ++s) {
      // Independent face list: all (s+1)-subsets of facets.
      std::set<std::vector<int>> faces;
      for (const auto& f : k.facets())
        for (const auto& sub : subsets_of_size(f, static_cast<std::size_t>(s) + 1)) faces.insert(sub);
      const auto h = complex_to_hypergraph(k, s);
      EXPECT_EQ(std::set<std::vector<int>>(h.edges().begin(), h.edges().end()), faces);
      const auto pg = hypergraph_to_plurigraph(h, HyperedgeMode::clique);
      const auto back = hypergraph_to_complex(h);
      for_each_coloring(n, 3, [&](const Coloring& f) {
        ASSERT_EQ(s_simplicial_proper(k, s, f), is_proper(pg, f));
        ASSERT_EQ(s_simplicial_proper(back, s, f), is_proper(pg, f));
      });
    }
  }
}

TEST(Complex, RoundTripForUniformHypergraphs) {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int s = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
    std::set<Hyperedge> es;
    for (const auto& sub : subsets_of_size([&] {
           std::vector<int> all;
           for (int v = 1; v <= n; ++v) all.push_back(v);
           return all;
         }(), static_cast<std::size_t>(s) + 1))
      if (rng() % 3 == 0) es.insert(sub);
    const Hypergraph h(n, std::vector<Hyperedge>(es.begin(), es.end()));
    EXPECT_EQ(complex_to_hypergraph(hypergraph_to_complex(h), s), h);
  }
}

TEST(OrientedEncoding, Example) {
  const OrientedGraph d(4, {{1, 2}, {3, 4}});
  EXPECT_EQ(edge_sets(oriented_to_plurigraph(d)), sorted({{{1, 2}}, {{3, 4}}, {{1, 4}, {2, 3}}}));
  EXPECT_EQ(oriented_to_plurigraph(OrientedGraph(2, {{2, 1}})).num_pluriedges(), 1u);
  EXPECT_THROW(OrientedGraph(2, {{1, 2}, {2, 1}}), invalid_input);
  EXPECT_THROW(OrientedGraph(2, {{1, 1}}), invalid_input);
}

TEST(OrientedEncoding, ClauseCount) {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Arc> arcs;
    for (const auto& [u, v] : all_pairs(6)) {
      const auto r = rng() % 3;
      if (r == 1) arcs.emplace_back(u, v);
      if (r == 2) arcs.emplace_back(v, u);
    }
    const OrientedGraph d(6, arcs);
    const std::size_t a = arcs.size();
    EXPECT_EQ(oriented_to_plurigraph(d).num_pluriedges(), a + a * (a - 1) / 2);
    EXPECT_EQ(oriented_to_plurigraph(d, true).num_pluriedges(), 2 * a + a * (a - 1) / 2);
  }
}

TEST(OrientedEncoding, MatchesDefinitionExhaustively) {
  for (int n = 1; n <= 4; ++n)
    for_each_oriented(n, [&](const OrientedGraph& d) {
      const auto pg = oriented_to_plurigraph(d);
      const auto verbatim = oriented_to_plurigraph(d, true);
      for_each_coloring(n, 4, [&](const Coloring& f) {
        ASSERT_EQ(is_proper(pg, f), oriented_coloring(d, f)) << to_string(d);
        ASSERT_EQ(is_proper(verbatim, f), oriented_coloring(d, f));
      });
    });
}

TEST(AcyclicEncoding, FourCycle) {
  const Graph c4(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  EXPECT_EQ(even_cycles(c4), (std::vector<std::vector<int>>{{1, 2, 3, 4}}));
  EXPECT_EQ(edge_sets(acyclic_to_plurigraph(c4)), sorted({{{1, 2}}, {{2, 3}}, {{3, 4}}, {{1, 4}}, {{1, 3}, {2, 4}}}));
}

TEST(AcyclicEncoding, TreesHaveNoEvenCycles) {
  const Graph tree(5, {{1, 2}, {1, 3}, {3, 4}, {3, 5}});
  EXPECT_TRUE(even_cycles(tree).empty());
  EXPECT_EQ(acyclic_to_plurigraph(tree), graph_to_plurigraph(tree));
  EXPECT_THROW(even_cycles(Graph(2, {{1, 1}})), invalid_input);
}

TEST(AcyclicEncoding, CycleCountsOnCompleteGraphs) {
  // K4 has three 4-cycles; K5 has fifteen 4-cycles and no other even cycles.
  EXPECT_EQ(even_cycles(Graph(4, all_pairs(4))).size(), 3u);
  EXPECT_EQ(even_cycles(Graph(5, all_pairs(5))).size(), 15u);
  // K6: 45 four-cycles and 60 six-cycles.
  EXPECT_EQ(even_cycles(Graph(6, all_pairs(6))).size(), 105u);
  EXPECT_EQ(even_cycles(Graph(6, all_pairs(6)), 4).size(), 45u);
}

TEST(AcyclicEncoding, MatchesDefinitionExhaustively) {
  for (int n = 1; n <= 5; ++n)
    for_each_graph(n, [&](const Graph& g) {
      const auto pg = acyclic_to_plurigraph(g);
      for_each_coloring(n, 3, [&](const Coloring& f) { ASSERT_EQ(is_proper(pg, f), acyclic_coloring(g, f, 3)) << to_string(g); });
    });
}

TEST(AcyclicEncoding, MatchesDefinitionOnRandomSixVertexGraphs) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_graph(rng, 6, 0.5);
    const auto pg = acyclic_to_plurigraph(g);
    for_each_coloring(6, 4, [&](const Coloring& f) { ASSERT_EQ(is_proper(pg, f), acyclic_coloring(g, f, 4)); });
  }
}

TEST(StarEncoding, Examples) {
  const Graph path(4, {{1, 2}, {2, 3}, {3, 4}});
  EXPECT_EQ(p4_paths(path), (std::vector<std::array<int, 4>>{{1, 2, 3, 4}}));
  EXPECT_EQ(edge_sets(star_to_plurigraph(path)), sorted({{{1, 2}}, {{2, 3}}, {{3, 4}}, {{1, 3}, {2, 4}}}));
  const Graph triangle(3, {{1, 2}, {1, 3}, {2, 3}});
  EXPECT_TRUE(p4_paths(triangle).empty());
  EXPECT_EQ(star_to_plurigraph(triangle), graph_to_plurigraph(triangle));
  // K4 has 4!/2 = 12 Hamiltonian paths.
  EXPECT_EQ(p4_paths(Graph(4, all_pairs(4))).size(), 12u);
}

TEST(StarEncoding, MatchesDefinitionExhaustively) {
  for (int n = 1; n <= 5; ++n)
    for_each_graph(n, [&](const Graph& g) {
      const auto pg = star_to_plurigraph(g);
      for_each_coloring(n, 3, [&](const Coloring& f) { ASSERT_EQ(is_proper(pg, f), star_coloring(g, f, 3)) << to_string(g); });
    });
  std::mt19937 rng(43);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_graph(rng, 6, 0.5);
    const auto pg = star_to_plurigraph(g);
    for_each_coloring(6, 4, [&](const Coloring& f) { ASSERT_EQ(is_proper(pg, f), star_coloring(g, f, 4)); });
  }
}

TEST(Containment, StarWithinAcyclicWithinProper) {
  for (int n = 1; n <= 5; ++n)
    for_each_graph(n, [&](const Graph& g) {
      const auto star = star_to_plurigraph(g), acyclic = acyclic_to_plurigraph(g), proper = graph_to_plurigraph(g);
      for_each_coloring(n, 3, [&](const Coloring& f) {
        if (is_proper(star, f)) {
          ASSERT_TRUE(is_proper(acyclic, f));
        }
        if (is_proper(acyclic, f)) {
          ASSERT_TRUE(is_proper(proper, f));
        }
      });
    });
}

TEST(TextFormats, RoundTripAndErrors) {
  const Graph g(4, {{1, 2}, {3, 4}});
  EXPECT_EQ(parse_graph(to_string(g)), g);
  const SimplicialComplex k(5, {{1, 2, 3}, {4, 5}});
  EXPECT_EQ(parse_complex(to_string(k)), k);
  const OrientedGraph d(3, {{2, 1}, {2, 3}});
  EXPECT_EQ(parse_oriented_graph(to_string(d)), d);
  EXPECT_THROW(parse_graph("graph 3\ne 1\n"), parse_error);
  EXPECT_THROW(parse_graph("graph 3\ne 1 4\n"), parse_error);
  EXPECT_THROW(parse_complex("complex 3\nf\n"), parse_error);
  EXPECT_THROW(parse_oriented_graph("digraph 3\na 1 2\na 2 1\n"), parse_error);
  EXPECT_THROW(parse_oriented_graph("graph 3\n"), parse_error);
}

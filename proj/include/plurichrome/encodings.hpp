#pragma once

// Translations into plurigraphs: graphs, hypergraphs (clique or path
// pluriedges), simplicial complexes via their uniform face hypergraphs, and
// the oriented, acyclic, and star coloring problems.

#include <algorithm>
#include <array>
#include <cstddef>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plurichrome/error.hpp"
#include "plurichrome/hypertree.hpp"
#include "plurichrome/plurigraph.hpp"

namespace plurichrome {

/// Undirected graph on [n]; loops and repeated edges are representable but
/// rejected by the encoders that need a simple graph.
class Graph {
public:
  Graph() = default;
  explicit Graph(int n, std::vector<Edge> edges = {}) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw invalid_input("a graph needs at least one vertex");
    for (auto& [u, v] : edges_) {
      if (u < 1 || v < 1 || u > n_ || v > n_) throw invalid_input("edge endpoint outside [n]");
      if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
  }

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  bool is_simple() const {
    for (std::size_t i = 0; i < edges_.size(); ++i) {
      if (edges_[i].first == edges_[i].second) return false;
      if (i > 0 && edges_[i] == edges_[i - 1]) return false;
    }
    return true;
  }

  bool has_edge(int u, int v) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{std::min(u, v), std::max(u, v)});
  }

  /// Sorted neighbor lists; adjacency()[v - 1] holds the neighbors of v.
  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n_));
    for (auto [u, v] : edges_) {
      adj[static_cast<std::size_t>(u - 1)].push_back(v);
      if (u != v) adj[static_cast<std::size_t>(v - 1)].push_back(u);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());
    return adj;
  }

  bool operator==(const Graph&) const = default;

private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Facets of an abstract simplicial complex on [n].  Constructed from any
/// generating faces; vertices not covered become singleton facets.
class SimplicialComplex {
public:
  SimplicialComplex() = default;
  SimplicialComplex(int n, std::vector<std::vector<int>> faces) : n_(n) {
    if (n_ < 1) throw invalid_input("a simplicial complex needs at least one vertex");
    std::vector<bool> covered(static_cast<std::size_t>(n_), false);
    for (auto& f : faces) {
      if (f.empty()) throw invalid_input("faces must be nonempty");
      std::sort(f.begin(), f.end());
      f.erase(std::unique(f.begin(), f.end()), f.end());
      if (f.front() < 1 || f.back() > n_) throw invalid_input("face vertex outside [n]");
      for (int v : f) covered[static_cast<std::size_t>(v - 1)] = true;
    }
    for (int v = 1; v <= n_; ++v)
      if (!covered[static_cast<std::size_t>(v - 1)]) faces.push_back({v});
    std::sort(faces.begin(), faces.end());
    faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    for (const auto& f : faces) {
      const bool maximal = std::none_of(faces.begin(), faces.end(), [&](const std::vector<int>& g) {
        return g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end());
      });
      if (maximal) facets_.push_back(f);
    }
  }

  int size() const noexcept { return n_; }
  const std::vector<std::vector<int>>& facets() const noexcept { return facets_; }

  bool operator==(const SimplicialComplex&) const = default;

private:
  int n_ = 0;
  std::vector<std::vector<int>> facets_;
};

using Arc = std::pair<int, int>;

/// Directed graph with no loops, repeated arcs, or opposite arcs.
class OrientedGraph {
public:
  OrientedGraph() = default;
  explicit OrientedGraph(int n, std::vector<Arc> arcs = {}) : n_(n), arcs_(std::move(arcs)) {
    if (n_ < 1) throw invalid_input("an oriented graph needs at least one vertex");
    std::set<Arc> seen;
    for (auto [u, v] : arcs_) {
      if (u < 1 || v < 1 || u > n_ || v > n_) throw invalid_input("arc endpoint outside [n]");
      if (u == v) throw invalid_input("oriented graphs have no loops");
      if (seen.count({v, u})) throw invalid_input("oriented graphs have no opposite arcs");
      if (!seen.insert({u, v}).second) throw invalid_input("repeated arc");
    }
    std::sort(arcs_.begin(), arcs_.end());
  }

  int size() const noexcept { return n_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }

  bool operator==(const OrientedGraph&) const = default;

private:
  int n_ = 0;
  std::vector<Arc> arcs_;
};

// ---------------------------------------------------------------------------
// Graphs, hypergraphs, complexes

/// One single-edge pluriedge per edge.
inline Plurigraph graph_to_plurigraph(const Graph& g) {
  std::vector<std::vector<Edge>> lists;
  for (const auto& e : g.edges()) lists.push_back({e});
  return Plurigraph::from_edge_lists(g.size(), lists);
}

enum class HyperedgeMode { clique, path };

/// One pluriedge per hyperedge: the complete graph on it, or the path
/// through its vertices in ascending order.
inline Plurigraph hypergraph_to_plurigraph(const Hypergraph& h, HyperedgeMode mode) {
  std::vector<std::vector<Edge>> lists;
  for (const auto& e : h.edges()) {
    std::vector<Edge> l;
    if (mode == HyperedgeMode::clique) {
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j) l.emplace_back(e[i], e[j]);
    } else {
      for (std::size_t i = 1; i < e.size(); ++i) l.emplace_back(e[i - 1], e[i]);
    }
    lists.push_back(std::move(l));
  }
  return Plurigraph::from_edge_lists(h.size(), lists);
}

/// The (s+1)-uniform hypergraph of s-simplices (faces with s+1 vertices).
inline Hypergraph complex_to_hypergraph(const SimplicialComplex& k, int s) {
  if (s < 1) throw invalid_input("s must be at least 1");
  const auto want = static_cast<std::size_t>(s) + 1;
  std::set<Hyperedge> faces;
  for (const auto& f : k.facets()) {
    if (f.size() < want) continue;
    std::vector<bool> pick(f.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(want), true);
    do {
      Hyperedge sub;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (pick[i]) sub.push_back(f[i]);
      faces.insert(std::move(sub));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return Hypergraph(k.size(), std::vector<Hyperedge>(faces.begin(), faces.end()));
}

/// The complex generated by the hyperedges, plus isolated vertices.
inline SimplicialComplex hypergraph_to_complex(const Hypergraph& h) { return SimplicialComplex(h.size(), h.edges()); }

/// Every facet holds at most s vertices of each color.
inline bool s_simplicial_proper(const SimplicialComplex& k, int s, const Coloring& f) {
  check_coloring(f, k.size());
  for (const auto& facet : k.facets()) {
    std::vector<int> colors;
    for (int v : facet) colors.push_back(f[static_cast<std::size_t>(v - 1)]);
    std::sort(colors.begin(), colors.end());
    for (std::size_t i = 0; i < colors.size();) {
      std::size_t j = i;
      while (j < colors.size() && colors[j] == colors[i]) ++j;
      if (static_cast<int>(j - i) > s) return false;
      i = j;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Oriented coloring

/// Pluriedge {uv} per arc (u,v) and {uv', u'v} per unordered pair of distinct
/// arcs (u,v), (u',v').  With `verbatim`, the pair of each arc with itself is
/// also emitted as {uv, uv}.
inline Plurigraph oriented_to_plurigraph(const OrientedGraph& d, bool verbatim = false) {
  const auto& arcs = d.arcs();
  std::vector<std::vector<Edge>> lists;
  for (auto [u, v] : arcs) lists.push_back({{u, v}});
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = verbatim ? i : i + 1; j < arcs.size(); ++j)
      lists.push_back({{arcs[i].first, arcs[j].second}, {arcs[j].first, arcs[i].second}});
  return Plurigraph::from_edge_lists(d.size(), lists);
}

// ---------------------------------------------------------------------------
// Acyclic and star coloring

namespace detail {

inline void require_simple(const Graph& g) {
  if (!g.is_simple()) throw invalid_input("a simple graph is required");
}

inline std::vector<std::vector<Edge>> proper_edge_lists(const Graph& g) {
  std::vector<std::vector<Edge>> lists;
  for (const auto& e : g.edges()) lists.push_back({e});
  return lists;
}

}  // namespace detail

/// Even cycles of a simple graph, each once: it starts at its smallest vertex
/// and its second vertex is smaller than its last.  max_length = 0 means no cap.
inline std::vector<std::vector<int>> even_cycles(const Graph& g, int max_length = 0) {
  detail::require_simple(g);
  const auto adj = g.adjacency();
  std::vector<std::vector<int>> out;
  std::vector<int> path;
  std::vector<bool> on_path(static_cast<std::size_t>(g.size()) + 1, false);
  auto extend = [&](auto&& self, int start) -> void {
    const int last = path.back();
    for (int w : adj[static_cast<std::size_t>(last - 1)]) {
      if (w == start && path.size() >= 4 && path.size() % 2 == 0 && path[1] < path.back()) out.push_back(path);
      if (w <= start || on_path[static_cast<std::size_t>(w)]) continue;
      if (max_length > 0 && static_cast<int>(path.size()) >= max_length) continue;
      path.push_back(w);
      on_path[static_cast<std::size_t>(w)] = true;
      self(self, start);
      on_path[static_cast<std::size_t>(w)] = false;
      path.pop_back();
    }
  };
  for (int s = 1; s <= g.size(); ++s) {
    path = {s};
    on_path[static_cast<std::size_t>(s)] = true;
    extend(extend, s);
    on_path[static_cast<std::size_t>(s)] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Edge pluriedges plus, per even cycle, a pluriedge joining every two
/// vertices at positions of equal parity along the cycle.
inline Plurigraph acyclic_to_plurigraph(const Graph& g, int max_length = 0) {
  auto lists = detail::proper_edge_lists(g);
  for (const auto& c : even_cycles(g, max_length)) {
    std::vector<Edge> l;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 2; j < c.size(); j += 2) l.emplace_back(c[i], c[j]);
    lists.push_back(std::move(l));
  }
  return Plurigraph::from_edge_lists(g.size(), lists);
}

/// Paths P1-P2-P3-P4 on four distinct vertices, each once (P1 < P4).
inline std::vector<std::array<int, 4>> p4_paths(const Graph& g) {
  detail::require_simple(g);
  const auto adj = g.adjacency();
  std::vector<std::array<int, 4>> out;
  for (int b = 1; b <= g.size(); ++b)
    for (int c : adj[static_cast<std::size_t>(b - 1)])
      for (int a : adj[static_cast<std::size_t>(b - 1)]) {
        if (a == c) continue;
        for (int d : adj[static_cast<std::size_t>(c - 1)])
          if (d != a && d != b && a < d) out.push_back({a, b, c, d});
      }
  std::sort(out.begin(), out.end());
  return out;
}

/// Edge pluriedges plus {P1P3, P2P4} per 4-vertex path P.
inline Plurigraph star_to_plurigraph(const Graph& g) {
  detail::require_simple(g);
  auto lists = detail::proper_edge_lists(g);
  for (const auto& p : p4_paths(g)) lists.push_back({{p[0], p[2]}, {p[1], p[3]}});
  return Plurigraph::from_edge_lists(g.size(), lists);
}

// ---------------------------------------------------------------------------
// File formats: `graph <n>` / `e u v`, `complex <n>` / `f v1 v2 ...`,
// `digraph <n>` / `a u v`.

namespace detail {

inline std::vector<int> parse_int_tokens(std::istringstream& ls, std::size_t line) {
  std::vector<int> out;
  std::string tok;
  while (ls >> tok) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument("junk");
    } catch (const std::logic_error&) {
      throw parse_error("bad vertex '" + tok + "'", line);
    }
  }
  return out;
}

// Header, then every line `<keyword> ints...`, with the int count checked when arity > 0.
inline std::pair<int, std::vector<std::vector<int>>> parse_records(std::string_view text, std::string_view header,
                                                                   std::string_view keyword, std::size_t arity) {
  const auto lines = content_lines(text);
  const int n = parse_header(lines, header);
  std::vector<std::vector<int>> records;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i].second);
    std::string kw;
    ls >> kw;
    if (kw != keyword) throw parse_error("expected '" + std::string(keyword) + "'", lines[i].first);
    auto rec = parse_int_tokens(ls, lines[i].first);
    if ((arity > 0 && rec.size() != arity) || rec.empty())
      throw parse_error("wrong number of vertices on '" + std::string(keyword) + "' line", lines[i].first);
    records.push_back(std::move(rec));
  }
  return {n, records};
}

}  // namespace detail

inline Graph parse_graph(std::string_view text) {
  auto [n, recs] = detail::parse_records(text, "graph", "e", 2);
  std::vector<Edge> edges;
  for (const auto& r : recs) edges.emplace_back(r[0], r[1]);
  try {
    return Graph(n, std::move(edges));
  } catch (const invalid_input& err) {
    throw parse_error(err.what(), 1);
  }
}

inline SimplicialComplex parse_complex(std::string_view text) {
  auto [n, recs] = detail::parse_records(text, "complex", "f", 0);
  try {
    return SimplicialComplex(n, std::move(recs));
  } catch (const invalid_input& err) {
    throw parse_error(err.what(), 1);
  }
}

inline OrientedGraph parse_oriented_graph(std::string_view text) {
  auto [n, recs] = detail::parse_records(text, "digraph", "a", 2);
  std::vector<Arc> arcs;
  for (const auto& r : recs) arcs.emplace_back(r[0], r[1]);
  try {
    return OrientedGraph(n, std::move(arcs));
  } catch (const invalid_input& err) {
    throw parse_error(err.what(), 1);
  }
}

inline std::string to_string(const Graph& g) {
  std::string s = "graph " + std::to_string(g.size()) + "\n";
  for (auto [u, v] : g.edges()) s += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

inline std::string to_string(const SimplicialComplex& k) {
  std::string s = "complex " + std::to_string(k.size()) + "\n";
  for (const auto& f : k.facets()) {
    s += "f";
    for (int v : f) s += " " + std::to_string(v);
    s += "\n";
  }
  return s;
}

inline std::string to_string(const OrientedGraph& d) {
  std::string s = "digraph " + std::to_string(d.size()) + "\n";
  for (auto [u, v] : d.arcs()) s += "a " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return s;
}

}  // namespace plurichrome

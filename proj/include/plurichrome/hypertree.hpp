#pragma once

// Hypergraphs on [n] and hypertrees: connectivity, cycles, hyperedge
// magnitude, the chromatic symmetric function X_H in the powersum basis,
// recovery of the degree sequence from X_H, isomorphism testing, and
// enumeration of uniform hypertrees up to isomorphism.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "plurichrome/error.hpp"
#include "plurichrome/ncalg.hpp"
#include "plurichrome/parallel.hpp"
#include "plurichrome/plurigraph.hpp"
#include "plurichrome/setpart.hpp"

namespace plurichrome {

using Hyperedge = std::vector<int>;
/// Vertex degrees in weakly decreasing order.
using DegreeSequence = std::vector<int>;

inline constexpr int kCsfEdgeCap = 24;
inline constexpr int kHypertreeEdgeCap = 6;

/// Distinct hyperedges of size >= 2 on [n].  Each hyperedge is stored sorted
/// and the hyperedge list is sorted, so equal hypergraphs compare equal.
class Hypergraph {
public:
  Hypergraph() = default;
  explicit Hypergraph(int n, std::vector<Hyperedge> edges = {}) : n_(n), edges_(std::move(edges)) {
    if (n_ < 1) throw invalid_input("a hypergraph needs at least one vertex");
    for (auto& e : edges_) {
      std::sort(e.begin(), e.end());
      if (e.size() < 2) throw invalid_input("hyperedges need at least two vertices");
      if (e.front() < 1 || e.back() > n_) throw invalid_input("hyperedge vertex outside [n]");
      if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw invalid_input("repeated vertex in a hyperedge");
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw invalid_input("repeated hyperedge");
  }

  int size() const noexcept { return n_; }
  const std::vector<Hyperedge>& edges() const noexcept { return edges_; }
  std::size_t num_edges() const noexcept { return edges_.size(); }

  bool is_uniform(int s) const {
    return std::all_of(edges_.begin(), edges_.end(), [s](const Hyperedge& e) { return static_cast<int>(e.size()) == s; });
  }

  bool operator==(const Hypergraph&) const = default;

private:
  int n_ = 0;
  std::vector<Hyperedge> edges_;
};

inline Hypergraph relabel(const Hypergraph& h, const Permutation& d) {
  if (static_cast<int>(d.size()) != h.size()) throw invalid_input("permutation size differs from hypergraph");
  check_permutation(d, h.size());
  std::vector<Hyperedge> es;
  for (const auto& e : h.edges()) {
    Hyperedge img;
    for (int v : e) img.push_back(d[static_cast<std::size_t>(v - 1)]);
    es.push_back(std::move(img));
  }
  return Hypergraph(h.size(), std::move(es));
}

// ---------------------------------------------------------------------------
// Structure

inline SetPartition components(const Hypergraph& h) {
  detail::UnionFind uf(h.size());
  for (const auto& e : h.edges())
    for (int v : e) uf.unite(e.front() - 1, v - 1);
  return SetPartition::from_labels(uf.labels());
}

inline bool is_connected(const Hypergraph& h) { return components(h).blocks().size() == 1; }

/// Cycle of length >= 2, detected as a cycle in the vertex-hyperedge incidence graph.
inline bool has_cycle(const Hypergraph& h) {
  detail::UnionFind uf(h.size() + static_cast<int>(h.num_edges()));
  int node = h.size();
  for (const auto& e : h.edges()) {
    for (int v : e)
      if (!uf.unite(v - 1, node)) return true;
    ++node;
  }
  return false;
}

/// Sum over hyperedges of |e| - 1.
inline int hyperedge_magnitude(const Hypergraph& h) {
  int total = 0;
  for (const auto& e : h.edges()) total += static_cast<int>(e.size()) - 1;
  return total;
}

inline bool is_hypertree(const Hypergraph& h) { return is_connected(h) && !has_cycle(h); }

/// Pairwise hyperedge intersections have at most one vertex.
inline bool is_linear(const Hypergraph& h) {
  const auto& es = h.edges();
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(es[i].begin(), es[i].end(), es[j].begin(), es[j].end(), std::back_inserter(common));
      if (common.size() > 1) return false;
    }
  return true;
}

struct TwoOfThree {
  bool connected = false;
  bool acyclic = false;
  bool magnitude_is_n_minus_1 = false;
};

inline TwoOfThree two_of_three(const Hypergraph& h) {
  return {is_connected(h), !has_cycle(h), hyperedge_magnitude(h) == h.size() - 1};
}

inline std::vector<int> degrees(const Hypergraph& h) {
  std::vector<int> deg(static_cast<std::size_t>(h.size()), 0);
  for (const auto& e : h.edges())
    for (int v : e) ++deg[static_cast<std::size_t>(v - 1)];
  return deg;
}

inline DegreeSequence degree_sequence(const Hypergraph& h) {
  auto deg = degrees(h);
  std::sort(deg.begin(), deg.end(), std::greater<>());
  return deg;
}

// ---------------------------------------------------------------------------
// Chromatic symmetric function

namespace detail {

using ShapeCounts = std::map<std::vector<int>, std::int64_t>;

inline std::vector<int> merge_edge(std::vector<int> label, const Hyperedge& e) {
  std::vector<int> ids;
  for (int v : e) ids.push_back(label[static_cast<std::size_t>(v - 1)]);
  const int target = *std::min_element(ids.begin(), ids.end());
  for (int& x : label)
    if (std::find(ids.begin(), ids.end(), x) != ids.end()) x = target;
  return label;
}

// Adds (-1)^{|A|} to counts[shape] for every A containing the chosen prefix
// and any subset of edges[i..].  `label` holds a component id per vertex.
inline void shape_subset_sum(const std::vector<Hyperedge>& edges, std::size_t i, const std::vector<int>& label,
                             std::int64_t sign, ShapeCounts& counts) {
  if (i == edges.size()) {
    std::vector<int> size(label.size(), 0);
    for (int l : label) ++size[static_cast<std::size_t>(l)];
    std::vector<int> key;
    for (int c : size)
      if (c > 0) key.push_back(c);
    std::sort(key.begin(), key.end(), std::greater<>());
    counts[key] += sign;
    return;
  }
  shape_subset_sum(edges, i + 1, label, sign, counts);
  shape_subset_sum(edges, i + 1, merge_edge(label, edges[i]), -sign, counts);
}

}  // namespace detail

/// X_H = sum over A subset of E of (-1)^{|A|} p_{lambda(A)}, where lambda(A)
/// is the multiset of component sizes of (V, A).
inline SymExpr csf(const Hypergraph& h, bool allow_large = false) {
  if (h.num_edges() > static_cast<std::size_t>(kCsfEdgeCap) && !allow_large)
    throw cap_exceeded("csf capped at " + std::to_string(kCsfEdgeCap) + " hyperedges");
  const auto& edges = h.edges();
  std::vector<int> start(static_cast<std::size_t>(h.size()));
  for (int v = 0; v < h.size(); ++v) start[static_cast<std::size_t>(v)] = v;

  // Split on the first few edges and hand the prefixes to workers.
  const unsigned workers = worker_count();
  std::size_t depth = 0;
  while (depth < edges.size() && (std::size_t{1} << depth) < 4 * static_cast<std::size_t>(workers)) ++depth;
  if (workers == 1 || edges.size() < 12) depth = 0;
  const std::size_t tasks = std::size_t{1} << depth;

  std::vector<detail::ShapeCounts> partial(workers);
  std::atomic<std::size_t> next{0};
  auto work = [&](unsigned w) {
    for (std::size_t t = next++; t < tasks; t = next++) {
      std::vector<int> label = start;
      std::int64_t sign = 1;
      for (std::size_t b = 0; b < depth; ++b)
        if (t >> b & 1) {
          label = detail::merge_edge(std::move(label), edges[b]);
          sign = -sign;
        }
      detail::shape_subset_sum(edges, depth, label, sign, partial[w]);
    }
  };
  if (depth == 0) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  detail::ShapeCounts total;
  for (const auto& p : partial)
    for (const auto& [key, c] : p) total[key] += c;
  SymExpr x(h.size());
  for (const auto& [key, c] : total)
    if (c != 0) x.add(IntegerPartition(key), c);
  return x;
}

inline Coeff coefficient(const SymExpr& x, const IntegerPartition& l) { return x.coefficient(l); }

/// The partition (s, 1^{n-s}).
inline IntegerPartition edge_shape(int n, int s) {
  std::vector<int> parts{s};
  parts.resize(static_cast<std::size_t>(n - s + 1), 1);
  return IntegerPartition(std::move(parts));
}

struct IdentityRow {
  int j = 0;       // number of hyperedges in A
  int length = 0;  // n - (s-1) j
  Coeff signed_sum;
  Coeff expected;  // binomial(m, j)
};

struct IdentityReport {
  Coeff edge_count;  // -c_{(s,1^{n-s})}
  std::vector<IdentityRow> rows;
  bool stray_terms = false;
  int m = 0;

  bool holds() const {
    if (stray_terms || edge_count != m) return false;
    return std::all_of(rows.begin(), rows.end(), [](const IdentityRow& r) { return r.signed_sum == r.expected; });
  }
};

/// For X the csf of an acyclic s-uniform hypergraph with m hyperedges on n
/// vertices: -c_{(s,1^{n-s})} = m, and (-1)^j sum_{len lambda = n-(s-1)j} c_lambda = C(m, j).
inline IdentityReport coefficient_identities(const SymExpr& x, int n, int s, int m) {
  if (s < 2 || m < 0 || n < 1) throw invalid_input("coefficient_identities needs s >= 2, m >= 0, n >= 1");
  if (x.degree() != n) throw invalid_input("expression degree differs from n");
  IdentityReport rep;
  rep.m = m;
  rep.edge_count = s <= n ? Coeff(-x.coefficient(edge_shape(n, s))) : Coeff(0);
  std::map<int, Coeff> by_length;
  for (const auto& [l, c] : x.terms().terms()) by_length[static_cast<int>(l.length())] += c;
  for (int j = 0; j <= m; ++j) {
    const int len = n - (s - 1) * j;
    Coeff sum = by_length.count(len) ? by_length[len] : Coeff(0);
    by_length.erase(len);
    rep.rows.push_back({j, len, j % 2 ? Coeff(-sum) : sum, detail::binomial(m, j)});
  }
  for (const auto& [len, c] : by_length)
    if (c != 0) rep.stray_terms = true;
  return rep;
}

/// Recovers the degree sequence of an s-uniform hypertree from its csf by
/// forward substitution in the triangular system
///   (-1)^{m-i} sum_{len lambda = k_i} c_lambda * (#1s in lambda) = sum_{j<=i} C(m-j, i-j) D_j,
/// k_i = n - (s-1)(m-i), where D_j counts vertices of degree j.
inline DegreeSequence degree_sequence_from_csf(const SymExpr& x, int s) {
  const invalid_input bad("input is not a uniform-hypertree CSF");
  if (s < 2) throw invalid_input("s must be at least 2");
  const int n = x.degree();
  if ((n - 1) % (s - 1) != 0) throw bad;
  const int m = (n - 1) / (s - 1);
  if (m == 0) {
    if (x.coefficient(IntegerPartition({1})) != 1 || x.terms().size() != 1) throw bad;
    return {0};
  }
  if (-x.coefficient(edge_shape(n, s)) != m) throw bad;

  std::map<int, Coeff> weighted;  // length -> sum of c_lambda * ones(lambda)
  for (const auto& [l, c] : x.terms().terms()) weighted[static_cast<int>(l.length())] += c * l.ones();

  std::vector<Coeff> d(static_cast<std::size_t>(m) + 1, 0);
  for (int i = 1; i <= m; ++i) {
    const int k = n - (s - 1) * (m - i);
    Coeff rhs = weighted.count(k) ? weighted[k] : Coeff(0);
    if ((m - i) % 2) rhs = -rhs;
    for (int j = 1; j < i; ++j) rhs -= detail::binomial(m - j, i - j) * d[static_cast<std::size_t>(j)];
    if (rhs < 0) throw bad;
    d[static_cast<std::size_t>(i)] = rhs;
  }
  Coeff count = 0, incidences = 0;
  for (int j = 1; j <= m; ++j) {
    count += d[static_cast<std::size_t>(j)];
    incidences += j * d[static_cast<std::size_t>(j)];
  }
  if (count != n || incidences != s * m) throw bad;

  DegreeSequence out;
  for (int j = m; j >= 1; --j) out.insert(out.end(), static_cast<std::size_t>(d[static_cast<std::size_t>(j)]), j);
  return out;
}

/// Proper colorings with colors from [t], via p_lambda -> t^{len lambda}.
inline Coeff chromatic_polynomial_hypergraph(const Hypergraph& h, std::int64_t t, bool allow_large = false) {
  if (t < 0) throw invalid_input("t must be nonnegative");
  return eval_principal(csf(h, allow_large), t);
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace detail {

// Color refinement on the disjoint union of the two incidence graphs, with
// individualization and backtracking when refinement stalls.
class IsoSearch {
public:
  IsoSearch(const Hypergraph& a, const Hypergraph& b) : a_(a), b_(b) {
    n_ = a.size();
    ma_ = static_cast<int>(a.num_edges());
    const int total = 2 * (n_ + ma_);
    adj_.resize(static_cast<std::size_t>(total));
    add_side(a, 0);
    add_side(b, n_ + ma_);
  }

  bool run() {
    std::vector<int> color(adj_.size(), 0);
    for (int i = 0; i < ma_; ++i) {
      color[static_cast<std::size_t>(n_ + i)] = 1;
      color[static_cast<std::size_t>(2 * n_ + ma_ + i)] = 1;
    }
    return search(std::move(color));
  }

private:
  void add_side(const Hypergraph& h, int offset) {
    int node = offset + n_;
    for (const auto& e : h.edges()) {
      for (int v : e) {
        adj_[static_cast<std::size_t>(offset + v - 1)].push_back(node);
        adj_[static_cast<std::size_t>(node)].push_back(offset + v - 1);
      }
      ++node;
    }
  }

  bool on_a(int node) const { return node < n_ + ma_; }
  bool is_vertex(int node) const { return node < n_ || (node >= n_ + ma_ && node < 2 * n_ + ma_); }

  void refine(std::vector<int>& color) const {
    std::size_t classes = 0;
    for (;;) {
      std::map<std::pair<int, std::vector<int>>, int> ids;
      std::vector<std::pair<int, std::vector<int>>> sig(color.size());
      for (std::size_t u = 0; u < color.size(); ++u) {
        std::vector<int> nb;
        for (int w : adj_[u]) nb.push_back(color[static_cast<std::size_t>(w)]);
        std::sort(nb.begin(), nb.end());
        sig[u] = {color[u], std::move(nb)};
        ids.emplace(sig[u], 0);
      }
      int next = 0;
      for (auto& [key, id] : ids) id = next++;
      for (std::size_t u = 0; u < color.size(); ++u) color[u] = ids[sig[u]];
      if (ids.size() == classes) return;
      classes = ids.size();
    }
  }

  bool balanced(const std::vector<int>& color) const {
    std::map<int, int> diff;
    for (std::size_t u = 0; u < color.size(); ++u) diff[color[u]] += on_a(static_cast<int>(u)) ? 1 : -1;
    return std::all_of(diff.begin(), diff.end(), [](const auto& kv) { return kv.second == 0; });
  }

  bool search(std::vector<int> color) const {
    refine(color);
    if (!balanced(color)) return false;
    std::map<int, std::vector<int>> a_cells, b_cells;
    for (int u = 0; u < static_cast<int>(color.size()); ++u) {
      if (!is_vertex(u)) continue;
      (on_a(u) ? a_cells : b_cells)[color[static_cast<std::size_t>(u)]].push_back(u);
    }
    const std::vector<int>* pick = nullptr;
    int pick_color = 0;
    for (const auto& [c, cell] : a_cells)
      if (cell.size() > 1 && (!pick || cell.size() < pick->size())) {
        pick = &cell;
        pick_color = c;
      }
    if (!pick) return verify(a_cells, b_cells);
    const int v = pick->front();
    const int fresh = *std::max_element(color.begin(), color.end()) + 1;
    for (int w : b_cells[pick_color]) {
      auto trial = color;
      trial[static_cast<std::size_t>(v)] = fresh;
      trial[static_cast<std::size_t>(w)] = fresh;
      if (search(std::move(trial))) return true;
    }
    return false;
  }

  bool verify(const std::map<int, std::vector<int>>& a_cells, std::map<int, std::vector<int>>& b_cells) const {
    std::vector<int> image(static_cast<std::size_t>(n_));
    for (const auto& [c, cell] : a_cells) image[static_cast<std::size_t>(cell.front())] = b_cells[c].front() - (n_ + ma_) + 1;
    for (const auto& e : a_.edges()) {
      Hyperedge img;
      for (int v : e) img.push_back(image[static_cast<std::size_t>(v - 1)]);
      std::sort(img.begin(), img.end());
      if (!std::binary_search(b_.edges().begin(), b_.edges().end(), img)) return false;
    }
    return true;
  }

  const Hypergraph& a_;
  const Hypergraph& b_;
  int n_ = 0;
  int ma_ = 0;
  std::vector<std::vector<int>> adj_;
};

inline std::vector<int> edge_sizes(const Hypergraph& h) {
  std::vector<int> sizes;
  for (const auto& e : h.edges()) sizes.push_back(static_cast<int>(e.size()));
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

}  // namespace detail

/// A vertex bijection carrying the hyperedges of a onto those of b exists.
inline bool is_isomorphic(const Hypergraph& a, const Hypergraph& b) {
  if (a.size() != b.size() || a.num_edges() != b.num_edges()) return false;
  if (detail::edge_sizes(a) != detail::edge_sizes(b)) return false;
  if (degree_sequence(a) != degree_sequence(b)) return false;
  return detail::IsoSearch(a, b).run();
}

// ---------------------------------------------------------------------------
// Enumeration

/// One representative per isomorphism class of s-uniform hypertrees on [n],
/// grown by attaching a hyperedge with s-1 new vertices at an existing vertex.
inline std::vector<Hypergraph> enumerate_hypertrees(int n, int s, bool allow_large = false) {
  if (s < 2 || n < 1) throw invalid_input("enumerate_hypertrees needs s >= 2 and n >= 1");
  if ((n - 1) % (s - 1) != 0) throw invalid_input("n - 1 must be divisible by s - 1");
  const int m = (n - 1) / (s - 1);
  if (m > kHypertreeEdgeCap && !allow_large)
    throw cap_exceeded("hypertree enumeration capped at " + std::to_string(kHypertreeEdgeCap) + " hyperedges");
  std::vector<Hypergraph> level{Hypergraph(1)};
  for (int k = 1; k <= m; ++k) {
    const int size = 1 + (s - 1) * k;
    std::map<DegreeSequence, std::vector<Hypergraph>> buckets;
    std::vector<Hypergraph> next;
    for (const auto& h : level)
      for (int v = 1; v <= h.size(); ++v) {
        auto edges = h.edges();
        Hyperedge e{v};
        for (int w = h.size() + 1; w <= size; ++w) e.push_back(w);
        edges.push_back(std::move(e));
        Hypergraph grown(size, std::move(edges));
        auto& bucket = buckets[degree_sequence(grown)];
        if (std::none_of(bucket.begin(), bucket.end(), [&](const Hypergraph& o) { return is_isomorphic(o, grown); })) {
          bucket.push_back(grown);
          next.push_back(std::move(grown));
        }
      }
    level = std::move(next);
  }
  return level;
}

struct CollisionReport {
  std::vector<std::pair<int, std::size_t>> classes;  // (n, number of classes)
  std::vector<std::pair<Hypergraph, Hypergraph>> collisions;
};

/// Groups the s-uniform hypertree classes on up to max_n vertices by csf and
/// reports every non-isomorphic pair sharing a csf.
inline CollisionReport search_collisions(int s, int max_n, bool allow_large = false) {
  if (s < 2 || max_n < 1) throw invalid_input("search_collisions needs s >= 2 and max_n >= 1");
  CollisionReport rep;
  for (int n = 1; n <= max_n; ++n) {
    if ((n - 1) % (s - 1) != 0) continue;
    const auto trees = enumerate_hypertrees(n, s, allow_large);
    rep.classes.emplace_back(n, trees.size());
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < trees.size(); ++i) groups[to_string(csf(trees[i], allow_large))].push_back(i);
    for (const auto& [key, idx] : groups)
      for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j)
          if (!is_isomorphic(trees[idx[i]], trees[idx[j]])) rep.collisions.emplace_back(trees[idx[i]], trees[idx[j]]);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Built-in examples: four 3-uniform hypertrees on 21 vertices, pairwise
// non-isomorphic within {H1, H2} and {H3, H4} but sharing a csf.  The source
// lists use vertices 0..20; they are shifted to 1..21 here.

inline std::array<Hypergraph, 4> builtin_examples() {
  using List = std::vector<std::array<int, 3>>;
  const std::array<List, 4> lists{
      List{{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {0, 7, 8}, {2, 9, 10}, {1, 11, 12}, {9, 13, 14}, {16, 3, 15}, {17, 18, 7}, {19, 20, 13}},
      List{{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {0, 7, 8}, {2, 9, 10}, {1, 11, 12}, {9, 13, 14}, {16, 3, 15}, {17, 18, 5}, {19, 20, 15}},
      List{{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {0, 7, 8}, {5, 9, 10}, {5, 11, 12}, {0, 13, 14}, {16, 2, 15}, {1, 17, 18}, {19, 20, 15}},
      List{{0, 1, 2}, {0, 3, 4}, {1, 5, 6}, {0, 7, 8}, {2, 9, 10}, {1, 11, 12}, {0, 13, 14}, {16, 9, 15}, {17, 18, 9}, {3, 19, 20}},
  };
  std::array<Hypergraph, 4> out;
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Hyperedge> es;
    for (const auto& t : lists[i]) es.push_back({t[0] + 1, t[1] + 1, t[2] + 1});
    out[i] = Hypergraph(21, std::move(es));
  }
  return out;
}

// ---------------------------------------------------------------------------
// File format: `hypergraph <n>` then one `h v1 v2 ...` line per hyperedge.

inline Hypergraph parse_hypergraph(std::string_view text) {
  const auto lines = detail::content_lines(text);
  const int n = detail::parse_header(lines, "hypergraph");
  std::vector<Hyperedge> es;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i].second);
    std::string kw, tok;
    ls >> kw;
    if (kw != "h") throw parse_error("expected 'h'", lines[i].first);
    Hyperedge e;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        e.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("junk");
      } catch (const std::logic_error&) {
        throw parse_error("bad vertex '" + tok + "'", lines[i].first);
      }
    }
    es.push_back(std::move(e));
  }
  try {
    return Hypergraph(n, std::move(es));
  } catch (const invalid_input& err) {
    throw parse_error(err.what(), lines.front().first);
  }
}

inline std::string to_string(const Hypergraph& h) {
  std::string s = "hypergraph " + std::to_string(h.size()) + "\n";
  for (const auto& e : h.edges()) {
    s += "h";
    for (int v : e) s += " " + std::to_string(v);
    s += "\n";
  }
  return s;
}

}  // namespace plurichrome

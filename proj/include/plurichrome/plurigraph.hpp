#pragma once

// Plurigraphs: a vertex set [n] with a multiset of pluriedges, each pluriedge
// a nonempty multigraph on [n].  A coloring is proper when every pluriedge has
// a non-monochromatic edge.  Three routes to the chromatic nc-symmetric
// function Y_G live here: enumeration over set partitions, the subset
// expansion in the powersum basis, and deletion-contraction.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plurichrome/error.hpp"
#include "plurichrome/ncalg.hpp"
#include "plurichrome/setpart.hpp"

namespace plurichrome {

/// Undirected edge {u, v}, stored with u <= v; u == v is a loop.
using Edge = std::pair<int, int>;

/// A total map [n] -> positive integers; coloring[v - 1] is the color of v.
using Coloring = std::vector<int>;

inline constexpr int kEnumVertexCap = 10;
inline constexpr int kPowersumPluriedgeCap = 20;

class Pluriedge {
public:
  Pluriedge() = default;
  Pluriedge(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (edges_.empty()) throw invalid_input("a pluriedge needs at least one edge");
    for (auto& [u, v] : edges_) {
      if (u < 1 || v < 1 || u > n_ || v > n_) throw invalid_input("edge endpoint outside [n]");
      if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
  }

  int size() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  /// Every edge is a loop, so no coloring can be proper.
  bool is_pluriloop() const {
    return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.first == e.second; });
  }

  auto operator<=>(const Pluriedge&) const = default;
  bool operator==(const Pluriedge&) const = default;

private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

/// Pluriedges are kept sorted; an index into pluriedges() is a stable handle.
class Plurigraph {
public:
  Plurigraph() = default;
  explicit Plurigraph(int n, std::vector<Pluriedge> pluriedges = {}) : n_(n), pluriedges_(std::move(pluriedges)) {
    if (n_ < 1) throw invalid_input("a plurigraph needs at least one vertex");
    for (const auto& e : pluriedges_)
      if (e.size() != n_) throw invalid_input("pluriedge vertex count differs from plurigraph");
    std::sort(pluriedges_.begin(), pluriedges_.end());
  }

  /// Convenience: one edge list per pluriedge.
  static Plurigraph from_edge_lists(int n, const std::vector<std::vector<Edge>>& lists) {
    std::vector<Pluriedge> es;
    for (const auto& l : lists) es.emplace_back(n, l);
    return Plurigraph(n, std::move(es));
  }

  int size() const noexcept { return n_; }
  const std::vector<Pluriedge>& pluriedges() const noexcept { return pluriedges_; }
  std::size_t num_pluriedges() const noexcept { return pluriedges_.size(); }

  bool has_pluriloop() const {
    return std::any_of(pluriedges_.begin(), pluriedges_.end(), [](const Pluriedge& e) { return e.is_pluriloop(); });
  }

  bool operator==(const Plurigraph&) const = default;

private:
  int n_ = 0;
  std::vector<Pluriedge> pluriedges_;
};

// ---------------------------------------------------------------------------
// Coloring and components

inline void check_coloring(const Coloring& f, int n) {
  if (static_cast<int>(f.size()) != n) throw invalid_input("partial coloring");
  for (int c : f)
    if (c < 1) throw invalid_input("colors must be positive integers");
}

inline bool is_proper(const Plurigraph& g, const Coloring& f) {
  check_coloring(f, g.size());
  for (const auto& e : g.pluriedges()) {
    bool ok = false;
    for (auto [u, v] : e.edges())
      if (f[static_cast<std::size_t>(u - 1)] != f[static_cast<std::size_t>(v - 1)]) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

/// Connected components of the union of the given pluriedges.
inline SetPartition components_of_subset(const Plurigraph& g, const std::vector<std::size_t>& subset) {
  detail::UnionFind uf(g.size());
  for (auto idx : subset) {
    if (idx >= g.num_pluriedges()) throw invalid_input("invalid pluriedge handle");
    for (auto [u, v] : g.pluriedges()[idx].edges()) uf.unite(u - 1, v - 1);
  }
  return SetPartition::from_labels(uf.labels());
}

inline SetPartition component_partition(const Pluriedge& e) {
  detail::UnionFind uf(e.size());
  for (auto [u, v] : e.edges()) uf.unite(u - 1, v - 1);
  return SetPartition::from_labels(uf.labels());
}

// ---------------------------------------------------------------------------
// Deletion, relabeling, contraction

inline Plurigraph delete_pluriedge(const Plurigraph& g, std::size_t idx) {
  if (idx >= g.num_pluriedges()) throw invalid_input("invalid pluriedge handle");
  auto es = g.pluriedges();
  es.erase(es.begin() + static_cast<std::ptrdiff_t>(idx));
  return Plurigraph(g.size(), std::move(es));
}

/// The plurigraph with every vertex v renamed d(v).
inline Plurigraph relabel(const Plurigraph& g, const Permutation& d) {
  check_permutation(d, g.size());
  std::vector<Pluriedge> es;
  for (const auto& e : g.pluriedges()) {
    std::vector<Edge> edges;
    for (auto [u, v] : e.edges()) edges.emplace_back(d[static_cast<std::size_t>(u - 1)], d[static_cast<std::size_t>(v - 1)]);
    es.emplace_back(g.size(), std::move(edges));
  }
  return Plurigraph(g.size(), std::move(es));
}

/// The contraction-ready composition of e's components, if one exists: blocks
/// in decreasing order (every element of an earlier block exceeds every
/// element of a later one) with all non-singleton blocks first.
inline std::optional<SetComposition> contraction_ready_composition(const Pluriedge& e) {
  auto blocks = component_partition(e).blocks();
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) { return a.back() > b.back(); });
  for (std::size_t i = 0; i + 1 < blocks.size(); ++i) {
    if (blocks[i].front() < blocks[i + 1].back()) return std::nullopt;
    if (blocks[i].size() == 1 && blocks[i + 1].size() > 1) return std::nullopt;
  }
  return SetComposition(e.size(), std::move(blocks));
}

struct Relabeled {
  Plurigraph graph;
  Permutation delta;    ///< graph == relabel(original, delta)
  std::size_t index{};  ///< handle of the chosen pluriedge inside graph
};

/// Relabels g so that pluriedge idx becomes contraction-ready.  Blocks are
/// listed non-singletons first by descending minimum, then singletons
/// descending; the i-th listed block takes the i-th highest contiguous range
/// of labels, keeping relative order inside a block.  An already-ready
/// pluriedge gets the identity.
inline Relabeled make_contraction_ready(const Plurigraph& g, std::size_t idx) {
  if (idx >= g.num_pluriedges()) throw invalid_input("invalid pluriedge handle");
  const Pluriedge& target = g.pluriedges()[idx];
  auto blocks = component_partition(target).blocks();
  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    const bool sa = a.size() == 1, sb = b.size() == 1;
    if (sa != sb) return !sa;
    return a.front() > b.front();
  });
  Permutation delta(static_cast<std::size_t>(g.size()));
  int next = g.size();
  for (const auto& b : blocks) {
    int label = next - static_cast<int>(b.size()) + 1;
    for (int v : b) delta[static_cast<std::size_t>(v - 1)] = label++;
    next -= static_cast<int>(b.size());
  }
  Plurigraph h = relabel(g, delta);
  // Locate the image of the target among h's sorted pluriedges.
  std::vector<Edge> image;
  for (auto [u, v] : target.edges()) image.emplace_back(delta[static_cast<std::size_t>(u - 1)], delta[static_cast<std::size_t>(v - 1)]);
  const Pluriedge mapped(g.size(), std::move(image));
  const auto index = static_cast<std::size_t>(std::lower_bound(h.pluriedges().begin(), h.pluriedges().end(), mapped) - h.pluriedges().begin());
  return {std::move(h), std::move(delta), index};
}

struct Contraction {
  Plurigraph graph;            ///< G / e on l vertices
  std::vector<int> sequence;   ///< r_i = |B_i| - 1 for the non-singleton blocks
  SetComposition composition;  ///< the contraction-ready composition of e
};

/// Contracts the contraction-ready pluriedge idx: block B_i becomes vertex
/// l - i + 1; loops and parallel edges produced by identification are kept.
inline Contraction contract(const Plurigraph& g, std::size_t idx) {
  if (idx >= g.num_pluriedges()) throw invalid_input("invalid pluriedge handle");
  auto phi = contraction_ready_composition(g.pluriedges()[idx]);
  if (!phi) throw invalid_input("pluriedge is not contraction-ready; relabel with make_contraction_ready first");
  const int l = static_cast<int>(phi->num_blocks());
  std::vector<int> image(static_cast<std::size_t>(g.size()) + 1);
  std::vector<int> seq;
  for (int i = 1; i <= l; ++i) {
    const auto& b = phi->blocks()[static_cast<std::size_t>(i - 1)];
    for (int v : b) image[static_cast<std::size_t>(v)] = l - i + 1;
    if (b.size() > 1) seq.push_back(static_cast<int>(b.size()) - 1);
  }
  std::vector<Pluriedge> es;
  for (std::size_t j = 0; j < g.num_pluriedges(); ++j) {
    if (j == idx) continue;
    std::vector<Edge> edges;
    for (auto [u, v] : g.pluriedges()[j].edges()) edges.emplace_back(image[static_cast<std::size_t>(u)], image[static_cast<std::size_t>(v)]);
    es.emplace_back(l, std::move(edges));
  }
  return {Plurigraph(l, std::move(es)), std::move(seq), std::move(*phi)};
}

// ---------------------------------------------------------------------------
// Chromatic nc-symmetric function


namespace detail {

inline Coloring pattern_coloring(const SetPartition& pi) {
  Coloring f = pi.block_index();
  for (int& c : f) ++c;
  return f;
}

// Sum of (-1)^{|A|} over sub-multisets A of `groups`, keyed by the component
// partition of each union.  groups[i] lists the vertex pairs merged by the i-th
// member.  Accumulates in int64 (at most 2^|groups| terms).
inline std::map<SetPartition, std::int64_t> signed_subset_sum(int n, const std::vector<std::vector<Edge>>& groups) {
  std::map<std::vector<int>, std::int64_t> acc;
  std::vector<int> comp(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comp[static_cast<std::size_t>(i)] = i;
  auto rec = [&](auto&& self, std::size_t i, std::vector<int>& labels, std::int64_t sign) -> void {
    if (i == groups.size()) {
      std::vector<int> rgs(labels.size());
      std::vector<int> seen(labels.size(), -1);
      int next = 0;
      for (std::size_t v = 0; v < labels.size(); ++v) {
        auto& slot = seen[static_cast<std::size_t>(labels[v])];
        if (slot < 0) slot = next++;
        rgs[v] = slot;
      }
      acc[rgs] += sign;
      return;
    }
    self(self, i + 1, labels, sign);
    std::vector<int> merged = labels;
    for (auto [u, v] : groups[i]) {
      const int a = merged[static_cast<std::size_t>(u - 1)], b = merged[static_cast<std::size_t>(v - 1)];
      if (a == b) continue;
      for (int& x : merged)
        if (x == b) x = a;
    }
    self(self, i + 1, merged, -sign);
  };
  rec(rec, 0, comp, 1);
  std::map<SetPartition, std::int64_t> out;
  for (const auto& [rgs, c] : acc)
    if (c != 0) out.emplace(SetPartition::from_labels(rgs), c);
  return out;
}

}  // namespace detail

/// Y_G in the monomial basis: m_pi appears iff giving the blocks of pi
/// distinct colors is a proper coloring.
inline NCSymExpr chromatic_ncsym_enum(const Plurigraph& g, bool allow_large = false) {
  if (g.size() > kEnumVertexCap && !allow_large)
    throw cap_exceeded("enumeration capped at " + std::to_string(kEnumVertexCap) + " vertices");
  NCSymExpr y(g.size(), NCBasis::monomial);
  for_each_set_partition(
      g.size(),
      [&](const SetPartition& pi) {
        if (is_proper(g, detail::pattern_coloring(pi))) y.add(pi, 1);
      },
      true);
  return y;
}

/// Y_G = sum over sub-multisets A of the pluriedges of (-1)^{|A|} p_{pi(A)}.
inline NCSymExpr chromatic_ncsym_powersum(const Plurigraph& g, bool allow_large = false) {
  if (g.num_pluriedges() > static_cast<std::size_t>(kPowersumPluriedgeCap) && !allow_large)
    throw cap_exceeded("powersum expansion capped at " + std::to_string(kPowersumPluriedgeCap) + " pluriedges");
  std::vector<std::vector<Edge>> groups;
  for (const auto& e : g.pluriedges()) groups.push_back(e.edges());
  NCSymExpr y(g.size(), NCBasis::powersum);
  for (const auto& [pi, c] : detail::signed_subset_sum(g.size(), groups)) y.add(pi, c);
  return y;
}

/// Y_G by deletion-contraction on the last pluriedge, relabeling to make it
/// contraction-ready and undoing the relabeling on the result.  Powersum basis.
inline NCSymExpr chromatic_ncsym_delcon(const Plurigraph& g) {
  if (g.num_pluriedges() == 0) return NCSymExpr::p(SetPartition::discrete(g.size()));
  if (g.has_pluriloop()) return NCSymExpr(g.size(), NCBasis::powersum);
  const auto ready = make_contraction_ready(g, g.num_pluriedges() - 1);
  const auto con = contract(ready.graph, ready.index);
  NCSymExpr y = chromatic_ncsym_delcon(delete_pluriedge(ready.graph, ready.index));
  y -= induct(chromatic_ncsym_delcon(con.graph), con.sequence);
  return permute(y, inverse(ready.delta));
}

/// Number of proper colorings with colors from [k].
inline Coeff chromatic_polynomial(const Plurigraph& g, std::int64_t k) {
  if (k < 0) throw invalid_input("k must be nonnegative");
  return eval_principal(chromatic_ncsym_powersum(g), k);
}

// ---------------------------------------------------------------------------
// Simple plurigraphs and reconstruction

/// Every component of every pluriedge is a complete simple graph, and no
/// pluriedge's components all sit inside another pluriedge's components.
/// Identical pluriedges in the multiset count as comparable.
inline bool is_simple_plurigraph(const Plurigraph& g) {
  std::vector<SetPartition> parts;
  for (const auto& e : g.pluriedges()) {
    std::set<Edge> distinct;
    for (auto [u, v] : e.edges()) {
      if (u == v) return false;
      distinct.emplace(u, v);
    }
    const auto pi = component_partition(e);
    std::size_t needed = 0;
    for (const auto& b : pi.blocks()) needed += b.size() * (b.size() - 1) / 2;
    if (distinct.size() != needed) return false;
    parts.push_back(pi);
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (i != j && refines(parts[i], parts[j])) return false;
  return true;
}

/// Refinement-minimal partitions other than the bottom with nonzero
/// coefficient; for a simple plurigraph these are its pluriedges' component
/// partitions.
inline std::set<SetPartition> reconstruct_simple(const NCSymExpr& y) {
  if (y.basis() != NCBasis::powersum) throw invalid_input("reconstruct_simple expects a powersum-basis expression");
  std::vector<SetPartition> support;
  for (const auto& [pi, c] : y.terms().terms())
    if (!pi.is_discrete()) support.push_back(pi);
  std::set<SetPartition> minimal;
  for (const auto& a : support) {
    bool is_min = true;
    for (const auto& b : support)
      if (!(a == b) && refines(b, a)) {
        is_min = false;
        break;
      }
    if (is_min) minimal.insert(a);
  }
  return minimal;
}

/// Y_A = sum over subsets A' of the antichain of (-1)^{|A'|} p_{join of A'}.
inline NCSymExpr y_from_antichain(int n, const std::vector<SetPartition>& antichain) {
  std::vector<std::vector<Edge>> groups;
  for (const auto& pi : antichain) {
    if (pi.size() != n) throw invalid_input("ground-set mismatch");
    std::vector<Edge> merges;
    for (const auto& b : pi.blocks())
      for (int e : b) merges.emplace_back(b.front(), e);
    groups.push_back(std::move(merges));
  }
  NCSymExpr y(n, NCBasis::powersum);
  for (const auto& [pi, c] : detail::signed_subset_sum(n, groups)) y.add(pi, c);
  return y;
}

// ---------------------------------------------------------------------------
// File format: `plurigraph <n>` then one `edge u1-v1 u2-v2 ...` line per pluriedge.

namespace detail {

// Lines with `#` comments stripped; blank lines skipped.  Pairs are (line number, text).
inline std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.emplace_back(no, line);
  }
  return out;
}

inline int parse_header(const std::vector<std::pair<std::size_t, std::string>>& lines, std::string_view keyword) {
  if (lines.empty()) throw parse_error("missing '" + std::string(keyword) + " <n>' header", 1);
  std::istringstream hs(lines.front().second);
  std::string kw;
  int n = 0;
  std::string extra;
  if (!(hs >> kw >> n) || kw != keyword || (hs >> extra)) throw parse_error("expected '" + std::string(keyword) + " <n>'", lines.front().first);
  if (n < 1) throw parse_error("vertex count must be positive", lines.front().first);
  return n;
}

}  // namespace detail

inline Plurigraph parse_plurigraph(std::string_view text) {
  const auto lines = detail::content_lines(text);
  const int n = detail::parse_header(lines, "plurigraph");
  std::vector<Pluriedge> es;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream ls(lines[i].second);
    std::string kw, tok;
    ls >> kw;
    if (kw != "edge") throw parse_error("expected 'edge'", lines[i].first);
    std::vector<Edge> edges;
    while (ls >> tok) {
      const auto dash = tok.find('-');
      try {
        if (dash == std::string::npos) throw std::invalid_argument("no dash");
        std::size_t used_u = 0, used_v = 0;
        const int u = std::stoi(tok.substr(0, dash), &used_u);
        const int v = std::stoi(tok.substr(dash + 1), &used_v);
        if (used_u != dash || used_v != tok.size() - dash - 1) throw std::invalid_argument("junk");
        edges.emplace_back(u, v);
      } catch (const std::logic_error&) {
        throw parse_error("bad edge '" + tok + "'", lines[i].first);
      }
    }
    try {
      es.emplace_back(n, std::move(edges));
    } catch (const invalid_input& err) {
      throw parse_error(err.what(), lines[i].first);
    }
  }
  return Plurigraph(n, std::move(es));
}

inline std::string to_string(const Plurigraph& g) {
  std::string s = "plurigraph " + std::to_string(g.size()) + "\n";
  for (const auto& e : g.pluriedges()) {
    s += "edge";
    for (auto [u, v] : e.edges()) s += " " + std::to_string(u) + "-" + std::to_string(v);
    s += "\n";
  }
  return s;
}

}  // namespace plurichrome

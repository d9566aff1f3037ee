#pragma once

// Scheduling problems: boolean formulas over atoms (x_i <= x_j) with the
// derived atoms <, =, != kept as macro nodes.  Solutions are set compositions;
// the scheduling nc-quasisymmetric function sums M over them.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plurichrome/error.hpp"
#include "plurichrome/ncalg.hpp"
#include "plurichrome/plurigraph.hpp"
#include "plurichrome/setpart.hpp"

namespace plurichrome {

enum class NodeKind { le, lt, eq, ne, negation, conjunction, disjunction, constant_true, constant_false };

/// A formula tree.  Atoms carry i and j; connectives carry children.
struct Node {
  NodeKind kind = NodeKind::constant_true;
  int i = 0;
  int j = 0;
  std::vector<Node> children;

  static Node le(int i, int j) { return {NodeKind::le, i, j, {}}; }
  static Node lt(int i, int j) { return {NodeKind::lt, i, j, {}}; }
  static Node eq(int i, int j) { return {NodeKind::eq, i, j, {}}; }
  static Node ne(int i, int j) { return {NodeKind::ne, i, j, {}}; }
  static Node truth() { return {NodeKind::constant_true, 0, 0, {}}; }
  static Node falsity() { return {NodeKind::constant_false, 0, 0, {}}; }
  static Node negate(Node child) { return {NodeKind::negation, 0, 0, {std::move(child)}}; }
  static Node all_of(std::vector<Node> children) { return {NodeKind::conjunction, 0, 0, std::move(children)}; }
  static Node any_of(std::vector<Node> children) { return {NodeKind::disjunction, 0, 0, std::move(children)}; }

  bool is_atom() const noexcept { return kind == NodeKind::le || kind == NodeKind::lt || kind == NodeKind::eq || kind == NodeKind::ne; }

  bool operator==(const Node&) const = default;
};

namespace detail {

inline void check_indices(const Node& node, int n) {
  if (node.is_atom()) {
    if (node.i < 1 || node.j < 1 || node.i > n || node.j > n)
      throw invalid_input("variable index outside [" + std::to_string(n) + "]");
    return;
  }
  for (const auto& c : node.children) check_indices(c, n);
}

}  // namespace detail

/// A scheduling problem on n elements.
class Formula {
public:
  Formula(int n, Node root) : n_(n), root_(std::move(root)) {
    if (n_ < 1) throw invalid_input("a scheduling problem needs at least one element");
    detail::check_indices(root_, n_);
  }

  int size() const noexcept { return n_; }
  const Node& root() const noexcept { return root_; }

  bool operator==(const Formula&) const = default;

private:
  int n_;
  Node root_;
};

/// Rewrites macro atoms into the base language of <= atoms, negation and conjunction.
inline Node expand_macros(const Node& node) {
  switch (node.kind) {
    case NodeKind::lt:
      return Node::negate(Node::le(node.j, node.i));
    case NodeKind::eq:
      return Node::all_of({Node::le(node.i, node.j), Node::le(node.j, node.i)});
    case NodeKind::ne:
      return Node::negate(Node::all_of({Node::le(node.i, node.j), Node::le(node.j, node.i)}));
    default: {
      Node out = node;
      for (auto& c : out.children) c = expand_macros(c);
      return out;
    }
  }
}

inline bool evaluate(const Node& node, const Coloring& f) {
  auto x = [&](int v) { return f[static_cast<std::size_t>(v - 1)]; };
  switch (node.kind) {
    case NodeKind::le: return x(node.i) <= x(node.j);
    case NodeKind::lt: return x(node.i) < x(node.j);
    case NodeKind::eq: return x(node.i) == x(node.j);
    case NodeKind::ne: return x(node.i) != x(node.j);
    case NodeKind::negation: return !evaluate(node.children.front(), f);
    case NodeKind::conjunction:
      return std::all_of(node.children.begin(), node.children.end(), [&](const Node& c) { return evaluate(c, f); });
    case NodeKind::disjunction:
      return std::any_of(node.children.begin(), node.children.end(), [&](const Node& c) { return evaluate(c, f); });
    case NodeKind::constant_true: return true;
    case NodeKind::constant_false: return false;
  }
  return false;
}

inline bool evaluate(const Formula& s, const Coloring& f) {
  check_coloring(f, s.size());
  return evaluate(s.root(), f);
}

/// Whether the composition solves s: x_i is the position of i's block.
inline bool solves(const Formula& s, const SetComposition& f) {
  if (f.size() != s.size()) throw invalid_input("composition size differs from the scheduling problem");
  Coloring c = f.block_index();
  for (int& x : c) ++x;
  return evaluate(s.root(), c);
}

/// Sum of M_F over the set compositions F solving s.
inline NCQSymExpr scheduling_ncqsym(const Formula& s, bool allow_large = false) {
  NCQSymExpr out(s.size());
  for_each_set_composition(
      s.size(),
      [&](const SetComposition& f) {
        if (solves(s, f)) out.add(f, 1);
      },
      allow_large);
  return out;
}

// ---------------------------------------------------------------------------
// Edge-like and graph-like formulas

using IndexPair = std::pair<int, int>;

/// The pairs of a disjunction of nonequalities, or nullopt.
inline std::optional<std::vector<IndexPair>> is_edge_like(const Node& c) {
  if (c.kind == NodeKind::ne) return std::vector<IndexPair>{{c.i, c.j}};
  if (c.kind != NodeKind::disjunction || c.children.empty()) return std::nullopt;
  std::vector<IndexPair> pairs;
  for (const auto& d : c.children) {
    if (d.kind != NodeKind::ne) return std::nullopt;
    pairs.emplace_back(d.i, d.j);
  }
  return pairs;
}

/// One pair list per edge-like clause of a conjunction, or nullopt.  TRUE is
/// the empty conjunction.
inline std::optional<std::vector<std::vector<IndexPair>>> is_graph_like(const Node& s) {
  std::vector<std::vector<IndexPair>> clauses;
  if (s.kind == NodeKind::constant_true) return clauses;
  if (s.kind != NodeKind::conjunction) {
    auto c = is_edge_like(s);
    if (!c) return std::nullopt;
    clauses.push_back(std::move(*c));
    return clauses;
  }
  for (const auto& child : s.children) {
    auto c = is_edge_like(child);
    if (!c) return std::nullopt;
    clauses.push_back(std::move(*c));
  }
  return clauses;
}

inline Plurigraph to_plurigraph(const Formula& s) {
  auto clauses = is_graph_like(s.root());
  if (!clauses) throw invalid_input("formula is not graph-like");
  return Plurigraph::from_edge_lists(s.size(), *clauses);
}

/// The scheduling problem of properly coloring g.
inline Formula from_plurigraph(const Plurigraph& g) {
  std::vector<Node> clauses;
  for (const auto& e : g.pluriedges()) {
    std::vector<Node> atoms;
    for (auto [u, v] : e.edges()) atoms.push_back(Node::ne(u, v));
    clauses.push_back(atoms.size() == 1 ? std::move(atoms.front()) : Node::any_of(std::move(atoms)));
  }
  if (clauses.empty()) return Formula(g.size(), Node::truth());
  if (clauses.size() == 1) return Formula(g.size(), std::move(clauses.front()));
  return Formula(g.size(), Node::all_of(std::move(clauses)));
}

/// Equivalence classes of the variables of an edge-like clause, where i ~ j
/// when (x_i = x_j) appears in the negated clause.  Sorted by minimum.
inline std::vector<Block> sim_classes(const Node& c, int n) {
  auto pairs = is_edge_like(c);
  if (!pairs) throw invalid_input("clause is not edge-like");
  detail::UnionFind uf(n);
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  for (auto [i, j] : *pairs) {
    if (i < 1 || j < 1 || i > n || j > n) throw invalid_input("variable index outside [n]");
    used[static_cast<std::size_t>(i)] = used[static_cast<std::size_t>(j)] = 1;
    uf.unite(i - 1, j - 1);
  }
  const auto label = uf.labels();
  std::vector<Block> classes;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int v = 1; v <= n; ++v) {
    if (!used[static_cast<std::size_t>(v)]) continue;
    auto& s = slot[static_cast<std::size_t>(label[static_cast<std::size_t>(v - 1)])];
    if (s < 0) {
      s = static_cast<int>(classes.size());
      classes.emplace_back();
    }
    classes[static_cast<std::size_t>(s)].push_back(v);
  }
  return classes;
}

struct ContractibleClause {
  std::vector<Block> classes;  ///< O_1 > O_2 > ... > O_k
  std::vector<int> sequence;   ///< r_i = |O_i| - 1, zeros kept
};

/// Checks that c is edge-like, that its variables form a top interval of [n],
/// and that its classes can be ordered O_1 > O_2 > ... .
inline std::optional<ContractibleClause> is_contractible_clause(const Node& c, int n) {
  if (!is_edge_like(c)) return std::nullopt;
  auto classes = sim_classes(c, n);
  std::size_t count = 0;
  int low = n + 1;
  for (const auto& b : classes) {
    count += b.size();
    low = std::min(low, b.front());
  }
  if (static_cast<int>(count) != n - low + 1) return std::nullopt;
  std::sort(classes.begin(), classes.end(), [](const Block& a, const Block& b) { return a.back() > b.back(); });
  for (std::size_t i = 0; i + 1 < classes.size(); ++i)
    if (classes[i].front() < classes[i + 1].back()) return std::nullopt;
  ContractibleClause out{std::move(classes), {}};
  for (const auto& b : out.classes) out.sequence.push_back(static_cast<int>(b.size()) - 1);
  return out;
}

// ---------------------------------------------------------------------------
// Relabeling, contraction, simplification

/// Renames every variable x_i to x_{d(i)}.
inline Formula relabel(const Formula& s, const Permutation& d) {
  check_permutation(d, s.size());
  auto rec = [&](auto&& self, const Node& node) -> Node {
    Node out = node;
    if (out.is_atom()) {
      out.i = d[static_cast<std::size_t>(out.i - 1)];
      out.j = d[static_cast<std::size_t>(out.j - 1)];
    }
    for (auto& c : out.children) c = self(self, c);
    return out;
  };
  return Formula(s.size(), rec(rec, s.root()));
}

/// Constant folding: trivial atoms on a single variable, TRUE/FALSE
/// propagation, flattening of nested conjunctions and disjunctions, and
/// collapsing unary connectives.
inline Node simplify(const Node& node) {
  switch (node.kind) {
    case NodeKind::le:
    case NodeKind::eq:
      return node.i == node.j ? Node::truth() : node;
    case NodeKind::lt:
    case NodeKind::ne:
      return node.i == node.j ? Node::falsity() : node;
    case NodeKind::negation: {
      Node c = simplify(node.children.front());
      if (c.kind == NodeKind::constant_true) return Node::falsity();
      if (c.kind == NodeKind::constant_false) return Node::truth();
      return Node::negate(std::move(c));
    }
    case NodeKind::conjunction:
    case NodeKind::disjunction: {
      const bool conj = node.kind == NodeKind::conjunction;
      const NodeKind absorbing = conj ? NodeKind::constant_false : NodeKind::constant_true;
      const NodeKind neutral = conj ? NodeKind::constant_true : NodeKind::constant_false;
      std::vector<Node> kept;
      for (const auto& child : node.children) {
        Node c = simplify(child);
        if (c.kind == absorbing) return c;
        if (c.kind == neutral) continue;
        if (c.kind == node.kind) {
          for (auto& g : c.children) kept.push_back(std::move(g));
        } else {
          kept.push_back(std::move(c));
        }
      }
      if (kept.empty()) return Node{neutral, 0, 0, {}};
      if (kept.size() == 1) return std::move(kept.front());
      return Node{node.kind, 0, 0, std::move(kept)};
    }
    default:
      return node;
  }
}

/// The contraction of s along r: at step (r_i, t) the variables
/// x_{n-t-r_i} .. x_{n-t} are identified, then indices are standardized.
/// The result is simplified.
inline Formula contract_formula(const Formula& s, std::span<const int> r) {
  detail::check_sequence(r);
  Node root = s.root();
  int n = s.size();
  int t = 0;
  for (int step : r) {
    if (step + t >= n) throw invalid_input("contraction sequence too long");
    const auto map = contraction_step_map(n, step, t);
    auto rec = [&](auto&& self, Node& node) -> void {
      if (node.is_atom()) {
        node.i = map[static_cast<std::size_t>(node.i)];
        node.j = map[static_cast<std::size_t>(node.j)];
      }
      for (auto& c : node.children) self(self, c);
    };
    rec(rec, root);
    n -= step;
    ++t;
  }
  if (r.empty()) return s;
  return Formula(n, simplify(root));
}

/// Splits s = s' & c with c the last conjunct; s' is TRUE for a single conjunct.
inline std::pair<Formula, Node> split_last_conjunct(const Formula& s) {
  const Node& root = s.root();
  if (root.kind != NodeKind::conjunction || root.children.empty()) return {Formula(s.size(), Node::truth()), root};
  std::vector<Node> rest(root.children.begin(), root.children.end() - 1);
  Node head = rest.empty() ? Node::truth() : rest.size() == 1 ? rest.front() : Node::all_of(std::move(rest));
  return {Formula(s.size(), std::move(head)), root.children.back()};
}

/// One deletion-contraction step: S_{s' & c} = S_{s'} - (S_{s' down r}) up r.
/// The two smaller problems are solved by enumeration.
inline NCQSymExpr delcon_ncqsym(const Formula& s_prime, const Node& c, bool allow_large = false) {
  const auto cc = is_contractible_clause(c, s_prime.size());
  if (!cc) throw invalid_input("clause is not contractible; relabel the variables first");
  NCQSymExpr out = scheduling_ncqsym(s_prime, allow_large);
  out -= induct(scheduling_ncqsym(contract_formula(s_prime, cc->sequence), allow_large), cc->sequence);
  return out;
}

/// Relabeling that makes an edge-like clause contractible: classes with more
/// than one element first by descending minimum, then singletons descending,
/// each taking the highest free contiguous range; unused variables keep their
/// relative order at the bottom.
inline Permutation contractible_relabeling(const Node& c, int n) {
  auto classes = sim_classes(c, n);
  std::stable_sort(classes.begin(), classes.end(), [](const Block& a, const Block& b) {
    const bool sa = a.size() == 1, sb = b.size() == 1;
    if (sa != sb) return !sa;
    return a.front() > b.front();
  });
  Permutation d(static_cast<std::size_t>(n), 0);
  int next = n;
  for (const auto& b : classes) {
    int label = next - static_cast<int>(b.size()) + 1;
    for (int v : b) d[static_cast<std::size_t>(v - 1)] = label++;
    next -= static_cast<int>(b.size());
  }
  int low = 1;
  for (auto& x : d)
    if (x == 0) x = low++;
  return d;
}

/// S_s for a graph-like s by repeated deletion-contraction on the last
/// clause, relabeling as needed.  The empty conjunction is enumerated.
inline NCQSymExpr scheduling_ncqsym_delcon(const Formula& s, bool allow_large = false) {
  if (!is_graph_like(s.root()) && s.root().kind != NodeKind::constant_false) throw invalid_input("formula is not graph-like");
  if (s.size() > kSetCompositionCap && !allow_large)
    throw cap_exceeded("composition enumeration capped at n = " + std::to_string(kSetCompositionCap));
  auto rec = [&](auto&& self, const Formula& f) -> NCQSymExpr {
    if (f.root().kind == NodeKind::constant_false) return NCQSymExpr(f.size());
    if (f.root().kind == NodeKind::constant_true) return scheduling_ncqsym(f, true);
    const Permutation d = contractible_relabeling(split_last_conjunct(f).second, f.size());
    const Formula moved = relabel(f, d);
    auto [moved_rest, moved_clause] = split_last_conjunct(moved);
    const auto cc = is_contractible_clause(moved_clause, f.size());
    if (!cc) throw error("relabeling failed to produce a contractible clause");
    NCQSymExpr out = self(self, moved_rest);
    out -= induct(self(self, contract_formula(moved_rest, cc->sequence)), cc->sequence);
    return permute(out, inverse(d));
  };
  return rec(rec, s);
}

// ---------------------------------------------------------------------------
// Text: atoms `x<i> <op> x<j>` with op in <=, <, =, !=; connectives !, &, |;
// parentheses; TRUE and FALSE.  Precedence ! > & > |.

namespace detail {

class FormulaParser {
public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Node parse() {
    Node n = parse_or();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return n;
  }

private:
  [[noreturn]] void fail(const std::string& what) const { throw parse_error(what, pos_ + 1); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  Node parse_or() {
    std::vector<Node> parts{parse_and()};
    while (accept("|")) parts.push_back(parse_and());
    return combine(NodeKind::disjunction, std::move(parts));
  }

  Node parse_and() {
    std::vector<Node> parts{parse_unary()};
    while (accept("&")) parts.push_back(parse_unary());
    return combine(NodeKind::conjunction, std::move(parts));
  }

  static Node combine(NodeKind kind, std::vector<Node> parts) {
    if (parts.size() == 1) return std::move(parts.front());
    std::vector<Node> flat;
    for (auto& p : parts) {
      if (p.kind == kind) {
        for (auto& c : p.children) flat.push_back(std::move(c));
      } else {
        flat.push_back(std::move(p));
      }
    }
    return Node{kind, 0, 0, std::move(flat)};
  }

  Node parse_unary() {
    skip_space();
    if (accept("!")) return Node::negate(parse_unary());
    if (accept("(")) {
      Node inner = parse_or();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (accept("TRUE") || accept("true")) return Node::truth();
    if (accept("FALSE") || accept("false")) return Node::falsity();
    return parse_atom();
  }

  int parse_variable() {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != 'x') fail("expected a variable x<i>");
    ++pos_;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a variable index");
    if (pos_ - start > 6) fail("variable index too large");
    const int v = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (v < 1) {
      pos_ = start;
      fail("variable indices start at 1");
    }
    return v;
  }

  Node parse_atom() {
    const int i = parse_variable();
    NodeKind kind;
    if (accept("<="))
      kind = NodeKind::le;
    else if (accept("!="))
      kind = NodeKind::ne;
    else if (accept("<"))
      kind = NodeKind::lt;
    else if (accept("="))
      kind = NodeKind::eq;
    else
      fail("expected one of <=, <, =, !=");
    const int j = parse_variable();
    return Node{kind, i, j, {}};
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline int max_index(const Node& node) {
  int m = node.is_atom() ? std::max(node.i, node.j) : 0;
  for (const auto& c : node.children) m = std::max(m, max_index(c));
  return m;
}

}  // namespace detail

inline Node parse_formula_tree(std::string_view text) { return detail::FormulaParser(text).parse(); }

/// Parses a formula on n elements; n = 0 takes the largest index mentioned.
inline Formula parse_formula(std::string_view text, int n = 0) {
  Node root = parse_formula_tree(text);
  if (n == 0) n = std::max(1, detail::max_index(root));
  return Formula(n, std::move(root));
}

inline std::string to_string(const Node& node) {
  switch (node.kind) {
    case NodeKind::le: return "(x" + std::to_string(node.i) + " <= x" + std::to_string(node.j) + ")";
    case NodeKind::lt: return "(x" + std::to_string(node.i) + " < x" + std::to_string(node.j) + ")";
    case NodeKind::eq: return "(x" + std::to_string(node.i) + " = x" + std::to_string(node.j) + ")";
    case NodeKind::ne: return "(x" + std::to_string(node.i) + " != x" + std::to_string(node.j) + ")";
    case NodeKind::constant_true: return "TRUE";
    case NodeKind::constant_false: return "FALSE";
    case NodeKind::negation: {
      const auto& c = node.children.front();
      const bool bare = c.is_atom() || c.kind == NodeKind::negation || c.kind == NodeKind::constant_true ||
                        c.kind == NodeKind::constant_false;
      return "!" + (bare ? to_string(c) : "(" + to_string(c) + ")");
    }
    case NodeKind::conjunction:
    case NodeKind::disjunction: {
      const bool conj = node.kind == NodeKind::conjunction;
      if (node.children.empty()) return conj ? "TRUE" : "FALSE";
      std::string s;
      for (std::size_t k = 0; k < node.children.size(); ++k) {
        const auto& c = node.children[k];
        if (k > 0) s += conj ? " & " : " | ";
        const bool wrap = c.kind == NodeKind::disjunction || (c.kind == NodeKind::conjunction && !conj);
        s += wrap ? "(" + to_string(c) + ")" : to_string(c);
      }
      return s;
    }
  }
  return {};
}

inline std::string to_string(const Formula& s) { return to_string(s.root()); }

}  // namespace plurichrome

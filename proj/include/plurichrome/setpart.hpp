#pragma once

// Set partitions and set compositions of [n] = {1..n}, the refinement
// lattice, and the index-level induction and contraction operators.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plurichrome/error.hpp"

namespace plurichrome {

using Block = std::vector<int>;

/// A permutation d of [n] stored as its images: d[i - 1] = d(i).
using Permutation = std::vector<int>;

/// Default enumeration caps; callers pass allow_large to go beyond them.
inline constexpr int kSetPartitionCap = 12;
inline constexpr int kSetCompositionCap = 9;

namespace detail {

inline void hash_combine(std::size_t& seed, std::size_t value) {
  seed ^= value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

// Validates that blocks are nonempty, disjoint, and cover [n]; sorts each block.
inline void check_cover(int n, std::vector<Block>& blocks) {
  if (n < 1) throw invalid_input("ground set must be nonempty");
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  int count = 0;
  for (auto& b : blocks) {
    if (b.empty()) throw invalid_input("empty block");
    std::sort(b.begin(), b.end());
    for (int e : b) {
      if (e < 1 || e > n) throw invalid_input("element " + std::to_string(e) + " outside [" + std::to_string(n) + "]");
      if (seen[static_cast<std::size_t>(e)]) throw invalid_input("element " + std::to_string(e) + " repeated");
      seen[static_cast<std::size_t>(e)] = 1;
      ++count;
    }
  }
  if (count != n) throw invalid_input("blocks do not cover [" + std::to_string(n) + "]");
}

inline std::vector<int> labels_of(int n, const std::vector<Block>& blocks) {
  std::vector<int> label(static_cast<std::size_t>(n));
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (int e : blocks[b]) label[static_cast<std::size_t>(e - 1)] = static_cast<int>(b);
  return label;
}

// Groups elements by label, blocks ordered by label value.
inline std::vector<Block> blocks_of(std::span<const int> label) {
  std::vector<int> keys(label.begin(), label.end());
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<Block> blocks(keys.size());
  for (std::size_t i = 0; i < label.size(); ++i) {
    auto pos = std::lower_bound(keys.begin(), keys.end(), label[i]) - keys.begin();
    blocks[static_cast<std::size_t>(pos)].push_back(static_cast<int>(i) + 1);
  }
  return blocks;
}

}  // namespace detail

/// A partition of [n] into unordered blocks.  Stored canonically: blocks
/// sorted by their minimum element, elements ascending within a block.
class SetPartition {
public:
  SetPartition() = default;

  SetPartition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
    detail::check_cover(n_, blocks_);
    std::sort(blocks_.begin(), blocks_.end(),
              [](const Block& a, const Block& b) { return a.front() < b.front(); });
  }

  /// Partition whose blocks are the level sets of label (element i + 1 has label[i]).
  static SetPartition from_labels(std::span<const int> label) {
    return SetPartition(static_cast<int>(label.size()), detail::blocks_of(label));
  }

  /// The bottom element 1|2|...|n.
  static SetPartition discrete(int n) {
    std::vector<Block> blocks;
    for (int i = 1; i <= n; ++i) blocks.push_back({i});
    return SetPartition(n, std::move(blocks));
  }

  /// The top element 12...n.
  static SetPartition indiscrete(int n) {
    Block b(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(b.begin(), b.end(), 1);
    return SetPartition(n, {b});
  }

  int size() const noexcept { return n_; }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  /// block_index()[i - 1] is the position of the block holding i.
  std::vector<int> block_index() const { return detail::labels_of(n_, blocks_); }

  bool is_discrete() const noexcept { return blocks_.size() == static_cast<std::size_t>(n_); }

  /// Orders by size, then finer partitions (more blocks) first, then blocks lexicographically.
  std::strong_ordering operator<=>(const SetPartition& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    if (auto c = o.blocks_.size() <=> blocks_.size(); c != 0) return c;
    return blocks_ <=> o.blocks_;
  }
  bool operator==(const SetPartition&) const = default;

private:
  int n_ = 0;
  std::vector<Block> blocks_;
};

/// An ordered sequence of disjoint blocks covering [n].
class SetComposition {
public:
  SetComposition() = default;

  SetComposition(int n, std::vector<Block> blocks) : n_(n), blocks_(std::move(blocks)) {
    detail::check_cover(n_, blocks_);
  }

  /// Composition whose i-th block is the set of elements with the i-th smallest label.
  static SetComposition from_labels(std::span<const int> label) {
    return SetComposition(static_cast<int>(label.size()), detail::blocks_of(label));
  }

  int size() const noexcept { return n_; }
  std::size_t num_blocks() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  std::vector<int> block_index() const { return detail::labels_of(n_, blocks_); }

  /// The underlying partition, forgetting block order.
  SetPartition as_partition() const { return SetPartition(n_, blocks_); }

  /// Orders by size, then number of blocks, then blocks lexicographically.
  std::strong_ordering operator<=>(const SetComposition& o) const {
    if (auto c = n_ <=> o.n_; c != 0) return c;
    if (auto c = blocks_.size() <=> o.blocks_.size(); c != 0) return c;
    return blocks_ <=> o.blocks_;
  }
  bool operator==(const SetComposition&) const = default;

private:
  int n_ = 0;
  std::vector<Block> blocks_;
};

/// An integer partition, parts weakly decreasing.
class IntegerPartition {
public:
  IntegerPartition() = default;
  explicit IntegerPartition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (int p : parts_)
      if (p < 1) throw invalid_input("integer partition parts must be positive");
    std::sort(parts_.begin(), parts_.end(), std::greater<>());
  }

  const std::vector<int>& parts() const noexcept { return parts_; }
  std::size_t length() const noexcept { return parts_.size(); }
  int degree() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
  /// Number of parts equal to 1.
  int ones() const { return static_cast<int>(std::count(parts_.begin(), parts_.end(), 1)); }

  auto operator<=>(const IntegerPartition&) const = default;
  bool operator==(const IntegerPartition&) const = default;

private:
  std::vector<int> parts_;
};

// ---------------------------------------------------------------------------
// Permutations

inline Permutation identity_permutation(int n) {
  Permutation d(static_cast<std::size_t>(n));
  std::iota(d.begin(), d.end(), 1);
  return d;
}

inline void check_permutation(const Permutation& d, int n) {
  if (static_cast<int>(d.size()) != n) throw invalid_input("permutation has wrong degree");
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int x : d) {
    if (x < 1 || x > n || seen[static_cast<std::size_t>(x)]) throw invalid_input("not a bijection on [n]");
    seen[static_cast<std::size_t>(x)] = 1;
  }
}

inline Permutation inverse(const Permutation& d) {
  Permutation inv(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) inv[static_cast<std::size_t>(d[i] - 1)] = static_cast<int>(i) + 1;
  return inv;
}

/// (outer o inner)(i) = outer(inner(i)).
inline Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[static_cast<std::size_t>(inner[i] - 1)];
  return r;
}

// ---------------------------------------------------------------------------
// Lattice operations

namespace detail {
inline void require_same_n(int a, int b) {
  if (a != b) throw invalid_input("ground-set mismatch");
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
  std::vector<int> labels() {
    std::vector<int> l(parent.size());
    for (std::size_t i = 0; i < parent.size(); ++i) l[i] = find(static_cast<int>(i));
    return l;
  }
};
}  // namespace detail

/// p <= q in the refinement order: every block of p lies inside a block of q.
inline bool refines(const SetPartition& p, const SetPartition& q) {
  detail::require_same_n(p.size(), q.size());
  const auto qi = q.block_index();
  for (const auto& b : p.blocks())
    for (int e : b)
      if (qi[static_cast<std::size_t>(e - 1)] != qi[static_cast<std::size_t>(b.front() - 1)]) return false;
  return true;
}

/// Least upper bound in the partition lattice.
inline SetPartition join(const SetPartition& p, const SetPartition& q) {
  detail::require_same_n(p.size(), q.size());
  detail::UnionFind uf(p.size());
  for (const auto* part : {&p, &q})
    for (const auto& b : part->blocks())
      for (int e : b) uf.unite(b.front() - 1, e - 1);
  return SetPartition::from_labels(uf.labels());
}

/// Block sizes sorted weakly decreasing.
inline IntegerPartition shape(const SetPartition& p) {
  std::vector<int> sizes;
  for (const auto& b : p.blocks()) sizes.push_back(static_cast<int>(b.size()));
  return IntegerPartition(std::move(sizes));
}

// ---------------------------------------------------------------------------
// Induction and contraction on index labels
//
// Both act on a label vector (label[i - 1] = block of element i).  Sequence
// entries may be zero: a zero entry moves past one element untouched, which is
// exactly what the recursions do with s = 0 or r = 0.

namespace detail {

inline void check_sequence(std::span<const int> r) {
  for (int x : r)
    if (x < 0) throw invalid_input("induction/contraction sequence entries must be nonnegative");
}

// One step of induction: inflate element n - t into s + 1 consecutive elements.
inline std::vector<int> induct_step(const std::vector<int>& label, int s, int t) {
  const int n = static_cast<int>(label.size());
  const int anchor = n - t;  // element whose block receives the new elements
  if (anchor < 1) throw invalid_input("induction sequence too long");
  std::vector<int> out(static_cast<std::size_t>(n + s));
  for (int e = 1; e <= anchor; ++e) out[static_cast<std::size_t>(e - 1)] = label[static_cast<std::size_t>(e - 1)];
  for (int e = anchor + 1; e <= n; ++e) out[static_cast<std::size_t>(e + s - 1)] = label[static_cast<std::size_t>(e - 1)];
  for (int e = anchor + 1; e <= anchor + s; ++e) out[static_cast<std::size_t>(e - 1)] = label[static_cast<std::size_t>(anchor - 1)];
  return out;
}

inline std::vector<int> induct_labels(std::vector<int> label, std::span<const int> r) {
  check_sequence(r);
  if (r.size() > label.size()) throw invalid_input("induction sequence too long");
  int t = 0;
  for (int s : r) {
    label = induct_step(label, s, t);
    t += s + 1;
  }
  return label;
}

}  // namespace detail

/// Index map of one contraction step on [n]: elements n-t-r .. n-t collapse onto
/// n-t-r and everything above n-t shifts down by r.  Returns images for 1..n
/// (entry 0 unused).
inline std::vector<int> contraction_step_map(int n, int r, int t) {
  if (r < 0 || t < 0 || r + t >= n) throw invalid_input("contraction step out of range");
  std::vector<int> map(static_cast<std::size_t>(n) + 1, 0);
  const int low = n - t - r;
  for (int e = 1; e <= n; ++e) map[static_cast<std::size_t>(e)] = e <= low ? e : (e <= n - t ? low : e - r);
  return map;
}

namespace detail {

inline std::optional<std::vector<int>> contract_labels(std::vector<int> label, std::span<const int> r) {
  check_sequence(r);
  int t = 0;
  for (int step : r) {
    const int n = static_cast<int>(label.size());
    if (step + t >= n) throw invalid_input("contraction sequence too long");
    const auto map = contraction_step_map(n, step, t);
    const int low = n - t - step;
    for (int e = low; e <= n - t; ++e)
      if (label[static_cast<std::size_t>(e - 1)] != label[static_cast<std::size_t>(low - 1)]) return std::nullopt;
    std::vector<int> out(static_cast<std::size_t>(n - step));
    for (int e = 1; e <= n; ++e) out[static_cast<std::size_t>(map[static_cast<std::size_t>(e)] - 1)] = label[static_cast<std::size_t>(e - 1)];
    label = std::move(out);
    t += 1;
  }
  return label;
}

}  // namespace detail

/// F inducted by r = (r_0, ..., r_k); requires k < n.
inline SetComposition induct_composition(const SetComposition& f, std::span<const int> r) {
  auto label = detail::induct_labels(f.block_index(), r);
  return SetComposition::from_labels(label);
}

/// Induction on partitions.  The operation moves elements, not blocks, so the
/// result does not depend on any block ordering.
inline SetPartition induct_partition(const SetPartition& p, std::span<const int> r) {
  auto label = detail::induct_labels(p.block_index(), r);
  return SetPartition::from_labels(label);
}

/// Contraction of a composition; nullopt when some identified elements lie in
/// different blocks.  Throws only when the sequence does not fit in [n].
inline std::optional<SetComposition> contract_composition(const SetComposition& f, std::span<const int> r) {
  auto label = detail::contract_labels(f.block_index(), r);
  if (!label) return std::nullopt;
  return SetComposition::from_labels(*label);
}

inline std::optional<SetPartition> contract_partition(const SetPartition& p, std::span<const int> r) {
  auto label = detail::contract_labels(p.block_index(), r);
  if (!label) return std::nullopt;
  return SetPartition::from_labels(*label);
}

/// Replaces each element i by d(i).
inline SetPartition permute_partition(const SetPartition& p, const Permutation& d) {
  check_permutation(d, p.size());
  std::vector<Block> blocks;
  for (const auto& b : p.blocks()) {
    Block nb;
    for (int e : b) nb.push_back(d[static_cast<std::size_t>(e - 1)]);
    blocks.push_back(std::move(nb));
  }
  return SetPartition(p.size(), std::move(blocks));
}

inline SetComposition permute_composition(const SetComposition& f, const Permutation& d) {
  check_permutation(d, f.size());
  std::vector<Block> blocks;
  for (const auto& b : f.blocks()) {
    Block nb;
    for (int e : b) nb.push_back(d[static_cast<std::size_t>(e - 1)]);
    blocks.push_back(std::move(nb));
  }
  return SetComposition(f.size(), std::move(blocks));
}

// ---------------------------------------------------------------------------
// Enumeration

/// Calls fn once per set partition of [n], in restricted-growth-string order.
template <class Fn>
void for_each_set_partition(int n, Fn&& fn, bool allow_large = false) {
  if (n < 1) throw invalid_input("n must be positive");
  if (n > kSetPartitionCap && !allow_large)
    throw cap_exceeded("set partition enumeration capped at n = " + std::to_string(kSetPartitionCap));
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  while (true) {
    fn(SetPartition::from_labels(rgs));
    int i = n - 1;
    while (i > 0 && rgs[static_cast<std::size_t>(i)] == prefix_max[static_cast<std::size_t>(i - 1)] + 1) --i;
    if (i == 0) return;
    ++rgs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) rgs[static_cast<std::size_t>(j)] = 0;
    for (int j = i; j < n; ++j)
      prefix_max[static_cast<std::size_t>(j)] = std::max(prefix_max[static_cast<std::size_t>(j - 1)], rgs[static_cast<std::size_t>(j)]);
  }
}

inline std::vector<SetPartition> set_partitions(int n, bool allow_large = false) {
  std::vector<SetPartition> out;
  for_each_set_partition(n, [&](SetPartition p) { out.push_back(std::move(p)); }, allow_large);
  return out;
}

/// Calls fn once per ordering of the blocks of p.
template <class Fn>
void for_each_block_ordering(const SetPartition& p, Fn&& fn) {
  std::vector<std::size_t> order(p.num_blocks());
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    std::vector<Block> blocks;
    for (auto i : order) blocks.push_back(p.blocks()[i]);
    fn(SetComposition(p.size(), std::move(blocks)));
  } while (std::next_permutation(order.begin(), order.end()));
}

/// Calls fn once per set composition of [n]: partitions in RGS order, each
/// with its block orderings in lexicographic order.
template <class Fn>
void for_each_set_composition(int n, Fn&& fn, bool allow_large = false) {
  if (n > kSetCompositionCap && !allow_large)
    throw cap_exceeded("set composition enumeration capped at n = " + std::to_string(kSetCompositionCap));
  for_each_set_partition(n, [&](const SetPartition& p) { for_each_block_ordering(p, fn); }, true);
}

inline std::vector<SetComposition> set_compositions(int n, bool allow_large = false) {
  std::vector<SetComposition> out;
  for_each_set_composition(n, [&](SetComposition f) { out.push_back(std::move(f)); }, allow_large);
  return out;
}

// ---------------------------------------------------------------------------
// Text syntax: partitions `12|3`, `{1,10}|{2}`; compositions `(12,3)`.

namespace detail {

inline std::string block_to_string(const Block& b, bool braces) {
  std::string s;
  if (!braces) {
    for (int e : b) s += std::to_string(e);
    return s;
  }
  s = "{";
  for (std::size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
  return s + "}";
}

inline std::string strip_spaces(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  return s;
}

// Parses one block starting at pos; stops at any character in stops.
inline Block parse_block(const std::string& s, std::size_t& pos, std::string_view stops) {
  Block b;
  const std::size_t start = pos;
  if (pos < s.size() && s[pos] == '{') {
    ++pos;
    while (true) {
      std::size_t begin = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (begin == pos) throw parse_error("expected element number", pos);
      b.push_back(std::stoi(s.substr(begin, pos - begin)));
      if (pos < s.size() && s[pos] == ',') {
        ++pos;
        continue;
      }
      if (pos < s.size() && s[pos] == '}') {
        ++pos;
        break;
      }
      throw parse_error("expected ',' or '}'", pos);
    }
  } else {
    while (pos < s.size() && stops.find(s[pos]) == std::string_view::npos) {
      if (!std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '0')
        throw parse_error("expected digit 1-9", pos);
      b.push_back(s[pos] - '0');
      ++pos;
    }
  }
  if (b.empty()) throw parse_error("empty block", start);
  return b;
}

inline int count_elements(const std::vector<Block>& blocks) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.size());
  return n;
}

}  // namespace detail

inline std::string to_string(const SetPartition& p) {
  const bool braces = p.size() > 9;
  std::string s;
  for (std::size_t i = 0; i < p.num_blocks(); ++i) s += (i ? "|" : "") + detail::block_to_string(p.blocks()[i], braces);
  return s;
}

inline std::string to_string(const SetComposition& f) {
  const bool braces = f.size() > 9;
  std::string s = "(";
  for (std::size_t i = 0; i < f.num_blocks(); ++i) s += (i ? "," : "") + detail::block_to_string(f.blocks()[i], braces);
  return s + ")";
}

inline std::string to_string(const IntegerPartition& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.length(); ++i) s += (i ? "," : "") + std::to_string(l.parts()[i]);
  return s + ")";
}

/// Parses `12|3` or `{1,10}|{2}`; n is the number of elements listed.
inline SetPartition parse_set_partition(std::string_view text) {
  const std::string s = detail::strip_spaces(text);
  std::vector<Block> blocks;
  std::size_t pos = 0;
  while (true) {
    blocks.push_back(detail::parse_block(s, pos, "|"));
    if (pos == s.size()) break;
    if (s[pos] != '|') throw parse_error("expected '|'", pos);
    ++pos;
  }
  const int n = detail::count_elements(blocks);
  return SetPartition(n, std::move(blocks));
}

/// Parses `(12,3)` or `({1,10},{2})`.
inline SetComposition parse_set_composition(std::string_view text) {
  const std::string s = detail::strip_spaces(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw parse_error("composition must be parenthesised", 0);
  std::vector<Block> blocks;
  std::size_t pos = 1;
  while (true) {
    blocks.push_back(detail::parse_block(s, pos, ",)"));
    if (s[pos] == ')') {
      if (pos + 1 != s.size()) throw parse_error("trailing characters", pos + 1);
      break;
    }
    if (s[pos] != ',') throw parse_error("expected ',' or ')'", pos);
    ++pos;
  }
  const int n = detail::count_elements(blocks);
  return SetComposition(n, std::move(blocks));
}

}  // namespace plurichrome

template <>
struct std::hash<plurichrome::SetPartition> {
  std::size_t operator()(const plurichrome::SetPartition& p) const noexcept {
    std::size_t seed = static_cast<std::size_t>(p.size());
    for (const auto& b : p.blocks()) {
      for (int e : b) plurichrome::detail::hash_combine(seed, static_cast<std::size_t>(e));
      plurichrome::detail::hash_combine(seed, 0xb10c);
    }
    return seed;
  }
};

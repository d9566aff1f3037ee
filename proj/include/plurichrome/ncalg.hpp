#pragma once

// Sparse exact-integer expressions over the monomial and powersum bases of
// NCSym, the monomial basis of NCQSym, and the powersum basis of Sym.

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "plurichrome/error.hpp"
#include "plurichrome/setpart.hpp"

namespace plurichrome {

using Coeff = boost::multiprecision::cpp_int;

/// A finite formal sum of keys with nonzero integer coefficients.
template <class Key>
class LinearCombination {
public:
  using map_type = std::map<Key, Coeff>;

  void add(const Key& key, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Coeff coefficient(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  const map_type& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  LinearCombination& operator+=(const LinearCombination& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  LinearCombination& operator*=(const Coeff& a) {
    if (a == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= a;
    return *this;
  }

  bool operator==(const LinearCombination&) const = default;

private:
  map_type terms_;
};

enum class NCBasis { monomial, powersum };

/// Homogeneous element of NCSym in one tagged basis.
class NCSymExpr {
public:
  NCSymExpr(int degree, NCBasis basis) : n_(degree), basis_(basis) {}

  static NCSymExpr m(const SetPartition& p, const Coeff& c = 1) {
    NCSymExpr e(p.size(), NCBasis::monomial);
    e.add(p, c);
    return e;
  }
  static NCSymExpr p(const SetPartition& p, const Coeff& c = 1) {
    NCSymExpr e(p.size(), NCBasis::powersum);
    e.add(p, c);
    return e;
  }

  int degree() const noexcept { return n_; }
  NCBasis basis() const noexcept { return basis_; }
  const LinearCombination<SetPartition>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Coeff coefficient(const SetPartition& p) const { return terms_.coefficient(p); }

  void add(const SetPartition& p, const Coeff& c) {
    if (p.size() != n_) throw invalid_input("term degree differs from expression degree");
    terms_.add(p, c);
  }

  NCSymExpr& operator+=(const NCSymExpr& o);
  NCSymExpr& operator-=(const NCSymExpr& o);
  NCSymExpr& operator*=(const Coeff& a) {
    terms_ *= a;
    return *this;
  }
  NCSymExpr operator-() const {
    NCSymExpr r = *this;
    r *= -1;
    return r;
  }

  /// Equal as elements of NCSym; different bases compare in the monomial basis.
  bool operator==(const NCSymExpr& o) const;

private:
  int n_;
  NCBasis basis_;
  LinearCombination<SetPartition> terms_;
};

/// Homogeneous element of NCQSym in the monomial basis M.
class NCQSymExpr {
public:
  explicit NCQSymExpr(int degree) : n_(degree) {}

  static NCQSymExpr M(const SetComposition& f, const Coeff& c = 1) {
    NCQSymExpr e(f.size());
    e.add(f, c);
    return e;
  }

  int degree() const noexcept { return n_; }
  const LinearCombination<SetComposition>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Coeff coefficient(const SetComposition& f) const { return terms_.coefficient(f); }

  void add(const SetComposition& f, const Coeff& c) {
    if (f.size() != n_) throw invalid_input("term degree differs from expression degree");
    terms_.add(f, c);
  }

  NCQSymExpr& operator+=(const NCQSymExpr& o) {
    detail::require_same_n(n_, o.n_);
    terms_ += o.terms_;
    return *this;
  }
  NCQSymExpr& operator-=(const NCQSymExpr& o) {
    detail::require_same_n(n_, o.n_);
    terms_ -= o.terms_;
    return *this;
  }
  NCQSymExpr& operator*=(const Coeff& a) {
    terms_ *= a;
    return *this;
  }

  bool operator==(const NCQSymExpr&) const = default;

private:
  int n_;
  LinearCombination<SetComposition> terms_;
};

/// Homogeneous symmetric function in commuting variables, powersum basis.
class SymExpr {
public:
  explicit SymExpr(int degree) : n_(degree) {}

  int degree() const noexcept { return n_; }
  const LinearCombination<IntegerPartition>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Coeff coefficient(const IntegerPartition& l) const { return terms_.coefficient(l); }

  void add(const IntegerPartition& l, const Coeff& c) {
    if (l.degree() != n_) throw invalid_input("term degree differs from expression degree");
    terms_.add(l, c);
  }

  SymExpr& operator+=(const SymExpr& o) {
    detail::require_same_n(n_, o.n_);
    terms_ += o.terms_;
    return *this;
  }
  SymExpr& operator-=(const SymExpr& o) {
    detail::require_same_n(n_, o.n_);
    terms_ -= o.terms_;
    return *this;
  }

  bool operator==(const SymExpr&) const = default;

private:
  int n_;
  LinearCombination<IntegerPartition> terms_;
};

/// Finite truncation of a formal sum: words of length n over colors 1..c.
struct TruncatedExpansion {
  int degree = 0;
  int colors = 0;
  std::map<std::vector<int>, Coeff> terms;

  void add(const std::vector<int>& word, const Coeff& c) {
    if (c == 0) return;
    auto& slot = terms[word];
    slot += c;
    if (slot == 0) terms.erase(word);
  }

  bool operator==(const TruncatedExpansion&) const = default;
};

inline NCSymExpr operator+(NCSymExpr a, const NCSymExpr& b) { return a += b; }
inline NCSymExpr operator-(NCSymExpr a, const NCSymExpr& b) { return a -= b; }
inline NCSymExpr operator*(const Coeff& k, NCSymExpr a) { return a *= k; }
inline NCQSymExpr operator+(NCQSymExpr a, const NCQSymExpr& b) { return a += b; }
inline NCQSymExpr operator-(NCQSymExpr a, const NCQSymExpr& b) { return a -= b; }
inline NCQSymExpr operator*(const Coeff& k, NCQSymExpr a) { return a *= k; }
inline SymExpr operator+(SymExpr a, const SymExpr& b) { return a += b; }
inline SymExpr operator-(SymExpr a, const SymExpr& b) { return a -= b; }

// ---------------------------------------------------------------------------
// Basis conversion

/// Calls fn for every sigma >= p (every coarsening), i.e. every set partition
/// of the blocks of p.
template <class Fn>
void for_each_coarsening(const SetPartition& p, Fn&& fn) {
  const auto& blocks = p.blocks();
  for_each_set_partition(
      static_cast<int>(blocks.size()),
      [&](const SetPartition& grouping) {
        std::vector<Block> merged;
        for (const auto& g : grouping.blocks()) {
          Block b;
          for (int idx : g) b.insert(b.end(), blocks[static_cast<std::size_t>(idx - 1)].begin(), blocks[static_cast<std::size_t>(idx - 1)].end());
          merged.push_back(std::move(b));
        }
        fn(SetPartition(p.size(), std::move(merged)));
      },
      true);
}

/// p_pi = sum over sigma >= pi of m_sigma, extended linearly.
inline NCSymExpr p_to_m(const NCSymExpr& e) {
  if (e.basis() != NCBasis::powersum) throw invalid_input("p_to_m expects a powersum-basis expression");
  NCSymExpr out(e.degree(), NCBasis::monomial);
  for (const auto& [pi, c] : e.terms().terms()) for_each_coarsening(pi, [&](const SetPartition& s) { out.add(s, c); });
  return out;
}

/// Moebius inversion of p_to_m: m_pi = sum over sigma >= pi of mu(pi, sigma) p_sigma,
/// with mu the product over blocks of sigma of (-1)^{k-1} (k-1)!, k the number
/// of blocks of pi merged into it.
inline NCSymExpr m_to_p(const NCSymExpr& e) {
  if (e.basis() != NCBasis::monomial) throw invalid_input("m_to_p expects a monomial-basis expression");
  NCSymExpr out(e.degree(), NCBasis::powersum);
  for (const auto& [pi, c] : e.terms().terms())
    for_each_coarsening(pi, [&](const SetPartition& sigma) {
      const auto where = sigma.block_index();
      std::vector<int> merged(sigma.blocks().size(), 0);
      for (const auto& b : pi.blocks()) ++merged[static_cast<std::size_t>(where[static_cast<std::size_t>(b.front() - 1)])];
      Coeff mu = c;
      for (int k : merged) {
        for (int i = 2; i < k; ++i) mu *= i;
        if (k % 2 == 0) mu = -mu;
      }
      out.add(sigma, mu);
    });
  return out;
}

inline NCSymExpr to_monomial(const NCSymExpr& e) { return e.basis() == NCBasis::monomial ? e : p_to_m(e); }
inline NCSymExpr to_powersum(const NCSymExpr& e) { return e.basis() == NCBasis::powersum ? e : m_to_p(e); }

inline NCSymExpr& NCSymExpr::operator+=(const NCSymExpr& o) {
  detail::require_same_n(n_, o.n_);
  if (basis_ == o.basis_) {
    terms_ += o.terms_;
  } else {
    *this = to_monomial(*this);
    terms_ += to_monomial(o).terms_;
  }
  return *this;
}

inline NCSymExpr& NCSymExpr::operator-=(const NCSymExpr& o) { return *this += -o; }

inline bool NCSymExpr::operator==(const NCSymExpr& o) const {
  if (n_ != o.n_) return false;
  if (basis_ == o.basis_) return terms_ == o.terms_;
  return to_monomial(*this).terms_ == to_monomial(o).terms_;
}

/// m_pi = sum of M_Phi over all orderings Phi of the blocks of pi.
inline NCQSymExpr ncsym_to_ncqsym(const NCSymExpr& e) {
  if (e.basis() != NCBasis::monomial) throw invalid_input("ncsym_to_ncqsym expects a monomial-basis expression");
  NCQSymExpr out(e.degree());
  for (const auto& [pi, c] : e.terms().terms()) for_each_block_ordering(pi, [&](const SetComposition& f) { out.add(f, c); });
  return out;
}

// ---------------------------------------------------------------------------
// Induction, permutation, commutative image

namespace detail {
inline int inducted_degree(int n, std::span<const int> r) {
  check_sequence(r);
  if (r.size() > static_cast<std::size_t>(n)) throw invalid_input("induction sequence too long");
  int total = n;
  for (int x : r) total += x;
  return total;
}
}  // namespace detail

inline NCSymExpr induct(const NCSymExpr& e, std::span<const int> r) {
  NCSymExpr out(detail::inducted_degree(e.degree(), r), e.basis());
  for (const auto& [pi, c] : e.terms().terms()) out.add(induct_partition(pi, r), c);
  return out;
}

inline NCQSymExpr induct(const NCQSymExpr& e, std::span<const int> r) {
  NCQSymExpr out(detail::inducted_degree(e.degree(), r));
  for (const auto& [f, c] : e.terms().terms()) out.add(induct_composition(f, r), c);
  return out;
}

/// Word-level induction: the letter at position n - j is repeated 1 + r_j times.
inline std::vector<int> induct_word(const std::vector<int>& word, std::span<const int> r) {
  const std::size_t n = word.size();
  if (r.size() > n) throw invalid_input("induction sequence too long");
  std::vector<int> out;
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t j = n - 1 - pos;
    const int repeats = j < r.size() ? 1 + r[j] : 1;
    out.insert(out.end(), static_cast<std::size_t>(repeats), word[pos]);
  }
  return out;
}

inline TruncatedExpansion induct(const TruncatedExpansion& e, std::span<const int> r) {
  TruncatedExpansion out{detail::inducted_degree(e.degree, r), e.colors, {}};
  for (const auto& [w, c] : e.terms) out.add(induct_word(w, r), c);
  return out;
}

/// Relabeling action: m_pi -> m_{d(pi)} (likewise p_pi).
inline NCSymExpr permute(const NCSymExpr& e, const Permutation& d) {
  NCSymExpr out(e.degree(), e.basis());
  for (const auto& [pi, c] : e.terms().terms()) out.add(permute_partition(pi, d), c);
  return out;
}

inline NCQSymExpr permute(const NCQSymExpr& e, const Permutation& d) {
  NCQSymExpr out(e.degree());
  for (const auto& [f, c] : e.terms().terms()) out.add(permute_composition(f, d), c);
  return out;
}

/// Lets the variables commute: p_pi -> p_{shape(pi)}.
inline SymExpr commutative_image(const NCSymExpr& e) {
  if (e.basis() != NCBasis::powersum) throw invalid_input("commutative_image expects a powersum-basis expression");
  SymExpr out(e.degree());
  for (const auto& [pi, c] : e.terms().terms()) out.add(shape(pi), c);
  return out;
}

// ---------------------------------------------------------------------------
// Truncated expansion and principal specialization

namespace detail {

// Assigns a color to each block; distinct colors when injective, strictly
// increasing along block order when increasing.
template <class Fn>
void assign_block_colors(std::size_t blocks, int c, bool increasing, Fn&& fn) {
  std::vector<int> color(blocks, 0);
  std::vector<char> used(static_cast<std::size_t>(c) + 1, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == blocks) {
      fn(color);
      return;
    }
    const int lo = increasing && i > 0 ? color[i - 1] + 1 : 1;
    for (int x = lo; x <= c; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      used[static_cast<std::size_t>(x)] = 1;
      color[i] = x;
      self(self, i + 1);
      used[static_cast<std::size_t>(x)] = 0;
    }
  };
  rec(rec, 0);
}

template <class Key>
void expand_key(const Key& key, const Coeff& coeff, int c, bool increasing, TruncatedExpansion& out) {
  assign_block_colors(key.num_blocks(), c, increasing, [&](const std::vector<int>& color) {
    std::vector<int> word(static_cast<std::size_t>(key.size()));
    for (std::size_t b = 0; b < key.num_blocks(); ++b)
      for (int e : key.blocks()[b]) word[static_cast<std::size_t>(e - 1)] = color[b];
    out.add(word, coeff);
  });
}

inline Coeff falling_factorial(std::int64_t k, std::size_t len) {
  Coeff r = 1;
  for (std::size_t i = 0; i < len; ++i) r *= (k - static_cast<std::int64_t>(i));
  return r;
}

inline Coeff binomial(std::int64_t k, std::int64_t len) {
  if (len < 0 || k < len) return 0;
  Coeff r = 1;
  for (std::int64_t i = 0; i < len; ++i) r = r * (k - i) / (i + 1);
  return r;
}

}  // namespace detail

/// Words of the formal sum using only colors 1..c.
inline TruncatedExpansion expand_truncated(const NCSymExpr& e, int c) {
  if (c < 1) throw invalid_input("color bound must be positive");
  TruncatedExpansion out{e.degree(), c, {}};
  const auto m = to_monomial(e);
  for (const auto& [pi, coeff] : m.terms().terms()) detail::expand_key(pi, coeff, c, false, out);
  return out;
}

inline TruncatedExpansion expand_truncated(const NCQSymExpr& e, int c) {
  if (c < 1) throw invalid_input("color bound must be positive");
  TruncatedExpansion out{e.degree(), c, {}};
  for (const auto& [f, coeff] : e.terms().terms()) detail::expand_key(f, coeff, c, true, out);
  return out;
}

/// Specialization y_1 = ... = y_k = 1, y_i = 0 for i > k.
inline Coeff eval_principal(const NCSymExpr& e, std::int64_t k) {
  Coeff total = 0;
  for (const auto& [pi, c] : e.terms().terms()) {
    if (e.basis() == NCBasis::monomial)
      total += c * detail::falling_factorial(k, pi.num_blocks());
    else
      total += c * boost::multiprecision::pow(Coeff(k), static_cast<unsigned>(pi.num_blocks()));
  }
  return total;
}

inline Coeff eval_principal(const NCQSymExpr& e, std::int64_t k) {
  Coeff total = 0;
  for (const auto& [f, c] : e.terms().terms()) total += c * detail::binomial(k, static_cast<std::int64_t>(f.num_blocks()));
  return total;
}

/// p_lambda -> k^{len lambda}.
inline Coeff eval_principal(const SymExpr& e, std::int64_t k) {
  Coeff total = 0;
  for (const auto& [l, c] : e.terms().terms()) total += c * boost::multiprecision::pow(Coeff(k), static_cast<unsigned>(l.length()));
  return total;
}

// ---------------------------------------------------------------------------
// Text format: one term per line, `<signed integer> <letter>[<key>]` with
// letters m, p (set partitions), M (set compositions), P (integer partitions).
// A zero expression prints as `0 <letter>[<bottom key>]` so its degree survives.

namespace detail {

inline std::string signed_coeff(const Coeff& c) {
  std::ostringstream os;
  if (c >= 0) os << '+';
  os << c;
  return os.str();
}

}  // namespace detail

inline std::string to_string(const NCSymExpr& e) {
  const char letter = e.basis() == NCBasis::monomial ? 'm' : 'p';
  std::string s;
  if (e.is_zero()) return std::string("0 ") + letter + "[" + to_string(SetPartition::discrete(e.degree())) + "]\n";
  for (const auto& [pi, c] : e.terms().terms()) s += detail::signed_coeff(c) + " " + letter + "[" + to_string(pi) + "]\n";
  return s;
}

inline std::string to_string(const NCQSymExpr& e) {
  std::string s;
  if (e.is_zero()) return "0 M[" + to_string(SetComposition(e.degree(), SetPartition::discrete(e.degree()).blocks())) + "]\n";
  for (const auto& [f, c] : e.terms().terms()) s += detail::signed_coeff(c) + " M[" + to_string(f) + "]\n";
  return s;
}

inline std::string to_string(const SymExpr& e) {
  std::string s;
  if (e.is_zero()) return "0 P[" + to_string(IntegerPartition(std::vector<int>(static_cast<std::size_t>(e.degree()), 1))) + "]\n";
  for (const auto& [l, c] : e.terms().terms()) s += detail::signed_coeff(c) + " P[" + to_string(l) + "]\n";
  return s;
}

inline IntegerPartition parse_integer_partition(std::string_view text) {
  std::string s = detail::strip_spaces(text);
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw parse_error("integer partition must be parenthesised", 0);
  std::vector<int> parts;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      parts.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw parse_error("bad integer partition part '" + item + "'", 0);
    }
  }
  return IntegerPartition(std::move(parts));
}

using Expression = std::variant<NCSymExpr, NCQSymExpr, SymExpr>;

/// Parses terms `<coeff> <letter>[<key>]`, any number per line (the printed
/// form puts one per line); blank lines and `#` comments ignored.
inline Expression parse_expression(std::string_view text) {
  std::optional<char> letter;
  std::vector<std::pair<Coeff, std::string>> items;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::string rest = detail::strip_spaces(line);
    while (!rest.empty()) {
      const auto close = rest.find(']');
      if (close == std::string::npos) throw parse_error("expected '<coeff> <letter>[<key>]'", line_no);
      const std::string s = rest.substr(0, close + 1);
      rest.erase(0, close + 1);
      const auto open = s.find('[');
      if (open == std::string::npos || open == 0) throw parse_error("expected '<coeff> <letter>[<key>]'", line_no);
      const char l = s[open - 1];
      if (l != 'm' && l != 'p' && l != 'M' && l != 'P') throw parse_error("unknown basis letter", line_no);
      if (letter && *letter != l) throw parse_error("mixed basis letters", line_no);
      letter = l;
      std::string num = s.substr(0, open - 1);
      if (num.empty() || num == "+" || num == "-") num += "1";
      if (num.front() == '+') num.erase(0, 1);
      Coeff c;
      try {
        c = Coeff(num);
      } catch (const std::exception&) {
        throw parse_error("bad coefficient '" + num + "'", line_no);
      }
      items.emplace_back(c, s.substr(open + 1, s.size() - open - 2));
    }
  }
  if (!letter) throw parse_error("empty expression", 0);
  switch (*letter) {
    case 'm':
    case 'p': {
      std::optional<NCSymExpr> e;
      for (const auto& [c, key] : items) {
        auto pi = parse_set_partition(key);
        if (!e) e.emplace(pi.size(), *letter == 'm' ? NCBasis::monomial : NCBasis::powersum);
        e->add(pi, c);
      }
      return *e;
    }
    case 'M': {
      std::optional<NCQSymExpr> e;
      for (const auto& [c, key] : items) {
        auto f = parse_set_composition(key);
        if (!e) e.emplace(f.size());
        e->add(f, c);
      }
      return *e;
    }
    default: {
      std::optional<SymExpr> e;
      for (const auto& [c, key] : items) {
        auto l = parse_integer_partition(key);
        if (!e) e.emplace(l.degree());
        e->add(l, c);
      }
      return *e;
    }
  }
}

inline std::string to_string(const Expression& e) {
  return std::visit([](const auto& x) { return to_string(x); }, e);
}

}  // namespace plurichrome

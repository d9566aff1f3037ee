#pragma once

// Reproduces the worked examples and the hypertree counterexample identities
// as a list of named checks.

#include <string>
#include <vector>

#include "plurichrome/encodings.hpp"
#include "plurichrome/hypertree.hpp"
#include "plurichrome/ncalg.hpp"
#include "plurichrome/plurigraph.hpp"
#include "plurichrome/scheduling.hpp"

namespace plurichrome {

struct NamedCheck {
  std::string name;
  bool passed = false;
};

namespace detail {

inline NCQSymExpr sum_of_M(int n, const std::vector<std::string>& keys) {
  NCQSymExpr e(n);
  for (const auto& k : keys) e.add(parse_set_composition(k), 1);
  return e;
}

inline std::vector<std::vector<Edge>> pluriedge_lists(const Plurigraph& g) {
  std::vector<std::vector<Edge>> out;
  for (const auto& e : g.pluriedges()) out.push_back(e.edges());
  return out;
}

}  // namespace detail

inline std::vector<NamedCheck> verify_examples() {
  std::vector<NamedCheck> out;
  auto check = [&](std::string name, bool ok) { out.push_back({std::move(name), ok}); };

  // Plurigraph on [4] with pluriedges {13,24} and {12,34}.
  {
    const auto g = Plurigraph::from_edge_lists(4, {{{1, 3}, {2, 4}}, {{1, 2}, {3, 4}}});
    NCSymExpr m(4, NCBasis::monomial);
    for (const auto& pi : set_partitions(4))
      if (to_string(pi) != "1234" && to_string(pi) != "12|34" && to_string(pi) != "13|24") m.add(pi, 1);
    const auto p = NCSymExpr::p(parse_set_partition("1|2|3|4")) - NCSymExpr::p(parse_set_partition("12|34")) -
                   NCSymExpr::p(parse_set_partition("13|24")) + NCSymExpr::p(parse_set_partition("1234"));
    const auto y_enum = chromatic_ncsym_enum(g);
    check("Y_G by enumeration is the sum of m_pi over pi not in {1234, 12|34, 13|24}", y_enum == m);
    check("Y_G by subset expansion is p_1|2|3|4 - p_12|34 - p_13|24 + p_1234", chromatic_ncsym_powersum(g) == p);
    check("Y_G by deletion-contraction matches the powersum expansion", chromatic_ncsym_delcon(g) == p);
    check("monomial and powersum expansions of Y_G agree", to_monomial(p) == m);
    const auto deleted = Plurigraph::from_edge_lists(4, {{{1, 3}, {2, 4}}});
    check("Y_G = Y_(G minus 12|34) - m_12|34",
          y_enum == chromatic_ncsym_enum(deleted) - NCSymExpr::m(parse_set_partition("12|34")));
  }

  // Scheduling: S' = (x1<=x2)&(x2<=x3)&(x3<=x4), C = (x1!=x2)|(x3!=x4).
  {
    const auto s1 = parse_formula("(x1 <= x2) & (x2 <= x3) & (x3 <= x4)", 4);
    const auto c = parse_formula_tree("(x1 != x2) | (x3 != x4)");
    const std::vector<int> r{1, 1};
    const auto s2 = contract_formula(s1, r);
    check("S' has the eight-term monomial expansion",
          scheduling_ncqsym(s1) == detail::sum_of_M(4, {"(1234)", "(1,234)", "(12,34)", "(123,4)", "(1,2,34)", "(1,23,4)",
                                                        "(12,3,4)", "(1,2,3,4)"}));
    check("S'' = S' contracted by (1,1) is (x1 <= x2)", s2.root() == Node::le(1, 2));
    check("S'' has expansion M_(12) + M_(1,2)", scheduling_ncqsym(s2) == detail::sum_of_M(2, {"(12)", "(1,2)"}));
    check("S'' inducted by (1,1) is M_(1234) + M_(12,34)",
          induct(scheduling_ncqsym(s2), r) == detail::sum_of_M(4, {"(1234)", "(12,34)"}));
    const auto six = detail::sum_of_M(4, {"(1,234)", "(123,4)", "(1,2,34)", "(1,23,4)", "(12,3,4)", "(1,2,3,4)"});
    check("S = S' & C by deletion-contraction has the six-term expansion", delcon_ncqsym(s1, c) == six);
    check("S = S' & C by enumeration has the six-term expansion",
          scheduling_ncqsym(Formula(4, Node::all_of({s1.root(), c}))) == six);
  }

  // Oriented, acyclic, and star encodings.
  {
    const auto oriented = oriented_to_plurigraph(OrientedGraph(4, {{1, 2}, {3, 4}}));
    check("oriented graph with arcs 12, 34 encodes as {12}, {34}, {14,23}",
          detail::pluriedge_lists(oriented) == std::vector<std::vector<Edge>>{{{1, 2}}, {{1, 4}, {2, 3}}, {{3, 4}}});
    const auto acyclic = acyclic_to_plurigraph(Graph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}));
    check("acyclic encoding of the 4-cycle adds {13,24}",
          detail::pluriedge_lists(acyclic) ==
              std::vector<std::vector<Edge>>{{{1, 2}}, {{1, 3}, {2, 4}}, {{1, 4}}, {{2, 3}}, {{3, 4}}});
    const auto star = star_to_plurigraph(Graph(4, {{1, 2}, {2, 3}, {3, 4}}));
    check("star encoding of the path 1-2-3-4 adds {13,24}",
          detail::pluriedge_lists(star) == std::vector<std::vector<Edge>>{{{1, 2}}, {{1, 3}, {2, 4}}, {{2, 3}}, {{3, 4}}});
  }

  // Hypertrees H1..H4.
  {
    const auto h = builtin_examples();
    bool all_trees = true, all_formula = true, all_degrees = true, all_identities = true;
    std::vector<SymExpr> x;
    for (const auto& t : h) {
      all_trees = all_trees && t.size() == 21 && t.is_uniform(3) && is_hypertree(t) && t.num_edges() == 10;
      x.push_back(csf(t));
      all_identities = all_identities && coefficient_identities(x.back(), 21, 3, 10).holds();
      all_degrees = all_degrees && degree_sequence_from_csf(x.back(), 3) == degree_sequence(t);
      for (std::int64_t k = 0; k <= 5; ++k) {
        Coeff expected = k;
        for (int i = 0; i < 10; ++i) expected *= k * k - 1;
        all_formula = all_formula && eval_principal(x.back(), k) == expected;
      }
    }
    check("H1, H2, H3, H4 are 3-uniform hypertrees on 21 vertices with 10 hyperedges", all_trees);
    check("csf(H1) = csf(H2)", x[0] == x[1]);
    check("csf(H3) = csf(H4)", x[2] == x[3]);
    check("csf(H1) != csf(H3)", !(x[0] == x[2]));
    check("H1 and H2 are not isomorphic", !is_isomorphic(h[0], h[1]));
    check("H3 and H4 are not isomorphic", !is_isomorphic(h[2], h[3]));
    check("-c_(3,1^18) = 10 and the binomial coefficient identities hold", all_identities);
    check("degree sequences are recovered from the csf", all_degrees);
    check("P_H(t) = t(t^2-1)^10 for t = 0..5", all_formula);
  }
  return out;
}

}  // namespace plurichrome

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <vector>

#include "plurichrome/scheduling.hpp"

using namespace plurichrome;

namespace {

SetComposition C(const char* s) { return parse_set_composition(s); }

NCQSymExpr sum_of(int n, std::initializer_list<const char*> comps) {
  NCQSymExpr e(n);
  for (const char* c : comps) e.add(C(c), 1);
  return e;
}

Node random_node(std::mt19937& rng, int n, int depth) {
  auto var = [&] { return 1 + static_cast<int>(rng() % static_cast<unsigned>(n)); };
  const unsigned pick = rng() % (depth > 0 ? 9u : 5u);
  switch (pick) {
    case 0: return Node::le(var(), var());
    case 1: return Node::lt(var(), var());
    case 2: return Node::eq(var(), var());
    case 3: return Node::ne(var(), var());
    case 4: return rng() % 2 ? Node::le(var(), var()) : Node::truth();
    case 5: return Node::negate(random_node(rng, n, depth - 1));
    case 6:
    case 7: {
      std::vector<Node> kids;
      const int k = 1 + static_cast<int>(rng() % 3);
      for (int i = 0; i < k; ++i) kids.push_back(random_node(rng, n, depth - 1));
      return pick == 6 ? Node::all_of(std::move(kids)) : Node::any_of(std::move(kids));
    }
    default: return Node::falsity();
  }
}

Node random_edge_like(std::mt19937& rng, int n, int max_atoms) {
  std::vector<Node> atoms;
  const int k = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_atoms));
  for (int i = 0; i < k; ++i)
    atoms.push_back(Node::ne(1 + static_cast<int>(rng() % static_cast<unsigned>(n)), 1 + static_cast<int>(rng() % static_cast<unsigned>(n))));
  return atoms.size() == 1 ? atoms.front() : Node::any_of(std::move(atoms));
}

Formula random_graph_like(std::mt19937& rng, int n, int max_clauses) {
  const int m = static_cast<int>(rng() % static_cast<unsigned>(max_clauses + 1));
  std::vector<Node> clauses;
  for (int i = 0; i < m; ++i) clauses.push_back(random_edge_like(rng, n, 3));
  if (clauses.empty()) return Formula(n, Node::truth());
  if (clauses.size() == 1) return Formula(n, clauses.front());
  return Formula(n, Node::all_of(std::move(clauses)));
}

// A contractible clause on [n]: classes are consecutive runs in the top interval.
Node random_contractible(std::mt19937& rng, int n) {
  const int size = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
  std::vector<Node> atoms;
  int hi = n;
  const int low = n - size + 1;
  while (hi >= low) {
    const int len = 1 + static_cast<int>(rng() % static_cast<unsigned>(hi - low + 1));
    const int lo = hi - len + 1;
    if (len == 1) atoms.push_back(Node::ne(lo, lo));
    for (int v = lo; v < hi; ++v) atoms.push_back(Node::ne(v, v + 1));
    hi = lo - 1;
  }
  return atoms.size() == 1 ? atoms.front() : Node::any_of(std::move(atoms));
}

std::vector<Coloring> all_colorings(int n, int c) {
  std::vector<Coloring> out;
  Coloring f(static_cast<std::size_t>(n), 1);
  while (true) {
    out.push_back(f);
    int i = n - 1;
    while (i >= 0 && f[static_cast<std::size_t>(i)] == c) f[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++f[static_cast<std::size_t>(i)];
  }
  return out;
}

const Formula s_prime() { return parse_formula("(x1 <= x2) & (x2 <= x3) & (x3 <= x4)", 4); }

}  // namespace

TEST(Parse, Examples) {
  EXPECT_EQ(parse_formula_tree("(x1 <= x2) & (x2 <= x3)"), Node::all_of({Node::le(1, 2), Node::le(2, 3)}));
  EXPECT_EQ(parse_formula_tree("(x1 != x2) | (x3 != x4)"), Node::any_of({Node::ne(1, 2), Node::ne(3, 4)}));
  EXPECT_THROW(parse_formula_tree("x1 <"), parse_error);
}

TEST(Parse, PrecedenceAndConstants) {
  EXPECT_EQ(parse_formula_tree("x1<x2 | x2=x3 & !x3<=x1"),
            Node::any_of({Node::lt(1, 2), Node::all_of({Node::eq(2, 3), Node::negate(Node::le(3, 1))})}));
  EXPECT_EQ(parse_formula_tree("TRUE & (FALSE | x1 != x1)"), Node::all_of({Node::truth(), Node::any_of({Node::falsity(), Node::ne(1, 1)})}));
  EXPECT_EQ(parse_formula_tree("!!(x1<=x2)"), Node::negate(Node::negate(Node::le(1, 2))));
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_formula_tree(""), parse_error);
  EXPECT_THROW(parse_formula_tree("x0 <= x1"), parse_error);
  EXPECT_THROW(parse_formula_tree("xa <= x1"), parse_error);
  EXPECT_THROW(parse_formula_tree("(x1 <= x2"), parse_error);
  EXPECT_THROW(parse_formula_tree("x1 <= x2 x3"), parse_error);
  EXPECT_THROW(parse_formula_tree("x1 >= x2"), parse_error);
  try {
    parse_formula_tree("x1 <= x2 & y3");
    FAIL();
  } catch (const parse_error& e) {
    EXPECT_EQ(e.position(), 12u);
  }
  EXPECT_THROW(parse_formula("x1 <= x5", 4), invalid_input);
  EXPECT_EQ(parse_formula("x1 <= x5").size(), 5);
}

TEST(ToString, RoundTrip) {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const Formula f(4, parse_formula_tree(to_string(random_node(rng, 4, 3))));
    EXPECT_EQ(parse_formula(to_string(f), 4), f) << to_string(f);
  }
  EXPECT_EQ(to_string(s_prime()), "(x1 <= x2) & (x2 <= x3) & (x3 <= x4)");
}

TEST(Evaluate, Examples) {
  EXPECT_TRUE(evaluate(Formula(2, Node::le(1, 2)), {1, 2}));
  for (const auto& f : all_colorings(2, 3)) EXPECT_FALSE(evaluate(Formula(2, Node::ne(1, 1)), f));
  EXPECT_TRUE(evaluate(s_prime(), {1, 1, 2, 2}));
  EXPECT_THROW(evaluate(s_prime(), {1, 2}), invalid_input);
}

TEST(Evaluate, MacrosAgreeWithExpansion) {
  for (int n = 1; n <= 4; ++n)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j)
        for (const Node& atom : {Node::lt(i, j), Node::eq(i, j), Node::ne(i, j)})
          for (const auto& f : all_colorings(n, 3)) EXPECT_EQ(evaluate(atom, f), evaluate(expand_macros(atom), f));
  std::mt19937 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Node s = random_node(rng, 3, 3);
    for (const auto& f : all_colorings(3, 3)) EXPECT_EQ(evaluate(s, f), evaluate(expand_macros(s), f));
  }
}

TEST(Solves, Examples) {
  EXPECT_TRUE(solves(s_prime(), C("(1,2,34)")));
  EXPECT_FALSE(solves(s_prime(), C("(4,3,2,1)")));
  EXPECT_TRUE(solves(Formula(3, Node::truth()), C("(3,12)")));
  EXPECT_THROW(solves(s_prime(), C("(1,2)")), invalid_input);
}

TEST(SchedulingNcqsym, Examples) {
  EXPECT_EQ(scheduling_ncqsym(s_prime()),
            sum_of(4, {"(1234)", "(1,234)", "(12,34)", "(123,4)", "(1,2,34)", "(1,23,4)", "(12,3,4)", "(1,2,3,4)"}));
  EXPECT_TRUE(scheduling_ncqsym(Formula(3, Node::falsity())).is_zero());
  EXPECT_EQ(scheduling_ncqsym(parse_formula("x1 <= x2", 2)), sum_of(2, {"(12)", "(1,2)"}));
  EXPECT_THROW(scheduling_ncqsym(Formula(10, Node::truth())), cap_exceeded);
}

TEST(EdgeLike, Recognition) {
  EXPECT_EQ(is_edge_like(parse_formula_tree("(x1 != x2) | (x3 != x4)")), (std::vector<IndexPair>{{1, 2}, {3, 4}}));
  EXPECT_FALSE(is_edge_like(parse_formula_tree("x1 <= x2")).has_value());
  EXPECT_FALSE(is_edge_like(parse_formula_tree("!(x1 = x2)")).has_value());
  EXPECT_FALSE(is_graph_like(parse_formula_tree("(x1 != x2) & (x1 <= x2)")).has_value());
  EXPECT_EQ(is_graph_like(parse_formula_tree("TRUE"))->size(), 0u);
  EXPECT_EQ(is_graph_like(parse_formula_tree("x1 != x2 & (x2 != x3 | x1 != x3)"))->size(), 2u);
}

TEST(PlurigraphCorrespondence, Examples) {
  const auto g = Plurigraph::from_edge_lists(4, {{{1, 2}}, {{3, 4}}, {{1, 4}, {2, 3}}});
  const auto s = from_plurigraph(g);
  EXPECT_EQ(is_graph_like(s.root())->size(), 3u);
  EXPECT_EQ(to_plurigraph(s), g);
  EXPECT_EQ(to_plurigraph(parse_formula("(x1 != x2) & (x3 != x4) & ((x1 != x4) | (x2 != x3))", 4)), g);
  EXPECT_EQ(from_plurigraph(Plurigraph(3)).root(), Node::truth());
  EXPECT_THROW(to_plurigraph(parse_formula("x1 <= x2", 2)), invalid_input);
}

TEST(PlurigraphCorrespondence, RoundTripRandom) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto s = random_graph_like(rng, 1 + static_cast<int>(rng() % 6), 4);
    const auto g = to_plurigraph(s);
    EXPECT_EQ(to_plurigraph(from_plurigraph(g)), g);
  }
}

TEST(PlurigraphCorrespondence, SchedulingFunctionIsChromatic) {
  std::mt19937 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const auto s = random_graph_like(rng, 1 + static_cast<int>(rng() % 6), 4);
    const auto q = scheduling_ncqsym(s);
    EXPECT_EQ(q, ncsym_to_ncqsym(chromatic_ncsym_enum(to_plurigraph(s)))) << to_string(s);
    for (const auto& [f, c] : q.terms().terms())
      for_each_block_ordering(f.as_partition(), [&](const SetComposition& g) { EXPECT_EQ(q.coefficient(g), c); });
  }
}

TEST(SimClasses, Examples) {
  EXPECT_EQ(sim_classes(parse_formula_tree("(x1 != x2) | (x3 != x4)"), 4), (std::vector<Block>{{1, 2}, {3, 4}}));
  EXPECT_EQ(sim_classes(parse_formula_tree("(x1 != x2) | (x2 != x3)"), 3), (std::vector<Block>{{1, 2, 3}}));
  EXPECT_EQ(sim_classes(parse_formula_tree("x1 != x1"), 2), (std::vector<Block>{{1}}));
  EXPECT_THROW(sim_classes(parse_formula_tree("x1 <= x2"), 2), invalid_input);
}

TEST(ContractibleClause, Examples) {
  const auto a = is_contractible_clause(parse_formula_tree("(x1 != x2) | (x3 != x4)"), 4);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(a->classes, (std::vector<Block>{{3, 4}, {1, 2}}));
  EXPECT_EQ(a->sequence, (std::vector<int>{1, 1}));
  EXPECT_FALSE(is_contractible_clause(parse_formula_tree("(x1 != x3) | (x2 != x4)"), 4).has_value());
  const auto b = is_contractible_clause(parse_formula_tree("x1 != x2"), 2);
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->classes, (std::vector<Block>{{1, 2}}));
  EXPECT_EQ(b->sequence, (std::vector<int>{1}));
  EXPECT_FALSE(is_contractible_clause(parse_formula_tree("x1 != x2"), 3).has_value());
  const auto c = is_contractible_clause(parse_formula_tree("(x5 != x6) | (x4 != x4) | (x2 != x3)"), 6);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->sequence, (std::vector<int>{1, 0, 1}));
  EXPECT_FALSE(is_contractible_clause(parse_formula_tree("x1 <= x2"), 2).has_value());
}

TEST(ContractFormula, Examples) {
  const auto s = parse_formula("((x1 <= x2) & (x1 < x3)) | ((x3 != x4) & (x4 <= x5))", 5);
  const std::vector<int> r{2, 1};
  EXPECT_EQ(contract_formula(s, r), parse_formula("x1 < x2", 2));
  EXPECT_EQ(contract_formula(s, std::vector<int>{}), s);
  EXPECT_EQ(contract_formula(s_prime(), std::vector<int>{1, 1}), parse_formula("x1 <= x2", 2));
  EXPECT_THROW(contract_formula(s_prime(), std::vector<int>{3, 1}), invalid_input);
}

TEST(Simplify, ConstantFolding) {
  EXPECT_EQ(simplify(parse_formula_tree("(x1 <= x1) & (x1 < x2)")), Node::lt(1, 2));
  EXPECT_EQ(simplify(parse_formula_tree("(x2 != x2) | !(x1 = x1)")), Node::falsity());
  EXPECT_EQ(simplify(parse_formula_tree("(x1 != x2) | (x1 < x1)")), Node::ne(1, 2));
  EXPECT_EQ(simplify(parse_formula_tree("(x1 <= x2) | (x2 <= x2)")), Node::truth());
  EXPECT_EQ(simplify(parse_formula_tree("!!(x1 <= x2)")), Node::negate(Node::negate(Node::le(1, 2))));
}

TEST(Delcon, WorkedExample) {
  const auto c = parse_formula_tree("(x1 != x2) | (x3 != x4)");
  const auto s2 = contract_formula(s_prime(), std::vector<int>{1, 1});
  EXPECT_EQ(scheduling_ncqsym(s2), sum_of(2, {"(12)", "(1,2)"}));
  EXPECT_EQ(induct(scheduling_ncqsym(s2), std::vector<int>{1, 1}), sum_of(4, {"(1234)", "(12,34)"}));
  const auto expected = sum_of(4, {"(1,234)", "(123,4)", "(1,2,34)", "(1,23,4)", "(12,3,4)", "(1,2,3,4)"});
  EXPECT_EQ(delcon_ncqsym(s_prime(), c), expected);
  EXPECT_EQ(scheduling_ncqsym(Formula(4, Node::all_of({s_prime().root(), c}))), expected);
}

TEST(Delcon, SmallCases) {
  EXPECT_EQ(delcon_ncqsym(Formula(2, Node::truth()), Node::ne(1, 2)), sum_of(2, {"(1,2)", "(2,1)"}));
  EXPECT_THROW(delcon_ncqsym(Formula(4, Node::truth()), parse_formula_tree("(x1 != x3) | (x2 != x4)")), invalid_input);
}

TEST(Delcon, NegatedClauseSplit) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const Formula sp(n, random_node(rng, n, 3));
    const Node c = random_node(rng, n, 2);
    const auto with_c = scheduling_ncqsym(Formula(n, Node::all_of({sp.root(), c})));
    const auto with_not_c = scheduling_ncqsym(Formula(n, Node::all_of({sp.root(), Node::negate(c)})));
    EXPECT_EQ(scheduling_ncqsym(sp), with_c + with_not_c);
  }
}

TEST(Delcon, EdgeLikeLift) {
  std::mt19937 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const Formula sp(n, random_node(rng, n, 3));
    const Node c = random_contractible(rng, n);
    const auto cc = is_contractible_clause(c, n);
    ASSERT_TRUE(cc.has_value()) << to_string(c);
    std::set<SetComposition> lhs, rhs;
    const Formula neg(n, Node::all_of({sp.root(), Node::negate(c)}));
    for (const auto& f : set_compositions(n))
      if (solves(neg, f)) lhs.insert(f);
    const auto down = contract_formula(sp, cc->sequence);
    for (const auto& g : set_compositions(down.size()))
      if (solves(down, g)) rhs.insert(induct_composition(g, cc->sequence));
    EXPECT_EQ(lhs, rhs) << to_string(sp) << " with " << to_string(c);
  }
}

TEST(Delcon, SingleStepAgainstEnumeration) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 6);
    const Formula sp(n, random_node(rng, n, 3));
    const Node c = random_contractible(rng, n);
    EXPECT_EQ(delcon_ncqsym(sp, c), scheduling_ncqsym(Formula(n, Node::all_of({sp.root(), c}))));
  }
}

TEST(Delcon, RecursiveWithRelabeling) {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 150; ++trial) {
    const auto s = random_graph_like(rng, 1 + static_cast<int>(rng() % 6), 4);
    EXPECT_EQ(scheduling_ncqsym_delcon(s), scheduling_ncqsym(s)) << to_string(s);
  }
  EXPECT_THROW(scheduling_ncqsym_delcon(parse_formula("x1 <= x2", 2)), invalid_input);
}

TEST(Relabel, PermutesSolutions) {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    const Formula s(n, random_node(rng, n, 3));
    Permutation d = identity_permutation(n);
    std::shuffle(d.begin(), d.end(), rng);
    EXPECT_EQ(scheduling_ncqsym(relabel(s, d)), permute(scheduling_ncqsym(s), d));
  }
}

TEST(Relabel, MakesClausesContractible) {
  std::mt19937 rng(10);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const Node c = random_edge_like(rng, n, 4);
    const auto d = contractible_relabeling(c, n);
    check_permutation(d, n);
    EXPECT_TRUE(is_contractible_clause(relabel(Formula(n, c), d).root(), n).has_value()) << to_string(c);
  }
}

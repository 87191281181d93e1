#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace tww;

TEST_CASE("signature validation") {
  CHECK_THROWS_AS(Signature(std::vector<Symbol>{}), SignatureError);
  CHECK_THROWS_AS((Signature{{"E", 2}, {"E", 1}}), SignatureError);
  CHECK_THROWS_AS((Signature{{"T", 3}}), SignatureError);
  Signature s{{"E", 2}, {"P", 1}};
  CHECK(s.index_of("P") == 1);
  CHECK_FALSE(s.all_binary());
  CHECK_THROWS_AS(s.index_of("Q"), SignatureError);
}

TEST_CASE("structures reject reflexive pairs and foreign elements") {
  RelStructure r(Signature{{"R", 2}}, {"a", "b"});
  CHECK_THROWS_AS(r.add("R", {"a", "a"}), ArgumentError);
  CHECK_THROWS_AS(r.add("R", {"a", "x"}), DomainError);
  CHECK_THROWS_AS(RelStructure(Signature{{"R", 2}}, {"a", "a"}), DomainError);
}

TEST_CASE("induced substructure") {
  auto g = fx::fig1_graph();
  auto sub = Graph(induced_substructure(g.structure(), {"a", "b", "d"}));
  CHECK(sub.edge_count() == 3);
  CHECK(induced_substructure(g.structure(), g.vertices()).labeled_equal(g.structure()));
  auto p4 = Graph::from_edges({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
  CHECK(Graph(induced_substructure(p4.structure(), {"a", "c"})).edge_count() == 0);
  CHECK_THROWS_AS(induced_substructure(p4.structure(), {"z"}), DomainError);

  std::mt19937 rng(7);
  for (int it = 0; it < 30; ++it) {
    auto s = fx::random_structure(6, 2, 0.3, rng);
    std::vector<std::string> x{"0", "2", "3", "5"};
    auto once = induced_substructure(s, x);
    CHECK(induced_substructure(once, x).labeled_equal(once));
    CHECK(gaifman(once).structure().labeled_equal(
        induced_substructure(gaifman(s).structure(), x)));
  }
}

TEST_CASE("gaifman graph") {
  RelStructure r(Signature{{"R", 2}}, {"a", "b", "c"});
  r.add("R", {"a", "b"});
  auto g = gaifman(r);
  CHECK(g.edge_count() == 1);
  CHECK(g.adjacent(0, 1));
  CHECK(g.adjacent(1, 0));
  auto f = fx::fig1_graph();
  CHECK(gaifman(f.structure()).structure().labeled_equal(f.structure()));
}

TEST_CASE("degeneracy") {
  CHECK(degeneracy(fx::complete(5)).value == 4);
  CHECK(degeneracy(fx::path(6)).value == 1);
  auto f = fx::fig1_graph();
  int oracle_value = oracle::degeneracy_by_orders(f);
  CHECK(oracle_value == 3);
  CHECK(degeneracy(f).value == oracle_value);
  CHECK(degeneracy(f).order.size() == 7);

  std::mt19937 rng(3);
  for (int it = 0; it < 40; ++it) {
    auto g = fx::random_graph(7, 0.45, rng);
    auto d = degeneracy(g);
    CHECK(d.value == oracle::degeneracy_by_orders(g));
    std::size_t maxdeg = 0;
    for (int v = 0; v < 7; ++v) maxdeg = std::max(maxdeg, g.degree(v));
    CHECK(static_cast<std::size_t>(d.value) <= maxdeg);
  }
}

TEST_CASE("isomorphism") {
  auto p4 = Graph::from_edges({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "d"}});
  auto p4b = Graph::from_edges({"w", "x", "y", "z"}, {{"y", "w"}, {"w", "z"}, {"z", "x"}});
  auto claw = Graph::from_edges({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"a", "d"}});
  auto w = isomorphism(p4.structure(), p4b.structure());
  REQUIRE(w);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      CHECK(p4.adjacent(i, j) == p4b.adjacent((*w)[static_cast<std::size_t>(i)], (*w)[static_cast<std::size_t>(j)]));
  CHECK_FALSE(are_isomorphic(p4.structure(), claw.structure()));

  auto s21 = Permutation::from_one_line({2, 1}).as_structure();
  auto s12 = Permutation::from_one_line({1, 2}).as_structure();
  CHECK_FALSE(are_isomorphic(s21, s12));
  CHECK_THROWS_AS(are_isomorphic(s21, p4.structure()), SignatureError);
}

TEST_CASE("rooted tree and tree order") {
  // 0 root with children 1,2; 1 has children 3,4
  RootedTree t({"r", "x", "c", "a", "b"}, {-1, 0, 0, 1, 1});
  CHECK(t.root() == 0);
  CHECK(t.is_binary());
  CHECK(t.lca(3, 2) == 0);
  CHECK(t.lca(3, 4) == 1);
  CHECK(t.ancestor(0, 4));
  CHECK_FALSE(t.ancestor(2, 4));
  CHECK(t.leaves() == std::vector<int>{2, 3, 4});
  TreeOrder o(t);
  auto s = o.as_structure();
  auto back = TreeOrder::from_relation(s);
  for (int i = 0; i < 5; ++i) CHECK(back.tree().parent(i) == t.parent(i));

  RelStructure bad(Signature{{"prec", 2}}, {"a", "b", "c"});
  bad.add("prec", {"a", "c"});
  bad.add("prec", {"b", "c"});
  CHECK_THROWS_AS(TreeOrder::from_relation(bad), ArgumentError);
  CHECK_THROWS_AS(RootedTree({"a", "b"}, {-1, -1}), ArgumentError);
}

TEST_CASE("permutations") {
  auto p = Permutation::from_one_line({3, 1, 2});
  CHECK(p.one_line() == std::vector<int>{3, 1, 2});
  CHECK(p.less1(p.index_of("1"), p.index_of("2")));
  CHECK(p.less2(p.index_of("2"), p.index_of("1")));
  CHECK_THROWS_AS(Permutation::from_one_line({1, 1}), ArgumentError);
  CHECK_THROWS_AS(Permutation({"a", "b"}, {"a", "b"}, {"a"}), ArgumentError);
}

TEST_CASE("ordered graph round trip through structure") {
  auto g = fx::path(4);
  OrderedGraph og(g, {2, 0, 3, 1});
  auto back = OrderedGraph::from_structure(og.as_structure());
  CHECK(back.order() == og.order());
  CHECK(back.order_isomorphic(og));
}

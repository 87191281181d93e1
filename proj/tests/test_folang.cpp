#include <fstream>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "tww/fullmodel.hpp"
#include "tww/orderpair.hpp"
#include "tww/permcodec.hpp"
#include "tww/folang.hpp"

using namespace tww;
using namespace tww::fo;

namespace {

FormulaFile load(const std::string& name) {
  std::ifstream in(std::string(TWW_DATA_DIR) + "/formulas/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_formula_file(ss.str());
}

using Named = std::set<std::vector<std::string>>;

Named named(const RelStructure& s, const std::set<Tuple>& ts) {
  Named out;
  for (const auto& t : ts) {
    std::vector<std::string> v;
    for (int e : t) v.push_back(s.name(e));
    out.insert(v);
  }
  return out;
}

Named named(const RelStructure& s, const std::string& sym) { return named(s, s.tuples(s.signature().index_of(sym))); }

Named eval_named(const Macro& m, const RelStructure& s) { return named(s, evaluate(m.body, s, m.params)); }

// The tree order plus a unary mark on the chosen first children.
RelStructure with_mark(const TreeOrder& t, const std::set<int>& marks) {
  auto base = t.as_structure();
  RelStructure s(Signature{{"prec", 2}, {"M", 1}}, base.domain());
  for (const auto& tup : base.tuples(0)) s.add(0, tup);
  for (int v : marks) s.add(1, {v});
  return s;
}

std::set<int> random_marks(const RootedTree& y, std::mt19937& rng) {
  std::set<int> m;
  for (int v : y.internal_nodes()) m.insert(y.children(v)[rng() % 2]);
  return m;
}

// Quantifier-free formula over R, S and equality in variables x, y, z.
std::string random_qf(int depth, std::mt19937& rng) {
  const char* vars[] = {"x", "y", "z"};
  auto var = [&] { return std::string(vars[rng() % 3]); };
  if (depth == 0 || rng() % 4 == 0) {
    switch (rng() % 4) {
      case 0: return var() + " = " + var();
      case 1: return "R(" + var() + ", " + var() + ")";
      case 2: return "S(" + var() + ", " + var() + ")";
      default: return rng() % 2 ? "true" : "false";
    }
  }
  switch (rng() % 4) {
    case 0: return "!(" + random_qf(depth - 1, rng) + ")";
    case 1: return "(" + random_qf(depth - 1, rng) + ") & (" + random_qf(depth - 1, rng) + ")";
    case 2: return "(" + random_qf(depth - 1, rng) + ") | (" + random_qf(depth - 1, rng) + ")";
    default: return "(" + random_qf(depth - 1, rng) + ") -> (" + random_qf(depth - 1, rng) + ")";
  }
}

std::string random_formula(int depth, std::mt19937& rng) {
  if (depth > 0 && rng() % 3 == 0) {
    const char* q = rng() % 2 ? "exists " : "forall ";
    const char* v[] = {"x", "y", "z"};
    return std::string(q) + v[rng() % 3] + " (" + random_formula(depth - 1, rng) + ")";
  }
  if (depth > 0 && rng() % 2 == 0)
    return "(" + random_formula(depth - 1, rng) + ") & !(" + random_formula(depth - 1, rng) + ")";
  return random_qf(2, rng);
}

}  // namespace

TEST_CASE("parsing") {
  auto f = parse_formula("exists y (y > x)");
  CHECK(f.quantifier_depth() == 1);
  CHECK(f.free_vars() == std::vector<std::string>{"x"});
  REQUIRE(f.root()->kind == Node::Kind::Exists);
  CHECK(f.root()->a->name == "<");
  CHECK(f.root()->a->vars == std::vector<std::string>{"x", "y"});

  auto r = parse_formula("exists u exists v (u <= x & v <= y & Z_R(u,v))");
  CHECK(r.quantifier_depth() == 2);
  CHECK(r.free_vars() == std::vector<std::string>{"x", "y"});
  CHECK(r.symbols() == std::set<std::string>{"Z_R"});

  try {
    parse_formula("exists (x");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 7);
  }
  CHECK_THROWS_AS(parse_formula("R(x, y"), ParseError);
  CHECK_THROWS_AS(parse_formula("x"), ParseError);
  CHECK_THROWS_AS(parse_formula("R(x) &"), ParseError);
  CHECK_THROWS_AS(parse_formula("R(x) $ S(x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("exists forall R(x)"), ParseError);
  CHECK_THROWS_AS(parse_formula("prec(x, y)"), ParseError);

  // precedence: & over |, | over ->, -> to the right
  auto p = parse_formula("A(x) | B(x) & C(x) -> D(x) -> E(x)");
  CHECK(p.root()->kind == Node::Kind::Implies);
  CHECK(p.root()->a->kind == Node::Kind::Or);
  CHECK(p.root()->a->b->kind == Node::Kind::And);
  CHECK(p.root()->b->kind == Node::Kind::Implies);
  // a quantifier binds one unary formula
  auto q = parse_formula("exists x A(x) & B(x)");
  CHECK(q.root()->kind == Node::Kind::And);
  CHECK(q.free_vars() == std::vector<std::string>{"x"});
  CHECK(parse_formula("x != y") == parse_formula("!(x = y)"));
}

TEST_CASE("signature checks") {
  Signature sig{{"E", 2}, {"P", 1}};
  CHECK_NOTHROW(check_signature(parse_formula("E(x, y) & P(x)"), sig));
  CHECK_THROWS_AS(check_signature(parse_formula("F(x, y)"), sig), SignatureError);
  CHECK_THROWS_AS(check_signature(parse_formula("E(x)"), sig), SignatureError);
  CHECK_THROWS_AS(check_signature(parse_formula("x < y"), sig), SignatureError);
  CHECK_NOTHROW(check_signature(parse_formula("x < y"), Signature{{"prec", 2}}));
  auto s = Graph::from_edges({"a", "b"}, {{"a", "b"}}).structure();
  CHECK_THROWS_AS(evaluate(parse_formula("E(x, y)"), s, {"x"}), ArgumentError);
  CHECK_THROWS_AS(holds(parse_formula("E(x, y)"), s, {{"x", 0}, {"y", 5}}), DomainError);
}

TEST_CASE("printing round-trips") {
  for (const char* text :
       {"exists y (y > x)", "A(x) | B(x) & C(x) -> D(x) -> E(x)", "(A(x) -> B(x)) -> C(x)", "!(A(x) & B(x))",
        "!!x = y", "forall x exists y (E(x, y) | x preceq y)", "(A(x) | B(x)) & C(x)", "true & !false",
        "exists x (A(x) & B(x))", "A(x) & (B(x) & C(x))"}) {
    auto f = parse_formula(text);
    CHECK_MESSAGE(parse_formula(f.to_string()) == f, text);
  }
  CHECK(parse_formula("(A(x) | B(x)) & C(x)").to_string() == "(A(x) | B(x)) & C(x)");
  CHECK(parse_formula("exists x (A(x) & B(x))").to_string() == "exists x (A(x) & B(x))");
  std::mt19937 rng(91);
  for (int it = 0; it < 300; ++it) {
    auto f = parse_formula(random_formula(3, rng));
    CHECK(parse_formula(f.to_string()) == f);
  }
}

TEST_CASE("macros and the infimum") {
  auto file = parse_formula_file(
      "# adjacency\n"
      "nb(x) := exists y E(x, y)\n"
      "also(y) := nb(y) & exists x E(y, x)   # reuses the bound name\n"
      "pair(a, b) := E(a, b)\n");
  CHECK(file.formulas.size() == 3);
  CHECK(file.get("also").params == std::vector<std::string>{"y"});
  auto g = Graph::from_edges({"a", "b", "c"}, {{"a", "b"}}).structure();
  CHECK(eval_named(file.get("also"), g) == Named{{"a"}, {"b"}});
  auto t = parse_formula("pair(y, x) & nb(x)", file.table());
  CHECK(named(g, evaluate(t, g, {"x", "y"})) == Named{{"a", "b"}, {"b", "a"}});
  CHECK_THROWS_AS(parse_formula("pair(x)", file.table()), ParseError);
  CHECK_THROWS_AS(parse_formula_file("f(x) := E(x, y)\n"), ParseError);
  CHECK_THROWS_AS(parse_formula_file("f := true\nf := false\n"), ParseError);
  CHECK_THROWS_AS(parse_formula_file("f true\n"), ParseError);
  try {
    parse_formula_file("f := true\ng := (x\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 17);
  }

  std::mt19937 rng(93);
  auto inf = parse_formula("inf(u, v, w)");
  for (int it = 0; it < 10; ++it) {
    TreeOrder t(fx::random_binary_tree(2 + it % 5, rng));
    auto s = t.as_structure();
    std::set<Tuple> expect;
    for (int u = 0; u < static_cast<int>(t.size()); ++u)
      for (int v = 0; v < static_cast<int>(t.size()); ++v) expect.insert({u, v, t.inf(u, v)});
    CHECK(evaluate(inf, s, {"u", "v", "w"}) == expect);
  }
}

TEST_CASE("decoding formulas of full models") {
  auto file = load("full_model.fo");
  RootedTree cherry({"r", "u", "v"}, {-1, 0, 0});
  auto s = to_full(TwinModel(cherry, Signature{{"E", 2}}, {{}})).as_structure();
  CHECK(eval_named(file.get("rho0"), s) == Named{{"u"}, {"v"}});

  auto fig = to_full(fx::fig4_center_model());
  Interpretation in;
  in.domain = file.get("rho0").body;
  in.relations.push_back({{"E", 2}, file.get("rho_E").params, file.get("rho_E").body});
  CHECK(apply_interpretation(in, fig.as_structure()).labeled_equal(decode_S(fig)));

  // random models over two symbols; the formula for R is the E one renamed
  std::mt19937 rng(95);
  for (int it = 0; it < 100; ++it) {
    auto rm = fx::random_ranked_model(2 + it % 5, 2, 0.4, rng);
    auto f = to_full(rm.model);
    Interpretation si;
    si.domain = file.get("rho0").body;
    for (const auto& sym : f.signature().symbols())
      si.relations.push_back(
          {sym, {"x", "y"}, parse_formula("exists u exists v (u preceq x & v preceq y & " + sym.name + "(u, v))")});
    auto a = apply_interpretation(si, f.as_structure());
    CHECK(a.labeled_equal(decode_S(f)));
    CHECK(a.labeled_equal(decode_structure(rm.model)));
  }
}

TEST_CASE("tree order formulas on the three-element order") {
  auto file = load("tree_order.fo");
  TreeOrder t(RootedTree({"r", "u", "v"}, {-1, 0, 0}));
  auto s = with_mark(t, {1});
  CHECK(eval_named(file.get("rho_E"), s) == Named{{"r", "u"}, {"u", "r"}, {"r", "v"}, {"v", "r"}});
  CHECK(eval_named(file.get("rho_lt"), s) == Named{{"r", "u"}, {"r", "v"}, {"u", "v"}});
}

TEST_CASE("tree order formulas agree with L and O") {
  auto file = load("tree_order.fo");
  auto check = [&](const TreeOrder& t, const std::set<int>& m) {
    auto s = with_mark(t, m);
    auto og = transduction_L(t, m).as_structure();
    CHECK(eval_named(file.get("rho_E"), s) == named(og, "E"));
    CHECK(eval_named(file.get("rho_lt"), s) == named(og, "lt"));
    auto back = transduction_O(transduction_L(t, m)).as_structure();
    CHECK(eval_named(file.get("rho_prec"), og) == named(back, "prec"));
  };
  // the 7-node complete tree
  TreeOrder seven(RootedTree({"r", "x", "y", "a", "b", "c", "d"}, {-1, 0, 0, 1, 1, 2, 2}));
  auto og = transduction_L(seven, {2, 3, 6}).as_structure();
  CHECK(eval_named(file.get("rho_prec"), og) == named(seven.as_structure(), "prec"));
  check(seven, {2, 3, 6});

  for (int leaves = 1; leaves <= 3; ++leaves)
    for (const auto& y : fx::all_binary_trees(leaves)) {
      std::mt19937 rng(static_cast<unsigned>(leaves));
      check(TreeOrder(y), random_marks(y, rng));
    }
  std::mt19937 rng(97);
  for (int it = 0; it < 40; ++it) {
    auto y = fx::random_binary_tree(1 + it % 6, rng);  // up to 11 nodes
    check(TreeOrder(y), random_marks(y, rng));
  }
}

TEST_CASE("reduct and Gaifman interpretations") {
  std::mt19937 rng(99);
  for (int it = 0; it < 30; ++it) {
    auto s = fx::random_structure(1 + it % 6, 2, 0.3, rng);
    auto r = apply_interpretation(reduct_interpretation(s.signature(), {"S"}), s);
    CHECK(r.labeled_equal(s.reduct({"S"})));
    auto g = apply_interpretation(gaifman_interpretation(s.signature()), s);
    CHECK(g.labeled_equal(gaifman(s).structure()));
  }
  auto none = apply_interpretation(gaifman_interpretation(Signature{{"P", 1}}),
                                   RelStructure(Signature{{"P", 1}}, {"a", "b"}));
  CHECK(none.tuple_count() == 0);
}

TEST_CASE("blowing and transductions") {
  std::mt19937 rng(101);
  auto s = fx::random_structure(3, 2, 0.5, rng);
  Transduction id;
  id.interpretation = reduct_interpretation(blow(s, 1).signature(), {"R", "S"});
  CHECK(apply_transduction(id, s).labeled_equal(s));

  auto b = blow(s, 2);
  CHECK(b.size() == 6);
  CHECK(b.name(1) == "0#2");
  const auto sim = b.signature().index_of("sim");
  CHECK(b.tuples(sim).size() == 6);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) CHECK((x != y && b.holds(sim, x, y)) == (x != y && x / 2 == y / 2));
  CHECK(b.tuples(b.signature().index_of("P_1")).size() == 3);
  CHECK(b.tuples(b.signature().index_of("R")).size() == 4 * s.tuples(0).size());
  CHECK_THROWS_AS(blow(s, 0), ArgumentError);

  // two copies, keep the marked ones, and link copies of one element
  Transduction t;
  t.blow = 2;
  t.marks = {"K"};
  t.interpretation.domain = parse_formula("K(x)");
  t.interpretation.relations.push_back({{"T", 2}, {"x", "y"}, parse_formula("sim(x, y) | R(x, y)")});
  auto out = apply_transduction(t, s, {{"K", {"0#1", "0#2", "1#1"}}});
  CHECK(out.size() == 3);
  CHECK(out.size() <= static_cast<std::size_t>(t.blow) * s.size());
  auto tn = named(out, "T");
  CHECK(tn.count({"0#1", "0#2"}) == 1);
  CHECK(tn.count({"0#2", "0#1"}) == 1);
  CHECK(tn.count({"0#1", "0#1"}) == 0);
  CHECK((tn.count({"0#1", "1#1"}) == 1) == s.holds(0, 0, 1));
  CHECK_THROWS_AS(apply_transduction(t, s, {{"Q", {}}}), ArgumentError);
}

TEST_CASE("unfold formulas agree with unfold") {
  std::mt19937 rng(103);
  for (int it = 0; it < 60; ++it) {
    auto s = fx::random_structure(1 + it % 6, 2, 0.35, rng);
    auto mg = mark_for_unfold(s);
    auto ms = mg.as_structure();
    int cmax = 0;
    while (mg.marks.count(color_mark(cmax + 1))) ++cmax;
    auto unfolded = unfold(mg, s.signature());
    for (const auto& sym : s.signature().symbols()) {
      std::string body;
      for (int c1 = 1; c1 <= cmax; ++c1)
        for (int c2 = 1; c2 <= cmax; ++c2) {
          if (c1 == c2) continue;
          auto m = anchor_mark(sym.name, {c1, c2});
          if (!ms.signature().find(m)) continue;
          if (!body.empty()) body += " | ";
          body += color_mark(c1) + "(x1) & " + color_mark(c2) + "(x2) & E(x1, x2) & (" + m + "(x1) | " + m + "(x2))";
        }
      auto rho = parse_formula(body.empty() ? "false" : body);
      CHECK(named(ms, evaluate(rho, ms, {"x1", "x2"})) == named(unfolded, sym.name));
      CHECK(named(unfolded, sym.name) == named(s, sym.name));
    }
  }
}

TEST_CASE("permutation decoding formulas agree with T2") {
  auto file = load("permutation.fo");
  Interpretation in;
  in.domain = file.get("rho0").body;
  in.relations.push_back({{"E", 2}, {"x", "y"}, file.get("rho_E").body});
  auto check = [&](const Permutation& p) {
    auto g = apply_interpretation(in, p.as_structure());
    CHECK(g.labeled_equal(decode_T2(p).graph().structure()));
  };
  std::string text;
  for (int v : fx::fig5_one_line()) text += std::to_string(v) + " ";
  check(parse_one_line_text(text + "\nM: 15 28 33\n"));
  std::mt19937 rng(105);
  for (int it = 0; it < 40; ++it) {
    auto g = fx::random_graph(2 + it % 6, 0.4, rng);
    std::vector<int> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    check(encode_T1(OrderedGraph(g, order), star_coloring(g)).perm);
  }
}

TEST_CASE("quantifier-free formulas commute with induced substructures") {
  std::mt19937 rng(107);
  for (int it = 0; it < 200; ++it) {
    auto s = fx::random_structure(2 + it % 5, 2, 0.4, rng);
    std::vector<std::string> keep;
    for (const auto& a : s.domain())
      if (rng() % 2) keep.push_back(a);
    auto sub = induced_substructure(s, keep);
    auto f = parse_formula(random_qf(3, rng));
    std::vector<std::string> vars{"x", "y", "z"};
    Named filtered;
    for (const auto& t : named(s, evaluate(f, s, vars))) {
      bool inside = std::all_of(t.begin(), t.end(),
                                [&](const std::string& a) { return std::find(keep.begin(), keep.end(), a) != keep.end(); });
      if (inside) filtered.insert(t);
    }
    CHECK(named(sub, evaluate(f, sub, vars)) == filtered);
  }
}

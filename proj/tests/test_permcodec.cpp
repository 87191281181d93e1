#include <algorithm>
#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "tww/permcodec.hpp"

using namespace tww;

namespace {

OrderedGraph identity_ordered(const Graph& g) {
  std::vector<int> order(g.size());
  std::iota(order.begin(), order.end(), 0);
  return OrderedGraph(g, order);
}

// Literal z-witness rule over all triples.
std::set<std::pair<int, int>> t2_oracle(const Permutation& p) {
  const int n = static_cast<int>(p.size());
  auto m = [&](int e) { return p.marked("M", e); };
  auto lt = [&](int ord, int a, int b) { return ord == 1 ? p.less1(a, b) : p.less2(a, b); };
  auto nothing_between = [&](int ord, int z, int x) {
    for (int y = 0; y < n; ++y)
      if (m(y) && lt(ord, z, y) && lt(ord, y, x)) return false;
    return true;
  };
  std::set<std::pair<int, int>> out;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x == y || !m(x) || !m(y)) continue;
      for (int z = 0; z < n; ++z) {
        if (m(z)) continue;
        for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 1}})
          if (lt(i, z, x) && lt(j, z, y) && nothing_between(i, z, x) && nothing_between(j, z, y))
            out.insert({std::min(x, y), std::max(x, y)});
      }
    }
  return out;
}

std::set<std::pair<int, int>> decoded_pairs(const T2Result& r) {
  std::set<std::pair<int, int>> out;
  const auto& g = r.graph.graph();
  for (const auto& t : g.structure().tuples(0)) {
    int a = r.elements[static_cast<std::size_t>(t[0])], b = r.elements[static_cast<std::size_t>(t[1])];
    out.insert({std::min(a, b), std::max(a, b)});
  }
  return out;
}

// Subset enumeration by bitmask; compares both orders directly.
bool contains_oracle(const Permutation& p, const Permutation& pat) {
  const int n = static_cast<int>(p.size()), k = static_cast<int>(pat.size());
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> sub;
    for (int e : p.order1())
      if (mask >> e & 1U) sub.push_back(e);
    bool ok = true;
    for (int a = 0; a < k && ok; ++a)
      for (int b = 0; b < k && ok; ++b) {
        int pa = pat.order1()[static_cast<std::size_t>(a)], pb = pat.order1()[static_cast<std::size_t>(b)];
        ok = p.less2(sub[static_cast<std::size_t>(a)], sub[static_cast<std::size_t>(b)]) == pat.less2(pa, pb);
      }
    if (ok) return true;
  }
  return false;
}

Permutation random_perm(int n, std::mt19937& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  std::shuffle(v.begin(), v.end(), rng);
  return Permutation::from_one_line(v);
}

bool same_ordered_graph(const OrderedGraph& a, const OrderedGraph& b) {
  if (!a.order_isomorphic(b)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.graph().name(a.order()[i]) != b.graph().name(b.order()[i])) return false;
  return true;
}

}  // namespace

TEST_CASE("T1 on tiny graphs") {
  auto one = identity_ordered(Graph::from_edges({"a"}, {}));
  auto e1 = encode_T1(one, star_coloring(one.graph()));
  CHECK(e1.perm.size() == 1);
  CHECK(e1.perm.marked("M", 0));

  auto edge = identity_ordered(Graph::from_edges({"a", "b"}, {{"a", "b"}}));
  StarColoring col{{1, 2}, 2};
  auto enc = encode_T1(edge, col);
  CHECK(enc.blow == 3);
  CHECK(enc.provenance == std::vector<std::pair<int, int>>{{0, 3}, {1, 1}, {1, 3}});
  CHECK(enc.perm.one_line() == std::vector<int>{2, 1, 3});
  CHECK(enc.perm.marks().at("M") == std::set<int>{0, 2});
  auto dec = decode_T2_witnessed(enc.perm);
  CHECK(dec.graph.graph().edge_count() == 1);
  CHECK(dec.witnesses.size() == 1);
  CHECK(dec.witnesses[0].z == 1);
  CHECK(same_ordered_graph(relabel(dec, enc, edge), edge));
}

TEST_CASE("T2 special cases") {
  auto p = Permutation::from_one_line({2, 3, 1});
  p.set_mark("M", {0, 1, 2});
  auto all = decode_T2(p);
  CHECK(all.size() == 3);
  CHECK(all.graph().edge_count() == 0);
  p.set_mark("M", {0, 1});
  CHECK_THROWS_AS(decode_T2(p), MarkError);
}

TEST_CASE("figure 5 permutation") {
  auto values = fx::fig5_one_line();
  std::string text;
  for (int v : values) text += std::to_string(v) + " ";
  text += "\nM: 15 28 33\n";
  auto p = parse_one_line_text(text);
  CHECK(p.size() == 33);
  CHECK(p.one_line() == values);
  auto r = decode_T2_witnessed(p);
  CHECK(r.graph.size() == 3);
  int a = p.index_of("15"), b = p.index_of("28");
  CHECK(decoded_pairs(r).count({a, b}) == 1);
  bool witnessed = false;
  for (const auto& w : r.witnesses)
    if (r.elements[static_cast<std::size_t>(w.u)] == a && r.elements[static_cast<std::size_t>(w.v)] == b) {
      // z precedes 15 in one order and 28 in the other, with no mark in between
      witnessed = !p.marked("M", w.z);
      CHECK(w.first == 1);
    }
  CHECK(witnessed);
  CHECK(decoded_pairs(r) == t2_oracle(p));

  CHECK(contains_pattern(p, Permutation::from_one_line({1, 2})));
  CHECK(contains_pattern(p, Permutation::from_one_line({2, 1})));
  std::string canonical;
  for (int v : values) canonical += (canonical.empty() ? "" : " ") + std::to_string(v);
  CHECK(to_one_line_text(p) == canonical + "\nM: 15 28 33\n");
}

TEST_CASE("one-line text errors") {
  CHECK_THROWS_AS(parse_one_line_text("1 2 x"), ParseError);
  try {
    parse_one_line_text("1 2 x");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse_one_line_text("1 1 2"), ArgumentError);
  CHECK_THROWS_AS(parse_one_line_text("2 1\nM: 3"), ParseError);
  CHECK_THROWS_AS(parse_one_line_text(""), ParseError);
  auto p = parse_one_line_text("  2 1\n\nM: 2\n");
  CHECK(p.marks().at("M") == std::set<int>{1});
}

TEST_CASE("T2 after T1 is the identity") {
  // every graph on at most 5 vertices in index order, greedy and minimum colorings
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t mask = 0; mask < (1ULL << (n * (n - 1) / 2)); ++mask) {
      auto og = identity_ordered(fx::graph_from_mask(n, mask));
      for (const auto& col : {star_coloring(og.graph()), min_star_coloring(og.graph())}) {
        auto enc = encode_T1(og, col);
        CHECK(enc.perm.size() <= static_cast<std::size_t>((col.c + 1) * n));
        CHECK(enc.perm.marked("M", enc.perm.order1().back()));
        auto dec = decode_T2_witnessed(enc.perm);
        CHECK(same_ordered_graph(relabel(dec, enc, og), og));
      }
    }
  std::mt19937 rng(81);
  for (int it = 0; it < 100; ++it) {
    int n = 2 + static_cast<int>(rng() % 29);
    auto g = fx::random_graph(n, 3.0 / n, rng);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    OrderedGraph og(g, order);
    auto col = star_coloring(g);
    auto enc = encode_T1(og, col);
    CHECK(enc.perm.size() <= static_cast<std::size_t>((col.c + 1) * n));
    auto dec = decode_T2_witnessed(enc.perm);
    CHECK(decoded_pairs(dec) == t2_oracle(enc.perm));
    CHECK(same_ordered_graph(relabel(dec, enc, og), og));
    auto text = parse_one_line_text(to_one_line_text(enc.perm));
    CHECK(text.one_line() == enc.perm.one_line());
    CHECK(decode_T2(text).graph().edge_count() == g.edge_count());
  }
}

TEST_CASE("T2 agrees with the literal rule on random marked permutations") {
  std::mt19937 rng(83);
  for (int it = 0; it < 300; ++it) {
    auto p = random_perm(1 + it % 12, rng);
    std::set<int> m{p.order1().back()};
    for (int e = 0; e < static_cast<int>(p.size()); ++e)
      if (rng() % 3 == 0) m.insert(e);
    p.set_mark("M", m);
    CHECK(decoded_pairs(decode_T2_witnessed(p)) == t2_oracle(p));
  }
}

TEST_CASE("T1 rejects invalid colorings") {
  auto og = identity_ordered(fx::path(4));
  CHECK_THROWS_AS(encode_T1(og, {{1, 2, 1, 2}, 2}), ColoringError);
}

TEST_CASE("pattern containment") {
  auto id = [](int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return Permutation::from_one_line(v);
  };
  auto p12 = Permutation::from_one_line({1, 2});
  for (int n = 2; n <= 6; ++n) CHECK(contains_pattern(id(n), p12));
  CHECK_FALSE(contains_pattern(Permutation::from_one_line({2, 1}), p12));

  std::mt19937 rng(85);
  for (int it = 0; it < 2000; ++it) {
    auto p = random_perm(1 + it % 7, rng);
    auto pat = random_perm(1 + it % 4, rng);
    bool expect = contains_oracle(p, pat);
    CHECK(contains_pattern(p, pat, false) == expect);
    CHECK(contains_pattern(p, pat, true) == expect);
  }
}

TEST_CASE("smallest avoided patterns") {
  std::vector<Permutation> small{Permutation::from_one_line({1}), Permutation::from_one_line({1, 2}),
                                 Permutation::from_one_line({2, 1})};
  auto a = smallest_avoided_pattern(small, 3);
  REQUIRE(a.has_value());
  CHECK(a->one_line() == std::vector<int>{1, 2, 3});

  std::vector<Permutation> all3;
  std::vector<int> v{1, 2, 3};
  do all3.push_back(Permutation::from_one_line(v));
  while (std::next_permutation(v.begin(), v.end()));
  CHECK_FALSE(smallest_avoided_pattern(all3, 3).has_value());

  // encodings of graphs of twin-width at most 2
  std::mt19937 rng(87);
  std::vector<Permutation> enc;
  while (enc.size() < 50) {
    auto g = fx::random_graph(4 + static_cast<int>(rng() % 5), 0.4, rng);
    if (exact_twinwidth(g.structure()).width > 2) continue;
    enc.push_back(encode_T1(identity_ordered(g), star_coloring(g)).perm);
  }
  auto avoided = smallest_avoided_pattern(enc, 7);
  CHECK(avoided.has_value());
  if (avoided) MESSAGE("avoided by all 50 encodings: length " << avoided->size());
}

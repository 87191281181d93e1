#include "fixtures.hpp"

#include <algorithm>

namespace fx {

using namespace tww;

Graph fig1_graph() {
  return Graph::from_edges({"a", "b", "c", "d", "e", "f", "g"},
                           {{"a", "b"}, {"a", "d"}, {"a", "f"}, {"b", "c"}, {"b", "d"},
                            {"b", "e"}, {"b", "f"}, {"c", "e"}, {"c", "f"}, {"d", "e"},
                            {"d", "g"}, {"e", "g"}, {"f", "g"}});
}

ContractionSequence fig1_sequence() {
  return {fig1_graph().structure(),
          {{"e", "f", "ef"},
           {"a", "d", "ad"},
           {"b", "ef", "bef"},
           {"ad", "g", "adg"},
           {"c", "bef", "bcef"},
           {"adg", "bcef", "abcdefg"}}};
}

namespace {

using Z = std::vector<std::pair<std::string, std::string>>;

Z symmetric(const Z& pairs) {
  Z out;
  for (const auto& [u, v] : pairs) {
    out.emplace_back(u, v);
    out.emplace_back(v, u);
  }
  return out;
}

RootedTree tree_of(const std::vector<std::pair<std::string, std::vector<std::string>>>& kids,
                   const std::string& root) {
  std::vector<std::string> names;
  for (const auto& [p, ch] : kids) names.push_back(p);
  for (const auto& [p, ch] : kids)
    for (const auto& c : ch)
      if (std::find(names.begin(), names.end(), c) == names.end()) names.push_back(c);
  auto idx = [&](const std::string& x) {
    return static_cast<int>(std::find(names.begin(), names.end(), x) - names.begin());
  };
  std::vector<std::vector<int>> children(names.size());
  for (const auto& [p, ch] : kids)
    for (const auto& c : ch) children[static_cast<std::size_t>(idx(p))].push_back(idx(c));
  return RootedTree::from_children(names, idx(root), children);
}

}  // namespace

TwinModel fig4_center_model() {
  auto t = tree_of({{"1", {"2", "4"}}, {"2", {"5", "3"}}, {"3", {"c", "d"}}, {"4", {"e", "f"}}, {"5", {"a", "b"}}}, "1");
  return TwinModel::from_names(t, Signature{{"E", 2}},
                               {{"E", symmetric({{"b", "c"}, {"b", "d"}, {"d", "4"}, {"f", "5"}})}});
}

RankedTwinModel fig4_center_ranked() {
  auto m = fig4_center_model();
  std::vector<int> tau(m.tree().size(), 6);
  for (int k = 1; k <= 5; ++k) tau[static_cast<std::size_t>(m.tree().index_of(std::to_string(k)))] = k;
  return {m, tau};
}

TwinModel fig4_right_model() {
  auto t = tree_of({{"1", {"2", "3"}}, {"2", {"5", "4"}}, {"3", {"e", "f"}}, {"4", {"c", "d"}}, {"5", {"a", "b"}}}, "1");
  return TwinModel::from_names(t, Signature{{"E", 2}},
                               {{"E", symmetric({{"b", "4"}, {"d", "3"}, {"f", "5"}})}});
}

Graph fig4_graph() {
  return Graph::from_edges({"a", "b", "c", "d", "e", "f"},
                           {{"b", "c"}, {"b", "d"}, {"d", "e"}, {"d", "f"}, {"f", "a"}, {"f", "b"}});
}

std::vector<int> fig5_one_line() {
  return {3,  2,  6,  5,  9,  25, 8,  31, 11, 7,  10, 14, 29, 12, 4,  15, 1,
          18, 17, 20, 16, 19, 23, 21, 26, 13, 22, 24, 32, 28, 27, 30, 33};
}

namespace {
std::vector<std::string> numbered(int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(std::to_string(i));
  return v;
}
}  // namespace

Graph path(int n) {
  std::vector<std::pair<std::string, std::string>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(std::to_string(i), std::to_string(i + 1));
  return Graph::from_edges(numbered(n), e);
}

Graph complete(int n) {
  std::vector<std::pair<std::string, std::string>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(std::to_string(i), std::to_string(j));
  return Graph::from_edges(numbered(n), e);
}

Graph graph_from_mask(int n, std::uint64_t mask) {
  std::vector<std::pair<std::string, std::string>> e;
  int k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++k)
      if (mask >> k & 1U) e.emplace_back(std::to_string(i), std::to_string(j));
  return Graph::from_edges(numbered(n), e);
}

RelStructure random_structure(int n, int symbols, double p, std::mt19937& rng) {
  std::vector<Symbol> syms;
  for (int s = 0; s < symbols; ++s) syms.push_back({std::string(1, static_cast<char>('R' + s)), 2});
  RelStructure r(Signature(syms), numbered(n));
  std::bernoulli_distribution coin(p);
  for (int s = 0; s < symbols; ++s)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && coin(rng)) r.add(static_cast<std::size_t>(s), {i, j});
  return r;
}

Graph random_graph(int n, double p, std::mt19937& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<std::string, std::string>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(std::to_string(i), std::to_string(j));
  return Graph::from_edges(numbered(n), e);
}

ContractionSequence random_sequence(const RelStructure& s, std::mt19937& rng) {
  std::vector<std::pair<int, int>> slots;
  for (int k = static_cast<int>(s.size()); k > 1; --k) {
    std::uniform_int_distribution<int> pick(0, k - 1);
    int a = pick(rng), b = pick(rng);
    while (b == a) b = pick(rng);
    slots.emplace_back(a, b);
  }
  return sequence_from_slots(s, slots);
}

RankedTwinModel random_ranked_model(int n, int symbols, double p, std::mt19937& rng) {
  auto s = random_structure(n, symbols, p, rng);
  return seq_to_model(random_sequence(s, rng));
}

RootedTree random_binary_tree(int leaves, std::mt19937& rng) {
  std::vector<std::string> names;
  std::vector<int> parent;
  std::vector<int> pool;
  for (int i = 0; i < leaves; ++i) {
    names.push_back(leaves <= 26 ? std::string(1, static_cast<char>('a' + i)) : "l" + std::to_string(i));
    parent.push_back(-1);
    pool.push_back(i);
  }
  while (pool.size() > 1) {
    std::shuffle(pool.begin(), pool.end(), rng);
    int u = pool.back();
    pool.pop_back();
    int v = pool.back();
    pool.pop_back();
    int z = static_cast<int>(names.size());
    names.push_back("n" + std::to_string(z));
    parent.push_back(-1);
    parent[static_cast<std::size_t>(u)] = z;
    parent[static_cast<std::size_t>(v)] = z;
    pool.push_back(z);
  }
  return RootedTree(names, parent);
}

namespace {

// Shapes as parent lists in preorder numbering, offset by `base`.
std::vector<std::vector<int>> shapes(int leaves) {
  if (leaves == 1) return {{-1}};
  std::vector<std::vector<int>> out;
  for (int l = 1; l < leaves; ++l)
    for (const auto& left : shapes(l))
      for (const auto& right : shapes(leaves - l)) {
        std::vector<int> p{-1};
        for (int x : left) p.push_back(x < 0 ? 0 : x + 1);
        int off = 1 + static_cast<int>(left.size());
        for (int x : right) p.push_back(x < 0 ? 0 : x + off);
        out.push_back(p);
      }
  return out;
}

}  // namespace

std::vector<RootedTree> all_binary_trees(int leaves) {
  std::vector<RootedTree> out;
  for (const auto& p : shapes(leaves)) out.emplace_back(numbered(static_cast<int>(p.size())), p);
  return out;
}

}  // namespace fx

#include "tww/orderpair.hpp"

#include <algorithm>

namespace tww {

std::vector<int> preorder(const RootedTree& y) {
  std::vector<int> out;
  out.reserve(y.size());
  std::vector<int> stack{y.root()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    const auto& ch = y.children(v);
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

namespace {

void check_marks(const RootedTree& y, const std::set<int>& marks) {
  const int n = static_cast<int>(y.size());
  for (int m : marks) {
    if (m < 0 || m >= n) throw MarkError("mark outside the tree order");
    if (m == y.root()) throw MarkError("the minimum '" + y.name(m) + "' cannot be marked");
  }
  for (int v : y.internal_nodes()) {
    int k = 0;
    for (int c : y.children(v)) k += marks.count(c) ? 1 : 0;
    if (k != 1)
      throw MarkError("'" + y.name(v) + "' has " + std::to_string(k) + " marked children, expected 1");
  }
}

}  // namespace

OrderedGraph transduction_L(const TreeOrder& t, const std::set<int>& first_child_marks) {
  const auto& y = t.tree();
  if (!y.is_binary()) throw ArgumentError("L is defined on binary tree orders");
  check_marks(y, first_child_marks);
  std::vector<std::vector<int>> kids(y.size());
  for (int v = 0; v < static_cast<int>(y.size()); ++v) {
    kids[static_cast<std::size_t>(v)] = y.children(v);
    auto& k = kids[static_cast<std::size_t>(v)];
    std::stable_partition(k.begin(), k.end(), [&](int c) { return first_child_marks.count(c) != 0; });
  }
  auto order = preorder(y.with_children_order(kids));
  std::vector<std::pair<std::string, std::string>> edges;
  for (int v = 0; v < static_cast<int>(y.size()); ++v)
    if (y.parent(v) >= 0) edges.emplace_back(y.name(y.parent(v)), y.name(v));
  return OrderedGraph(Graph::from_edges(y.names(), edges), std::move(order));
}

TreeOrder transduction_O(const OrderedGraph& yt) {
  const auto& g = yt.graph();
  const int n = static_cast<int>(g.size());
  if (n == 0) throw ArgumentError("empty ordered tree");
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    int smaller = 0;
    for (int w : g.neighbors(v))
      if (yt.less(w, v)) {
        parent[static_cast<std::size_t>(v)] = w;
        ++smaller;
      }
    bool is_min = yt.rank(v) == 0;
    if (is_min ? smaller != 0 : smaller != 1)
      throw ArgumentError("'" + g.name(v) + "' does not have exactly one smaller neighbour");
  }
  if (g.edge_count() != static_cast<std::size_t>(n - 1)) throw ArgumentError("edge relation is not a tree");
  RootedTree y(g.vertices(), parent);
  if (!y.is_binary()) throw ArgumentError("tree is not binary");
  // The order must be the preorder of the embedding it induces.
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    kids[static_cast<std::size_t>(v)] = y.children(v);
    auto& k = kids[static_cast<std::size_t>(v)];
    std::sort(k.begin(), k.end(), [&](int a, int b) { return yt.less(a, b); });
  }
  if (preorder(y.with_children_order(kids)) != yt.order()) throw ArgumentError("order is not a preorder of the tree");
  return TreeOrder(std::move(y));
}

std::set<int> marks_from_preorder(const TreeOrder& t, const std::vector<int>& order) {
  const auto& y = t.tree();
  if (order.size() != y.size()) throw ArgumentError("order must list every node once");
  std::vector<int> pos(y.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    int v = order[i];
    if (v < 0 || static_cast<std::size_t>(v) >= y.size() || pos[static_cast<std::size_t>(v)] != -1)
      throw ArgumentError("order must list every node once");
    pos[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
  std::set<int> marks;
  std::vector<std::vector<int>> kids(y.size());
  for (int v : y.internal_nodes()) {
    auto k = y.children(v);
    std::sort(k.begin(), k.end(), [&](int a, int b) { return pos[static_cast<std::size_t>(a)] < pos[static_cast<std::size_t>(b)]; });
    marks.insert(k.front());
    kids[static_cast<std::size_t>(v)] = k;
  }
  if (preorder(y.with_children_order(kids)) != order) throw ArgumentError("order is not a preorder of the tree");
  return marks;
}

RelStructure lift_L(const RelStructure& full, const std::set<int>& first_child_marks) {
  auto t = TreeOrder::from_relation(full, "prec");
  auto og = transduction_L(t, first_child_marks);
  std::vector<Symbol> syms{{"tree", 2}, {"lt", 2}};
  for (const auto& s : full.signature().symbols())
    if (s.name != "prec") syms.push_back(s);
  RelStructure out(Signature(syms), full.domain());
  for (const auto& tup : og.graph().structure().tuples(0)) out.add(0, tup);
  const auto& ord = og.order();
  for (std::size_t i = 0; i < ord.size(); ++i)
    for (std::size_t j = i + 1; j < ord.size(); ++j) out.add(1, {ord[i], ord[j]});
  std::size_t k = 2;
  for (std::size_t s = 0; s < full.signature().size(); ++s) {
    if (full.signature()[s].name == "prec") continue;
    for (const auto& tup : full.tuples(s)) out.add(k, tup);
    ++k;
  }
  return out;
}

RelStructure lift_O(const RelStructure& ordered) {
  std::size_t tree = ordered.signature().index_of("tree");
  std::size_t lt = ordered.signature().index_of("lt");
  RelStructure base(Signature{{"E", 2}, {"lt", 2}}, ordered.domain());
  for (const auto& tup : ordered.tuples(tree)) base.add(0, tup);
  for (const auto& tup : ordered.tuples(lt)) base.add(1, tup);
  auto t = transduction_O(OrderedGraph::from_structure(base));
  std::vector<Symbol> syms{{"prec", 2}};
  for (const auto& s : ordered.signature().symbols())
    if (s.name != "tree" && s.name != "lt") syms.push_back(s);
  RelStructure out(Signature(syms), ordered.domain());
  const int n = static_cast<int>(ordered.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (t.precedes(x, y)) out.add(0, {x, y});
  std::size_t k = 1;
  for (std::size_t s = 0; s < ordered.signature().size(); ++s) {
    const auto& nm = ordered.signature()[s].name;
    if (nm == "tree" || nm == "lt") continue;
    for (const auto& tup : ordered.tuples(s)) out.add(k, tup);
    ++k;
  }
  return out;
}

}  // namespace tww

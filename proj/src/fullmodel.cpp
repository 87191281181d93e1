#include "tww/fullmodel.hpp"

#include <algorithm>
#include <unordered_set>

namespace tww {

FullTwinModel::FullTwinModel(TreeOrder order, Signature signature, std::vector<std::vector<NodePair>> z)
    : order_(std::move(order)), model_(order_.tree(), std::move(signature), std::move(z)) {
  if (!order_.is_binary()) throw ArgumentError("full twin-model needs a binary tree order");
  if (model_.signature().find("prec")) throw SignatureError("'prec' is reserved for the tree order");
}

RelStructure FullTwinModel::as_structure() const {
  std::vector<Symbol> syms{{"prec", 2}};
  for (const auto& s : signature().symbols()) syms.push_back(s);
  RelStructure out(Signature(syms), order_.tree().names());
  const int n = static_cast<int>(order_.size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (order_.precedes(x, y)) out.add(0, {x, y});
  for (std::size_t s = 0; s < signature().size(); ++s)
    for (auto [u, v] : z(s)) out.add(s + 1, {u, v});
  return out;
}

FullTwinModel FullTwinModel::from_structure(const RelStructure& s) {
  auto order = TreeOrder::from_relation(s, "prec");
  std::vector<Symbol> syms;
  std::vector<std::vector<NodePair>> z;
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    if (s.signature()[i].name == "prec") continue;
    syms.push_back(s.signature()[i]);
    z.emplace_back();
    for (const auto& t : s.tuples(i)) z.back().emplace_back(t[0], t[1]);
  }
  // from_relation keeps the domain order, so indices carry over.
  return FullTwinModel(std::move(order), Signature(syms), std::move(z));
}

FullTwinModel to_full(const TwinModel& m) {
  return FullTwinModel(TreeOrder(m.tree()), m.signature(), m.z());
}

RelStructure decode_S(const FullTwinModel& f) {
  const auto& o = f.treeorder();
  const int n = static_cast<int>(o.size());
  std::vector<int> maximal;
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) {
    bool top = true;
    for (int y = 0; y < n && top; ++y) top = !o.precedes(x, y);
    if (top) {
      maximal.push_back(x);
      names.push_back(o.name(x));
    }
  }
  RelStructure out(f.signature(), names);
  const int k = static_cast<int>(maximal.size());
  for (std::size_t s = 0; s < f.signature().size(); ++s)
    for (auto [u, v] : f.z(s))
      for (int i = 0; i < k; ++i) {
        if (!o.precedes_eq(u, maximal[static_cast<std::size_t>(i)])) continue;
        for (int j = 0; j < k; ++j)
          if (i != j && o.precedes_eq(v, maximal[static_cast<std::size_t>(j)])) out.add(s, {i, j});
      }
  return out;
}

namespace {

std::string unused(std::string name, const std::unordered_set<std::string>& taken) {
  while (taken.count(name)) name += "'";
  return name;
}

}  // namespace

RankedTwinModel cherry_expand(const RankedTwinModel& rm) {
  const auto& y = rm.model.tree();
  const int n = static_cast<int>(y.size());
  if (rm.model.signature().find("prec")) throw SignatureError("'prec' is reserved for the tree order");

  // Node layout of Ŷ: 0..n-1 are the original nodes (now leaves), then one
  // p0 and one p1 per internal node.
  std::unordered_set<std::string> taken(y.names().begin(), y.names().end());
  std::vector<std::string> names = y.names();
  std::vector<int> p0(static_cast<std::size_t>(n), -1), p1(static_cast<std::size_t>(n), -1);
  for (int v : y.internal_nodes()) {
    auto a = unused(y.name(v) + "^0", taken);
    taken.insert(a);
    p0[static_cast<std::size_t>(v)] = static_cast<int>(names.size());
    names.push_back(a);
    auto b = unused(y.name(v) + "^1", taken);
    taken.insert(b);
    p1[static_cast<std::size_t>(v)] = static_cast<int>(names.size());
    names.push_back(b);
  }

  std::vector<int> parent(names.size(), -1);
  for (int x = 0; x < n; ++x) {
    if (y.is_leaf(x)) {
      parent[static_cast<std::size_t>(x)] = p1[static_cast<std::size_t>(y.parent(x))];
    } else {
      parent[static_cast<std::size_t>(x)] = p0[static_cast<std::size_t>(x)];
      parent[static_cast<std::size_t>(p1[static_cast<std::size_t>(x)])] = p0[static_cast<std::size_t>(x)];
      if (x != y.root())
        parent[static_cast<std::size_t>(p0[static_cast<std::size_t>(x)])] = p1[static_cast<std::size_t>(y.parent(x))];
    }
  }
  RootedTree tree(names, parent);

  std::vector<std::vector<NodePair>> z{{}};
  for (int v : y.internal_nodes()) z[0].emplace_back(v, p1[static_cast<std::size_t>(v)]);
  for (const auto& zs : rm.model.z()) z.push_back(zs);
  std::vector<Symbol> syms{{"prec", 2}};
  for (const auto& s : rm.model.signature().symbols()) syms.push_back(s);
  TwinModel model(std::move(tree), Signature(syms), std::move(z));

  // Ranking: root first, then p1(v) by increasing τ(v), each followed by the
  // p0 copies of v's internal children in τ order.
  const auto& tau = rm.tau;
  auto by_tau = [&](int a, int b) { return tau[static_cast<std::size_t>(a)] < tau[static_cast<std::size_t>(b)]; };
  auto internal = y.internal_nodes();
  std::sort(internal.begin(), internal.end(), by_tau);
  const int leaves_hat = n;
  std::vector<int> tau_hat(names.size(), leaves_hat);
  int k = 0;
  tau_hat[static_cast<std::size_t>(p0[static_cast<std::size_t>(y.root())])] = ++k;
  for (int v : internal) {
    tau_hat[static_cast<std::size_t>(p1[static_cast<std::size_t>(v)])] = ++k;
    auto kids = y.children(v);
    std::sort(kids.begin(), kids.end(), by_tau);
    for (int c : kids)
      if (!y.is_leaf(c)) tau_hat[static_cast<std::size_t>(p0[static_cast<std::size_t>(c)])] = ++k;
  }
  return {std::move(model), std::move(tau_hat)};
}

CherryBound cherry_bound(const RankedTwinModel& rm) {
  return {width(rm), width(cherry_expand(rm))};
}

}  // namespace tww

#include "tww/structures.hpp"

#include <algorithm>
#include <numeric>

#include "tww/pattern_matrix.hpp"

namespace tww {

// ----------------------------------------------------------------- Signature

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw SignatureError("signature needs at least one symbol");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.arity != 1 && s.arity != 2)
      throw SignatureError("symbol '" + s.name + "' has arity " + std::to_string(s.arity) +
                           "; only 1 and 2 are supported");
    if (s.name.empty()) throw SignatureError("empty symbol name");
    if (!seen.insert(s.name).second) throw SignatureError("duplicate symbol '" + s.name + "'");
  }
}

std::optional<std::size_t> Signature::find(const std::string& name) const {
  for (std::size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Signature::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw SignatureError("unknown symbol '" + name + "'");
}

bool Signature::all_binary() const {
  return std::all_of(symbols_.begin(), symbols_.end(),
                     [](const Symbol& s) { return s.arity == 2; });
}

// -------------------------------------------------------------- RelStructure

RelStructure::RelStructure(Signature signature, std::vector<std::string> domain)
    : signature_(std::move(signature)), domain_(std::move(domain)) {
  const std::size_t n = domain_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!index_.emplace(domain_[i], static_cast<int>(i)).second)
      throw DomainError("duplicate element '" + domain_[i] + "'");
  }
  tuples_.resize(signature_.size());
  binary_.resize(signature_.size());
  unary_.resize(signature_.size());
  for (std::size_t s = 0; s < signature_.size(); ++s) {
    if (signature_[s].arity == 2)
      binary_[s].assign(n * n, 0);
    else
      unary_[s].assign(n, 0);
  }
}

std::optional<int> RelStructure::find(const std::string& element) const {
  auto it = index_.find(element);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RelStructure::index_of(const std::string& element) const {
  if (auto i = find(element)) return *i;
  throw DomainError("element '" + element + "' not in domain");
}

void RelStructure::add(std::size_t symbol, const Tuple& tuple) {
  if (symbol >= signature_.size()) throw SignatureError("symbol index out of range");
  const auto& sym = signature_[symbol];
  if (static_cast<int>(tuple.size()) != sym.arity)
    throw SignatureError("arity mismatch for '" + sym.name + "'");
  for (int e : tuple)
    if (e < 0 || static_cast<std::size_t>(e) >= domain_.size())
      throw DomainError("tuple element out of domain for '" + sym.name + "'");
  const std::size_t n = domain_.size();
  if (sym.arity == 2) {
    if (tuple[0] == tuple[1])
      throw ArgumentError("reflexive pair (" + name(tuple[0]) + "," + name(tuple[0]) +
                          ") in '" + sym.name + "'");
    binary_[symbol][static_cast<std::size_t>(tuple[0]) * n + static_cast<std::size_t>(tuple[1])] = 1;
  } else {
    unary_[symbol][static_cast<std::size_t>(tuple[0])] = 1;
  }
  tuples_[symbol].insert(tuple);
}

void RelStructure::add(const std::string& symbol, const std::vector<std::string>& tuple) {
  Tuple t;
  t.reserve(tuple.size());
  for (const auto& e : tuple) t.push_back(index_of(e));
  add(signature_.index_of(symbol), t);
}

std::size_t RelStructure::tuple_count() const {
  std::size_t c = 0;
  for (const auto& t : tuples_) c += t.size();
  return c;
}

bool RelStructure::labeled_equal(const RelStructure& other) const {
  if (size() != other.size()) return false;
  if (signature_.size() != other.signature_.size()) return false;
  for (const auto& sym : signature_.symbols()) {
    auto j = other.signature_.find(sym.name);
    if (!j || other.signature_[*j].arity != sym.arity) return false;
  }
  std::vector<int> map(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto j = other.find(domain_[i]);
    if (!j) return false;
    map[i] = *j;
  }
  for (std::size_t s = 0; s < signature_.size(); ++s) {
    std::size_t t = *other.signature_.find(signature_[s].name);
    if (tuples_[s].size() != other.tuples_[t].size()) return false;
    for (const auto& tup : tuples_[s]) {
      Tuple mapped;
      for (int e : tup) mapped.push_back(map[static_cast<std::size_t>(e)]);
      if (!other.holds(t, mapped)) return false;
    }
  }
  return true;
}

RelStructure RelStructure::reduct(const std::vector<std::string>& keep) const {
  std::vector<Symbol> syms;
  std::vector<std::size_t> src;
  for (const auto& k : keep) {
    std::size_t i = signature_.index_of(k);
    syms.push_back(signature_[i]);
    src.push_back(i);
  }
  RelStructure r(Signature(syms), domain_);
  for (std::size_t s = 0; s < src.size(); ++s)
    for (const auto& t : tuples_[src[s]]) r.add(s, t);
  return r;
}

// --------------------------------------------------------------------- Graph

Graph::Graph(RelStructure structure) : s_(std::move(structure)) {
  const auto& sig = s_.signature();
  if (sig.size() != 1 || sig[0].arity != 2)
    throw SignatureError("a graph has exactly one binary symbol");
  adj_.resize(s_.size());
  for (const auto& t : s_.tuples(0)) {
    if (!s_.holds(0, t[1], t[0]))
      throw ArgumentError("edge relation is not symmetric at (" + s_.name(t[0]) + "," +
                          s_.name(t[1]) + ")");
    adj_[static_cast<std::size_t>(t[0])].push_back(t[1]);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

Graph Graph::from_edges(std::vector<std::string> vertices,
                        const std::vector<std::pair<std::string, std::string>>& edges) {
  RelStructure s(Signature{{"E", 2}}, std::move(vertices));
  for (const auto& [u, v] : edges) {
    s.add("E", {u, v});
    s.add("E", {v, u});
  }
  return Graph(std::move(s));
}

// -------------------------------------------------------------- OrderedGraph

OrderedGraph::OrderedGraph(Graph graph, std::vector<int> order)
    : g_(std::move(graph)), order_(std::move(order)) {
  if (order_.size() != g_.size()) throw ArgumentError("order must list every vertex once");
  rank_.assign(g_.size(), -1);
  for (std::size_t i = 0; i < order_.size(); ++i) {
    int v = order_[i];
    if (v < 0 || static_cast<std::size_t>(v) >= g_.size() || rank_[static_cast<std::size_t>(v)] != -1)
      throw ArgumentError("order must list every vertex once");
    rank_[static_cast<std::size_t>(v)] = static_cast<int>(i);
  }
}

RelStructure OrderedGraph::as_structure() const {
  RelStructure s(Signature{{"E", 2}, {"lt", 2}}, g_.vertices());
  for (const auto& t : g_.structure().tuples(0)) s.add(0, t);
  for (std::size_t i = 0; i < order_.size(); ++i)
    for (std::size_t j = i + 1; j < order_.size(); ++j) s.add(1, {order_[i], order_[j]});
  return s;
}

OrderedGraph OrderedGraph::from_structure(const RelStructure& s) {
  std::size_t lt = s.signature().index_of("lt");
  Graph g(s.reduct({"E"}));
  std::vector<int> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> smaller(s.size(), 0);
  for (const auto& t : s.tuples(lt)) ++smaller[static_cast<std::size_t>(t[1])];
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return smaller[static_cast<std::size_t>(a)] < smaller[static_cast<std::size_t>(b)];
  });
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < order.size(); ++j)
      if ((i < j) != s.holds(lt, order[i], order[j]))
        throw ArgumentError("'lt' is not a strict linear order");
  return OrderedGraph(std::move(g), std::move(order));
}

bool OrderedGraph::order_isomorphic(const OrderedGraph& other) const {
  if (size() != other.size() || g_.edge_count() != other.g_.edge_count()) return false;
  for (std::size_t i = 0; i < order_.size(); ++i)
    for (std::size_t j = i + 1; j < order_.size(); ++j)
      if (g_.adjacent(order_[i], order_[j]) != other.g_.adjacent(other.order_[i], other.order_[j]))
        return false;
  return true;
}

// ---------------------------------------------------------------- RootedTree

RootedTree::RootedTree(std::vector<std::string> names, std::vector<int> parent)
    : names_(std::move(names)), parent_(std::move(parent)) {
  if (parent_.size() != names_.size()) throw ArgumentError("parent list size mismatch");
  children_.assign(names_.size(), {});
  for (std::size_t v = 0; v < parent_.size(); ++v) {
    int p = parent_[v];
    if (p == -1) {
      if (root_ != -1) throw ArgumentError("tree has two roots");
      root_ = static_cast<int>(v);
    } else {
      if (p < 0 || static_cast<std::size_t>(p) >= names_.size())
        throw ArgumentError("parent index out of range");
      children_[static_cast<std::size_t>(p)].push_back(static_cast<int>(v));
    }
  }
  finalize();
}

RootedTree RootedTree::from_children(std::vector<std::string> names, int root,
                                     std::vector<std::vector<int>> children) {
  RootedTree t;
  t.names_ = std::move(names);
  t.children_ = std::move(children);
  t.children_.resize(t.names_.size());
  t.parent_.assign(t.names_.size(), -1);
  t.root_ = root;
  if (root < 0 || static_cast<std::size_t>(root) >= t.names_.size())
    throw ArgumentError("root index out of range");
  for (std::size_t v = 0; v < t.children_.size(); ++v) {
    for (int c : t.children_[v]) {
      if (c < 0 || static_cast<std::size_t>(c) >= t.names_.size())
        throw ArgumentError("child index out of range");
      if (c == root || t.parent_[static_cast<std::size_t>(c)] != -1)
        throw ArgumentError("node '" + t.names_[static_cast<std::size_t>(c)] +
                            "' has more than one parent");
      t.parent_[static_cast<std::size_t>(c)] = static_cast<int>(v);
    }
  }
  t.finalize();
  return t;
}

void RootedTree::finalize() {
  const std::size_t n = names_.size();
  index_.clear();
  for (std::size_t i = 0; i < n; ++i)
    if (!index_.emplace(names_[i], static_cast<int>(i)).second)
      throw ArgumentError("duplicate node name '" + names_[i] + "'");
  if (root_ == -1) throw ArgumentError("tree has no root");
  depth_.assign(n, -1);
  tin_.assign(n, 0);
  tout_.assign(n, 0);
  int clock = 0;
  std::size_t seen = 0;
  // Iterative DFS to assign entry/exit times.
  std::vector<std::pair<int, std::size_t>> stack{{root_, 0}};
  depth_[static_cast<std::size_t>(root_)] = 0;
  tin_[static_cast<std::size_t>(root_)] = clock++;
  ++seen;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto& ch = children_[static_cast<std::size_t>(v)];
    if (next < ch.size()) {
      int c = ch[next++];
      if (depth_[static_cast<std::size_t>(c)] != -1) throw ArgumentError("tree contains a cycle");
      depth_[static_cast<std::size_t>(c)] = depth_[static_cast<std::size_t>(v)] + 1;
      tin_[static_cast<std::size_t>(c)] = clock++;
      ++seen;
      stack.emplace_back(c, 0);
    } else {
      tout_[static_cast<std::size_t>(v)] = clock++;
      stack.pop_back();
    }
  }
  if (seen != n) throw ArgumentError("tree is not connected");
}

std::optional<int> RootedTree::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RootedTree::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw ArgumentError("node '" + name + "' not in tree");
}

std::vector<int> RootedTree::leaves() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < size(); ++v)
    if (children_[v].empty()) out.push_back(static_cast<int>(v));
  return out;
}

std::vector<int> RootedTree::internal_nodes() const {
  std::vector<int> out;
  for (std::size_t v = 0; v < size(); ++v)
    if (!children_[v].empty()) out.push_back(static_cast<int>(v));
  return out;
}

int RootedTree::lca(int u, int v) const {
  while (!ancestor_eq(u, v)) u = parent(u);
  return u;
}

bool RootedTree::is_binary() const {
  return std::all_of(children_.begin(), children_.end(),
                     [](const auto& c) { return c.empty() || c.size() == 2; });
}

RootedTree RootedTree::with_children_order(const std::vector<std::vector<int>>& children) const {
  for (std::size_t v = 0; v < size(); ++v) {
    auto a = children_[v], b = children.at(v);
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw ArgumentError("children reordering changes the tree at '" + names_[v] + "'");
  }
  return from_children(names_, root_, children);
}

// ----------------------------------------------------------------- TreeOrder

TreeOrder TreeOrder::from_relation(const RelStructure& s, const std::string& symbol) {
  const std::size_t sym = s.signature().index_of(symbol);
  if (s.signature()[sym].arity != 2) throw SignatureError("tree order symbol must be binary");
  const int n = static_cast<int>(s.size());
  if (n == 0) throw ArgumentError("empty tree order");
  auto lt = [&](int a, int b) { return s.holds(sym, a, b); };
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (x != y && lt(x, y) && lt(y, x)) throw ArgumentError("order is not antisymmetric");
      for (int z = 0; z < n; ++z) {
        if (lt(x, y) && lt(y, z) && !lt(x, z)) throw ArgumentError("order is not transitive");
        if (lt(x, z) && lt(y, z) && x != y && !lt(x, y) && !lt(y, x))
          throw ArgumentError("downset of '" + s.name(z) + "' is not a chain");
      }
    }
  int root = -1;
  for (int r = 0; r < n && root < 0; ++r) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) ok = (x == r) || lt(r, x);
    if (ok) root = r;
  }
  if (root < 0) throw ArgumentError("tree order has no minimum");
  // Parent of x: the largest strict predecessor.
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  for (int x = 0; x < n; ++x) {
    if (x == root) continue;
    int best = -1;
    for (int y = 0; y < n; ++y)
      if (lt(y, x) && (best < 0 || lt(best, y))) best = y;
    parent[static_cast<std::size_t>(x)] = best;
  }
  return TreeOrder(RootedTree(s.domain(), parent));
}

RelStructure TreeOrder::as_structure(const std::string& symbol) const {
  RelStructure s(Signature{{symbol, 2}}, tree_.names());
  const int n = static_cast<int>(size());
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (precedes(x, y)) s.add(0, {x, y});
  return s;
}

// --------------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<std::string> domain, const std::vector<std::string>& order1,
                         const std::vector<std::string>& order2,
                         std::map<std::string, std::set<std::string>> marks)
    : domain_(std::move(domain)) {
  const std::size_t n = domain_.size();
  for (std::size_t i = 0; i < n; ++i)
    if (!index_.emplace(domain_[i], static_cast<int>(i)).second)
      throw DomainError("duplicate element '" + domain_[i] + "'");
  auto build = [&](const std::vector<std::string>& order, std::vector<int>& rank,
                   std::vector<int>& list, const char* which) {
    if (order.size() != n)
      throw ArgumentError(std::string(which) + " must list every element exactly once");
    rank.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      int e = index_of(order[i]);
      if (rank[static_cast<std::size_t>(e)] != -1)
        throw ArgumentError(std::string(which) + " lists '" + order[i] + "' twice");
      rank[static_cast<std::size_t>(e)] = static_cast<int>(i);
      list.push_back(e);
    }
  };
  build(order1, rank1_, order1_, "order1");
  build(order2, rank2_, order2_, "order2");
  for (auto& [m, elems] : marks) {
    std::set<int> ids;
    for (const auto& e : elems) ids.insert(index_of(e));
    marks_[m] = std::move(ids);
  }
}

Permutation Permutation::from_one_line(const std::vector<int>& values) {
  const std::size_t n = values.size();
  std::vector<std::string> domain, order2(n);
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    domain.push_back(std::to_string(i + 1));
    int v = values[i];
    if (v < 1 || static_cast<std::size_t>(v) > n || used[static_cast<std::size_t>(v - 1)])
      throw ArgumentError("one-line notation is not a permutation of 1.." + std::to_string(n));
    used[static_cast<std::size_t>(v - 1)] = true;
    order2[static_cast<std::size_t>(v - 1)] = domain.back();
  }
  return Permutation(domain, domain, order2);
}

int Permutation::index_of(const std::string& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) throw DomainError("element '" + e + "' not in permutation");
  return it->second;
}

std::vector<int> Permutation::one_line() const {
  std::vector<int> out;
  out.reserve(size());
  for (int e : order1_) out.push_back(rank2(e) + 1);
  return out;
}

bool Permutation::marked(const std::string& mark, int e) const {
  auto it = marks_.find(mark);
  return it != marks_.end() && it->second.count(e) != 0;
}

void Permutation::set_mark(const std::string& mark, std::set<int> elements) {
  for (int e : elements)
    if (e < 0 || static_cast<std::size_t>(e) >= size()) throw DomainError("mark outside domain");
  marks_[mark] = std::move(elements);
}

RelStructure Permutation::as_structure() const {
  std::vector<Symbol> syms{{"lt1", 2}, {"lt2", 2}};
  for (const auto& [m, _] : marks_) syms.push_back({m, 1});
  RelStructure s{Signature(syms), domain_};
  const int n = static_cast<int>(size());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (less1(a, b)) s.add(0, {a, b});
      if (less2(a, b)) s.add(1, {a, b});
    }
  std::size_t k = 2;
  for (const auto& [m, elems] : marks_) {
    for (int e : elems) s.add(k, {e});
    ++k;
  }
  return s;
}

Permutation Permutation::restricted(const std::vector<int>& elements) const {
  std::set<int> keep(elements.begin(), elements.end());
  std::vector<std::string> dom, o1, o2;
  for (int e : keep) dom.push_back(name(e));
  for (int e : order1_)
    if (keep.count(e)) o1.push_back(name(e));
  for (int e : order2_)
    if (keep.count(e)) o2.push_back(name(e));
  std::map<std::string, std::set<std::string>> marks;
  for (const auto& [m, elems] : marks_) {
    auto& out = marks[m];
    for (int e : elems)
      if (keep.count(e)) out.insert(name(e));
  }
  return Permutation(dom, o1, o2, marks);
}

// ---------------------------------------------------------------- operations

RelStructure induced_substructure(const RelStructure& s, const std::vector<std::string>& x) {
  std::vector<bool> keep(s.size(), false);
  for (const auto& e : x) keep[static_cast<std::size_t>(s.index_of(e))] = true;
  std::vector<std::string> dom;
  std::vector<int> remap(s.size(), -1);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (keep[i]) {
      remap[i] = static_cast<int>(dom.size());
      dom.push_back(s.domain()[i]);
    }
  RelStructure r(s.signature(), dom);
  for (std::size_t sym = 0; sym < s.signature().size(); ++sym)
    for (const auto& t : s.tuples(sym)) {
      Tuple m;
      bool inside = true;
      for (int e : t) {
        int to = remap[static_cast<std::size_t>(e)];
        if (to < 0) inside = false;
        m.push_back(to);
      }
      if (inside) r.add(sym, m);
    }
  return r;
}

Graph gaifman(const RelStructure& s) {
  RelStructure g(Signature{{"E", 2}}, s.domain());
  for (std::size_t sym = 0; sym < s.signature().size(); ++sym)
    for (const auto& t : s.tuples(sym))
      for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < t.size(); ++j)
          if (t[i] != t[j]) g.add(0, {t[i], t[j]});
  return Graph(std::move(g));
}

Degeneracy degeneracy(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<int> deg(n);
  std::vector<bool> removed(n, false);
  for (std::size_t v = 0; v < n; ++v) deg[v] = static_cast<int>(g.degree(static_cast<int>(v)));
  Degeneracy out;
  for (std::size_t step = 0; step < n; ++step) {
    int best = -1;
    for (std::size_t v = 0; v < n; ++v)
      if (!removed[v] && (best < 0 || deg[v] < deg[static_cast<std::size_t>(best)]))
        best = static_cast<int>(v);
    out.value = std::max(out.value, deg[static_cast<std::size_t>(best)]);
    out.order.push_back(best);
    removed[static_cast<std::size_t>(best)] = true;
    for (int w : g.neighbors(best))
      if (!removed[static_cast<std::size_t>(w)]) --deg[static_cast<std::size_t>(w)];
  }
  return out;
}

namespace {

detail::PatternMatrix to_pattern(const RelStructure& s) {
  detail::PatternMatrix m;
  m.n = static_cast<int>(s.size());
  m.label.assign(s.size(), 0);
  m.code.assign(s.size() * s.size(), 0);
  const auto& sig = s.signature();
  int ubit = 0, bbit = 0;
  for (std::size_t sym = 0; sym < sig.size(); ++sym) {
    if (sig[sym].arity == 1) {
      for (const auto& t : s.tuples(sym))
        m.label[static_cast<std::size_t>(t[0])] |= (std::uint64_t{1} << ubit);
      ++ubit;
    } else {
      for (const auto& t : s.tuples(sym))
        m.code[static_cast<std::size_t>(t[0]) * s.size() + static_cast<std::size_t>(t[1])] |=
            (std::uint32_t{1} << bbit);
      ++bbit;
    }
  }
  if (ubit > 64 || bbit > 32) throw ArgumentError("too many symbols for isomorphism test");
  return m;
}

}  // namespace

std::optional<std::vector<int>> isomorphism(const RelStructure& s1, const RelStructure& s2) {
  if (!(s1.signature() == s2.signature()))
    throw SignatureError("isomorphism requires identical signatures");
  if (s1.size() != s2.size()) return std::nullopt;
  for (std::size_t sym = 0; sym < s1.signature().size(); ++sym)
    if (s1.tuples(sym).size() != s2.tuples(sym).size()) return std::nullopt;
  auto a = to_pattern(s1);
  auto b = to_pattern(s2);
  std::uint64_t ha = 0, hb = 0;
  auto ca = detail::refine_colors(a, &ha);
  auto cb = detail::refine_colors(b, &hb);
  if (ha != hb) return std::nullopt;
  return detail::find_isomorphism(a, ca, b, cb);
}

bool are_isomorphic(const RelStructure& s1, const RelStructure& s2) {
  return isomorphism(s1, s2).has_value();
}

}  // namespace tww

#include "tww/twinmodel.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "cells.hpp"

namespace tww {

// ----------------------------------------------------------------- TwinModel

TwinModel::TwinModel(RootedTree tree, Signature signature, std::vector<std::vector<NodePair>> z)
    : tree_(std::move(tree)), sig_(std::move(signature)), z_(std::move(z)) {
  if (!sig_.all_binary()) throw SignatureError("twin-models need a binary signature");
  z_.resize(sig_.size());
  zset_.resize(sig_.size());
  const int n = static_cast<int>(tree_.size());
  for (std::size_t s = 0; s < z_.size(); ++s) {
    for (auto [u, v] : z_[s]) {
      if (u < 0 || v < 0 || u >= n || v >= n)
        throw ArgumentError("Z_" + sig_[s].name + " references a node outside the tree");
      if (u == v) throw ArgumentError("Z_" + sig_[s].name + " contains (" + tree_.name(u) + "," + tree_.name(u) + ")");
      if (u == tree_.root() || v == tree_.root())
        throw ArgumentError("Z_" + sig_[s].name + " touches the root '" + tree_.name(tree_.root()) + "'");
    }
    std::sort(z_[s].begin(), z_[s].end());
    z_[s].erase(std::unique(z_[s].begin(), z_[s].end()), z_[s].end());
    zset_[s] = std::set<NodePair>(z_[s].begin(), z_[s].end());
  }
}

TwinModel TwinModel::from_names(
    RootedTree tree, Signature signature,
    const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& z) {
  std::vector<std::vector<NodePair>> pairs(signature.size());
  for (const auto& [sym, list] : z) {
    std::size_t s = signature.index_of(sym);
    for (const auto& [u, v] : list) {
      auto iu = tree.find(u), iv = tree.find(v);
      if (!iu) throw ArgumentError("Z_" + sym + " references unknown node '" + u + "'");
      if (!iv) throw ArgumentError("Z_" + sym + " references unknown node '" + v + "'");
      pairs[s].emplace_back(*iu, *iv);
    }
  }
  return TwinModel(std::move(tree), std::move(signature), std::move(pairs));
}

bool TwinModel::has_z(std::size_t sym, int u, int v) const { return zset_[sym].count({u, v}) != 0; }

// ---------------------------------------------------------------- validation

namespace {

// Auxiliary digraph: tree arcs parent -> child, and for (u,v) in Z the arcs
// parent(u) -> v and parent(v) -> u. `via` remembers the Z endpoint an arc
// stands for (-1 for tree arcs) so cycles can be mapped back to Y ∪ Z.
struct Arc {
  int to;
  int via;
};

std::vector<std::vector<Arc>> aux_digraph(const TwinModel& m) {
  const auto& t = m.tree();
  std::vector<std::vector<Arc>> g(t.size());
  for (std::size_t v = 0; v < t.size(); ++v)
    for (int c : t.children(static_cast<int>(v))) g[v].push_back({c, -1});
  for (const auto& zs : m.z())
    for (auto [u, v] : zs) {
      g[static_cast<std::size_t>(t.parent(u))].push_back({v, u});
      g[static_cast<std::size_t>(t.parent(v))].push_back({u, v});
    }
  return g;
}

std::vector<std::string> find_cycle(const TwinModel& m) {
  const auto& t = m.tree();
  auto g = aux_digraph(m);
  const std::size_t n = t.size();
  std::vector<int> state(n, 0);  // 0 new, 1 on stack, 2 done
  std::vector<std::pair<int, std::size_t>> stack;
  std::vector<Arc> taken;  // arc used to enter stack[i] (i >= 1)
  for (std::size_t s = 0; s < n; ++s) {
    if (state[s]) continue;
    stack = {{static_cast<int>(s), 0}};
    taken.clear();
    state[s] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& out = g[static_cast<std::size_t>(v)];
      if (next == out.size()) {
        state[static_cast<std::size_t>(v)] = 2;
        stack.pop_back();
        if (!taken.empty()) taken.pop_back();
        continue;
      }
      Arc a = out[next++];
      int w = a.to;
      if (state[static_cast<std::size_t>(w)] == 0) {
        state[static_cast<std::size_t>(w)] = 1;
        stack.emplace_back(w, 0);
        taken.push_back(a);
      } else if (state[static_cast<std::size_t>(w)] == 1) {
        // Cycle: from w along the stack back to v, then the arc a.
        std::size_t from = 0;
        while (stack[from].first != w) ++from;
        std::vector<std::pair<int, Arc>> arcs;  // (source, arc)
        for (std::size_t i = from; i + 1 < stack.size(); ++i) arcs.emplace_back(stack[i].first, taken[i]);
        arcs.emplace_back(v, a);
        std::vector<std::string> walk;
        for (auto& [src, arc] : arcs) {
          walk.push_back(t.name(src));
          if (arc.via >= 0) walk.push_back(t.name(arc.via));
        }
        return walk;
      }
    }
  }
  return {};
}

}  // namespace

ModelReport validate_model(const TwinModel& m) {
  ModelReport r;
  const auto& t = m.tree();
  r.binary = t.is_binary();
  for (std::size_t s = 0; s < m.signature().size(); ++s) {
    const auto& zs = m.z(s);
    for (const auto& p : zs)
      for (const auto& q : zs)
        if (p != q && t.ancestor_eq(q.first, p.first) && t.ancestor_eq(q.second, p.second))
          r.minimality_violations.emplace_back(s, p, q);
  }
  r.minimal = r.minimality_violations.empty();
  r.cycle = find_cycle(m);
  r.consistent = r.cycle.empty();
  return r;
}

RelStructure decode_structure(const TwinModel& m) {
  const auto& t = m.tree();
  std::vector<std::string> dom;
  std::vector<int> leaf_of_node(t.size(), -1);
  for (int v : t.leaves()) {
    leaf_of_node[static_cast<std::size_t>(v)] = static_cast<int>(dom.size());
    dom.push_back(t.name(v));
  }
  RelStructure out(m.signature(), dom);
  const auto leaves = t.leaves();
  for (std::size_t s = 0; s < m.signature().size(); ++s)
    for (auto [u, v] : m.z(s))
      for (int x : leaves) {
        if (!t.ancestor_eq(u, x)) continue;
        for (int y : leaves)
          if (x != y && t.ancestor_eq(v, y))
            out.add(s, {leaf_of_node[static_cast<std::size_t>(x)], leaf_of_node[static_cast<std::size_t>(y)]});
      }
  return out;
}

// ------------------------------------------------------------------ rankings

namespace {

// Arcs of the auxiliary digraph among internal nodes.
std::vector<std::vector<int>> internal_arcs(const TwinModel& m) {
  const auto& t = m.tree();
  auto g = aux_digraph(m);
  std::vector<std::vector<int>> out(t.size());
  for (std::size_t v = 0; v < t.size(); ++v)
    for (const auto& a : g[v])
      if (!t.is_leaf(a.to)) out[v].push_back(a.to);
  return out;
}

}  // namespace

RankedTwinModel rank(const TwinModel& m) {
  const auto& t = m.tree();
  const int n = static_cast<int>(m.leaf_count());
  auto arcs = internal_arcs(m);
  std::vector<int> indeg(t.size(), 0);
  for (const auto& out : arcs)
    for (int w : out) ++indeg[static_cast<std::size_t>(w)];
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v : t.internal_nodes())
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push(v);
  RankedTwinModel rm{m, std::vector<int>(t.size(), n)};
  int next = 1;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    rm.tau[static_cast<std::size_t>(v)] = next++;
    for (int w : arcs[static_cast<std::size_t>(v)])
      if (--indeg[static_cast<std::size_t>(w)] == 0) ready.push(w);
  }
  if (next != n) throw ConsistencyError("twin-model is not consistent; no ranking exists", find_cycle(m));
  return rm;
}

std::vector<std::vector<int>> all_rankings(const TwinModel& m) {
  const auto& t = m.tree();
  const int n = static_cast<int>(m.leaf_count());
  auto arcs = internal_arcs(m);
  std::vector<int> indeg(t.size(), 0);
  for (const auto& out : arcs)
    for (int w : out) ++indeg[static_cast<std::size_t>(w)];
  std::vector<int> tau(t.size(), n);
  std::vector<bool> placed(t.size(), false);
  const auto internal = t.internal_nodes();
  std::vector<std::vector<int>> out;
  std::function<void(int)> rec = [&](int next) {
    if (next == n) {
      out.push_back(tau);
      return;
    }
    for (int v : internal) {
      if (placed[static_cast<std::size_t>(v)] || indeg[static_cast<std::size_t>(v)] != 0) continue;
      placed[static_cast<std::size_t>(v)] = true;
      tau[static_cast<std::size_t>(v)] = next;
      for (int w : arcs[static_cast<std::size_t>(v)]) --indeg[static_cast<std::size_t>(w)];
      rec(next + 1);
      for (int w : arcs[static_cast<std::size_t>(v)]) ++indeg[static_cast<std::size_t>(w)];
      tau[static_cast<std::size_t>(v)] = n;
      placed[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(1);
  return out;
}

RankingReport validate_ranking(const RankedTwinModel& rm) {
  RankingReport r;
  const auto& t = rm.model.tree();
  const int n = rm.n();
  if (rm.tau.size() != t.size()) {
    r.labeling = false;
    r.detail = "ranking has wrong size";
    return r;
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (std::size_t v = 0; v < t.size(); ++v) {
    int x = rm.tau[v];
    if (t.is_leaf(static_cast<int>(v))) {
      if (x != n) {
        r.labeling = false;
        r.detail = "leaf '" + t.name(static_cast<int>(v)) + "' is not ranked n";
      }
    } else if (x < 1 || x > n - 1 || seen[static_cast<std::size_t>(x)]) {
      r.labeling = false;
      r.detail = "internal ranks are not a bijection onto 1..n-1";
    } else {
      seen[static_cast<std::size_t>(x)] = true;
    }
  }
  for (std::size_t v = 0; v < t.size(); ++v) {
    int p = t.parent(static_cast<int>(v));
    if (p >= 0 && rm.tau[static_cast<std::size_t>(p)] >= rm.tau[v]) {
      r.monotonicity = false;
      r.detail = "rank of '" + t.name(p) + "' is not below its child '" + t.name(static_cast<int>(v)) + "'";
    }
  }
  for (std::size_t s = 0; s < rm.model.signature().size(); ++s)
    for (auto [u, v] : rm.model.z(s)) {
      int hi = std::max(rm.tau[static_cast<std::size_t>(t.parent(u))], rm.tau[static_cast<std::size_t>(t.parent(v))]);
      int lo = std::min(rm.tau[static_cast<std::size_t>(u)], rm.tau[static_cast<std::size_t>(v)]);
      if (hi >= lo) {
        r.synchronicity = false;
        r.detail = "pair (" + t.name(u) + "," + t.name(v) + ") is not synchronous";
      }
    }
  return r;
}

// -------------------------------------------------------------------- layers

int Layer::red_degree(int v) const {
  int d = 0;
  for (const auto& rs : red)
    for (const auto& [a, b] : rs)
      if (a == v) ++d;
  return d;
}

Layer layer(const RankedTwinModel& rm, int t) {
  const auto& y = rm.model.tree();
  const std::size_t k = rm.model.signature().size();
  Layer L;
  L.t = t;
  L.black.resize(k);
  L.red.resize(k);
  if (t <= 1) {
    L.boundary = {y.root()};
    return L;
  }
  for (std::size_t v = 0; v < y.size(); ++v) {
    int p = y.parent(static_cast<int>(v));
    if (p >= 0 && rm.tau[v] >= t && rm.tau[static_cast<std::size_t>(p)] < t) L.boundary.push_back(static_cast<int>(v));
  }
  // Boundary node that is an ancestor-or-self of each node, or -1.
  std::vector<int> top(y.size(), -1);
  for (int b : L.boundary) top[static_cast<std::size_t>(b)] = b;
  for (std::size_t v = 0; v < y.size(); ++v) {
    int x = static_cast<int>(v);
    while (x >= 0 && top[static_cast<std::size_t>(x)] < 0) x = y.parent(x);
    if (x >= 0) top[v] = top[static_cast<std::size_t>(x)];
  }
  for (std::size_t s = 0; s < k; ++s)
    for (auto [a, b] : rm.model.z(s)) {
      int ta = top[static_cast<std::size_t>(a)], tb = top[static_cast<std::size_t>(b)];
      // No Z pair may reach from above the boundary to strictly below it.
      if ((ta < 0 && tb >= 0 && tb != b) || (tb < 0 && ta >= 0 && ta != a))
        throw Error("layer " + std::to_string(t) + ": pair (" + y.name(a) + "," + y.name(b) +
                    ") crosses the boundary");
      for (int u : L.boundary) {
        if (!y.ancestor_eq(a, u)) continue;
        for (int v : L.boundary)
          if (u != v && y.ancestor_eq(b, v)) L.black[s].insert({u, v});
      }
      if (ta >= 0 && tb >= 0 && ta != tb && !(ta == a && tb == b)) {
        L.red[s].insert({ta, tb});
        L.red[s].insert({tb, ta});
      }
    }
  return L;
}

std::vector<Layer> layers(const RankedTwinModel& rm) {
  std::vector<Layer> out;
  for (int t = 1; t <= rm.n(); ++t) out.push_back(layer(rm, t));
  return out;
}

int width(const RankedTwinModel& rm) {
  int w = 0;
  for (int t = 2; t <= rm.n(); ++t) {
    auto L = layer(rm, t);
    for (int v : L.boundary) w = std::max(w, L.red_degree(v));
  }
  return w;
}

int width(const TwinModel& m) { return width(rank(m)); }

int min_width_brute(const TwinModel& m) {
  int best = -1;
  for (auto& tau : all_rankings(m)) {
    int w = width(RankedTwinModel{m, tau});
    if (best < 0 || w < best) best = w;
  }
  if (best < 0) throw ConsistencyError("twin-model is not consistent; no ranking exists", find_cycle(m));
  return best;
}

// ------------------------------------------------------ sequences and models

RankedTwinModel seq_to_model(const ContractionSequence& seq) {
  auto snaps = replay(seq);
  const int n = static_cast<int>(seq.initial.size());
  const auto& sig = seq.initial.signature();
  std::vector<std::string> names = seq.initial.domain();
  std::map<std::string, int> node;
  for (int i = 0; i < n; ++i) node[names[static_cast<std::size_t>(i)]] = i;
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
  std::vector<std::vector<NodePair>> z(sig.size());
  std::vector<int> tau(static_cast<std::size_t>(n), n);

  for (std::size_t k = 0; k < seq.steps.size(); ++k) {
    const Trigraph& cur = snaps[k];
    const auto& st = seq.steps[k];
    const int zi = static_cast<int>(names.size());
    names.push_back(st.z);
    node[st.z] = zi;
    const int u = cur.index_of(st.u), v = cur.index_of(st.v);
    const int nu = node[st.u], nv = node[st.v];
    children.push_back({nu, nv});
    tau.push_back(n - 1 - static_cast<int>(k));
    for (std::size_t s = 0; s < sig.size(); ++s) {
      if (cur.black(s, u, v)) z[s].emplace_back(nu, nv);
      if (cur.black(s, v, u)) z[s].emplace_back(nv, nu);
      for (int w = 0; w < static_cast<int>(cur.size()); ++w) {
        if (w == u || w == v) continue;
        std::uint32_t nc = detail::not_clone(cur.cell(u, w), cur.cell(v, w), cur.cell(w, u), cur.cell(w, v));
        if (!((nc >> (2 * s)) & 1U)) continue;
        const int nw = node[cur.name(w)];
        if (cur.black(s, w, u)) z[s].emplace_back(nw, nu);
        if (cur.black(s, u, w)) z[s].emplace_back(nu, nw);
        if (cur.black(s, w, v)) z[s].emplace_back(nw, nv);
        if (cur.black(s, v, w)) z[s].emplace_back(nv, nw);
      }
    }
  }
  const int root = static_cast<int>(names.size()) - 1;
  auto tree = RootedTree::from_children(names, root, children);
  return RankedTwinModel{TwinModel(std::move(tree), sig, std::move(z)), std::move(tau)};
}

ContractionSequence model_to_seq(const RankedTwinModel& rm, bool check) {
  const auto& y = rm.model.tree();
  const int n = rm.n();
  std::vector<int> by_rank(static_cast<std::size_t>(n), -1);
  for (int v : y.internal_nodes()) by_rank[static_cast<std::size_t>(rm.tau[static_cast<std::size_t>(v)])] = v;
  ContractionSequence seq{decode_structure(rm.model), {}};
  for (int i = n - 1; i >= 1; --i) {
    int v = by_rank[static_cast<std::size_t>(i)];
    if (v < 0) throw ArgumentError("ranking is not a bijection onto 1..n-1");
    const auto& ch = y.children(v);
    seq.steps.push_back({y.name(ch[0]), y.name(ch[1]), y.name(v)});
  }
  if (check) {
    auto snaps = replay(seq);
    for (std::size_t j = 0; j < snaps.size(); ++j) {
      const Trigraph& a = snaps[j];
      auto L = layer(rm, n - static_cast<int>(j));
      if (L.boundary.size() != a.size()) throw Error("snapshot and layer sizes differ");
      for (int x = 0; x < static_cast<int>(a.size()); ++x)
        for (int w = 0; w < static_cast<int>(a.size()); ++w)
          for (std::size_t s = 0; s < rm.model.signature().size(); ++s)
            if (a.red(s, x, w) && !L.red[s].count({y.index_of(a.name(x)), y.index_of(a.name(w))}))
              throw Error("red pair (" + a.name(x) + "," + a.name(w) + ") missing from layer " +
                          std::to_string(L.t));
    }
  }
  return seq;
}

RankedTwinModel induced_submodel(const RankedTwinModel& rm, const std::vector<std::string>& leaves) {
  const auto& y = rm.model.tree();
  std::set<int> x;
  for (const auto& name : leaves) {
    int v = y.index_of(name);
    if (!y.is_leaf(v)) throw ArgumentError("'" + name + "' is not a leaf");
    x.insert(v);
  }
  if (x.size() < 2) throw ArgumentError("an induced submodel needs at least two leaves");
  std::set<int> keep = x;
  for (int a : x)
    for (int b : x)
      if (a < b) keep.insert(y.lca(a, b));
  std::vector<int> old(keep.begin(), keep.end());
  std::map<int, int> idx;
  for (std::size_t i = 0; i < old.size(); ++i) idx[old[i]] = static_cast<int>(i);
  std::vector<std::string> names;
  std::vector<int> parent;
  for (int v : old) {
    names.push_back(y.name(v));
    int p = y.parent(v);
    while (p >= 0 && !keep.count(p)) p = y.parent(p);
    parent.push_back(p < 0 ? -1 : idx[p]);
  }
  // Image of a node: the top-most kept node of its subtree (lca of the kept leaves below it).
  auto image = [&](int u) {
    int best = -1;
    for (int v : keep)
      if (y.ancestor_eq(u, v) && (best < 0 || y.depth(v) < y.depth(best))) best = v;
    return best;
  };
  RootedTree tree(names, parent);
  std::vector<std::vector<NodePair>> z(rm.model.signature().size());
  for (std::size_t s = 0; s < z.size(); ++s) {
    std::set<NodePair> mapped;
    for (auto [a, b] : rm.model.z(s)) {
      int ia = image(a), ib = image(b);
      if (ia >= 0 && ib >= 0) mapped.insert({idx[ia], idx[ib]});
    }
    for (const auto& p : mapped) {
      bool dominated = false;
      for (const auto& q : mapped)
        if (q != p && tree.ancestor_eq(q.first, p.first) && tree.ancestor_eq(q.second, p.second)) dominated = true;
      if (!dominated) z[s].push_back(p);
    }
  }
  // Internal ranks compressed to 1..|x|-1 preserving order.
  std::vector<std::pair<int, int>> internal;
  for (std::size_t i = 0; i < old.size(); ++i)
    if (!tree.is_leaf(static_cast<int>(i))) internal.emplace_back(rm.tau[static_cast<std::size_t>(old[i])], static_cast<int>(i));
  std::sort(internal.begin(), internal.end());
  std::vector<int> tau(old.size(), static_cast<int>(x.size()));
  for (std::size_t r = 0; r < internal.size(); ++r) tau[static_cast<std::size_t>(internal[r].second)] = static_cast<int>(r) + 1;
  return RankedTwinModel{TwinModel(std::move(tree), rm.model.signature(), std::move(z)), std::move(tau)};
}

RelStructure model_structure(const TwinModel& m) {
  std::vector<Symbol> syms{{"tree", 2}};
  for (const auto& s : m.signature().symbols()) syms.push_back({"Z_" + s.name, 2});
  const auto& y = m.tree();
  RelStructure out(Signature(syms), y.names());
  for (std::size_t v = 0; v < y.size(); ++v)
    for (int c : y.children(static_cast<int>(v))) {
      out.add(0, {static_cast<int>(v), c});
      out.add(0, {c, static_cast<int>(v)});
    }
  for (std::size_t s = 0; s < m.signature().size(); ++s)
    for (auto [u, v] : m.z(s)) out.add(s + 1, {u, v});
  return out;
}

bool model_gaifman_degeneracy_check(const RankedTwinModel& rm) {
  int d = degeneracy(gaifman(model_structure(rm.model))).value;
  return d <= width(rm) + static_cast<int>(rm.model.signature().size()) + 1;
}

}  // namespace tww

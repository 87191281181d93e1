#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace oracle {

using namespace tww;

int degeneracy_by_orders(const Graph& g) {
  const int n = static_cast<int>(g.size());
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  int best = n;
  do {
    int worst = 0;
    for (int i = 0; i < n; ++i) {
      int later = 0;
      for (int j = i + 1; j < n; ++j) later += g.adjacent(p[i], p[j]) ? 1 : 0;
      worst = std::max(worst, later);
    }
    best = std::min(best, worst);
  } while (std::next_permutation(p.begin(), p.end()));
  return n == 0 ? 0 : best;
}

int quotient_max_red(const RelStructure& s, const std::vector<std::vector<int>>& parts) {
  const std::size_t k = s.signature().size();
  int worst = 0;
  for (std::size_t x = 0; x < parts.size(); ++x) {
    int deg = 0;
    for (std::size_t y = 0; y < parts.size(); ++y) {
      if (x == y) continue;
      for (std::size_t r = 0; r < k; ++r) {
        std::set<bool> fwd, bwd;
        for (int a : parts[x])
          for (int b : parts[y]) {
            fwd.insert(s.holds(r, a, b));
            bwd.insert(s.holds(r, b, a));
          }
        if (fwd.size() > 1 || bwd.size() > 1) ++deg;
      }
    }
    worst = std::max(worst, deg);
  }
  return worst;
}

namespace {

using Partition = std::vector<std::vector<int>>;

Partition normalized(Partition p) {
  for (auto& part : p) std::sort(part.begin(), part.end());
  std::sort(p.begin(), p.end());
  return p;
}

int solve(const RelStructure& s, const Partition& p, std::map<Partition, int>& memo) {
  if (p.size() <= 1) return 0;
  auto it = memo.find(p);
  if (it != memo.end()) return it->second;
  int here = quotient_max_red(s, p);
  int best = 1 << 20;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      Partition q;
      for (std::size_t t = 0; t < p.size(); ++t)
        if (t != i && t != j) q.push_back(p[t]);
      auto merged = p[i];
      merged.insert(merged.end(), p[j].begin(), p[j].end());
      q.push_back(merged);
      best = std::min(best, solve(s, normalized(q), memo));
    }
  int r = std::max(here, best);
  memo[p] = r;
  return r;
}

}  // namespace

int twinwidth_by_partitions(const RelStructure& s) {
  Partition p;
  for (int i = 0; i < static_cast<int>(s.size()); ++i) p.push_back({i});
  std::map<Partition, int> memo;
  return solve(s, normalized(p), memo);
}

int layer_width_literal(const RankedTwinModel& rm) {
  const auto& y = rm.model.tree();
  const int n = rm.n();
  const int size = static_cast<int>(y.size());
  int best = 0;
  for (int t = 2; t <= n; ++t) {
    std::vector<int> bd;
    for (int v = 0; v < size; ++v) {
      int p = y.parent(v);
      if (p >= 0 && rm.tau[static_cast<std::size_t>(v)] >= t && rm.tau[static_cast<std::size_t>(p)] < t) bd.push_back(v);
    }
    for (int u : bd) {
      int deg = 0;
      for (std::size_t s = 0; s < rm.model.signature().size(); ++s)
        for (int v : bd) {
          if (u == v) continue;
          bool red = false;
          for (int a = 0; a < size && !red; ++a)
            for (int b = 0; b < size && !red; ++b) {
              if (!y.ancestor_eq(u, a) || !y.ancestor_eq(v, b)) continue;
              if (a == u && b == v) continue;
              red = rm.model.has_z(s, a, b) || rm.model.has_z(s, b, a);
            }
          if (red) ++deg;
        }
      best = std::max(best, deg);
    }
  }
  return best;
}

bool consistent_by_cycles(const TwinModel& m) {
  const auto& y = m.tree();
  struct Edge {
    int a, b;
    bool tree;
  };
  std::vector<Edge> edges;
  for (int v = 0; v < static_cast<int>(y.size()); ++v)
    if (y.parent(v) >= 0) edges.push_back({y.parent(v), v, true});
  for (const auto& zs : m.z())
    for (auto [u, v] : zs) edges.push_back({u, v, false});
  const int n = static_cast<int>(y.size());
  std::vector<std::vector<std::pair<int, int>>> inc(static_cast<std::size_t>(n));  // (edge, other end)
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    inc[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].a)].emplace_back(e, edges[static_cast<std::size_t>(e)].b);
    inc[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].b)].emplace_back(e, edges[static_cast<std::size_t>(e)].a);
  }
  // Walks start at their smallest vertex; vertices are not revisited.
  std::vector<int> verts, used_edges;
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  bool bad = false;
  auto closes = [&]() {
    // Check the closed walk verts[0..k] with edges used_edges[0..k].
    const std::size_t k = used_edges.size();
    bool downward = true;
    for (std::size_t i = 0; i < k && downward; ++i) {
      const Edge& e = edges[static_cast<std::size_t>(used_edges[i])];
      if (!e.tree) continue;
      int from = verts[i];
      downward = (from == e.a);
    }
    if (!downward) return;
    bool consecutive = false;
    for (std::size_t i = 0; i < k; ++i)
      if (!edges[static_cast<std::size_t>(used_edges[i])].tree && !edges[static_cast<std::size_t>(used_edges[(i + 1) % k])].tree)
        consecutive = true;
    if (!consecutive) bad = true;
  };
  std::function<void(int)> dfs = [&](int v) {
    for (auto [e, w] : inc[static_cast<std::size_t>(v)]) {
      if (bad) return;
      if (std::find(used_edges.begin(), used_edges.end(), e) != used_edges.end()) continue;
      if (w == verts[0]) {
        used_edges.push_back(e);
        closes();
        used_edges.pop_back();
        continue;
      }
      if (w < verts[0] || on[static_cast<std::size_t>(w)]) continue;
      on[static_cast<std::size_t>(w)] = true;
      verts.push_back(w);
      used_edges.push_back(e);
      dfs(w);
      used_edges.pop_back();
      verts.pop_back();
      on[static_cast<std::size_t>(w)] = false;
    }
  };
  for (int s = 0; s < n && !bad; ++s) {
    verts = {s};
    on[static_cast<std::size_t>(s)] = true;
    dfs(s);
    on[static_cast<std::size_t>(s)] = false;
  }
  return !bad;
}

}  // namespace oracle

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "tww/pattern_matrix.hpp"

namespace tww::detail {

namespace {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  // splitmix-style combine
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h;
}

using Sig = std::vector<std::uint64_t>;

}  // namespace

std::vector<int> refine_colors(const PatternMatrix& m, std::uint64_t* invariant) {
  const int n = m.n;
  std::vector<int> color(static_cast<std::size_t>(n), 0);
  std::uint64_t h = mix(0x1234, static_cast<std::uint64_t>(n));

  auto assign_ranks = [&](const std::vector<Sig>& sigs) {
    std::vector<Sig> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (int i = 0; i < n; ++i)
      color[static_cast<std::size_t>(i)] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), sigs[static_cast<std::size_t>(i)]) -
          sorted.begin());
    // Hash the multiset of signatures, which is an isomorphism invariant.
    std::vector<Sig> all = sigs;
    std::sort(all.begin(), all.end());
    for (const auto& s : all) {
      h = mix(h, s.size());
      for (auto x : s) h = mix(h, x);
    }
    return static_cast<int>(sorted.size());
  };

  std::vector<Sig> sigs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) sigs[static_cast<std::size_t>(i)] = {m.label[static_cast<std::size_t>(i)]};
  int classes = assign_ranks(sigs);

  while (true) {
    for (int i = 0; i < n; ++i) {
      Sig s;
      s.reserve(static_cast<std::size_t>(n) + 1);
      s.push_back(static_cast<std::uint64_t>(color[static_cast<std::size_t>(i)]));
      std::vector<std::uint64_t> nb;
      nb.reserve(static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        std::uint64_t c = static_cast<std::uint64_t>(color[static_cast<std::size_t>(j)]);
        nb.push_back((c << 40) | (static_cast<std::uint64_t>(m.at(i, j)) << 20) | m.at(j, i));
      }
      std::sort(nb.begin(), nb.end());
      s.insert(s.end(), nb.begin(), nb.end());
      sigs[static_cast<std::size_t>(i)] = std::move(s);
    }
    int next = assign_ranks(sigs);
    if (next == classes) break;
    classes = next;
  }
  if (invariant) *invariant = h;
  return color;
}

std::optional<std::vector<int>> find_isomorphism(const PatternMatrix& a,
                                                 const std::vector<int>& colors_a,
                                                 const PatternMatrix& b,
                                                 const std::vector<int>& colors_b) {
  const int n = a.n;
  if (n != b.n) return std::nullopt;
  {
    auto x = colors_a, y = colors_b;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return std::nullopt;
  }
  std::map<int, int> class_size;
  for (int c : colors_a) ++class_size[c];
  // Map vertices of a in order of increasing class size, then index.
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    auto kx = std::make_tuple(class_size[colors_a[static_cast<std::size_t>(x)]],
                              colors_a[static_cast<std::size_t>(x)], x);
    auto ky = std::make_tuple(class_size[colors_a[static_cast<std::size_t>(y)]],
                              colors_a[static_cast<std::size_t>(y)], y);
    return kx < ky;
  });
  std::vector<int> map(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  auto rec = [&](auto&& self, int depth) -> bool {
    if (depth == n) return true;
    const int x = order[static_cast<std::size_t>(depth)];
    for (int y = 0; y < n; ++y) {
      if (used[static_cast<std::size_t>(y)]) continue;
      if (colors_b[static_cast<std::size_t>(y)] != colors_a[static_cast<std::size_t>(x)]) continue;
      if (a.label[static_cast<std::size_t>(x)] != b.label[static_cast<std::size_t>(y)]) continue;
      bool ok = true;
      for (int k = 0; k < depth && ok; ++k) {
        int px = order[static_cast<std::size_t>(k)];
        int py = map[static_cast<std::size_t>(px)];
        ok = a.at(x, px) == b.at(y, py) && a.at(px, x) == b.at(py, y);
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(x)] = y;
      used[static_cast<std::size_t>(y)] = true;
      if (self(self, depth + 1)) return true;
      used[static_cast<std::size_t>(y)] = false;
      map[static_cast<std::size_t>(x)] = -1;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return map;
}

}  // namespace tww::detail

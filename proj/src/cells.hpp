#pragma once

// Dense trigraph kernel shared by Trigraph and the exact search. Cell (i,j)
// packs, for every symbol s, bit 2s = R_s(i,j) and bit 2s+1 = R_s*(i,j).

#include <bit>
#include <cstdint>
#include <vector>

namespace tww::detail {

constexpr std::uint32_t kBlack = 0x55555555U;
constexpr std::uint32_t kRed = 0xAAAAAAAAU;

struct Cells {
  int n = 0;
  std::vector<std::uint32_t> c;

  std::uint32_t at(int i, int j) const {
    return c[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  }
  std::uint32_t& at(int i, int j) {
    return c[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  }
};

// Black-bit positions where u,v are not clones for w, given the four cells.
inline std::uint32_t not_clone(std::uint32_t uw, std::uint32_t vw, std::uint32_t wu,
                               std::uint32_t wv) {
  std::uint32_t diff = ((uw ^ vw) | (wu ^ wv)) & kBlack;
  std::uint32_t red = ((uw | vw) & kRed) >> 1;
  return diff | red;
}

inline int red_degree(const Cells& m, int v) {
  int d = 0;
  for (int w = 0; w < m.n; ++w) d += std::popcount(m.at(v, w) & kRed);
  return d;
}

inline std::vector<int> red_degrees(const Cells& m) {
  std::vector<int> d(static_cast<std::size_t>(m.n));
  for (int v = 0; v < m.n; ++v) d[static_cast<std::size_t>(v)] = red_degree(m, v);
  return d;
}

/// Max red degree of the trigraph obtained by contracting a and b, without
/// building it. `deg` holds the current red degrees.
inline int max_red_after(const Cells& m, const std::vector<int>& deg, int a, int b) {
  int zdeg = 0, mx = 0;
  for (int w = 0; w < m.n; ++w) {
    if (w == a || w == b) continue;
    std::uint32_t aw = m.at(a, w), bw = m.at(b, w);
    int r = std::popcount(not_clone(aw, bw, m.at(w, a), m.at(w, b)));
    zdeg += r;
    int nd = deg[static_cast<std::size_t>(w)] - std::popcount(aw & kRed) - std::popcount(bw & kRed) + r;
    if (nd > mx) mx = nd;
  }
  return zdeg > mx ? zdeg : mx;
}

/// Contracts a and b; the merged vertex occupies slot min(a,b) and the other
/// slot is removed (later slots shift down by one).
inline Cells contract_cells(const Cells& m, int a, int b) {
  if (a > b) std::swap(a, b);
  Cells out;
  out.n = m.n - 1;
  out.c.assign(static_cast<std::size_t>(out.n) * static_cast<std::size_t>(out.n), 0);
  auto old = [b](int x) { return x < b ? x : x + 1; };
  for (int x = 0; x < out.n; ++x) {
    int ox = old(x);
    for (int y = 0; y < out.n; ++y) {
      if (x == y) continue;
      int oy = old(y);
      if (ox != a && oy != a) out.at(x, y) = m.at(ox, oy);
    }
  }
  for (int y = 0; y < out.n; ++y) {
    int w = old(y);
    if (w == a) continue;
    std::uint32_t aw = m.at(a, w), wa = m.at(w, a);
    std::uint32_t nc = not_clone(aw, m.at(b, w), wa, m.at(w, b));
    out.at(a, y) = (aw & kBlack & ~nc) | (nc << 1);
    out.at(y, a) = (wa & kBlack & ~nc) | (nc << 1);
  }
  return out;
}

}  // namespace tww::detail

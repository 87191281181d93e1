#include "tww/starunfold.hpp"

#include <algorithm>

namespace tww {

namespace {

int color(const std::vector<int>& col, int v) { return col[static_cast<std::size_t>(v)]; }

// A bicolored P4 through v among colored vertices (color 0 = uncolored).
bool bicolored_p4_at(const Graph& g, const std::vector<int>& col, int v, std::vector<int>* witness) {
  auto alternating = [&](int a, int b, int c, int d) {
    int ca = color(col, a), cb = color(col, b);
    return ca != 0 && cb != 0 && ca == color(col, c) && cb == color(col, d);
  };
  for (int a : g.neighbors(v)) {
    if (color(col, a) == 0) continue;
    for (int b : g.neighbors(a)) {
      if (b == v) continue;
      // v - a - b - w
      for (int w : g.neighbors(b))
        if (w != a && w != v && alternating(v, a, b, w)) {
          if (witness) *witness = {v, a, b, w};
          return true;
        }
    }
    // a - v - b - w
    for (int b : g.neighbors(v)) {
      if (b == a) continue;
      for (int w : g.neighbors(b))
        if (w != v && w != a && alternating(a, v, b, w)) {
          if (witness) *witness = {a, v, b, w};
          return true;
        }
    }
  }
  return false;
}

bool clashes(const Graph& g, const std::vector<int>& col, int v, int c) {
  for (int w : g.neighbors(v))
    if (color(col, w) == c) return true;
  return false;
}

}  // namespace

StarColoring star_coloring(const Graph& g) {
  const int n = static_cast<int>(g.size());
  auto order = degeneracy(g).order;
  std::reverse(order.begin(), order.end());
  std::vector<int> col(static_cast<std::size_t>(n), 0);
  int used = 0;
  for (int v : order) {
    for (int c = 1;; ++c) {
      if (clashes(g, col, v, c)) continue;
      col[static_cast<std::size_t>(v)] = c;
      if (bicolored_p4_at(g, col, v, nullptr)) {
        col[static_cast<std::size_t>(v)] = 0;
        continue;
      }
      used = std::max(used, c);
      break;
    }
  }
  return {col, used};
}

StarCheck verify_star_coloring(const Graph& g, const StarColoring& col) {
  const int n = static_cast<int>(g.size());
  if (col.colors.size() != g.size()) return {false, {}};
  for (int v = 0; v < n; ++v) {
    int c = color(col.colors, v);
    if (c < 1 || c > col.c) return {false, {v}};
    for (int w : g.neighbors(v))
      if (color(col.colors, w) == c) return {false, {v, w}};
  }
  for (int b = 0; b < n; ++b)
    for (int c : g.neighbors(b))
      for (int a : g.neighbors(b)) {
        if (a == c || color(col.colors, a) != color(col.colors, c)) continue;
        for (int d : g.neighbors(c))
          if (d != b && d != a && color(col.colors, d) == color(col.colors, b)) return {false, {a, b, c, d}};
      }
  return {};
}

StarColoring min_star_coloring(const Graph& g) {
  const int n = static_cast<int>(g.size());
  if (n == 0) return {{}, 0};
  std::vector<int> col(static_cast<std::size_t>(n), 0);
  for (int k = 1; k <= n; ++k) {
    // vertices in index order; a new color may only be the next unused one
    auto go = [&](auto&& self, int v, int used) -> bool {
      if (v == n) return true;
      for (int c = 1; c <= std::min(k, used + 1); ++c) {
        if (clashes(g, col, v, c)) continue;
        col[static_cast<std::size_t>(v)] = c;
        if (!bicolored_p4_at(g, col, v, nullptr) && self(self, v + 1, std::max(used, c))) return true;
        col[static_cast<std::size_t>(v)] = 0;
      }
      return false;
    };
    if (go(go, 0, 0)) return {col, k};
  }
  return {col, n};  // unreachable: the injective coloring always works
}

void Orientation::add(int from, int to) {
  if (arcs_.insert({from, to}).second) in_[static_cast<std::size_t>(to)].push_back(from);
}

Orientation orient_stars(const Graph& g, const StarColoring& col) {
  auto check = verify_star_coloring(g, col);
  if (!check.ok) {
    std::string w;
    for (int v : check.witness) w += (w.empty() ? "" : " ") + g.name(v);
    throw ColoringError("not a star coloring (witness: " + w + ")");
  }
  const int n = static_cast<int>(g.size());
  // neighbours of v with color c
  auto count = [&](int v, int c) {
    int k = 0;
    for (int w : g.neighbors(v)) k += color(col.colors, w) == c ? 1 : 0;
    return k;
  };
  Orientation o(g.size());
  for (int u = 0; u < n; ++u)
    for (int v : g.neighbors(u)) {
      if (v < u) continue;
      int du = count(u, color(col.colors, v)), dv = count(v, color(col.colors, u));
      if (du > 1 || (du == 1 && dv == 1))
        o.add(u, v);
      else
        o.add(v, u);
    }
  return o;
}

RelStructure MarkedGraph::as_structure() const {
  std::vector<Symbol> syms{{"E", 2}};
  for (const auto& [name, _] : marks) syms.push_back({name, 1});
  RelStructure s(Signature(syms), graph.vertices());
  for (const auto& t : graph.structure().tuples(0)) s.add(0, t);
  std::size_t k = 1;
  for (const auto& [_, vs] : marks) {
    for (int v : vs) s.add(k, {v});
    ++k;
  }
  return s;
}

MarkedGraph MarkedGraph::from_structure(const RelStructure& s) {
  MarkedGraph mg{Graph(s.reduct({"E"})), {}};
  for (std::size_t i = 0; i < s.signature().size(); ++i) {
    if (s.signature()[i].arity != 1) continue;
    auto& set = mg.marks[s.signature()[i].name];
    for (const auto& t : s.tuples(i)) set.insert(t[0]);
  }
  return mg;
}

std::string color_mark(int c) { return "C_" + std::to_string(c); }

std::string anchor_mark(const std::string& symbol, const std::vector<int>& colors) {
  std::string m = "M_" + symbol;
  for (int c : colors) m += "_" + std::to_string(c);
  return m;
}

MarkedGraph mark_for_unfold(const RelStructure& s, const StarColoring& col, const Orientation& o) {
  Graph g = gaifman(s);
  if (col.colors.size() != g.size()) throw ColoringError("coloring size does not match the structure");
  MarkedGraph mg{g, {}};
  for (int v = 0; v < static_cast<int>(g.size()); ++v) mg.marks[color_mark(color(col.colors, v))].insert(v);
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    const auto& sym = s.signature()[r];
    for (const auto& t : s.tuples(r)) {
      std::vector<int> colors;
      for (int v : t) colors.push_back(color(col.colors, v));
      // Hamiltonian path of the tournament, inserting in tuple order.
      std::vector<int> path;
      for (int v : t) {
        for (int w : path) {
          if (color(col.colors, v) == color(col.colors, w))
            throw ColoringError("tuple of " + sym.name + " has two vertices of color " +
                                std::to_string(color(col.colors, v)));
          if (!o.has(v, w) && !o.has(w, v))
            throw ColoringError("orientation misses the edge " + g.name(v) + g.name(w));
        }
        auto pos = path.begin();
        while (pos != path.end() && !o.has(v, *pos)) ++pos;
        path.insert(pos, v);
      }
      mg.marks[anchor_mark(sym.name, colors)].insert(path.back());
    }
  }
  return mg;
}

MarkedGraph mark_for_unfold(const RelStructure& s) {
  Graph g = gaifman(s);
  auto col = star_coloring(g);
  return mark_for_unfold(s, col, orient_stars(g, col));
}

RelStructure unfold(const MarkedGraph& mg, const Signature& target) {
  const auto& g = mg.graph;
  const int n = static_cast<int>(g.size());
  std::vector<int> col(static_cast<std::size_t>(n), 0);
  int cmax = 0;
  for (const auto& [name, vs] : mg.marks) {
    if (name.rfind("C_", 0) != 0) continue;
    int c = 0;
    try {
      c = std::stoi(name.substr(2));
    } catch (const std::exception&) {
      throw DecodeError("unfold", "bad color mark '" + name + "'");
    }
    if (c < 1) throw DecodeError("unfold", "bad color mark '" + name + "'");
    for (int v : vs) {
      if (color(col, v) != 0) throw DecodeError("unfold", "'" + g.name(v) + "' carries two color marks");
      col[static_cast<std::size_t>(v)] = c;
    }
    cmax = std::max(cmax, c);
  }
  for (int v = 0; v < n; ++v)
    if (color(col, v) == 0) throw DecodeError("unfold", "'" + g.name(v) + "' has no color mark");

  // Every anchor name the target signature can produce.
  std::map<std::string, std::pair<std::size_t, std::vector<int>>> anchors;
  for (std::size_t r = 0; r < target.size(); ++r) {
    if (target[r].arity == 1) {
      for (int c = 1; c <= cmax; ++c) anchors[anchor_mark(target[r].name, {c})] = {r, {c}};
    } else if (target[r].arity == 2) {
      for (int c1 = 1; c1 <= cmax; ++c1)
        for (int c2 = 1; c2 <= cmax; ++c2)
          if (c1 != c2) anchors[anchor_mark(target[r].name, {c1, c2})] = {r, {c1, c2}};
    } else {
      throw SignatureError("unfold supports arity 1 and 2 only");
    }
  }

  RelStructure out(target, g.vertices());
  for (const auto& [name, vs] : mg.marks) {
    if (name.rfind("C_", 0) == 0) continue;
    auto it = anchors.find(name);
    if (it == anchors.end()) throw DecodeError("unfold", "mark '" + name + "' matches no target symbol");
    const auto& [r, colors] = it->second;
    for (int x : vs) {
      if (colors.size() == 1) {
        if (color(col, x) != colors[0]) throw DecodeError("unfold", "anchor " + name + " on a vertex of another color");
        out.add(r, {x});
        continue;
      }
      int mine = color(col, x);
      if (mine != colors[0] && mine != colors[1])
        throw DecodeError("unfold", "anchor " + name + " on '" + g.name(x) + "' of color " + std::to_string(mine));
      int want = mine == colors[0] ? colors[1] : colors[0];
      std::vector<int> cand;
      for (int w : g.neighbors(x))
        if (color(col, w) == want) cand.push_back(w);
      if (cand.size() != 1)
        throw DecodeError("unfold", "anchor " + name + " on '" + g.name(x) + "' sees " + std::to_string(cand.size()) +
                                        " neighbours of color " + std::to_string(want));
      if (mine == colors[0])
        out.add(r, {x, cand[0]});
      else
        out.add(r, {cand[0], x});
    }
  }
  return out;
}

}  // namespace tww

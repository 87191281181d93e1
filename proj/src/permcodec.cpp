#include "tww/permcodec.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <tuple>

namespace tww {

EncodedPermutation encode_T1(const OrderedGraph& og, const StarColoring& col) {
  const Graph& g = og.graph();
  const int c = col.c;
  auto o = orient_stars(g, col);

  struct Elem {
    int u, i, f;  // f: the vertex f_i of the element
  };
  std::vector<Elem> elems;  // in <1 order
  for (int u : og.order()) {
    std::map<int, int> in_by_color;
    for (int w : o.in(u)) in_by_color[col.colors[static_cast<std::size_t>(w)]] = w;
    for (auto [i, w] : in_by_color) elems.push_back({u, i, w});
    elems.push_back({u, c + 1, u});
  }
  const std::size_t n = elems.size();
  std::vector<std::string> names;
  for (std::size_t k = 0; k < n; ++k) names.push_back(std::to_string(k + 1));

  std::vector<std::size_t> by2(n);
  std::iota(by2.begin(), by2.end(), 0);
  auto key = [&](std::size_t k) {
    const auto& e = elems[k];
    return std::make_tuple(og.rank(e.f), e.i, og.rank(e.u));
  };
  std::sort(by2.begin(), by2.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  std::vector<std::string> order2;
  for (auto k : by2) order2.push_back(names[k]);

  std::set<std::string> marked;
  EncodedPermutation out;
  for (std::size_t k = 0; k < n; ++k) {
    if (elems[k].i == c + 1) marked.insert(names[k]);
    out.provenance.emplace_back(elems[k].u, elems[k].i);
  }
  out.perm = Permutation(names, names, order2, {{"M", marked}});
  out.blow = c + 1;
  return out;
}

T2Result decode_T2_witnessed(const Permutation& p, const std::string& mark) {
  const int n = static_cast<int>(p.size());
  auto marked = [&](int e) { return p.marked(mark, e); };
  if (n > 0 && !marked(p.order1().back()))
    throw MarkError("the <1-maximum '" + p.name(p.order1().back()) + "' is not marked " + mark);

  auto next_marked = [&](const std::vector<int>& order) {
    std::vector<int> next(static_cast<std::size_t>(n), -1);
    int seen = -1;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      next[static_cast<std::size_t>(*it)] = seen;
      if (marked(*it)) seen = *it;
    }
    return next;
  };
  auto next1 = next_marked(p.order1()), next2 = next_marked(p.order2());

  T2Result r;
  std::vector<int> vertex_of(static_cast<std::size_t>(n), -1);
  std::vector<std::string> names;
  for (int e : p.order1())
    if (marked(e)) {
      vertex_of[static_cast<std::size_t>(e)] = static_cast<int>(r.elements.size());
      r.elements.push_back(e);
      names.push_back(p.name(e));
    }
  std::map<std::pair<int, int>, T2Witness> edges;
  for (int z : p.order1()) {
    if (marked(z)) continue;
    int a = next1[static_cast<std::size_t>(z)], b = next2[static_cast<std::size_t>(z)];
    if (a < 0 || b < 0 || a == b) continue;
    int u = vertex_of[static_cast<std::size_t>(a)], v = vertex_of[static_cast<std::size_t>(b)];
    T2Witness w{std::min(u, v), std::max(u, v), z, u < v ? 1 : 2};
    edges.emplace(std::make_pair(w.u, w.v), w);
  }
  std::vector<std::pair<std::string, std::string>> el;
  for (const auto& [uv, w] : edges) {
    el.emplace_back(names[static_cast<std::size_t>(uv.first)], names[static_cast<std::size_t>(uv.second)]);
    r.witnesses.push_back(w);
  }
  std::vector<int> order(names.size());
  std::iota(order.begin(), order.end(), 0);
  r.graph = OrderedGraph(Graph::from_edges(names, el), order);
  return r;
}

OrderedGraph decode_T2(const Permutation& p, const std::string& mark) { return decode_T2_witnessed(p, mark).graph; }

OrderedGraph relabel(const T2Result& decoded, const EncodedPermutation& enc, const OrderedGraph& source) {
  const auto& g = decoded.graph.graph();
  std::vector<std::string> names;
  for (int e : decoded.elements) {
    auto [u, i] = enc.provenance.at(static_cast<std::size_t>(e));
    if (i != enc.blow) throw DecodeError("T2", "marked element '" + enc.perm.name(e) + "' is not a vertex copy");
    names.push_back(source.graph().name(u));
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& t : g.structure().tuples(0))
    if (t[0] < t[1]) edges.emplace_back(names[static_cast<std::size_t>(t[0])], names[static_cast<std::size_t>(t[1])]);
  return OrderedGraph(Graph::from_edges(names, edges), decoded.graph.order());
}

namespace {

// Extends a partial embedding of pat's first j entries; values are one-line.
bool extend(const std::vector<int>& text, const std::vector<int>& pat, std::vector<int>& chosen, std::size_t from) {
  const std::size_t j = chosen.size();
  if (j == pat.size()) return true;
  const std::size_t need = pat.size() - j;
  for (std::size_t i = from; i + need <= text.size(); ++i) {
    int x = text[i];
    bool ok = true;
    for (std::size_t l = 0; l < j && ok; ++l) ok = (x > chosen[l]) == (pat[j] > pat[l]);
    if (!ok) continue;
    chosen.push_back(x);
    if (extend(text, pat, chosen, i + 1)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool contains_pattern(const Permutation& p, const Permutation& pat, bool parallel) {
  const auto text = p.one_line();
  const auto pv = pat.one_line();
  if (pv.empty()) return true;
  if (pv.size() > text.size()) return false;
  const int starts = static_cast<int>(text.size() - pv.size() + 1);
  if (!parallel) {
    std::vector<int> chosen;
    return extend(text, pv, chosen, 0);
  }
  std::atomic<bool> found{false};
#pragma omp parallel for schedule(dynamic, 1)
  for (int s = 0; s < starts; ++s) {
    if (found.load(std::memory_order_relaxed)) continue;
    std::vector<int> chosen{text[static_cast<std::size_t>(s)]};
    if (extend(text, pv, chosen, static_cast<std::size_t>(s) + 1)) found = true;
  }
  return found;
}

std::optional<Permutation> smallest_avoided_pattern(const std::vector<Permutation>& ps, int max_len, bool parallel) {
  for (int len = 1; len <= max_len; ++len) {
    std::vector<int> v(static_cast<std::size_t>(len));
    std::iota(v.begin(), v.end(), 1);
    do {
      auto pat = Permutation::from_one_line(v);
      bool somewhere = std::any_of(ps.begin(), ps.end(), [&](const Permutation& p) { return contains_pattern(p, pat, parallel); });
      if (!somewhere) return pat;
    } while (std::next_permutation(v.begin(), v.end()));
  }
  return std::nullopt;
}

std::string to_one_line_text(const Permutation& p, const std::string& mark) {
  std::ostringstream out;
  auto v = p.one_line();
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
  out << "\n";
  auto it = p.marks().find(mark);
  if (it != p.marks().end()) {
    std::vector<int> pos;
    for (int e : it->second) pos.push_back(p.rank1(e) + 1);
    std::sort(pos.begin(), pos.end());
    out << mark << ":";
    for (int x : pos) out << " " << x;
    out << "\n";
  }
  return out.str();
}

Permutation parse_one_line_text(const std::string& text, const std::string& mark) {
  std::vector<int> values;
  std::vector<std::pair<int, std::size_t>> marks;  // position, offset
  bool have_values = false, have_marks = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto read_ints = [&](std::vector<std::pair<int, std::size_t>>& out) {
    while (i < n && text[i] != '\n') {
      if (text[i] == ' ' || text[i] == '\t' || text[i] == '\r' || text[i] == ',') {
        ++i;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError(i, std::string("unexpected '") + text[i] + "'");
      std::size_t start = i;
      long x = 0;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
        x = x * 10 + (text[i] - '0');
        if (x > 1000000000L) throw ParseError(start, "number too large");
        ++i;
      }
      out.emplace_back(static_cast<int>(x), start);
    }
  };
  while (i < n) {
    std::size_t line = i;
    while (i < n && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r')) ++i;
    if (i < n && text[i] == '\n') {
      ++i;
      continue;
    }
    if (i >= n) break;
    if (text.compare(i, mark.size() + 1, mark + ":") == 0) {
      if (!have_values) throw ParseError(i, "marks before the permutation");
      if (have_marks) throw ParseError(i, "second marks line");
      i += mark.size() + 1;
      read_ints(marks);
      have_marks = true;
    } else {
      if (have_values) throw ParseError(line, "unexpected second permutation line");
      std::vector<std::pair<int, std::size_t>> vals;
      read_ints(vals);
      for (auto [v, _] : vals) values.push_back(v);
      have_values = true;
    }
    if (i < n) ++i;
  }
  if (!have_values) throw ParseError(n, "no permutation found");
  auto p = Permutation::from_one_line(values);
  if (have_marks) {
    std::set<int> m;
    for (auto [pos, off] : marks) {
      if (pos < 1 || static_cast<std::size_t>(pos) > p.size()) throw ParseError(off, "mark position out of range");
      m.insert(p.order1()[static_cast<std::size_t>(pos - 1)]);
    }
    p.set_mark(mark, m);
  }
  return p;
}

}  // namespace tww

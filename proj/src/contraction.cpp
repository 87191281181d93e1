#include "tww/contraction.hpp"

#include <algorithm>
#include <limits>

#include "cells.hpp"

namespace tww {

namespace {

detail::Cells cells_of(const Trigraph& t) {
  detail::Cells m;
  m.n = static_cast<int>(t.size());
  m.c.resize(t.size() * t.size());
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) m.at(i, j) = t.cell(i, j);
  return m;
}

}  // namespace

Trigraph::Trigraph(const RelStructure& s) : sig_(s.signature()), names_(s.domain()) {
  if (!sig_.all_binary()) throw SignatureError("contractions need a binary signature");
  if (static_cast<int>(sig_.size()) > kMaxSymbols)
    throw SignatureError("at most " + std::to_string(kMaxSymbols) + " symbols are supported");
  const std::size_t n = names_.size();
  cells_.assign(n * n, 0);
  for (std::size_t sym = 0; sym < sig_.size(); ++sym)
    for (const auto& t : s.tuples(sym))
      cells_[static_cast<std::size_t>(t[0]) * n + static_cast<std::size_t>(t[1])] |= 1U << (2 * sym);
}

std::optional<int> Trigraph::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<int>(it - names_.begin());
}

int Trigraph::index_of(const std::string& name) const {
  if (auto i = find(name)) return *i;
  throw ArgumentError("element '" + name + "' not in trigraph");
}

int Trigraph::red_degree(int v) const {
  int d = 0;
  for (std::size_t w = 0; w < size(); ++w) d += std::popcount(cell(v, static_cast<int>(w)) & detail::kRed);
  return d;
}

int Trigraph::max_red_degree() const {
  int d = 0;
  for (std::size_t v = 0; v < size(); ++v) d = std::max(d, red_degree(static_cast<int>(v)));
  return d;
}

std::size_t Trigraph::red_pair_count() const {
  std::size_t c = 0;
  for (std::size_t v = 0; v < size(); ++v) c += static_cast<std::size_t>(red_degree(static_cast<int>(v)));
  return c / 2;
}

Trigraph Trigraph::contract(int u, int v, const std::string& z) const {
  const int n = static_cast<int>(size());
  if (u < 0 || v < 0 || u >= n || v >= n) throw ArgumentError("contracted element out of range");
  if (u == v) throw ArgumentError("cannot contract '" + name(u) + "' with itself");
  if (find(z)) throw ArgumentError("fresh element '" + z + "' already in domain");
  auto m = detail::contract_cells(cells_of(*this), u, v);
  Trigraph out;
  out.sig_ = sig_;
  out.names_ = names_;
  const int a = std::min(u, v), b = std::max(u, v);
  out.names_[static_cast<std::size_t>(a)] = z;
  out.names_.erase(out.names_.begin() + b);
  out.cells_ = std::move(m.c);
  return out;
}

RelStructure Trigraph::as_structure() const {
  std::vector<Symbol> syms;
  for (const auto& s : sig_.symbols()) syms.push_back(s);
  for (const auto& s : sig_.symbols()) syms.push_back({s.name + "*", 2});
  RelStructure r(Signature(syms), names_);
  const std::size_t k = sig_.size();
  for (int i = 0; i < static_cast<int>(size()); ++i)
    for (int j = 0; j < static_cast<int>(size()); ++j)
      for (std::size_t s = 0; s < k; ++s) {
        if (black(s, i, j)) r.add(s, {i, j});
        if (red(s, i, j)) r.add(k + s, {i, j});
      }
  return r;
}

Trigraph contract(const Trigraph& t, const std::string& u, const std::string& v,
                  const std::string& z) {
  return t.contract(t.index_of(u), t.index_of(v), z);
}

int red_degree(const Trigraph& t, const std::string& v) { return t.red_degree(t.index_of(v)); }

std::vector<Trigraph> replay(const ContractionSequence& seq) {
  if (seq.initial.size() == 0) throw SequenceError(0, "empty structure");
  std::vector<Trigraph> snaps;
  snaps.emplace_back(seq.initial);
  std::set<std::string> used(seq.initial.domain().begin(), seq.initial.domain().end());
  for (std::size_t i = 0; i < seq.steps.size(); ++i) {
    const auto& st = seq.steps[i];
    const Trigraph& cur = snaps.back();
    auto u = cur.find(st.u), v = cur.find(st.v);
    if (!u) throw SequenceError(i, "element '" + st.u + "' not present");
    if (!v) throw SequenceError(i, "element '" + st.v + "' not present");
    if (*u == *v) throw SequenceError(i, "contracting '" + st.u + "' with itself");
    if (st.z.empty() || !used.insert(st.z).second)
      throw SequenceError(i, "name '" + st.z + "' is not fresh");
    snaps.push_back(cur.contract(*u, *v, st.z));
  }
  if (snaps.back().size() != 1)
    throw SequenceError(seq.steps.size(), "sequence ends with " +
                                              std::to_string(snaps.back().size()) + " elements");
  return snaps;
}

int validate_sequence(const ContractionSequence& seq) {
  int d = 0;
  for (const auto& t : replay(seq)) d = std::max(d, t.max_red_degree());
  return d;
}

std::string fresh_name(const Trigraph& t, int u, int v, const std::set<std::string>& used) {
  std::string z = t.name(std::min(u, v)) + t.name(std::max(u, v));
  while (used.count(z)) z += "'";
  return z;
}

ContractionSequence sequence_from_slots(const RelStructure& s,
                                        const std::vector<std::pair<int, int>>& slots) {
  ContractionSequence seq{s, {}};
  Trigraph t(s);
  std::set<std::string> used(s.domain().begin(), s.domain().end());
  for (auto [a, b] : slots) {
    std::string z = fresh_name(t, a, b, used);
    used.insert(z);
    seq.steps.push_back({t.name(std::min(a, b)), t.name(std::max(a, b)), z});
    t = t.contract(a, b, z);
  }
  return seq;
}

ContractionSequence greedy_sequence(const RelStructure& s) {
  Trigraph t(s);
  auto m = cells_of(t);
  std::vector<std::pair<int, int>> slots;
  while (m.n > 1) {
    auto deg = detail::red_degrees(m);
    int best = std::numeric_limits<int>::max(), ba = 0, bb = 1;
    for (int a = 0; a < m.n && best > 0; ++a)
      for (int b = a + 1; b < m.n; ++b) {
        int r = detail::max_red_after(m, deg, a, b);
        if (r < best) {
          best = r;
          ba = a;
          bb = b;
          if (best == 0) break;
        }
      }
    slots.emplace_back(ba, bb);
    m = detail::contract_cells(m, ba, bb);
  }
  return sequence_from_slots(s, slots);
}

}  // namespace tww

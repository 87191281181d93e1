// Exact twin-width: iterative deepening on d, DFS over contractions with
// a forced twin move and an isomorphism-keyed memo of failed states.

#include <algorithm>
#include <array>
#include <atomic>
#include <limits>
#include <mutex>
#include <unordered_map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cells.hpp"
#include "tww/contraction.hpp"
#include "tww/pattern_matrix.hpp"

namespace tww {

namespace {

using detail::Cells;

struct Key {
  detail::PatternMatrix m;
  std::vector<int> colors;
  std::uint64_t hash = 0;
};

Key make_key(const Cells& c) {
  Key k;
  k.m.n = c.n;
  k.m.label.assign(static_cast<std::size_t>(c.n), 0);
  k.m.code = c.c;
  k.colors = detail::refine_colors(k.m, &k.hash);
  return k;
}

// Maps an isomorphism class of trigraphs to the largest d for which the
// class is known to admit no d-sequence.
class Memo {
 public:
  int lookup(const Key& k) {
    auto& sh = shard(k.hash);
    std::lock_guard<std::mutex> lock(sh.mu);
    auto it = sh.map.find(k.hash);
    if (it == sh.map.end()) return -1;
    for (const auto& e : it->second)
      if (detail::find_isomorphism(k.m, k.colors, e.key.m, e.key.colors)) return e.fail;
    return -1;
  }

  void record(Key k, int d) {
    auto& sh = shard(k.hash);
    std::lock_guard<std::mutex> lock(sh.mu);
    auto& bucket = sh.map[k.hash];
    for (auto& e : bucket)
      if (detail::find_isomorphism(k.m, k.colors, e.key.m, e.key.colors)) {
        e.fail = std::max(e.fail, d);
        return;
      }
    bucket.push_back({std::move(k), d});
    ++sh.count;
  }

  std::size_t size() {
    std::size_t n = 0;
    for (auto& sh : shards_) {
      std::lock_guard<std::mutex> lock(sh.mu);
      n += sh.count;
    }
    return n;
  }

 private:
  struct Entry {
    Key key;
    int fail;
  };
  struct Shard {
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::vector<Entry>> map;
    std::size_t count = 0;
  };
  Shard& shard(std::uint64_t h) { return shards_[h % shards_.size()]; }
  std::array<Shard, 64> shards_;
};

enum class Outcome { Success, Fail, Aborted };

struct BudgetHit {};

std::optional<std::pair<int, int>> find_twins(const Cells& m) {
  for (int a = 0; a < m.n; ++a)
    for (int b = a + 1; b < m.n; ++b) {
      bool twins = true;
      for (int w = 0; w < m.n && twins; ++w) {
        if (w == a || w == b) continue;
        twins = m.at(a, w) == m.at(b, w) && m.at(w, a) == m.at(w, b);
      }
      if (twins) return std::make_pair(a, b);
    }
  return std::nullopt;
}

// Pairs whose contraction keeps every red degree <= d, best first.
std::vector<std::pair<int, int>> candidate_moves(const Cells& m, int d) {
  auto deg = detail::red_degrees(m);
  std::vector<std::tuple<int, int, int>> scored;
  for (int a = 0; a < m.n; ++a)
    for (int b = a + 1; b < m.n; ++b) {
      int r = detail::max_red_after(m, deg, a, b);
      if (r <= d) scored.emplace_back(r, a, b);
    }
  std::sort(scored.begin(), scored.end());
  std::vector<std::pair<int, int>> out;
  out.reserve(scored.size());
  for (auto [r, a, b] : scored) out.emplace_back(a, b);
  return out;
}

class Searcher {
 public:
  Searcher(int d, Memo& memo, std::atomic<std::uint64_t>& states, std::optional<std::uint64_t> budget,
           const std::atomic<int>* best, int index)
      : d_(d), memo_(memo), states_(states), budget_(budget), best_(best), index_(index) {}

  Outcome run(const Cells& m, std::vector<std::pair<int, int>>& path) {
    if (m.n <= d_ + 1) {
      // Any order works: red degrees are bounded by n - 1.
      for (int k = m.n; k > 1; --k) path.emplace_back(0, 1);
      return Outcome::Success;
    }
    std::uint64_t s = ++states_;
    if (budget_ && s > *budget_) throw BudgetHit{};
    if (best_ && best_->load(std::memory_order_relaxed) < index_) return Outcome::Aborted;

    if (auto tw = find_twins(m)) {
      path.push_back(*tw);
      Outcome o = run(detail::contract_cells(m, tw->first, tw->second), path);
      if (o != Outcome::Success) path.pop_back();
      return o;
    }
    Key key = make_key(m);
    if (memo_.lookup(key) >= d_) return Outcome::Fail;
    for (auto mv : candidate_moves(m, d_)) {
      path.push_back(mv);
      Outcome o = run(detail::contract_cells(m, mv.first, mv.second), path);
      if (o == Outcome::Success) return o;
      path.pop_back();
      if (o == Outcome::Aborted) return o;
    }
    memo_.record(std::move(key), d_);
    return Outcome::Fail;
  }

 private:
  int d_;
  Memo& memo_;
  std::atomic<std::uint64_t>& states_;
  std::optional<std::uint64_t> budget_;
  const std::atomic<int>* best_;
  int index_;
};

// One iteration at fixed d with the first level fanned out to threads. The
// lowest-index successful child wins, which keeps the result identical to
// the serial search.
Outcome search_parallel(const Cells& root, int d, Memo& memo, std::atomic<std::uint64_t>& states,
                        std::optional<std::uint64_t> budget, std::vector<std::pair<int, int>>& path) {
  Cells m = root;
  while (m.n > d + 1) {
    auto tw = find_twins(m);
    if (!tw) break;
    path.push_back(*tw);
    m = detail::contract_cells(m, tw->first, tw->second);
  }
  if (m.n <= d + 1) return Searcher(d, memo, states, budget, nullptr, 0).run(m, path);
  ++states;
  Key key = make_key(m);
  if (memo.lookup(key) >= d) return Outcome::Fail;

  const auto moves = candidate_moves(m, d);
  const int count = static_cast<int>(moves.size());
  std::atomic<int> best{std::numeric_limits<int>::max()};
  std::atomic<bool> budget_hit{false};
  std::vector<std::vector<std::pair<int, int>>> found(moves.size());

#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) {
    if (budget_hit.load() || best.load() < i) continue;
    try {
      std::vector<std::pair<int, int>> sub{moves[static_cast<std::size_t>(i)]};
      Searcher s(d, memo, states, budget, &best, i);
      auto mv = moves[static_cast<std::size_t>(i)];
      if (s.run(detail::contract_cells(m, mv.first, mv.second), sub) == Outcome::Success) {
        found[static_cast<std::size_t>(i)] = std::move(sub);
        int cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    } catch (const BudgetHit&) {
      budget_hit = true;
    }
  }
  if (budget_hit) throw BudgetHit{};
  int b = best.load();
  if (b < count) {
    path.insert(path.end(), found[static_cast<std::size_t>(b)].begin(),
                found[static_cast<std::size_t>(b)].end());
    return Outcome::Success;
  }
  memo.record(std::move(key), d);
  return Outcome::Fail;
}

}  // namespace

ExactResult exact_twinwidth(const RelStructure& s, const ExactOptions& opt) {
  Trigraph t(s);
  ExactResult res;
  if (s.size() <= 1) {
    res.sequence = {s, {}};
    return res;
  }
  ContractionSequence greedy = greedy_sequence(s);
  const int ub = validate_sequence(greedy);

  Cells root;
  root.n = static_cast<int>(t.size());
  root.c.resize(t.size() * t.size());
  for (int i = 0; i < root.n; ++i)
    for (int j = 0; j < root.n; ++j) root.at(i, j) = t.cell(i, j);

  Memo memo;
  std::atomic<std::uint64_t> states{0};
  try {
    for (int d = 0; d < ub; ++d) {
      std::vector<std::pair<int, int>> path;
      Outcome o = opt.parallel ? search_parallel(root, d, memo, states, opt.budget, path)
                               : Searcher(d, memo, states, opt.budget, nullptr, 0).run(root, path);
      if (o == Outcome::Success) {
        res.width = d;
        res.sequence = sequence_from_slots(s, path);
        res.states = states.load();
        res.memo_entries = memo.size();
        return res;
      }
    }
  } catch (const BudgetHit&) {
    throw BudgetExceeded(ub, greedy);
  }
  res.width = ub;
  res.sequence = std::move(greedy);
  res.states = states.load();
  res.memo_entries = memo.size();
  return res;
}

}  // namespace tww

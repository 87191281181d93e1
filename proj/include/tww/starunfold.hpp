#pragma once

// Star colorings, their star-forest orientation, and the pair
// (Gaifman graph + marks, Unfold) that recovers a structure from its
// marked Gaifman graph.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tww/structures.hpp"

namespace tww {

struct StarColoring {
  std::vector<int> colors;  ///< by vertex index, 1-based
  int c = 0;                ///< number of colors
};

struct StarCheck {
  bool ok = true;
  /// Two adjacent vertices of equal color, or a bicolored path on 4 vertices.
  std::vector<int> witness;
};

/// Greedy over the reverse degeneracy order: least color keeping the
/// coloring proper and free of bicolored P4s. Not minimum in general.
StarColoring star_coloring(const Graph& g);
StarCheck verify_star_coloring(const Graph& g, const StarColoring& col);
/// Exhaustive minimum star coloring (small graphs only).
StarColoring min_star_coloring(const Graph& g);

class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(std::size_t n) : in_(n) {}
  void add(int from, int to);
  bool has(int from, int to) const { return arcs_.count({from, to}) != 0; }
  const std::set<std::pair<int, int>>& arcs() const { return arcs_; }
  const std::vector<int>& in(int v) const { return in_[static_cast<std::size_t>(v)]; }

 private:
  std::set<std::pair<int, int>> arcs_;
  std::vector<std::vector<int>> in_;
};

/// Each bicolored star is oriented away from its center; a single edge is
/// oriented from its smaller endpoint. Throws ColoringError for a coloring
/// that is not a star coloring of g.
Orientation orient_stars(const Graph& g, const StarColoring& col);

/// A graph with unary marks "C_<c>" and "M_<R>_<c1>[_<c2>]".
struct MarkedGraph {
  Graph graph;
  std::map<std::string, std::set<int>> marks;

  /// Signature {E} plus one unary symbol per mark.
  RelStructure as_structure() const;
  static MarkedGraph from_structure(const RelStructure& s);
};

std::string color_mark(int c);
std::string anchor_mark(const std::string& symbol, const std::vector<int>& colors);

/// Marks the Gaifman graph of s: every vertex gets its color, every tuple an
/// anchor at the last vertex of a Hamiltonian path of its tournament (built by
/// insertion in tuple order). Throws ColoringError if col/o do not match.
MarkedGraph mark_for_unfold(const RelStructure& s, const StarColoring& col, const Orientation& o);
/// Same, with star_coloring and orient_stars of the Gaifman graph.
MarkedGraph mark_for_unfold(const RelStructure& s);

/// Reconstructs the structure over `target`. Throws DecodeError when a vertex
/// lacks a single color mark or an anchor does not determine one tuple.
RelStructure unfold(const MarkedGraph& mg, const Signature& target);

}  // namespace tww

#pragma once

// Ordered graphs <-> marked permutations (T1 / T2), plus pattern
// containment for checking that a family of permutations is proper.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tww/starunfold.hpp"
#include "tww/structures.hpp"

namespace tww {

struct EncodedPermutation {
  /// Elements are named "1".."n" by <1 position; mark "M" holds the vertex images.
  Permutation perm;
  int blow = 1;  ///< c + 1
  /// element index -> (source vertex index in the ordered graph, copy index 1..c+1)
  std::vector<std::pair<int, int>> provenance;
};

/// Keeps (u, c+1) for every vertex u and (u, i) when u has an in-neighbour of
/// color i under orient_stars. <1 sorts by (u, i); <2 by (f_i, i, u) where
/// f_i((u,i)) is u's in-neighbour of color i and f_{c+1}((u,c+1)) = u.
EncodedPermutation encode_T1(const OrderedGraph& g, const StarColoring& col);

struct T2Witness {
  int u = 0, v = 0;  ///< vertex indices of the decoded graph, u < v
  int z = 0;         ///< unmarked element
  int first = 1;     ///< z <_first (element of u) and z <_other (element of v)
};

struct T2Result {
  OrderedGraph graph;           ///< vertices named after the marked elements
  std::vector<int> elements;    ///< vertex index -> element index
  std::vector<T2Witness> witnesses;  ///< one per edge
};

/// Vertices = elements carrying `mark`, ordered by <1; u ~ v iff some unmarked
/// z has u as the first marked element after it in one order and v in the
/// other. Throws MarkError if the <1-maximum is unmarked.
T2Result decode_T2_witnessed(const Permutation& p, const std::string& mark = "M");
OrderedGraph decode_T2(const Permutation& p, const std::string& mark = "M");

/// Renames the vertices of a decoded graph back to their source names.
OrderedGraph relabel(const T2Result& decoded, const EncodedPermutation& enc, const OrderedGraph& source);

/// Is some sub-permutation of p order-isomorphic to pat (in both orders)?
/// The parallel version splits on the first matched element.
bool contains_pattern(const Permutation& p, const Permutation& pat, bool parallel = true);
std::optional<Permutation> smallest_avoided_pattern(const std::vector<Permutation>& ps, int max_len,
                                                    bool parallel = true);

/// "3 2 6 ..." then optionally "M: 15 28 ..." (marked <1 positions).
std::string to_one_line_text(const Permutation& p, const std::string& mark = "M");
/// Throws ParseError on malformed text and ArgumentError on a non-permutation.
Permutation parse_one_line_text(const std::string& text, const std::string& mark = "M");

}  // namespace tww

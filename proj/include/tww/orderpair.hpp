#pragma once

// L and O: binary tree orders <-> rooted binary trees ordered by a preorder.
// L needs the choice of first children (the marks M); O needs nothing.

#include <set>
#include <string>
#include <vector>

#include "tww/structures.hpp"

namespace tww {

/// DFS discovery order, children visited in their stored order.
std::vector<int> preorder(const RootedTree& y);

/// Edges = cover pairs of the order; < = preorder visiting the marked child
/// first. Throws MarkError unless every internal node has exactly one marked
/// child (the root is never marked).
OrderedGraph transduction_L(const TreeOrder& t, const std::set<int>& first_child_marks);

/// x ≺ y iff x < y and every edge-neighbour w of every z with x < z ≤ y has
/// x ≤ w. Computed directly: the parent of a vertex is its unique smaller
/// neighbour. Throws ArgumentError if `yt` is not a preordered binary tree.
TreeOrder transduction_O(const OrderedGraph& yt);

/// The first child of each internal node in `order` (a preorder of t).
std::set<int> marks_from_preorder(const TreeOrder& t, const std::vector<int>& order);

/// L and O on whole structures: "prec" <-> {"tree", "lt"}; every other
/// symbol is carried over unchanged.
RelStructure lift_L(const RelStructure& full, const std::set<int>& first_child_marks);
RelStructure lift_O(const RelStructure& ordered);

}  // namespace tww

#pragma once

// Hand-transcribed instances from the worked figures, plus small helpers.

#include <random>
#include <string>
#include <vector>

#include "tww/contraction.hpp"
#include "tww/structures.hpp"
#include "tww/twinmodel.hpp"

namespace fx {

tww::Graph fig1_graph();
tww::ContractionSequence fig1_sequence();

/// Center model of the consistency figure (internal nodes 1..5, leaves a..f).
tww::TwinModel fig4_center_model();
/// Its printed internal labels as a ranking (leaves ranked 6).
tww::RankedTwinModel fig4_center_ranked();
/// The right model of the same figure, which admits no ranking.
tww::TwinModel fig4_right_model();
tww::Graph fig4_graph();

/// The 33-element permutation of the permutation figure, one-line notation.
std::vector<int> fig5_one_line();

tww::Graph path(int n);      // vertices "0".."n-1"
tww::Graph complete(int n);  // vertices "0".."n-1"
tww::Graph graph_from_mask(int n, std::uint64_t mask);  // bit k <-> k-th pair (i<j)

/// Random binary structure over `symbols` symbols ("R", "S", ...).
tww::RelStructure random_structure(int n, int symbols, double p, std::mt19937& rng);
tww::Graph random_graph(int n, double p, std::mt19937& rng);
/// Uniformly random pair at every step.
tww::ContractionSequence random_sequence(const tww::RelStructure& s, std::mt19937& rng);
/// Ranked model of a random sequence on a random structure.
tww::RankedTwinModel random_ranked_model(int n, int symbols, double p, std::mt19937& rng);

/// Random rooted binary tree by random merges; leaves "a", "b", ..., internal "n<k>".
tww::RootedTree random_binary_tree(int leaves, std::mt19937& rng);
/// Every rooted binary tree shape with the given number of leaves, with
/// nodes numbered in preorder and named by that number.
std::vector<tww::RootedTree> all_binary_trees(int leaves);

}  // namespace fx

#pragma once

// Independent brute-force reference implementations. None of these reuse
// the library's algorithms beyond the plain data types.

#include <vector>

#include "tww/structures.hpp"
#include "tww/twinmodel.hpp"

namespace oracle {

/// min over all vertex orders of the max number of later neighbours.
int degeneracy_by_orders(const tww::Graph& g);

/// Twin-width by exhaustive search over partition sequences; the trigraph
/// of a partition is the quotient where a pair of parts is red for R iff R
/// is not homogeneous between them in some direction.
int twinwidth_by_partitions(const tww::RelStructure& s);

/// Max red degree of the quotient trigraph for a partition (parts as lists
/// of element indices).
int quotient_max_red(const tww::RelStructure& s, const std::vector<std::vector<int>>& parts);

/// Width of a ranked model straight from the layer definition: every
/// quantifier is a loop over all nodes.
int layer_width_literal(const tww::RankedTwinModel& rm);

/// Consistency by enumerating simple cycles of Y ∪ Z (every Z pair is its
/// own edge) in both traversal directions.
bool consistent_by_cycles(const tww::TwinModel& m);

}  // namespace oracle

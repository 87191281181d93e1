#pragma once

// Twin-models: a rooted binary tree plus transversal relations Z_R, with
// rankings, layers, width and the correspondence with contraction sequences.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tww/contraction.hpp"
#include "tww/structures.hpp"

namespace tww {

using NodePair = std::pair<int, int>;

class TwinModel {
 public:
  TwinModel() = default;
  /// z[s] holds the pairs of Z for binary symbol s of `signature`, as node
  /// indices of `tree`. Pairs (u,u) and pairs touching the root are rejected.
  TwinModel(RootedTree tree, Signature signature, std::vector<std::vector<NodePair>> z);
  static TwinModel from_names(RootedTree tree, Signature signature,
                              const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& z);

  const RootedTree& tree() const { return tree_; }
  const Signature& signature() const { return sig_; }
  const std::vector<NodePair>& z(std::size_t sym) const { return z_[sym]; }
  const std::vector<std::vector<NodePair>>& z() const { return z_; }
  bool has_z(std::size_t sym, int u, int v) const;
  std::size_t leaf_count() const { return tree_.leaves().size(); }

 private:
  RootedTree tree_;
  Signature sig_;
  std::vector<std::vector<NodePair>> z_;  // sorted per symbol
  std::vector<std::set<NodePair>> zset_;
};

struct RankedTwinModel {
  TwinModel model;
  std::vector<int> tau;  ///< by node index

  int n() const { return static_cast<int>(model.leaf_count()); }
};

struct ModelReport {
  bool binary = true;
  bool minimal = true;
  bool consistent = true;
  /// (symbol, dominated pair, dominating pair)
  std::vector<std::tuple<std::size_t, NodePair, NodePair>> minimality_violations;
  /// Closed walk in Y ∪ Z (node names) witnessing inconsistency.
  std::vector<std::string> cycle;

  bool ok() const { return binary && minimal && consistent; }
};

ModelReport validate_model(const TwinModel& m);

/// Structure on the leaves: (x,y) ∈ R iff some (u,v) ∈ Z_R has u ⪯ x, v ⪯ y.
RelStructure decode_structure(const TwinModel& m);

/// Canonical ranking: topological order of the auxiliary digraph with ties
/// broken by node index. Throws ConsistencyError with a witness cycle.
RankedTwinModel rank(const TwinModel& m);

struct RankingReport {
  bool labeling = true;
  bool monotonicity = true;
  bool synchronicity = true;
  std::string detail;

  bool ok() const { return labeling && monotonicity && synchronicity; }
};

RankingReport validate_ranking(const RankedTwinModel& rm);

struct Layer {
  int t = 0;
  std::vector<int> boundary;                 ///< node indices, ascending
  std::vector<std::set<NodePair>> black;     ///< per symbol
  std::vector<std::set<NodePair>> red;       ///< per symbol, symmetric
  int red_degree(int v) const;
};

Layer layer(const RankedTwinModel& rm, int t);
/// Layers for t = 1..n (index t-1).
std::vector<Layer> layers(const RankedTwinModel& rm);
int width(const RankedTwinModel& rm);
/// Width of the canonical ranking.
int width(const TwinModel& m);
/// Minimum width over all rankings (exhaustive; desk scale only).
int min_width_brute(const TwinModel& m);
/// All rankings, as tau vectors (exhaustive; desk scale only).
std::vector<std::vector<int>> all_rankings(const TwinModel& m);

/// Ranked twin-model recording each relation when it first appears.
RankedTwinModel seq_to_model(const ContractionSequence& seq);

/// Contracts the children of the node ranked i for i = n-1 down to 1. With
/// `check`, every replayed trigraph is compared against its layer.
ContractionSequence model_to_seq(const RankedTwinModel& rm, bool check = false);

/// Ranked twin-model of the substructure induced by a set of leaves.
RankedTwinModel induced_submodel(const RankedTwinModel& rm, const std::vector<std::string>& leaves);

/// Signature {"tree"} ∪ {"Z_" + R}: symmetric tree edges and the Z pairs.
RelStructure model_structure(const TwinModel& m);

/// Gaifman degeneracy of the model is at most width + |Σ| + 1.
bool model_gaifman_degeneracy_check(const RankedTwinModel& rm);

}  // namespace tww

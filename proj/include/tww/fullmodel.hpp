#pragma once

// Full twin-models: the tree of a twin-model replaced by its ancestor order,
// so that the whole model is one relational structure over {prec} ∪ Σ.

#include <string>
#include <vector>

#include "tww/structures.hpp"
#include "tww/twinmodel.hpp"

namespace tww {

class FullTwinModel {
 public:
  FullTwinModel() = default;
  /// The order must be binary; Z pairs obey the TwinModel rules.
  FullTwinModel(TreeOrder order, Signature signature, std::vector<std::vector<NodePair>> z);

  const TreeOrder& treeorder() const { return order_; }
  const Signature& signature() const { return model_.signature(); }
  const std::vector<NodePair>& z(std::size_t sym) const { return model_.z(sym); }
  const std::vector<std::vector<NodePair>>& z() const { return model_.z(); }

  /// The twin-model whose ancestor order this is.
  const TwinModel& underlying() const { return model_; }

  /// Domain = all nodes; "prec" holds the strict order, each R ∈ Σ holds Z_R.
  RelStructure as_structure() const;
  /// Inverse of as_structure: "prec" must be a binary tree order.
  static FullTwinModel from_structure(const RelStructure& s);

 private:
  TreeOrder order_;
  TwinModel model_;
};

FullTwinModel to_full(const TwinModel& m);

/// The interpretation S: the maximal elements, with R(x,y) iff some
/// (u,v) ∈ Z_R has u ⪯ x and v ⪯ y.
RelStructure decode_S(const FullTwinModel& f);

/// Replaces every internal node v by a cherry p0(v) -> p1(v): the result is a
/// twin-model over {prec} ∪ Σ whose leaves are all nodes of the input and
/// which decodes to the full model. The ranking is the explicit one
/// (root, then each p1 by rank followed by its p0 children).
RankedTwinModel cherry_expand(const RankedTwinModel& rm);

struct CherryBound {
  int source = 0;
  int expanded = 0;
  bool within() const { return expanded <= 2 * source; }
};
/// Widths before and after cherry expansion.
CherryBound cherry_bound(const RankedTwinModel& rm);

}  // namespace tww

#pragma once

// End-to-end codec: a binary structure becomes a marked permutation and back.
//
//   encode: contraction sequence -> ranked twin-model -> tree preorder ->
//           ordered structure on the tree nodes ("tree" edges, "Z_<R>" pairs,
//           preorder) -> star-colored Gaifman graph with Unfold marks -> T1
//   decode: T2 -> Unfold -> O -> twin-model -> decode_structure -> labels
//
// The marks that the transductions would guess travel in the envelope.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tww/json_io.hpp"
#include "tww/permcodec.hpp"
#include "tww/starunfold.hpp"
#include "tww/twinmodel.hpp"

namespace tww {

struct EncodeOptions {
  /// Exact search up to this many elements, greedy above.
  std::size_t exact_limit = 9;
  bool greedy = false;
};

struct Envelope {
  /// Elements "1".."N"; mark "M" on vertex copies plus every Unfold mark.
  Permutation perm;
  Signature signature;
  std::vector<std::string> domain;               ///< source domain, in order
  std::map<std::string, std::string> labels;     ///< leaf element -> source element
  std::string method;                            ///< "exact" or "greedy"
  int width = 0;                                 ///< width of the sequence used
  int colors = 0;                                ///< star colors c

  double k() const { return domain.empty() ? 0.0 : static_cast<double>(perm.size()) / static_cast<double>(domain.size()); }
};

/// Intermediate objects of an encoding, for inspection and tests.
struct EncodeTrace {
  ContractionSequence sequence;
  RankedTwinModel model;
  RelStructure nodes;  ///< {"tree", "Z_<R>"...} on the model's nodes
  std::vector<int> preorder;
  MarkedGraph marked;
  StarColoring coloring;
  EncodedPermutation encoded;
};

/// Throws SignatureError unless every symbol is binary, ArgumentError on an
/// empty structure.
Envelope encode_structure(const RelStructure& s, const EncodeOptions& opt = {}, EncodeTrace* trace = nullptr);

/// Throws DecodeError naming the stage ("T2", "unfold", "O", "model",
/// "labels") that rejects the envelope.
RelStructure decode_envelope(const Envelope& e);

struct RoundTrip {
  Envelope envelope;
  RelStructure decoded;
  bool ok = false;
};
RoundTrip roundtrip(const RelStructure& s, const EncodeOptions& opt = {});

io::Json to_json(const Envelope& e);
Envelope envelope_from_json(const io::Json& j);

// ---------------------------------------------------------------------------
// Counting graphs of bounded twin-width

/// Every graph on n vertices up to isomorphism (vertices "0".."n-1"), by
/// vertex extension with invariant bucketing and isomorphism rejection.
std::vector<Graph> unlabeled_graphs(int n, bool parallel = true);

struct Enumeration {
  int n = 0;
  std::vector<std::size_t> by_width;  ///< index = exact twin-width
  std::size_t total() const;
  std::size_t at_most(int d) const;
};

/// Exact twin-width of every unlabeled graph on n vertices.
Enumeration enumerate_twinwidths(int n, bool parallel = true);
/// Number of unlabeled n-vertex graphs of twin-width <= d (d < 0: all).
std::size_t enumerate_bounded_tww(int n, int d, bool parallel = true);

}  // namespace tww

#pragma once

// JSON shapes for every object the CLI reads or writes. Readers throw
// FormatError on a malformed document; the library's own errors propagate
// when the document is well-formed but the object is invalid.
//
//   structure   {"domain": [..], "signature": [{"name": "E", "arity": 2}, ..],
//                "relations": {"E": [["a", "b"], ..]}}
//               or a graph: {"vertices": [..], "edges": [["a", "b"], ..]}
//   sequence    {"structure": <structure>, "steps": [["u", "v", "z"], ..]}
//               (z may be omitted; a fresh name is chosen)
//   model       {"signature": [..], "nodes": [..], "children": {"r": ["u", "v"], ..},
//                "z": {"E": [["u", "v"], ..]}, "ranking": {"r": 1, ..}}
//   full model  {"signature": [..], "treeorder": {"nodes": [..], "prec": [["r", "u"], ..]},
//                "z": {..}}
//   marked      {"vertices": [..], "edges": [..], "marks": {"C_1": ["a", ..], ..}}
//   permutation {"one_line": [3, 1, 2], "marks": {"M": [1, 3]}}   (marks by <1 position)

#include <optional>

#include "json.hpp"
#include "tww/contraction.hpp"
#include "tww/fullmodel.hpp"
#include "tww/starunfold.hpp"
#include "tww/structures.hpp"
#include "tww/twinmodel.hpp"

namespace tww::io {

using Json = nlohmann::ordered_json;

Json to_json(const Signature& sig);
Signature signature_from_json(const Json& j);

Json to_json(const RelStructure& s);
RelStructure structure_from_json(const Json& j);

Json to_json(const ContractionSequence& seq);
ContractionSequence sequence_from_json(const Json& j);

Json to_json(const TwinModel& m, const std::vector<int>* ranking = nullptr);
Json to_json(const RankedTwinModel& rm);
TwinModel model_from_json(const Json& j);
/// The "ranking" field, if present.
std::optional<RankedTwinModel> ranked_model_from_json(const Json& j);

/// {"nodes": [..], "prec": [[x, y], ..]}
Json to_json(const TreeOrder& t);
TreeOrder tree_order_from_json(const Json& j);

Json to_json(const FullTwinModel& f);
FullTwinModel full_model_from_json(const Json& j);

Json to_json(const MarkedGraph& mg);
MarkedGraph marked_graph_from_json(const Json& j);

Json to_json(const OrderedGraph& og);
OrderedGraph ordered_graph_from_json(const Json& j);

Json to_json(const Permutation& p);
Permutation permutation_from_json(const Json& j);

/// Reads a whole file; throws FormatError naming the file on I/O or syntax errors.
Json read_file(const std::string& path);

}  // namespace tww::io

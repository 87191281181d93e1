#include "tww/pipeline.hpp"

#include <algorithm>
#include <numeric>

#include "tww/orderpair.hpp"

namespace tww {

namespace {

constexpr const char* kVertexMark = "M";
constexpr const char* kTree = "tree";

std::string z_symbol(const std::string& r) { return "Z_" + r; }

Signature node_signature(const Signature& sig) {
  std::vector<Symbol> syms{{kTree, 2}};
  for (const auto& s : sig.symbols()) syms.push_back({z_symbol(s.name), 2});
  return Signature(syms);
}

}  // namespace

Envelope encode_structure(const RelStructure& s, const EncodeOptions& opt, EncodeTrace* trace) {
  if (s.size() == 0) throw ArgumentError("cannot encode an empty structure");
  for (const auto& sym : s.signature().symbols())
    if (sym.arity != 2) throw SignatureError("symbol '" + sym.name + "' is not binary");

  Envelope env;
  env.signature = s.signature();
  env.domain = s.domain();
  ContractionSequence seq;
  if (!opt.greedy && s.size() <= opt.exact_limit) {
    seq = exact_twinwidth(s).sequence;
    env.method = "exact";
  } else {
    seq = greedy_sequence(s);
    env.method = "greedy";
  }
  env.width = validate_sequence(seq);

  auto rm = seq_to_model(seq);
  const auto& y = rm.model.tree();
  RelStructure nodes(node_signature(s.signature()), y.names());
  for (int v = 0; v < static_cast<int>(y.size()); ++v)
    for (int c : y.children(v)) nodes.add(0, {v, c});
  for (std::size_t r = 0; r < s.signature().size(); ++r)
    for (auto [u, v] : rm.model.z(r)) nodes.add(r + 1, {u, v});
  auto order = preorder(y);

  Graph g = gaifman(nodes);
  auto col = star_coloring(g);
  auto mg = mark_for_unfold(nodes, col, orient_stars(g, col));
  auto enc = encode_T1(OrderedGraph(g, order), col);

  // vertex v of the node graph is the element (v, c+1)
  std::vector<int> element_of(y.size(), -1);
  for (std::size_t e = 0; e < enc.provenance.size(); ++e)
    if (enc.provenance[e].second == enc.blow) element_of[static_cast<std::size_t>(enc.provenance[e].first)] = static_cast<int>(e);
  env.perm = enc.perm;
  for (const auto& [name, vs] : mg.marks) {
    std::set<int> es;
    for (int v : vs) es.insert(element_of[static_cast<std::size_t>(v)]);
    env.perm.set_mark(name, es);
  }
  for (int v : y.leaves()) env.labels[env.perm.name(element_of[static_cast<std::size_t>(v)])] = y.name(v);
  env.colors = col.c;

  if (trace) *trace = EncodeTrace{seq, rm, nodes, order, mg, col, enc};
  return env;
}

RelStructure decode_envelope(const Envelope& env) {
  T2Result t2;
  try {
    t2 = decode_T2_witnessed(env.perm, kVertexMark);
  } catch (const Error& e) {
    throw DecodeError("T2", e.what());
  }
  const Graph& g = t2.graph.graph();
  std::map<int, int> vertex_of;  // element -> vertex
  for (std::size_t v = 0; v < t2.elements.size(); ++v) vertex_of[t2.elements[v]] = static_cast<int>(v);

  MarkedGraph mg{g, {}};
  for (const auto& [name, es] : env.perm.marks()) {
    if (name == kVertexMark) continue;
    auto& set = mg.marks[name];
    for (int e : es) {
      auto it = vertex_of.find(e);
      if (it == vertex_of.end())
        throw DecodeError("unfold", "mark " + name + " sits on element " + env.perm.name(e) + ", which is not a vertex");
      set.insert(it->second);
    }
  }
  const Signature target = node_signature(env.signature);
  RelStructure nodes;
  try {
    nodes = unfold(mg, target);
  } catch (const DecodeError&) {
    throw;
  } catch (const Error& e) {
    throw DecodeError("unfold", e.what());
  }

  // the preorder and the tree edges give back the tree order
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& t : nodes.tuples(0)) edges.emplace_back(nodes.name(t[0]), nodes.name(t[1]));
  TreeOrder order;
  try {
    order = transduction_O(OrderedGraph(Graph::from_edges(g.vertices(), edges), t2.graph.order()));
  } catch (const Error& e) {
    throw DecodeError("O", e.what());
  }
  const RootedTree& y = order.tree();
  for (const auto& t : nodes.tuples(0))
    if (y.parent(y.index_of(nodes.name(t[1]))) != y.index_of(nodes.name(t[0])))
      throw DecodeError("O", "tree edge " + nodes.name(t[0]) + nodes.name(t[1]) + " disagrees with the order");

  TwinModel model;
  try {
    std::vector<std::vector<NodePair>> z(env.signature.size());
    for (std::size_t r = 0; r < env.signature.size(); ++r)
      for (const auto& t : nodes.tuples(r + 1)) z[r].emplace_back(y.index_of(nodes.name(t[0])), y.index_of(nodes.name(t[1])));
    model = TwinModel(y, env.signature, z);
  } catch (const Error& e) {
    throw DecodeError("model", e.what());
  }
  auto report = validate_model(model);
  if (!report.ok()) throw DecodeError("model", "the decoded twin-model is not minimal and consistent");

  RelStructure leaves = decode_structure(model);
  if (leaves.size() != env.domain.size())
    throw DecodeError("labels", std::to_string(leaves.size()) + " leaves for " + std::to_string(env.domain.size()) + " elements");
  std::map<std::string, int> source_index;
  for (std::size_t i = 0; i < env.domain.size(); ++i) source_index[env.domain[i]] = static_cast<int>(i);
  std::vector<int> to_out(leaves.size(), -1);
  std::vector<bool> hit(env.domain.size(), false);
  for (int e = 0; e < static_cast<int>(leaves.size()); ++e) {
    auto l = env.labels.find(leaves.name(e));
    if (l == env.labels.end()) throw DecodeError("labels", "leaf " + leaves.name(e) + " has no label");
    auto it = source_index.find(l->second);
    if (it == source_index.end() || hit[static_cast<std::size_t>(it->second)])
      throw DecodeError("labels", "label '" + l->second + "' is unknown or repeated");
    hit[static_cast<std::size_t>(it->second)] = true;
    to_out[static_cast<std::size_t>(e)] = it->second;
  }
  RelStructure out(env.signature, env.domain);
  for (std::size_t r = 0; r < env.signature.size(); ++r)
    for (const auto& t : leaves.tuples(leaves.signature().index_of(env.signature[r].name)))
      out.add(r, {to_out[static_cast<std::size_t>(t[0])], to_out[static_cast<std::size_t>(t[1])]});
  return out;
}

RoundTrip roundtrip(const RelStructure& s, const EncodeOptions& opt) {
  RoundTrip r;
  r.envelope = encode_structure(s, opt);
  r.decoded = decode_envelope(r.envelope);
  r.ok = r.decoded.labeled_equal(s);
  return r;
}

io::Json to_json(const Envelope& e) {
  io::Json labels = io::Json::object();
  for (const auto& [el, name] : e.labels) labels[el] = name;
  return {{"format", "tww-envelope/1"},
          {"recipe", {"T2", "unfold", "O", "decode_structure"}},
          {"signature", io::to_json(e.signature)},
          {"domain", e.domain},
          {"permutation", io::to_json(e.perm)},
          {"labels", labels},
          {"stats",
           {{"n", e.domain.size()}, {"size", e.perm.size()}, {"k", e.k()}, {"colors", e.colors}, {"width", e.width},
            {"method", e.method}}}};
}

Envelope envelope_from_json(const io::Json& j) {
  if (!j.is_object() || !j.contains("permutation") || !j.contains("signature") || !j.contains("domain") ||
      !j.contains("labels"))
    throw FormatError("an envelope needs \"permutation\", \"signature\", \"domain\" and \"labels\"");
  Envelope e;
  e.perm = io::permutation_from_json(j["permutation"]);
  e.signature = io::signature_from_json(j["signature"]);
  if (!j["domain"].is_array()) throw FormatError("\"domain\" must be an array");
  for (const auto& d : j["domain"]) {
    if (!d.is_string()) throw FormatError("domain entries must be strings");
    e.domain.push_back(d.get<std::string>());
  }
  if (!j["labels"].is_object()) throw FormatError("\"labels\" must be an object");
  for (const auto& [el, name] : j["labels"].items()) {
    if (!name.is_string()) throw FormatError("labels must be strings");
    e.labels[el] = name.get<std::string>();
  }
  if (j.contains("stats") && j["stats"].is_object()) {
    const auto& st = j["stats"];
    if (st.contains("method") && st["method"].is_string()) e.method = st["method"].get<std::string>();
    if (st.contains("width") && st["width"].is_number_integer()) e.width = st["width"].get<int>();
    if (st.contains("colors") && st["colors"].is_number_integer()) e.colors = st["colors"].get<int>();
  }
  return e;
}

// ---------------------------------------------------------------------------

namespace {

// Per vertex (degree, sorted neighbour degrees, triangles), sorted.
std::vector<std::vector<int>> invariant(const Graph& g) {
  const int n = static_cast<int>(g.size());
  std::vector<std::vector<int>> out;
  for (int v = 0; v < n; ++v) {
    std::vector<int> nd;
    int tri = 0;
    for (int w : g.neighbors(v)) {
      nd.push_back(static_cast<int>(g.degree(w)));
      for (int x : g.neighbors(w))
        if (x > w && g.adjacent(v, x)) ++tri;
    }
    std::sort(nd.begin(), nd.end());
    std::vector<int> row{static_cast<int>(g.degree(v)), tri};
    row.insert(row.end(), nd.begin(), nd.end());
    out.push_back(row);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> vertex_names(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  return names;
}

}  // namespace

std::vector<Graph> unlabeled_graphs(int n, bool parallel) {
  if (n < 0) throw ArgumentError("negative vertex count");
  if (n > 9) throw ArgumentError("exhaustive enumeration is limited to 9 vertices");
  std::vector<Graph> level{Graph::from_edges({}, {})};
  for (int k = 1; k <= n; ++k) {
    const auto names = vertex_names(k);
    // candidates: every previous graph plus a vertex with any neighbourhood
    std::vector<Graph> cand(level.size() << (k - 1));
    const int total = static_cast<int>(cand.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < total; ++i) {
      const Graph& base = level[static_cast<std::size_t>(i >> (k - 1))];
      const unsigned mask = static_cast<unsigned>(i) & ((1U << (k - 1)) - 1U);
      std::vector<std::pair<std::string, std::string>> edges;
      for (const auto& t : base.structure().tuples(0))
        if (t[0] < t[1]) edges.emplace_back(names[static_cast<std::size_t>(t[0])], names[static_cast<std::size_t>(t[1])]);
      for (int v = 0; v < k - 1; ++v)
        if (mask >> v & 1U) edges.emplace_back(names[static_cast<std::size_t>(v)], names[static_cast<std::size_t>(k - 1)]);
      cand[static_cast<std::size_t>(i)] = Graph::from_edges(names, edges);
    }
    std::vector<std::vector<std::vector<int>>> inv(cand.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (int i = 0; i < total; ++i) inv[static_cast<std::size_t>(i)] = invariant(cand[static_cast<std::size_t>(i)]);

    std::map<std::vector<std::vector<int>>, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < cand.size(); ++i) buckets[inv[i]].push_back(i);
    std::vector<std::vector<std::size_t>> groups;
    for (auto& [_, b] : buckets) groups.push_back(std::move(b));
    std::vector<std::vector<std::size_t>> reps(groups.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
    for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
      auto& mine = reps[static_cast<std::size_t>(gi)];
      for (std::size_t i : groups[static_cast<std::size_t>(gi)]) {
        bool fresh = std::none_of(mine.begin(), mine.end(), [&](std::size_t r) {
          return are_isomorphic(cand[i].structure(), cand[r].structure());
        });
        if (fresh) mine.push_back(i);
      }
    }
    std::vector<Graph> next;
    for (const auto& r : reps)
      for (std::size_t i : r) next.push_back(cand[i]);
    level = std::move(next);
  }
  return level;
}

std::size_t Enumeration::total() const { return std::accumulate(by_width.begin(), by_width.end(), std::size_t{0}); }

std::size_t Enumeration::at_most(int d) const {
  if (d < 0) return total();
  std::size_t s = 0;
  for (std::size_t w = 0; w < by_width.size() && static_cast<int>(w) <= d; ++w) s += by_width[w];
  return s;
}

Enumeration enumerate_twinwidths(int n, bool parallel) {
  auto graphs = unlabeled_graphs(n, parallel);
  std::vector<int> width(graphs.size(), 0);
  ExactOptions opt;
  opt.parallel = false;
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int i = 0; i < static_cast<int>(graphs.size()); ++i)
    width[static_cast<std::size_t>(i)] = exact_twinwidth(graphs[static_cast<std::size_t>(i)].structure(), opt).width;
  Enumeration e;
  e.n = n;
  for (int w : width) {
    if (static_cast<std::size_t>(w) >= e.by_width.size()) e.by_width.resize(static_cast<std::size_t>(w) + 1, 0);
    ++e.by_width[static_cast<std::size_t>(w)];
  }
  return e;
}

std::size_t enumerate_bounded_tww(int n, int d, bool parallel) { return enumerate_twinwidths(n, parallel).at_most(d); }

}  // namespace tww

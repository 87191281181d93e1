#include "tww/json_io.hpp"

#include <fstream>
#include <sstream>

namespace tww::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw FormatError(std::string("expected an object with \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing \"") + key + "\"");
  return *it;
}

const Json* optional_field(const Json& j, const char* key) {
  if (!j.is_object()) return nullptr;
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::string str(const Json& j, const char* what) {
  if (!j.is_string()) throw FormatError(std::string(what) + " must be a string, got " + j.dump());
  return j.get<std::string>();
}

int integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer, got " + j.dump());
  return j.get<int>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
  return j;
}

std::vector<std::string> strings(const Json& j, const char* what) {
  std::vector<std::string> out;
  for (const auto& x : array(j, what)) out.push_back(str(x, what));
  return out;
}

std::vector<std::pair<std::string, std::string>> name_pairs(const Json& j, const char* what) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : array(j, what)) {
    if (!p.is_array() || p.size() != 2) throw FormatError(std::string(what) + " entries must be pairs, got " + p.dump());
    out.emplace_back(str(p[0], what), str(p[1], what));
  }
  return out;
}

Json pairs_json(const std::vector<NodePair>& ps, const RootedTree& y) {
  Json a = Json::array();
  for (auto [u, v] : ps) a.push_back({y.name(u), y.name(v)});
  return a;
}

Json graph_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& t : g.structure().tuples(0))
    if (t[0] < t[1]) edges.push_back({g.name(t[0]), g.name(t[1])});
  return {{"vertices", g.vertices()}, {"edges", edges}};
}

Graph graph_from(const Json& j) {
  return Graph::from_edges(strings(field(j, "vertices"), "vertices"), name_pairs(field(j, "edges"), "edges"));
}

}  // namespace

Json to_json(const Signature& sig) {
  Json a = Json::array();
  for (const auto& s : sig.symbols()) a.push_back({{"name", s.name}, {"arity", s.arity}});
  return a;
}

Signature signature_from_json(const Json& j) {
  std::vector<Symbol> syms;
  if (j.is_object()) {
    for (const auto& [name, arity] : j.items()) syms.push_back({name, integer(arity, "arity")});
  } else {
    for (const auto& s : array(j, "signature")) syms.push_back({str(field(s, "name"), "name"), integer(field(s, "arity"), "arity")});
  }
  return Signature(syms);
}

Json to_json(const RelStructure& s) {
  Json rel = Json::object();
  for (std::size_t r = 0; r < s.signature().size(); ++r) {
    Json ts = Json::array();
    for (const auto& t : s.tuples(r)) {
      Json tj = Json::array();
      for (int e : t) tj.push_back(s.name(e));
      ts.push_back(tj);
    }
    rel[s.signature()[r].name] = ts;
  }
  return {{"domain", s.domain()}, {"signature", to_json(s.signature())}, {"relations", rel}};
}

RelStructure structure_from_json(const Json& j) {
  if (optional_field(j, "vertices")) return graph_from(j).structure();
  RelStructure s(signature_from_json(field(j, "signature")), strings(field(j, "domain"), "domain"));
  if (const Json* rel = optional_field(j, "relations")) {
    if (!rel->is_object()) throw FormatError("\"relations\" must be an object");
    for (const auto& [name, ts] : rel->items())
      for (const auto& t : array(ts, "tuples")) s.add(name, strings(t, "tuple"));
  }
  return s;
}

Json to_json(const ContractionSequence& seq) {
  Json steps = Json::array();
  for (const auto& st : seq.steps) steps.push_back({st.u, st.v, st.z});
  return {{"structure", to_json(seq.initial)}, {"steps", steps}};
}

ContractionSequence sequence_from_json(const Json& j) {
  ContractionSequence seq;
  seq.initial = structure_from_json(field(j, "structure"));
  Trigraph t(seq.initial);
  std::set<std::string> used(seq.initial.domain().begin(), seq.initial.domain().end());
  std::size_t i = 0;
  for (const auto& st : array(field(j, "steps"), "steps")) {
    if (!st.is_array() || st.size() < 2 || st.size() > 3)
      throw FormatError("a step must be [u, v] or [u, v, z], got " + st.dump());
    Step step{str(st[0], "u"), str(st[1], "v"), st.size() == 3 ? str(st[2], "z") : ""};
    auto u = t.find(step.u), v = t.find(step.v);
    if (!u || !v || *u == *v) throw SequenceError(i, "cannot contract " + step.u + " and " + step.v);
    if (step.z.empty()) step.z = fresh_name(t, *u, *v, used);
    used.insert(step.z);
    t = t.contract(*u, *v, step.z);
    seq.steps.push_back(step);
    ++i;
  }
  return seq;
}

Json to_json(const TwinModel& m, const std::vector<int>* ranking) {
  const auto& y = m.tree();
  Json children = Json::object();
  for (int v = 0; v < static_cast<int>(y.size()); ++v) {
    if (y.is_leaf(v)) continue;
    Json c = Json::array();
    for (int w : y.children(v)) c.push_back(y.name(w));
    children[y.name(v)] = c;
  }
  Json z = Json::object();
  for (std::size_t s = 0; s < m.signature().size(); ++s) z[m.signature()[s].name] = pairs_json(m.z(s), y);
  Json out{{"signature", to_json(m.signature())}, {"nodes", y.names()}, {"children", children}, {"z", z}};
  if (ranking) {
    Json r = Json::object();
    for (int v = 0; v < static_cast<int>(y.size()); ++v) r[y.name(v)] = (*ranking)[static_cast<std::size_t>(v)];
    out["ranking"] = r;
  }
  return out;
}

Json to_json(const RankedTwinModel& rm) { return to_json(rm.model, &rm.tau); }

TwinModel model_from_json(const Json& j) {
  auto names = strings(field(j, "nodes"), "nodes");
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < names.size(); ++i)
    if (!index.emplace(names[i], static_cast<int>(i)).second) throw FormatError("node '" + names[i] + "' listed twice");
  auto idx = [&](const std::string& v) {
    auto it = index.find(v);
    if (it == index.end()) throw FormatError("unknown node '" + v + "'");
    return it->second;
  };
  std::vector<std::vector<int>> children(names.size());
  std::vector<bool> is_child(names.size(), false);
  const Json& ch = field(j, "children");
  if (!ch.is_object()) throw FormatError("\"children\" must be an object");
  for (const auto& [parent, kids] : ch.items())
    for (const auto& k : strings(kids, "children")) {
      int c = idx(k);
      if (is_child[static_cast<std::size_t>(c)]) throw FormatError("node '" + k + "' has two parents");
      is_child[static_cast<std::size_t>(c)] = true;
      children[static_cast<std::size_t>(idx(parent))].push_back(c);
    }
  int root = -1;
  for (std::size_t v = 0; v < names.size(); ++v)
    if (!is_child[v]) {
      if (root >= 0) throw FormatError("two roots: '" + names[static_cast<std::size_t>(root)] + "' and '" + names[v] + "'");
      root = static_cast<int>(v);
    }
  if (root < 0) throw FormatError("the tree has no root");
  auto tree = RootedTree::from_children(names, root, children);
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> z;
  if (const Json* zj = optional_field(j, "z")) {
    if (!zj->is_object()) throw FormatError("\"z\" must be an object");
    for (const auto& [sym, ps] : zj->items()) z[sym] = name_pairs(ps, "z pairs");
  }
  return TwinModel::from_names(tree, signature_from_json(field(j, "signature")), z);
}

std::optional<RankedTwinModel> ranked_model_from_json(const Json& j) {
  const Json* r = optional_field(j, "ranking");
  if (!r) return std::nullopt;
  RankedTwinModel rm{model_from_json(j), {}};
  const auto& y = rm.model.tree();
  rm.tau.assign(y.size(), 0);
  std::vector<bool> seen(y.size(), false);
  if (!r->is_object()) throw FormatError("\"ranking\" must be an object");
  for (const auto& [name, t] : r->items()) {
    auto v = y.find(name);
    if (!v) throw FormatError("ranking names unknown node '" + name + "'");
    rm.tau[static_cast<std::size_t>(*v)] = integer(t, "rank");
    seen[static_cast<std::size_t>(*v)] = true;
  }
  for (std::size_t v = 0; v < y.size(); ++v)
    if (!seen[v]) throw FormatError("ranking misses node '" + y.name(static_cast<int>(v)) + "'");
  return rm;
}

Json to_json(const TreeOrder& t) {
  auto order = t.as_structure();
  Json prec = Json::array();
  for (const auto& tup : order.tuples(0)) prec.push_back({order.name(tup[0]), order.name(tup[1])});
  return {{"nodes", order.domain()}, {"prec", prec}};
}

TreeOrder tree_order_from_json(const Json& j) {
  RelStructure order(Signature{{"prec", 2}}, strings(field(j, "nodes"), "nodes"));
  for (const auto& [a, b] : name_pairs(field(j, "prec"), "prec")) order.add("prec", {a, b});
  return TreeOrder::from_relation(order);
}

Json to_json(const FullTwinModel& f) {
  Json z = Json::object();
  for (std::size_t s = 0; s < f.signature().size(); ++s)
    z[f.signature()[s].name] = pairs_json(f.z(s), f.treeorder().tree());
  return {{"signature", to_json(f.signature())}, {"treeorder", to_json(f.treeorder())}, {"z", z}};
}

FullTwinModel full_model_from_json(const Json& j) {
  TreeOrder t = tree_order_from_json(field(j, "treeorder"));
  auto sig = signature_from_json(field(j, "signature"));
  std::vector<std::vector<NodePair>> z(sig.size());
  if (const Json* zj = optional_field(j, "z")) {
    if (!zj->is_object()) throw FormatError("\"z\" must be an object");
    for (const auto& [sym, ps] : zj->items())
      for (const auto& [a, b] : name_pairs(ps, "z pairs"))
        z[sig.index_of(sym)].emplace_back(t.tree().index_of(a), t.tree().index_of(b));
  }
  return FullTwinModel(t, sig, z);
}

Json to_json(const MarkedGraph& mg) {
  Json out = graph_json(mg.graph);
  Json marks = Json::object();
  for (const auto& [m, vs] : mg.marks) {
    Json a = Json::array();
    for (int v : vs) a.push_back(mg.graph.name(v));
    marks[m] = a;
  }
  out["marks"] = marks;
  return out;
}

MarkedGraph marked_graph_from_json(const Json& j) {
  MarkedGraph mg{graph_from(j), {}};
  if (const Json* m = optional_field(j, "marks")) {
    if (!m->is_object()) throw FormatError("\"marks\" must be an object");
    for (const auto& [name, vs] : m->items()) {
      auto& set = mg.marks[name];
      for (const auto& v : strings(vs, "marked vertices")) set.insert(mg.graph.index_of(v));
    }
  }
  return mg;
}

Json to_json(const OrderedGraph& og) {
  Json out = graph_json(og.graph());
  Json order = Json::array();
  for (int v : og.order()) order.push_back(og.graph().name(v));
  out["order"] = order;
  return out;
}

OrderedGraph ordered_graph_from_json(const Json& j) {
  Graph g = graph_from(j);
  std::vector<int> order;
  for (const auto& v : strings(field(j, "order"), "order")) order.push_back(g.index_of(v));
  return OrderedGraph(g, order);
}

Json to_json(const Permutation& p) {
  Json marks = Json::object();
  for (const auto& [m, es] : p.marks()) {
    std::vector<int> pos;
    for (int e : es) pos.push_back(p.rank1(e) + 1);
    std::sort(pos.begin(), pos.end());
    marks[m] = pos;
  }
  return {{"one_line", p.one_line()}, {"marks", marks}};
}

Permutation permutation_from_json(const Json& j) {
  std::vector<int> values;
  for (const auto& v : array(field(j, "one_line"), "one_line")) values.push_back(integer(v, "one_line entry"));
  auto p = Permutation::from_one_line(values);
  if (const Json* m = optional_field(j, "marks")) {
    if (!m->is_object()) throw FormatError("\"marks\" must be an object");
    for (const auto& [name, ps] : m->items()) {
      std::set<int> es;
      for (const auto& x : array(ps, "mark positions")) {
        int pos = integer(x, "mark position");
        if (pos < 1 || static_cast<std::size_t>(pos) > p.size())
          throw FormatError("mark " + name + " position " + std::to_string(pos) + " out of range");
        es.insert(p.order1()[static_cast<std::size_t>(pos - 1)]);
      }
      p.set_mark(name, es);
    }
  }
  return p;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace tww::io

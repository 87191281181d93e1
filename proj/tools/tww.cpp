// Command-line front end. JSON goes to stdout; diagnostics to stderr.
// Exit status: 0 success, 1 a check failed, 2 bad input or usage.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "tww/folang.hpp"
#include "tww/json_io.hpp"
#include "tww/orderpair.hpp"
#include "tww/permcodec.hpp"
#include "tww/pipeline.hpp"

using namespace tww;
using io::Json;

namespace {

struct CheckFailed {
  std::string what;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Signature parse_signature_option(const std::string& text) {
  std::vector<Symbol> syms;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw ArgumentError("signature entries look like R:2, got '" + item + "'");
    syms.push_back({item.substr(0, colon), std::stoi(item.substr(colon + 1))});
  }
  return Signature(syms);
}

// A permutation file is either JSON or one-line text.
Permutation read_permutation(const std::string& path) {
  auto text = slurp(path);
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return io::permutation_from_json(Json::parse(text));
  return parse_one_line_text(text);
}

// Any of the JSON kinds, seen as one relational structure.
RelStructure any_structure(const Json& j) {
  if (j.contains("treeorder")) return io::full_model_from_json(j).as_structure();
  if (j.contains("children")) return model_structure(io::model_from_json(j));
  if (j.contains("one_line")) return io::permutation_from_json(j).as_structure();
  if (j.contains("order")) return io::ordered_graph_from_json(j).as_structure();
  if (j.contains("marks")) return io::marked_graph_from_json(j).as_structure();
  return io::structure_from_json(j);
}

Json report_json(const ModelReport& r, const TwinModel& m) {
  Json viol = Json::array();
  for (const auto& [s, a, b] : r.minimality_violations)
    viol.push_back({{"symbol", m.signature()[s].name},
                    {"pair", {m.tree().name(a.first), m.tree().name(a.second)}},
                    {"dominated_by", {m.tree().name(b.first), m.tree().name(b.second)}}});
  return {{"ok", r.ok()}, {"binary", r.binary}, {"minimal", r.minimal}, {"consistent", r.consistent},
          {"minimality_violations", viol}, {"cycle", r.cycle}};
}

// ------------------------------------------------------------------ DOT

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) out += (c == '"' || c == '\\') ? std::string("\\") + c : std::string(1, c);
  return out + "\"";
}

void dot_trigraph(std::ostream& out, const Trigraph& t, const std::string& id, const std::string& label) {
  out << "  subgraph " << quote("cluster_" + id) << " {\n    label=" << quote(label) << ";\n";
  for (int v = 0; v < static_cast<int>(t.size()); ++v) out << "    " << quote(id + ":" + t.name(v)) << " [label=" << quote(t.name(v)) << "];\n";
  const bool many = t.signature().size() > 1;
  for (std::size_t s = 0; s < t.signature().size(); ++s)
    for (int u = 0; u < static_cast<int>(t.size()); ++u)
      for (int v = 0; v < static_cast<int>(t.size()); ++v) {
        bool sym = t.black(s, u, v) == t.black(s, v, u);
        if (t.black(s, u, v) && (!sym || u < v))
          out << "    " << quote(id + ":" + t.name(u)) << " -> " << quote(id + ":" + t.name(v)) << " ["
              << (sym ? "dir=none" : "") << (many ? std::string(sym ? "," : "") + "label=" + quote(t.signature()[s].name) : "") << "];\n";
        if (t.red(s, u, v) && u < v)
          out << "    " << quote(id + ":" + t.name(u)) << " -> " << quote(id + ":" + t.name(v)) << " [dir=none,color=red"
              << (many ? ",label=" + quote(t.signature()[s].name) : "") << "];\n";
      }
  out << "  }\n";
}

void dot_model(std::ostream& out, const TwinModel& m, const std::vector<int>* tau) {
  const auto& y = m.tree();
  for (int v = 0; v < static_cast<int>(y.size()); ++v) {
    std::string label = y.name(v);
    if (tau) label += " (" + std::to_string((*tau)[static_cast<std::size_t>(v)]) + ")";
    out << "  " << quote(y.name(v)) << " [label=" << quote(label) << (y.is_leaf(v) ? ",shape=box" : "") << "];\n";
  }
  for (int v = 0; v < static_cast<int>(y.size()); ++v)
    for (int c : y.children(v)) out << "  " << quote(y.name(v)) << " -> " << quote(y.name(c)) << ";\n";
  for (std::size_t s = 0; s < m.signature().size(); ++s)
    for (auto [a, b] : m.z(s))
      out << "  " << quote(y.name(a)) << " -> " << quote(y.name(b)) << " [style=dashed,color=blue,constraint=false,label="
          << quote(m.signature()[s].name) << "];\n";
}

std::string render_dot(const Json& j) {
  std::ostringstream out;
  out << "digraph tww {\n";
  if (j.contains("steps")) {
    auto seq = io::sequence_from_json(j);
    auto snaps = replay(seq);
    for (std::size_t i = 0; i < snaps.size(); ++i) {
      std::string label = i == 0 ? "initial" : seq.steps[i - 1].u + " + " + seq.steps[i - 1].v + " -> " + seq.steps[i - 1].z;
      label += ", red degree " + std::to_string(snaps[i].max_red_degree());
      dot_trigraph(out, snaps[i], "t" + std::to_string(i), label);
    }
  } else if (j.contains("children")) {
    auto rm = io::ranked_model_from_json(j);
    if (rm) dot_model(out, rm->model, &rm->tau);
    else dot_model(out, io::model_from_json(j), nullptr);
  } else {
    dot_trigraph(out, Trigraph(io::structure_from_json(j)), "s", "structure");
  }
  out << "}\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Twin-width, twin-models and the permutation codec"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::string file, file2, formulas, signature_text, out_path, pattern_text, name;
  std::vector<std::string> files, assigns, marks;
  std::uint64_t budget = 0;
  bool serial = false, minimum = false, greedy = false, dot = false, text_out = false, check = false;
  int n = 0, d = -1, max_len = 7;
  std::size_t exact_limit = 9;

  // structures and sequences
  auto* exact = app.add_subcommand("exact", "Exact twin-width of a structure, with an optimal sequence");
  exact->add_option("structure", file, "Structure JSON")->required();
  exact->add_option("--budget", budget, "Give up after this many search states (0: unlimited)");
  exact->add_flag("--serial", serial, "Disable the parallel first level");
  exact->callback([&] {
    ExactOptions opt;
    if (budget) opt.budget = budget;
    opt.parallel = !serial;
    auto s = io::structure_from_json(io::read_file(file));
    try {
      auto r = exact_twinwidth(s, opt);
      emit({{"width", r.width}, {"states", r.states}, {"sequence", io::to_json(r.sequence)}});
    } catch (const BudgetExceeded& e) {
      emit({{"width", nullptr}, {"upper_bound", e.upper_bound()}, {"sequence", io::to_json(e.witness())}});
      throw CheckFailed{e.what()};
    }
  });

  auto* greedy_cmd = app.add_subcommand("greedy", "Greedy contraction sequence (an upper bound)");
  greedy_cmd->add_option("structure", file, "Structure JSON")->required();
  greedy_cmd->callback([&] {
    auto seq = greedy_sequence(io::structure_from_json(io::read_file(file)));
    emit({{"width", validate_sequence(seq)}, {"sequence", io::to_json(seq)}});
  });

  auto* validate = app.add_subcommand("validate", "Replay a contraction sequence and report its width");
  validate->add_option("sequence", file, "Sequence JSON")->required();
  validate->callback([&] {
    auto seq = io::sequence_from_json(io::read_file(file));
    try {
      emit({{"valid", true}, {"width", validate_sequence(seq)}});
    } catch (const SequenceError& e) {
      emit({{"valid", false}, {"step", e.step()}, {"error", e.what()}});
      throw CheckFailed{e.what()};
    }
  });

  // twin-models
  auto* model = app.add_subcommand("model", "Twin-model operations");
  model->require_subcommand(1);
  auto* mv = model->add_subcommand("validate", "Check the model axioms (and the ranking, if given)");
  mv->add_option("model", file, "Model JSON")->required();
  mv->callback([&] {
    auto j = io::read_file(file);
    auto m = io::model_from_json(j);
    auto r = validate_model(m);
    Json out = report_json(r, m);
    bool ok = r.ok();
    if (auto rm = io::ranked_model_from_json(j)) {
      auto rr = validate_ranking(*rm);
      out["ranking"] = {{"ok", rr.ok()}, {"labeling", rr.labeling}, {"monotonicity", rr.monotonicity},
                        {"synchronicity", rr.synchronicity}, {"detail", rr.detail}};
      ok = ok && rr.ok();
    }
    emit(out);
    if (!ok) throw CheckFailed{"the model is not valid"};
  });
  auto* mr = model->add_subcommand("rank", "Canonical ranking of a consistent model");
  mr->add_option("model", file, "Model JSON")->required();
  mr->callback([&] {
    auto m = io::model_from_json(io::read_file(file));
    try {
      emit(io::to_json(rank(m)));
    } catch (const ConsistencyError& e) {
      emit({{"error", e.what()}, {"cycle", e.cycle()}});
      throw CheckFailed{e.what()};
    }
  });
  auto* mw = model->add_subcommand("width", "Width of the given ranking (or the canonical one)");
  mw->add_option("model", file, "Model JSON")->required();
  mw->add_flag("--min", minimum, "Minimum over all rankings (exhaustive)");
  mw->callback([&] {
    auto j = io::read_file(file);
    auto m = io::model_from_json(j);
    Json out = Json::object();
    if (auto rm = io::ranked_model_from_json(j)) out["ranking"] = width(*rm);
    out["canonical"] = width(m);
    if (minimum) out["minimum"] = min_width_brute(m);
    emit(out);
  });
  auto* md = model->add_subcommand("decode", "The structure a model describes");
  md->add_option("model", file, "Model JSON")->required();
  md->add_flag("--full", check, "Read a full twin-model (tree order) instead");
  md->callback([&] {
    auto j = io::read_file(file);
    emit(io::to_json(check ? decode_S(io::full_model_from_json(j)) : decode_structure(io::model_from_json(j))));
  });
  auto* mfs = model->add_subcommand("from-seq", "Ranked twin-model of a contraction sequence");
  mfs->add_option("sequence", file, "Sequence JSON")->required();
  mfs->callback([&] { emit(io::to_json(seq_to_model(io::sequence_from_json(io::read_file(file))))); });
  auto* mts = model->add_subcommand("to-seq", "Contraction sequence of a ranked model");
  mts->add_option("model", file, "Model JSON (canonical ranking if none is given)")->required();
  mts->callback([&] {
    auto j = io::read_file(file);
    auto rm = io::ranked_model_from_json(j);
    if (!rm) rm = rank(io::model_from_json(j));
    auto seq = model_to_seq(*rm, true);
    emit({{"width", validate_sequence(seq)}, {"sequence", io::to_json(seq)}});
  });
  auto* mfull = model->add_subcommand("full", "Full twin-model (tree order) of a model");
  mfull->add_option("model", file, "Model JSON")->required();
  mfull->callback([&] { emit(io::to_json(to_full(io::model_from_json(io::read_file(file))))); });

  // tree orders and ordered trees
  auto* op = app.add_subcommand("orderpair", "L and O between tree orders and preordered trees");
  op->require_subcommand(1);
  auto* opl = op->add_subcommand("l", "Tree order -> ordered tree; marks name the first children");
  opl->add_option("full", file, "Full twin-model or {\"nodes\", \"prec\"} JSON")->required();
  opl->add_option("--marks", marks, "First children (default: the stored child order)")->delimiter(',');
  opl->callback([&] {
    auto j = io::read_file(file);
    const Json& to = j.contains("treeorder") ? j["treeorder"] : j;
    auto t = io::tree_order_from_json(to);
    std::set<int> m;
    if (marks.empty()) {
      m = marks_from_preorder(t, preorder(t.tree()));
    } else {
      for (const auto& v : marks) m.insert(t.tree().index_of(v));
    }
    emit(io::to_json(transduction_L(t, m)));
  });
  auto* opo = op->add_subcommand("o", "Ordered tree -> tree order");
  opo->add_option("ordered", file, "Ordered graph JSON")->required();
  opo->callback([&] {
    auto t = transduction_O(io::ordered_graph_from_json(io::read_file(file)));
    emit(io::to_json(t));
  });

  // star colorings and Unfold
  auto* sc = app.add_subcommand("starcolor", "Star coloring of the Gaifman graph");
  sc->add_option("structure", file, "Structure JSON")->required();
  sc->add_flag("--min", minimum, "Exhaustive minimum coloring");
  sc->callback([&] {
    auto g = gaifman(io::structure_from_json(io::read_file(file)));
    auto col = minimum ? min_star_coloring(g) : star_coloring(g);
    Json colors = Json::object();
    for (int v = 0; v < static_cast<int>(g.size()); ++v) colors[g.name(v)] = col.colors[static_cast<std::size_t>(v)];
    emit({{"colors", col.c}, {"coloring", colors}, {"degeneracy", degeneracy(g).value}});
  });
  auto* mark = app.add_subcommand("mark", "Gaifman graph with color and anchor marks");
  mark->add_option("structure", file, "Structure JSON")->required();
  mark->callback([&] { emit(io::to_json(mark_for_unfold(io::structure_from_json(io::read_file(file))))); });
  auto* unf = app.add_subcommand("unfold", "Recover a structure from a marked Gaifman graph");
  unf->add_option("marked", file, "Marked graph JSON")->required();
  unf->add_option("--signature", signature_text, "Target symbols, e.g. R:2,S:2")->required();
  unf->callback([&] {
    emit(io::to_json(unfold(io::marked_graph_from_json(io::read_file(file)), parse_signature_option(signature_text))));
  });

  // permutations
  auto* perm = app.add_subcommand("perm", "Ordered graphs <-> marked permutations");
  perm->require_subcommand(1);
  auto* pe = perm->add_subcommand("encode", "T1 of an ordered graph");
  pe->add_option("ordered", file, "Ordered graph JSON")->required();
  pe->add_flag("--text", text_out, "One-line text instead of JSON");
  pe->callback([&] {
    auto og = io::ordered_graph_from_json(io::read_file(file));
    auto enc = encode_T1(og, star_coloring(og.graph()));
    if (text_out) std::cout << to_one_line_text(enc.perm);
    else emit(io::to_json(enc.perm));
  });
  auto* pd = perm->add_subcommand("decode", "T2 of a marked permutation");
  pd->add_option("permutation", file, "Permutation JSON or one-line text")->required();
  pd->callback([&] {
    auto r = decode_T2_witnessed(read_permutation(file));
    Json out = io::to_json(r.graph);
    Json w = Json::array();
    for (const auto& x : r.witnesses)
      w.push_back({{"edge", {r.graph.graph().name(x.u), r.graph.graph().name(x.v)}}, {"z", x.z + 1}, {"first", x.first}});
    out["witnesses"] = w;
    emit(out);
  });
  auto* pp = perm->add_subcommand("pattern", "Pattern containment, or the smallest pattern avoided by all inputs");
  pp->add_option("permutations", files, "Permutation files (JSON or one-line text)")->required();
  pp->add_option("--pattern", pattern_text, "Pattern in one-line notation, e.g. \"2 3 1\"");
  pp->add_option("--max-len", max_len, "Longest pattern tried when searching");
  pp->add_flag("--serial", serial, "Serial containment test");
  pp->callback([&] {
    std::vector<Permutation> ps;
    for (const auto& f : files) ps.push_back(read_permutation(f));
    if (!pattern_text.empty()) {
      auto pat = parse_one_line_text(pattern_text);
      Json res = Json::array();
      for (std::size_t i = 0; i < ps.size(); ++i)
        res.push_back({{"file", files[i]}, {"contains", contains_pattern(ps[i], pat, !serial)}});
      emit({{"pattern", pat.one_line()}, {"results", res}});
      return;
    }
    auto a = smallest_avoided_pattern(ps, max_len, !serial);
    if (!a) {
      emit({{"avoided", nullptr}, {"max_len", max_len}});
      throw CheckFailed{"every pattern up to the maximum length occurs"};
    }
    emit({{"avoided", a->one_line()}, {"length", a->size()}});
  });

  // formulas
  auto* fo = app.add_subcommand("fo", "First-order formulas");
  fo->require_subcommand(1);
  auto* foe = fo->add_subcommand("eval", "Evaluate the formulas of a file on a structure");
  foe->add_option("formulas", formulas, "Formula file (name(x, y) := ...)")->required();
  foe->add_option("structure", file2, "Structure, model, full model, ordered graph, marked graph or permutation JSON")
      ->required();
  foe->add_option("--name", name, "Only this formula");
  foe->add_option("--assign", assigns, "Fix a free variable, e.g. x=a")->delimiter(',');
  foe->callback([&] {
    auto ff = fo::parse_formula_file(slurp(formulas));
    auto s = any_structure(io::read_file(file2));
    fo::Assignment fixed;
    for (const auto& a : assigns) {
      auto eq = a.find('=');
      if (eq == std::string::npos) throw ArgumentError("--assign expects var=element, got '" + a + "'");
      fixed[a.substr(0, eq)] = s.index_of(a.substr(eq + 1));
    }
    Json out = Json::object();
    for (const auto& m : ff.formulas) {
      if (!name.empty() && m.name != name) continue;
      std::vector<std::string> vars;
      for (const auto& v : m.params)
        if (!fixed.count(v)) vars.push_back(v);
      Json tuples = Json::array();
      for (const auto& t : fo::evaluate(m.body, s, vars, fixed)) {
        Json tj = Json::array();
        for (int e : t) tj.push_back(s.name(e));
        tuples.push_back(tj);
      }
      out[m.name] = {{"vars", vars}, {"tuples", tuples}};
    }
    if (!name.empty() && out.empty()) throw ArgumentError("no formula named '" + name + "'");
    emit(out);
  });

  // the codec
  auto* pipe = app.add_subcommand("pipeline", "Structure <-> marked permutation envelope");
  pipe->require_subcommand(1);
  auto add_encode_opts = [&](CLI::App* c) {
    c->add_flag("--greedy", greedy, "Always use the greedy sequence");
    c->add_option("--exact-limit", exact_limit, "Exact search up to this many elements");
  };
  auto* pen = pipe->add_subcommand("encode", "Encode a structure");
  pen->add_option("structure", file, "Structure JSON")->required();
  pen->add_option("-o,--output", out_path, "Write the envelope here instead of stdout");
  add_encode_opts(pen);
  pen->callback([&] {
    auto s = io::structure_from_json(io::read_file(file));
    auto env = encode_structure(s, {exact_limit, greedy});
    if (decode_envelope(env).labeled_equal(s) == false) throw CheckFailed{"the envelope does not decode to the input"};
    Json j = to_json(env);
    if (out_path.empty()) {
      emit(j);
    } else {
      std::ofstream(out_path) << j.dump(2) << "\n";
      std::cerr << "wrote " << out_path << " (|perm| = " << env.perm.size() << ", k = " << env.k() << ")\n";
    }
  });
  auto* pdec = pipe->add_subcommand("decode", "Decode an envelope");
  pdec->add_option("envelope", file, "Envelope JSON")->required();
  pdec->callback([&] { emit(io::to_json(decode_envelope(envelope_from_json(io::read_file(file))))); });
  auto* prt = pipe->add_subcommand("roundtrip", "Encode, decode and compare");
  prt->add_option("structure", file, "Structure JSON")->required();
  add_encode_opts(prt);
  prt->callback([&] {
    auto s = io::structure_from_json(io::read_file(file));
    auto r = roundtrip(s, {exact_limit, greedy});
    emit({{"ok", r.ok}, {"n", s.size()}, {"size", r.envelope.perm.size()}, {"k", r.envelope.k()},
          {"colors", r.envelope.colors}, {"width", r.envelope.width}, {"method", r.envelope.method},
          {"bound", 2 * (r.envelope.colors + 1)}});
    if (!r.ok) throw CheckFailed{"round trip mismatch"};
  });

  auto* en = app.add_subcommand("enumerate", "Count unlabeled graphs of bounded twin-width");
  en->add_option("--n", n, "Number of vertices (1..9)")->required();
  en->add_option("--d", d, "Width bound (omit for the full distribution)");
  en->add_flag("--serial", serial, "No parallelism");
  en->callback([&] {
    if (n < 1) throw ArgumentError("--n must be at least 1");
    auto e = enumerate_twinwidths(n, !serial);
    Json out{{"n", n}, {"total", e.total()}, {"by_width", e.by_width}};
    if (d >= 0) out["d"] = d, out["count"] = e.at_most(d);
    emit(out);
  });

  auto* render = app.add_subcommand("render", "Draw a structure, sequence or model");
  render->add_option("input", file, "Structure, sequence or model JSON")->required();
  render->add_flag("--dot", dot, "Graphviz DOT output (the only format)");
  render->callback([&] { std::cout << render_dot(io::read_file(file)); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const CheckFailed& e) {
    std::cerr << "tww: " << e.what << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "tww: parse error at " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "tww: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

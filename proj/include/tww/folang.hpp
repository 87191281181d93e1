#pragma once

// A small first-order language over relational structures: parser, pretty
// printer, naive evaluator, interpretations and copying transductions.
//
// Grammar (loosest binding first):
//   formula  := disj [ "->" formula ]
//   disj     := conj { "|" conj }
//   conj     := unary { "&" unary }
//   unary    := "!" unary | ("exists" | "forall") var unary | primary
//   primary  := "(" formula ")" | "true" | "false" | atom
//   atom     := name "(" var { "," var } ")"           relation, macro or inf
//             | var op var     op ∈ = != < <= > >= prec preceq
//
// `<`/`<=` read the symbol "lt" when the structure has one and "prec"
// otherwise; `prec`/`preceq` always read "prec". `inf(u,v,w)` says w is the
// infimum of u and v for ⪯. `sim(x,y)` is reflexive: x = y or stored sim.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "tww/structures.hpp"

namespace tww::fo {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  enum class Kind { True, False, Atom, Eq, Not, And, Or, Implies, Exists, Forall };
  Kind kind = Kind::True;
  /// Atom: relation name, or one of "<", "<=", "prec", "preceq".
  std::string name;
  /// Atom/Eq: argument variables; Exists/Forall: the bound variable.
  std::vector<std::string> vars;
  NodePtr a, b;

  bool operator==(const Node& o) const;
};

class Formula {
 public:
  Formula() = default;
  explicit Formula(NodePtr root) : root_(std::move(root)) {}

  const NodePtr& root() const { return root_; }
  /// Free variables in order of first occurrence.
  std::vector<std::string> free_vars() const;
  /// Relation names used by atoms (order operators excluded).
  std::set<std::string> symbols() const;
  std::string to_string() const;
  int quantifier_depth() const;

  bool operator==(const Formula& o) const;

 private:
  NodePtr root_;
};

struct Macro {
  std::string name;
  std::vector<std::string> params;
  Formula body;
};
using MacroTable = std::map<std::string, Macro>;

/// Throws ParseError with the byte offset of the offending token.
Formula parse_formula(const std::string& text, const MacroTable& macros = {});

/// Lines `name := formula` or `name(x, y) := formula`; `#` starts a comment.
/// Each formula may call the ones defined above it. Without an explicit
/// parameter list the parameters are the free variables in order.
struct FormulaFile {
  std::vector<Macro> formulas;
  MacroTable table() const;
  const Macro& get(const std::string& name) const;
};
FormulaFile parse_formula_file(const std::string& text);

/// Throws SignatureError on unknown symbols or arity mismatch.
void check_signature(const Formula& f, const Signature& sig);

using Assignment = std::map<std::string, int>;

/// Tuples over `vars` (in that order) satisfying f; other free variables must
/// be fixed by `fixed`. Naive enumeration with short-circuiting.
std::set<Tuple> evaluate(const Formula& f, const RelStructure& s, const std::vector<std::string>& vars,
                         const Assignment& fixed = {});
bool holds(const Formula& f, const RelStructure& s, const Assignment& assignment);

struct Interpretation {
  std::string domain_var = "x";
  Formula domain;  ///< ρ0
  struct Rel {
    Symbol symbol;
    std::vector<std::string> vars;
    Formula formula;
  };
  std::vector<Rel> relations;

  Signature target() const;
};

/// Domain = elements satisfying ρ0 (source order, source names); each target
/// relation is its formula restricted to that domain. Diagonal tuples are
/// dropped, since structures here are irreflexive.
RelStructure apply_interpretation(const Interpretation& in, const RelStructure& s);

/// Keeps the listed symbols unchanged.
Interpretation reduct_interpretation(const Signature& source, const std::vector<std::string>& keep);
/// Gaifman graph of a binary signature, as symbol "E".
Interpretation gaifman_interpretation(const Signature& source);

/// Domain A × [k]: copies named "<a>#<i>" (unchanged names when k = 1), every
/// relation lifted through the projection, "sim" between distinct copies of
/// one element, and unary "P_i" on the i-th copies.
RelStructure blow(const RelStructure& s, int k);

struct Transduction {
  int blow = 1;
  std::vector<std::string> marks;  ///< unary symbols added before interpreting
  Interpretation interpretation;
};

/// Blows s up, adds the given mark sets (element names of the blown domain)
/// and applies the interpretation.
RelStructure apply_transduction(const Transduction& t, const RelStructure& s,
                                const std::map<std::string, std::set<std::string>>& marks = {});

}  // namespace tww::fo

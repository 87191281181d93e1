#include "tww/folang.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace tww::fo {

using Kind = Node::Kind;

bool Node::operator==(const Node& o) const {
  if (kind != o.kind || name != o.name || vars != o.vars) return false;
  auto same = [](const NodePtr& x, const NodePtr& y) { return (!x && !y) || (x && y && *x == *y); };
  return same(a, o.a) && same(b, o.b);
}

namespace {

NodePtr make(Kind k, std::string name = {}, std::vector<std::string> vars = {}, NodePtr a = nullptr,
             NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->name = std::move(name);
  n->vars = std::move(vars);
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

bool is_order_op(const std::string& s) { return s == "<" || s == "<=" || s == "prec" || s == "preceq"; }

// ------------------------------------------------------------------ lexer

enum class Tok { Ident, LParen, RParen, Comma, And, Or, Not, Arrow, Eq, Neq, Lt, Le, Gt, Ge, Assign, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> lex(const std::string& s, std::size_t base) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t at = base + i;
    auto two = [&](const char* t) { return s.compare(i, 2, t) == 0; };
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, s.substr(i, j - i), at});
      i = j;
    } else if (two("->")) {
      out.push_back({Tok::Arrow, "->", at});
      i += 2;
    } else if (two("!=")) {
      out.push_back({Tok::Neq, "!=", at});
      i += 2;
    } else if (two("<=")) {
      out.push_back({Tok::Le, "<=", at});
      i += 2;
    } else if (two(">=")) {
      out.push_back({Tok::Ge, ">=", at});
      i += 2;
    } else if (two(":=")) {
      out.push_back({Tok::Assign, ":=", at});
      i += 2;
    } else {
      Tok k;
      switch (c) {
        case '(': k = Tok::LParen; break;
        case ')': k = Tok::RParen; break;
        case ',': k = Tok::Comma; break;
        case '&': k = Tok::And; break;
        case '|': k = Tok::Or; break;
        case '!': k = Tok::Not; break;
        case '=': k = Tok::Eq; break;
        case '<': k = Tok::Lt; break;
        case '>': k = Tok::Gt; break;
        default: throw ParseError(at, std::string("unexpected character '") + c + "'");
      }
      out.push_back({k, std::string(1, c), at});
      ++i;
    }
  }
  out.push_back({Tok::End, "", base + s.size()});
  return out;
}

const std::set<std::string> kKeywords{"exists", "forall", "true", "false", "prec", "preceq"};

// ------------------------------------------------------------------ parser

class Parser {
 public:
  Parser(std::vector<Token> toks, const MacroTable& macros) : t_(std::move(toks)), macros_(macros) {
    for (const auto& tk : t_)
      if (tk.kind == Tok::Ident) taken_.insert(tk.text);
  }

  NodePtr parse_all() {
    auto f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return t_[pos_]; }
  const Token& next() { return t_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(peek().offset, what); }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + (peek().kind == Tok::End ? " at end of input" : ", got '" + peek().text + "'"));
  }

  std::string variable() {
    if (peek().kind != Tok::Ident || kKeywords.count(peek().text)) fail("expected a variable");
    return next().text;
  }

  NodePtr formula() {
    auto left = disj();
    if (accept(Tok::Arrow)) return make(Kind::Implies, {}, {}, left, formula());
    return left;
  }
  NodePtr disj() {
    auto left = conj();
    while (accept(Tok::Or)) left = make(Kind::Or, {}, {}, left, conj());
    return left;
  }
  NodePtr conj() {
    auto left = unary();
    while (accept(Tok::And)) left = make(Kind::And, {}, {}, left, unary());
    return left;
  }
  NodePtr unary() {
    if (accept(Tok::Not)) return make(Kind::Not, {}, {}, unary());
    if (peek().kind == Tok::Ident && (peek().text == "exists" || peek().text == "forall")) {
      Kind k = next().text == "exists" ? Kind::Exists : Kind::Forall;
      auto v = variable();
      return make(k, {}, {v}, unary());
    }
    return primary();
  }
  NodePtr primary() {
    if (accept(Tok::LParen)) {
      auto f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (peek().kind != Tok::Ident) fail(peek().kind == Tok::End ? "unexpected end of input" : "unexpected '" + peek().text + "'");
    if (peek().text == "true") {
      next();
      return make(Kind::True);
    }
    if (peek().text == "false") {
      next();
      return make(Kind::False);
    }
    const Token head = next();
    if (accept(Tok::LParen)) {
      if (kKeywords.count(head.text)) throw ParseError(head.offset, "'" + head.text + "' cannot be applied");
      std::vector<std::string> args{variable()};
      while (accept(Tok::Comma)) args.push_back(variable());
      expect(Tok::RParen, "')'");
      return call(head, args);
    }
    if (kKeywords.count(head.text)) throw ParseError(head.offset, "expected a variable");
    const std::string x = head.text;
    const Token op = next();
    switch (op.kind) {
      case Tok::Eq: return make(Kind::Eq, {}, {x, variable()});
      case Tok::Neq: return make(Kind::Not, {}, {}, make(Kind::Eq, {}, {x, variable()}));
      case Tok::Lt: return make(Kind::Atom, "<", {x, variable()});
      case Tok::Le: return make(Kind::Atom, "<=", {x, variable()});
      case Tok::Gt: return make(Kind::Atom, "<", {variable(), x});
      case Tok::Ge: return make(Kind::Atom, "<=", {variable(), x});
      case Tok::Ident:
        if (op.text == "prec" || op.text == "preceq") return make(Kind::Atom, op.text, {x, variable()});
        [[fallthrough]];
      default: throw ParseError(op.offset, "expected a comparison after '" + x + "'");
    }
  }

  std::string fresh() {
    std::string v;
    do v = "_" + std::to_string(++counter_);
    while (taken_.count(v));
    taken_.insert(v);
    return v;
  }

  // Copy with free variables renamed by `ren` and every bound variable fresh.
  NodePtr subst(const NodePtr& n, const std::map<std::string, std::string>& ren) {
    auto rename = [&](const std::string& v) {
      auto it = ren.find(v);
      return it == ren.end() ? v : it->second;
    };
    switch (n->kind) {
      case Kind::True:
      case Kind::False: return n;
      case Kind::Atom:
      case Kind::Eq: {
        std::vector<std::string> vs;
        for (const auto& v : n->vars) vs.push_back(rename(v));
        return make(n->kind, n->name, vs);
      }
      case Kind::Not: return make(Kind::Not, {}, {}, subst(n->a, ren));
      case Kind::And:
      case Kind::Or:
      case Kind::Implies: return make(n->kind, {}, {}, subst(n->a, ren), subst(n->b, ren));
      case Kind::Exists:
      case Kind::Forall: {
        auto inner = ren;
        auto v = fresh();
        inner[n->vars[0]] = v;
        return make(n->kind, {}, {v}, subst(n->a, inner));
      }
    }
    return n;
  }

  NodePtr call(const Token& head, const std::vector<std::string>& args) {
    if (head.text == "inf") {
      if (args.size() != 3) throw ParseError(head.offset, "inf takes 3 arguments (u, v, w)");
      const auto &u = args[0], &v = args[1], &w = args[2];
      auto t = fresh();
      auto below = [&](const std::string& a, const std::string& b) { return make(Kind::Atom, "preceq", {a, b}); };
      auto lower = make(Kind::And, {}, {}, below(t, u), below(t, v));
      return make(Kind::And, {}, {}, make(Kind::And, {}, {}, below(w, u), below(w, v)),
                  make(Kind::Forall, {}, {t}, make(Kind::Implies, {}, {}, lower, below(t, w))));
    }
    auto it = macros_.find(head.text);
    if (it == macros_.end()) return make(Kind::Atom, head.text, args);
    const auto& m = it->second;
    if (m.params.size() != args.size())
      throw ParseError(head.offset, "'" + m.name + "' takes " + std::to_string(m.params.size()) + " arguments, got " +
                                        std::to_string(args.size()));
    std::map<std::string, std::string> ren;
    for (std::size_t i = 0; i < args.size(); ++i) ren[m.params[i]] = args[i];
    return subst(m.body.root(), ren);
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
  const MacroTable& macros_;
  std::set<std::string> taken_;
  int counter_ = 0;
};

// ------------------------------------------------------------------ printer

int level(const Node& n) {
  switch (n.kind) {
    case Kind::Implies: return 1;
    case Kind::Or: return 2;
    case Kind::And: return 3;
    case Kind::Not:
    case Kind::Exists:
    case Kind::Forall: return 4;
    default: return 5;
  }
}

void print(const Node& n, int min_level, std::ostream& out) {
  bool paren = level(n) < min_level;
  if (paren) out << "(";
  switch (n.kind) {
    case Kind::True: out << "true"; break;
    case Kind::False: out << "false"; break;
    case Kind::Eq: out << n.vars[0] << " = " << n.vars[1]; break;
    case Kind::Atom:
      if (is_order_op(n.name)) {
        out << n.vars[0] << " " << n.name << " " << n.vars[1];
      } else {
        out << n.name << "(";
        for (std::size_t i = 0; i < n.vars.size(); ++i) out << (i ? ", " : "") << n.vars[i];
        out << ")";
      }
      break;
    case Kind::Not:
      out << "!";
      print(*n.a, 4, out);
      break;
    case Kind::Exists:
    case Kind::Forall:
      out << (n.kind == Kind::Exists ? "exists " : "forall ") << n.vars[0] << " ";
      print(*n.a, 4, out);
      break;
    case Kind::And:
      print(*n.a, 3, out);
      out << " & ";
      print(*n.b, 4, out);
      break;
    case Kind::Or:
      print(*n.a, 2, out);
      out << " | ";
      print(*n.b, 3, out);
      break;
    case Kind::Implies:
      print(*n.a, 2, out);
      out << " -> ";
      print(*n.b, 1, out);
      break;
  }
  if (paren) out << ")";
}

void collect_free(const Node& n, std::vector<std::string>& bound, std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end() && std::find(out.begin(), out.end(), v) == out.end())
      out.push_back(v);
  };
  switch (n.kind) {
    case Kind::Atom:
    case Kind::Eq:
      for (const auto& v : n.vars) note(v);
      break;
    case Kind::Exists:
    case Kind::Forall:
      bound.push_back(n.vars[0]);
      collect_free(*n.a, bound, out);
      bound.pop_back();
      break;
    default:
      if (n.a) collect_free(*n.a, bound, out);
      if (n.b) collect_free(*n.b, bound, out);
  }
}

}  // namespace

std::vector<std::string> Formula::free_vars() const {
  std::vector<std::string> bound, out;
  if (root_) collect_free(*root_, bound, out);
  return out;
}

std::set<std::string> Formula::symbols() const {
  std::set<std::string> out;
  std::function<void(const Node&)> go = [&](const Node& n) {
    if (n.kind == Kind::Atom && !is_order_op(n.name)) out.insert(n.name);
    if (n.a) go(*n.a);
    if (n.b) go(*n.b);
  };
  if (root_) go(*root_);
  return out;
}

std::string Formula::to_string() const {
  std::ostringstream out;
  if (root_) print(*root_, 1, out);
  return out.str();
}

int Formula::quantifier_depth() const {
  std::function<int(const Node&)> go = [&](const Node& n) -> int {
    int d = std::max(n.a ? go(*n.a) : 0, n.b ? go(*n.b) : 0);
    return d + (n.kind == Kind::Exists || n.kind == Kind::Forall ? 1 : 0);
  };
  return root_ ? go(*root_) : 0;
}

bool Formula::operator==(const Formula& o) const {
  if (!root_ || !o.root_) return !root_ && !o.root_;
  return *root_ == *o.root_;
}

Formula parse_formula(const std::string& text, const MacroTable& macros) {
  return Formula(Parser(lex(text, 0), macros).parse_all());
}

MacroTable FormulaFile::table() const {
  MacroTable t;
  for (const auto& m : formulas) t[m.name] = m;
  return t;
}

const Macro& FormulaFile::get(const std::string& name) const {
  for (const auto& m : formulas)
    if (m.name == name) return m;
  throw ArgumentError("no formula named '" + name + "'");
}

FormulaFile parse_formula_file(const std::string& text) {
  FormulaFile file;
  MacroTable table;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto toks = lex(line, start);
    if (toks.front().kind != Tok::End) {
      // head: name [ "(" params ")" ] ":="
      std::size_t i = 0;
      if (toks[i].kind != Tok::Ident || kKeywords.count(toks[i].text))
        throw ParseError(toks[i].offset, "expected a formula name");
      Macro m;
      m.name = toks[i++].text;
      if (table.count(m.name) || m.name == "inf") throw ParseError(toks[0].offset, "'" + m.name + "' defined twice");
      bool explicit_params = false;
      if (toks[i].kind == Tok::LParen) {
        explicit_params = true;
        ++i;
        while (true) {
          if (toks[i].kind != Tok::Ident) throw ParseError(toks[i].offset, "expected a parameter");
          m.params.push_back(toks[i++].text);
          if (toks[i].kind == Tok::Comma) {
            ++i;
            continue;
          }
          if (toks[i].kind != Tok::RParen) throw ParseError(toks[i].offset, "expected ')'");
          ++i;
          break;
        }
      }
      if (toks[i].kind != Tok::Assign) throw ParseError(toks[i].offset, "expected ':='");
      ++i;
      std::vector<Token> body(toks.begin() + static_cast<std::ptrdiff_t>(i), toks.end());
      m.body = Formula(Parser(body, table).parse_all());
      auto free = m.body.free_vars();
      if (!explicit_params) {
        m.params = free;
      } else {
        for (const auto& v : free)
          if (std::find(m.params.begin(), m.params.end(), v) == m.params.end())
            throw ParseError(toks[0].offset, "'" + m.name + "' uses '" + v + "' which is not a parameter");
      }
      table[m.name] = m;
      file.formulas.push_back(m);
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return file;
}

// ------------------------------------------------------------------ evaluation

namespace {

struct Compiled {
  Kind kind = Kind::True;
  std::size_t sym = 0;
  bool reflexive = false;
  std::vector<int> slots;  // atom arguments, or the bound slot
  std::vector<Compiled> ch;
};

class Compiler {
 public:
  explicit Compiler(const Signature& sig) : sig_(sig) {}

  int bind(const std::string& v) {
    int s = static_cast<int>(slots_);
    ++slots_;
    scope_.emplace_back(v, s);
    return s;
  }
  std::size_t slot_count() const { return slots_; }

  Compiled compile(const Node& n) {
    Compiled c;
    c.kind = n.kind;
    switch (n.kind) {
      case Kind::True:
      case Kind::False: break;
      case Kind::Eq:
        for (const auto& v : n.vars) c.slots.push_back(lookup(v));
        break;
      case Kind::Atom: {
        resolve(n, c);
        for (const auto& v : n.vars) c.slots.push_back(lookup(v));
        break;
      }
      case Kind::Exists:
      case Kind::Forall: {
        c.slots.push_back(bind(n.vars[0]));
        c.ch.push_back(compile(*n.a));
        scope_.pop_back();
        break;
      }
      default:
        c.ch.push_back(compile(*n.a));
        if (n.b) c.ch.push_back(compile(*n.b));
    }
    return c;
  }

 private:
  int lookup(const std::string& v) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == v) return it->second;
    throw ArgumentError("variable '" + v + "' is free and unassigned");
  }

  void resolve(const Node& n, Compiled& c) const {
    std::string name = n.name;
    if (name == "<" || name == "<=") {
      c.reflexive = name == "<=";
      if (sig_.find("lt")) name = "lt";
      else if (sig_.find("prec")) name = "prec";
      else throw SignatureError("'" + n.name + "' needs a symbol 'lt' or 'prec'");
    } else if (name == "prec" || name == "preceq") {
      c.reflexive = name == "preceq";
      name = "prec";
    } else if (name == "sim") {
      c.reflexive = true;
    }
    auto s = sig_.find(name);
    if (!s) throw SignatureError("unknown symbol '" + name + "'");
    if (static_cast<std::size_t>(sig_[*s].arity) != n.vars.size())
      throw SignatureError("'" + name + "' has arity " + std::to_string(sig_[*s].arity) + ", used with " +
                           std::to_string(n.vars.size()) + " arguments");
    c.sym = *s;
  }

  const Signature& sig_;
  std::size_t slots_ = 0;
  std::vector<std::pair<std::string, int>> scope_;
};

bool eval(const Compiled& c, const RelStructure& s, std::vector<int>& env) {
  switch (c.kind) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Eq: return env[static_cast<std::size_t>(c.slots[0])] == env[static_cast<std::size_t>(c.slots[1])];
    case Kind::Atom: {
      if (c.slots.size() == 1) return s.holds(c.sym, env[static_cast<std::size_t>(c.slots[0])]);
      int a = env[static_cast<std::size_t>(c.slots[0])], b = env[static_cast<std::size_t>(c.slots[1])];
      return (c.reflexive && a == b) || s.holds(c.sym, a, b);
    }
    case Kind::Not: return !eval(c.ch[0], s, env);
    case Kind::And: return eval(c.ch[0], s, env) && eval(c.ch[1], s, env);
    case Kind::Or: return eval(c.ch[0], s, env) || eval(c.ch[1], s, env);
    case Kind::Implies: return !eval(c.ch[0], s, env) || eval(c.ch[1], s, env);
    case Kind::Exists:
    case Kind::Forall: {
      const bool want = c.kind == Kind::Exists;
      auto& slot = env[static_cast<std::size_t>(c.slots[0])];
      for (int x = 0; x < static_cast<int>(s.size()); ++x) {
        slot = x;
        if (eval(c.ch[0], s, env) == want) return want;
      }
      return !want;
    }
  }
  return false;
}

}  // namespace

void check_signature(const Formula& f, const Signature& sig) {
  Compiler comp(sig);
  for (const auto& v : f.free_vars()) comp.bind(v);
  comp.compile(*f.root());
}

std::set<Tuple> evaluate(const Formula& f, const RelStructure& s, const std::vector<std::string>& vars,
                         const Assignment& fixed) {
  Compiler comp(s.signature());
  std::vector<int> var_slots;
  for (const auto& v : vars) var_slots.push_back(comp.bind(v));
  std::vector<std::pair<int, int>> fixed_slots;
  for (const auto& [v, e] : fixed) {
    if (e < 0 || static_cast<std::size_t>(e) >= s.size()) throw DomainError("assignment of '" + v + "' is out of range");
    fixed_slots.emplace_back(comp.bind(v), e);
  }
  auto code = comp.compile(*f.root());
  std::vector<int> env(comp.slot_count(), 0);
  for (auto [slot, e] : fixed_slots) env[static_cast<std::size_t>(slot)] = e;

  std::set<Tuple> out;
  const int n = static_cast<int>(s.size());
  const std::size_t k = vars.size();
  if (k > 0 && n == 0) return out;
  Tuple t(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) env[static_cast<std::size_t>(var_slots[i])] = t[i];
    if (eval(code, s, env)) out.insert(t);
    std::size_t i = k;
    while (i > 0 && ++t[i - 1] == n) t[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

bool holds(const Formula& f, const RelStructure& s, const Assignment& assignment) {
  return !evaluate(f, s, {}, assignment).empty();
}

Signature Interpretation::target() const {
  std::vector<Symbol> syms;
  for (const auto& r : relations) syms.push_back(r.symbol);
  return Signature(syms);
}

RelStructure apply_interpretation(const Interpretation& in, const RelStructure& s) {
  auto dom = evaluate(in.domain, s, {in.domain_var});
  std::vector<int> keep;
  std::vector<int> index(s.size(), -1);
  std::vector<std::string> names;
  for (const auto& t : dom) {
    index[static_cast<std::size_t>(t[0])] = static_cast<int>(keep.size());
    keep.push_back(t[0]);
    names.push_back(s.name(t[0]));
  }
  RelStructure out(in.target(), names);
  for (std::size_t r = 0; r < in.relations.size(); ++r) {
    const auto& rel = in.relations[r];
    if (rel.vars.size() != static_cast<std::size_t>(rel.symbol.arity))
      throw SignatureError("formula for '" + rel.symbol.name + "' has the wrong number of variables");
    for (const auto& t : evaluate(rel.formula, s, rel.vars)) {
      Tuple mapped;
      for (int e : t) mapped.push_back(index[static_cast<std::size_t>(e)]);
      if (std::any_of(mapped.begin(), mapped.end(), [](int e) { return e < 0; })) continue;
      if (mapped.size() == 2 && mapped[0] == mapped[1]) continue;
      out.add(r, mapped);
    }
  }
  return out;
}

Interpretation reduct_interpretation(const Signature& source, const std::vector<std::string>& keep) {
  Interpretation in;
  in.domain = parse_formula("true");
  for (const auto& name : keep) {
    const auto& sym = source[source.index_of(name)];
    std::vector<std::string> vars = sym.arity == 1 ? std::vector<std::string>{"x"} : std::vector<std::string>{"x", "y"};
    std::string args = sym.arity == 1 ? "(x)" : "(x, y)";
    in.relations.push_back({sym, vars, parse_formula(name + args)});
  }
  return in;
}

Interpretation gaifman_interpretation(const Signature& source) {
  std::string body;
  for (const auto& sym : source.symbols()) {
    if (sym.arity != 2) continue;
    if (!body.empty()) body += " | ";
    body += sym.name + "(x, y) | " + sym.name + "(y, x)";
  }
  Interpretation in;
  in.domain = parse_formula("true");
  in.relations.push_back({{"E", 2}, {"x", "y"}, parse_formula(body.empty() ? "false" : "x != y & (" + body + ")")});
  return in;
}

RelStructure blow(const RelStructure& s, int k) {
  if (k < 1) throw ArgumentError("blowing factor must be at least 1");
  if (s.signature().find("sim")) throw SignatureError("'sim' is reserved for the blowing");
  std::vector<Symbol> syms = s.signature().symbols();
  syms.push_back({"sim", 2});
  for (int i = 1; i <= k; ++i) syms.push_back({"P_" + std::to_string(i), 1});
  const int n = static_cast<int>(s.size());
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a)
    for (int i = 1; i <= k; ++i) names.push_back(k == 1 ? s.name(a) : s.name(a) + "#" + std::to_string(i));
  RelStructure out(Signature(syms), names);
  auto copy = [&](int a, int i) { return a * k + i; };
  const std::size_t base = s.signature().size();
  for (std::size_t r = 0; r < base; ++r)
    for (const auto& t : s.tuples(r)) {
      if (t.size() == 1) {
        for (int i = 0; i < k; ++i) out.add(r, {copy(t[0], i)});
      } else {
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < k; ++j) out.add(r, {copy(t[0], i), copy(t[1], j)});
      }
    }
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < k; ++i) {
      out.add(base + 1 + static_cast<std::size_t>(i), {copy(a, i)});
      for (int j = 0; j < k; ++j)
        if (i != j) out.add(base, {copy(a, i), copy(a, j)});
    }
  return out;
}

RelStructure apply_transduction(const Transduction& t, const RelStructure& s,
                                const std::map<std::string, std::set<std::string>>& marks) {
  auto b = blow(s, t.blow);
  std::vector<Symbol> syms = b.signature().symbols();
  for (const auto& m : t.marks) {
    if (b.signature().find(m)) throw SignatureError("mark '" + m + "' clashes with an existing symbol");
    syms.push_back({m, 1});
  }
  for (const auto& [m, _] : marks)
    if (std::find(t.marks.begin(), t.marks.end(), m) == t.marks.end())
      throw ArgumentError("'" + m + "' is not a mark of this transduction");
  RelStructure marked(Signature(syms), b.domain());
  for (std::size_t r = 0; r < b.signature().size(); ++r)
    for (const auto& tup : b.tuples(r)) marked.add(r, tup);
  for (std::size_t i = 0; i < t.marks.size(); ++i) {
    auto it = marks.find(t.marks[i]);
    if (it == marks.end()) continue;
    for (const auto& e : it->second) marked.add(b.signature().size() + i, {marked.index_of(e)});
  }
  return apply_interpretation(t.interpretation, marked);
}

}  // namespace tww::fo

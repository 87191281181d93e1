#pragma once

// Finite relational structures over signatures of arity <= 2, and the
// special cases used throughout the library: graphs, ordered graphs,
// rooted trees / tree orders and permutations.
//
// Elements are addressed by their index in the domain list; the list order
// is the canonical order used for every deterministic tie-break.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tww/error.hpp"

namespace tww {

struct Symbol {
  std::string name;
  int arity = 2;

  bool operator==(const Symbol&) const = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);
  Signature(std::initializer_list<Symbol> symbols)
      : Signature(std::vector<Symbol>(symbols)) {}

  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  std::optional<std::size_t> find(const std::string& name) const;
  /// Throws SignatureError when the symbol is unknown.
  std::size_t index_of(const std::string& name) const;
  bool all_binary() const;

  bool operator==(const Signature& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<Symbol> symbols_;
};

using Tuple = std::vector<int>;

class RelStructure {
 public:
  RelStructure() = default;
  RelStructure(Signature signature, std::vector<std::string> domain);

  const Signature& signature() const { return signature_; }
  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  const std::string& name(int e) const { return domain_[static_cast<std::size_t>(e)]; }

  std::optional<int> find(const std::string& element) const;
  /// Throws DomainError when the element is unknown.
  int index_of(const std::string& element) const;

  /// Adds a tuple; rejects reflexive pairs and out-of-domain indices.
  void add(std::size_t symbol, const Tuple& tuple);
  void add(const std::string& symbol, const std::vector<std::string>& tuple);

  bool holds(std::size_t symbol, int a, int b) const {
    return binary_[symbol][static_cast<std::size_t>(a) * domain_.size() +
                           static_cast<std::size_t>(b)] != 0;
  }
  bool holds(std::size_t symbol, int a) const {
    return unary_[symbol][static_cast<std::size_t>(a)] != 0;
  }
  bool holds(std::size_t symbol, const Tuple& t) const {
    return t.size() == 1 ? holds(symbol, t[0]) : holds(symbol, t[0], t[1]);
  }
  const std::set<Tuple>& tuples(std::size_t symbol) const { return tuples_[symbol]; }
  std::size_t tuple_count() const;

  /// Same signature, same set of element names, same relations (by name);
  /// the domain order is ignored.
  bool labeled_equal(const RelStructure& other) const;

  /// Copy restricted to a sub-signature (reduct); symbols must exist.
  RelStructure reduct(const std::vector<std::string>& keep) const;

 private:
  Signature signature_;
  std::vector<std::string> domain_;
  std::unordered_map<std::string, int> index_;
  std::vector<std::set<Tuple>> tuples_;
  std::vector<std::vector<std::uint8_t>> binary_;  // n*n per binary symbol
  std::vector<std::vector<std::uint8_t>> unary_;   // n per unary symbol
};

/// A structure over the single symmetric, irreflexive binary symbol E.
class Graph {
 public:
  Graph() = default;
  explicit Graph(RelStructure structure);
  static Graph from_edges(std::vector<std::string> vertices,
                          const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const { return s_.size(); }
  const std::vector<std::string>& vertices() const { return s_.domain(); }
  const std::string& name(int v) const { return s_.name(v); }
  int index_of(const std::string& v) const { return s_.index_of(v); }
  bool adjacent(int u, int v) const { return s_.holds(0, u, v); }
  const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::size_t degree(int v) const { return adj_[static_cast<std::size_t>(v)].size(); }
  std::size_t edge_count() const { return s_.tuples(0).size() / 2; }
  const RelStructure& structure() const { return s_; }

 private:
  RelStructure s_;
  std::vector<std::vector<int>> adj_;
};

/// Graph plus a strict linear order on its vertices.
class OrderedGraph {
 public:
  OrderedGraph() = default;
  /// `order` lists every vertex index exactly once, smallest first.
  OrderedGraph(Graph graph, std::vector<int> order);

  const Graph& graph() const { return g_; }
  const std::vector<int>& order() const { return order_; }
  int rank(int v) const { return rank_[static_cast<std::size_t>(v)]; }
  bool less(int u, int v) const { return rank(u) < rank(v); }
  std::size_t size() const { return g_.size(); }

  /// Signature {E, lt}.
  RelStructure as_structure() const;
  static OrderedGraph from_structure(const RelStructure& s);

  /// True when the order-preserving bijection maps edges onto edges.
  bool order_isomorphic(const OrderedGraph& other) const;

 private:
  Graph g_;
  std::vector<int> order_;
  std::vector<int> rank_;
};

/// Rooted tree with ordered children (the order is a plane embedding).
class RootedTree {
 public:
  RootedTree() = default;
  /// parent[root] == -1; children keep ascending index order.
  RootedTree(std::vector<std::string> names, std::vector<int> parent);
  /// Explicit children lists (the list order is the embedding).
  static RootedTree from_children(std::vector<std::string> names, int root,
                                  std::vector<std::vector<int>> children);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int v) const { return names_[static_cast<std::size_t>(v)]; }
  std::optional<int> find(const std::string& name) const;
  int index_of(const std::string& name) const;

  int root() const { return root_; }
  int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
  const std::vector<int>& children(int v) const { return children_[static_cast<std::size_t>(v)]; }
  bool is_leaf(int v) const { return children(v).empty(); }
  int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }
  std::vector<int> leaves() const;
  std::vector<int> internal_nodes() const;

  /// u is an ancestor of v or u == v.
  bool ancestor_eq(int u, int v) const {
    return tin_[static_cast<std::size_t>(u)] <= tin_[static_cast<std::size_t>(v)] &&
           tout_[static_cast<std::size_t>(v)] <= tout_[static_cast<std::size_t>(u)];
  }
  bool ancestor(int u, int v) const { return u != v && ancestor_eq(u, v); }
  int lca(int u, int v) const;
  bool is_binary() const;

  /// Same tree with new per-node children lists (must be permutations of the old ones).
  RootedTree with_children_order(const std::vector<std::vector<int>>& children) const;

 private:
  void finalize();

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<int> depth_, tin_, tout_;
  int root_ = -1;
};

/// Tree order: a strict partial order whose downsets are chains, with a root.
class TreeOrder {
 public:
  TreeOrder() = default;
  explicit TreeOrder(RootedTree tree) : tree_(std::move(tree)) {}
  /// Validates the tree-order axioms on the given binary symbol.
  static TreeOrder from_relation(const RelStructure& s, const std::string& symbol = "prec");

  const RootedTree& tree() const { return tree_; }
  std::size_t size() const { return tree_.size(); }
  const std::string& name(int v) const { return tree_.name(v); }
  bool precedes(int x, int y) const { return tree_.ancestor(x, y); }
  bool precedes_eq(int x, int y) const { return tree_.ancestor_eq(x, y); }
  int inf(int u, int v) const { return tree_.lca(u, v); }
  bool is_maximal(int v) const { return tree_.is_leaf(v); }
  /// Every non-maximal element is covered by exactly two elements.
  bool is_binary() const { return tree_.is_binary(); }

  /// Single binary symbol holding the strict order.
  RelStructure as_structure(const std::string& symbol = "prec") const;

 private:
  RootedTree tree_;
};

/// Two linear orders on one domain plus named unary marks.
class Permutation {
 public:
  Permutation() = default;
  Permutation(std::vector<std::string> domain, const std::vector<std::string>& order1,
              const std::vector<std::string>& order2,
              std::map<std::string, std::set<std::string>> marks = {});
  /// Elements are named "1".."n" by their <1 position; values[i] is the
  /// 1-based <2 rank of the element at <1 position i+1.
  static Permutation from_one_line(const std::vector<int>& values);

  std::size_t size() const { return domain_.size(); }
  const std::vector<std::string>& domain() const { return domain_; }
  const std::string& name(int e) const { return domain_[static_cast<std::size_t>(e)]; }
  int index_of(const std::string& e) const;
  int rank1(int e) const { return rank1_[static_cast<std::size_t>(e)]; }
  int rank2(int e) const { return rank2_[static_cast<std::size_t>(e)]; }
  bool less1(int a, int b) const { return rank1(a) < rank1(b); }
  bool less2(int a, int b) const { return rank2(a) < rank2(b); }
  const std::vector<int>& order1() const { return order1_; }
  const std::vector<int>& order2() const { return order2_; }

  /// 1-based <2 rank of every element, listed in <1 order.
  std::vector<int> one_line() const;

  const std::map<std::string, std::set<int>>& marks() const { return marks_; }
  bool marked(const std::string& mark, int e) const;
  void set_mark(const std::string& mark, std::set<int> elements);

  /// Signature {lt1, lt2} plus one unary symbol per mark.
  RelStructure as_structure() const;
  Permutation restricted(const std::vector<int>& elements) const;

 private:
  std::vector<std::string> domain_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> rank1_, rank2_, order1_, order2_;
  std::map<std::string, std::set<int>> marks_;
};

// ---------------------------------------------------------------------------
// Operations

/// Substructure induced by a set of element names (result keeps domain order).
RelStructure induced_substructure(const RelStructure& s, const std::vector<std::string>& x);

/// Gaifman graph: u ~ v iff u != v and both occur in a common tuple.
Graph gaifman(const RelStructure& s);

struct Degeneracy {
  int value = 0;
  std::vector<int> order;  ///< removal order (vertex indices)
};
/// Repeatedly removes a vertex of minimum remaining degree (ties: lowest index).
Degeneracy degeneracy(const Graph& g);

/// Witness map from s1 element index to s2 element index, if isomorphic.
/// Colour refinement plus backtracking; exponential in the worst case.
std::optional<std::vector<int>> isomorphism(const RelStructure& s1, const RelStructure& s2);
bool are_isomorphic(const RelStructure& s1, const RelStructure& s2);

}  // namespace tww

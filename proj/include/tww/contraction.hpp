#pragma once

// Trigraph contraction calculus: contractions, red degree, replay and
// validation of contraction sequences, greedy and exact twin-width.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tww/structures.hpp"

namespace tww {

/// A Σ*-structure: black relations R plus a symmetric red relation R* per
/// binary symbol. Stored densely, one bit pair per symbol and ordered pair:
/// bit 2s is R_s(i,j), bit 2s+1 is R_s*(i,j).
class Trigraph {
 public:
  static constexpr int kMaxSymbols = 16;

  Trigraph() = default;
  /// Red-free trigraph of a binary structure.
  explicit Trigraph(const RelStructure& s);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& domain() const { return names_; }
  const std::string& name(int v) const { return names_[static_cast<std::size_t>(v)]; }
  std::optional<int> find(const std::string& name) const;
  /// Throws ArgumentError when the element is unknown.
  int index_of(const std::string& name) const;

  std::uint32_t cell(int i, int j) const { return cells_[static_cast<std::size_t>(i) * size() + static_cast<std::size_t>(j)]; }
  bool black(std::size_t sym, int i, int j) const { return (cell(i, j) >> (2 * sym)) & 1U; }
  bool red(std::size_t sym, int i, int j) const { return (cell(i, j) >> (2 * sym + 1)) & 1U; }
  int red_degree(int v) const;
  int max_red_degree() const;
  std::size_t red_pair_count() const;  // unordered red pairs, with multiplicity

  /// Contract u and v into z. z takes the position of the earlier of u, v.
  Trigraph contract(int u, int v, const std::string& z) const;

  /// Σ*-structure with symbols R and "R*" for every R.
  RelStructure as_structure() const;
  bool operator==(const Trigraph& o) const {
    return sig_ == o.sig_ && names_ == o.names_ && cells_ == o.cells_;
  }

 private:
  Signature sig_;
  std::vector<std::string> names_;
  std::vector<std::uint32_t> cells_;
};

Trigraph contract(const Trigraph& t, const std::string& u, const std::string& v,
                  const std::string& z);
int red_degree(const Trigraph& t, const std::string& v);

struct Step {
  std::string u, v, z;
  bool operator==(const Step&) const = default;
};

struct ContractionSequence {
  RelStructure initial;
  std::vector<Step> steps;
};

/// Snapshots A_n, ..., A_1 (index 0 is the red-free initial trigraph).
/// Throws SequenceError naming the offending step.
std::vector<Trigraph> replay(const ContractionSequence& seq);

/// Max red degree over all snapshots and vertices.
int validate_sequence(const ContractionSequence& seq);

/// Fresh name for contracting u and v in t: the two names concatenated in
/// domain order, primed until it avoids every name in `used`.
std::string fresh_name(const Trigraph& t, int u, int v, const std::set<std::string>& used);

/// Builds a named sequence from contractions given as (slot, slot) pairs.
ContractionSequence sequence_from_slots(const RelStructure& s,
                                        const std::vector<std::pair<int, int>>& slots);

/// Repeatedly contracts the pair minimising the resulting maximum red degree.
ContractionSequence greedy_sequence(const RelStructure& s);

/// Thrown by exact_twinwidth when the state budget runs out.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(int upper_bound, ContractionSequence witness)
      : Error("search budget exceeded; best known upper bound " + std::to_string(upper_bound)),
        upper_bound_(upper_bound),
        witness_(std::move(witness)) {}

  int upper_bound() const { return upper_bound_; }
  const ContractionSequence& witness() const { return witness_; }

 private:
  int upper_bound_;
  ContractionSequence witness_;
};

struct ExactOptions {
  std::optional<std::uint64_t> budget;  ///< max search states visited
  bool parallel = true;                 ///< OpenMP fan-out of the first level
};

struct ExactResult {
  int width = 0;
  ContractionSequence sequence;
  std::uint64_t states = 0;
  std::size_t memo_entries = 0;
};

ExactResult exact_twinwidth(const RelStructure& s, const ExactOptions& opt = {});

}  // namespace tww

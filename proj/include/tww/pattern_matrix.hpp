#pragma once

// Vertex-labelled complete "pattern" digraphs: every ordered pair carries a
// code. Both structure isomorphism and the memo of the exact twin-width search
// reduce to isomorphism of these.

#include <cstdint>
#include <optional>
#include <vector>

namespace tww::detail {

struct PatternMatrix {
  int n = 0;
  std::vector<std::uint64_t> label;  // per vertex
  std::vector<std::uint32_t> code;   // n*n, code[i*n+j]; diagonal ignored

  std::uint32_t at(int i, int j) const {
    return code[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(j)];
  }
};

/// Stable colour refinement. Colours are ranks of sorted signatures, so two
/// isomorphic matrices get identical colourings up to the isomorphism.
/// `invariant` receives a hash of the whole refinement history.
std::vector<int> refine_colors(const PatternMatrix& m, std::uint64_t* invariant = nullptr);

/// Isomorphism witness a -> b (vertex map), or nullopt.
std::optional<std::vector<int>> find_isomorphism(const PatternMatrix& a,
                                                 const std::vector<int>& colors_a,
                                                 const PatternMatrix& b,
                                                 const std::vector<int>& colors_b);

}  // namespace tww::detail

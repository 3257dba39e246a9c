#pragma once

// Lattice-point diagrams of the allowable sets S(H_{m/n}, L^p): a1 to the
// right, a2 downward, one shaded cone and labeled boundary ray per p, and
// optional derivative arrows (d/dz1 shifts left, d/dz2 shifts down).

#include <string>
#include <vector>

#include "hartogs/exact_index.hpp"

namespace hartogs {

struct DiagramSpec {
  GammaShape shape{1, 1};
  std::vector<Rational> p_list;
  int alpha1_extent = 6;  // a1 in [0, alpha1_extent]
  int alpha2_extent = 6;  // a2 in [-alpha2_extent, 2]
  std::vector<LatticeIndex> highlight;
  /// Throws PreconditionError unless 1 <= extents <= 64, p_list is
  /// nonempty and every p >= 1.
  void validate() const;
};

struct Arrow {
  LatticeIndex from;
  LatticeIndex to;
  std::string label;  // "d1" or "d2"
};
/// Arrows drawn at the highlighted indices; no d1 arrow when a1 = 0.
std::vector<Arrow> derivative_arrows(const DiagramSpec& spec);

/// SVG 1.1 text, byte-identical for identical specs.
std::string render_diagram_svg(const DiagramSpec& spec);

}  // namespace hartogs

#pragma once

#include <utility>
#include <vector>

#include "qsp/rootdata.hpp"
#include "qsp/symnc.hpp"

namespace qsp {

// Reduced expression of the translation t_{omega_i} in the full extended
// affine Weyl group of type A_N^(1): t_{omega_i} = pi^p s_{j_1} ... s_{j_L}.
// Computed by descent on the affine root lattice.
struct AffineWord {
  int autPow = 0;
  std::vector<int> letters;
};
AffineWord translationWord(const SatakeDiagram& d, int i);

// Lusztig's braid automorphism T_w = T_{pi^p} T_{j_1} ... T_{j_L} applied to
// a polynomial in the Drinfeld-double alphabet {E, F, K~, K~'}.
NCPoly lusztigApply(const SatakeDiagram& d, const AffineWord& w, const NCPoly& p);

// Single-generator images (exposed for tests).
NCPoly lusztigGenImage(const SatakeDiagram& d, int j, const Atom& a);

}  // namespace qsp

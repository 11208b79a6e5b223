#pragma once

#include "ptope/cubical.hpp"
#include "ptope/scalar.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ptope {

/// Integral homology of one grade: free rank plus the divisibility-ordered
/// torsion coefficients (each > 1).
struct GradeHomology {
  std::size_t cells = 0;
  long long betti = 0;
  std::vector<BigInt> torsion;
};

struct HomologyResult {
  std::vector<GradeHomology> grades;  // index = grade, 0..top

  long long euler_characteristic() const {
    long long chi = 0;
    int sign = 1;
    for (const auto& g : grades) {
      chi += sign * static_cast<long long>(g.cells);
      sign = -sign;
    }
    return chi;
  }
};

/// Betti numbers and torsion for every grade, from Smith normal forms of the
/// boundary matrices.
HomologyResult homology(const CubicalComplex& cx);

/// Result of the top-grade orientation search. When the complex is
/// orientable, signs[i] is the +1/-1 assignment of the i-th top cell in
/// canonical order; otherwise witness lists a cycle of top-cell indices
/// whose orientation constraints cannot all hold.
struct OrientResult {
  bool orientable = false;
  std::vector<int> signs;
  std::vector<std::size_t> witness;
};

/// Propagate induced orientations across shared (top-1)-faces. Every such
/// face may carry at most two raw incidence entries; a third makes the
/// complex non-manifold and throws.
OrientResult orient(const CubicalComplex& cx);

}  // namespace ptope

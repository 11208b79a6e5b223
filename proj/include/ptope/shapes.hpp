#pragma once

#include "ptope/cubical.hpp"

namespace ptope {

/// Filled unit square in the plane: one 2-cell plus its closure.
CubicalComplex solid_square();

/// Filled axis-aligned box of kx-by-ky unit squares with corner at origin.
CubicalComplex solid_rectangle(long long kx, long long ky);

/// The six facet squares of the unit 3-cube (a cellular 2-sphere).
CubicalComplex cube_boundary();

/// k1-by-k2 grid of squares with both axes periodic (a torus).
CubicalComplex torus(long long k1, long long k2);

/// Abstract band of k squares glued in a ring without a flip.
CubicalComplex cylinder_band(int k);

/// Abstract band of k squares glued in a ring with one flipped seam.
CubicalComplex moebius_band(int k);

/// Smallest cell structure with Klein-bottle homology: one vertex, two
/// loops, one 2-cell whose face list repeats a loop with equal signs.
CubicalComplex klein_minimal();

}  // namespace ptope

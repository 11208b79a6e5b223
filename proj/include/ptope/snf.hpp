#pragma once

#include "ptope/scalar.hpp"

#include <vector>

namespace ptope {

/// Nonzero invariant factors d1 | d2 | ... of an integer matrix, computed by
/// row/column reduction with minimal-absolute-value pivoting. Arbitrary
/// precision throughout, so intermediate growth cannot overflow.
std::vector<BigInt> smith_normal_form(std::vector<std::vector<BigInt>> m);

/// Convenience overload for machine-integer matrices.
std::vector<BigInt> smith_normal_form(const std::vector<std::vector<long long>>& m);

/// Rank over the integers (= number of nonzero invariant factors).
int integer_rank(const std::vector<std::vector<long long>>& m);

}  // namespace ptope

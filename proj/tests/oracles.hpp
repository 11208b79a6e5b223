#pragma once

// Independent reference computations for the test suite. Everything here is
// implemented from first principles, deliberately not via the library code
// under test.

#include "ptope/scalar.hpp"

#include <cstddef>
#include <vector>

namespace oracle {

/// Exact integer matrix rank by fraction-free (Bareiss) elimination.
inline int bareiss_rank(std::vector<std::vector<ptope::BigInt>> a) {
  using ptope::BigInt;
  if (a.empty() || a[0].empty()) return 0;
  const size_t rows = a.size();
  const size_t cols = a[0].size();
  BigInt prev = 1;
  size_t row = 0;
  int rank = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t pr = row;
    while (pr < rows && a[pr][col] == 0) ++pr;
    if (pr == rows) continue;
    std::swap(a[pr], a[row]);
    for (size_t r = row + 1; r < rows; ++r) {
      for (size_t c = col + 1; c < cols; ++c) {
        a[r][c] = (a[r][c] * a[row][col] - a[r][col] * a[row][c]) / prev;
      }
      a[r][col] = 0;
    }
    prev = a[row][col];
    ++row;
    ++rank;
  }
  return rank;
}

/// Determinant by cofactor expansion, exact, for small matrices.
inline ptope::Rational cofactor_determinant(
    const std::vector<std::vector<ptope::Rational>>& a) {
  const size_t m = a.size();
  if (m == 0) return ptope::Rational(1);
  if (m == 1) return a[0][0];
  ptope::Rational det(0);
  int sign = 1;
  for (size_t col = 0; col < m; ++col) {
    std::vector<std::vector<ptope::Rational>> minor;
    minor.reserve(m - 1);
    for (size_t r = 1; r < m; ++r) {
      std::vector<ptope::Rational> row;
      row.reserve(m - 1);
      for (size_t c = 0; c < m; ++c) {
        if (c != col) row.push_back(a[r][c]);
      }
      minor.push_back(std::move(row));
    }
    det += ptope::Rational(sign) * a[0][col] * cofactor_determinant(minor);
    sign = -sign;
  }
  return det;
}

}  // namespace oracle

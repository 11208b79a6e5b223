#include "ptope/snf.hpp"

#include <algorithm>
#include <cstddef>
#include <utility>

namespace ptope {

namespace {

using Matrix = std::vector<std::vector<BigInt>>;

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// Position of a nonzero entry of minimal magnitude in the trailing
// submatrix, or false when the submatrix is zero.
bool find_pivot(const Matrix& a, std::size_t t, std::size_t& pi, std::size_t& pj) {
  bool found = false;
  BigInt best;
  for (std::size_t i = t; i < a.size(); ++i) {
    for (std::size_t j = t; j < a[i].size(); ++j) {
      if (a[i][j] == 0) continue;
      const BigInt mag = abs_big(a[i][j]);
      if (!found || mag < best) {
        found = true;
        best = mag;
        pi = i;
        pj = j;
      }
    }
  }
  return found;
}

void swap_columns(Matrix& a, std::size_t c1, std::size_t c2) {
  if (c1 == c2) return;
  for (auto& row : a) std::swap(row[c1], row[c2]);
}

}  // namespace

std::vector<BigInt> smith_normal_form(Matrix a) {
  if (a.empty() || a[0].empty()) return {};
  const std::size_t rows = a.size();
  const std::size_t cols = a[0].size();

  std::vector<BigInt> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    std::size_t pi = t, pj = t;
    if (!find_pivot(a, t, pi, pj)) break;
    std::swap(a[pi], a[t]);
    swap_columns(a, pj, t);

    // Clear row and column t. Each nonzero remainder strictly shrinks the
    // pivot magnitude, so the loop terminates.
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0) continue;
        const BigInt q = a[r][t] / a[t][t];
        for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) {
          std::swap(a[r], a[t]);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a[t][c] == 0) continue;
        const BigInt q = a[t][c] / a[t][t];
        for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) {
          swap_columns(a, c, t);
          clean = false;
        }
      }
    }
    diag.push_back(abs_big(a[t][t]));
    ++t;
  }

  // Normalize the diagonal into a divisibility chain: replacing a bad pair
  // (d_i, d_j) by (gcd, lcm) is realizable by unimodular moves and keeps
  // the multiset of determinantal divisors.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      for (std::size_t j = i + 1; j < diag.size(); ++j) {
        if (diag[j] % diag[i] != 0) {
          const BigInt g = gcd(diag[i], diag[j]);
          diag[j] = diag[i] / g * diag[j];
          diag[i] = g;
          changed = true;
        }
      }
    }
  }
  std::sort(diag.begin(), diag.end());
  return diag;
}

std::vector<BigInt> smith_normal_form(const std::vector<std::vector<long long>>& m) {
  Matrix a(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    a[i].assign(m[i].begin(), m[i].end());
  }
  return smith_normal_form(std::move(a));
}

int integer_rank(const std::vector<std::vector<long long>>& m) {
  return static_cast<int>(smith_normal_form(m).size());
}

}  // namespace ptope

#pragma once

#include "ptope/scalar.hpp"
#include "ptope/signs.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ptope {

/// Sparse multivector of a fixed grade over R^n. Coefficients are indexed
/// by ascending basis subsets and stored in lexicographic order; exact
/// zeros are dropped on write.
template <class T>
class Multivector {
 public:
  Multivector(int n, int grade) : n_(n), grade_(grade) {
    if (n < 0) throw std::invalid_argument("dimension must be nonnegative");
    if (grade < 0 || grade > n) {
      throw std::invalid_argument("grade must lie in 0..dimension");
    }
  }

  static Multivector basis(int n, const SubsetKey& indices, T coeff = T(1)) {
    Multivector out(n, static_cast<int>(indices.size()));
    out.set_coefficient(indices, std::move(coeff));
    return out;
  }

  int dimension() const { return n_; }
  int grade() const { return grade_; }

  const std::map<SubsetKey, T>& coefficients() const { return coeffs_; }

  T coefficient(const SubsetKey& indices) const {
    check_key(indices);
    auto it = coeffs_.find(indices);
    return it == coeffs_.end() ? T(0) : it->second;
  }

  void set_coefficient(const SubsetKey& indices, T value) {
    check_key(indices);
    if (value == T(0)) {
      coeffs_.erase(indices);
    } else {
      coeffs_[indices] = std::move(value);
    }
  }

  void accumulate(const SubsetKey& indices, const T& value) {
    check_key(indices);
    auto [it, fresh] = coeffs_.try_emplace(indices, value);
    if (!fresh) {
      it->second += value;
      if (it->second == T(0)) coeffs_.erase(it);
    } else if (it->second == T(0)) {
      coeffs_.erase(it);
    }
  }

  bool is_zero() const { return coeffs_.empty(); }

  double max_abs() const {
    double best = 0.0;
    for (const auto& [key, v] : coeffs_) {
      best = std::max(best, abs_value(v));
    }
    return best;
  }

  double euclidean_norm() const {
    double sum = 0.0;
    for (const auto& [key, v] : coeffs_) {
      const double d = to_double(v);
      sum += d * d;
    }
    return std::sqrt(sum);
  }

  Multivector& operator+=(const Multivector& rhs) {
    require_compatible(rhs);
    for (const auto& [key, v] : rhs.coeffs_) accumulate(key, v);
    return *this;
  }

  Multivector& operator-=(const Multivector& rhs) {
    require_compatible(rhs);
    for (const auto& [key, v] : rhs.coeffs_) accumulate(key, T(-v));
    return *this;
  }

  Multivector& operator*=(const T& scalar) {
    if (scalar == T(0)) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [key, v] : coeffs_) v *= scalar;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) {
    a += b;
    return a;
  }
  friend Multivector operator-(Multivector a, const Multivector& b) {
    a -= b;
    return a;
  }
  friend Multivector operator*(Multivector a, const T& s) {
    a *= s;
    return a;
  }
  friend Multivector operator*(const T& s, Multivector a) {
    a *= s;
    return a;
  }
  Multivector operator-() const {
    Multivector out(n_, grade_);
    for (const auto& [key, v] : coeffs_) out.coeffs_.emplace(key, T(-v));
    return out;
  }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.n_ == b.n_ && a.grade_ == b.grade_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void check_key(const SubsetKey& indices) const {
    if (static_cast<int>(indices.size()) != grade_) {
      throw std::invalid_argument("basis subset size must equal the grade");
    }
    require_ordered_subset(indices, n_);
  }

  void require_compatible(const Multivector& rhs) const {
    if (rhs.n_ != n_ || rhs.grade_ != grade_) {
      throw std::invalid_argument("multivector dimensions or grades differ");
    }
  }

  int n_;
  int grade_;
  std::map<SubsetKey, T> coeffs_;
};

/// An ordered list of m vectors in R^n, the argument of the product maps.
template <class T>
struct VectorSystem {
  int n = 0;
  std::vector<std::vector<T>> vectors;

  VectorSystem(int dim, std::vector<std::vector<T>> vecs)
      : n(dim), vectors(std::move(vecs)) {
    if (n < 1) throw std::invalid_argument("ambient dimension must be >= 1");
    if (vectors.empty()) throw std::invalid_argument("vector system is empty");
    for (const auto& v : vectors) {
      if (static_cast<int>(v.size()) != n) {
        throw std::invalid_argument("vector length must equal the dimension");
      }
    }
  }

  int count() const { return static_cast<int>(vectors.size()); }
};

/// Gaussian elimination with partial pivoting. Exact when T divides
/// exactly; the pivot choice only matters for floating T.
template <class T>
T determinant(std::vector<std::vector<T>> a) {
  const size_t m = a.size();
  for (const auto& row : a) {
    if (row.size() != m) throw std::invalid_argument("determinant needs a square matrix");
  }
  T det(1);
  for (size_t col = 0; col < m; ++col) {
    size_t pivot = col;
    double best = abs_value(a[col][col]);
    for (size_t r = col + 1; r < m; ++r) {
      const double cand = abs_value(a[r][col]);
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (a[pivot][col] == T(0)) return T(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (size_t r = col + 1; r < m; ++r) {
      if (a[r][col] == T(0)) continue;
      const T factor = a[r][col] / a[col][col];
      for (size_t c = col; c < m; ++c) a[r][c] -= factor * a[col][c];
    }
  }
  return det;
}

/// Minor of the system over columns J (rows in system order).
template <class T>
T system_minor(const VectorSystem<T>& sys, const SubsetKey& columns) {
  std::vector<std::vector<T>> sub(sys.vectors.size());
  for (size_t r = 0; r < sys.vectors.size(); ++r) {
    sub[r].reserve(columns.size());
    for (int c : columns) sub[r].push_back(sys.vectors[r][static_cast<size_t>(c) - 1]);
  }
  return determinant(std::move(sub));
}

/// Exterior product of the system's vectors: coefficient at J is the minor
/// over columns J.
template <class T>
Multivector<T> wedge(const VectorSystem<T>& sys) {
  const int m = sys.count();
  if (m > sys.n) {
    throw std::invalid_argument("wedge of more vectors than the dimension");
  }
  Multivector<T> out(sys.n, m);
  for (const auto& cols : ascending_subsets(sys.n, m)) {
    out.set_coefficient(cols, system_minor(sys, cols));
  }
  return out;
}

/// Duality map: coefficient at the complement of J picks up the sign of
/// the (J, complement) shuffle.
template <class T>
Multivector<T> hodge_star(const Multivector<T>& x) {
  const int n = x.dimension();
  Multivector<T> out(n, n - x.grade());
  for (const auto& [key, v] : x.coefficients()) {
    out.set_coefficient(subset_complement(n, key),
                        split_sign(n, key).apply(v));
  }
  return out;
}

/// Generalized cross product of m <= n vectors: the coefficient at the
/// complement of J is the signed minor over columns J. Computed straight
/// from that formula; agreeing with hodge_star(wedge(sys)) is a tested
/// identity, not the definition used here.
template <class T>
Multivector<T> cross(const VectorSystem<T>& sys) {
  const int m = sys.count();
  if (m > sys.n) {
    throw std::invalid_argument("cross of more vectors than the dimension");
  }
  Multivector<T> out(sys.n, sys.n - m);
  for (const auto& cols : ascending_subsets(sys.n, m)) {
    out.set_coefficient(subset_complement(sys.n, cols),
                        split_sign(sys.n, cols).apply(system_minor(sys, cols)));
  }
  return out;
}

/// Coefficientwise inner product of equal-grade multivectors.
template <class T>
T inner(const Multivector<T>& a, const Multivector<T>& b) {
  if (a.dimension() != b.dimension() || a.grade() != b.grade()) {
    throw std::invalid_argument("inner product needs matching dimension and grade");
  }
  T sum(0);
  const auto& bit = b.coefficients();
  for (const auto& [key, v] : a.coefficients()) {
    auto it = bit.find(key);
    if (it != bit.end()) sum += v * it->second;
  }
  return sum;
}

/// Grade-lowering homomorphism: each index leaves from the back of the
/// ordered subset, contributing its deletion sign.
template <class T>
Multivector<T> lower_boundary(const Multivector<T>& x) {
  if (x.grade() == 0) {
    throw std::invalid_argument("lower boundary of a grade-0 multivector");
  }
  Multivector<T> out(x.dimension(), x.grade() - 1);
  for (const auto& [key, v] : x.coefficients()) {
    for (int j : key) {
      out.accumulate(subset_erase(key, j), deletion_sign(key, j).apply(v));
    }
  }
  return out;
}

/// Grade-raising homomorphism: each absent index joins at the back of the
/// ordered subset, contributing its insertion sign.
template <class T>
Multivector<T> raise_boundary(const Multivector<T>& x) {
  if (x.grade() == x.dimension()) {
    throw std::invalid_argument("raise boundary of a top-grade multivector");
  }
  const int n = x.dimension();
  Multivector<T> out(n, x.grade() + 1);
  for (const auto& [key, v] : x.coefficients()) {
    for (int k : subset_complement(n, key)) {
      out.accumulate(subset_insert(key, k), insertion_sign(key, k).apply(v));
    }
  }
  return out;
}

/// Gram matrix of pairwise dot products.
template <class T>
std::vector<std::vector<T>> gram_matrix(const VectorSystem<T>& sys) {
  const size_t m = sys.vectors.size();
  std::vector<std::vector<T>> g(m, std::vector<T>(m, T(0)));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i; j < m; ++j) {
      T dot(0);
      for (int c = 0; c < sys.n; ++c) {
        dot += sys.vectors[i][static_cast<size_t>(c)] *
               sys.vectors[j][static_cast<size_t>(c)];
      }
      g[i][j] = dot;
      g[j][i] = dot;
    }
  }
  return g;
}

/// Unsigned m-volume of the spanned parallelepiped, the square root of the
/// Gram determinant.
template <class T>
double gram_volume(const VectorSystem<T>& sys) {
  const T det = determinant(gram_matrix(sys));
  const double d = to_double(det);
  return d <= 0.0 ? 0.0 : std::sqrt(d);
}

/// Exact dependence test: the wedge vanishes identically.
inline bool is_dependent(const VectorSystem<Rational>& sys) {
  if (sys.count() > sys.n) return true;
  return wedge(sys).is_zero();
}

/// Floating dependence test: every wedge coefficient is below a scale-aware
/// threshold rel_tol * (max entry)^m.
inline bool is_dependent(const VectorSystem<double>& sys, double rel_tol = 1e-12) {
  if (sys.count() > sys.n) return true;
  double scale = 0.0;
  for (const auto& v : sys.vectors) {
    for (double x : v) scale = std::max(scale, std::fabs(x));
  }
  const double threshold = rel_tol * std::pow(scale, sys.count());
  return wedge(sys).max_abs() <= threshold;
}

}  // namespace ptope

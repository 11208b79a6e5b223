#pragma once

#include <stdexcept>
#include <vector>

namespace ptope {

/// Orientation sign, a two-valued group {+1,-1}. Kept distinct from int so
/// that orientations cannot silently take part in index arithmetic.
class Sign {
 public:
  constexpr Sign() = default;
  static constexpr Sign plus() { return Sign(false); }
  static constexpr Sign minus() { return Sign(true); }
  /// Sign of a permutation with the given number of inversions (or swaps).
  static constexpr Sign from_parity(long long inversions) {
    return Sign((inversions & 1LL) != 0);
  }

  constexpr int value() const { return negative_ ? -1 : 1; }
  constexpr bool is_negative() const { return negative_; }

  template <class T>
  T apply(const T& x) const {
    return negative_ ? T(-x) : x;
  }

  friend constexpr Sign operator*(Sign a, Sign b) {
    return Sign(a.negative_ != b.negative_);
  }
  constexpr Sign operator-() const { return Sign(!negative_); }
  friend constexpr bool operator==(Sign a, Sign b) = default;

 private:
  explicit constexpr Sign(bool negative) : negative_(negative) {}
  bool negative_ = false;
};

/// A permutation of {1..m} given by its image sequence.
struct Permutation {
  std::vector<int> image;

  explicit Permutation(std::vector<int> img);
  int size() const { return static_cast<int>(image.size()); }
};

/// Composition p∘q, mapping i -> p[q[i]].
Permutation compose(const Permutation& p, const Permutation& q);

/// Parity sign (-1)^{inversions}. Inversion counting is the reference
/// definition; the closed-form subset signs below are checked against it
/// in the test suite.
Sign perm_sign(const Permutation& p);

/// Ordered index subset: strictly increasing 1-based indices drawn from
/// {1..n}. The bare key type used throughout the sparse containers.
using SubsetKey = std::vector<int>;

/// An ordered subset together with its ground-set size.
struct IndexSubset {
  int ground = 0;
  SubsetKey indices;

  IndexSubset(int n, SubsetKey idx);
};

bool is_ordered_subset(const SubsetKey& indices, int n);
void require_ordered_subset(const SubsetKey& indices, int n);

/// Ascending complement {1..n} \ J.
SubsetKey subset_complement(int n, const SubsetKey& indices);

/// 1-based position of j in J, or 0 when absent.
int subset_position(const SubsetKey& indices, int j);

bool subset_contains(const SubsetKey& indices, int j);

/// J \ {j}; j must be present.
SubsetKey subset_erase(const SubsetKey& indices, int j);

/// J ∪ {k} in ascending order; k must be absent.
SubsetKey subset_insert(const SubsetKey& indices, int k);

/// All ascending m-subsets of {1..n} in lexicographic order.
std::vector<SubsetKey> ascending_subsets(int n, int m);

/// Sign of the removal permutation (i_1..i_m) -> (i_1..î_j..i_m, i_j):
/// the chosen element moves to the back, the rest stay ordered.
/// Equals (-1)^{m - position(j)}.
Sign deletion_sign(const SubsetKey& indices, int j);

/// Sign of sorting the concatenation (J, k) back into ascending order.
/// Equals (-1)^{#{i in J : i > k}}.
Sign insertion_sign(const SubsetKey& indices, int k);

/// Sign of the removal permutation pulling j to the front instead of the
/// back: (-1)^{position(j) - 1}.
Sign front_deletion_sign(const SubsetKey& indices, int j);

/// Sign of sorting (k, J): (-1)^{#{i in J : i < k}}. This is the sign that
/// appears when a fresh differential lands in front of an ordered basis
/// form.
Sign front_insertion_sign(const SubsetKey& indices, int k);

/// Sign of the permutation of {1..n} whose image lists J ascending followed
/// by its complement ascending.
Sign split_sign(int n, const SubsetKey& indices);

}  // namespace ptope

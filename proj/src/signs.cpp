#include "ptope/signs.hpp"

#include <algorithm>
#include <string>

namespace ptope {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

}  // namespace

Permutation::Permutation(std::vector<int> img) : image(std::move(img)) {
  const int m = static_cast<int>(image.size());
  std::vector<char> seen(static_cast<size_t>(m) + 1, 0);
  for (int v : image) {
    if (v < 1 || v > m) fail("permutation image value out of range");
    if (seen[static_cast<size_t>(v)]) fail("permutation image value repeated");
    seen[static_cast<size_t>(v)] = 1;
  }
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) fail("permutation sizes differ");
  std::vector<int> out(q.image.size());
  for (size_t i = 0; i < q.image.size(); ++i) {
    out[i] = p.image[static_cast<size_t>(q.image[i]) - 1];
  }
  return Permutation(std::move(out));
}

Sign perm_sign(const Permutation& p) {
  long long inversions = 0;
  const auto& a = p.image;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = i + 1; j < a.size(); ++j) {
      if (a[i] > a[j]) ++inversions;
    }
  }
  return Sign::from_parity(inversions);
}

IndexSubset::IndexSubset(int n, SubsetKey idx) : ground(n), indices(std::move(idx)) {
  if (n < 0) fail("ground set size must be nonnegative");
  require_ordered_subset(indices, n);
}

bool is_ordered_subset(const SubsetKey& indices, int n) {
  int prev = 0;
  for (int v : indices) {
    if (v <= prev || v > n) return false;
    prev = v;
  }
  return true;
}

void require_ordered_subset(const SubsetKey& indices, int n) {
  if (!is_ordered_subset(indices, n)) {
    fail("indices must be strictly increasing within 1..n");
  }
}

SubsetKey subset_complement(int n, const SubsetKey& indices) {
  require_ordered_subset(indices, n);
  SubsetKey out;
  out.reserve(static_cast<size_t>(n) - indices.size());
  size_t at = 0;
  for (int v = 1; v <= n; ++v) {
    if (at < indices.size() && indices[at] == v) {
      ++at;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

int subset_position(const SubsetKey& indices, int j) {
  auto it = std::lower_bound(indices.begin(), indices.end(), j);
  if (it == indices.end() || *it != j) return 0;
  return static_cast<int>(it - indices.begin()) + 1;
}

bool subset_contains(const SubsetKey& indices, int j) {
  return subset_position(indices, j) != 0;
}

SubsetKey subset_erase(const SubsetKey& indices, int j) {
  const int pos = subset_position(indices, j);
  if (pos == 0) fail("index not present in subset");
  SubsetKey out = indices;
  out.erase(out.begin() + (pos - 1));
  return out;
}

SubsetKey subset_insert(const SubsetKey& indices, int k) {
  if (subset_contains(indices, k)) fail("index already present in subset");
  if (k < 1) fail("index must be positive");
  SubsetKey out = indices;
  out.insert(std::upper_bound(out.begin(), out.end(), k), k);
  return out;
}

std::vector<SubsetKey> ascending_subsets(int n, int m) {
  if (m < 0 || n < 0) fail("subset enumeration needs nonnegative sizes");
  std::vector<SubsetKey> out;
  if (m > n) return out;
  SubsetKey cur(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) cur[static_cast<size_t>(i)] = i + 1;
  while (true) {
    out.push_back(cur);
    // Advance the rightmost index that still has room, reset the tail.
    int i = m - 1;
    while (i >= 0 && cur[static_cast<size_t>(i)] == n - (m - 1 - i)) --i;
    if (i < 0) break;
    ++cur[static_cast<size_t>(i)];
    for (int t = i + 1; t < m; ++t) {
      cur[static_cast<size_t>(t)] = cur[static_cast<size_t>(t - 1)] + 1;
    }
  }
  return out;
}

Sign deletion_sign(const SubsetKey& indices, int j) {
  const int pos = subset_position(indices, j);
  if (pos == 0) fail("deletion_sign: index not in subset");
  const int m = static_cast<int>(indices.size());
  return Sign::from_parity(m - pos);
}

Sign insertion_sign(const SubsetKey& indices, int k) {
  if (subset_contains(indices, k)) fail("insertion_sign: index already in subset");
  long long greater = 0;
  for (int v : indices) {
    if (v > k) ++greater;
  }
  return Sign::from_parity(greater);
}

Sign front_deletion_sign(const SubsetKey& indices, int j) {
  const int pos = subset_position(indices, j);
  if (pos == 0) fail("front_deletion_sign: index not in subset");
  return Sign::from_parity(pos - 1);
}

Sign front_insertion_sign(const SubsetKey& indices, int k) {
  if (subset_contains(indices, k)) {
    fail("front_insertion_sign: index already in subset");
  }
  long long smaller = 0;
  for (int v : indices) {
    if (v < k) ++smaller;
  }
  return Sign::from_parity(smaller);
}

Sign split_sign(int n, const SubsetKey& indices) {
  require_ordered_subset(indices, n);
  // Inversions of (J, complement): element j_t passes the j_t - t smaller
  // complement members sitting before their sorted place.
  long long total = 0;
  for (size_t t = 0; t < indices.size(); ++t) {
    total += indices[t] - static_cast<int>(t + 1);
  }
  return Sign::from_parity(total);
}

}  // namespace ptope

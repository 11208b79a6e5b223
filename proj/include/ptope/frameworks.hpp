#pragma once

#include "ptope/cubical.hpp"

#include <set>
#include <string>
#include <vector>

namespace ptope {

/// Ordered list of positive parts summing to n.
struct Composition {
  std::vector<int> parts;

  explicit Composition(std::vector<int> p);
  int total() const;
  int count() const { return static_cast<int>(parts.size()); }
};

/// All compositions of n in lexicographic order (first part varies slowest).
std::vector<Composition> all_compositions(int n);

struct FrameworkEdge {
  int u = 0;
  int v = 0;
  int cls = 0;
};

/// Multigraph with edges labelled by classes 1..n. A valid framework has no
/// loops and exactly one incident edge of every class at every vertex.
struct FrameworkGraph {
  int n = 0;
  std::set<int> vertices;
  std::vector<FrameworkEdge> edges;
};

struct FrameworkDiagnostics {
  std::vector<std::string> problems;
  bool valid() const { return problems.empty(); }
};

/// The m-cube corner graph of a composition, with the i-th direction's edges
/// multiplied into the i-th block of classes.
FrameworkGraph elementary_graph(const Composition& c);

FrameworkDiagnostics validate_framework(const FrameworkGraph& g);

/// Formal sum of elementary frameworks with the single-part framework as
/// the identity. Terms are kept canonical: parts sorted descending, no
/// single-part term, term list sorted.
struct FrameworkSum {
  int n = 0;
  std::vector<std::vector<int>> terms;

  friend bool operator==(const FrameworkSum& a, const FrameworkSum& b) = default;
};

/// Canonicalize a list of compositions of n into a sum.
FrameworkSum make_sum(int n, const std::vector<Composition>& terms);

/// Multiset union of terms; single-part terms are absorbed.
FrameworkSum connected_sum(const FrameworkSum& a, const FrameworkSum& b);

/// Realize the sum as a graph by splicing the elementary graphs one vertex
/// at a time: the lexicographically smallest vertex of each side is removed
/// and the dangling class-c edge ends are rejoined pairwise.
FrameworkGraph sum_graph(const FrameworkSum& a);

/// True when no term contains a part equal to 1; the empty sum is the
/// n-sphere, trivial for n >= 2.
bool pi1_trivial(const FrameworkSum& a);

/// Cell structure of the product of spheres named by the composition: one
/// point cell and one top cell per factor, all boundary maps zero.
CubicalComplex surface_complex(const Composition& c);

}  // namespace ptope

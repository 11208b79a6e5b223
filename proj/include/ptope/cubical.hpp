#pragma once

#include "ptope/signs.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace ptope {

/// Axis-aligned lattice cell: an integer base vertex plus the set of spanned
/// coordinate directions. Grade = number of spanned axes.
struct Cube {
  std::vector<long long> base;
  SubsetKey axes;

  int grade() const { return static_cast<int>(axes.size()); }

  friend bool operator==(const Cube& a, const Cube& b) = default;
  friend bool operator<(const Cube& a, const Cube& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.axes < b.axes;
  }
};

struct SignedCube {
  Sign sign;
  Cube cube;
};

/// The 2m signed facets of a cube: for the spanned axis j, the lower facet
/// keeps the base and drops j with the deletion sign, the upper facet shifts
/// the base one step along j and takes the opposite sign.
std::vector<SignedCube> faces(const Cube& c);

/// Formal integer combination of same-grade cells, keyed by the canonical
/// cell index within a complex.
struct IntegerChain {
  int grade = 0;
  std::map<std::size_t, long long> terms;

  bool is_zero() const { return terms.empty(); }
};

/// Validation report. Collects problems instead of throwing so callers can
/// present all of them at once.
struct Diagnostics {
  std::vector<std::string> duplicate_cells;
  std::vector<std::string> dangling_references;
  std::vector<std::string> overfull_faces;
  bool boundary_squares_to_zero = true;
  bool top_connected = true;

  bool ok() const {
    return duplicate_cells.empty() && dangling_references.empty() &&
           overfull_faces.empty() && boundary_squares_to_zero;
  }
};

/// A cell complex in one of two modes. Embedded: cells are lattice cubes in
/// Z^n with optional per-axis periods, and the cell set is the downward
/// closure of the listed generators. Abstract: cells are named, graded, and
/// carry explicit signed face lists; nothing is derived.
class CubicalComplex {
 public:
  /// One raw signed incidence entry: (sign value, face index in grade-1).
  using Slot = std::pair<int, std::size_t>;

  static CubicalComplex embedded(int n, std::vector<long long> moduli,
                                 std::vector<Cube> generators);

  struct AbstractCell {
    int grade = 0;
    std::string id;
    std::vector<std::pair<int, std::string>> faces;  // raw signed face refs
  };
  static CubicalComplex abstract(std::vector<AbstractCell> cells);

  bool is_embedded() const { return embedded_; }
  int dimension() const { return n_; }
  int top_grade() const { return top_grade_; }
  const std::vector<long long>& moduli() const { return moduli_; }
  const std::vector<Cube>& generators() const { return generators_; }
  const std::vector<AbstractCell>& abstract_cells() const { return abstract_cells_; }

  std::size_t cell_count(int grade) const;
  std::size_t total_cells() const;

  /// Canonical cell order: embedded cells sorted by (base, axes) within each
  /// grade; abstract cells in declaration order within each grade.
  std::string cell_label(int grade, std::size_t index) const;

  /// Embedded only: the canonical index of a cube, reducing periodic bases.
  std::size_t cell_index(const Cube& c) const;
  /// Embedded only: the cube at a canonical index.
  const Cube& cell_at(int grade, std::size_t index) const;
  /// Abstract only: index of a declared cell id.
  std::size_t cell_index(const std::string& id) const;

  /// Reduce a base point along periodic axes.
  Cube reduced(Cube c) const;

  /// Raw signed incidence entries of every grade-k cell, in canonical cell
  /// order. Embedded entries come from the face map with periodic reduction
  /// applied; abstract entries are the declared lists verbatim (repeats are
  /// kept, not merged).
  const std::vector<std::vector<Slot>>& incidence(int grade) const;

  IntegerChain boundary_chain(const IntegerChain& chain) const;

  /// Chain construction helpers.
  IntegerChain chain(const std::vector<std::pair<long long, Cube>>& terms) const;
  IntegerChain chain_ids(int grade,
                         const std::vector<std::pair<long long, std::string>>& terms) const;

  Diagnostics validate() const;

 private:
  CubicalComplex() = default;
  void build_embedded_closure();
  void build_abstract_tables();
  void require_grade(int grade) const;

  bool embedded_ = true;
  int n_ = 0;
  int top_grade_ = 0;
  std::vector<long long> moduli_;
  std::vector<Cube> generators_;
  std::vector<AbstractCell> abstract_cells_;

  // Per grade: canonical cells and their raw incidence slots.
  std::vector<std::vector<Cube>> cells_;
  std::vector<std::map<Cube, std::size_t>> index_;
  std::vector<std::vector<std::size_t>> abstract_by_grade_;  // grade -> declaration indices
  std::map<std::string, std::size_t> abstract_index_;        // id -> declaration index
  std::vector<std::vector<std::vector<Slot>>> slots_;
  std::vector<std::string> dangling_;
};

/// Incidence matrix of the grade-k boundary map: rows are (k-1)-cells,
/// columns are k-cells, both in canonical order. k = 0 gives a 0-row matrix.
std::vector<std::vector<long long>> boundary_matrix(const CubicalComplex& cx, int k);

/// Split every cell of an embedded complex in two along one axis; cells not
/// spanning the axis are carried across, coordinates and the axis period are
/// doubled.
CubicalComplex subdivide(const CubicalComplex& cx, int axis);

}  // namespace ptope

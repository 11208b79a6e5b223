#pragma once

#include "ptope/exec.hpp"
#include "ptope/forms.hpp"

#include <cstddef>
#include <vector>

namespace ptope {

/// Regular lattice metadata shared by the sampled fields. Spacing is one
/// scalar for all axes; extents must leave at least one interior node.
struct GridSpec {
  int n = 0;
  std::vector<double> origin;
  double h = 0.0;
  std::vector<int> extents;

  GridSpec(int dim, std::vector<double> org, double spacing, std::vector<int> ext);

  std::size_t size() const;
  std::size_t flat(const std::vector<int>& idx) const;
  std::vector<int> unflat(std::size_t f) const;
  Point coords(const std::vector<int>& idx) const;
  bool interior(const std::vector<int>& idx) const;

  friend bool operator==(const GridSpec& a, const GridSpec& b) = default;
};

/// Scalar samples phi(x) in row-major order, first axis slowest.
struct ScalarGridField {
  GridSpec grid;
  std::vector<double> values;

  ScalarGridField(GridSpec g, std::vector<double> v);

  template <class F>
  static ScalarGridField sampled(GridSpec g, F&& fn) {
    std::vector<double> v(g.size());
    for (std::size_t f = 0; f < v.size(); ++f) v[f] = fn(g.coords(g.unflat(f)));
    return ScalarGridField(std::move(g), std::move(v));
  }
};

/// Covector samples a_j(x): one row-major value array per axis.
struct CovectorGridField {
  GridSpec grid;
  std::vector<std::vector<double>> components;

  CovectorGridField(GridSpec g, std::vector<std::vector<double>> comps);

  template <class F>
  static CovectorGridField sampled(GridSpec g, F&& fn) {
    std::vector<std::vector<double>> comps(g.n, std::vector<double>(g.size()));
    for (std::size_t f = 0; f < g.size(); ++f) {
      std::vector<double> v = fn(g.coords(g.unflat(f)));
      for (int j = 0; j < g.n; ++j) comps[j][f] = v[j];
    }
    return CovectorGridField(std::move(g), std::move(comps));
  }
};

/// A residual max-norm together with the sample index where it occurs.
/// The node is empty when nothing was scanned.
struct ResidualReport {
  double value = 0.0;
  std::vector<int> node;
};

/// Nodewise derivative of phi: central differences on interior nodes,
/// one-sided at the boundary.
CovectorGridField gradient_field(const ScalarGridField& phi);

/// max over interior nodes and pairs i<j of |d_i a_j - d_j a_i|.
ResidualReport closedness_residual(const CovectorGridField& a, Exec exec = Exec::serial);

/// max over interior nodes of |sum_j d_j a_j|.
ResidualReport divergence_residual(const CovectorGridField& a, Exec exec = Exec::serial);

/// max over interior nodes and triples i<j<k of the a wedge da coefficient;
/// identically zero below three dimensions.
ResidualReport holonomy_residual(const CovectorGridField& a, Exec exec = Exec::serial);

struct LaplacianResult {
  ScalarGridField field;  // stencil values on interior nodes, 0 on the boundary
  ResidualReport report;
};

/// (2n+1)-point Laplacian stencil per interior node plus its max-norm.
LaplacianResult laplacian_residual(const ScalarGridField& phi, Exec exec = Exec::serial);

struct UnitFieldResult {
  CovectorGridField field;
  std::vector<std::size_t> excluded;  // flat nodes where |grad phi| < eps
};

/// Nodewise normalized gradient; degenerate nodes are zeroed and listed.
UnitFieldResult unit_field(const ScalarGridField& phi, double eps = 1e-8);

struct CurvatureResult {
  ScalarGridField field;  // H on usable interior nodes, 0 elsewhere
  std::vector<std::size_t> excluded;
};

/// H = -(1/n) * divergence of the unit gradient field. Interior nodes whose
/// stencil touches a degenerate-gradient node are excluded.
CurvatureResult mean_curvature(const ScalarGridField& phi, double eps = 1e-8);

/// sum over pieces of <hodge_star(unit normal at the piece anchor), wedge of
/// the piece edges>, the discrete level-set area. Normals come from the
/// multilinearly interpolated gradient of phi.
double level_set_area(const ScalarGridField& phi, const IntegralSurface& s,
                      double eps = 1e-8, Exec exec = Exec::serial);

}  // namespace ptope

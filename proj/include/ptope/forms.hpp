#pragma once

#include "ptope/cubical.hpp"
#include "ptope/exec.hpp"
#include "ptope/multivector.hpp"

#include <functional>
#include <vector>

namespace ptope {

using Point = std::vector<double>;

/// Field of differential m-forms a(x) = sum over ascending J of a_J(x) dx^J.
/// The coefficient callback must accept every ascending size-m subset and
/// be safe to call concurrently.
struct FormField {
  int n = 0;
  int m = 0;
  std::function<double(const Point&, const SubsetKey&)> coeff;

  FormField(int dim, int grade,
            std::function<double(const Point&, const SubsetKey&)> c);
};

/// A vector field b(x), used on the small-vector side of the interior
/// product.
using VectorField = std::function<std::vector<double>(const Point&)>;

/// Oriented parallelepiped with an anchor point and m independent edges.
struct SmallParallelepiped {
  Point anchor;
  VectorSystem<double> edges;

  SmallParallelepiped(Point x0, VectorSystem<double> e);
  int dimension() const { return edges.n; }
  int grade() const { return edges.count(); }
};

/// A surface given piecewise by parallelepipeds of one common grade.
struct IntegralSurface {
  int n = 0;
  int m = 0;
  std::vector<SmallParallelepiped> pieces;

  IntegralSurface(int dim, int grade, std::vector<SmallParallelepiped> ps = {});
  void add(SmallParallelepiped p);
};

/// sum over J of a_J(x) * w_J for a grade-m multivector w.
double contract(const FormField& a, const Point& x, const Multivector<double>& w);

/// Central-difference exterior derivative: the coefficient table of da at x,
/// keyed by ascending (m+1)-subsets.
Multivector<double> exterior_derivative(const FormField& a, const Point& x, double h);

/// Coefficient table of the interior product <a(x), b(x)>, grade m-1.
Multivector<double> interior_product(const FormField& a, const VectorField& b,
                                     const Point& x);

/// Coefficient table of a(x) wedge b(x) for a grade-1 field b, grade m+1.
Multivector<double> wedge_1form(const FormField& a, const FormField& b, const Point& x);

/// Residual |<da(x), D> - <a(x+dx)-a(x), lower boundary of D>| where D is
/// the wedge of the m+1 offset vectors. Exact zero for affine coefficients.
double prop5_residual(const FormField& a, const Point& x,
                      const VectorSystem<double>& deltas, double fd_step = 0.0);

/// sum over pieces of <a(anchor), wedge(edges)>, folded in piece order.
double integrate_surface(const FormField& a, const IntegralSurface& s,
                         Exec exec = Exec::serial);

/// sum over pieces of cross(edges): a grade-(n-m) multivector.
Multivector<double> vector_volume(const IntegralSurface& s);

/// sum over pieces of the Gram volume of the edges.
double linear_volume(const IntegralSurface& s);

enum class StokesMode {
  discrete,    // face-difference decomposition of the interior sum; telescopes
  analytic_fd  // finite-difference exterior derivative per cell
};

enum class AnchorRule {
  lower_corner,  // evaluate coefficients at the cell's base vertex
  midpoint       // evaluate at the cell's center
};

struct StokesResult {
  double interior = 0.0;
  double boundary = 0.0;
  double difference = 0.0;  // interior - boundary
};

/// Integrate da over the oriented top cells of an embedded complex scaled
/// by h and a over its boundary chain. Throws domain_error when the region
/// cannot be coherently oriented.
StokesResult stokes_check(const FormField& a, const CubicalComplex& region, double h,
                          StokesMode mode = StokesMode::discrete, double fd_step = 0.0,
                          AnchorRule anchor = AnchorRule::lower_corner,
                          Exec exec = Exec::serial);

}  // namespace ptope

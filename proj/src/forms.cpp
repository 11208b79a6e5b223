#include "ptope/forms.hpp"

#include "ptope/errors.hpp"
#include "ptope/homology.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ptope {

FormField::FormField(int dim, int grade,
                     std::function<double(const Point&, const SubsetKey&)> c)
    : n(dim), m(grade), coeff(std::move(c)) {
  if (n < 1) throw std::invalid_argument("form dimension must be >= 1");
  if (m < 0 || m > n) throw std::invalid_argument("form grade must lie in 0..n");
  if (!coeff) throw std::invalid_argument("form needs a coefficient function");
}

SmallParallelepiped::SmallParallelepiped(Point x0, VectorSystem<double> e)
    : anchor(std::move(x0)), edges(std::move(e)) {
  if (static_cast<int>(anchor.size()) != edges.n) {
    throw std::invalid_argument("anchor length must equal the dimension");
  }
  if (!(gram_volume(edges) > 0.0)) {
    throw DegeneracyError("parallelepiped edges are dependent");
  }
}

IntegralSurface::IntegralSurface(int dim, int grade, std::vector<SmallParallelepiped> ps)
    : n(dim), m(grade) {
  if (n < 1) throw std::invalid_argument("surface dimension must be >= 1");
  if (m < 1 || m > n) throw std::invalid_argument("surface grade must lie in 1..n");
  for (auto& p : ps) add(std::move(p));
}

void IntegralSurface::add(SmallParallelepiped p) {
  if (p.dimension() != n || p.grade() != m) {
    throw std::invalid_argument("piece dimension or grade does not match the surface");
  }
  pieces.push_back(std::move(p));
}

double contract(const FormField& a, const Point& x, const Multivector<double>& w) {
  if (w.dimension() != a.n || w.grade() != a.m) {
    throw std::invalid_argument("contract needs matching dimension and grade");
  }
  double acc = 0.0;
  for (const auto& [key, value] : w.coefficients()) {
    acc += a.coeff(x, key) * value;
  }
  return acc;
}

Multivector<double> exterior_derivative(const FormField& a, const Point& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("derivative step must be positive");
  if (static_cast<int>(x.size()) != a.n) {
    throw std::invalid_argument("point length must equal the dimension");
  }
  Multivector<double> out(a.n, a.m + 1);
  Point hi = x, lo = x;
  for (const auto& key : ascending_subsets(a.n, a.m + 1)) {
    double acc = 0.0;
    for (int i : key) {
      SubsetKey rest = subset_erase(key, i);
      hi[i - 1] = x[i - 1] + h;
      lo[i - 1] = x[i - 1] - h;
      double slope = (a.coeff(hi, rest) - a.coeff(lo, rest)) / (2.0 * h);
      hi[i - 1] = x[i - 1];
      lo[i - 1] = x[i - 1];
      acc += front_deletion_sign(key, i).apply(slope);
    }
    out.set_coefficient(key, acc);
  }
  return out;
}

Multivector<double> interior_product(const FormField& a, const VectorField& b,
                                     const Point& x) {
  if (a.m < 1) throw std::invalid_argument("interior product needs grade >= 1");
  std::vector<double> bv = b(x);
  if (static_cast<int>(bv.size()) != a.n) {
    throw std::invalid_argument("vector field value must have the form's dimension");
  }
  Multivector<double> out(a.n, a.m - 1);
  for (const auto& key : ascending_subsets(a.n, a.m)) {
    double aj = a.coeff(x, key);
    if (aj == 0.0) continue;
    for (int i : key) {
      out.accumulate(subset_erase(key, i),
                     deletion_sign(key, i).apply(bv[i - 1] * aj));
    }
  }
  return out;
}

Multivector<double> wedge_1form(const FormField& a, const FormField& b, const Point& x) {
  if (b.m != 1) throw std::invalid_argument("second factor must be a 1-form");
  if (a.n != b.n) throw std::invalid_argument("factors need a common dimension");
  if (a.m == a.n) {
    throw std::invalid_argument("wedge would exceed the ambient dimension");
  }
  Multivector<double> out(a.n, a.m + 1);
  for (const auto& key : ascending_subsets(a.n, a.m)) {
    double aj = a.coeff(x, key);
    if (aj == 0.0) continue;
    for (int i = 1; i <= a.n; ++i) {
      if (subset_contains(key, i)) continue;
      out.accumulate(subset_insert(key, i),
                     insertion_sign(key, i).apply(b.coeff(x, {i}) * aj));
    }
  }
  return out;
}

double prop5_residual(const FormField& a, const Point& x,
                      const VectorSystem<double>& deltas, double fd_step) {
  const int k = a.m + 1;
  if (deltas.n != a.n || deltas.count() != k) {
    throw std::invalid_argument("need m+1 offset vectors of the form's dimension");
  }
  if (static_cast<int>(x.size()) != a.n) {
    throw std::invalid_argument("point length must equal the dimension");
  }
  Multivector<double> full = wedge(deltas);
  if (full.is_zero()) throw DegeneracyError("offset vectors span a degenerate volume");

  if (!(fd_step > 0.0)) {
    double scale = 1.0;
    for (double c : x) scale = std::max(scale, std::abs(c));
    fd_step = 1e-5 * scale;
  }
  double lhs = inner(exterior_derivative(a, x, fd_step), full);

  double rhs = 0.0;
  for (int j = 1; j <= k; ++j) {
    Multivector<double> w(a.n, a.m);
    if (a.m == 0) {
      w = Multivector<double>::basis(a.n, {}, 1.0);
    } else {
      std::vector<std::vector<double>> rest;
      for (int t = 0; t < k; ++t) {
        if (t != j - 1) rest.push_back(deltas.vectors[t]);
      }
      w = wedge(VectorSystem<double>(a.n, std::move(rest)));
    }
    Point shifted = x;
    for (int i = 0; i < a.n; ++i) shifted[i] += deltas.vectors[j - 1][i];
    double diff = contract(a, shifted, w) - contract(a, x, w);
    rhs += (j % 2 == 1) ? diff : -diff;
  }
  return std::abs(lhs - rhs);
}

double integrate_surface(const FormField& a, const IntegralSurface& s, Exec exec) {
  if (s.n != a.n || s.m != a.m) {
    throw std::invalid_argument("surface and form need matching dimension and grade");
  }
  return blocked_sum(s.pieces.size(), exec, [&](std::size_t i) {
    const auto& p = s.pieces[i];
    return contract(a, p.anchor, wedge(p.edges));
  });
}

Multivector<double> vector_volume(const IntegralSurface& s) {
  Multivector<double> out(s.n, s.n - s.m);
  for (const auto& p : s.pieces) out += cross(p.edges);
  return out;
}

double linear_volume(const IntegralSurface& s) {
  double acc = 0.0;
  for (const auto& p : s.pieces) acc += gram_volume(p.edges);
  return acc;
}

namespace {

// Evaluation point of a scaled lattice cell under the anchor rule.
Point cell_point(const Cube& c, double h, AnchorRule rule) {
  Point x(c.base.size());
  for (std::size_t i = 0; i < c.base.size(); ++i) {
    x[i] = h * static_cast<double>(c.base[i]);
  }
  if (rule == AnchorRule::midpoint) {
    for (int axis : c.axes) x[axis - 1] += 0.5 * h;
  }
  return x;
}

double bounding_extent(const CubicalComplex& cx, double h) {
  const int n = cx.dimension();
  std::vector<long long> lo(n, 0), hi(n, 0);
  bool first = true;
  for (std::size_t i = 0; i < cx.cell_count(0); ++i) {
    const auto& b = cx.cell_at(0, i).base;
    for (int d = 0; d < n; ++d) {
      if (first || b[d] < lo[d]) lo[d] = b[d];
      if (first || b[d] > hi[d]) hi[d] = b[d];
    }
    first = false;
  }
  long long widest = 1;
  for (int d = 0; d < n; ++d) widest = std::max(widest, hi[d] - lo[d]);
  return h * static_cast<double>(widest);
}

}  // namespace

StokesResult stokes_check(const FormField& a, const CubicalComplex& region, double h,
                          StokesMode mode, double fd_step, AnchorRule anchor,
                          Exec exec) {
  if (!region.is_embedded()) {
    throw std::invalid_argument("the integration region must be an embedded complex");
  }
  if (!(h > 0.0)) throw std::invalid_argument("the region scale must be positive");
  const int top = region.top_grade();
  if (a.n != region.dimension() || a.m != top - 1) {
    throw std::invalid_argument("form grade must be one below the region's top grade");
  }

  OrientResult o = orient(region);
  if (!o.orientable) {
    throw std::domain_error("the integration region is not orientable");
  }

  const auto& slots = region.incidence(top);
  const std::size_t cells = region.cell_count(top);
  const double face_weight = std::pow(h, top - 1);

  // Oriented boundary chain: interior faces cancel, what is left carries
  // integer multiplicities.
  std::map<std::size_t, long long> rim;
  for (std::size_t i = 0; i < cells; ++i) {
    for (const auto& [sgn, face] : slots[i]) {
      long long c = rim[face] += static_cast<long long>(o.signs[i]) * sgn;
      if (c == 0) rim.erase(face);
    }
  }
  std::vector<std::pair<std::size_t, long long>> rim_list(rim.begin(), rim.end());

  double boundary = blocked_sum(rim_list.size(), exec, [&](std::size_t t) {
    const auto& [face, coef] = rim_list[t];
    const Cube& f = region.cell_at(top - 1, face);
    return static_cast<double>(coef) * face_weight *
           a.coeff(cell_point(f, h, anchor), f.axes);
  });

  double interior = 0.0;
  if (mode == StokesMode::discrete) {
    // Per-cell face-difference decomposition of <da, cell>; summed over the
    // region it telescopes to the boundary sum exactly.
    interior = blocked_sum(cells, exec, [&](std::size_t i) {
      double acc = 0.0;
      for (const auto& [sgn, face] : slots[i]) {
        const Cube& f = region.cell_at(top - 1, face);
        acc += static_cast<double>(o.signs[i] * sgn) * face_weight *
               a.coeff(cell_point(f, h, anchor), f.axes);
      }
      return acc;
    });
  } else {
    double step = fd_step > 0.0 ? fd_step : 1e-5 * std::max(1.0, bounding_extent(region, h));
    const double cell_weight = std::pow(h, top);
    interior = blocked_sum(cells, exec, [&](std::size_t i) {
      const Cube& c = region.cell_at(top, i);
      Multivector<double> da = exterior_derivative(a, cell_point(c, h, anchor), step);
      return static_cast<double>(o.signs[i]) * cell_weight * da.coefficient(c.axes);
    });
  }
  return {interior, boundary, interior - boundary};
}

}  // namespace ptope

#include "ptope/flows.hpp"

#include "ptope/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>

namespace ptope {

GridSpec::GridSpec(int dim, std::vector<double> org, double spacing, std::vector<int> ext)
    : n(dim), origin(std::move(org)), h(spacing), extents(std::move(ext)) {
  if (n < 1) throw std::invalid_argument("grid dimension must be >= 1");
  if (static_cast<int>(origin.size()) != n) {
    throw std::invalid_argument("origin length must equal the dimension");
  }
  if (!(h > 0.0)) throw std::invalid_argument("grid spacing must be positive");
  if (static_cast<int>(extents.size()) != n) {
    throw std::invalid_argument("extents length must equal the dimension");
  }
  for (int e : extents) {
    if (e < 3) throw std::invalid_argument("each axis needs at least 3 samples");
  }
}

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int e : extents) s *= static_cast<std::size_t>(e);
  return s;
}

std::size_t GridSpec::flat(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != n) {
    throw std::invalid_argument("index length must equal the dimension");
  }
  std::size_t f = 0;
  for (int d = 0; d < n; ++d) {
    if (idx[d] < 0 || idx[d] >= extents[d]) {
      throw std::invalid_argument("grid index out of range");
    }
    f = f * static_cast<std::size_t>(extents[d]) + static_cast<std::size_t>(idx[d]);
  }
  return f;
}

std::vector<int> GridSpec::unflat(std::size_t f) const {
  std::vector<int> idx(n);
  for (int d = n - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(f % static_cast<std::size_t>(extents[d]));
    f /= static_cast<std::size_t>(extents[d]);
  }
  return idx;
}

Point GridSpec::coords(const std::vector<int>& idx) const {
  Point x(n);
  for (int d = 0; d < n; ++d) x[d] = origin[d] + h * idx[d];
  return x;
}

bool GridSpec::interior(const std::vector<int>& idx) const {
  for (int d = 0; d < n; ++d) {
    if (idx[d] < 1 || idx[d] > extents[d] - 2) return false;
  }
  return true;
}

ScalarGridField::ScalarGridField(GridSpec g, std::vector<double> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw std::invalid_argument("sample count must match the grid size");
  }
}

CovectorGridField::CovectorGridField(GridSpec g, std::vector<std::vector<double>> comps)
    : grid(std::move(g)), components(std::move(comps)) {
  if (static_cast<int>(components.size()) != grid.n) {
    throw std::invalid_argument("need one component array per axis");
  }
  for (const auto& c : components) {
    if (c.size() != grid.size()) {
      throw std::invalid_argument("sample count must match the grid size");
    }
  }
}

namespace {

std::vector<std::size_t> axis_strides(const GridSpec& g) {
  std::vector<std::size_t> s(g.n, 1);
  for (int d = g.n - 2; d >= 0; --d) {
    s[d] = s[d + 1] * static_cast<std::size_t>(g.extents[d + 1]);
  }
  return s;
}

// Interior nodes enumerated densely for the blocked scans.
struct InteriorWalk {
  const GridSpec& g;
  std::vector<std::size_t> strides;
  std::size_t count = 1;

  explicit InteriorWalk(const GridSpec& spec) : g(spec), strides(axis_strides(spec)) {
    for (int e : g.extents) count *= static_cast<std::size_t>(e - 2);
  }

  // Full-grid flat index of the t-th interior node.
  std::size_t node(std::size_t t) const {
    std::size_t f = 0;
    for (int d = g.n - 1; d >= 0; --d) {
      std::size_t w = static_cast<std::size_t>(g.extents[d] - 2);
      f += (1 + t % w) * strides[d];
      t /= w;
    }
    return f;
  }
};

}  // namespace

CovectorGridField gradient_field(const ScalarGridField& phi) {
  const GridSpec& g = phi.grid;
  auto strides = axis_strides(g);
  std::vector<std::vector<double>> comps(g.n, std::vector<double>(g.size()));
  const auto& v = phi.values;
  for (std::size_t f = 0; f < g.size(); ++f) {
    auto idx = g.unflat(f);
    for (int d = 0; d < g.n; ++d) {
      double slope;
      if (idx[d] == 0) {
        slope = (v[f + strides[d]] - v[f]) / g.h;
      } else if (idx[d] == g.extents[d] - 1) {
        slope = (v[f] - v[f - strides[d]]) / g.h;
      } else {
        slope = (v[f + strides[d]] - v[f - strides[d]]) / (2.0 * g.h);
      }
      comps[d][f] = slope;
    }
  }
  return CovectorGridField(g, std::move(comps));
}

namespace {

// Shared driver: max of node_value over interior nodes, with the argmax
// converted back to a per-axis index.
template <class F>
ResidualReport interior_max(const GridSpec& g, Exec exec, F&& node_value) {
  InteriorWalk walk(g);
  if (walk.count == 0) return {};
  MaxResult best = blocked_max(walk.count, exec, [&](std::size_t t) {
    return node_value(walk.node(t));
  });
  return {best.value, g.unflat(walk.node(best.index))};
}

double central(const std::vector<double>& comp, std::size_t f, std::size_t stride,
               double h) {
  return (comp[f + stride] - comp[f - stride]) / (2.0 * h);
}

}  // namespace

ResidualReport closedness_residual(const CovectorGridField& a, Exec exec) {
  const GridSpec& g = a.grid;
  auto strides = axis_strides(g);
  return interior_max(g, exec, [&](std::size_t f) {
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i) {
      for (int j = i + 1; j < g.n; ++j) {
        double curl = central(a.components[j], f, strides[i], g.h) -
                      central(a.components[i], f, strides[j], g.h);
        worst = std::max(worst, std::abs(curl));
      }
    }
    return worst;
  });
}

ResidualReport divergence_residual(const CovectorGridField& a, Exec exec) {
  const GridSpec& g = a.grid;
  auto strides = axis_strides(g);
  return interior_max(g, exec, [&](std::size_t f) {
    double div = 0.0;
    for (int j = 0; j < g.n; ++j) {
      div += central(a.components[j], f, strides[j], g.h);
    }
    return std::abs(div);
  });
}

ResidualReport holonomy_residual(const CovectorGridField& a, Exec exec) {
  const GridSpec& g = a.grid;
  if (g.n < 3) return {0.0, {}};
  auto strides = axis_strides(g);
  return interior_max(g, exec, [&](std::size_t f) {
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i) {
      for (int j = i + 1; j < g.n; ++j) {
        double da_ij = central(a.components[j], f, strides[i], g.h) -
                       central(a.components[i], f, strides[j], g.h);
        for (int k = j + 1; k < g.n; ++k) {
          double da_ik = central(a.components[k], f, strides[i], g.h) -
                         central(a.components[i], f, strides[k], g.h);
          double da_jk = central(a.components[k], f, strides[j], g.h) -
                         central(a.components[j], f, strides[k], g.h);
          double coeff = a.components[i][f] * da_jk - a.components[j][f] * da_ik +
                         a.components[k][f] * da_ij;
          worst = std::max(worst, std::abs(coeff));
        }
      }
    }
    return worst;
  });
}

LaplacianResult laplacian_residual(const ScalarGridField& phi, Exec exec) {
  const GridSpec& g = phi.grid;
  auto strides = axis_strides(g);
  const auto& v = phi.values;
  std::vector<double> res(g.size(), 0.0);
  InteriorWalk walk(g);

  auto fill = [&](std::size_t t) {
    std::size_t f = walk.node(t);
    double acc = 0.0;
    for (int d = 0; d < g.n; ++d) {
      acc += v[f + strides[d]] - 2.0 * v[f] + v[f - strides[d]];
    }
    res[f] = acc / (g.h * g.h);
  };
#ifdef _OPENMP
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (long long t = 0; t < static_cast<long long>(walk.count); ++t) {
      fill(static_cast<std::size_t>(t));
    }
  } else
#endif
  {
    for (std::size_t t = 0; t < walk.count; ++t) fill(t);
  }

  ResidualReport report =
      interior_max(g, exec, [&](std::size_t f) { return std::abs(res[f]); });
  return {ScalarGridField(g, std::move(res)), report};
}

UnitFieldResult unit_field(const ScalarGridField& phi, double eps) {
  CovectorGridField grad = gradient_field(phi);
  std::vector<std::size_t> excluded;
  for (std::size_t f = 0; f < grad.grid.size(); ++f) {
    double sq = 0.0;
    for (int d = 0; d < grad.grid.n; ++d) sq += grad.components[d][f] * grad.components[d][f];
    double norm = std::sqrt(sq);
    if (norm < eps) {
      excluded.push_back(f);
      for (int d = 0; d < grad.grid.n; ++d) grad.components[d][f] = 0.0;
    } else {
      for (int d = 0; d < grad.grid.n; ++d) grad.components[d][f] /= norm;
    }
  }
  return {std::move(grad), std::move(excluded)};
}

CurvatureResult mean_curvature(const ScalarGridField& phi, double eps) {
  const GridSpec& g = phi.grid;
  UnitFieldResult unit = unit_field(phi, eps);
  std::vector<char> bad(g.size(), 0);
  for (std::size_t f : unit.excluded) bad[f] = 1;

  auto strides = axis_strides(g);
  std::vector<double> hvals(g.size(), 0.0);
  std::vector<std::size_t> excluded;
  InteriorWalk walk(g);
  for (std::size_t t = 0; t < walk.count; ++t) {
    std::size_t f = walk.node(t);
    bool usable = !bad[f];
    for (int d = 0; d < g.n && usable; ++d) {
      usable = !bad[f + strides[d]] && !bad[f - strides[d]];
    }
    if (!usable) {
      excluded.push_back(f);
      continue;
    }
    double div = 0.0;
    for (int d = 0; d < g.n; ++d) {
      div += central(unit.field.components[d], f, strides[d], g.h);
    }
    hvals[f] = -div / static_cast<double>(g.n);
  }
  return {ScalarGridField(g, std::move(hvals)), std::move(excluded)};
}

namespace {

// Multilinear interpolation of one component array at an off-lattice point.
double interpolate(const GridSpec& g, const std::vector<double>& comp, const Point& x) {
  std::vector<int> cell(g.n);
  std::vector<double> frac(g.n);
  for (int d = 0; d < g.n; ++d) {
    double t = (x[d] - g.origin[d]) / g.h;
    double span = static_cast<double>(g.extents[d] - 1);
    if (t < -1e-9 || t > span + 1e-9) {
      throw std::invalid_argument("point lies outside the sampled grid");
    }
    t = std::clamp(t, 0.0, span);
    int i0 = std::min(static_cast<int>(t), g.extents[d] - 2);
    cell[d] = i0;
    frac[d] = t - i0;
  }
  auto strides = axis_strides(g);
  std::size_t base = 0;
  for (int d = 0; d < g.n; ++d) base += static_cast<std::size_t>(cell[d]) * strides[d];

  double acc = 0.0;
  for (unsigned corner = 0; corner < (1u << g.n); ++corner) {
    double w = 1.0;
    std::size_t f = base;
    for (int d = 0; d < g.n; ++d) {
      if (corner & (1u << d)) {
        w *= frac[d];
        f += strides[d];
      } else {
        w *= 1.0 - frac[d];
      }
    }
    acc += w * comp[f];
  }
  return acc;
}

}  // namespace

double level_set_area(const ScalarGridField& phi, const IntegralSurface& s, double eps,
                      Exec exec) {
  const GridSpec& g = phi.grid;
  if (s.n != g.n) throw std::invalid_argument("surface dimension must match the grid");
  if (s.m != g.n - 1) {
    throw std::invalid_argument("level-set pieces must have grade n-1");
  }
  CovectorGridField grad = gradient_field(phi);

  std::atomic<bool> degenerate{false};
  double area = blocked_sum(s.pieces.size(), exec, [&](std::size_t i) {
    const auto& p = s.pieces[i];
    std::vector<double> gv(g.n);
    double sq = 0.0;
    for (int d = 0; d < g.n; ++d) {
      gv[d] = interpolate(g, grad.components[d], p.anchor);
      sq += gv[d] * gv[d];
    }
    double norm = std::sqrt(sq);
    if (norm < eps) {
      degenerate.store(true);
      return 0.0;
    }
    Multivector<double> normal(g.n, 1);
    for (int d = 0; d < g.n; ++d) normal.set_coefficient({d + 1}, gv[d] / norm);
    return inner(hodge_star(normal), wedge(p.edges));
  });
  if (degenerate.load()) {
    throw DegeneracyError("gradient vanishes at a surface anchor");
  }
  return area;
}

}  // namespace ptope

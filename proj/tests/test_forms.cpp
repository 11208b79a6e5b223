#include <doctest.h>

#include "ptope/errors.hpp"
#include "ptope/forms.hpp"
#include "ptope/homology.hpp"
#include "ptope/shapes.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace ptope;

namespace {

FormField constant_area_form() {
  return FormField(2, 2, [](const Point&, const SubsetKey&) { return 1.0; });
}

// a = x1 dx^2 in the plane.
FormField x1_dx2() {
  return FormField(2, 1, [](const Point& x, const SubsetKey& j) {
    return j == SubsetKey{2} ? x[0] : 0.0;
  });
}

// a = x1 x2 dx^1 + x1 dx^2, the curl-bearing test field.
FormField swirl_form() {
  return FormField(2, 1, [](const Point& x, const SubsetKey& j) {
    if (j == SubsetKey{1}) return x[0] * x[1];
    return x[0];
  });
}

// Uniform k-by-k decomposition of the unit square into lattice squares.
IntegralSurface unit_square_mesh(int k) {
  const double h = 1.0 / k;
  IntegralSurface s(2, 2);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      s.add(SmallParallelepiped({i * h, j * h},
                                VectorSystem<double>(2, {{h, 0.0}, {0.0, h}})));
    }
  }
  return s;
}

// Counterclockwise boundary of the unit square in k-segment sides.
IntegralSurface unit_square_rim(int k) {
  const double h = 1.0 / k;
  IntegralSurface s(2, 1);
  for (int t = 0; t < k; ++t) {
    s.add(SmallParallelepiped({t * h, 0.0}, VectorSystem<double>(2, {{h, 0.0}})));
    s.add(SmallParallelepiped({1.0, t * h}, VectorSystem<double>(2, {{0.0, h}})));
    s.add(SmallParallelepiped({1.0 - t * h, 1.0}, VectorSystem<double>(2, {{-h, 0.0}})));
    s.add(SmallParallelepiped({0.0, 1.0 - t * h}, VectorSystem<double>(2, {{0.0, -h}})));
  }
  return s;
}

}  // namespace

TEST_CASE("contract evaluates coefficient tables against multivectors") {
  auto unit = constant_area_form();
  CHECK(contract(unit, {0.0, 0.0}, Multivector<double>::basis(2, {1, 2})) == 1.0);

  auto a = x1_dx2();
  CHECK(contract(a, {2.0, 0.0}, Multivector<double>::basis(2, {2})) == 2.0);
  CHECK_THROWS_AS(contract(a, {0.0, 0.0}, Multivector<double>::basis(2, {1, 2})),
                  std::invalid_argument);

  std::mt19937 rng(300);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  FormField q(3, 2, [](const Point& x, const SubsetKey& j) {
    return x[0] * j[0] + x[2] * j[1];
  });
  for (int trial = 0; trial < 50; ++trial) {
    Point x{u(rng), u(rng), u(rng)};
    Multivector<double> w1(3, 2), w2(3, 2);
    for (const auto& key : ascending_subsets(3, 2)) {
      w1.set_coefficient(key, u(rng));
      w2.set_coefficient(key, u(rng));
    }
    double split = contract(q, x, w1) + contract(q, x, w2);
    CHECK(contract(q, x, w1 + w2) == doctest::Approx(split).epsilon(1e-12));
  }
}

TEST_CASE("exterior derivative recovers analytic derivatives of polynomials") {
  auto a = x1_dx2();
  auto da = exterior_derivative(a, {0.7, -0.3}, 1e-4);
  CHECK(da.coefficient({1, 2}) == doctest::Approx(1.0).epsilon(1e-10));

  // a = x1 x2 dx^1 + x1^2 dx^3 in R^3: da = -x1 dx^12 + 2 x1 dx^13.
  FormField b(3, 1, [](const Point& x, const SubsetKey& j) {
    if (j == SubsetKey{1}) return x[0] * x[1];
    if (j == SubsetKey{3}) return x[0] * x[0];
    return 0.0;
  });
  auto db = exterior_derivative(b, {3.0, 5.0, 7.0}, 1e-4);
  CHECK(db.coefficient({1, 2}) == doctest::Approx(-3.0).epsilon(1e-9));
  CHECK(db.coefficient({1, 3}) == doctest::Approx(6.0).epsilon(1e-9));
  CHECK(db.coefficient({2, 3}) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("second exterior derivative of a gradient field vanishes") {
  // a = d(x1^2 - x2^2) sampled analytically.
  FormField grad(2, 1, [](const Point& x, const SubsetKey& j) {
    return j == SubsetKey{1} ? 2.0 * x[0] : -2.0 * x[1];
  });
  auto dda = exterior_derivative(grad, {1.2, -0.8}, 1e-4);
  CHECK(std::abs(dda.coefficient({1, 2})) < 1e-9);
}

TEST_CASE("exterior derivative of a constant form is exactly zero") {
  FormField c(3, 1, [](const Point&, const SubsetKey& j) {
    return j == SubsetKey{2} ? 4.5 : -1.0;
  });
  CHECK(exterior_derivative(c, {0.3, 0.4, 0.5}, 1e-3).is_zero());
  CHECK_THROWS_AS(exterior_derivative(c, {0.0, 0.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("interior product follows the deletion sign table") {
  auto area = constant_area_form();
  VectorField e1 = [](const Point&) { return std::vector<double>{1.0, 0.0}; };
  VectorField e2 = [](const Point&) { return std::vector<double>{0.0, 1.0}; };
  auto i1 = interior_product(area, e1, {0.0, 0.0});
  CHECK(i1.coefficient({2}) == -1.0);
  CHECK(i1.coefficient({1}) == 0.0);
  auto i2 = interior_product(area, e2, {0.0, 0.0});
  CHECK(i2.coefficient({1}) == 1.0);

  VectorField zero = [](const Point&) { return std::vector<double>{0.0, 0.0}; };
  CHECK(interior_product(area, zero, {1.0, 2.0}).is_zero());

  FormField scalar(2, 0, [](const Point&, const SubsetKey&) { return 1.0; });
  CHECK_THROWS_AS(interior_product(scalar, e1, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("interior product applied twice with one field vanishes") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  FormField a(4, 2, [](const Point& x, const SubsetKey& j) {
    return std::sin(x[j[0] - 1]) + x[j[1] - 1] * x[0];
  });
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> bv{u(rng), u(rng), u(rng), u(rng)};
    VectorField b = [bv](const Point&) { return bv; };
    Point x{u(rng), u(rng), u(rng), u(rng)};
    FormField once(4, 1, [&a, b](const Point& p, const SubsetKey& j) {
      return interior_product(a, b, p).coefficient(j);
    });
    CHECK(interior_product(once, b, x).max_abs() < 1e-12);
  }
}

TEST_CASE("wedge with a 1-form uses insertion signs") {
  FormField dx1(2, 1, [](const Point&, const SubsetKey& j) {
    return j == SubsetKey{1} ? 1.0 : 0.0;
  });
  FormField dx2(2, 1, [](const Point&, const SubsetKey& j) {
    return j == SubsetKey{2} ? 1.0 : 0.0;
  });
  CHECK(wedge_1form(dx1, dx2, {0.0, 0.0}).coefficient({1, 2}) == 1.0);
  CHECK(wedge_1form(dx2, dx1, {0.0, 0.0}).coefficient({1, 2}) == -1.0);

  std::mt19937 rng(88);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  FormField a(3, 1, [](const Point& x, const SubsetKey& j) {
    return x[(j[0] + 1) % 3] - 0.5 * x[0];
  });
  for (int trial = 0; trial < 20; ++trial) {
    Point x{u(rng), u(rng), u(rng)};
    CHECK(wedge_1form(a, a, x).max_abs() < 1e-12);
  }
}

TEST_CASE("difference identity residual is zero for affine coefficients") {
  std::mt19937 rng(452);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 2; n <= 4; ++n) {
    for (int m = 0; m < n && m <= 2; ++m) {
      // Random affine coefficients, fixed per (n, m) trial.
      auto subsets = ascending_subsets(n, m);
      std::vector<std::vector<double>> table;
      for (std::size_t s = 0; s < subsets.size(); ++s) {
        std::vector<double> row{u(rng)};
        for (int i = 0; i < n; ++i) row.push_back(u(rng));
        table.push_back(row);
      }
      FormField a(n, m, [subsets, table](const Point& x, const SubsetKey& j) {
        for (std::size_t s = 0; s < subsets.size(); ++s) {
          if (subsets[s] == j) {
            double v = table[s][0];
            for (std::size_t i = 0; i < x.size(); ++i) v += table[s][i + 1] * x[i];
            return v;
          }
        }
        return 0.0;
      });
      std::vector<std::vector<double>> deltas;
      for (int t = 0; t <= m; ++t) {
        std::vector<double> d(n);
        for (int i = 0; i < n; ++i) d[i] = 1e-3 * u(rng);
        d[t] += 1e-3;  // keep the system comfortably independent
        deltas.push_back(d);
      }
      Point x(n);
      for (int i = 0; i < n; ++i) x[i] = u(rng);
      double r = prop5_residual(a, x, VectorSystem<double>(n, deltas));
      CHECK(r <= 1e-12);
    }
  }
}

TEST_CASE("difference identity residual shrinks for quadratic coefficients") {
  FormField a(3, 1, [](const Point& x, const SubsetKey& j) {
    if (j == SubsetKey{1}) return x[0] * x[0];
    if (j == SubsetKey{2}) return x[0] * x[2];
    return x[1] * x[1];
  });
  Point x{0.4, -0.7, 1.1};
  auto deltas_at = [](double eps) {
    return VectorSystem<double>(
        3, {{eps, 0.2 * eps, 0.0}, {0.1 * eps, eps, -0.3 * eps}});
  };
  double r1 = prop5_residual(a, x, deltas_at(1e-3));
  double r2 = prop5_residual(a, x, deltas_at(5e-4));
  CHECK(r1 > 1e-18);
  CHECK(r1 / r2 >= 2.0);

  FormField c(3, 1, [](const Point&, const SubsetKey&) { return 2.0; });
  CHECK(prop5_residual(c, x, deltas_at(1e-3)) == 0.0);

  VectorSystem<double> collapsed(3, {{1e-3, 0.0, 0.0}, {2e-3, 0.0, 0.0}});
  CHECK_THROWS_AS(prop5_residual(a, x, collapsed), DegeneracyError);
}

TEST_CASE("surface integral of the constant area form over the unit square is 1") {
  CHECK(integrate_surface(constant_area_form(), unit_square_mesh(32)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  IntegralSurface empty(2, 2);
  CHECK(integrate_surface(constant_area_form(), empty) == 0.0);
}

TEST_CASE("line integral of x1 dx^2 around the unit square is 1") {
  CHECK(integrate_surface(x1_dx2(), unit_square_rim(64)) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("surface integral negates when each piece swaps one edge pair") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  FormField a(3, 2, [](const Point& x, const SubsetKey& j) {
    return x[0] * j[1] + std::cos(x[2]) * j[0];
  });
  IntegralSurface s(3, 2), flipped(3, 2);
  for (int p = 0; p < 40; ++p) {
    Point anchor{u(rng), u(rng), u(rng)};
    std::vector<double> e1{1.0 + u(rng) * 0.1, u(rng) * 0.1, u(rng) * 0.1};
    std::vector<double> e2{u(rng) * 0.1, 1.0 + u(rng) * 0.1, u(rng) * 0.1};
    s.add(SmallParallelepiped(anchor, VectorSystem<double>(3, {e1, e2})));
    flipped.add(SmallParallelepiped(anchor, VectorSystem<double>(3, {e2, e1})));
  }
  CHECK(integrate_surface(a, s) == -integrate_surface(a, flipped));
}

TEST_CASE("parallel surface integration matches serial bit for bit") {
  FormField a(2, 2, [](const Point& x, const SubsetKey&) {
    return 1.0 + x[0] * x[0] * x[1] - 0.25 * x[1];
  });
  auto s = unit_square_mesh(128);
  CHECK(integrate_surface(a, s, Exec::serial) == integrate_surface(a, s, Exec::parallel));
}

TEST_CASE("vector volume of a flat patch points along the missing axis") {
  const double h = 0.25;
  IntegralSurface s(3, 2);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      s.add(SmallParallelepiped({i * h, j * h, 0.0},
                                VectorSystem<double>(3, {{h, 0, 0}, {0, h, 0}})));
    }
  }
  auto v = vector_volume(s);
  CHECK(v.coefficient({3}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.coefficient({1}) == 0.0);
  CHECK(v.coefficient({2}) == 0.0);

  IntegralSurface single(2, 1, {SmallParallelepiped({0.0, 0.0},
                                                    VectorSystem<double>(2, {{1, 0}}))});
  CHECK(vector_volume(single).coefficient({2}) == 1.0);
}

TEST_CASE("vector volume of an oriented closed cube surface cancels") {
  const auto cube = cube_boundary();
  auto o = orient(cube);
  REQUIRE(o.orientable);
  IntegralSurface s(3, 2);
  for (std::size_t i = 0; i < cube.cell_count(2); ++i) {
    const Cube& c = cube.cell_at(2, i);
    Point anchor(3);
    for (int d = 0; d < 3; ++d) anchor[d] = static_cast<double>(c.base[d]);
    std::vector<double> ea(3, 0.0), eb(3, 0.0);
    ea[c.axes[0] - 1] = 1.0;
    eb[c.axes[1] - 1] = 1.0;
    // The coherent orientation decides the edge order of each face.
    if (o.signs[i] > 0) {
      s.add(SmallParallelepiped(anchor, VectorSystem<double>(3, {ea, eb})));
    } else {
      s.add(SmallParallelepiped(anchor, VectorSystem<double>(3, {eb, ea})));
    }
  }
  CHECK(vector_volume(s).max_abs() < 1e-15);
  CHECK(linear_volume(s) == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("linear volume sums Gram volumes") {
  CHECK(linear_volume(unit_square_mesh(8)) == doctest::Approx(1.0).epsilon(1e-12));

  IntegralSurface vec(2, 1, {SmallParallelepiped({0.0, 0.0},
                                                 VectorSystem<double>(2, {{3, 4}}))});
  CHECK(linear_volume(vec) == doctest::Approx(5.0).epsilon(1e-12));

  IntegralSurface circle(2, 1);
  const int k = 256;
  for (int t = 0; t < k; ++t) {
    double a0 = 2.0 * M_PI * t / k, a1 = 2.0 * M_PI * (t + 1) / k;
    circle.add(SmallParallelepiped(
        {std::cos(a0), std::sin(a0)},
        VectorSystem<double>(2, {{std::cos(a1) - std::cos(a0),
                                  std::sin(a1) - std::sin(a0)}})));
  }
  CHECK(std::abs(linear_volume(circle) - 2.0 * M_PI) < 1e-3);
}

TEST_CASE("discrete interior and boundary sums agree exactly for x1 dx^2") {
  auto region = solid_rectangle(32, 32);
  auto r = stokes_check(x1_dx2(), region, 1.0 / 32);
  CHECK(r.boundary == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.interior == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.difference) <= 1e-9);

  auto rf = stokes_check(x1_dx2(), region, 1.0 / 32, StokesMode::analytic_fd);
  CHECK(rf.interior == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("boundary sum of a constant form over a closed surface is zero") {
  FormField c(3, 1, [](const Point&, const SubsetKey& j) {
    return j == SubsetKey{1} ? 2.0 : -3.0;
  });
  auto r = stokes_check(c, cube_boundary(), 0.5);
  CHECK(r.boundary == 0.0);
  CHECK(r.interior == 0.0);
}

TEST_CASE("boundary sums converge linearly to the analytic double integral") {
  // Analytic value of the circulation: the integral of (1 - x1) over the
  // unit square, which is 1/2.
  auto e = [&](int k) {
    auto r = stokes_check(swirl_form(), solid_rectangle(k, k), 1.0 / k);
    CHECK(std::abs(r.difference) <= 1e-9);
    return std::abs(r.boundary - 0.5);
  };
  double e16 = e(16), e32 = e(32);
  CHECK(e16 / e32 == doctest::Approx(2.0).epsilon(0.2));

  // Midpoint anchors integrate this linear-in-x integrand exactly.
  auto mid = stokes_check(swirl_form(), solid_rectangle(32, 32), 1.0 / 32,
                          StokesMode::discrete, 0.0, AnchorRule::midpoint);
  CHECK(mid.boundary == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("regions that cannot be oriented are rejected") {
  // Three squares sharing one edge cannot carry a coherent orientation.
  auto bad = CubicalComplex::embedded(
      3, {},
      {Cube{{0, 0, 0}, {1, 2}}, Cube{{0, 0, 0}, {1, 3}}, Cube{{0, -1, 0}, {1, 2}}});
  FormField c(3, 1, [](const Point&, const SubsetKey&) { return 1.0; });
  CHECK_THROWS_AS(stokes_check(c, bad, 1.0), std::domain_error);
}

TEST_CASE("parallel stokes evaluation matches serial bit for bit") {
  auto region = solid_rectangle(64, 64);
  auto rs = stokes_check(swirl_form(), region, 1.0 / 64, StokesMode::discrete, 0.0,
                         AnchorRule::lower_corner, Exec::serial);
  auto rp = stokes_check(swirl_form(), region, 1.0 / 64, StokesMode::discrete, 0.0,
                         AnchorRule::lower_corner, Exec::parallel);
  CHECK(rs.interior == rp.interior);
  CHECK(rs.boundary == rp.boundary);
}

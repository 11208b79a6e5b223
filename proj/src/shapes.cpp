#include "ptope/shapes.hpp"

#include <stdexcept>
#include <string>

namespace ptope {

namespace {

std::string tag(const char* stem, int i) { return stem + std::to_string(i); }

}  // namespace

CubicalComplex solid_square() {
  return CubicalComplex::embedded(2, {}, {Cube{{0, 0}, {1, 2}}});
}

CubicalComplex solid_rectangle(long long kx, long long ky) {
  std::vector<Cube> gens;
  for (long long i = 0; i < kx; ++i) {
    for (long long j = 0; j < ky; ++j) {
      gens.push_back(Cube{{i, j}, {1, 2}});
    }
  }
  return CubicalComplex::embedded(2, {}, std::move(gens));
}

CubicalComplex cube_boundary() {
  std::vector<Cube> gens;
  for (int axis = 1; axis <= 3; ++axis) {
    SubsetKey spanned = subset_complement(3, {axis});
    for (long long side = 0; side <= 1; ++side) {
      Cube c{{0, 0, 0}, spanned};
      c.base[static_cast<std::size_t>(axis) - 1] = side;
      gens.push_back(std::move(c));
    }
  }
  return CubicalComplex::embedded(3, {}, std::move(gens));
}

CubicalComplex torus(long long k1, long long k2) {
  if (k1 < 1 || k2 < 1) throw std::invalid_argument("torus extents must be positive");
  std::vector<Cube> gens;
  for (long long i = 0; i < k1; ++i) {
    for (long long j = 0; j < k2; ++j) {
      gens.push_back(Cube{{i, j}, {1, 2}});
    }
  }
  return CubicalComplex::embedded(2, {k1, k2}, std::move(gens));
}

namespace {

// Shared scaffolding of the two bands: k rungs r_i from bottom vertex p_i to
// top vertex q_i, bottom rail edges b_i and top rail edges t_i. The seam
// (index k-1) either closes the ring straight or swaps the rails.
CubicalComplex band(int k, bool flip) {
  if (k < 2) throw std::invalid_argument("band needs at least 2 squares");
  std::vector<CubicalComplex::AbstractCell> cells;
  for (int i = 0; i < k; ++i) cells.push_back({0, tag("p", i), {}});
  for (int i = 0; i < k; ++i) cells.push_back({0, tag("q", i), {}});
  for (int i = 0; i < k; ++i) {
    cells.push_back({1, tag("r", i), {{1, tag("q", i)}, {-1, tag("p", i)}}});
  }
  for (int i = 0; i < k; ++i) {
    const bool seam = i == k - 1;
    const std::string b_head = seam ? (flip ? "q0" : "p0") : tag("p", i + 1);
    const std::string t_head = seam ? (flip ? "p0" : "q0") : tag("q", i + 1);
    cells.push_back({1, tag("b", i), {{1, b_head}, {-1, tag("p", i)}}});
    cells.push_back({1, tag("t", i), {{1, t_head}, {-1, tag("q", i)}}});
  }
  for (int i = 0; i < k; ++i) {
    const bool seam = i == k - 1;
    const int lead_sign = seam && flip ? -1 : 1;
    const std::string lead = seam ? "r0" : tag("r", i + 1);
    cells.push_back({2, tag("s", i),
                     {{1, tag("b", i)},
                      {lead_sign, lead},
                      {-1, tag("t", i)},
                      {-1, tag("r", i)}}});
  }
  return CubicalComplex::abstract(std::move(cells));
}

}  // namespace

CubicalComplex cylinder_band(int k) { return band(k, false); }

CubicalComplex moebius_band(int k) { return band(k, true); }

CubicalComplex klein_minimal() {
  return CubicalComplex::abstract({
      {0, "v", {}},
      {1, "a", {{1, "v"}, {-1, "v"}}},
      {1, "b", {{1, "v"}, {-1, "v"}}},
      {2, "f", {{1, "a"}, {1, "b"}, {-1, "a"}, {1, "b"}}},
  });
}

}  // namespace ptope

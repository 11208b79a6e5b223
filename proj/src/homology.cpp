#include "ptope/homology.hpp"

#include "ptope/snf.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <stdexcept>

namespace ptope {

HomologyResult homology(const CubicalComplex& cx) {
  const int top = cx.top_grade();
  std::vector<std::vector<BigInt>> factors(static_cast<std::size_t>(top) + 2);
  for (int k = 1; k <= top; ++k) {
    factors[static_cast<std::size_t>(k)] = smith_normal_form(boundary_matrix(cx, k));
  }

  HomologyResult out;
  out.grades.resize(static_cast<std::size_t>(top) + 1);
  for (int k = 0; k <= top; ++k) {
    auto& g = out.grades[static_cast<std::size_t>(k)];
    g.cells = cx.cell_count(k);
    const std::size_t rank_k = factors[static_cast<std::size_t>(k)].size();
    const std::size_t rank_up = factors[static_cast<std::size_t>(k) + 1].size();
    g.betti = static_cast<long long>(g.cells) - static_cast<long long>(rank_k) -
              static_cast<long long>(rank_up);
    for (const auto& d : factors[static_cast<std::size_t>(k) + 1]) {
      if (d > 1) g.torsion.push_back(d);
    }
  }
  return out;
}

namespace {

// One raw incidence entry of a (top-1)-face: which top cell, which position
// in that cell's slot list, and the sign. Positions keep two entries with
// equal cell and sign distinguishable.
struct FaceEntry {
  std::size_t cell;
  std::size_t slot;
  int sign;
};

}  // namespace

OrientResult orient(const CubicalComplex& cx) {
  const int top = cx.top_grade();
  OrientResult out;
  if (top == 0) {
    out.orientable = true;
    out.signs.assign(cx.cell_count(0), 1);
    return out;
  }

  const auto& cells = cx.incidence(top);
  const std::size_t count = cells.size();

  std::map<std::size_t, std::vector<FaceEntry>> entries;
  for (std::size_t c = 0; c < count; ++c) {
    for (std::size_t s = 0; s < cells[c].size(); ++s) {
      entries[cells[c][s].second].push_back({c, s, cells[c][s].first});
    }
  }
  for (const auto& [face, list] : entries) {
    if (list.size() > 2) {
      throw std::domain_error("not a manifold complex: face " +
                              cx.cell_label(top - 1, face) + " has " +
                              std::to_string(list.size()) + " incidences");
    }
  }

  std::vector<int> sigma(count, 0);
  std::vector<std::size_t> parent(count, SIZE_MAX);

  auto cycle_witness = [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> pa{a}, pb{b};
    while (parent[pa.back()] != SIZE_MAX) pa.push_back(parent[pa.back()]);
    while (parent[pb.back()] != SIZE_MAX) pb.push_back(parent[pb.back()]);
    // Drop the shared tail above the lowest common ancestor, keeping it once.
    while (pa.size() >= 2 && pb.size() >= 2 &&
           pa[pa.size() - 1] == pb[pb.size() - 1] &&
           pa[pa.size() - 2] == pb[pb.size() - 2]) {
      pa.pop_back();
      pb.pop_back();
    }
    std::vector<std::size_t> cycle = pa;
    for (auto it = pb.rbegin(); it != pb.rend(); ++it) {
      if (cycle.back() != *it) cycle.push_back(*it);
    }
    return cycle;
  };

  for (std::size_t root = 0; root < count; ++root) {
    if (sigma[root] != 0) continue;
    sigma[root] = 1;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      const std::size_t c = queue.front();
      queue.pop_front();
      for (std::size_t s = 0; s < cells[c].size(); ++s) {
        const int sign = cells[c][s].first;
        for (const FaceEntry& e : entries[cells[c][s].second]) {
          if (e.cell == c && e.slot == s) continue;  // the entry itself
          if (e.cell == c) {
            // A face shared by one cell with itself (periodic wrap or a
            // repeated listing): opposite signs cancel, equal signs force
            // sigma = -sigma.
            if (e.sign == sign) {
              out.orientable = false;
              out.witness = {c};
              return out;
            }
            continue;
          }
          // Opposite induced orientations: sigma[c]*sign = -sigma[e.cell]*e.sign.
          const int needed = -sigma[c] * sign * e.sign;
          if (sigma[e.cell] == 0) {
            sigma[e.cell] = needed;
            parent[e.cell] = c;
            queue.push_back(e.cell);
          } else if (sigma[e.cell] != needed) {
            out.orientable = false;
            out.witness = cycle_witness(c, e.cell);
            return out;
          }
        }
      }
    }
  }

  out.orientable = true;
  out.signs = std::move(sigma);
  return out;
}

}  // namespace ptope

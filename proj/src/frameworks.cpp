#include "ptope/frameworks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ptope {

Composition::Composition(std::vector<int> p) : parts(std::move(p)) {
  if (parts.empty()) throw std::invalid_argument("composition needs at least one part");
  for (int x : parts) {
    if (x < 1) throw std::invalid_argument("composition parts must be positive");
  }
}

int Composition::total() const {
  return std::accumulate(parts.begin(), parts.end(), 0);
}

std::vector<Composition> all_compositions(int n) {
  if (n < 1) throw std::invalid_argument("compositions need n >= 1");
  std::vector<Composition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest) -> void {
    if (rest == 0) {
      out.push_back(Composition(cur));
      return;
    }
    for (int first = rest; first >= 1; --first) {
      cur.push_back(first);
      self(self, rest - first);
      cur.pop_back();
    }
  };
  // First part varies slowest, largest first, so (n) itself leads the list.
  rec(rec, n);
  return out;
}

FrameworkGraph elementary_graph(const Composition& c) {
  const int m = c.count();
  FrameworkGraph g;
  g.n = c.total();
  for (int v = 0; v < (1 << m); ++v) g.vertices.insert(v);

  // Class blocks: direction i (0-based) owns classes offset+1 .. offset+parts[i].
  int offset = 0;
  for (int i = 0; i < m; ++i) {
    const int bit = 1 << i;
    for (int mask = 0; mask < (1 << m); ++mask) {
      if (mask & bit) continue;
      for (int c2 = 1; c2 <= c.parts[i]; ++c2) {
        g.edges.push_back({mask, mask | bit, offset + c2});
      }
    }
    offset += c.parts[i];
  }
  return g;
}

FrameworkDiagnostics validate_framework(const FrameworkGraph& g) {
  FrameworkDiagnostics d;
  if (g.n < 1) {
    d.problems.push_back("class count must be at least 1");
    return d;
  }
  // degree[v][c] counts incident edges of class c at v.
  std::map<int, std::vector<int>> degree;
  for (int v : g.vertices) degree[v].assign(g.n + 1, 0);

  for (const auto& e : g.edges) {
    if (e.u == e.v) {
      d.problems.push_back("loop at vertex " + std::to_string(e.u));
      continue;
    }
    if (e.cls < 1 || e.cls > g.n) {
      d.problems.push_back("edge class " + std::to_string(e.cls) + " out of range");
      continue;
    }
    for (int end : {e.u, e.v}) {
      auto it = degree.find(end);
      if (it == degree.end()) {
        d.problems.push_back("edge endpoint " + std::to_string(end) + " is not a vertex");
      } else {
        it->second[e.cls] += 1;
      }
    }
  }
  for (const auto& [v, per_class] : degree) {
    for (int c = 1; c <= g.n; ++c) {
      if (per_class[c] != 1) {
        d.problems.push_back("vertex " + std::to_string(v) + " has " +
                             std::to_string(per_class[c]) + " edges of class " +
                             std::to_string(c));
      }
    }
  }
  return d;
}

namespace {

std::vector<int> canonical_term(const Composition& c) {
  std::vector<int> t = c.parts;
  std::sort(t.begin(), t.end(), std::greater<int>());
  return t;
}

void push_term(FrameworkSum& s, std::vector<int> t) {
  if (t.size() == 1) return;  // a lone sphere is the identity
  s.terms.push_back(std::move(t));
}

}  // namespace

FrameworkSum make_sum(int n, const std::vector<Composition>& terms) {
  if (n < 1) throw std::invalid_argument("sum needs n >= 1");
  FrameworkSum s;
  s.n = n;
  for (const auto& c : terms) {
    if (c.total() != n) {
      throw std::invalid_argument("composition total does not match the sum dimension");
    }
    push_term(s, canonical_term(c));
  }
  std::sort(s.terms.begin(), s.terms.end());
  return s;
}

FrameworkSum connected_sum(const FrameworkSum& a, const FrameworkSum& b) {
  if (a.n != b.n) throw std::invalid_argument("connected sum needs equal dimensions");
  FrameworkSum s;
  s.n = a.n;
  s.terms = a.terms;
  s.terms.insert(s.terms.end(), b.terms.begin(), b.terms.end());
  std::sort(s.terms.begin(), s.terms.end());
  return s;
}

namespace {

// Remove the unique class-c edge at vertex v and return its other endpoint.
int detach_edge(FrameworkGraph& g, int v, int c) {
  for (auto it = g.edges.begin(); it != g.edges.end(); ++it) {
    if (it->cls != c) continue;
    if (it->u == v || it->v == v) {
      int other = (it->u == v) ? it->v : it->u;
      g.edges.erase(it);
      return other;
    }
  }
  throw std::logic_error("framework vertex is missing a class edge");
}

// Graft h onto g: drop the smallest vertex on each side and rejoin the
// dangling edge ends class by class.
void splice(FrameworkGraph& g, FrameworkGraph h) {
  int shift = (g.vertices.empty() ? 0 : *g.vertices.rbegin()) + 1;
  int gv = *g.vertices.begin();
  int hv = *h.vertices.begin() + shift;

  for (auto& e : h.edges) {
    e.u += shift;
    e.v += shift;
  }
  for (int v : h.vertices) g.vertices.insert(v + shift);
  g.edges.insert(g.edges.end(), h.edges.begin(), h.edges.end());

  for (int c = 1; c <= g.n; ++c) {
    int x = detach_edge(g, gv, c);
    int y = detach_edge(g, hv, c);
    g.edges.push_back({x, y, c});
  }
  g.vertices.erase(gv);
  g.vertices.erase(hv);
}

}  // namespace

FrameworkGraph sum_graph(const FrameworkSum& a) {
  if (a.terms.empty()) return elementary_graph(Composition({a.n}));
  FrameworkGraph g = elementary_graph(Composition(a.terms.front()));
  for (std::size_t i = 1; i < a.terms.size(); ++i) {
    splice(g, elementary_graph(Composition(a.terms[i])));
  }
  return g;
}

bool pi1_trivial(const FrameworkSum& a) {
  if (a.terms.empty()) return a.n >= 2;
  for (const auto& t : a.terms) {
    for (int p : t) {
      if (p == 1) return false;
    }
  }
  return true;
}

CubicalComplex surface_complex(const Composition& c) {
  const int m = c.count();
  std::vector<CubicalComplex::AbstractCell> cells;
  for (int mask = 0; mask < (1 << m); ++mask) {
    int grade = 0;
    for (int i = 0; i < m; ++i) {
      if (mask & (1 << i)) grade += c.parts[i];
    }
    CubicalComplex::AbstractCell cell;
    cell.grade = grade;
    cell.id = "f" + std::to_string(mask);
    cells.push_back(std::move(cell));
  }
  // Sphere-product cells have no proper faces, so every boundary map is zero.
  return CubicalComplex::abstract(cells);
}

}  // namespace ptope

#include "ptope/cubical.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ptope {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

std::string cube_text(const Cube& c) {
  std::ostringstream out;
  out << "cube";
  for (long long b : c.base) out << ' ' << b;
  out << " :";
  for (int a : c.axes) out << ' ' << a;
  return out.str();
}

}  // namespace

std::vector<SignedCube> faces(const Cube& c) {
  if (c.grade() == 0) fail("faces of a vertex");
  std::vector<SignedCube> out;
  out.reserve(2 * c.axes.size());
  for (int axis : c.axes) {
    const Sign low = deletion_sign(c.axes, axis);
    Cube lower{c.base, subset_erase(c.axes, axis)};
    Cube upper = lower;
    upper.base[static_cast<std::size_t>(axis) - 1] += 1;
    out.push_back({low, std::move(lower)});
    out.push_back({-low, std::move(upper)});
  }
  return out;
}

CubicalComplex CubicalComplex::embedded(int n, std::vector<long long> moduli,
                                        std::vector<Cube> generators) {
  if (n < 1) fail("complex dimension must be >= 1");
  if (moduli.empty()) moduli.assign(static_cast<std::size_t>(n), 0);
  if (static_cast<int>(moduli.size()) != n) fail("period list length must equal dimension");
  for (long long p : moduli) {
    if (p < 0) fail("periods must be nonnegative");
  }
  if (generators.empty()) fail("complex needs at least one cell");
  for (const auto& g : generators) {
    if (static_cast<int>(g.base.size()) != n) fail("cube base length must equal dimension");
    require_ordered_subset(g.axes, n);
  }
  CubicalComplex cx;
  cx.embedded_ = true;
  cx.n_ = n;
  cx.moduli_ = std::move(moduli);
  cx.generators_ = std::move(generators);
  cx.build_embedded_closure();
  return cx;
}

CubicalComplex CubicalComplex::abstract(std::vector<AbstractCell> cells) {
  if (cells.empty()) fail("complex needs at least one cell");
  int top = 0;
  for (const auto& c : cells) {
    if (c.grade < 0) fail("abstract cell grade must be nonnegative");
    if (c.id.empty()) fail("abstract cell id must be nonempty");
    for (const auto& [sign, ref] : c.faces) {
      if (sign != 1 && sign != -1) fail("abstract face sign must be +1 or -1");
      if (c.grade == 0) fail("a vertex cannot list faces");
      (void)ref;
    }
    top = std::max(top, c.grade);
  }
  CubicalComplex cx;
  cx.embedded_ = false;
  cx.n_ = top;
  cx.top_grade_ = top;
  cx.abstract_cells_ = std::move(cells);
  cx.build_abstract_tables();
  return cx;
}

Cube CubicalComplex::reduced(Cube c) const {
  for (std::size_t i = 0; i < c.base.size(); ++i) {
    const long long p = moduli_[i];
    if (p > 0) c.base[i] = ((c.base[i] % p) + p) % p;
  }
  return c;
}

void CubicalComplex::build_embedded_closure() {
  top_grade_ = 0;
  for (const auto& g : generators_) top_grade_ = std::max(top_grade_, g.grade());

  std::vector<std::set<Cube>> levels(static_cast<std::size_t>(top_grade_) + 1);
  std::deque<Cube> queue;
  for (const auto& g : generators_) {
    const Cube r = reduced(g);
    if (levels[static_cast<std::size_t>(r.grade())].insert(r).second) queue.push_back(r);
  }
  while (!queue.empty()) {
    const Cube c = queue.front();
    queue.pop_front();
    if (c.grade() == 0) continue;
    for (const auto& [sign, f] : faces(c)) {
      const Cube r = reduced(f);
      if (levels[static_cast<std::size_t>(r.grade())].insert(r).second) queue.push_back(r);
    }
  }

  cells_.assign(static_cast<std::size_t>(top_grade_) + 1, {});
  index_.assign(static_cast<std::size_t>(top_grade_) + 1, {});
  for (int g = 0; g <= top_grade_; ++g) {
    auto& level = cells_[static_cast<std::size_t>(g)];
    level.assign(levels[static_cast<std::size_t>(g)].begin(),
                 levels[static_cast<std::size_t>(g)].end());
    for (std::size_t i = 0; i < level.size(); ++i) {
      index_[static_cast<std::size_t>(g)].emplace(level[i], i);
    }
  }

  slots_.assign(static_cast<std::size_t>(top_grade_) + 1, {});
  for (int g = 1; g <= top_grade_; ++g) {
    auto& level_slots = slots_[static_cast<std::size_t>(g)];
    level_slots.resize(cells_[static_cast<std::size_t>(g)].size());
    for (std::size_t i = 0; i < cells_[static_cast<std::size_t>(g)].size(); ++i) {
      for (const auto& [sign, f] : faces(cells_[static_cast<std::size_t>(g)][i])) {
        const Cube r = reduced(f);
        level_slots[i].emplace_back(sign.value(),
                                    index_[static_cast<std::size_t>(g) - 1].at(r));
      }
    }
  }
}

void CubicalComplex::build_abstract_tables() {
  abstract_by_grade_.assign(static_cast<std::size_t>(top_grade_) + 1, {});
  for (std::size_t i = 0; i < abstract_cells_.size(); ++i) {
    const auto& c = abstract_cells_[i];
    if (!abstract_index_.emplace(c.id, i).second) {
      dangling_.push_back("duplicate cell id: " + c.id);
      continue;
    }
    abstract_by_grade_[static_cast<std::size_t>(c.grade)].push_back(i);
  }

  slots_.assign(static_cast<std::size_t>(top_grade_) + 1, {});
  for (int g = 1; g <= top_grade_; ++g) {
    slots_[static_cast<std::size_t>(g)].resize(
        abstract_by_grade_[static_cast<std::size_t>(g)].size());
  }
  for (int g = 1; g <= top_grade_; ++g) {
    const auto& ids = abstract_by_grade_[static_cast<std::size_t>(g)];
    for (std::size_t local = 0; local < ids.size(); ++local) {
      const auto& c = abstract_cells_[ids[local]];
      for (const auto& [sign, ref] : c.faces) {
        auto it = abstract_index_.find(ref);
        if (it == abstract_index_.end()) {
          dangling_.push_back("cell " + c.id + " references undeclared face " + ref);
          continue;
        }
        const auto& f = abstract_cells_[it->second];
        if (f.grade != c.grade - 1) {
          dangling_.push_back("cell " + c.id + " references face " + ref +
                              " of grade " + std::to_string(f.grade));
          continue;
        }
        const auto& lower = abstract_by_grade_[static_cast<std::size_t>(g) - 1];
        const std::size_t face_local = static_cast<std::size_t>(
            std::find(lower.begin(), lower.end(), it->second) - lower.begin());
        slots_[static_cast<std::size_t>(g)][local].emplace_back(sign, face_local);
      }
    }
  }
}

std::size_t CubicalComplex::cell_count(int grade) const {
  if (grade < 0 || grade > top_grade_) return 0;
  if (embedded_) return cells_[static_cast<std::size_t>(grade)].size();
  return abstract_by_grade_[static_cast<std::size_t>(grade)].size();
}

std::size_t CubicalComplex::total_cells() const {
  std::size_t total = 0;
  for (int g = 0; g <= top_grade_; ++g) total += cell_count(g);
  return total;
}

void CubicalComplex::require_grade(int grade) const {
  if (grade < 0 || grade > top_grade_) fail("grade out of range for this complex");
}

std::string CubicalComplex::cell_label(int grade, std::size_t index) const {
  require_grade(grade);
  if (embedded_) return cube_text(cells_[static_cast<std::size_t>(grade)].at(index));
  return abstract_cells_[abstract_by_grade_[static_cast<std::size_t>(grade)].at(index)].id;
}

std::size_t CubicalComplex::cell_index(const Cube& c) const {
  if (!embedded_) fail("cube lookup on an abstract complex");
  const Cube r = reduced(c);
  require_grade(r.grade());
  const auto& idx = index_[static_cast<std::size_t>(r.grade())];
  auto it = idx.find(r);
  if (it == idx.end()) fail("cell does not belong to the complex: " + cube_text(r));
  return it->second;
}

const Cube& CubicalComplex::cell_at(int grade, std::size_t index) const {
  if (!embedded_) fail("cube access on an abstract complex");
  require_grade(grade);
  return cells_[static_cast<std::size_t>(grade)].at(index);
}

std::size_t CubicalComplex::cell_index(const std::string& id) const {
  if (embedded_) fail("id lookup on an embedded complex");
  auto it = abstract_index_.find(id);
  if (it == abstract_index_.end()) fail("unknown cell id: " + id);
  const auto& c = abstract_cells_[it->second];
  const auto& level = abstract_by_grade_[static_cast<std::size_t>(c.grade)];
  return static_cast<std::size_t>(std::find(level.begin(), level.end(), it->second) -
                                  level.begin());
}

const std::vector<std::vector<CubicalComplex::Slot>>& CubicalComplex::incidence(
    int grade) const {
  require_grade(grade);
  if (grade == 0) {
    static const std::vector<std::vector<Slot>> empty;
    return empty;
  }
  if (!dangling_.empty()) fail("complex has unresolved references; run validate()");
  return slots_[static_cast<std::size_t>(grade)];
}

IntegerChain CubicalComplex::boundary_chain(const IntegerChain& chain) const {
  if (chain.grade == 0) {
    // Vertices bound nothing: the grade-0 boundary is the zero map.
    for (const auto& [idx, coef] : chain.terms) {
      if (idx >= cell_count(0)) fail("chain refers to a cell outside the complex");
      (void)coef;
    }
    return IntegerChain{0, {}};
  }
  if (chain.grade < 0 || chain.grade > top_grade_) {
    if (chain.terms.empty()) return IntegerChain{std::max(chain.grade - 1, 0), {}};
    fail("chain grade out of range for this complex");
  }
  const auto& level = incidence(chain.grade);
  IntegerChain out{chain.grade - 1, {}};
  for (const auto& [idx, coef] : chain.terms) {
    if (idx >= level.size()) fail("chain refers to a cell outside the complex");
    for (const auto& [sign, face] : level[idx]) {
      auto [it, fresh] = out.terms.try_emplace(face, 0);
      it->second += sign * coef;
      if (it->second == 0) out.terms.erase(it);
      (void)fresh;
    }
  }
  return out;
}

IntegerChain CubicalComplex::chain(
    const std::vector<std::pair<long long, Cube>>& terms) const {
  if (!embedded_) fail("cube chain on an abstract complex");
  if (terms.empty()) return IntegerChain{0, {}};
  IntegerChain out{terms.front().second.grade(), {}};
  for (const auto& [coef, cube] : terms) {
    if (cube.grade() != out.grade) fail("chain mixes grades");
    if (coef == 0) continue;
    auto [it, fresh] = out.terms.try_emplace(cell_index(cube), 0);
    it->second += coef;
    if (it->second == 0) out.terms.erase(it);
    (void)fresh;
  }
  return out;
}

IntegerChain CubicalComplex::chain_ids(
    int grade, const std::vector<std::pair<long long, std::string>>& terms) const {
  if (embedded_) fail("id chain on an embedded complex");
  IntegerChain out{grade, {}};
  for (const auto& [coef, id] : terms) {
    auto it = abstract_index_.find(id);
    if (it == abstract_index_.end()) fail("unknown cell id: " + id);
    if (abstract_cells_[it->second].grade != grade) fail("chain mixes grades");
    if (coef == 0) continue;
    auto [slot, fresh] = out.terms.try_emplace(cell_index(id), 0);
    slot->second += coef;
    if (slot->second == 0) out.terms.erase(slot);
    (void)fresh;
  }
  return out;
}

Diagnostics CubicalComplex::validate() const {
  Diagnostics d;
  d.dangling_references = dangling_;

  if (embedded_) {
    std::set<Cube> seen;
    for (const auto& g : generators_) {
      const Cube r = reduced(g);
      if (!seen.insert(r).second) d.duplicate_cells.push_back(cube_text(r));
    }
  }

  // delta-delta = 0 as a matrix identity over the raw incidence.
  if (dangling_.empty()) {
    for (int k = 2; k <= top_grade_; ++k) {
      const auto& upper = incidence(k);
      const auto& lower = incidence(k - 1);
      for (const auto& cell_slots : upper) {
        std::map<std::size_t, long long> acc;
        for (const auto& [s, mid] : cell_slots) {
          for (const auto& [s2, bottom] : lower[mid]) acc[bottom] += s * s2;
        }
        for (const auto& [bottom, v] : acc) {
          if (v != 0) {
            d.boundary_squares_to_zero = false;
            break;
          }
          (void)bottom;
        }
        if (!d.boundary_squares_to_zero) break;
      }
      if (!d.boundary_squares_to_zero) break;
    }
  }

  // Coface multiplicity of (top-1)-faces among top cells, and chain
  // connectivity of the top cells through those faces.
  if (dangling_.empty() && top_grade_ >= 1) {
    const auto& top = incidence(top_grade_);
    std::map<std::size_t, std::vector<std::size_t>> cofaces;
    for (std::size_t c = 0; c < top.size(); ++c) {
      for (const auto& [s, f] : top[c]) {
        cofaces[f].push_back(c);
        (void)s;
      }
    }
    for (const auto& [f, cs] : cofaces) {
      // A +1/-1 pair from the same cell is a periodic self-identification,
      // not a triple incidence; count distinct raw entries.
      if (cs.size() > 2) {
        d.overfull_faces.push_back(cell_label(top_grade_ - 1, f));
      }
    }
    if (!top.empty()) {
      std::vector<char> seen(top.size(), 0);
      std::deque<std::size_t> queue{0};
      seen[0] = 1;
      std::size_t reached = 1;
      while (!queue.empty()) {
        const std::size_t c = queue.front();
        queue.pop_front();
        for (const auto& [s, f] : top[c]) {
          for (std::size_t other : cofaces[f]) {
            if (!seen[other]) {
              seen[other] = 1;
              ++reached;
              queue.push_back(other);
            }
          }
          (void)s;
        }
      }
      d.top_connected = reached == top.size();
    }
  }
  return d;
}

std::vector<std::vector<long long>> boundary_matrix(const CubicalComplex& cx, int k) {
  if (k < 0 || k > cx.top_grade()) {
    throw std::invalid_argument("boundary grade out of range");
  }
  const std::size_t rows = k == 0 ? 0 : cx.cell_count(k - 1);
  const std::size_t cols = cx.cell_count(k);
  std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols, 0));
  if (k == 0) return m;
  const auto& level = cx.incidence(k);
  for (std::size_t c = 0; c < cols; ++c) {
    for (const auto& [sign, face] : level[c]) m[face][c] += sign;
  }
  return m;
}

CubicalComplex subdivide(const CubicalComplex& cx, int axis) {
  if (!cx.is_embedded()) {
    throw std::invalid_argument("subdivision needs an embedded complex");
  }
  if (axis < 1 || axis > cx.dimension()) {
    throw std::invalid_argument("subdivision axis out of range");
  }
  const std::size_t a = static_cast<std::size_t>(axis) - 1;
  std::vector<long long> moduli = cx.moduli();
  if (moduli[a] > 0) moduli[a] *= 2;
  std::vector<Cube> gens;
  for (const auto& g : cx.generators()) {
    Cube scaled = g;
    scaled.base[a] *= 2;
    if (subset_contains(g.axes, axis)) {
      Cube second = scaled;
      second.base[a] += 1;
      gens.push_back(std::move(scaled));
      gens.push_back(std::move(second));
    } else {
      gens.push_back(std::move(scaled));
    }
  }
  return CubicalComplex::embedded(cx.dimension(), std::move(moduli), std::move(gens));
}

}  // namespace ptope

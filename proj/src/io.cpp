#include "ptope/io.hpp"

#include "ptope/errors.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ptope {

std::string format_double(double v) {
  // Shortest %g rendering that parses back to the same double; ties go to
  // the lowest precision, so output is deterministic.
  char buf[64];
  std::string best;
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v && (best.empty() || std::strlen(buf) < best.size())) {
      best = buf;
    }
  }
  if (best.empty()) best = buf;
  return best;
}

namespace {

struct Doc {
  std::vector<std::pair<int, std::string>> lines;
  std::size_t pos = 0;

  bool done() const { return pos >= lines.size(); }
  int here() const { return done() ? 0 : lines[pos].first; }
};

Doc load(std::istream& in) {
  Doc doc;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    doc.lines.emplace_back(lineno, line);
  }
  return doc;
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

long long to_ll(const std::string& tok, int line) {
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(tok.c_str(), &end, 10);
  if (end != tok.c_str() + tok.size() || tok.empty() || errno == ERANGE) {
    throw ParseError("expected an integer, got '" + tok + "'", line);
  }
  return v;
}

int to_int(const std::string& tok, int line) {
  long long v = to_ll(tok, line);
  if (v < -1000000000LL || v > 1000000000LL) {
    throw ParseError("integer out of range: '" + tok + "'", line);
  }
  return static_cast<int>(v);
}

double to_double(const std::string& tok, int line) {
  char* end = nullptr;
  double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size() || tok.empty()) {
    throw ParseError("expected a number, got '" + tok + "'", line);
  }
  return v;
}

int read_dim_header(Doc& doc) {
  if (doc.done()) throw ParseError("empty input, expected a 'dim' header");
  auto [line, text] = doc.lines[doc.pos];
  auto tok = tokens(text);
  if (tok.size() != 2 || tok[0] != "dim") {
    throw ParseError("expected 'dim <n>'", line);
  }
  int n = to_int(tok[1], line);
  if (n < 1) throw ParseError("dimension must be >= 1", line);
  ++doc.pos;
  return n;
}

SubsetKey parse_axes(const std::vector<std::string>& toks, std::size_t from, int n,
                     int line) {
  SubsetKey axes;
  for (std::size_t t = from; t < toks.size(); ++t) {
    int a = to_int(toks[t], line);
    if (a < 1 || a > n) throw ParseError("axis out of range", line);
    if (!axes.empty() && axes.back() >= a) {
      throw ParseError("axes must be strictly increasing", line);
    }
    axes.push_back(a);
  }
  return axes;
}

CubicalComplex finish_complex(int n, bool saw_periodic,
                              std::vector<long long> moduli,
                              std::vector<Cube> cubes, bool embedded_mode,
                              std::vector<CubicalComplex::AbstractCell> cells,
                              bool abstract_mode) {
  try {
    if (abstract_mode) {
      auto cx = CubicalComplex::abstract(std::move(cells));
      if (cx.dimension() != n) {
        throw ParseError("'dim' does not match the top cell grade");
      }
      return cx;
    }
    (void)embedded_mode;
    if (!saw_periodic) moduli.assign(n, 0);
    return CubicalComplex::embedded(n, std::move(moduli), std::move(cubes));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

CubicalComplex read_complex_impl(Doc& doc, double* scale_out) {
  int n = read_dim_header(doc);
  bool saw_periodic = false, embedded_mode = false, abstract_mode = false;
  bool saw_scale = false;
  std::vector<long long> moduli;
  std::vector<Cube> cubes;
  std::vector<CubicalComplex::AbstractCell> cells;
  std::map<std::string, std::size_t> cell_slot;

  for (; !doc.done(); ++doc.pos) {
    auto [line, text] = doc.lines[doc.pos];
    auto tok = tokens(text);
    const std::string& kw = tok[0];

    if (kw == "periodic") {
      if (saw_periodic || embedded_mode || abstract_mode) {
        throw ParseError("'periodic' must appear once, before any cell", line);
      }
      if (tok.size() != static_cast<std::size_t>(n) + 1) {
        throw ParseError("'periodic' needs one modulus per axis", line);
      }
      for (int d = 0; d < n; ++d) {
        long long p = to_ll(tok[d + 1], line);
        if (p < 0) throw ParseError("periodic moduli must be >= 0", line);
        moduli.push_back(p);
      }
      saw_periodic = true;
    } else if (kw == "scale") {
      if (scale_out == nullptr) throw ParseError("unexpected 'scale' line", line);
      if (saw_scale) throw ParseError("duplicate 'scale' line", line);
      if (tok.size() != 2) throw ParseError("expected 'scale <h>'", line);
      *scale_out = to_double(tok[1], line);
      if (!(*scale_out > 0.0)) throw ParseError("scale must be positive", line);
      saw_scale = true;
    } else if (kw == "cube") {
      if (abstract_mode) throw ParseError("cannot mix 'cube' and 'cell' lines", line);
      embedded_mode = true;
      std::size_t colon = 0;
      while (colon < tok.size() && tok[colon] != ":") ++colon;
      if (colon != static_cast<std::size_t>(n) + 1) {
        throw ParseError("expected 'cube <n base coordinates> : <axes>'", line);
      }
      Cube c;
      for (int d = 0; d < n; ++d) c.base.push_back(to_ll(tok[d + 1], line));
      c.axes = parse_axes(tok, colon + 1, n, line);
      cubes.push_back(std::move(c));
    } else if (kw == "cell") {
      if (embedded_mode) throw ParseError("cannot mix 'cube' and 'cell' lines", line);
      abstract_mode = true;
      if (tok.size() != 3) throw ParseError("expected 'cell <grade> <id>'", line);
      int grade = to_int(tok[1], line);
      if (grade < 0) throw ParseError("cell grade must be >= 0", line);
      if (cell_slot.count(tok[2])) {
        throw ParseError("duplicate cell id '" + tok[2] + "'", line);
      }
      cell_slot[tok[2]] = cells.size();
      cells.push_back({grade, tok[2], {}});
    } else if (kw == "face") {
      if (!abstract_mode) throw ParseError("'face' before any 'cell'", line);
      if (tok.size() != 4) throw ParseError("expected 'face <id> <sign> <face-id>'", line);
      auto it = cell_slot.find(tok[1]);
      if (it == cell_slot.end()) {
        throw ParseError("face refers to undeclared cell '" + tok[1] + "'", line);
      }
      int sign = to_int(tok[2], line);
      if (sign != 1 && sign != -1) throw ParseError("face sign must be +1 or -1", line);
      cells[it->second].faces.emplace_back(sign, tok[3]);
    } else {
      throw ParseError("unknown directive '" + kw + "'", line);
    }
  }
  if (scale_out != nullptr && !saw_scale) {
    throw ParseError("missing 'scale' line");
  }
  return finish_complex(n, saw_periodic, std::move(moduli), std::move(cubes),
                        embedded_mode, std::move(cells), abstract_mode);
}

void write_complex_body(std::ostream& out, const CubicalComplex& cx) {
  out << "dim " << cx.dimension() << "\n";
  if (cx.is_embedded()) {
    bool periodic = false;
    for (long long p : cx.moduli()) periodic = periodic || p != 0;
    if (periodic) {
      out << "periodic";
      for (long long p : cx.moduli()) out << ' ' << p;
      out << "\n";
    }
  }
}

void write_complex_cells(std::ostream& out, const CubicalComplex& cx) {
  if (cx.is_embedded()) {
    for (const Cube& c : cx.generators()) {
      out << "cube";
      for (long long b : c.base) out << ' ' << b;
      out << " :";
      for (int a : c.axes) out << ' ' << a;
      out << "\n";
    }
  } else {
    for (const auto& cell : cx.abstract_cells()) {
      out << "cell " << cell.grade << ' ' << cell.id << "\n";
    }
    for (const auto& cell : cx.abstract_cells()) {
      for (const auto& [sign, ref] : cell.faces) {
        out << "face " << cell.id << ' ' << (sign > 0 ? "+1" : "-1") << ' ' << ref
            << "\n";
      }
    }
  }
}

template <class Reader>
auto from_file(const std::string& path, Reader&& reader) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return reader(in);
}

}  // namespace

CubicalComplex read_complex(std::istream& in) {
  Doc doc = load(in);
  return read_complex_impl(doc, nullptr);
}

CubicalComplex read_complex_file(const std::string& path) {
  return from_file(path, [](std::istream& in) { return read_complex(in); });
}

void write_complex(std::ostream& out, const CubicalComplex& cx) {
  write_complex_body(out, cx);
  write_complex_cells(out, cx);
}

std::string complex_text(const CubicalComplex& cx) {
  std::ostringstream out;
  write_complex(out, cx);
  return out.str();
}

ScaledRegion read_region(std::istream& in) {
  Doc doc = load(in);
  double h = 0.0;
  CubicalComplex cx = read_complex_impl(doc, &h);
  return {std::move(cx), h};
}

ScaledRegion read_region_file(const std::string& path) {
  return from_file(path, [](std::istream& in) { return read_region(in); });
}

void write_region(std::ostream& out, const ScaledRegion& region) {
  write_complex_body(out, region.complex);
  out << "scale " << format_double(region.h) << "\n";
  write_complex_cells(out, region.complex);
}

namespace {

// Shared row shape `J : coef e1 .. en ...` for form files and polynomial
// grid sections.
void parse_form_row(const std::string& text, int line, int n, int m,
                    std::map<SubsetKey, Polynomial>& into) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ParseError("expected '<indices> : <monomials>'", line);
  }
  auto left = tokens(text.substr(0, colon));
  SubsetKey key;
  for (const auto& t : left) {
    int a = to_int(t, line);
    if (a < 1 || a > n) throw ParseError("form index out of range", line);
    if (!key.empty() && key.back() >= a) {
      throw ParseError("form indices must be strictly increasing", line);
    }
    key.push_back(a);
  }
  if (static_cast<int>(key.size()) != m) {
    throw ParseError("index count does not match the grade", line);
  }
  if (into.count(key)) throw ParseError("duplicate coefficient row", line);

  auto right = tokens(text.substr(colon + 1));
  if (right.size() % (static_cast<std::size_t>(n) + 1) != 0) {
    throw ParseError("each monomial needs a coefficient and one exponent per axis",
                     line);
  }
  std::vector<Monomial> terms;
  for (std::size_t t = 0; t < right.size(); t += n + 1) {
    Monomial mono;
    mono.coef = to_double(right[t], line);
    for (int d = 0; d < n; ++d) {
      int e = to_int(right[t + 1 + d], line);
      if (e < 0) throw ParseError("exponents must be nonnegative", line);
      mono.exponents.push_back(e);
    }
    terms.push_back(std::move(mono));
  }
  into.emplace(std::move(key), Polynomial(n, std::move(terms)));
}

}  // namespace

FormField PolyForm::field() const {
  auto table = coeffs;
  return FormField(n, m, [table](const Point& x, const SubsetKey& j) {
    auto it = table.find(j);
    return it == table.end() ? 0.0 : it->second.eval(x);
  });
}

PolyForm read_form(std::istream& in) {
  Doc doc = load(in);
  PolyForm form;
  form.n = read_dim_header(doc);
  if (doc.done()) throw ParseError("expected 'grade <m>'");
  {
    auto [line, text] = doc.lines[doc.pos];
    auto tok = tokens(text);
    if (tok.size() != 2 || tok[0] != "grade") {
      throw ParseError("expected 'grade <m>'", line);
    }
    form.m = to_int(tok[1], line);
    if (form.m < 0 || form.m > form.n) {
      throw ParseError("grade must lie in 0..dim", line);
    }
    ++doc.pos;
  }
  for (; !doc.done(); ++doc.pos) {
    auto [line, text] = doc.lines[doc.pos];
    parse_form_row(text, line, form.n, form.m, form.coeffs);
  }
  return form;
}

PolyForm read_form_file(const std::string& path) {
  return from_file(path, [](std::istream& in) { return read_form(in); });
}

void write_form(std::ostream& out, const PolyForm& form) {
  out << "dim " << form.n << "\n";
  out << "grade " << form.m << "\n";
  for (const auto& [key, poly] : form.coeffs) {
    for (int a : key) out << a << ' ';
    out << ':';
    for (const auto& t : poly.terms) {
      out << ' ' << format_double(t.coef);
      for (int e : t.exponents) out << ' ' << e;
    }
    out << "\n";
  }
}

namespace {

std::vector<double> read_numbers(Doc& doc, std::size_t count) {
  std::vector<double> vals;
  vals.reserve(count);
  for (; !doc.done(); ++doc.pos) {
    auto [line, text] = doc.lines[doc.pos];
    for (const auto& t : tokens(text)) {
      if (vals.size() == count) throw ParseError("more samples than the grid holds", line);
      vals.push_back(to_double(t, line));
    }
  }
  if (vals.size() != count) {
    throw ParseError("expected " + std::to_string(count) + " samples, got " +
                     std::to_string(vals.size()));
  }
  return vals;
}

GridSpec read_grid_header(Doc& doc) {
  int n = read_dim_header(doc);
  auto take = [&](const std::string& kw, std::size_t extra) {
    if (doc.done()) throw ParseError("expected '" + kw + "'");
    auto [line, text] = doc.lines[doc.pos];
    auto tok = tokens(text);
    if (tok.empty() || tok[0] != kw || tok.size() != extra + 1) {
      throw ParseError("expected '" + kw + "' with " + std::to_string(extra) +
                           " value(s)",
                       line);
    }
    ++doc.pos;
    return std::make_pair(line, tok);
  };
  auto [oline, otok] = take("origin", n);
  std::vector<double> origin;
  for (int d = 0; d < n; ++d) origin.push_back(to_double(otok[d + 1], oline));
  auto [sline, stok] = take("spacing", 1);
  double h = to_double(stok[1], sline);
  auto [eline, etok] = take("extents", n);
  std::vector<int> extents;
  for (int d = 0; d < n; ++d) extents.push_back(to_int(etok[d + 1], eline));
  try {
    return GridSpec(n, std::move(origin), h, std::move(extents));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), sline);
  }
}

}  // namespace

FlowInput read_grid(std::istream& in) {
  Doc doc = load(in);
  GridSpec spec = read_grid_header(doc);
  if (doc.done()) throw ParseError("expected 'values', 'components', or 'form'");
  auto [line, text] = doc.lines[doc.pos];
  auto tok = tokens(text);
  FlowInput out;

  if (tok.size() == 1 && tok[0] == "values") {
    ++doc.pos;
    out.scalar = ScalarGridField(spec, read_numbers(doc, spec.size()));
  } else if (tok.size() == 1 && tok[0] == "components") {
    ++doc.pos;
    auto flat = read_numbers(doc, spec.size() * static_cast<std::size_t>(spec.n));
    std::vector<std::vector<double>> comps(spec.n);
    for (int d = 0; d < spec.n; ++d) {
      comps[d].assign(flat.begin() + d * spec.size(),
                      flat.begin() + (d + 1) * spec.size());
    }
    out.covector = CovectorGridField(spec, std::move(comps));
  } else if (tok.size() == 2 && tok[0] == "form") {
    int m = to_int(tok[1], line);
    if (m != 0 && m != 1) {
      throw ParseError("grid polynomial sections must have grade 0 or 1", line);
    }
    ++doc.pos;
    std::map<SubsetKey, Polynomial> rows;
    for (; !doc.done(); ++doc.pos) {
      auto [rline, rtext] = doc.lines[doc.pos];
      parse_form_row(rtext, rline, spec.n, m, rows);
    }
    auto value_of = [&rows](const SubsetKey& key, const Point& x) {
      auto it = rows.find(key);
      return it == rows.end() ? 0.0 : it->second.eval(x);
    };
    if (m == 0) {
      out.scalar = ScalarGridField::sampled(
          spec, [&](const Point& x) { return value_of({}, x); });
    } else {
      out.covector = CovectorGridField::sampled(spec, [&](const Point& x) {
        std::vector<double> v(spec.n);
        for (int d = 0; d < spec.n; ++d) v[d] = value_of({d + 1}, x);
        return v;
      });
    }
  } else {
    throw ParseError("expected 'values', 'components', or 'form <grade>'", line);
  }
  return out;
}

FlowInput read_grid_file(const std::string& path) {
  return from_file(path, [](std::istream& in) { return read_grid(in); });
}

namespace {

void write_grid_header(std::ostream& out, const GridSpec& g) {
  out << "dim " << g.n << "\n";
  out << "origin";
  for (double o : g.origin) out << ' ' << format_double(o);
  out << "\nspacing " << format_double(g.h) << "\nextents";
  for (int e : g.extents) out << ' ' << e;
  out << "\n";
}

void write_samples(std::ostream& out, const GridSpec& g,
                   const std::vector<double>& vals) {
  const int row = g.extents[g.n - 1];
  for (std::size_t f = 0; f < vals.size(); ++f) {
    out << format_double(vals[f]);
    out << (static_cast<int>(f) % row == row - 1 ? '\n' : ' ');
  }
}

}  // namespace

void write_grid(std::ostream& out, const ScalarGridField& field) {
  write_grid_header(out, field.grid);
  out << "values\n";
  write_samples(out, field.grid, field.values);
}

void write_grid(std::ostream& out, const CovectorGridField& field) {
  write_grid_header(out, field.grid);
  out << "components\n";
  for (const auto& comp : field.components) write_samples(out, field.grid, comp);
}

FrameworkFile read_framework(std::istream& in) {
  Doc doc = load(in);
  if (doc.done()) throw ParseError("empty input, expected 'n <int>'");
  FrameworkFile file;
  {
    auto [line, text] = doc.lines[doc.pos];
    auto tok = tokens(text);
    if (tok.size() != 2 || tok[0] != "n") throw ParseError("expected 'n <int>'", line);
    file.n = to_int(tok[1], line);
    if (file.n < 1) throw ParseError("n must be >= 1", line);
    ++doc.pos;
  }
  if (doc.done()) throw ParseError("expected 'sum' or 'graph'");
  auto [line, text] = doc.lines[doc.pos];
  auto tok = tokens(text);

  if (tok[0] == "sum") {
    ++doc.pos;
    if (!doc.done()) throw ParseError("'sum' must be the last line", doc.here());
    std::vector<Composition> comps;
    std::string rest = text.substr(text.find("sum") + 3);
    std::size_t i = 0;
    while (i < rest.size()) {
      if (std::isspace(static_cast<unsigned char>(rest[i]))) {
        ++i;
      } else if (rest[i] == '(') {
        auto close = rest.find(')', i);
        if (close == std::string::npos) throw ParseError("unclosed '('", line);
        std::vector<int> parts;
        for (const auto& t : tokens(rest.substr(i + 1, close - i - 1))) {
          parts.push_back(to_int(t, line));
        }
        if (parts.empty()) throw ParseError("empty composition '()'", line);
        try {
          comps.push_back(Composition(parts));
        } catch (const std::invalid_argument& e) {
          throw ParseError(e.what(), line);
        }
        i = close + 1;
      } else {
        throw ParseError("unexpected character in sum expression", line);
      }
    }
    try {
      file.sum = make_sum(file.n, comps);
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what(), line);
    }
  } else if (tok[0] == "graph") {
    if (tok.size() != 1) throw ParseError("expected bare 'graph'", line);
    ++doc.pos;
    FrameworkGraph g;
    g.n = file.n;
    for (; !doc.done(); ++doc.pos) {
      auto [eline, etext] = doc.lines[doc.pos];
      auto etok = tokens(etext);
      if (etok.size() != 4 || etok[0] != "edge") {
        throw ParseError("expected 'edge <u> <v> <class>'", eline);
      }
      FrameworkEdge e{to_int(etok[1], eline), to_int(etok[2], eline),
                      to_int(etok[3], eline)};
      g.vertices.insert(e.u);
      g.vertices.insert(e.v);
      g.edges.push_back(e);
    }
    file.graph = std::move(g);
  } else {
    throw ParseError("expected 'sum' or 'graph'", line);
  }
  return file;
}

FrameworkFile read_framework_file(const std::string& path) {
  return from_file(path, [](std::istream& in) { return read_framework(in); });
}

void write_framework(std::ostream& out, const FrameworkSum& sum) {
  out << "n " << sum.n << "\nsum";
  for (const auto& term : sum.terms) {
    out << " (";
    for (std::size_t i = 0; i < term.size(); ++i) {
      if (i) out << ' ';
      out << term[i];
    }
    out << ')';
  }
  out << "\n";
}

void write_framework(std::ostream& out, const FrameworkGraph& graph) {
  out << "n " << graph.n << "\ngraph\n";
  for (const auto& e : graph.edges) {
    out << "edge " << e.u << ' ' << e.v << ' ' << e.cls << "\n";
  }
}

}  // namespace ptope

// Batch driver: wires the text file formats to the library operations and
// prints deterministic reports. Exit codes: 0 ok, 1 tolerance exceeded,
// 2 parse error, 3 semantic error, 4 numeric degeneracy.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ptope/errors.hpp"
#include "ptope/flows.hpp"
#include "ptope/forms.hpp"
#include "ptope/frameworks.hpp"
#include "ptope/homology.hpp"
#include "ptope/io.hpp"

using namespace ptope;

namespace {

struct Report {
  bool machine = false;
  std::ostringstream text;

  void kv(const std::string& key, const std::string& value) {
    text << key << '=' << value << "\n";
  }
  void line(const std::string& s) { text << s << "\n"; }
};

std::string fnv1a_hex(const std::string& bytes) {
  unsigned long long h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

// Reads the whole file once so the digest and the parsed value come from
// the same bytes.
std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fixed(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string num(const Report& r, double v) { return r.machine ? format_double(v) : fixed(v); }

void echo_command(Report& r, const std::string& name) {
  if (r.machine) {
    r.kv("command", name);
  } else {
    r.line("command: " + name);
  }
}

void echo_input(Report& r, const std::string& path, const std::string& bytes) {
  if (r.machine) {
    r.kv("input.digest", fnv1a_hex(bytes));
  } else {
    r.line("input: " + path + " fnv1a=" + fnv1a_hex(bytes));
  }
}

std::vector<std::string> diag_problems(const Diagnostics& d) {
  std::vector<std::string> out;
  for (const auto& id : d.duplicate_cells) out.push_back("duplicate cell: " + id);
  for (const auto& id : d.dangling_references) out.push_back("dangling face: " + id);
  for (const auto& id : d.overfull_faces) out.push_back("overfull face: " + id);
  if (!d.boundary_squares_to_zero) out.push_back("boundary does not square to zero");
  return out;
}

std::string group_text(const GradeHomology& g) {
  std::string out;
  if (g.betti == 1) {
    out = "Z";
  } else if (g.betti > 1) {
    out = "Z^" + std::to_string(g.betti);
  }
  for (const auto& t : g.torsion) {
    if (!out.empty()) out += "+";
    out += "Z/" + t.str();
  }
  return out.empty() ? "0" : out;
}

void print_homology(Report& r, const CubicalComplex& cx) {
  HomologyResult hom = homology(cx);
  if (r.machine) {
    r.kv("grades", std::to_string(hom.grades.size()));
    for (std::size_t k = 0; k < hom.grades.size(); ++k) {
      const auto& g = hom.grades[k];
      r.kv("cells." + std::to_string(k), std::to_string(g.cells));
      r.kv("betti." + std::to_string(k), std::to_string(g.betti));
      std::string tor;
      for (const auto& t : g.torsion) {
        if (!tor.empty()) tor += ",";
        tor += t.str();
      }
      r.kv("torsion." + std::to_string(k), tor);
    }
    r.kv("euler", std::to_string(hom.euler_characteristic()));
    return;
  }
  std::string cells = "cells:";
  for (std::size_t k = 0; k < hom.grades.size(); ++k) {
    cells += " C" + std::to_string(k) + "=" + std::to_string(hom.grades[k].cells);
  }
  r.line(cells);
  r.line("euler: " + std::to_string(hom.euler_characteristic()));
  std::string groups;
  for (std::size_t k = 0; k < hom.grades.size(); ++k) {
    if (k) groups += " ";
    groups += "H" + std::to_string(k) + "=" + group_text(hom.grades[k]);
  }
  r.line(groups);
}

int run_homology(const std::string& path, Report& r) {
  std::string bytes = slurp(path);
  std::istringstream in(bytes);
  CubicalComplex cx = read_complex(in);
  auto diag = cx.validate();
  if (!diag.ok()) {
    for (const auto& p : diag_problems(diag)) std::cerr << p << "\n";
    return 3;
  }
  echo_command(r, "homology");
  echo_input(r, path, bytes);
  print_homology(r, cx);
  return 0;
}

int run_orient(const std::string& path, Report& r) {
  std::string bytes = slurp(path);
  std::istringstream in(bytes);
  CubicalComplex cx = read_complex(in);
  auto diag = cx.validate();
  if (!diag.ok()) {
    for (const auto& p : diag_problems(diag)) std::cerr << p << "\n";
    return 3;
  }
  echo_command(r, "orient");
  echo_input(r, path, bytes);
  OrientResult res = orient(cx);
  int top = cx.top_grade();
  if (r.machine) {
    r.kv("orientable", res.orientable ? "yes" : "no");
    if (res.orientable) {
      for (std::size_t i = 0; i < res.signs.size(); ++i) {
        r.kv("sign." + std::to_string(i), res.signs[i] > 0 ? "+1" : "-1");
      }
    } else {
      std::string w;
      for (std::size_t idx : res.witness) {
        if (!w.empty()) w += ",";
        w += std::to_string(idx);
      }
      r.kv("witness", w);
    }
    return 0;
  }
  if (!res.orientable) {
    r.line("NONORIENTABLE");
    std::string w = "witness:";
    for (std::size_t idx : res.witness) w += " " + cx.cell_label(top, idx);
    r.line(w);
    return 0;
  }
  r.line("orientable: yes");
  std::size_t width = 0;
  for (std::size_t i = 0; i < res.signs.size(); ++i) {
    width = std::max(width, cx.cell_label(top, i).size());
  }
  for (std::size_t i = 0; i < res.signs.size(); ++i) {
    std::string label = cx.cell_label(top, i);
    label.resize(width, ' ');
    r.line("  " + label + "  " + (res.signs[i] > 0 ? "+1" : "-1"));
  }
  return 0;
}

struct StokesArgs {
  std::string form_path, region_path;
  double h_override = 0.0;
  std::string mode = "discrete";
  double fd_step = 0.0;
  double tol = 0.0;
  bool has_tol = false;
};

int run_stokes(const StokesArgs& args, Report& r) {
  std::string form_bytes = slurp(args.form_path);
  std::string region_bytes = slurp(args.region_path);
  std::istringstream form_in(form_bytes), region_in(region_bytes);
  PolyForm pf = read_form(form_in);
  ScaledRegion region = read_region(region_in);
  double h = args.h_override > 0.0 ? args.h_override : region.h;
  StokesMode mode =
      args.mode == "analytic" ? StokesMode::analytic_fd : StokesMode::discrete;

  echo_command(r, "stokes");
  echo_input(r, args.form_path, form_bytes);
  echo_input(r, args.region_path, region_bytes);
  StokesResult res = stokes_check(pf.field(), region.complex, h, mode, args.fd_step);
  if (r.machine) {
    r.kv("mode", args.mode);
    r.kv("h", format_double(h));
    r.kv("interior", format_double(res.interior));
    r.kv("boundary", format_double(res.boundary));
    r.kv("difference", format_double(res.difference));
  } else {
    r.line("mode: " + args.mode);
    r.line("h: " + format_double(h));
    r.line("interior:   " + fixed(res.interior));
    r.line("boundary:   " + fixed(res.boundary));
    r.line("difference: " + fixed(res.difference));
  }
  if (args.has_tol) {
    bool ok = std::abs(res.difference) <= args.tol;
    if (r.machine) {
      r.kv("status", ok ? "ok" : "tolerance_exceeded");
    } else {
      r.line(ok ? "status: ok" : "status: tolerance exceeded");
    }
    if (!ok) return 1;
  }
  return 0;
}

// Framework arguments: either --file or an inline expression of
// parenthesized compositions, e.g. "(1 2) + (3)".
std::vector<Composition> parse_expr(const std::vector<std::string>& words) {
  std::string expr;
  for (const auto& w : words) expr += w + " ";
  std::vector<Composition> comps;
  std::size_t i = 0;
  while (i < expr.size()) {
    char c = expr[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '+') {
      ++i;
    } else if (c == '(') {
      auto close = expr.find(')', i);
      if (close == std::string::npos) throw ParseError("unclosed '(' in expression");
      std::istringstream parts(expr.substr(i + 1, close - i - 1));
      std::vector<int> p;
      int v;
      while (parts >> v) p.push_back(v);
      if (!parts.eof()) throw ParseError("composition parts must be integers");
      if (p.empty()) throw ParseError("empty composition '()'");
      comps.push_back(Composition(p));
      i = close + 1;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in expression");
    }
  }
  return comps;
}

std::string comp_text(const std::vector<int>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(parts[i]);
  }
  return out + ")";
}

std::string sum_text(const FrameworkSum& s) {
  if (s.terms.empty()) return "S^" + std::to_string(s.n);
  std::string out;
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    if (i) out += " + ";
    out += comp_text(s.terms[i]);
  }
  return out;
}

struct FrameworkArgs {
  std::vector<std::string> expr;
  std::string file;
  int n = 0;  // ambient dimension for an empty sum expression
};

FrameworkSum resolve_sum(const FrameworkArgs& args) {
  if (!args.file.empty()) {
    FrameworkFile f = read_framework_file(args.file);
    if (!f.sum.has_value()) {
      throw std::invalid_argument("file holds an explicit graph, not a sum");
    }
    return *f.sum;
  }
  auto comps = parse_expr(args.expr);
  int n = args.n;
  if (n == 0) {
    if (comps.empty()) {
      throw std::invalid_argument("an empty sum needs --n to fix the dimension");
    }
    n = comps[0].total();
  }
  return make_sum(n, comps);
}

int run_framework_build(const FrameworkArgs& args, Report& r) {
  echo_command(r, "framework build");
  FrameworkGraph g;
  std::string shown;
  if (!args.file.empty()) {
    FrameworkFile f = read_framework_file(args.file);
    if (f.graph.has_value()) {
      g = *f.graph;
      shown = "(from file)";
    } else if (f.sum->terms.size() == 1) {
      g = elementary_graph(Composition(f.sum->terms[0]));
      shown = comp_text(f.sum->terms[0]);
    } else {
      throw std::invalid_argument("build needs a single composition or a graph file");
    }
  } else {
    auto comps = parse_expr(args.expr);
    if (comps.size() != 1) {
      throw std::invalid_argument("build takes exactly one composition");
    }
    g = elementary_graph(comps[0]);
    shown = comp_text(comps[0].parts);
  }
  auto diag = validate_framework(g);
  if (r.machine) {
    r.kv("composition", shown);
    r.kv("vertices", std::to_string(g.vertices.size()));
    r.kv("edges", std::to_string(g.edges.size()));
    r.kv("valid", diag.valid() ? "yes" : "no");
  } else {
    r.line("composition: " + shown);
    r.line("vertices: " + std::to_string(g.vertices.size()));
    r.line("edges: " + std::to_string(g.edges.size()));
    r.line("valid: " + std::string(diag.valid() ? "yes" : "no"));
    std::ostringstream body;
    write_framework(body, g);
    r.text << body.str();
  }
  if (!diag.valid()) {
    for (const auto& p : diag.problems) std::cerr << p << "\n";
    return 3;
  }
  return 0;
}

int run_framework_sum(const FrameworkArgs& args, Report& r) {
  echo_command(r, "framework sum");
  FrameworkSum s = resolve_sum(args);
  if (r.machine) {
    r.kv("n", std::to_string(s.n));
    r.kv("terms", std::to_string(s.terms.size()));
    r.kv("sum", sum_text(s));
  } else {
    r.line("n: " + std::to_string(s.n));
    r.line("sum: " + sum_text(s));
  }
  return 0;
}

int run_framework_pi1(const FrameworkArgs& args, Report& r) {
  echo_command(r, "framework pi1");
  FrameworkSum s = resolve_sum(args);
  bool trivial = pi1_trivial(s);
  if (r.machine) {
    r.kv("sum", sum_text(s));
    r.kv("pi1", trivial ? "trivial" : "nontrivial");
  } else {
    r.line("sum: " + sum_text(s));
    r.line("pi1: " + std::string(trivial ? "trivial" : "nontrivial"));
  }
  return 0;
}

int run_framework_surface(const FrameworkArgs& args, Report& r) {
  echo_command(r, "framework surface");
  auto comps = parse_expr(args.expr);
  if (comps.size() != 1) {
    throw std::invalid_argument("surface takes exactly one composition");
  }
  CubicalComplex cx = surface_complex(comps[0]);
  if (r.machine) {
    r.kv("composition", comp_text(comps[0].parts));
  } else {
    r.line("composition: " + comp_text(comps[0].parts));
  }
  print_homology(r, cx);
  return 0;
}

struct FlowArgs {
  std::string path;
  std::vector<std::string> checks;
  double tol = 0.0;
  bool has_tol = false;
};

std::string node_text(const std::vector<int>& node) {
  if (node.empty()) return "-";
  std::string out = "(";
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(node[i]);
  }
  return out + ")";
}

std::string node_csv(const std::vector<int>& node) {
  std::string out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(node[i]);
  }
  return out;
}

int run_flow(const FlowArgs& args, Report& r) {
  std::string bytes = slurp(args.path);
  std::istringstream in(bytes);
  FlowInput fi = read_grid(in);

  std::vector<std::string> checks = args.checks;
  if (checks.empty()) {
    checks = fi.is_scalar() ? std::vector<std::string>{"closed", "divergence",
                                                       "holonomy", "laplacian",
                                                       "unit", "curvature"}
                            : std::vector<std::string>{"closed", "divergence",
                                                       "holonomy"};
  }
  echo_command(r, "flow");
  echo_input(r, args.path, bytes);
  if (r.machine) {
    r.kv("field", fi.is_scalar() ? "scalar" : "covector");
  } else {
    r.line(std::string("field: ") + (fi.is_scalar() ? "scalar" : "covector"));
  }

  std::optional<CovectorGridField> cov = fi.covector;
  if (fi.is_scalar()) cov = gradient_field(*fi.scalar);

  double worst = 0.0;
  auto residual_lines = [&](const std::string& key, const ResidualReport& rep) {
    worst = std::max(worst, rep.value);
    if (r.machine) {
      r.kv(key + ".max", format_double(rep.value));
      r.kv(key + ".node", node_csv(rep.node));
    } else {
      std::string label = key + ":";
      label.resize(12, ' ');
      r.line(label + num(r, rep.value) + " at " + node_text(rep.node));
    }
  };

  for (const auto& check : checks) {
    if (check == "closed") {
      residual_lines("closedness", closedness_residual(*cov));
    } else if (check == "divergence") {
      residual_lines("divergence", divergence_residual(*cov));
    } else if (check == "holonomy") {
      residual_lines("holonomy", holonomy_residual(*cov));
    } else if (check == "laplacian") {
      if (!fi.is_scalar()) {
        throw std::invalid_argument("check '" + check + "' needs a scalar field");
      }
      residual_lines("laplacian", laplacian_residual(*fi.scalar).report);
    } else if (check == "unit") {
      if (!fi.is_scalar()) {
        throw std::invalid_argument("check '" + check + "' needs a scalar field");
      }
      UnitFieldResult u = unit_field(*fi.scalar);
      if (u.excluded.size() == u.field.grid.size()) {
        throw DegeneracyError("the gradient vanishes at every node");
      }
      if (r.machine) {
        r.kv("unit.excluded", std::to_string(u.excluded.size()));
      } else {
        r.line("unit: excluded " + std::to_string(u.excluded.size()));
      }
    } else if (check == "curvature") {
      if (!fi.is_scalar()) {
        throw std::invalid_argument("check '" + check + "' needs a scalar field");
      }
      CurvatureResult c = mean_curvature(*fi.scalar);
      std::size_t usable = 0;
      double lo = 0.0, hi = 0.0;
      const GridSpec& g = c.field.grid;
      std::vector<bool> excluded_mask(g.size(), false);
      for (std::size_t f : c.excluded) excluded_mask[f] = true;
      for (std::size_t f = 0; f < g.size(); ++f) {
        if (!g.interior(g.unflat(f)) || excluded_mask[f]) continue;
        double v = c.field.values[f];
        if (usable == 0) {
          lo = hi = v;
        } else {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        ++usable;
      }
      if (usable == 0) {
        throw DegeneracyError("every interior node was excluded");
      }
      if (r.machine) {
        r.kv("curvature.min", format_double(lo));
        r.kv("curvature.max", format_double(hi));
        r.kv("curvature.nodes", std::to_string(usable));
        r.kv("curvature.excluded", std::to_string(c.excluded.size()));
      } else {
        r.line("curvature: min " + num(r, lo) + " max " + num(r, hi) + " nodes " +
               std::to_string(usable) + " excluded " +
               std::to_string(c.excluded.size()));
      }
    } else {
      throw std::invalid_argument("unknown check '" + check + "'");
    }
  }

  if (args.has_tol) {
    bool ok = worst <= args.tol;
    if (r.machine) {
      r.kv("status", ok ? "ok" : "tolerance_exceeded");
    } else {
      r.line(ok ? "status: ok" : "status: tolerance exceeded");
    }
    if (!ok) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubical homology, discrete forms, and framework tools"};
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--machine", machine, "line-oriented key=value output");

  std::string cx_path;
  auto* homology_cmd = app.add_subcommand("homology", "Betti numbers and torsion");
  homology_cmd->fallthrough();
  homology_cmd->add_option("complex", cx_path, "complex file")->required();

  std::string orient_path;
  auto* orient_cmd = app.add_subcommand("orient", "orient the top-grade cells");
  orient_cmd->fallthrough();
  orient_cmd->add_option("complex", orient_path, "complex file")->required();

  StokesArgs stokes;
  auto* stokes_cmd = app.add_subcommand("stokes", "compare interior and boundary sums");
  stokes_cmd->fallthrough();
  stokes_cmd->set_help_flag("--help", "print help");  // frees -h for the step size
  stokes_cmd->add_option("form", stokes.form_path, "form file")->required();
  stokes_cmd->add_option("region", stokes.region_path, "region file")->required();
  stokes_cmd->add_option("--h", stokes.h_override, "override the region scale");
  stokes_cmd->add_option("--mode", stokes.mode, "discrete|analytic")
      ->check(CLI::IsMember({"discrete", "analytic"}));
  stokes_cmd->add_option("--fd-step", stokes.fd_step, "finite-difference step");
  auto* stokes_tol = stokes_cmd->add_option("--tol", stokes.tol, "maximum |difference|");

  auto* fw_cmd = app.add_subcommand("framework", "edge-colored framework tools");
  fw_cmd->fallthrough();
  fw_cmd->require_subcommand(1);
  FrameworkArgs fw;
  auto add_fw_sub = [&](const char* name, const char* help) {
    auto* sub = fw_cmd->add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("expr", fw.expr, "composition expression, e.g. \"(1 2) + (3)\"");
    sub->add_option("--file", fw.file, "framework file");
    sub->add_option("--n", fw.n, "dimension for an empty sum");
    return sub;
  };
  auto* fw_build = add_fw_sub("build", "elementary framework of one composition");
  auto* fw_sum = add_fw_sub("sum", "canonical connected sum");
  auto* fw_pi1 = add_fw_sub("pi1", "simply-connected test");
  auto* fw_surface = add_fw_sub("surface", "surface complex homology");

  FlowArgs flow;
  auto* flow_cmd = app.add_subcommand("flow", "grid field residual checks");
  flow_cmd->fallthrough();
  flow_cmd->add_option("grid", flow.path, "grid file")->required();
  flow_cmd->add_option("--checks", flow.checks,
                       "subset of closed divergence holonomy laplacian unit curvature");
  auto* flow_tol = flow_cmd->add_option("--tol", flow.tol, "maximum residual");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  stokes.has_tol = stokes_tol->count() > 0;
  flow.has_tol = flow_tol->count() > 0;

  Report report;
  report.machine = machine;
  int status = 0;
  try {
    if (homology_cmd->parsed()) {
      status = run_homology(cx_path, report);
    } else if (orient_cmd->parsed()) {
      status = run_orient(orient_path, report);
    } else if (stokes_cmd->parsed()) {
      status = run_stokes(stokes, report);
    } else if (fw_cmd->parsed()) {
      if (fw_build->parsed()) status = run_framework_build(fw, report);
      if (fw_sum->parsed()) status = run_framework_sum(fw, report);
      if (fw_pi1->parsed()) status = run_framework_pi1(fw, report);
      if (fw_surface->parsed()) status = run_framework_surface(fw, report);
    } else if (flow_cmd->parsed()) {
      status = run_flow(flow, report);
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const DegeneracyError& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 3;
  }
  std::cout << report.text.str();
  return status;
}

#pragma once

#include "ptope/cubical.hpp"
#include "ptope/flows.hpp"
#include "ptope/forms.hpp"
#include "ptope/frameworks.hpp"
#include "ptope/polynomial.hpp"

#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace ptope {

/// Shortest decimal string that parses back to exactly this double.
std::string format_double(double v);

// Complex files: `dim n`, optional `periodic p1 .. pn`, then either
// `cube b1 .. bn : axes` generator lines or `cell <grade> <id>` plus
// `face <id> <sign> <face-id>` lines. The writer's output reads back to
// an equal complex and re-writes byte-identically.
CubicalComplex read_complex(std::istream& in);
CubicalComplex read_complex_file(const std::string& path);
void write_complex(std::ostream& out, const CubicalComplex& cx);
std::string complex_text(const CubicalComplex& cx);

/// A complex together with the lattice scale: `scale h` in the file.
struct ScaledRegion {
  CubicalComplex complex;
  double h = 1.0;
};

ScaledRegion read_region(std::istream& in);
ScaledRegion read_region_file(const std::string& path);
void write_region(std::ostream& out, const ScaledRegion& region);

// Form files: `dim n`, `grade m`, then per-subset polynomial rows
// `J : coef e1 .. en  coef e1 .. en ...`.
struct PolyForm {
  int n = 0;
  int m = 0;
  std::map<SubsetKey, Polynomial> coeffs;

  FormField field() const;
};

PolyForm read_form(std::istream& in);
PolyForm read_form_file(const std::string& path);
void write_form(std::ostream& out, const PolyForm& form);

// Grid files: `dim n`, `origin ..`, `spacing h`, `extents ..`, then one of
//   `values`     + size scalar samples,
//   `components` + n blocks of samples (component-major), or
//   `form <0|1>` + form rows sampled onto the lattice.
struct FlowInput {
  std::optional<ScalarGridField> scalar;
  std::optional<CovectorGridField> covector;

  bool is_scalar() const { return scalar.has_value(); }
  const GridSpec& grid() const { return is_scalar() ? scalar->grid : covector->grid; }
};

FlowInput read_grid(std::istream& in);
FlowInput read_grid_file(const std::string& path);
void write_grid(std::ostream& out, const ScalarGridField& field);
void write_grid(std::ostream& out, const CovectorGridField& field);

// Framework files: `n <int>` then `sum (a b) (c) ...` or `graph` plus
// `edge u v class` lines.
struct FrameworkFile {
  int n = 0;
  std::optional<FrameworkSum> sum;
  std::optional<FrameworkGraph> graph;
};

FrameworkFile read_framework(std::istream& in);
FrameworkFile read_framework_file(const std::string& path);
void write_framework(std::ostream& out, const FrameworkSum& sum);
void write_framework(std::ostream& out, const FrameworkGraph& graph);

}  // namespace ptope

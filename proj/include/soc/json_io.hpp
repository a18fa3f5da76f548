#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "soc/algebra.hpp"
#include "soc/basechange.hpp"
#include "soc/spectral.hpp"

namespace soc {

// Insertion-ordered documents keep emission byte-deterministic.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Complex scalars are emitted as [re, im]; on input a bare number is accepted
// as a real scalar. Matrices are row-major:
//   {"rows": 2, "cols": 2, "entries": [[1.0,0.0], ...]}
Json complex_to_json(Cplx z);
Cplx complex_from_json(const Json& j);
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

Json operad_to_json(const ColoredOperad& p);
ColoredOperad operad_from_json(const Json& j);

Json digraph_to_json(const Digraph& g);
Digraph digraph_from_json(const Json& j);

// Algebras embed their operad on output. Input accepts either an inline
// "operad" object or "operad_ref" naming a built-in one ("trivial",
// "matrix_block", "nogo").
Json algebra_to_json(const PAlgebra& a);
PAlgebra algebra_from_json(const Json& j);

Json spectrum_to_json(const SpectrumSet& s);
Json validation_to_json(const ValidationReport& r);
Json decomposition_to_json(const SpectralDecomposition& d);
Json spectrum_object_to_json(const OperadicSpectrumObject& s);
Json analytic_to_json(const AnalyticSpectrum& s);
Json report_to_json(const TransportReport& r);

// Parses text and rewraps syntax errors as ParseError with line and column.
Json parse_json_text(const std::string& text);

// One payload per input document. Either a tagged wrapper
//   {"schema_version": 1, "kind": "algebra", "algebra": {...}}
// or a bare payload whose kind is inferred from its keys ("components" for
// algebras, "vertices" for networks, "colors" for operads).
struct ParsedInput {
  std::string kind;
  std::optional<PAlgebra> algebra;
  std::optional<Digraph> graph;
  std::optional<ColoredOperad> operad;
};

ParsedInput input_from_json(const Json& j);

// Small built-in inputs for demos and tests, served by name.
const std::vector<std::string>& fixture_names();
std::string fixture_text(const std::string& name);

}  // namespace soc

#include "soc/json_io.hpp"

#include <sstream>

namespace soc {

namespace {

[[noreturn]] void bad_input(const std::string& context,
                            const std::string& what) {
  throw ParseError(context + ": " + what);
}

const Json& field(const Json& j, const std::string& context,
                  const std::string& key) {
  if (!j.is_object() || !j.contains(key)) {
    bad_input(context, "missing '" + key + "'");
  }
  return j.at(key);
}

std::string string_field(const Json& j, const std::string& context,
                         const std::string& key) {
  const Json& v = field(j, context, key);
  if (!v.is_string()) bad_input(context, "'" + key + "' must be a string");
  return v.get<std::string>();
}

std::size_t size_field(const Json& j, const std::string& context,
                       const std::string& key) {
  const Json& v = field(j, context, key);
  if (!v.is_number_unsigned()) {
    bad_input(context, "'" + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::vector<std::string> string_list(const Json& j,
                                     const std::string& context) {
  if (!j.is_array()) bad_input(context, "expected an array of strings");
  std::vector<std::string> out;
  for (const Json& e : j) {
    if (!e.is_string()) bad_input(context, "expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

LinComb lincomb_from_json(const Json& j, const std::string& context) {
  if (!j.is_object()) bad_input(context, "expected an object of coefficients");
  LinComb out;
  for (const auto& [label, coeff] : j.items()) {
    out[label] = complex_from_json(coeff);
  }
  return out;
}

Json lincomb_to_json(const LinComb& c) {
  Json out = Json::object();
  for (const auto& [label, coeff] : c) out[label] = complex_to_json(coeff);
  return out;
}

ColoredOperad builtin_operad(const std::string& name,
                             const std::string& context) {
  if (name == "trivial") return trivial_operad();
  if (name == "matrix_block") return matrix_block_operad();
  if (name == "nogo") return nogo_witness_pair().first.operad;
  bad_input(context, "unknown operad_ref '" + name +
                         "' (known: trivial, matrix_block, nogo)");
}

}  // namespace

Json complex_to_json(Cplx z) { return Json::array({z.real(), z.imag()}); }

Cplx complex_from_json(const Json& j) {
  if (j.is_number()) return Cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Cplx(j[0].get<double>(), j[1].get<double>());
  }
  bad_input("complex scalar", "expected a number or [re, im]");
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json out = Json::object();
  out["rows"] = m.rows();
  out["cols"] = m.cols();
  Json entries = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      entries.push_back(complex_to_json(m.at(i, j)));
    }
  }
  out["entries"] = std::move(entries);
  return out;
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::string context = "matrix";
  const std::size_t rows = size_field(j, context, "rows");
  const std::size_t cols = size_field(j, context, "cols");
  if (rows == 0 || cols == 0) bad_input(context, "dimensions must be positive");
  const Json& entries = field(j, context, "entries");
  if (!entries.is_array() || entries.size() != rows * cols) {
    std::ostringstream os;
    os << "'entries' must be an array of " << rows * cols << " scalars";
    bad_input(context, os.str());
  }
  ComplexMatrix m(rows, cols);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t c = 0; c < cols; ++c) {
      m.at(i, c) = complex_from_json(entries[k++]);
    }
  }
  return m;
}

Json operad_to_json(const ColoredOperad& p) {
  Json out = Json::object();
  out["colors"] = p.colors;
  Json spaces = Json::array();
  for (const OperationSpace& sp : p.spaces) {
    Json s = Json::object();
    s["inputs"] = sp.signature.inputs;
    s["output"] = sp.signature.output;
    s["basis"] = sp.basis;
    spaces.push_back(std::move(s));
  }
  out["spaces"] = std::move(spaces);
  Json units = Json::object();
  for (const auto& [color, unit] : p.units) {
    units[color] = lincomb_to_json(unit);
  }
  out["units"] = std::move(units);
  Json comp = Json::array();
  for (const auto& [key, result] : p.composition) {
    Json entry = Json::object();
    entry["outer"] = key.outer;
    entry["inners"] = key.inners;
    entry["result"] = lincomb_to_json(result);
    comp.push_back(std::move(entry));
  }
  out["composition"] = std::move(comp);
  return out;
}

ColoredOperad operad_from_json(const Json& j) {
  const std::string context = "operad";
  ColoredOperad p;
  p.colors = string_list(field(j, context, "colors"), context + ".colors");
  const Json& spaces = field(j, context, "spaces");
  if (!spaces.is_array()) bad_input(context, "'spaces' must be an array");
  for (const Json& s : spaces) {
    OperationSpace sp;
    sp.signature.inputs =
        string_list(field(s, "space", "inputs"), "space.inputs");
    sp.signature.output = string_field(s, "space", "output");
    sp.basis = string_list(field(s, "space", "basis"), "space.basis");
    p.spaces.push_back(std::move(sp));
  }
  if (j.contains("units")) {
    const Json& units = j.at("units");
    if (!units.is_object()) bad_input(context, "'units' must be an object");
    for (const auto& [color, unit] : units.items()) {
      p.units[color] = lincomb_from_json(unit, context + ".units");
    }
  }
  if (j.contains("composition")) {
    const Json& comp = j.at("composition");
    if (!comp.is_array()) {
      bad_input(context, "'composition' must be an array");
    }
    for (const Json& e : comp) {
      CompositionKey key;
      key.outer = string_field(e, "composition entry", "outer");
      key.inners = string_list(field(e, "composition entry", "inners"),
                               "composition entry.inners");
      p.composition[key] = lincomb_from_json(
          field(e, "composition entry", "result"), "composition entry.result");
    }
  }
  return p;
}

Json digraph_to_json(const Digraph& g) {
  Json out = Json::object();
  out["vertices"] = g.vertices;
  Json edges = Json::array();
  for (const DigraphEdge& e : g.edges) {
    Json je = Json::object();
    je["from"] = e.from;
    je["to"] = e.to;
    je["weight"] = complex_to_json(e.weight);
    je["label"] = e.label;
    edges.push_back(std::move(je));
  }
  out["edges"] = std::move(edges);
  if (!g.pair_weights.empty()) {
    Json pairs = Json::array();
    for (const PairWeight& pw : g.pair_weights) {
      Json jp = Json::object();
      jp["first"] = pw.first;
      jp["second"] = pw.second;
      jp["weight"] = complex_to_json(pw.weight);
      pairs.push_back(std::move(jp));
    }
    out["pair_weights"] = std::move(pairs);
  }
  return out;
}

Digraph digraph_from_json(const Json& j) {
  const std::string context = "network";
  Digraph g;
  g.vertices =
      string_list(field(j, context, "vertices"), context + ".vertices");
  const Json& edges = field(j, context, "edges");
  if (!edges.is_array()) bad_input(context, "'edges' must be an array");
  for (const Json& e : edges) {
    DigraphEdge edge;
    edge.from = string_field(e, "edge", "from");
    edge.to = string_field(e, "edge", "to");
    edge.weight = complex_from_json(field(e, "edge", "weight"));
    edge.label = string_field(e, "edge", "label");
    g.edges.push_back(std::move(edge));
  }
  if (j.contains("pair_weights")) {
    const Json& pairs = j.at("pair_weights");
    if (!pairs.is_array()) {
      bad_input(context, "'pair_weights' must be an array");
    }
    for (const Json& pw : pairs) {
      PairWeight p;
      p.first = string_field(pw, "pair weight", "first");
      p.second = string_field(pw, "pair weight", "second");
      p.weight = complex_from_json(field(pw, "pair weight", "weight"));
      g.pair_weights.push_back(std::move(p));
    }
  }
  return g;
}

Json algebra_to_json(const PAlgebra& a) {
  Json out = Json::object();
  out["name"] = a.name;
  out["operad"] = operad_to_json(a.operad);
  Json comps = Json::object();
  for (const auto& [color, dim] : a.components) comps[color] = dim;
  out["components"] = std::move(comps);
  Json structure = Json::object();
  for (const auto& [label, m] : a.structure) {
    structure[label] = matrix_to_json(m);
  }
  out["structure"] = std::move(structure);
  if (!a.distinguished.empty()) {
    Json dist = Json::object();
    for (const auto& [color, m] : a.distinguished) {
      dist[color] = matrix_to_json(m);
    }
    out["distinguished"] = std::move(dist);
  }
  return out;
}

PAlgebra algebra_from_json(const Json& j) {
  const std::string context = "algebra";
  const bool inline_operad = j.is_object() && j.contains("operad");
  const bool ref_operad = j.is_object() && j.contains("operad_ref");
  if (inline_operad == ref_operad) {
    bad_input(context, "provide exactly one of 'operad' and 'operad_ref'");
  }
  PAlgebra a;
  if (inline_operad) {
    a.operad = operad_from_json(j.at("operad"));
  } else {
    const Json& ref = j.at("operad_ref");
    if (!ref.is_string()) bad_input(context, "'operad_ref' must be a string");
    a.operad = builtin_operad(ref.get<std::string>(), context);
  }
  if (j.contains("name")) {
    if (!j.at("name").is_string()) {
      bad_input(context, "'name' must be a string");
    }
    a.name = j.at("name").get<std::string>();
  }
  const Json& comps = field(j, context, "components");
  if (!comps.is_object()) bad_input(context, "'components' must be an object");
  for (const auto& [color, dim] : comps.items()) {
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) {
      bad_input(context, "component dimension at color '" + color +
                             "' must be a positive integer");
    }
    a.components[color] = dim.get<std::size_t>();
  }
  if (j.contains("structure")) {
    const Json& structure = j.at("structure");
    if (!structure.is_object()) {
      bad_input(context, "'structure' must be an object");
    }
    for (const auto& [label, m] : structure.items()) {
      a.structure.insert({label, matrix_from_json(m)});
    }
  }
  if (j.contains("distinguished")) {
    const Json& dist = j.at("distinguished");
    if (!dist.is_object()) {
      bad_input(context, "'distinguished' must be an object");
    }
    for (const auto& [color, m] : dist.items()) {
      a.distinguished.insert({color, matrix_from_json(m)});
    }
  }
  return a;
}

Json spectrum_to_json(const SpectrumSet& s) {
  Json out = Json::object();
  Json values = Json::array();
  for (Cplx v : s.values) values.push_back(complex_to_json(v));
  out["values"] = std::move(values);
  out["tolerance"] = s.tolerance;
  return out;
}

Json validation_to_json(const ValidationReport& r) {
  Json out = Json::object();
  out["ok"] = r.ok();
  out["violations"] = r.violations;
  out["warnings"] = r.warnings;
  return out;
}

Json decomposition_to_json(const SpectralDecomposition& d) {
  Json out = Json::object();
  Json local = Json::object();
  for (const auto& [color, dim] : d.local) local[color] = dim;
  out["local"] = std::move(local);
  out["local_total"] = d.local_total;
  Json cross = Json::array();
  for (const CrossRecord& r : d.cross) {
    Json jr = Json::object();
    jr["op"] = r.op;
    jr["output_color"] = r.output_color;
    jr["image_dim"] = r.image_dim;
    jr["residue_dim"] = r.residue_dim;
    jr["contribution"] = r.contribution;
    jr["provenance"] = r.provenance;
    cross.push_back(std::move(jr));
  }
  out["cross"] = std::move(cross);
  out["cross_total"] = d.cross_total;
  out["total"] = d.total;
  return out;
}

Json spectrum_object_to_json(const OperadicSpectrumObject& s) {
  Json out = Json::object();
  out["decomposition"] = decomposition_to_json(s.decomposition);
  out["residue_dimension"] = s.residue_dimension;
  out["hochschild_dimension"] = s.hochschild_dimension;
  Json blocks = Json::array();
  for (const ModuleBlock& b : s.module_blocks) {
    Json jb = Json::object();
    jb["label"] = b.label;
    jb["color"] = b.color;
    jb["offset"] = b.offset;
    jb["dim"] = b.dim;
    blocks.push_back(std::move(jb));
  }
  out["module_blocks"] = std::move(blocks);
  Json tensor = Json::object();
  tensor["x_dim"] = s.tensor.x_dim;
  tensor["y_dim"] = s.tensor.y_dim;
  tensor["quotient_dim"] = s.tensor.dimension();
  out["tensor"] = std::move(tensor);
  out["total"] = s.total;
  if (s.total > 0) out["witness"] = matrix_to_json(s.witness());
  return out;
}

Json analytic_to_json(const AnalyticSpectrum& s) {
  Json out = Json::object();
  Json per_color = Json::object();
  for (const auto& [color, spec] : s.per_color) {
    per_color[color] = spectrum_to_json(spec);
  }
  out["per_color"] = std::move(per_color);
  Json interaction = Json::array();
  for (const InteractionRecord& r : s.interaction) {
    Json jr = Json::object();
    jr["base"] = r.base;
    jr["values"] = spectrum_to_json(r.values);
    jr["loops"] = r.loops;
    interaction.push_back(std::move(jr));
  }
  out["interaction"] = std::move(interaction);
  out["notes"] = s.notes;
  return out;
}

Json report_to_json(const TransportReport& r) {
  Json out = Json::object();
  out["check"] = r.check;
  out["pass"] = r.pass;
  Json dims = Json::object();
  for (const auto& [key, value] : r.dimensions) dims[key] = value;
  out["dimensions"] = std::move(dims);
  out["max_deviation"] = r.max_deviation;
  out["details"] = r.details;
  return out;
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t stop =
        e.byte > 0 ? std::min(text.size(), static_cast<std::size_t>(e.byte) - 1)
                   : 0;
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream os;
    os << "malformed JSON at line " << line << ", column " << column;
    throw ParseError(os.str());
  }
}

ParsedInput input_from_json(const Json& j) {
  if (!j.is_object()) bad_input("input", "expected a JSON object");
  if (j.contains("schema_version")) {
    const Json& v = j.at("schema_version");
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion) {
      bad_input("input", "unsupported schema_version");
    }
  }
  ParsedInput out;
  std::string kind;
  const Json* payload = &j;
  if (j.contains("kind")) {
    kind = string_field(j, "input", "kind");
    if (j.contains(kind)) payload = &j.at(kind);
  } else if (j.contains("components")) {
    kind = "algebra";
  } else if (j.contains("vertices")) {
    kind = "network";
  } else if (j.contains("colors")) {
    kind = "operad";
  } else {
    bad_input("input", "cannot infer input kind (expected an algebra, "
                       "network, or operad payload)");
  }
  out.kind = kind;
  if (kind == "algebra") {
    out.algebra = algebra_from_json(*payload);
  } else if (kind == "network") {
    out.graph = digraph_from_json(*payload);
  } else if (kind == "operad") {
    out.operad = operad_from_json(*payload);
  } else {
    bad_input("input", "unknown kind '" + kind + "'");
  }
  return out;
}

namespace {

Json wrap(const std::string& kind, Json payload) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["kind"] = kind;
  out[kind] = std::move(payload);
  return out;
}

Json fixture_json(const std::string& name) {
  if (name == "trivial") {
    PAlgebra a;
    a.name = "pointed-line";
    a.operad = trivial_operad();
    a.components = {{"*", 3}};
    a.structure.insert({"e", ComplexMatrix::identity(3)});
    a.distinguished.insert(
        {"*", ComplexMatrix(3, 3, {1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0,
                                   3.0})});
    return wrap("algebra", algebra_to_json(a));
  }
  if (name == "block") {
    const ComplexMatrix zero(2, 2);
    const ComplexMatrix alpha(2, 2, {0.0, 1.0, 0.0, 0.0});
    const ComplexMatrix beta(2, 2, {0.0, 0.0, 1.0, 0.0});
    PAlgebra a = block_algebra(zero, alpha, beta, zero);
    a.name = "nilpotent-block";
    return wrap("algebra", algebra_to_json(a));
  }
  if (name == "two-cycle") {
    Digraph g;
    g.vertices = {"v1", "v2"};
    g.edges = {{"v1", "v2", Cplx(2.0, 0.0), "e12"},
               {"v2", "v1", Cplx(3.0, 0.0), "e21"}};
    return wrap("network", digraph_to_json(g));
  }
  if (name == "nogo-silent") {
    return wrap("algebra", algebra_to_json(nogo_witness_pair().first));
  }
  if (name == "nogo-coupled") {
    return wrap("algebra", algebra_to_json(nogo_witness_pair().second));
  }
  if (name == "broken-unit") {
    ColoredOperad p = trivial_operad();
    p.composition[{"e", {"e"}}] = {{"e", Cplx(2.0, 0.0)}};
    return wrap("operad", operad_to_json(p));
  }
  throw ParseError("unknown fixture '" + name + "'");
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "trivial", "block", "two-cycle", "nogo-silent", "nogo-coupled",
      "broken-unit"};
  return names;
}

std::string fixture_text(const std::string& name) {
  return fixture_json(name).dump(2) + "\n";
}

}  // namespace soc

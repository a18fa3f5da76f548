#include "soc/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "soc/basechange.hpp"
#include "soc/json_io.hpp"

namespace soc {

namespace {

struct Options {
  std::string input;
  double tolerance = 1e-8;
  std::size_t max_loop_length = 0;
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 20240915u;
  std::string functor = "identity";
  std::string polynomial = "0,1";
  bool with_analytic = false;
};

std::string load_input_text(const std::string& spec) {
  if (std::filesystem::exists(spec)) {
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw ParseError("cannot read input file '" + spec + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  const auto& names = fixture_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) {
    return fixture_text(spec);
  }
  throw ParseError("no input file or fixture named '" + spec + "'");
}

ParsedInput load_input(const std::string& spec) {
  return input_from_json(parse_json_text(load_input_text(spec)));
}

// Network construction failures are input problems, not computation
// failures; rewrap so they exit with the malformed-input code.
PAlgebra algebra_from_input(const ParsedInput& in) {
  if (in.kind == "algebra") return *in.algebra;
  if (in.kind == "network") {
    try {
      return network_algebra(*in.graph);
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("this command requires an algebra or network input");
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output, std::ios::binary);
  if (!out) throw ParseError("cannot write output file '" + o.output + "'");
  out << text;
}

std::string render_json(const std::string& command, Json payload) {
  Json out = Json::object();
  out["schema_version"] = kSchemaVersion;
  out["command"] = command;
  out["result"] = std::move(payload);
  return out.dump(2) + "\n";
}

std::string fmt_double(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

std::string fmt_cplx(Cplx z) {
  if (z.imag() == 0.0) return fmt_double(z.real());
  return fmt_double(z.real()) + (z.imag() < 0.0 ? " - " : " + ") +
         fmt_double(std::abs(z.imag())) + "i";
}

std::string fmt_spectrum(const SpectrumSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (i > 0) out += ", ";
    out += fmt_cplx(s.values[i]);
  }
  return out + "}";
}

std::string join(const std::vector<std::string>& parts,
                 const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<Cplx> parse_polynomial(const std::string& text) {
  std::vector<Cplx> coeffs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(
                                       item[used]))) {
        ++used;
      }
      if (used != item.size()) throw std::invalid_argument(item);
      coeffs.push_back(Cplx(v, 0.0));
    } catch (const std::exception&) {
      throw ParseError("invalid polynomial coefficient '" + item +
                       "' (expected a comma-separated list of reals)");
    }
  }
  if (coeffs.empty()) throw ParseError("empty polynomial");
  return coeffs;
}

// Validation gate shared by the computing commands: well-formed JSON with bad
// mathematics is a computation failure, not a usage error.
bool validated(const PAlgebra& a, std::uint64_t seed) {
  const ValidationReport op = validate_operad(a.operad, seed);
  const ValidationReport alg = validate_algebra(a);
  for (const std::string& v : op.violations) {
    std::cerr << "operad violation: " << v << "\n";
  }
  for (const std::string& v : alg.violations) {
    std::cerr << "algebra violation: " << v << "\n";
  }
  return op.ok() && alg.ok();
}

int cmd_validate(const Options& o) {
  const ParsedInput in = load_input(o.input);
  ValidationReport operad_report;
  std::optional<ValidationReport> algebra_report;
  if (in.kind == "operad") {
    operad_report = validate_operad(*in.operad, o.seed);
  } else {
    const PAlgebra a = algebra_from_input(in);
    operad_report = validate_operad(a.operad, o.seed);
    algebra_report = validate_algebra(a);
  }
  const bool ok =
      operad_report.ok() && (!algebra_report || algebra_report->ok());
  if (o.format == "json") {
    Json payload = Json::object();
    payload["ok"] = ok;
    payload["operad"] = validation_to_json(operad_report);
    if (algebra_report) {
      payload["algebra"] = validation_to_json(*algebra_report);
    }
    emit(o, render_json("validate", std::move(payload)));
  } else {
    std::ostringstream os;
    auto section = [&os](const std::string& name, const ValidationReport& r) {
      os << name << ": " << (r.ok() ? "OK" : "FAILED") << "\n";
      for (const std::string& v : r.violations) {
        os << "  violation: " << v << "\n";
      }
      for (const std::string& w : r.warnings) {
        os << "  warning: " << w << "\n";
      }
    };
    section("operad", operad_report);
    if (algebra_report) section("algebra", *algebra_report);
    emit(o, os.str());
  }
  return ok ? 0 : 1;
}

int cmd_decompose(const Options& o) {
  const PAlgebra a = algebra_from_input(load_input(o.input));
  if (!validated(a, o.seed)) return 1;
  const SpectralDecomposition d = decompose(a);
  if (o.format == "json") {
    emit(o, render_json("decompose", decomposition_to_json(d)));
  } else {
    std::ostringstream os;
    os << "local terms:\n";
    for (const auto& [color, dim] : d.local) {
      os << "  color " << color << ": " << dim << "\n";
    }
    os << "local total: " << d.local_total << "\n";
    os << "cross terms:\n";
    for (const CrossRecord& r : d.cross) {
      os << "  " << r.op << ": image " << r.image_dim << " x residue "
         << r.residue_dim << " = " << r.contribution << " (" << r.provenance
         << ")\n";
    }
    os << "cross total: " << d.cross_total << "\n";
    os << "total: " << d.total << "\n";
    emit(o, os.str());
  }
  return 0;
}

int cmd_spectrum(const Options& o) {
  const PAlgebra a = algebra_from_input(load_input(o.input));
  if (!validated(a, o.seed)) return 1;
  const OperadicSpectrumObject s = operadic_spectrum(a);
  if (o.format == "json") {
    emit(o, render_json("spectrum", spectrum_object_to_json(s)));
  } else {
    std::ostringstream os;
    os << "structural total: " << s.total << "\n";
    os << "coequalizer dimension: " << s.hochschild_dimension << "\n";
    os << "residue dimension: " << s.residue_dimension << "\n";
    os << "balanced tensor: " << s.tensor.x_dim << " x " << s.tensor.y_dim
       << " -> quotient " << s.tensor.dimension() << "\n";
    os << "module blocks:\n";
    for (const ModuleBlock& b : s.module_blocks) {
      os << "  " << b.label << " (color " << b.color << "): dim " << b.dim
         << "\n";
    }
    emit(o, os.str());
  }
  return 0;
}

int cmd_naive(const Options& o) {
  const PAlgebra a = algebra_from_input(load_input(o.input));
  if (!validated(a, o.seed)) return 1;
  const std::map<Color, SpectrumSet> spectra = naive_spectrum(a, o.tolerance);
  if (o.format == "json") {
    Json payload = Json::object();
    Json per_color = Json::object();
    for (const auto& [color, s] : spectra) {
      per_color[color] = spectrum_to_json(s);
    }
    payload["per_color"] = std::move(per_color);
    emit(o, render_json("naive", std::move(payload)));
  } else {
    std::ostringstream os;
    if (spectra.empty()) {
      os << "no pointed colors; naive spectrum is empty\n";
    } else {
      for (const auto& [color, s] : spectra) {
        os << "color " << color << ": " << fmt_spectrum(s) << "\n";
      }
    }
    emit(o, os.str());
  }
  return 0;
}

void render_analytic_text(std::ostringstream& os, const AnalyticSpectrum& s) {
  os << "per-color spectra:\n";
  if (s.per_color.empty()) os << "  (none; no pointed colors)\n";
  for (const auto& [color, spec] : s.per_color) {
    os << "  color " << color << ": " << fmt_spectrum(spec) << "\n";
  }
  os << "interaction records:\n";
  if (s.interaction.empty()) os << "  (none)\n";
  for (const InteractionRecord& r : s.interaction) {
    os << "  base " << r.base << ": " << fmt_spectrum(r.values) << " via ["
       << join(r.loops, "; ") << "]\n";
  }
  for (const std::string& n : s.notes) os << "note: " << n << "\n";
}

int cmd_analytic(const Options& o) {
  const PAlgebra a = algebra_from_input(load_input(o.input));
  if (!validated(a, o.seed)) return 1;
  const AnalyticSpectrum s =
      analytic_spectrum(a, o.max_loop_length, o.tolerance);
  if (o.format == "json") {
    emit(o, render_json("analytic", analytic_to_json(s)));
  } else {
    std::ostringstream os;
    render_analytic_text(os, s);
    emit(o, os.str());
  }
  return 0;
}

int cmd_nogo(const Options& o) {
  const auto [silent, coupled] = nogo_witness_pair();
  const auto naive_silent = naive_spectrum(silent, o.tolerance);
  const auto naive_coupled = naive_spectrum(coupled, o.tolerance);
  const OperadicSpectrumObject spec_silent = operadic_spectrum(silent);
  const OperadicSpectrumObject spec_coupled = operadic_spectrum(coupled);
  bool naive_agree = naive_silent.size() == naive_coupled.size();
  for (const auto& [color, s] : naive_silent) {
    naive_agree = naive_agree && naive_coupled.count(color) > 0 &&
                  s.equals(naive_coupled.at(color));
  }
  const bool totals_differ = spec_silent.total != spec_coupled.total;
  if (o.format == "json") {
    Json payload = Json::object();
    auto side = [](const std::map<Color, SpectrumSet>& naive,
                   const OperadicSpectrumObject& s) {
      Json out = Json::object();
      Json per_color = Json::object();
      for (const auto& [color, spec] : naive) {
        per_color[color] = spectrum_to_json(spec);
      }
      out["naive"] = std::move(per_color);
      out["structural_total"] = s.total;
      out["coequalizer_dimension"] = s.hochschild_dimension;
      return out;
    };
    payload["silent"] = side(naive_silent, spec_silent);
    payload["coupled"] = side(naive_coupled, spec_coupled);
    payload["naive_agree"] = naive_agree;
    payload["totals_differ"] = totals_differ;
    emit(o, render_json("nogo-demo", std::move(payload)));
  } else {
    std::ostringstream os;
    auto line = [&os](const std::string& name,
                      const std::map<Color, SpectrumSet>& naive,
                      const OperadicSpectrumObject& s) {
      os << name << ": naive";
      for (const auto& [color, spec] : naive) {
        os << " " << fmt_spectrum(spec) << " at color " << color << ",";
      }
      os << " structural total " << s.total << ", coequalizer "
         << s.hochschild_dimension << "\n";
    };
    line("silent", naive_silent, spec_silent);
    line("coupled", naive_coupled, spec_coupled);
    os << "naive spectra agree at every color: " << (naive_agree ? "yes" : "no")
       << "\n";
    os << "structural totals differ: " << (totals_differ ? "yes" : "no")
       << " (" << spec_silent.total << " vs " << spec_coupled.total << ")\n";
    emit(o, os.str());
  }
  return (naive_agree && totals_differ) ? 0 : 1;
}

int cmd_network(const Options& o) {
  const ParsedInput in = load_input(o.input);
  if (in.kind != "network") {
    throw ParseError("the network command requires a network input");
  }
  ColoredOperad operad;
  PAlgebra a;
  try {
    operad = network_operad(*in.graph);
    a = network_algebra(*in.graph);
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
  if (!validated(a, o.seed)) return 1;
  const SpectralDecomposition d = decompose(a);
  std::size_t basis_total = 0;
  for (const OperationSpace& sp : operad.spaces) basis_total += sp.basis.size();
  std::optional<AnalyticSpectrum> an;
  if (o.with_analytic) {
    an = analytic_spectrum(a, o.max_loop_length, o.tolerance);
  }
  if (o.format == "json") {
    Json payload = Json::object();
    payload["vertices"] = in.graph->vertices.size();
    payload["edges"] = in.graph->edges.size();
    payload["pair_operations"] = in.graph->pair_weights.size();
    Json op = Json::object();
    op["spaces"] = operad.spaces.size();
    op["basis_total"] = basis_total;
    payload["operad"] = std::move(op);
    payload["decomposition"] = decomposition_to_json(d);
    if (an) payload["analytic"] = analytic_to_json(*an);
    emit(o, render_json("network", std::move(payload)));
  } else {
    std::ostringstream os;
    os << "vertices: " << in.graph->vertices.size() << "\n";
    os << "edges: " << in.graph->edges.size() << "\n";
    os << "pair operations: " << in.graph->pair_weights.size() << "\n";
    os << "operad spaces: " << operad.spaces.size() << " (basis total "
       << basis_total << ")\n";
    os << "decomposition total: " << d.total << "\n";
    if (an) render_analytic_text(os, *an);
    emit(o, os.str());
  }
  return 0;
}

int cmd_basechange(const Options& o) {
  const PAlgebra a = algebra_from_input(load_input(o.input));
  if (!validated(a, o.seed)) return 1;
  FunctorHandle f;
  try {
    f = functor_by_name(o.functor);
  } catch (const UnregisteredFunctor& e) {
    throw ParseError(e.what());
  }
  const std::vector<Cplx> coeffs = parse_polynomial(o.polynomial);
  const std::vector<TransportReport> reports = {
      check_residue_transport(a, f, o.tolerance),
      check_hochschild_transport(a, f, o.tolerance),
      check_spectrum_transport(a, f, o.tolerance),
      check_spectral_mapping(a, f, coeffs, o.tolerance),
  };
  const bool all_pass = std::all_of(reports.begin(), reports.end(),
                                    [](const TransportReport& r) {
                                      return r.pass;
                                    });
  if (o.format == "json") {
    Json payload = Json::object();
    payload["functor"] = f.name;
    Json poly = Json::array();
    for (Cplx c : coeffs) poly.push_back(complex_to_json(c));
    payload["polynomial"] = std::move(poly);
    Json rs = Json::array();
    for (const TransportReport& r : reports) rs.push_back(report_to_json(r));
    payload["reports"] = std::move(rs);
    payload["all_pass"] = all_pass;
    emit(o, render_json("basechange", std::move(payload)));
  } else {
    std::ostringstream os;
    os << "functor: " << f.name << "\n";
    for (const TransportReport& r : reports) {
      os << r.check << ": " << (r.pass ? "pass" : "FAIL") << " (max deviation "
         << fmt_double(r.max_deviation) << ")\n";
      for (const std::string& d : r.details) os << "  note: " << d << "\n";
    }
    emit(o, os.str());
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"spectral calculus for algebras over finite colored operads"};
  app.require_subcommand(1);

  Options o;
  if (const char* env = std::getenv("SOC_TOLERANCE")) {
    try {
      o.tolerance = std::stod(env);
    } catch (const std::exception&) {
      std::cerr << "input error: invalid SOC_TOLERANCE value\n";
      return 2;
    }
  }

  const auto add_common = [&o](CLI::App* cmd, bool needs_input) {
    if (needs_input) {
      cmd->add_option("-i,--input", o.input,
                      "input file or fixture name (fixtures: trivial, block, "
                      "two-cycle, nogo-silent, nogo-coupled, broken-unit)")
          ->required();
    }
    cmd->add_option("-f,--format", o.format, "output format (text or json)")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("-o,--output", o.output, "write the report to this file");
    cmd->add_option("-t,--tolerance", o.tolerance,
                    "numeric tolerance (default 1e-8, or SOC_TOLERANCE)");
    cmd->add_option("--seed", o.seed,
                    "seed for sampled validation of large composition tables");
  };

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "balanced-tensor spectral object of an algebra");
  add_common(spectrum, true);
  CLI::App* decompose_cmd = app.add_subcommand(
      "decompose", "structural decomposition into local and cross terms");
  add_common(decompose_cmd, true);
  CLI::App* analytic = app.add_subcommand(
      "analytic", "eigenvalue realization with interaction loops");
  add_common(analytic, true);
  analytic->add_option("--max-loop-length", o.max_loop_length,
                       "cap on interaction loop length (0 = twice the number "
                       "of colors)");
  CLI::App* naive = app.add_subcommand(
      "naive", "per-color spectra of the distinguished endomorphisms");
  add_common(naive, true);
  CLI::App* nogo = app.add_subcommand(
      "nogo-demo", "two algebras with equal naive spectra and different "
                   "structural totals");
  add_common(nogo, false);
  CLI::App* network = app.add_subcommand(
      "network", "operad and decomposition of a weighted directed graph");
  add_common(network, true);
  network->add_flag("--analytic", o.with_analytic,
                    "also compute interaction loops");
  network->add_option("--max-loop-length", o.max_loop_length,
                      "cap on interaction loop length");
  CLI::App* basechange = app.add_subcommand(
      "basechange", "transport checks along a base-change functor");
  add_common(basechange, true);
  basechange->add_option("--functor", o.functor,
                         "identity, forgetful, complexification, or "
                         "conjugation");
  basechange->add_option("--polynomial", o.polynomial,
                         "comma-separated real coefficients, low to high");
  CLI::App* validate = app.add_subcommand(
      "validate", "axiom check of an operad, algebra, or network input");
  add_common(validate, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(o);
    if (decompose_cmd->parsed()) return cmd_decompose(o);
    if (analytic->parsed()) return cmd_analytic(o);
    if (naive->parsed()) return cmd_naive(o);
    if (nogo->parsed()) return cmd_nogo(o);
    if (network->parsed()) return cmd_network(o);
    if (basechange->parsed()) return cmd_basechange(o);
    if (validate->parsed()) return cmd_validate(o);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace soc

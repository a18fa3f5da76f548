#include "soc/basechange.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

namespace soc {

namespace {

Cplx identity_scalar(Cplx z) { return z; }
Cplx conjugation_scalar(Cplx z) { return std::conj(z); }

ComplexMatrix map_entries(const ComplexMatrix& m, const FunctorHandle& f,
                          const std::string& where) {
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Cplx v = m.at(i, j);
      if (f.certify_real && std::abs(v.imag()) > kRealityTol) {
        std::ostringstream os;
        os << f.name << " cannot certify " << where
           << ": entry with imaginary part " << v.imag();
        throw RealityCertificationFailure(os.str());
      }
      out.at(i, j) = f.scalar(v);
    }
  }
  return out;
}

LinComb map_entries(const LinComb& c, const FunctorHandle& f,
                    const std::string& where) {
  LinComb out;
  for (const auto& [label, coeff] : c) {
    if (f.certify_real && std::abs(coeff.imag()) > kRealityTol) {
      std::ostringstream os;
      os << f.name << " cannot certify " << where << ": coefficient of "
         << label << " has imaginary part " << coeff.imag();
      throw RealityCertificationFailure(os.str());
    }
    out[label] = f.scalar(coeff);
  }
  return out;
}

// Largest entrywise distance between `pushed` and the scalar image of
// `source`. Shape disagreement counts as infinite deviation.
double transport_deviation(const ComplexMatrix& pushed,
                           const ComplexMatrix& source,
                           const FunctorHandle& f) {
  if (pushed.rows() != source.rows() || pushed.cols() != source.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  double dev = 0.0;
  for (std::size_t i = 0; i < pushed.rows(); ++i) {
    for (std::size_t j = 0; j < pushed.cols(); ++j) {
      dev = std::max(dev, std::abs(pushed.at(i, j) - f.scalar(source.at(i, j))));
    }
  }
  return dev;
}

std::map<Color, ComplexMatrix> canonical_inclusions(const ResidueObject& r) {
  std::map<Color, ComplexMatrix> out;
  for (const Color& c : r.colors) {
    ComplexMatrix inc(r.total, r.dims.at(c));
    for (std::size_t j = 0; j < r.dims.at(c); ++j) {
      inc.at(r.offsets.at(c) + j, j) = 1.0;
    }
    out.insert({c, inc});
  }
  return out;
}

void record_failure(TransportReport& rep, const std::string& message) {
  rep.pass = false;
  rep.details.push_back(message);
}

Cplx poly_eval(const std::vector<Cplx>& coeffs, Cplx z) {
  Cplx acc(0.0, 0.0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

// Index-wise distance of two canonically sorted spectra; infinite on size
// mismatch. Both inputs are copied so they can be re-sorted after a scalar
// map disturbed the order.
double spectrum_deviation(SpectrumSet lhs, SpectrumSet rhs) {
  if (lhs.values.size() != rhs.values.size()) {
    return std::numeric_limits<double>::infinity();
  }
  lhs.sort_canonical();
  rhs.sort_canonical();
  double dev = 0.0;
  for (std::size_t i = 0; i < lhs.values.size(); ++i) {
    dev = std::max(dev, std::abs(lhs.values[i] - rhs.values[i]));
  }
  return dev;
}

SpectrumSet map_spectrum(const SpectrumSet& s, const FunctorHandle& f) {
  SpectrumSet out;
  out.tolerance = s.tolerance;
  out.values.reserve(s.values.size());
  for (Cplx v : s.values) out.values.push_back(f.scalar(v));
  out.sort_canonical();
  return out;
}

}  // namespace

const std::vector<FunctorHandle>& functor_registry() {
  static const std::vector<FunctorHandle> registry = {
      {"identity", identity_scalar, false},
      {"forgetful", identity_scalar, false},
      {"complexification", identity_scalar, true},
      {"conjugation", conjugation_scalar, false},
  };
  return registry;
}

FunctorHandle functor_by_name(const std::string& name) {
  for (const FunctorHandle& f : functor_registry()) {
    if (f.name == name) return f;
  }
  std::ostringstream os;
  os << "no base-change functor named '" << name << "' (known:";
  for (const FunctorHandle& f : functor_registry()) os << " " << f.name;
  os << ")";
  throw UnregisteredFunctor(os.str());
}

FunctorHandle compose_functors(const FunctorHandle& outer,
                               const FunctorHandle& inner) {
  FunctorHandle out;
  out.name = outer.name + " . " + inner.name;
  const auto o = outer.scalar;
  const auto i = inner.scalar;
  out.scalar = [o, i](Cplx z) { return o(i(z)); };
  out.certify_real = outer.certify_real || inner.certify_real;
  return out;
}

ColoredOperad pushforward_operad(const ColoredOperad& p,
                                 const FunctorHandle& f) {
  ColoredOperad out = p;
  for (auto& [color, unit] : out.units) {
    unit = map_entries(unit, f, "unit at color " + color);
  }
  for (auto& [key, value] : out.composition) {
    value = map_entries(value, f, "composite of " + key.outer);
  }
  return out;
}

PAlgebra pushforward_algebra(const PAlgebra& a, const FunctorHandle& f) {
  PAlgebra out = a;
  out.operad = pushforward_operad(a.operad, f);
  for (auto& [label, m] : out.structure) {
    m = map_entries(m, f, "structure map " + label);
  }
  for (auto& [color, m] : out.distinguished) {
    m = map_entries(m, f, "distinguished element at color " + color);
  }
  return out;
}

TransportReport check_residue_transport(const PAlgebra& a,
                                        const FunctorHandle& f, double tol) {
  TransportReport rep;
  rep.check = "residue-transport";
  try {
    const ResidueObject r1 = residue(a.operad);
    const PAlgebra b = pushforward_algebra(a, f);
    const ResidueObject r2 = residue(b.operad);
    rep.dimensions["source_total"] = r1.total;
    rep.dimensions["target_total"] = r2.total;
    if (r1.colors != r2.colors || r1.dims != r2.dims ||
        r1.offsets != r2.offsets || r1.total != r2.total) {
      record_failure(rep, "residue layout changed under transport");
      return rep;
    }
    if (r1.total > 0) {
      const ComplexMatrix u1 =
          residue_universal_map(a.operad, canonical_inclusions(r1));
      const ComplexMatrix u2 =
          residue_universal_map(b.operad, canonical_inclusions(r2));
      rep.max_deviation = transport_deviation(u2, u1, f);
    }
    if (!(rep.max_deviation <= tol)) {
      record_failure(rep, "universal maps disagree beyond tolerance");
    }
  } catch (const std::exception& e) {
    record_failure(rep, e.what());
  }
  return rep;
}

TransportReport check_hochschild_transport(const PAlgebra& a,
                                           const FunctorHandle& f,
                                           double tol) {
  TransportReport rep;
  rep.check = "hochschild-transport";
  try {
    const HochschildObject h1 = hochschild(a);
    const PAlgebra b = pushforward_algebra(a, f);
    const HochschildObject h2 = hochschild(b);
    rep.dimensions["source"] = h1.dimension;
    rep.dimensions["target"] = h2.dimension;
    rep.dimensions["ambient"] = h1.ambient;
    if (h1.dimension != h2.dimension || h1.ambient != h2.ambient) {
      record_failure(rep, "coequalizer dimensions changed under transport");
      return rep;
    }
    if (h1.dimension > 0) {
      rep.max_deviation = transport_deviation(h2.projection.projection,
                                              h1.projection.projection, f);
    }
    if (!(rep.max_deviation <= tol)) {
      record_failure(rep, "coequalizer projections disagree beyond tolerance");
    }
  } catch (const std::exception& e) {
    record_failure(rep, e.what());
  }
  return rep;
}

TransportReport check_spectrum_transport(const PAlgebra& a,
                                         const FunctorHandle& f, double tol) {
  TransportReport rep;
  rep.check = "spectrum-transport";
  try {
    const OperadicSpectrumObject s1 = operadic_spectrum(a);
    const PAlgebra b = pushforward_algebra(a, f);
    const OperadicSpectrumObject s2 = operadic_spectrum(b);
    rep.dimensions["source_total"] = s1.total;
    rep.dimensions["target_total"] = s2.total;
    rep.dimensions["source_coequalizer"] = s1.hochschild_dimension;
    rep.dimensions["target_coequalizer"] = s2.hochschild_dimension;
    if (s1.total != s2.total ||
        s1.hochschild_dimension != s2.hochschild_dimension) {
      record_failure(rep, "spectral totals changed under transport");
      return rep;
    }
    if (s1.module_blocks.size() != s2.module_blocks.size()) {
      record_failure(rep, "module block layout changed under transport");
      return rep;
    }
    for (std::size_t i = 0; i < s1.module_blocks.size(); ++i) {
      const ModuleBlock& m1 = s1.module_blocks[i];
      const ModuleBlock& m2 = s2.module_blocks[i];
      if (m1.label != m2.label || m1.color != m2.color || m1.dim != m2.dim ||
          m1.offset != m2.offset) {
        record_failure(rep, "module block '" + m1.label +
                                "' changed under transport");
        return rep;
      }
    }
    if (s1.total > 0) {
      rep.max_deviation = transport_deviation(s2.witness(), s1.witness(), f);
    }
    if (!(rep.max_deviation <= tol)) {
      record_failure(rep, "quotient witnesses disagree beyond tolerance");
    }
  } catch (const std::exception& e) {
    record_failure(rep, e.what());
  }
  return rep;
}

TransportReport check_spectral_mapping(const PAlgebra& a,
                                       const FunctorHandle& f,
                                       const std::vector<Cplx>& coeffs,
                                       double tol) {
  TransportReport rep;
  rep.check = "spectral-mapping";
  try {
    const PAlgebra b = pushforward_algebra(a, f);
    const double eig_tol = std::max(tol, 1e-10);

    // Per pointed color: spectrum of p(T) against p of the spectrum, on both
    // sides, and transport of the spectrum itself through the scalar map.
    for (const auto& [color, t] : a.distinguished) {
      const SpectrumSet spec_a = eigenvalues(t, eig_tol);
      SpectrumSet mapped;
      mapped.tolerance = eig_tol;
      for (Cplx v : spec_a.values) mapped.values.push_back(poly_eval(coeffs, v));
      const SpectrumSet direct = eigenvalues(poly_apply(t, coeffs), eig_tol);
      rep.max_deviation =
          std::max(rep.max_deviation, spectrum_deviation(direct, mapped));

      const ComplexMatrix& tb = b.distinguished.at(color);
      const SpectrumSet spec_b = eigenvalues(tb, eig_tol);
      SpectrumSet mapped_b;
      mapped_b.tolerance = eig_tol;
      for (Cplx v : spec_b.values) {
        mapped_b.values.push_back(poly_eval(coeffs, v));
      }
      const SpectrumSet direct_b = eigenvalues(poly_apply(tb, coeffs), eig_tol);
      rep.max_deviation =
          std::max(rep.max_deviation, spectrum_deviation(direct_b, mapped_b));

      rep.max_deviation = std::max(
          rep.max_deviation, spectrum_deviation(spec_b, map_spectrum(spec_a, f)));
      rep.dimensions["pointed_" + color] = t.rows();
    }

    // Interaction records transport one by one.
    const AnalyticSpectrum an_a = analytic_spectrum(a, 0, eig_tol);
    const AnalyticSpectrum an_b = analytic_spectrum(b, 0, eig_tol);
    rep.dimensions["interaction_records"] = an_a.interaction.size();
    if (an_a.interaction.size() != an_b.interaction.size()) {
      record_failure(rep, "interaction records changed under transport");
      return rep;
    }
    for (std::size_t i = 0; i < an_a.interaction.size(); ++i) {
      const InteractionRecord& r1 = an_a.interaction[i];
      const InteractionRecord& r2 = an_b.interaction[i];
      if (r1.base != r2.base || r1.loops != r2.loops) {
        record_failure(rep, "interaction loop layout changed under transport");
        return rep;
      }
      rep.max_deviation =
          std::max(rep.max_deviation,
                   spectrum_deviation(r2.values, map_spectrum(r1.values, f)));
    }

    // The polynomial calculus replaces pointed elements only; the interaction
    // records must come out untouched.
    bool pointed_everywhere = true;
    for (const Color& c : a.operad.colors) {
      if (a.components.count(c) > 0 && a.distinguished.count(c) == 0) {
        pointed_everywhere = false;
      }
    }
    if (pointed_everywhere && !a.distinguished.empty()) {
      const PAlgebra pa = poly_calculus(a, coeffs);
      const AnalyticSpectrum an_p = analytic_spectrum(pa, 0, eig_tol);
      if (an_p.interaction.size() != an_a.interaction.size()) {
        record_failure(rep,
                       "polynomial calculus disturbed the interaction records");
        return rep;
      }
      for (std::size_t i = 0; i < an_a.interaction.size(); ++i) {
        if (an_p.interaction[i].loops != an_a.interaction[i].loops) {
          record_failure(rep, "polynomial calculus reordered interaction loops");
          return rep;
        }
        rep.max_deviation = std::max(
            rep.max_deviation, spectrum_deviation(an_p.interaction[i].values,
                                                  an_a.interaction[i].values));
      }
    } else {
      rep.details.push_back(
          "polynomial calculus skipped (missing distinguished elements)");
    }

    if (!(rep.max_deviation <= tol)) {
      record_failure(rep, "spectral mapping deviation beyond tolerance");
    }
  } catch (const std::exception& e) {
    record_failure(rep, e.what());
  }
  return rep;
}

}  // namespace soc

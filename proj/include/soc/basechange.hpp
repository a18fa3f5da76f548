#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "soc/algebra.hpp"
#include "soc/errors.hpp"
#include "soc/spectral.hpp"

namespace soc {

// Base-change functors act on all numeric payload of an operad or algebra:
// structure maps, distinguished elements, unit vectors, and composition
// coefficients are mapped entrywise by `scalar`. Functors with
// `certify_real` set refuse payload that is not numerically real; the
// threshold below is deliberately tight since certified data is expected to
// be real by construction, not by accident.
struct FunctorHandle {
  std::string name;
  std::function<Cplx(Cplx)> scalar;
  bool certify_real = false;
};

inline constexpr double kRealityTol = 1e-12;

// Raised by the pushforwards when a certifying functor meets a non-real
// entry. The transport checks catch this and report it as a failure.
struct RealityCertificationFailure : Error {
  using Error::Error;
};

// Built-in roster:
//   identity         entrywise identity
//   forgetful        drops nothing numerically; data-identical transport
//   complexification entrywise identity, certifies the input is real
//   conjugation      entrywise complex conjugation (scalar extension along
//                    the nontrivial field embedding)
const std::vector<FunctorHandle>& functor_registry();
FunctorHandle functor_by_name(const std::string& name);

// Composite functor applying `inner` first. The composite certifies realness
// when either factor does.
FunctorHandle compose_functors(const FunctorHandle& outer,
                               const FunctorHandle& inner);

ColoredOperad pushforward_operad(const ColoredOperad& p,
                                 const FunctorHandle& f);
PAlgebra pushforward_algebra(const PAlgebra& a, const FunctorHandle& f);

// Outcome of one transport check. The checks never throw: construction
// failures on either side of the comparison are reported as a failing check
// with the exception message in `details`. `dimensions` records the sizes
// that were compared, `max_deviation` the largest entrywise distance between
// the transported construction and the construction of the transport.
struct TransportReport {
  std::string check;
  bool pass = true;
  std::map<std::string, std::size_t> dimensions;
  double max_deviation = 0.0;
  std::vector<std::string> details;
};

// Residue of the pushforward against the residue of the source: color roster,
// dimensions and offsets must agree, and the canonical universal maps must
// match entrywise through the scalar map.
TransportReport check_residue_transport(const PAlgebra& a,
                                        const FunctorHandle& f,
                                        double tol = 1e-9);

// Coequalizer projection of the pushforward against the scalar image of the
// source projection.
TransportReport check_hochschild_transport(const PAlgebra& a,
                                           const FunctorHandle& f,
                                           double tol = 1e-9);

// Full interaction decomposition: totals, per-block layout and the quotient
// witness must transport entrywise.
TransportReport check_spectrum_transport(const PAlgebra& a,
                                         const FunctorHandle& f,
                                         double tol = 1e-9);

// Spectral mapping along a polynomial p (coefficients low to high) combined
// with the functor:
//   - per pointed color, the spectrum of p(T_c) matches p applied to the
//     spectrum of T_c, on the source and on the pushforward;
//   - per-color spectra transport through the scalar map;
//   - interaction records of the pushforward match the scalar image of the
//     source records one by one, and applying the polynomial calculus leaves
//     the interaction records untouched.
// Algebras without distinguished elements skip the polynomial-calculus leg
// with a note.
TransportReport check_spectral_mapping(const PAlgebra& a,
                                       const FunctorHandle& f,
                                       const std::vector<Cplx>& coeffs,
                                       double tol = 1e-9);

}  // namespace soc

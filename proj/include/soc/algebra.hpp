#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "soc/errors.hpp"
#include "soc/linalg.hpp"
#include "soc/operad.hpp"

namespace soc {

// A finite-dimensional algebra over a colored operad.
//
// components gives the carrier dimension per color (at least one). structure
// maps one basis operation label to the matrix of its action, of shape
// dim A_out x (product of input dims); tensor factors are flattened with the
// first slot major, matching ComplexMatrix::kron. An absent entry is the zero
// map; the unit combination of every color must still act as the identity,
// which validate_algebra enforces. distinguished optionally points each color
// at an endomorphism of its component; spectral operations that need pointed
// data throw MissingDistinguished when it is absent.
struct PAlgebra {
  std::string name;
  ColoredOperad operad;
  std::map<Color, std::size_t> components;
  std::map<std::string, ComplexMatrix> structure;
  std::map<Color, ComplexMatrix> distinguished;

  std::size_t component_dim(const Color& c) const;

  // Product of input component dims of a signature. Colors must be present
  // in components.
  std::size_t input_dim(const Signature& sig) const;

  // Action matrix of one basis operation, materializing absent entries as
  // zero. The label must belong to the operad.
  ComplexMatrix structure_matrix(const std::string& label) const;

  // Action of a linear combination supported on one signature.
  ComplexMatrix structure_matrix(const LinComb& v, const Signature& sig) const;
};

// Componentwise linear maps between algebras over one operad.
struct AlgebraMorphism {
  std::map<Color, ComplexMatrix> components;
};

// Structural checks against a.operad: component coverage and dimensions,
// structure-matrix shapes, the unit combination acting as the identity, and
// compatibility of the action with every composite recorded in the
// composition table (unrecorded composites constrain nothing). Never throws.
ValidationReport validate_algebra(const PAlgebra& a);

// Checks f: source -> target: both algebras share the operad data, every
// color has a map of shape dim B_c x dim A_c, the maps intertwine all
// structure matrices, and distinguished endomorphisms when present on both
// sides (present on one side only is a violation). Tolerance 1e-10.
ValidationReport validate_morphism(const PAlgebra& source,
                                   const PAlgebra& target,
                                   const AlgebraMorphism& f);

// Transport along an invertible componentwise change of basis s: structure
// maps conjugate to S_out . phi . (S_in1 x ... x S_inn)^{-1}, distinguished
// endomorphisms to S T S^{-1}. Every color needs an invertible square matrix
// of matching dimension.
PAlgebra conjugate_algebra(const PAlgebra& a,
                           const std::map<Color, ComplexMatrix>& s);

// The four-block algebra over matrix_block_operad: carriers of dims
// a11.rows() and a22.rows(), off-diagonal blocks realized both as the unary
// cross actions (a -> a12, b -> a21) and through the binary cross operations
// acting by second-slot projection; diagonal binary operations act as zero so
// the blocks stay unconstrained. a11 and a22 become the distinguished
// endomorphisms. Throws DimensionMismatch on inconsistent shapes.
PAlgebra block_algebra(const ComplexMatrix& a11, const ComplexMatrix& a12,
                       const ComplexMatrix& a21, const ComplexMatrix& a22);

// One-dimensional carrier per vertex; an edge operation acts as
// multiplication by its weight, a converging-pair operation by its entry in
// g.pair_weights (zero when absent). No distinguished endomorphisms.
PAlgebra network_algebra(const Digraph& g);

// Two algebras over one two-color operad with a single binary interaction
// theta in P(1,2;1), identical carriers (C^2 at both colors) and identical
// distinguished endomorphisms (identities), differing only in the action of
// theta: zero in the first, projection to the first slot in the second.
// Naive per-color data cannot tell them apart.
std::pair<PAlgebra, PAlgebra> nogo_witness_pair();

// Polynomial calculus along f(z) = coeffs[0] + coeffs[1] z + ...: replaces
// every distinguished endomorphism T_c by f(T_c) and keeps carriers and
// structure maps; on morphisms the induced map is the identity, so the
// operation is functorial on pointed algebras. Requires a clean
// validate_algebra report (ValidationFailure otherwise) and a distinguished
// endomorphism at every color (MissingDistinguished otherwise).
PAlgebra poly_calculus(const PAlgebra& a, const std::vector<Cplx>& coeffs);

}  // namespace soc

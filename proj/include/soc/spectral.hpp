#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "soc/algebra.hpp"
#include "soc/errors.hpp"
#include "soc/linalg.hpp"
#include "soc/operad.hpp"

namespace soc {

// Direct sum of the unary endomorphism spaces P(c;c), with the inclusion
// offset of each summand. Colors whose endomorphism space is absent or zero
// do not appear.
struct ResidueObject {
  std::vector<Color> colors;
  std::map<Color, std::size_t> dims;
  std::map<Color, std::size_t> offsets;
  std::size_t total = 0;
};

ResidueObject residue(const ColoredOperad& p);

// Universal map out of the residue, assembled block-columnwise from one
// corrector matrix per residue color (shape: common row count x dim P(c;c)).
// Throws DimensionMismatch on a missing color, a wrong column count, or
// disagreeing row counts. Feeding the inclusions back in yields the identity.
ComplexMatrix residue_universal_map(const ColoredOperad& p,
                                    const std::map<Color, ComplexMatrix>& corrector);

// Quotient of C^{x_dim} (x) C^{y_dim} by the balancing relations
// (R_k x) (x) y - x (x) (L_k y) over all listed action pairs and basis
// vectors. The two lists are indexed by the same operad basis elements and
// must have equal length (IndexMismatch otherwise); shapes must match the
// factors (DimensionMismatch). Tensor coordinates are flattened with the
// first factor major. A zero-dimensional factor gives the zero object.
struct BalancedTensor {
  std::size_t x_dim = 0;
  std::size_t y_dim = 0;
  QuotientProjection quotient;

  std::size_t dimension() const { return quotient.quotient_dim; }
};

BalancedTensor balanced_tensor(std::size_t x_dim, std::size_t y_dim,
                               const std::vector<ComplexMatrix>& right_action,
                               const std::vector<ComplexMatrix>& left_action);

// Levels 0 and 1 of the bar construction of an algebra. Level 0 is the direct
// sum of the carriers (one summand per color); level 1 has one summand per
// basis operation, carrying the tensor product of that operation's input
// components. Level 1 comes with the two face maps into level 0:
// d0 applies the structure matrices, d1 is the unit retraction: on the
// summand of a basis element b of P(c;c) with unit u it acts by
// conj(u_b)/|u|^2 times the identity (so that d1 restricted to the unit
// embedding is the identity, making the pair reflexive), and by zero on all
// other summands. Levels above 1 throw UnsupportedLevel.
struct BarSummand {
  std::string label;  // color name at level 0, operation label at level 1
  Color output;
  std::size_t offset = 0;
  std::size_t dim = 0;
};

struct BarLevel {
  std::size_t level = 0;
  std::size_t dimension = 0;
  std::vector<BarSummand> summands;
  std::vector<ComplexMatrix> faces;  // level 1: {d0, d1}, both into level 0
};

BarLevel bar_level(const PAlgebra& a, std::size_t n);

// Reflexive coequalizer of (d0, d1): the quotient of level 0 by the image of
// d0 - d1.
struct HochschildObject {
  std::size_t ambient = 0;  // dim of bar level 0
  std::size_t dimension = 0;
  QuotientProjection projection;
};

HochschildObject hochschild(const PAlgebra& a);

// Structural spectral decomposition. local counts dim A_c times dim P(c;c)
// per color. cross holds one record per basis operation that can carry
// interaction: arity at least two, or a unary operation between distinct
// colors. Its image dimension is the rank of the structure matrix, and it
// contributes image_dim * dim P(c_out;c_out) to the cross total.
struct CrossRecord {
  std::string op;
  Color output_color;
  std::size_t image_dim = 0;
  std::size_t residue_dim = 0;
  std::size_t contribution = 0;
  std::string provenance;
};

struct SpectralDecomposition {
  std::map<Color, std::size_t> local;
  std::vector<CrossRecord> cross;
  std::size_t local_total = 0;
  std::size_t cross_total = 0;
  std::size_t total = 0;
};

SpectralDecomposition decompose(const PAlgebra& a);

// The operadic spectrum: the balanced tensor product of the interaction
// module with the residue, cross-checked against the structural
// decomposition.
//
// The module is the level-0 bar object enriched by one block per nonzero
// interaction image (a column basis of the structure matrix at its output
// color); the image blocks carry exactly the level-1 data the coequalizer
// forgets. Unit basis elements act on same-color carrier blocks through
// their structure matrices and on same-color image blocks as the identity;
// every other basis element acts as zero on both sides, and the residue side
// composes through the recorded table. The quotient dimension must equal the
// decomposition total exactly; otherwise InconsistentDecomposition is thrown
// (the operation does not pre-validate its input, so corrupt unit actions
// surface here).
struct ModuleBlock {
  std::string label;  // "carrier <color>" or "image <op>"
  Color color;
  std::size_t offset = 0;
  std::size_t dim = 0;
};

struct OperadicSpectrumObject {
  SpectralDecomposition decomposition;
  std::size_t hochschild_dimension = 0;
  std::size_t residue_dimension = 0;
  std::vector<ModuleBlock> module_blocks;
  BalancedTensor tensor;
  std::size_t total = 0;

  // Quotient witness: rows give the coordinates of the balanced tensor
  // quotient inside module (x) residue. Meaningful when total > 0.
  const ComplexMatrix& witness() const { return tensor.quotient.projection; }
};

OperadicSpectrumObject operadic_spectrum(const PAlgebra& a);

// Classical per-color eigenvalue data of the distinguished endomorphisms.
// Colors without a distinguished endomorphism are omitted; an unpointed
// algebra gives an empty map.
std::map<Color, SpectrumSet> naive_spectrum(const PAlgebra& a,
                                            double tol = 1e-8);

// Eigenvalue realization of the interaction part: composites of unary
// cross-color structure maps around simple directed loops in the color graph
// (every color visited at most once), up to max_loop_length edges (zero means
// the default 2 * number of colors). Loops are enumerated from their smallest
// base color, which quotients out rotations; records whose eigenvalue sets
// coincide are merged, keeping every contributing loop in the record. Basis
// operations of arity at least two cannot be walked without a distinguished
// input vector and are listed in notes as unrealized interaction generators.
struct InteractionRecord {
  Color base;
  SpectrumSet values;
  std::vector<std::string> loops;  // "e12 -> e21" style descriptions
};

struct AnalyticSpectrum {
  std::map<Color, SpectrumSet> per_color;
  std::vector<InteractionRecord> interaction;
  std::vector<std::string> notes;
};

AnalyticSpectrum analytic_spectrum(const PAlgebra& a,
                                   std::size_t max_loop_length = 0,
                                   double tol = 1e-8);

}  // namespace soc

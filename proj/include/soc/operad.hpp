#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "soc/errors.hpp"
#include "soc/linalg.hpp"

namespace soc {

// Colors are opaque string tokens. Network operads use vertex names directly.
using Color = std::string;

// Input/output typing of an operation space. Arity is inputs.size() and must
// be at least one.
struct Signature {
  std::vector<Color> inputs;
  Color output;

  bool operator==(const Signature& o) const {
    return inputs == o.inputs && output == o.output;
  }
  bool operator<(const Signature& o) const {
    if (inputs != o.inputs) return inputs < o.inputs;
    return output < o.output;
  }
};

// A finite-dimensional operation space together with its basis labels.
// Labels are global: no two spaces of one operad may share a label.
struct OperationSpace {
  Signature signature;
  std::vector<std::string> basis;

  std::size_t dimension() const { return basis.size(); }
  bool operator==(const OperationSpace& o) const {
    return signature == o.signature && basis == o.basis;
  }
};

// Finite linear combination of basis operations, keyed by label.
// An empty map is the zero element.
using LinComb = std::map<std::string, Cplx>;

// Key of one recorded full composite gamma(outer; inner_1, ..., inner_n).
// inners holds one basis label per input slot of the outer operation.
struct CompositionKey {
  std::string outer;
  std::vector<std::string> inners;

  bool operator==(const CompositionKey& o) const {
    return outer == o.outer && inners == o.inners;
  }
  bool operator<(const CompositionKey& o) const {
    if (outer != o.outer) return outer < o.outer;
    return inners < o.inners;
  }
};

// Optional symmetric-group datum: a matrix acting on the operation space with
// the given signature, for one permutation (image form, 0-based: slot i of
// the permuted operation reads slot permutation[i] of the original).
struct SymmetricActionKey {
  Signature signature;
  std::vector<std::size_t> permutation;

  bool operator<(const SymmetricActionKey& o) const {
    if (!(signature == o.signature)) return signature < o.signature;
    return permutation < o.permutation;
  }
};

// A colored operad presented by generators at desk scale.
//
// The composition table is sparse and partial: an absent key denotes the zero
// composite, and algebra compatibility is only ever enforced for recorded
// keys. Unit composites must be recorded (an absent unit composite would
// force gamma(unit; phi) = 0, which the validator reports as a unit-axiom
// violation). Units are linear combinations in P(c;c); a color whose
// endomorphism space is absent or zero-dimensional legitimately has no unit.
struct ColoredOperad {
  std::string name;
  std::vector<Color> colors;
  std::vector<OperationSpace> spaces;
  std::map<CompositionKey, LinComb> composition;
  std::map<Color, LinComb> units;
  std::map<SymmetricActionKey, ComplexMatrix> symmetric_actions;

  // Locate the space containing a basis label. Returns spaces.size() when the
  // label is unknown; the two-index form also reports the position within the
  // basis.
  std::size_t space_index_of(const std::string& label) const;
  std::pair<std::size_t, std::size_t> locate(const std::string& label) const;

  // Space with exactly this signature, or spaces.size().
  std::size_t space_index_of(const Signature& sig) const;

  // Dimension of the operation space at a signature, zero when absent.
  std::size_t dimension(const Signature& sig) const;

  // Recorded composite of basis operations; absent keys give the zero
  // combination. No typing checks are performed here.
  LinComb compose(const std::string& outer,
                  const std::vector<std::string>& inners) const;

  // Multilinear extension of the table to linear combinations.
  LinComb compose(const LinComb& outer,
                  const std::vector<LinComb>& inners) const;
};

// Outcome of structural validation. Violations are hard failures; warnings
// flag checks that were skipped or sampled. Validation never throws.
struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> warnings;

  bool ok() const { return violations.empty(); }
};

// Structural checks: color and label integrity, typing of every recorded
// composite, unit axioms through the recorded table, associativity on every
// composable triple of recorded entries (exhaustive up to kAssociativityCap
// triples, afterwards sampled with a warning, driven by seed), and
// equivariance for whatever symmetric-group generators were supplied.
inline constexpr std::size_t kAssociativityCap = 100000;
ValidationReport validate_operad(const ColoredOperad& p,
                                 std::uint64_t seed = 20240915u);

// Directed graph with complex edge weights. Labels identify edges and must be
// unique; they become basis labels of the network operad. pair_weights
// optionally attaches a scalar to an ordered pair of distinct edges with a
// common target (the binary operation on that pair); absent pairs act as
// zero.
struct DigraphEdge {
  std::string from;
  std::string to;
  Cplx weight = Cplx(0.0, 0.0);
  std::string label;
};

struct PairWeight {
  std::string first;
  std::string second;
  Cplx weight = Cplx(0.0, 0.0);
};

struct Digraph {
  std::vector<std::string> vertices;
  std::vector<DigraphEdge> edges;
  std::vector<PairWeight> pair_weights;
};

// One color "*" and the one-dimensional endomorphism space spanned by the
// unit "e".
ColoredOperad trivial_operad();

// Two colors "1", "2". One-dimensional spaces: units id1, id2; binary m111,
// m222 on the diagonal; binary cross m121 in P(1,2;1) and m212 in P(2,1;2);
// unary cross a in P(2;1) and b in P(1;2) realizing the off-diagonal block
// maps directly. Composition records exactly the unit composites; composites
// of cross operations land in recorded spaces but stay unrecorded (zero), so
// algebras may realize the blocks freely.
ColoredOperad matrix_block_operad();

// One color per vertex, P(v;v) spanned by a unit, one unary basis operation
// per edge, and one binary operation per ordered pair of distinct edges with
// a common target. Self-loops are rejected (they would enlarge P(v;v) past
// the unit line). Throws EmptyGraph on a vertexless graph and InvalidGraph on
// bad endpoints, duplicate labels, or self-loops.
ColoredOperad network_operad(const Digraph& g);

// Label of the unit operation of vertex v, and label of the binary operation
// attached to the ordered edge pair (first, second). Shared by the operad and
// algebra constructors and by report provenance.
std::string network_unit_label(const std::string& vertex);
std::string network_pair_label(const std::string& first,
                               const std::string& second);

}  // namespace soc

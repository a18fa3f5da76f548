#include "soc/algebra.hpp"

#include <cmath>
#include <set>
#include <sstream>

namespace soc {

namespace {

std::string shape(const ComplexMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Tensor product of per-slot matrices, first slot major; an empty list gives
// the 1x1 identity (empty tensor factor).
ComplexMatrix kron_all(const std::vector<const ComplexMatrix*>& factors) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (const ComplexMatrix* f : factors) out = out.kron(*f);
  return out;
}

}  // namespace

std::size_t PAlgebra::component_dim(const Color& c) const {
  const auto it = components.find(c);
  return it == components.end() ? 0 : it->second;
}

std::size_t PAlgebra::input_dim(const Signature& sig) const {
  std::size_t d = 1;
  for (const Color& c : sig.inputs) d *= components.at(c);
  return d;
}

ComplexMatrix PAlgebra::structure_matrix(const std::string& label) const {
  const auto it = structure.find(label);
  if (it != structure.end()) return it->second;
  const auto loc = operad.locate(label);
  if (loc.first == operad.spaces.size()) {
    throw IndexMismatch("unknown operation label: " + label);
  }
  const Signature& sig = operad.spaces[loc.first].signature;
  return ComplexMatrix(components.at(sig.output), input_dim(sig));
}

ComplexMatrix PAlgebra::structure_matrix(const LinComb& v,
                                         const Signature& sig) const {
  ComplexMatrix out(components.at(sig.output), input_dim(sig));
  for (const auto& [label, coeff] : v) {
    out = out + coeff * structure_matrix(label);
  }
  return out;
}

ValidationReport validate_algebra(const PAlgebra& a) {
  ValidationReport rep;
  constexpr double tol = 1e-10;
  const ColoredOperad& p = a.operad;

  std::set<Color> colors(p.colors.begin(), p.colors.end());
  for (const Color& c : p.colors) {
    const auto it = a.components.find(c);
    if (it == a.components.end()) {
      rep.violations.push_back("no component at color " + c);
    } else if (it->second == 0) {
      rep.violations.push_back("zero-dimensional component at color " + c);
    }
  }
  for (const auto& [c, dim] : a.components) {
    (void)dim;
    if (!colors.count(c)) {
      rep.violations.push_back("component at unknown color " + c);
    }
  }
  if (!rep.violations.empty()) return rep;  // shapes below would be bogus

  for (const auto& [label, m] : a.structure) {
    const auto loc = p.locate(label);
    if (loc.first == p.spaces.size()) {
      rep.violations.push_back("structure matrix for unknown operation " +
                               label);
      continue;
    }
    const Signature& sig = p.spaces[loc.first].signature;
    const std::size_t rows = a.components.at(sig.output);
    const std::size_t cols = a.input_dim(sig);
    if (m.rows() != rows || m.cols() != cols) {
      rep.violations.push_back("structure matrix for " + label + " is " +
                               shape(m) + ", expected " +
                               std::to_string(rows) + "x" +
                               std::to_string(cols));
    } else if (!m.all_finite()) {
      rep.violations.push_back("structure matrix for " + label +
                               " has non-finite entries");
    }
  }

  for (const auto& [c, t] : a.distinguished) {
    if (!colors.count(c)) {
      rep.violations.push_back("distinguished endomorphism at unknown color " +
                               c);
      continue;
    }
    const std::size_t dim = a.components.at(c);
    if (t.rows() != dim || t.cols() != dim) {
      rep.violations.push_back("distinguished endomorphism at color " + c +
                               " is " + shape(t) + ", expected " +
                               std::to_string(dim) + "x" +
                               std::to_string(dim));
    } else if (!t.all_finite()) {
      rep.violations.push_back("distinguished endomorphism at color " + c +
                               " has non-finite entries");
    }
  }
  if (!rep.violations.empty()) return rep;

  for (const auto& [c, unit] : p.units) {
    const Signature endo{{c}, c};
    if (p.space_index_of(endo) == p.spaces.size()) continue;  // operad issue
    const ComplexMatrix act = a.structure_matrix(unit, endo);
    const ComplexMatrix eye = ComplexMatrix::identity(a.components.at(c));
    const double dev = act.max_abs_diff(eye);
    if (dev > tol) {
      std::ostringstream os;
      os << "unit at color " << c << " does not act as the identity"
         << " (deviation " << dev << ")";
      rep.violations.push_back(os.str());
    }
  }

  // Compatibility with every recorded composite.
  for (const auto& [key, result] : p.composition) {
    const auto outer_loc = p.locate(key.outer);
    if (outer_loc.first == p.spaces.size()) continue;
    const Signature& outer_sig = p.spaces[outer_loc.first].signature;
    if (key.inners.size() != outer_sig.inputs.size()) continue;

    std::vector<ComplexMatrix> inner_mats;
    Signature composite;
    composite.output = outer_sig.output;
    bool typed = true;
    for (const auto& inner : key.inners) {
      const auto loc = p.locate(inner);
      if (loc.first == p.spaces.size()) {
        typed = false;
        break;
      }
      const Signature& isig = p.spaces[loc.first].signature;
      if (isig.output != outer_sig.inputs[inner_mats.size()]) {
        typed = false;
        break;
      }
      composite.inputs.insert(composite.inputs.end(), isig.inputs.begin(),
                              isig.inputs.end());
      inner_mats.push_back(a.structure_matrix(inner));
    }
    if (!typed) continue;  // validate_operad reports the typing problem

    std::vector<const ComplexMatrix*> ptrs;
    ptrs.reserve(inner_mats.size());
    for (const auto& m : inner_mats) ptrs.push_back(&m);
    const ComplexMatrix lhs =
        a.structure_matrix(key.outer) * kron_all(ptrs);
    const ComplexMatrix rhs = a.structure_matrix(result, composite);
    const double dev = lhs.max_abs_diff(rhs);
    if (dev > tol) {
      std::ostringstream os;
      os << "action incompatible with recorded composite [" << key.outer
         << "; ";
      for (std::size_t i = 0; i < key.inners.size(); ++i) {
        if (i) os << ", ";
        os << key.inners[i];
      }
      os << "] (deviation " << dev << ")";
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

ValidationReport validate_morphism(const PAlgebra& source,
                                   const PAlgebra& target,
                                   const AlgebraMorphism& f) {
  ValidationReport rep;
  constexpr double tol = 1e-10;
  const ColoredOperad& p = source.operad;
  if (!(p.colors == target.operad.colors) ||
      !(p.spaces == target.operad.spaces) ||
      p.composition != target.operad.composition ||
      p.units != target.operad.units) {
    rep.violations.push_back("source and target live over different operads");
    return rep;
  }

  for (const Color& c : p.colors) {
    const auto it = f.components.find(c);
    if (it == f.components.end()) {
      rep.violations.push_back("morphism has no component at color " + c);
      continue;
    }
    if (it->second.rows() != target.component_dim(c) ||
        it->second.cols() != source.component_dim(c)) {
      rep.violations.push_back("morphism component at color " + c + " is " +
                               shape(it->second));
    }
  }
  if (!rep.violations.empty()) return rep;

  for (const auto& sp : p.spaces) {
    for (const auto& label : sp.basis) {
      std::vector<ComplexMatrix> fins;
      for (const Color& c : sp.signature.inputs) {
        fins.push_back(f.components.at(c));
      }
      std::vector<const ComplexMatrix*> ptrs;
      for (const auto& m : fins) ptrs.push_back(&m);
      const ComplexMatrix lhs =
          f.components.at(sp.signature.output) * source.structure_matrix(label);
      const ComplexMatrix rhs = target.structure_matrix(label) * kron_all(ptrs);
      const double dev = lhs.max_abs_diff(rhs);
      if (dev > tol) {
        std::ostringstream os;
        os << "morphism does not intertwine " << label << " (deviation " << dev
           << ")";
        rep.violations.push_back(os.str());
      }
    }
  }

  for (const Color& c : p.colors) {
    const bool in_src = source.distinguished.count(c) > 0;
    const bool in_tgt = target.distinguished.count(c) > 0;
    if (in_src != in_tgt) {
      rep.violations.push_back(
          "distinguished endomorphism present on one side only at color " + c);
      continue;
    }
    if (!in_src) continue;
    const ComplexMatrix& fc = f.components.at(c);
    const double dev = (fc * source.distinguished.at(c))
                           .max_abs_diff(target.distinguished.at(c) * fc);
    if (dev > tol) {
      std::ostringstream os;
      os << "morphism does not intertwine the distinguished endomorphism at "
         << c << " (deviation " << dev << ")";
      rep.violations.push_back(os.str());
    }
  }
  return rep;
}

PAlgebra conjugate_algebra(const PAlgebra& a,
                           const std::map<Color, ComplexMatrix>& s) {
  std::map<Color, ComplexMatrix> inv;
  for (const Color& c : a.operad.colors) {
    const auto it = s.find(c);
    if (it == s.end()) {
      throw DimensionMismatch("change of basis missing color " + c);
    }
    const std::size_t dim = a.component_dim(c);
    if (it->second.rows() != dim || it->second.cols() != dim) {
      throw DimensionMismatch("change of basis at color " + c +
                              " has wrong shape");
    }
    inv.insert({c, inverse(it->second)});
  }

  PAlgebra out = a;
  for (auto& [label, m] : out.structure) {
    const auto loc = a.operad.locate(label);
    const Signature& sig = a.operad.spaces[loc.first].signature;
    std::vector<const ComplexMatrix*> ptrs;
    for (const Color& c : sig.inputs) ptrs.push_back(&inv.at(c));
    m = s.at(sig.output) * m * kron_all(ptrs);
  }
  for (auto& [c, t] : out.distinguished) {
    t = s.at(c) * t * inv.at(c);
  }
  return out;
}

PAlgebra block_algebra(const ComplexMatrix& a11, const ComplexMatrix& a12,
                       const ComplexMatrix& a21, const ComplexMatrix& a22) {
  const std::size_t n1 = a11.rows();
  const std::size_t n2 = a22.rows();
  if (a11.cols() != n1 || a22.cols() != n2) {
    throw DimensionMismatch("diagonal blocks must be square");
  }
  if (a12.rows() != n1 || a12.cols() != n2) {
    throw DimensionMismatch("block a12 must be " + std::to_string(n1) + "x" +
                            std::to_string(n2) + ", got " + shape(a12));
  }
  if (a21.rows() != n2 || a21.cols() != n1) {
    throw DimensionMismatch("block a21 must be " + std::to_string(n2) + "x" +
                            std::to_string(n1) + ", got " + shape(a21));
  }

  PAlgebra a;
  a.name = "block";
  a.operad = matrix_block_operad();
  a.components = {{"1", n1}, {"2", n2}};
  a.structure.insert({"id1", ComplexMatrix::identity(n1)});
  a.structure.insert({"id2", ComplexMatrix::identity(n2)});
  a.structure.insert({"a", a12});
  a.structure.insert({"b", a21});

  // Binary cross actions: second-slot projection followed by the block map.
  ComplexMatrix m121(n1, n1 * n2);
  for (std::size_t r = 0; r < n1; ++r) {
    for (std::size_t i = 0; i < n1; ++i) {
      for (std::size_t j = 0; j < n2; ++j) {
        m121.at(r, i * n2 + j) = a12.at(r, j);
      }
    }
  }
  ComplexMatrix m212(n2, n2 * n1);
  for (std::size_t r = 0; r < n2; ++r) {
    for (std::size_t i = 0; i < n2; ++i) {
      for (std::size_t j = 0; j < n1; ++j) {
        m212.at(r, i * n1 + j) = a21.at(r, j);
      }
    }
  }
  a.structure.insert({"m121", m121});
  a.structure.insert({"m212", m212});

  a.distinguished.insert({"1", a11});
  a.distinguished.insert({"2", a22});
  return a;
}

PAlgebra network_algebra(const Digraph& g) {
  PAlgebra a;
  a.name = "network";
  a.operad = network_operad(g);
  for (const auto& v : g.vertices) {
    a.components[v] = 1;
    a.structure.insert(
        {network_unit_label(v), ComplexMatrix::identity(1)});
  }
  for (const auto& e : g.edges) {
    a.structure.insert({e.label, ComplexMatrix(1, 1, {e.weight})});
  }
  for (const auto& pw : g.pair_weights) {
    a.structure.insert({network_pair_label(pw.first, pw.second),
                        ComplexMatrix(1, 1, {pw.weight})});
  }
  return a;
}

std::pair<PAlgebra, PAlgebra> nogo_witness_pair() {
  ColoredOperad p;
  p.name = "nogo";
  p.colors = {"1", "2"};
  p.spaces = {
      {Signature{{"1"}, "1"}, {"id1"}},
      {Signature{{"2"}, "2"}, {"id2"}},
      {Signature{{"1", "2"}, "1"}, {"theta"}},
  };
  p.units["1"] = {{"id1", Cplx(1.0, 0.0)}};
  p.units["2"] = {{"id2", Cplx(1.0, 0.0)}};
  p.composition[{"id1", {"id1"}}] = {{"id1", Cplx(1.0, 0.0)}};
  p.composition[{"id2", {"id2"}}] = {{"id2", Cplx(1.0, 0.0)}};
  p.composition[{"id1", {"theta"}}] = {{"theta", Cplx(1.0, 0.0)}};
  p.composition[{"theta", {"id1", "id2"}}] = {{"theta", Cplx(1.0, 0.0)}};

  PAlgebra a;
  a.name = "nogo_silent";
  a.operad = p;
  a.components = {{"1", 2}, {"2", 2}};
  a.structure.insert({"id1", ComplexMatrix::identity(2)});
  a.structure.insert({"id2", ComplexMatrix::identity(2)});
  a.distinguished.insert({"1", ComplexMatrix::identity(2)});
  a.distinguished.insert({"2", ComplexMatrix::identity(2)});

  PAlgebra b = a;
  b.name = "nogo_coupled";
  // theta(x (x) y) = x: columns indexed by (i, j) -> e_i.
  ComplexMatrix proj(2, 4);
  proj.at(0, 0) = 1.0;
  proj.at(0, 1) = 1.0;
  proj.at(1, 2) = 1.0;
  proj.at(1, 3) = 1.0;
  b.structure.insert({"theta", proj});
  return {a, b};
}

PAlgebra poly_calculus(const PAlgebra& a, const std::vector<Cplx>& coeffs) {
  const ValidationReport rep = validate_algebra(a);
  if (!rep.ok()) {
    throw ValidationFailure("polynomial calculus on an invalid algebra: " +
                            rep.violations.front());
  }
  for (const Color& c : a.operad.colors) {
    if (!a.distinguished.count(c)) {
      throw MissingDistinguished("no distinguished endomorphism at color " +
                                 c);
    }
  }
  PAlgebra out = a;
  for (auto& [c, t] : out.distinguished) {
    t = poly_apply(t, coeffs);
  }
  return out;
}

}  // namespace soc

#include "soc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

namespace soc {

namespace {

std::string signature_string(const Signature& sig) {
  std::string out = "(";
  for (std::size_t i = 0; i < sig.inputs.size(); ++i) {
    if (i) out += ", ";
    out += sig.inputs[i];
  }
  out += ") -> " + sig.output;
  return out;
}

}  // namespace

ResidueObject residue(const ColoredOperad& p) {
  ResidueObject r;
  for (const Color& c : p.colors) {
    const std::size_t d = p.dimension(Signature{{c}, c});
    if (d == 0) continue;
    r.colors.push_back(c);
    r.dims[c] = d;
    r.offsets[c] = r.total;
    r.total += d;
  }
  return r;
}

ComplexMatrix residue_universal_map(
    const ColoredOperad& p, const std::map<Color, ComplexMatrix>& corrector) {
  const ResidueObject r = residue(p);
  if (r.total == 0) {
    throw DimensionMismatch("residue of this operad is zero-dimensional");
  }
  std::size_t rows = 0;
  for (const Color& c : r.colors) {
    const auto it = corrector.find(c);
    if (it == corrector.end()) {
      throw DimensionMismatch("corrector is missing residue color " + c);
    }
    if (it->second.cols() != r.dims.at(c)) {
      throw DimensionMismatch("corrector at color " + c + " must have " +
                              std::to_string(r.dims.at(c)) + " columns");
    }
    if (rows == 0) {
      rows = it->second.rows();
    } else if (it->second.rows() != rows) {
      throw DimensionMismatch("corrector row counts disagree at color " + c);
    }
  }
  ComplexMatrix out(rows, r.total);
  for (const Color& c : r.colors) {
    const ComplexMatrix& m = corrector.at(c);
    const std::size_t off = r.offsets.at(c);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        out.at(i, off + j) = m.at(i, j);
      }
    }
  }
  return out;
}

BalancedTensor balanced_tensor(std::size_t x_dim, std::size_t y_dim,
                               const std::vector<ComplexMatrix>& right_action,
                               const std::vector<ComplexMatrix>& left_action) {
  if (right_action.size() != left_action.size()) {
    throw IndexMismatch(
        "right and left action lists must be indexed by the same basis "
        "elements");
  }
  BalancedTensor t;
  t.x_dim = x_dim;
  t.y_dim = y_dim;
  if (x_dim == 0 || y_dim == 0) {
    t.quotient.ambient = 0;
    t.quotient.quotient_dim = 0;
    return t;
  }
  for (std::size_t k = 0; k < right_action.size(); ++k) {
    if (right_action[k].rows() != x_dim || right_action[k].cols() != x_dim) {
      throw DimensionMismatch("right action " + std::to_string(k) +
                              " does not act on the first factor");
    }
    if (left_action[k].rows() != y_dim || left_action[k].cols() != y_dim) {
      throw DimensionMismatch("left action " + std::to_string(k) +
                              " does not act on the second factor");
    }
  }
  const std::size_t ambient = x_dim * y_dim;
  const std::size_t count = right_action.size() * x_dim * y_dim;
  ComplexMatrix gens(std::max<std::size_t>(count, 1), ambient);
  std::size_t row = 0;
  for (std::size_t k = 0; k < right_action.size(); ++k) {
    const ComplexMatrix& r = right_action[k];
    const ComplexMatrix& l = left_action[k];
    for (std::size_t i = 0; i < x_dim; ++i) {
      for (std::size_t j = 0; j < y_dim; ++j) {
        // (R e_i) (x) f_j - e_i (x) (L f_j)
        for (std::size_t s = 0; s < x_dim; ++s) {
          gens.at(row, s * y_dim + j) += r.at(s, i);
        }
        for (std::size_t s = 0; s < y_dim; ++s) {
          gens.at(row, i * y_dim + s) -= l.at(s, j);
        }
        ++row;
      }
    }
  }
  t.quotient = quotient_projection(gens, kRankTol);
  return t;
}

BarLevel bar_level(const PAlgebra& a, std::size_t n) {
  if (n >= 2) {
    throw UnsupportedLevel("bar levels above 1 are not realized");
  }
  BarLevel lvl;
  lvl.level = n;
  if (n == 0) {
    for (const Color& c : a.operad.colors) {
      const std::size_t d = a.components.at(c);
      lvl.summands.push_back({c, c, lvl.dimension, d});
      lvl.dimension += d;
    }
    return lvl;
  }

  const BarLevel base = bar_level(a, 0);
  std::map<Color, std::size_t> offset0;
  for (const auto& s : base.summands) offset0[s.output] = s.offset;

  for (const auto& sp : a.operad.spaces) {
    const std::size_t d = a.input_dim(sp.signature);
    for (const auto& label : sp.basis) {
      lvl.summands.push_back({label, sp.signature.output, lvl.dimension, d});
      lvl.dimension += d;
    }
  }
  if (lvl.dimension == 0 || base.dimension == 0) return lvl;

  ComplexMatrix d0(base.dimension, lvl.dimension);
  ComplexMatrix d1(base.dimension, lvl.dimension);
  for (const auto& s : lvl.summands) {
    const ComplexMatrix mu = a.structure_matrix(s.label);
    const std::size_t r0 = offset0.at(s.output);
    for (std::size_t i = 0; i < mu.rows(); ++i) {
      for (std::size_t j = 0; j < mu.cols(); ++j) {
        d0.at(r0 + i, s.offset + j) = mu.at(i, j);
      }
    }

    const auto loc = a.operad.locate(s.label);
    const Signature& sig = a.operad.spaces[loc.first].signature;
    if (sig.inputs.size() != 1 || sig.inputs[0] != sig.output) continue;
    const auto uit = a.operad.units.find(sig.output);
    if (uit == a.operad.units.end()) continue;
    double norm2 = 0.0;
    for (const auto& [lab, coeff] : uit->second) {
      (void)lab;
      norm2 += std::norm(coeff);
    }
    const auto term = uit->second.find(s.label);
    if (term == uit->second.end() || norm2 == 0.0) continue;
    const Cplx lambda = std::conj(term->second) / norm2;
    for (std::size_t i = 0; i < s.dim; ++i) {
      d1.at(r0 + i, s.offset + i) = lambda;
    }
  }
  lvl.faces = {d0, d1};
  return lvl;
}

HochschildObject hochschild(const PAlgebra& a) {
  const BarLevel l0 = bar_level(a, 0);
  const BarLevel l1 = bar_level(a, 1);
  HochschildObject h;
  h.ambient = l0.dimension;
  if (l0.dimension == 0) {
    h.dimension = 0;
    return h;
  }
  if (l1.dimension == 0) {
    h.projection = quotient_projection(ComplexMatrix(1, l0.dimension),
                                       kRankTol);
    h.dimension = h.projection.quotient_dim;
    return h;
  }
  const ComplexMatrix diff = l1.faces[0] - l1.faces[1];
  h.projection = quotient_projection(diff.transpose(), kRankTol);
  h.dimension = h.projection.quotient_dim;
  return h;
}

SpectralDecomposition decompose(const PAlgebra& a) {
  SpectralDecomposition d;
  const ColoredOperad& p = a.operad;
  for (const Color& c : p.colors) {
    const std::size_t l =
        a.components.at(c) * p.dimension(Signature{{c}, c});
    d.local[c] = l;
    d.local_total += l;
  }
  for (const auto& sp : p.spaces) {
    const std::size_t arity = sp.signature.inputs.size();
    const bool cross_unary =
        arity == 1 && sp.signature.inputs[0] != sp.signature.output;
    if (arity < 2 && !cross_unary) continue;
    for (const auto& label : sp.basis) {
      CrossRecord rec;
      rec.op = label;
      rec.output_color = sp.signature.output;
      rec.image_dim = rank(a.structure_matrix(label));
      rec.residue_dim = p.dimension(
          Signature{{sp.signature.output}, sp.signature.output});
      rec.contribution = rec.image_dim * rec.residue_dim;
      rec.provenance = (cross_unary ? "unary cross operation "
                                    : "arity " + std::to_string(arity) +
                                          " operation ") +
                       label + ": " + signature_string(sp.signature);
      d.cross.push_back(rec);
      d.cross_total += rec.contribution;
    }
  }
  d.total = d.local_total + d.cross_total;
  return d;
}

OperadicSpectrumObject operadic_spectrum(const PAlgebra& a) {
  OperadicSpectrumObject obj;
  obj.decomposition = decompose(a);
  obj.hochschild_dimension = hochschild(a).dimension;
  const ResidueObject res = residue(a.operad);
  obj.residue_dimension = res.total;

  std::size_t x_dim = 0;
  for (const Color& c : a.operad.colors) {
    obj.module_blocks.push_back(
        {"carrier " + c, c, x_dim, a.components.at(c)});
    x_dim += a.components.at(c);
  }
  for (const CrossRecord& rec : obj.decomposition.cross) {
    if (rec.image_dim == 0) continue;
    obj.module_blocks.push_back(
        {"image " + rec.op, rec.output_color, x_dim, rec.image_dim});
    x_dim += rec.image_dim;
  }

  std::vector<ComplexMatrix> rights;
  std::vector<ComplexMatrix> lefts;
  for (const Color& c : res.colors) {
    const Signature endo{{c}, c};
    const std::size_t si = a.operad.space_index_of(endo);
    const auto& basis = a.operad.spaces[si].basis;
    const auto uit = a.operad.units.find(c);
    const std::size_t yoff = res.offsets.at(c);
    for (std::size_t bi = 0; bi < basis.size(); ++bi) {
      const std::string& b = basis[bi];
      const bool sole_unit =
          uit != a.operad.units.end() && uit->second.size() == 1 &&
          uit->second.count(b) > 0 &&
          std::abs(uit->second.at(b) - Cplx(1.0, 0.0)) <= 1e-12;

      ComplexMatrix r(std::max<std::size_t>(x_dim, 1),
                      std::max<std::size_t>(x_dim, 1));
      const ComplexMatrix mu = a.structure_matrix(b);
      for (const ModuleBlock& blk : obj.module_blocks) {
        if (blk.color != c) continue;
        if (blk.label.rfind("carrier", 0) == 0) {
          for (std::size_t i = 0; i < blk.dim; ++i) {
            for (std::size_t j = 0; j < blk.dim; ++j) {
              r.at(blk.offset + i, blk.offset + j) = mu.at(i, j);
            }
          }
        } else if (sole_unit) {
          for (std::size_t i = 0; i < blk.dim; ++i) {
            r.at(blk.offset + i, blk.offset + i) = 1.0;
          }
        }
      }
      rights.push_back(r);

      ComplexMatrix l(std::max<std::size_t>(res.total, 1),
                      std::max<std::size_t>(res.total, 1));
      for (std::size_t xj = 0; xj < basis.size(); ++xj) {
        const LinComb comp = a.operad.compose(b, {basis[xj]});
        for (const auto& [lab, coeff] : comp) {
          const auto loc = a.operad.locate(lab);
          if (loc.first != si) continue;
          l.at(yoff + loc.second, yoff + xj) = coeff;
        }
      }
      lefts.push_back(l);
    }
  }

  obj.tensor = balanced_tensor(x_dim, res.total, rights, lefts);
  obj.total = obj.tensor.dimension();
  if (obj.total != obj.decomposition.total) {
    std::ostringstream os;
    os << "balanced tensor dimension " << obj.total
       << " disagrees with the structural decomposition total "
       << obj.decomposition.total;
    throw InconsistentDecomposition(os.str());
  }
  return obj;
}

std::map<Color, SpectrumSet> naive_spectrum(const PAlgebra& a, double tol) {
  std::map<Color, SpectrumSet> out;
  for (const auto& [c, t] : a.distinguished) {
    out[c] = eigenvalues(t, tol);
  }
  return out;
}

AnalyticSpectrum analytic_spectrum(const PAlgebra& a,
                                   std::size_t max_loop_length, double tol) {
  AnalyticSpectrum out;
  for (const auto& [c, t] : a.distinguished) {
    out.per_color[c] = eigenvalues(t, tol);
  }

  const std::size_t n = a.operad.colors.size();
  const std::size_t cap = max_loop_length ? max_loop_length : 2 * n;

  std::map<Color, std::size_t> cidx;
  for (std::size_t i = 0; i < n; ++i) cidx[a.operad.colors[i]] = i;

  struct EdgeOp {
    std::size_t to;
    std::string label;
  };
  std::vector<std::vector<EdgeOp>> adj(n);
  for (const auto& sp : a.operad.spaces) {
    if (sp.signature.inputs.size() >= 2) {
      for (const auto& label : sp.basis) {
        out.notes.push_back("unrealized interaction generator: " + label +
                            " " + signature_string(sp.signature));
      }
      continue;
    }
    if (sp.signature.inputs.empty() ||
        sp.signature.inputs[0] == sp.signature.output) {
      continue;
    }
    const std::size_t from = cidx.at(sp.signature.inputs[0]);
    const std::size_t to = cidx.at(sp.signature.output);
    for (const auto& label : sp.basis) adj[from].push_back({to, label});
  }

  const auto record = [&](std::size_t base,
                          const std::vector<std::string>& labels,
                          const ComplexMatrix& composite) {
    const SpectrumSet values = eigenvalues(composite, tol);
    std::string desc;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (i) desc += " -> ";
      desc += labels[i];
    }
    for (auto& rec : out.interaction) {
      if (rec.values.equals(values)) {
        rec.loops.push_back(desc);
        return;
      }
    }
    out.interaction.push_back({a.operad.colors[base], values, {desc}});
  };

  // Simple directed loops enumerated from their smallest color index; the
  // running composite is carried along the walk.
  std::vector<bool> visited(n, false);
  std::vector<std::string> labels;
  std::function<void(std::size_t, std::size_t, const ComplexMatrix&)> walk;
  std::size_t base = 0;
  walk = [&](std::size_t at, std::size_t depth, const ComplexMatrix& acc) {
    for (const EdgeOp& e : adj[at]) {
      const ComplexMatrix step = a.structure_matrix(e.label);
      if (e.to == base) {
        labels.push_back(e.label);
        record(base, labels, depth == 0 ? step : step * acc);
        labels.pop_back();
        continue;
      }
      if (depth + 2 > cap) continue;  // closing edge would exceed the cap
      if (e.to < base || visited[e.to]) continue;
      visited[e.to] = true;
      labels.push_back(e.label);
      walk(e.to, depth + 1, depth == 0 ? step : step * acc);
      labels.pop_back();
      visited[e.to] = false;
    }
  };
  // The depth-0 accumulator is a placeholder: the first step always replaces
  // it. A cross loop needs at least two edges, so tiny caps skip the walk.
  for (base = 0; cap >= 2 && base < n; ++base) {
    visited.assign(n, false);
    visited[base] = true;
    walk(base, 0, ComplexMatrix::identity(1));
  }
  return out;
}

}  // namespace soc

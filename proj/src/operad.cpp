#include "soc/operad.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace soc {

namespace {

std::string join_labels(const std::vector<std::string>& labels) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ", ";
    out += labels[i];
  }
  return out;
}

void prune_zeros(LinComb& v) {
  for (auto it = v.begin(); it != v.end();) {
    if (it->second == Cplx(0.0, 0.0)) {
      it = v.erase(it);
    } else {
      ++it;
    }
  }
}

double max_abs_diff(const LinComb& a, const LinComb& b) {
  double m = 0.0;
  for (const auto& [label, coeff] : a) {
    auto it = b.find(label);
    const Cplx other = (it == b.end()) ? Cplx(0.0, 0.0) : it->second;
    m = std::max(m, std::abs(coeff - other));
  }
  for (const auto& [label, coeff] : b) {
    if (a.find(label) == a.end()) m = std::max(m, std::abs(coeff));
  }
  return m;
}

std::string format_lincomb(const LinComb& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [label, coeff] : v) {
    if (!first) os << " + ";
    first = false;
    os << "(" << coeff.real() << (coeff.imag() < 0 ? "-" : "+")
       << std::abs(coeff.imag()) << "i)*" << label;
  }
  return os.str();
}

// Small deterministic generator for sampled associativity checks.
struct SampleRng {
  std::uint32_t state;
  explicit SampleRng(std::uint64_t seed)
      : state(static_cast<std::uint32_t>(seed ^ (seed >> 32)) | 1u) {}
  std::uint32_t next() {
    std::uint32_t x = state;
    x ^= x << 13;
    x ^= x >> 17;
    x ^= x << 5;
    return state = x;
  }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : next() % n; }
};

}  // namespace

std::size_t ColoredOperad::space_index_of(const std::string& label) const {
  return locate(label).first;
}

std::pair<std::size_t, std::size_t> ColoredOperad::locate(
    const std::string& label) const {
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    const auto& basis = spaces[s].basis;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i] == label) return {s, i};
    }
  }
  return {spaces.size(), 0};
}

std::size_t ColoredOperad::space_index_of(const Signature& sig) const {
  for (std::size_t s = 0; s < spaces.size(); ++s) {
    if (spaces[s].signature == sig) return s;
  }
  return spaces.size();
}

std::size_t ColoredOperad::dimension(const Signature& sig) const {
  const std::size_t s = space_index_of(sig);
  return s == spaces.size() ? 0 : spaces[s].dimension();
}

LinComb ColoredOperad::compose(const std::string& outer,
                               const std::vector<std::string>& inners) const {
  const auto it = composition.find(CompositionKey{outer, inners});
  return it == composition.end() ? LinComb{} : it->second;
}

LinComb ColoredOperad::compose(const LinComb& outer,
                               const std::vector<LinComb>& inners) const {
  LinComb result;
  // Expand the product of inner combinations one slot at a time: each state
  // is a (label tuple, coefficient) pair of fully chosen slots so far.
  std::vector<std::pair<std::vector<std::string>, Cplx>> states;
  states.emplace_back(std::vector<std::string>{}, Cplx(1.0, 0.0));
  for (const LinComb& slot : inners) {
    std::vector<std::pair<std::vector<std::string>, Cplx>> next;
    next.reserve(states.size() * std::max<std::size_t>(slot.size(), 1));
    for (const auto& [labels, coeff] : states) {
      for (const auto& [label, c] : slot) {
        auto extended = labels;
        extended.push_back(label);
        next.emplace_back(std::move(extended), coeff * c);
      }
    }
    states = std::move(next);
  }
  for (const auto& [outer_label, outer_coeff] : outer) {
    for (const auto& [labels, coeff] : states) {
      const LinComb term = compose(outer_label, labels);
      for (const auto& [label, c] : term) {
        result[label] += outer_coeff * coeff * c;
      }
    }
  }
  prune_zeros(result);
  return result;
}

namespace {

// Shared context for the validator.
struct Index {
  const ColoredOperad& p;
  std::set<Color> colors;
  bool label_ok(const std::string& label) const {
    return p.space_index_of(label) != p.spaces.size();
  }
};

void check_structure(const Index& ix, ValidationReport& rep) {
  const ColoredOperad& p = ix.p;
  std::set<Color> seen_colors;
  for (const Color& c : p.colors) {
    if (!seen_colors.insert(c).second) {
      rep.violations.push_back("color listed twice: " + c);
    }
  }
  std::set<std::string> labels;
  std::set<Signature> signatures;
  for (const auto& sp : p.spaces) {
    if (sp.signature.inputs.empty()) {
      rep.violations.push_back("operation space with arity zero (output " +
                               sp.signature.output + ")");
    }
    for (const Color& c : sp.signature.inputs) {
      if (!ix.colors.count(c)) {
        rep.violations.push_back("space uses unknown input color: " + c);
      }
    }
    if (!ix.colors.count(sp.signature.output)) {
      rep.violations.push_back("space uses unknown output color: " +
                               sp.signature.output);
    }
    if (!signatures.insert(sp.signature).second) {
      rep.violations.push_back("two spaces share a signature (output " +
                               sp.signature.output + ")");
    }
    if (sp.basis.empty()) {
      rep.violations.push_back("operation space with empty basis (output " +
                               sp.signature.output + ")");
    }
    for (const auto& label : sp.basis) {
      if (label.empty()) {
        rep.violations.push_back("empty basis label (output " +
                                 sp.signature.output + ")");
      } else if (!labels.insert(label).second) {
        rep.violations.push_back("basis label used twice: " + label);
      }
    }
  }
}

void check_units_present(const Index& ix, ValidationReport& rep) {
  const ColoredOperad& p = ix.p;
  for (const auto& [color, unit] : p.units) {
    if (!ix.colors.count(color)) {
      rep.violations.push_back("unit declared at unknown color: " + color);
      continue;
    }
    const Signature endo{{color}, color};
    const std::size_t s = p.space_index_of(endo);
    if (s == p.spaces.size()) {
      rep.violations.push_back(
          "unit declared at color without endomorphism space: " + color);
      continue;
    }
    bool inside = true;
    double norm = 0.0;
    for (const auto& [label, coeff] : unit) {
      norm += std::abs(coeff);
      if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag())) {
        rep.violations.push_back("unit at " + color +
                                 " has a non-finite coefficient");
      }
      const auto loc = p.locate(label);
      if (loc.first != s) inside = false;
    }
    if (!inside) {
      rep.violations.push_back("unit at " + color +
                               " leaves the endomorphism space");
    }
    if (norm == 0.0) {
      rep.violations.push_back("unit at " + color + " is zero");
    }
  }
  for (const Color& c : p.colors) {
    const Signature endo{{c}, c};
    if (p.dimension(endo) > 0 && !p.units.count(c)) {
      rep.violations.push_back(
          "missing unit at color with nonzero endomorphism space: " + c);
    }
  }
}

void check_composition_typing(const Index& ix, ValidationReport& rep) {
  const ColoredOperad& p = ix.p;
  for (const auto& [key, result] : p.composition) {
    const auto outer_loc = p.locate(key.outer);
    if (outer_loc.first == p.spaces.size()) {
      rep.violations.push_back("composition entry with unknown outer label: " +
                               key.outer);
      continue;
    }
    const Signature& outer_sig = p.spaces[outer_loc.first].signature;
    if (key.inners.size() != outer_sig.inputs.size()) {
      rep.violations.push_back("composition entry for " + key.outer +
                               " has wrong slot count");
      continue;
    }
    Signature composite;
    composite.output = outer_sig.output;
    bool typed = true;
    for (std::size_t i = 0; i < key.inners.size(); ++i) {
      const auto loc = p.locate(key.inners[i]);
      if (loc.first == p.spaces.size()) {
        rep.violations.push_back("composition entry [" + key.outer + "; " +
                                 join_labels(key.inners) +
                                 "] uses unknown inner label: " +
                                 key.inners[i]);
        typed = false;
        break;
      }
      const Signature& inner_sig = p.spaces[loc.first].signature;
      if (inner_sig.output != outer_sig.inputs[i]) {
        rep.violations.push_back(
            "composition entry [" + key.outer + "; " +
            join_labels(key.inners) + "] plugs output color " +
            inner_sig.output + " into slot of color " + outer_sig.inputs[i]);
        typed = false;
        break;
      }
      composite.inputs.insert(composite.inputs.end(),
                              inner_sig.inputs.begin(),
                              inner_sig.inputs.end());
    }
    if (!typed) continue;
    const std::size_t cs = p.space_index_of(composite);
    for (const auto& [label, coeff] : result) {
      if (!std::isfinite(coeff.real()) || !std::isfinite(coeff.imag())) {
        rep.violations.push_back("composite [" + key.outer + "; " +
                                 join_labels(key.inners) +
                                 "] has a non-finite coefficient");
      }
      const auto loc = p.locate(label);
      if (loc.first != cs) {
        rep.violations.push_back("composite [" + key.outer + "; " +
                                 join_labels(key.inners) +
                                 "] leaves the composite-signature space");
        break;
      }
    }
  }
}

void check_unit_axioms(const Index& ix, ValidationReport& rep) {
  const ColoredOperad& p = ix.p;
  constexpr double tol = 1e-10;
  for (const auto& sp : p.spaces) {
    for (const auto& label : sp.basis) {
      const LinComb expected{{label, Cplx(1.0, 0.0)}};
      const auto uout = p.units.find(sp.signature.output);
      if (uout != p.units.end()) {
        const LinComb got = p.compose(uout->second, {expected});
        if (max_abs_diff(got, expected) > tol) {
          rep.violations.push_back("unit axiom (left) fails for " + label +
                                   ": got " + format_lincomb(got));
        }
      }
      std::vector<LinComb> slots;
      bool all_units = true;
      for (const Color& c : sp.signature.inputs) {
        const auto u = p.units.find(c);
        if (u == p.units.end()) {
          all_units = false;
          break;
        }
        slots.push_back(u->second);
      }
      if (!all_units) {
        rep.warnings.push_back("right unit axiom skipped for " + label +
                               " (an input color has no unit)");
        continue;
      }
      const LinComb got = p.compose(expected, slots);
      if (max_abs_diff(got, expected) > tol) {
        rep.violations.push_back("unit axiom (right) fails for " + label +
                                 ": got " + format_lincomb(got));
      }
    }
  }
}

void check_associativity(const Index& ix, ValidationReport& rep,
                         std::uint64_t seed) {
  const ColoredOperad& p = ix.p;
  constexpr double tol = 1e-10;
  constexpr std::size_t max_messages = 25;

  using Entry = std::pair<const CompositionKey*, const LinComb*>;
  std::map<std::string, std::vector<Entry>> by_outer;
  std::vector<Entry> entries;
  for (const auto& [key, result] : p.composition) {
    by_outer[key.outer].push_back({&key, &result});
    entries.push_back({&key, &result});
  }

  // One fully expanded triple: an outer entry plus one recorded entry per
  // inner slot.
  const auto check_triple = [&](const Entry& top,
                                const std::vector<Entry>& picks) -> double {
    std::vector<LinComb> inner_results;
    std::vector<std::string> concat;
    for (const Entry& e : picks) {
      inner_results.push_back(*e.second);
      concat.insert(concat.end(), e.first->inners.begin(),
                    e.first->inners.end());
    }
    std::vector<LinComb> concat_singletons;
    concat_singletons.reserve(concat.size());
    for (const auto& l : concat) {
      concat_singletons.push_back(LinComb{{l, Cplx(1.0, 0.0)}});
    }
    const LinComb lhs = p.compose(*top.second, concat_singletons);
    const LinComb rhs =
        p.compose(LinComb{{top.first->outer, Cplx(1.0, 0.0)}}, inner_results);
    return max_abs_diff(lhs, rhs);
  };

  // Count composable triples to decide between exhaustive and sampled.
  double total = 0.0;
  for (const Entry& top : entries) {
    double count = 1.0;
    for (const auto& inner : top.first->inners) {
      const auto it = by_outer.find(inner);
      count *= (it == by_outer.end()) ? 0.0
                                      : static_cast<double>(it->second.size());
      if (count == 0.0) break;
    }
    total += count;
  }

  std::size_t reported = 0;
  const auto report = [&](const Entry& top, double dev) {
    if (reported < max_messages) {
      rep.violations.push_back("associativity fails at [" + top.first->outer +
                               "; " + join_labels(top.first->inners) +
                               "]: deviation " + std::to_string(dev));
    } else if (reported == max_messages) {
      rep.violations.push_back("further associativity violations suppressed");
    }
    ++reported;
  };

  if (total <= static_cast<double>(kAssociativityCap)) {
    for (const Entry& top : entries) {
      const std::size_t n = top.first->inners.size();
      std::vector<const std::vector<Entry>*> cands(n, nullptr);
      bool any = true;
      for (std::size_t i = 0; i < n; ++i) {
        const auto it = by_outer.find(top.first->inners[i]);
        if (it == by_outer.end()) {
          any = false;
          break;
        }
        cands[i] = &it->second;
      }
      if (!any) continue;
      std::vector<std::size_t> pick(n, 0);
      while (true) {
        std::vector<Entry> picks;
        picks.reserve(n);
        for (std::size_t i = 0; i < n; ++i) picks.push_back((*cands[i])[pick[i]]);
        const double dev = check_triple(top, picks);
        if (dev > tol) report(top, dev);
        std::size_t i = 0;
        for (; i < n; ++i) {
          if (++pick[i] < cands[i]->size()) break;
          pick[i] = 0;
        }
        if (i == n) break;
      }
    }
  } else {
    rep.warnings.push_back(
        "associativity checked on a random sample of " +
        std::to_string(kAssociativityCap) + " of about " +
        std::to_string(static_cast<long long>(total)) + " triples");
    SampleRng rng(seed);
    std::size_t done = 0;
    std::size_t attempts = 0;
    while (done < kAssociativityCap && attempts < 8 * kAssociativityCap) {
      ++attempts;
      const Entry& top = entries[rng.below(entries.size())];
      std::vector<Entry> picks;
      bool any = true;
      for (const auto& inner : top.first->inners) {
        const auto it = by_outer.find(inner);
        if (it == by_outer.end()) {
          any = false;
          break;
        }
        picks.push_back(it->second[rng.below(it->second.size())]);
      }
      if (!any) continue;
      const double dev = check_triple(top, picks);
      if (dev > tol) report(top, dev);
      ++done;
    }
  }
}

void check_symmetric_actions(const Index& ix, ValidationReport& rep) {
  const ColoredOperad& p = ix.p;
  constexpr double tol = 1e-10;
  for (const auto& [key, m] : p.symmetric_actions) {
    const std::size_t s = p.space_index_of(key.signature);
    if (s == p.spaces.size()) {
      rep.violations.push_back(
          "symmetric action on a signature without a space");
      continue;
    }
    const std::size_t dim = p.spaces[s].dimension();
    const std::size_t arity = key.signature.inputs.size();
    if (m.rows() != dim || m.cols() != dim) {
      rep.violations.push_back("symmetric action matrix has wrong shape on " +
                               join_labels(p.spaces[s].basis));
      continue;
    }
    std::vector<bool> hit(arity, false);
    bool perm_ok = key.permutation.size() == arity;
    for (const std::size_t v : key.permutation) {
      if (v >= arity || hit[v]) {
        perm_ok = false;
        break;
      }
      if (perm_ok) hit[v] = true;
    }
    if (!perm_ok) {
      rep.violations.push_back("symmetric action with malformed permutation");
      continue;
    }
    // Invariance of the input coloring: a slot may only be moved onto a slot
    // of the same color.
    for (std::size_t i = 0; i < arity; ++i) {
      if (key.signature.inputs[i] !=
          key.signature.inputs[key.permutation[i]]) {
        rep.violations.push_back(
            "symmetric action permutes slots of different colors");
        break;
      }
    }

    // Equivariance on recorded composites of this signature, when the induced
    // action on the composite signature is also supplied.
    for (const auto& [ckey, result] : p.composition) {
      const auto loc = p.locate(ckey.outer);
      if (loc.first != s) continue;
      // Permuted outer basis vector, as a combination.
      LinComb outer_prime;
      for (std::size_t i = 0; i < dim; ++i) {
        const Cplx c = m.at(i, loc.second);
        if (c != Cplx(0.0, 0.0)) outer_prime[p.spaces[s].basis[i]] = c;
      }
      std::vector<LinComb> inners_prime;
      Signature composite;
      composite.output = key.signature.output;
      std::vector<std::size_t> block_offset(arity + 1, 0);
      std::vector<std::size_t> block_size(arity, 0);
      bool typed = true;
      for (std::size_t i = 0; i < arity; ++i) {
        const auto iloc = p.locate(ckey.inners[i]);
        if (iloc.first == p.spaces.size()) {
          typed = false;
          break;
        }
        const auto& isig = p.spaces[iloc.first].signature;
        block_size[i] = isig.inputs.size();
        composite.inputs.insert(composite.inputs.end(), isig.inputs.begin(),
                                isig.inputs.end());
      }
      if (!typed) continue;
      for (std::size_t i = 0; i < arity; ++i) {
        block_offset[i + 1] = block_offset[i] + block_size[i];
      }
      for (std::size_t i = 0; i < arity; ++i) {
        inners_prime.push_back(
            LinComb{{ckey.inners[key.permutation[i]], Cplx(1.0, 0.0)}});
      }
      // Induced block permutation on the concatenated inputs.
      std::vector<std::size_t> induced;
      for (std::size_t i = 0; i < arity; ++i) {
        const std::size_t src = key.permutation[i];
        for (std::size_t j = 0; j < block_size[src]; ++j) {
          induced.push_back(block_offset[src] + j);
        }
      }
      Signature permuted_composite;
      permuted_composite.output = composite.output;
      for (const std::size_t idx : induced) {
        permuted_composite.inputs.push_back(composite.inputs[idx]);
      }
      const auto act =
          p.symmetric_actions.find(SymmetricActionKey{composite, induced});
      if (act == p.symmetric_actions.end()) {
        rep.warnings.push_back(
            "equivariance unchecked for [" + ckey.outer + "; " +
            join_labels(ckey.inners) +
            "] (no action supplied on the composite signature)");
        continue;
      }
      const std::size_t cs = p.space_index_of(composite);
      if (cs == p.spaces.size() ||
          act->second.rows() != p.spaces[cs].dimension() ||
          act->second.cols() != p.spaces[cs].dimension()) {
        rep.violations.push_back(
            "induced symmetric action has wrong shape for [" + ckey.outer +
            "; " + join_labels(ckey.inners) + "]");
        continue;
      }
      const LinComb lhs = p.compose(outer_prime, inners_prime);
      LinComb rhs;
      for (const auto& [label, coeff] : result) {
        const auto rloc = p.locate(label);
        if (rloc.first != cs) continue;
        for (std::size_t i = 0; i < p.spaces[cs].dimension(); ++i) {
          const Cplx c = act->second.at(i, rloc.second) * coeff;
          if (c != Cplx(0.0, 0.0)) rhs[p.spaces[cs].basis[i]] += c;
        }
      }
      prune_zeros(rhs);
      if (max_abs_diff(lhs, rhs) > tol) {
        rep.violations.push_back("symmetric action breaks equivariance at [" +
                                 ckey.outer + "; " +
                                 join_labels(ckey.inners) + "]");
      }
    }
  }
}

}  // namespace

ValidationReport validate_operad(const ColoredOperad& p, std::uint64_t seed) {
  ValidationReport rep;
  Index ix{p, {p.colors.begin(), p.colors.end()}};
  check_structure(ix, rep);
  // Typing errors would make the axiom checks misleading; report them first
  // and stop if the label universe itself is broken.
  check_units_present(ix, rep);
  check_composition_typing(ix, rep);
  check_unit_axioms(ix, rep);
  check_associativity(ix, rep, seed);
  check_symmetric_actions(ix, rep);
  return rep;
}

ColoredOperad trivial_operad() {
  ColoredOperad p;
  p.name = "trivial";
  p.colors = {"*"};
  p.spaces = {{Signature{{"*"}, "*"}, {"e"}}};
  p.units["*"] = {{"e", Cplx(1.0, 0.0)}};
  p.composition[{"e", {"e"}}] = {{"e", Cplx(1.0, 0.0)}};
  return p;
}

ColoredOperad matrix_block_operad() {
  ColoredOperad p;
  p.name = "matrix_block";
  p.colors = {"1", "2"};
  p.spaces = {
      {Signature{{"1"}, "1"}, {"id1"}},
      {Signature{{"2"}, "2"}, {"id2"}},
      {Signature{{"1", "1"}, "1"}, {"m111"}},
      {Signature{{"2", "2"}, "2"}, {"m222"}},
      {Signature{{"1", "2"}, "1"}, {"m121"}},
      {Signature{{"2", "1"}, "2"}, {"m212"}},
      {Signature{{"2"}, "1"}, {"a"}},
      {Signature{{"1"}, "2"}, {"b"}},
  };
  p.units["1"] = {{"id1", Cplx(1.0, 0.0)}};
  p.units["2"] = {{"id2", Cplx(1.0, 0.0)}};
  const auto add = [&p](const std::string& outer,
                        const std::vector<std::string>& inners,
                        const std::string& result) {
    p.composition[{outer, inners}] = {{result, Cplx(1.0, 0.0)}};
  };
  add("id1", {"id1"}, "id1");
  add("id2", {"id2"}, "id2");
  add("id1", {"m111"}, "m111");
  add("id2", {"m222"}, "m222");
  add("id1", {"m121"}, "m121");
  add("id2", {"m212"}, "m212");
  add("id1", {"a"}, "a");
  add("id2", {"b"}, "b");
  add("m111", {"id1", "id1"}, "m111");
  add("m222", {"id2", "id2"}, "m222");
  add("m121", {"id1", "id2"}, "m121");
  add("m212", {"id2", "id1"}, "m212");
  add("a", {"id2"}, "a");
  add("b", {"id1"}, "b");
  return p;
}

std::string network_unit_label(const std::string& vertex) {
  return "id_" + vertex;
}

std::string network_pair_label(const std::string& first,
                               const std::string& second) {
  return "th_" + first + "__" + second;
}

ColoredOperad network_operad(const Digraph& g) {
  if (g.vertices.empty()) {
    throw EmptyGraph("network operad needs at least one vertex");
  }
  std::set<std::string> vertices;
  for (const auto& v : g.vertices) {
    if (v.empty()) throw InvalidGraph("empty vertex name");
    if (!vertices.insert(v).second) {
      throw InvalidGraph("vertex listed twice: " + v);
    }
  }
  std::set<std::string> labels;
  for (const auto& e : g.edges) {
    if (!vertices.count(e.from) || !vertices.count(e.to)) {
      throw InvalidGraph("edge " + e.label + " has an unknown endpoint");
    }
    if (e.from == e.to) {
      throw InvalidGraph("self-loop at " + e.from +
                         " (endomorphism spaces are spanned by units)");
    }
    if (e.label.empty()) throw InvalidGraph("edge without a label");
    if (!labels.insert(e.label).second) {
      throw InvalidGraph("edge label used twice: " + e.label);
    }
  }

  ColoredOperad p;
  p.name = "network";
  p.colors = g.vertices;

  for (const auto& v : g.vertices) {
    const std::string unit = network_unit_label(v);
    if (labels.count(unit)) {
      throw InvalidGraph("edge label collides with unit label: " + unit);
    }
    p.spaces.push_back({Signature{{v}, v}, {unit}});
    p.units[v] = {{unit, Cplx(1.0, 0.0)}};
  }

  std::map<Signature, std::vector<std::string>> grouped;
  for (const auto& e : g.edges) {
    grouped[Signature{{e.from}, e.to}].push_back(e.label);
  }
  // Ordered pairs of distinct edges converging to one target.
  std::map<std::string, std::pair<std::string, std::string>> pair_sources;
  for (const auto& e : g.edges) {
    for (const auto& f : g.edges) {
      if (e.label == f.label || e.to != f.to) continue;
      const std::string label = network_pair_label(e.label, f.label);
      grouped[Signature{{e.from, f.from}, e.to}].push_back(label);
      pair_sources[label] = {e.from, f.from};
    }
  }
  for (auto& [sig, basis] : grouped) {
    std::sort(basis.begin(), basis.end());
    p.spaces.push_back({sig, basis});
  }

  const auto add = [&p](const std::string& outer,
                        const std::vector<std::string>& inners,
                        const std::string& result) {
    p.composition[{outer, inners}] = {{result, Cplx(1.0, 0.0)}};
  };
  for (const auto& v : g.vertices) {
    add(network_unit_label(v), {network_unit_label(v)},
        network_unit_label(v));
  }
  for (const auto& e : g.edges) {
    add(network_unit_label(e.to), {e.label}, e.label);
    add(e.label, {network_unit_label(e.from)}, e.label);
  }
  for (const auto& [label, sources] : pair_sources) {
    const std::string target = label;  // composite stays on itself
    const auto loc = p.locate(label);
    const Color out = p.spaces[loc.first].signature.output;
    add(network_unit_label(out), {label}, target);
    add(label,
        {network_unit_label(sources.first), network_unit_label(sources.second)},
        target);
  }

  // Pair weights are algebra data, but dangling references are graph errors.
  std::map<std::string, const DigraphEdge*> by_label;
  for (const auto& e : g.edges) by_label[e.label] = &e;
  for (const auto& pw : g.pair_weights) {
    const auto a = by_label.find(pw.first);
    const auto b = by_label.find(pw.second);
    if (a == by_label.end() || b == by_label.end()) {
      throw InvalidGraph("pair weight references unknown edge");
    }
    if (pw.first == pw.second || a->second->to != b->second->to) {
      throw InvalidGraph("pair weight on edges without a common target");
    }
  }
  return p;
}

}  // namespace soc

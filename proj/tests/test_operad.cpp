#include "doctest.h"

#include <algorithm>

#include "soc/operad.hpp"

using namespace soc;

namespace {

bool mentions(const std::vector<std::string>& messages,
              const std::string& needle) {
  return std::any_of(messages.begin(), messages.end(),
                     [&](const std::string& m) {
                       return m.find(needle) != std::string::npos;
                     });
}

Digraph two_cycle() {
  Digraph g;
  g.vertices = {"v1", "v2"};
  g.edges = {{"v1", "v2", Cplx(2.0, 0.0), "e12"},
             {"v2", "v1", Cplx(3.0, 0.0), "e21"}};
  return g;
}

}  // namespace

TEST_CASE("trivial operad validates and composes") {
  const ColoredOperad p = trivial_operad();
  const ValidationReport rep = validate_operad(p);
  CHECK(rep.ok());
  CHECK(rep.warnings.empty());
  CHECK(p.colors.size() == 1);
  CHECK(p.dimension(Signature{{"*"}, "*"}) == 1);
  const LinComb c = p.compose("e", {"e"});
  REQUIRE(c.size() == 1);
  CHECK(c.at("e") == Cplx(1.0, 0.0));
}

TEST_CASE("matrix block operad structure") {
  const ColoredOperad p = matrix_block_operad();
  CHECK(p.spaces.size() == 8);
  for (const auto& sp : p.spaces) CHECK(sp.dimension() == 1);
  CHECK(p.dimension(Signature{{"1", "2"}, "1"}) == 1);
  CHECK(p.dimension(Signature{{"2"}, "1"}) == 1);
  CHECK(p.dimension(Signature{{"2", "2"}, "1"}) == 0);

  const ValidationReport rep = validate_operad(p);
  CHECK(rep.ok());
  CHECK(rep.warnings.empty());

  SUBCASE("unit composites reproduce the operation") {
    const LinComb c = p.compose("m121", {"id1", "id2"});
    REQUIRE(c.count("m121") == 1);
    CHECK(c.at("m121") == Cplx(1.0, 0.0));
  }
  SUBCASE("unrecorded cross composites are zero") {
    CHECK(p.compose("a", {"b"}).empty());
    CHECK(p.compose("b", {"a"}).empty());
    CHECK(p.compose("m111", {"m111", "id1"}).empty());
  }
  SUBCASE("multilinear extension distributes") {
    const LinComb outer{{"id1", Cplx(2.0, 0.0)}};
    const LinComb inner{{"a", Cplx(0.0, 1.0)}};
    const LinComb c = p.compose(outer, {inner});
    REQUIRE(c.count("a") == 1);
    CHECK(c.at("a") == Cplx(0.0, 2.0));
  }
}

TEST_CASE("scaled unit breaks the unit axioms") {
  ColoredOperad p = matrix_block_operad();
  p.units["1"]["id1"] = Cplx(2.0, 0.0);
  const ValidationReport rep = validate_operad(p);
  CHECK_FALSE(rep.ok());
  CHECK(mentions(rep.violations, "unit axiom"));
}

TEST_CASE("tampered unit composite breaks the unit axioms") {
  ColoredOperad p = matrix_block_operad();
  p.composition[{"m121", {"id1", "id2"}}] = {{"m121", Cplx(2.0, 0.0)}};
  const ValidationReport rep = validate_operad(p);
  CHECK_FALSE(rep.ok());
  CHECK(mentions(rep.violations, "unit axiom (right)"));
  CHECK(mentions(rep.violations, "m121"));
}

TEST_CASE("removed unit composite is a unit violation, not silence") {
  ColoredOperad p = matrix_block_operad();
  p.composition.erase({"id1", {"a"}});
  const ValidationReport rep = validate_operad(p);
  CHECK_FALSE(rep.ok());
  CHECK(mentions(rep.violations, "unit axiom (left)"));
}

TEST_CASE("composition typing violations are reported") {
  ColoredOperad p = matrix_block_operad();
  SUBCASE("unknown labels") {
    p.composition[{"ghost", {"id1"}}] = {{"id1", Cplx(1.0, 0.0)}};
    const ValidationReport rep = validate_operad(p);
    CHECK(mentions(rep.violations, "unknown outer label"));
  }
  SUBCASE("wrong slot colors") {
    p.composition[{"a", {"id1"}}] = {{"a", Cplx(1.0, 0.0)}};
    const ValidationReport rep = validate_operad(p);
    CHECK(mentions(rep.violations, "plugs output color"));
  }
  SUBCASE("result outside the composite space") {
    p.composition[{"a", {"b"}}] = {{"a", Cplx(1.0, 0.0)}};
    const ValidationReport rep = validate_operad(p);
    CHECK(mentions(rep.violations, "leaves the composite-signature space"));
  }
  SUBCASE("wrong arity") {
    p.composition[{"m111", {"id1"}}] = {{"m111", Cplx(1.0, 0.0)}};
    const ValidationReport rep = validate_operad(p);
    CHECK(mentions(rep.violations, "wrong slot count"));
  }
}

TEST_CASE("associativity violations are caught on recorded triples") {
  // One color, three unary operations. The table is unital, but
  // gamma(gamma(x;x);x) = gamma(y;x) = x while gamma(x;gamma(x;x)) =
  // gamma(x;y) = e.
  ColoredOperad p;
  p.colors = {"c"};
  p.spaces = {{Signature{{"c"}, "c"}, {"e", "x", "y"}}};
  p.units["c"] = {{"e", Cplx(1.0, 0.0)}};
  const auto add = [&p](const std::string& outer, const std::string& inner,
                        const std::string& result) {
    p.composition[{outer, {inner}}] = {{result, Cplx(1.0, 0.0)}};
  };
  add("e", "e", "e");
  add("e", "x", "x");
  add("e", "y", "y");
  add("x", "e", "x");
  add("y", "e", "y");
  add("x", "x", "y");
  add("y", "x", "x");
  add("x", "y", "e");

  const ValidationReport rep = validate_operad(p);
  CHECK_FALSE(rep.ok());
  CHECK(mentions(rep.violations, "associativity"));
}

TEST_CASE("unitless colors are legal only at zero endomorphism spaces") {
  ColoredOperad p;
  p.colors = {"c", "d"};
  p.spaces = {{Signature{{"c"}, "c"}, {"e"}},
              {Signature{{"c"}, "d"}, {"f"}}};
  p.units["c"] = {{"e", Cplx(1.0, 0.0)}};
  p.composition[{"e", {"e"}}] = {{"e", Cplx(1.0, 0.0)}};
  p.composition[{"f", {"e"}}] = {{"f", Cplx(1.0, 0.0)}};

  SUBCASE("no endomorphism space at d, no unit required") {
    const ValidationReport rep = validate_operad(p);
    CHECK(rep.ok());
    // The left unit check for f is vacuous at d; no warning is issued for
    // output colors, only for input slots.
    CHECK(rep.warnings.empty());
  }
  SUBCASE("an endomorphism space without a unit is a violation") {
    p.spaces.push_back({Signature{{"d"}, "d"}, {"g"}});
    const ValidationReport rep = validate_operad(p);
    CHECK_FALSE(rep.ok());
    CHECK(mentions(rep.violations, "missing unit"));
  }
  SUBCASE("input slot without a unit skips the right axiom with a warning") {
    p.spaces.push_back({Signature{{"d"}, "c"}, {"h"}});
    p.composition[{"e", {"h"}}] = {{"h", Cplx(1.0, 0.0)}};
    const ValidationReport rep = validate_operad(p);
    CHECK(rep.ok());
    CHECK(mentions(rep.warnings, "right unit axiom skipped"));
  }
}

TEST_CASE("network operad on the two-cycle") {
  const ColoredOperad p = network_operad(two_cycle());
  CHECK(p.colors == std::vector<Color>{"v1", "v2"});
  // Two unit spaces and two edge spaces; no converging pairs on a two-cycle.
  CHECK(p.spaces.size() == 4);
  CHECK(p.dimension(Signature{{"v1"}, "v2"}) == 1);
  CHECK(p.dimension(Signature{{"v2"}, "v1"}) == 1);

  const ValidationReport rep = validate_operad(p);
  CHECK(rep.ok());
  CHECK(rep.warnings.empty());

  // Path concatenation is not recorded at the operad level.
  CHECK(p.compose("e21", {"e12"}).empty());
}

TEST_CASE("network operad emits binary operations for converging edges") {
  Digraph g;
  g.vertices = {"a", "b", "t"};
  g.edges = {{"a", "t", Cplx(1.0, 0.0), "ea"},
             {"b", "t", Cplx(1.0, 0.0), "eb"}};
  const ColoredOperad p = network_operad(g);
  CHECK(p.dimension(Signature{{"a", "b"}, "t"}) == 1);
  CHECK(p.dimension(Signature{{"b", "a"}, "t"}) == 1);
  const auto loc = p.locate(network_pair_label("ea", "eb"));
  REQUIRE(loc.first < p.spaces.size());
  CHECK(p.spaces[loc.first].signature ==
        Signature{{"a", "b"}, "t"});
  CHECK(validate_operad(p).ok());

  SUBCASE("parallel edges with distinct labels are allowed") {
    g.edges.push_back({"a", "t", Cplx(5.0, 0.0), "ea2"});
    const ColoredOperad q = network_operad(g);
    CHECK(q.dimension(Signature{{"a"}, "t"}) == 2);
    CHECK(q.dimension(Signature{{"a", "a"}, "t"}) == 2);
    CHECK(validate_operad(q).ok());
  }
}

TEST_CASE("network operad rejects malformed graphs") {
  CHECK_THROWS_AS(network_operad(Digraph{}), EmptyGraph);

  Digraph loop;
  loop.vertices = {"v"};
  loop.edges = {{"v", "v", Cplx(1.0, 0.0), "e"}};
  CHECK_THROWS_AS(network_operad(loop), InvalidGraph);

  Digraph dup = two_cycle();
  dup.edges[1].label = "e12";
  CHECK_THROWS_AS(network_operad(dup), InvalidGraph);

  Digraph dangling = two_cycle();
  dangling.edges.push_back({"v1", "zzz", Cplx(1.0, 0.0), "ez"});
  CHECK_THROWS_AS(network_operad(dangling), InvalidGraph);

  Digraph unlabeled = two_cycle();
  unlabeled.edges[0].label = "";
  CHECK_THROWS_AS(network_operad(unlabeled), InvalidGraph);

  Digraph badpair = two_cycle();
  badpair.pair_weights.push_back({"e12", "e21", Cplx(1.0, 0.0)});
  CHECK_THROWS_AS(network_operad(badpair), InvalidGraph);
}

TEST_CASE("symmetric action data is validated when supplied") {
  ColoredOperad p = matrix_block_operad();
  const Signature sig{{"1", "1"}, "1"};

  SUBCASE("consistent generator passes") {
    p.symmetric_actions.insert({SymmetricActionKey{sig, {1, 0}}, ComplexMatrix::identity(1)});
    const ValidationReport rep = validate_operad(p);
    CHECK(rep.ok());
  }
  SUBCASE("wrong matrix shape") {
    p.symmetric_actions.insert({SymmetricActionKey{sig, {1, 0}}, ComplexMatrix::identity(2)});
    const ValidationReport rep = validate_operad(p);
    CHECK(mentions(rep.violations, "wrong shape"));
  }
  SUBCASE("malformed permutation") {
    p.symmetric_actions.insert({SymmetricActionKey{sig, {0, 0}}, ComplexMatrix::identity(1)});
    const ValidationReport rep = validate_operad(p);
    CHECK(mentions(rep.violations, "malformed permutation"));
  }
  SUBCASE("color-mixing permutation") {
    p.symmetric_actions.insert({SymmetricActionKey{Signature{{"1", "2"}, "1"}, {1, 0}}, ComplexMatrix::identity(1)});
    const ValidationReport rep = validate_operad(p);
    CHECK(mentions(rep.violations, "different colors"));
  }
  SUBCASE("missing induced action is a warning") {
    // A composite with blocks of unequal arity: swapping the outer slots of
    // gamma(m; m, e) induces the cycle (2 0 1) on the ternary composite
    // signature, for which no action is supplied.
    ColoredOperad q;
    q.colors = {"c"};
    q.spaces = {{Signature{{"c"}, "c"}, {"e"}},
                {Signature{{"c", "c"}, "c"}, {"m"}}};
    q.units["c"] = {{"e", Cplx(1.0, 0.0)}};
    q.composition[{"e", {"e"}}] = {{"e", Cplx(1.0, 0.0)}};
    q.composition[{"e", {"m"}}] = {{"m", Cplx(1.0, 0.0)}};
    q.composition[{"m", {"e", "e"}}] = {{"m", Cplx(1.0, 0.0)}};
    q.composition[{"m", {"m", "e"}}] = {};
    q.symmetric_actions.insert({SymmetricActionKey{Signature{{"c", "c"}, "c"}, {1, 0}}, ComplexMatrix::identity(1)});
    const ValidationReport rep = validate_operad(q);
    CHECK(rep.ok());
    CHECK(mentions(rep.warnings, "equivariance unchecked"));
  }
}

#include "doctest.h"

#include <algorithm>

#include "soc/spectral.hpp"
#include "test_support.hpp"

using namespace soc;

namespace {

bool mentions(const std::vector<std::string>& messages,
              const std::string& needle) {
  return std::any_of(messages.begin(), messages.end(),
                     [&](const std::string& m) {
                       return m.find(needle) != std::string::npos;
                     });
}

PAlgebra trivial_algebra(std::size_t dim) {
  PAlgebra a;
  a.name = "trivial";
  a.operad = trivial_operad();
  a.components = {{"*", dim}};
  a.structure.insert({"e", ComplexMatrix::identity(dim)});
  return a;
}

PAlgebra sample_block() {
  const ComplexMatrix a11(2, 2, {1.0, 2.0, 3.0, 4.0});
  const ComplexMatrix a12(2, 3, {Cplx(0.0, 1.0), 1.0, 0.0, 2.0, 0.0, 5.0});
  const ComplexMatrix a21(3, 2, {1.0, 0.0, 0.0, 1.0, 1.0, 1.0});
  const ComplexMatrix a22(3, 3,
                          {1.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 3.0});
  return block_algebra(a11, a12, a21, a22);
}

Digraph two_cycle() {
  Digraph g;
  g.vertices = {"v1", "v2"};
  g.edges = {{"v1", "v2", Cplx(2.0, 0.0), "e12"},
             {"v2", "v1", Cplx(3.0, 0.0), "e21"}};
  return g;
}

const CrossRecord* find_cross(const SpectralDecomposition& d,
                              const std::string& op) {
  for (const auto& rec : d.cross) {
    if (rec.op == op) return &rec;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("residue dimensions of the built-in operads") {
  CHECK(residue(trivial_operad()).total == 1);
  const ResidueObject block = residue(matrix_block_operad());
  CHECK(block.total == 2);
  CHECK(block.offsets.at("1") == 0);
  CHECK(block.offsets.at("2") == 1);
  CHECK(residue(nogo_witness_pair().first.operad).total == 2);
  CHECK(residue(network_operad(two_cycle())).total == 2);

  SUBCASE("unitless colors do not contribute") {
    ColoredOperad p;
    p.colors = {"c", "d"};
    p.spaces = {{Signature{{"c"}, "c"}, {"e"}}};
    p.units["c"] = {{"e", Cplx(1.0, 0.0)}};
    p.composition[{"e", {"e"}}] = {{"e", Cplx(1.0, 0.0)}};
    const ResidueObject r = residue(p);
    CHECK(r.total == 1);
    CHECK(r.dims.count("d") == 0);
  }
}

TEST_CASE("residue universal map") {
  const ColoredOperad p = matrix_block_operad();
  const ResidueObject r = residue(p);

  SUBCASE("inclusions assemble to the identity") {
    std::map<Color, ComplexMatrix> corr;
    for (const Color& c : r.colors) {
      ComplexMatrix inc(r.total, r.dims.at(c));
      for (std::size_t j = 0; j < r.dims.at(c); ++j) {
        inc.at(r.offsets.at(c) + j, j) = 1.0;
      }
      corr.insert({c, inc});
    }
    const ComplexMatrix u = residue_universal_map(p, corr);
    CHECK(u.max_abs_diff(ComplexMatrix::identity(r.total)) == 0.0);
  }
  SUBCASE("row mismatch throws") {
    std::map<Color, ComplexMatrix> corr;
    corr.insert({"1", ComplexMatrix(2, 1)});
    corr.insert({"2", ComplexMatrix(3, 1)});
    CHECK_THROWS_AS(residue_universal_map(p, corr), DimensionMismatch);
  }
  SUBCASE("missing color throws") {
    std::map<Color, ComplexMatrix> corr;
    corr.insert({"1", ComplexMatrix(2, 1)});
    CHECK_THROWS_AS(residue_universal_map(p, corr), DimensionMismatch);
  }
  SUBCASE("wrong column count throws") {
    std::map<Color, ComplexMatrix> corr;
    corr.insert({"1", ComplexMatrix(2, 2)});
    corr.insert({"2", ComplexMatrix(2, 1)});
    CHECK_THROWS_AS(residue_universal_map(p, corr), DimensionMismatch);
  }
}

TEST_CASE("balanced tensor oracles") {
  SUBCASE("identity actions leave the full tensor") {
    const BalancedTensor t =
        balanced_tensor(2, 1, {ComplexMatrix::identity(2)},
                        {ComplexMatrix::identity(1)});
    CHECK(t.dimension() == 2);
  }
  SUBCASE("scalar actions 2 and 3 collapse everything") {
    const BalancedTensor t = balanced_tensor(
        1, 1, {ComplexMatrix(1, 1, {Cplx(2.0, 0.0)})},
        {ComplexMatrix(1, 1, {Cplx(3.0, 0.0)})});
    CHECK(t.dimension() == 0);
  }
  SUBCASE("no actions means no relations") {
    const BalancedTensor t = balanced_tensor(3, 2, {}, {});
    CHECK(t.dimension() == 6);
  }
  SUBCASE("list length mismatch") {
    CHECK_THROWS_AS(
        balanced_tensor(1, 1, {ComplexMatrix::identity(1)}, {}),
        IndexMismatch);
  }
  SUBCASE("action shape mismatch") {
    CHECK_THROWS_AS(balanced_tensor(2, 1, {ComplexMatrix::identity(1)},
                                    {ComplexMatrix::identity(1)}),
                    DimensionMismatch);
    CHECK_THROWS_AS(balanced_tensor(2, 1, {ComplexMatrix::identity(2)},
                                    {ComplexMatrix::identity(2)}),
                    DimensionMismatch);
  }
  SUBCASE("zero factor gives the zero object") {
    CHECK(balanced_tensor(0, 3, {}, {}).dimension() == 0);
    CHECK(balanced_tensor(3, 0, {}, {}).dimension() == 0);
  }
}

TEST_CASE("bar levels of the trivial-operad algebra") {
  const PAlgebra a = trivial_algebra(4);
  const BarLevel l0 = bar_level(a, 0);
  const BarLevel l1 = bar_level(a, 1);
  CHECK(l0.dimension == 4);
  CHECK(l1.dimension == 4);
  REQUIRE(l1.faces.size() == 2);
  CHECK(l1.faces[0].max_abs_diff(ComplexMatrix::identity(4)) == 0.0);
  CHECK(l1.faces[1].max_abs_diff(ComplexMatrix::identity(4)) == 0.0);
  CHECK_THROWS_AS(bar_level(a, 2), UnsupportedLevel);
}

TEST_CASE("bar level one of the block algebra") {
  const PAlgebra a = sample_block();
  const BarLevel l0 = bar_level(a, 0);
  const BarLevel l1 = bar_level(a, 1);
  CHECK(l0.dimension == 5);
  // id1 + id2 + m111 + m222 + m121 + m212 + a + b
  CHECK(l1.dimension == 2 + 3 + 4 + 9 + 6 + 6 + 3 + 2);
  REQUIRE(l1.faces.size() == 2);
  CHECK(l1.faces[0].rows() == 5);
  CHECK(l1.faces[0].cols() == l1.dimension);

  // d1 is supported on the unit summands only.
  std::size_t id1_off = 0, a_off = 0;
  for (const auto& s : l1.summands) {
    if (s.label == "id1") id1_off = s.offset;
    if (s.label == "a") a_off = s.offset;
  }
  CHECK(l1.faces[1].at(0, id1_off) == Cplx(1.0, 0.0));
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      CHECK(l1.faces[1].at(i, a_off + j) == Cplx(0.0, 0.0));
    }
  }
}

TEST_CASE("unit retraction respects weighted units") {
  // One color, unit vector 2e, action of e is I/2; the retraction must
  // normalize so that both faces coincide on the unit summand.
  ColoredOperad p;
  p.colors = {"c"};
  p.spaces = {{Signature{{"c"}, "c"}, {"e"}}};
  p.units["c"] = {{"e", Cplx(2.0, 0.0)}};
  p.composition[{"e", {"e"}}] = {{"e", Cplx(0.5, 0.0)}};
  REQUIRE(validate_operad(p).ok());

  PAlgebra a;
  a.name = "halved";
  a.operad = p;
  a.components = {{"c", 2}};
  a.structure.insert({"e", ComplexMatrix::identity(2) * Cplx(0.5, 0.0)});
  REQUIRE(validate_algebra(a).ok());

  const BarLevel l1 = bar_level(a, 1);
  CHECK(l1.faces[0].max_abs_diff(l1.faces[1]) <= 1e-12);
  CHECK(hochschild(a).dimension == 2);
}

TEST_CASE("hochschild dimensions") {
  CHECK(hochschild(trivial_algebra(3)).dimension == 3);

  SUBCASE("no interaction keeps the full carrier") {
    const PAlgebra a =
        block_algebra(ComplexMatrix(2, 2), ComplexMatrix(2, 3),
                      ComplexMatrix(3, 2), ComplexMatrix(3, 3));
    CHECK(hochschild(a).dimension == 5);
  }
  SUBCASE("cross images are divided out") {
    // rank(a12) = 2, rank(a21) = 2.
    const PAlgebra a = sample_block();
    CHECK(hochschild(a).dimension == 5 - 2 - 2);
  }
  SUBCASE("the nogo pair separates at the coequalizer") {
    const auto [a, b] = nogo_witness_pair();
    CHECK(hochschild(a).dimension == 4);
    CHECK(hochschild(b).dimension == 2);
  }
}

TEST_CASE("structural decomposition") {
  SUBCASE("vanishing interaction leaves local terms") {
    const PAlgebra a =
        block_algebra(ComplexMatrix(2, 2), ComplexMatrix(2, 3),
                      ComplexMatrix(3, 2), ComplexMatrix(3, 3));
    const SpectralDecomposition d = decompose(a);
    CHECK(d.local.at("1") == 2);
    CHECK(d.local.at("2") == 3);
    CHECK(d.cross_total == 0);
    CHECK(d.total == 5);
    CHECK(find_cross(d, "m121") != nullptr);
    CHECK(find_cross(d, "m121")->image_dim == 0);
  }
  SUBCASE("cross records carry ranks and provenance") {
    const SpectralDecomposition d = decompose(sample_block());
    CHECK(d.local_total == 5);
    const CrossRecord* a = find_cross(d, "a");
    REQUIRE(a != nullptr);
    CHECK(a->image_dim == 2);
    CHECK(a->residue_dim == 1);
    CHECK(a->contribution == 2);
    CHECK(a->output_color == "1");
    CHECK(a->provenance.find("unary cross") != std::string::npos);
    const CrossRecord* m = find_cross(d, "m121");
    REQUIRE(m != nullptr);
    CHECK(m->image_dim == 2);
    CHECK(m->provenance.find("arity 2") != std::string::npos);
    CHECK(d.cross_total == 8);
    CHECK(d.total == 13);
  }
  SUBCASE("network decomposition counts edges") {
    const SpectralDecomposition d = decompose(network_algebra(two_cycle()));
    CHECK(d.local_total == 2);
    CHECK(d.cross_total == 2);
    CHECK(d.total == 4);
  }
  SUBCASE("the nogo totals differ by the interaction rank") {
    const auto [a, b] = nogo_witness_pair();
    const SpectralDecomposition da = decompose(a);
    const SpectralDecomposition db = decompose(b);
    CHECK(da.total == 4);
    CHECK(db.total == 6);
    CHECK(find_cross(db, "theta")->image_dim == 2);
  }
}

TEST_CASE("operadic spectrum agrees with the decomposition") {
  SUBCASE("trivial operad reconstructs the carrier") {
    testsupport::Rng rng(5);
    for (std::size_t dim : {1, 3, 7}) {
      PAlgebra a = trivial_algebra(dim);
      a.distinguished.insert({"*", testsupport::random_matrix(rng, dim, dim)});
      const OperadicSpectrumObject s = operadic_spectrum(a);
      CHECK(s.total == dim);
      CHECK(s.residue_dimension == 1);
      CHECK(s.witness().rows() == dim);
      CHECK(s.witness().cols() == dim);
      CHECK(s.witness().max_abs_diff(ComplexMatrix::identity(dim)) == 0.0);
    }
  }
  SUBCASE("built-in constructors are consistent") {
    CHECK(operadic_spectrum(sample_block()).total == 13);
    CHECK(operadic_spectrum(network_algebra(two_cycle())).total == 4);
    const auto [a, b] = nogo_witness_pair();
    const OperadicSpectrumObject sa = operadic_spectrum(a);
    const OperadicSpectrumObject sb = operadic_spectrum(b);
    CHECK(sa.total == 4);
    CHECK(sb.total == 6);
    CHECK(sa.hochschild_dimension == 4);
    CHECK(sb.hochschild_dimension == 2);
    CHECK(sb.module_blocks.size() == 3);  // two carriers and one image
  }
  SUBCASE("corrupt unit actions surface as inconsistency") {
    auto [a, b] = nogo_witness_pair();
    (void)a;
    b.structure.at("id1") = ComplexMatrix(2, 2, {1.0, 1.0, 0.0, 1.0});
    CHECK_THROWS_AS(operadic_spectrum(b), InconsistentDecomposition);
  }
}

namespace {

// Induced map on the balanced-tensor quotients along a componentwise change
// of basis: block diagonal on carriers and images, identity on the residue.
ComplexMatrix induced_quotient_map(const PAlgebra& a, const PAlgebra& b,
                                   const std::map<Color, ComplexMatrix>& s,
                                   const OperadicSpectrumObject& sa,
                                   const OperadicSpectrumObject& sb) {
  const std::size_t x_dim = sa.tensor.x_dim;
  ComplexMatrix fx(x_dim, x_dim);
  for (std::size_t k = 0; k < sa.module_blocks.size(); ++k) {
    const ModuleBlock& blk = sa.module_blocks[k];
    ComplexMatrix w = ComplexMatrix::identity(std::max<std::size_t>(blk.dim, 1));
    if (blk.label.rfind("carrier", 0) == 0) {
      w = s.at(blk.color);
    } else {
      const std::string op = blk.label.substr(std::string("image ").size());
      const ComplexMatrix basis_a = column_space_basis(a.structure_matrix(op));
      const ComplexMatrix basis_b = column_space_basis(b.structure_matrix(op));
      const ComplexMatrix target = s.at(blk.color) * basis_a;
      // Least squares: basis_b w = target, with basis_b of full column rank.
      w = solve(basis_b.adjoint() * basis_b, basis_b.adjoint() * target);
    }
    for (std::size_t i = 0; i < blk.dim; ++i) {
      for (std::size_t j = 0; j < blk.dim; ++j) {
        fx.at(blk.offset + i, blk.offset + j) = w.at(i, j);
      }
    }
  }
  const ComplexMatrix fy = ComplexMatrix::identity(sa.tensor.y_dim);
  const ComplexMatrix ambient = fx.kron(fy);
  const ComplexMatrix& pa = sa.witness();
  const ComplexMatrix& pb = sb.witness();
  // Right inverse of pa (full row rank).
  const ComplexMatrix section =
      pa.adjoint() * inverse(pa * pa.adjoint());
  return pb * ambient * section;
}

}  // namespace

TEST_CASE("componentwise isomorphisms induce invertible quotient maps") {
  testsupport::Rng rng(31);
  const PAlgebra a = sample_block();
  for (int trial = 0; trial < 3; ++trial) {
    std::map<Color, ComplexMatrix> s;
    s.insert({"1", testsupport::random_invertible(rng, 2)});
    s.insert({"2", testsupport::random_invertible(rng, 3)});
    const PAlgebra b = conjugate_algebra(a, s);
    const OperadicSpectrumObject sa = operadic_spectrum(a);
    const OperadicSpectrumObject sb = operadic_spectrum(b);
    CHECK(sa.total == sb.total);
    CHECK(sa.hochschild_dimension == sb.hochschild_dimension);
    const ComplexMatrix m = induced_quotient_map(a, b, s, sa, sb);
    CHECK(m.rows() == sa.total);
    CHECK(rank(m) == sa.total);
  }
}

TEST_CASE("naive spectra") {
  const auto [a, b] = nogo_witness_pair();
  const auto na = naive_spectrum(a, 1e-8);
  const auto nb = naive_spectrum(b, 1e-8);
  REQUIRE(na.size() == 2);
  CHECK(na.at("1").values == std::vector<Cplx>{Cplx(1.0, 0.0), Cplx(1.0, 0.0)});
  CHECK(na.at("1").equals(nb.at("1")));
  CHECK(na.at("2").equals(nb.at("2")));

  CHECK(naive_spectrum(network_algebra(two_cycle()), 1e-8).empty());
}

TEST_CASE("analytic spectrum of the nilpotent block pair") {
  const ComplexMatrix alpha(2, 2, {0.0, 1.0, 0.0, 0.0});
  const ComplexMatrix beta(2, 2, {0.0, 0.0, 1.0, 0.0});
  const PAlgebra a =
      block_algebra(ComplexMatrix(2, 2), alpha, beta, ComplexMatrix(2, 2));
  const AnalyticSpectrum s = analytic_spectrum(a);
  REQUIRE(s.interaction.size() == 1);
  CHECK(s.interaction[0].base == "1");
  SpectrumSet expect;
  expect.values = {Cplx(0.0, 0.0), Cplx(1.0, 0.0)};
  expect.tolerance = 1e-10;
  CHECK(s.interaction[0].values.contains_all(expect));
  CHECK(s.per_color.at("1").values ==
        std::vector<Cplx>{Cplx(0.0, 0.0), Cplx(0.0, 0.0)});
  // The four binary operations are unrealized without a pointed input.
  CHECK(s.notes.size() == 4);
  CHECK(mentions(s.notes, "m121"));
}

TEST_CASE("analytic spectrum of the weighted two-cycle") {
  const AnalyticSpectrum s = analytic_spectrum(network_algebra(two_cycle()));
  CHECK(s.per_color.empty());
  REQUIRE(s.interaction.size() == 1);
  REQUIRE(s.interaction[0].values.values.size() == 1);
  CHECK(s.interaction[0].values.values[0] == Cplx(6.0, 0.0));
  REQUIRE(s.interaction[0].loops.size() == 1);
  CHECK(s.interaction[0].loops[0] == "e12 -> e21");
}

TEST_CASE("loop length caps and merging") {
  Digraph g;
  g.vertices = {"x", "y", "z"};
  g.edges = {{"x", "y", Cplx(2.0, 0.0), "exy"},
             {"y", "z", Cplx(3.0, 0.0), "eyz"},
             {"z", "x", Cplx(4.0, 0.0), "ezx"}};
  const PAlgebra a = network_algebra(g);

  SUBCASE("default cap finds the three-cycle") {
    const AnalyticSpectrum s = analytic_spectrum(a);
    REQUIRE(s.interaction.size() == 1);
    CHECK(s.interaction[0].values.values[0] == Cplx(24.0, 0.0));
  }
  SUBCASE("a cap of two hides it") {
    const AnalyticSpectrum s = analytic_spectrum(a, 2);
    CHECK(s.interaction.empty());
  }
  SUBCASE("parallel branches with equal spectra merge") {
    Digraph h = two_cycle();
    h.edges.push_back({"v1", "v2", Cplx(2.0, 0.0), "p"});
    const AnalyticSpectrum s = analytic_spectrum(network_algebra(h));
    REQUIRE(s.interaction.size() == 1);
    CHECK(s.interaction[0].loops.size() == 2);
  }
  SUBCASE("parallel branches with distinct spectra stay separate") {
    Digraph h = two_cycle();
    h.edges.push_back({"v1", "v2", Cplx(5.0, 0.0), "p"});
    const AnalyticSpectrum s = analytic_spectrum(network_algebra(h));
    CHECK(s.interaction.size() == 2);
  }
}

TEST_CASE("analytic interaction is invariant under change of basis") {
  testsupport::Rng rng(77);
  const PAlgebra a = sample_block();
  const AnalyticSpectrum sa = analytic_spectrum(a, 0, 1e-6);
  std::map<Color, ComplexMatrix> s;
  s.insert({"1", testsupport::random_invertible(rng, 2)});
  s.insert({"2", testsupport::random_invertible(rng, 3)});
  const PAlgebra b = conjugate_algebra(a, s);
  const AnalyticSpectrum sb = analytic_spectrum(b, 0, 1e-6);
  REQUIRE(sa.interaction.size() == sb.interaction.size());
  for (std::size_t i = 0; i < sa.interaction.size(); ++i) {
    CHECK(sa.interaction[i].values.equals(sb.interaction[i].values));
  }
}

#include <doctest.h>

#include "kklab/homotopy.hpp"
#include "kklab/power.hpp"

using namespace kklab;
using namespace kklab::homotopy;
using ring::AlgebraPresentation;
using ring::IntPolynomial;
using ring::ZVec;

namespace {
IntPolynomial tv() { return IntPolynomial::var(1); }
}  // namespace

TEST_SUITE("homotopy") {

TEST_CASE("elementary homotopies check endpoints and relations") {
  AlgebraPresentation poly = ring::presentation_polynomial();

  // x -> t x: a homotopy from the zero map to the identity
  ElementaryHomotopy h{poly, {tv() * IntPolynomial::var(2)}};
  CHECK(check_elementary(h, {IntPolynomial()}, {IntPolynomial::var(1)}).ok);

  // wrong endpoint: ev_0 h = 0 but f claims the constant 1
  auto bad = check_elementary(h, {IntPolynomial::constant(1)}, {IntPolynomial::var(1)});
  CHECK_FALSE(bad.ok);
  CHECK(bad.witness == "ev_0 at generator x: -1");

  auto toe = ring::presentation_toeplitz();
  auto ones = std::vector<IntPolynomial>{IntPolynomial::constant(1), IntPolynomial::constant(1)};
  CHECK(check_elementary(constant_homotopy(toe, ones), ones, ones).ok);
  // images that break the relation a b = 1 are rejected
  ElementaryHomotopy broken{toe, {IntPolynomial::constant(2), IntPolynomial::constant(1)}};
  CHECK_FALSE(check_elementary(broken, {IntPolynomial::constant(2), IntPolynomial::constant(1)},
                               {IntPolynomial::constant(2), IntPolynomial::constant(1)})
                  .ok);
}

TEST_CASE("path refinement, reversal and concatenation") {
  AlgebraPresentation poly = ring::presentation_polynomial();
  ElementaryHomotopy h{poly, {tv()}};  // straight path 0 -> 1 in Z
  SubdividedPath p = path_of(h);
  CHECK(p.level == 0);
  CHECK(p.pieces.size() == 1);
  CHECK(path_start(p) == std::vector<IntPolynomial>{IntPolynomial()});
  CHECK(path_end(p) == std::vector<IntPolynomial>{IntPolynomial::constant(1)});
  CHECK(validate_path(p).ok);

  auto p2 = refine_to(p, 2);
  CHECK(p2.level == 2);
  CHECK(p2.pieces.size() == 4);
  CHECK(validate_path(p2).ok);
  CHECK(path_equal(p, p2));
  CHECK(path_start(p2) == path_start(p));
  CHECK(path_end(p2) == path_end(p));

  auto rev = reverse_path(p);
  CHECK(path_start(rev) == path_end(p));
  CHECK(path_end(rev) == path_start(p));
  CHECK_FALSE(path_equal(p, rev));

  auto loop = concat(p, rev);
  CHECK(validate_path(loop).ok);
  CHECK(path_start(loop) == path_start(p));
  CHECK(path_end(loop) == path_start(p));

  try {
    concat(p, p);  // end 1 vs start 0
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_ENDPOINT");
  }

  auto c = constant_path(poly, {IntPolynomial::constant(3)}, 1);
  CHECK(c.pieces.size() == 2);
  CHECK(path_equal(c, refine_path(c)));
}

TEST_CASE("paths become integral power-object homomorphisms") {
  AlgebraPresentation poly = ring::presentation_polynomial();
  ElementaryHomotopy h{poly, {tv()}};
  auto p2 = refine_to(path_of(h), 2);
  auto r = as_power_hom(p2);
  CHECK(r.ok);
  CHECK(r.lattice_checked);
  REQUIRE(r.components.size() == 1);

  // refinement agrees with the last-vertex pullback of the coarser form
  auto base = as_power_hom(path_of(h));
  auto sr = sset::subdivide(sset::standard_simplex(1));
  auto refined = as_power_hom(refine_path(path_of(h)));
  REQUIRE(base.ok);
  REQUIRE(refined.ok);
  CHECK(power::pullback(sr.lv, sr.K, sset::standard_simplex(1), base.components[0]) ==
        refined.components[0]);
}

TEST_CASE("eta pasting works on one piece with either diagonal") {
  auto r = eta_transformation(1);
  CHECK(r.n == 1);
  CHECK(r.printed_vertex_ok);
  CHECK(r.printed_edge_ok);
  CHECK(r.repaired_vertex_ok);
  CHECK(r.repaired_edge_ok);
  CHECK(r.hom_ok);
  CHECK(r.printed_failures.empty());
  REQUIRE(r.printed.size() == 1);
  CHECK(r.printed[0][0].str() == "t1*t2 - t2 - t1 + 1");
  CHECK(r.repaired[0][0].str() == "-t1*t2 + t2 + t1");
}

TEST_CASE("eta pasting fails on two pieces with the printed diagonal") {
  auto r = eta_transformation(2);
  CHECK_FALSE(r.printed_vertex_ok);
  CHECK(r.printed_failures.size() == 11);
  CHECK(r.printed_failures.front() ==
        "grid vertex (0,1): square (1,1) gives vertex v0 but square (1,2) gives vertex v1");
  CHECK(r.constants.size() == 4);
  CHECK(r.constants.front() == "square (1,1): summand 2 pinned to the constant value at v1");

  // the reflected diagonal has no obstruction
  CHECK(r.repaired_vertex_ok);
  CHECK(r.repaired_edge_ok);
  CHECK(r.hom_ok);

  auto r3 = eta_transformation(3);
  CHECK_FALSE(r3.printed_vertex_ok);
  CHECK(r3.printed_failures.size() == 12);
  CHECK(r3.constants.size() == 18);
  CHECK(r3.repaired_vertex_ok);
  CHECK(r3.repaired_edge_ok);

  CHECK_THROWS_AS(eta_transformation(0), Error);
  CHECK_THROWS_AS(eta_transformation(4), Error);
}

TEST_CASE("structure-constant rings multiply correctly") {
  auto z2 = table_z2();
  std::string why;
  CHECK(z2.associative(&why));
  CHECK(z2.mul({1, 0}, {1, 0}) == ZVec{1, 0});
  CHECK(z2.mul({1, 0}, {0, 1}) == ZVec{0, 0});

  auto dual = table_dual();
  CHECK(dual.associative());
  CHECK(dual.mul({0, 1}, {0, 1}) == ZVec{0, 0});  // eps^2 = 0
  CHECK(dual.mul({1, 0}, {0, 1}) == ZVec{0, 1});

  auto sq = table_square_zero(3);
  CHECK(sq.mul({1, 1, 1}, {1, 1, 1}) == ZVec{0, 0, 0});

  auto broken = table_z2();
  broken.c[0][1] = {1, 0};  // e f = e kills associativity with f f = f
  CHECK_FALSE(broken.associative(&why));
  CHECK_FALSE(why.empty());
}

TEST_CASE("table polynomials evaluate and print") {
  auto A = table_z();
  auto p = TablePoly::of(A, {1}, tv() * tv() - tv());
  CHECK(p.str() == "(t^2 - t)*x");
  CHECK(p.eval_t(0).is_zero());
  CHECK(p.eval_t(1).is_zero());
  CHECK(p * p == TablePoly::of(A, {1}, (tv() * tv() - tv()) * (tv() * tv() - tv())));
  CHECK((p - p).is_zero());
}

TEST_CASE("truncated tensor algebra and the counit kernel") {
  TruncatedTensorAlgebra T2(table_z(), 2);
  CHECK(T2.dim() == 2);
  CHECK(T2.dim_of_degree(1) == 1);
  CHECK(T2.dim_of_degree(2) == 1);
  REQUIRE(T2.j_rank() == 1);
  TensorElem gen;
  gen[TensorWord{0}] = 1;
  gen[TensorWord{0, 0}] = -1;
  CHECK(T2.from_row(T2.j_basis_rows()[0]) == gen);
  CHECK(T2.str(gen) == "x - x(x)x");

  TruncatedTensorAlgebra T3(table_z(), 3);
  CHECK(T3.dim() == 3);
  CHECK(T3.j_rank() == 2);
  TensorElem x2mx, justx;
  x2mx[TensorWord{0, 0}] = 1;
  x2mx[TensorWord{0}] = -1;
  justx[TensorWord{0}] = 1;
  CHECK(T3.j_member(x2mx));
  CHECK_FALSE(T3.j_member(justx));
  CHECK(T3.eta_of(justx) == ZVec{1});
  CHECK(T3.eta_of(x2mx) == ZVec{0});

  // coordinates round trip through the word basis
  ZVec row = T3.to_row(x2mx);
  CHECK(T3.from_row(row) == x2mx);
}

TEST_CASE("loop classifying map hits the expected loops") {
  auto rep = loop_rho(table_z(), 3);
  CHECK(rep.ok);
  REQUIRE(rep.jbasis.size() == 2);
  const MulTable& A = rep.map.T->base();

  TensorElem e2, e3;
  e2[TensorWord{0, 0}] = 1;
  e2[TensorWord{0}] = -1;
  e3[TensorWord{0, 0, 0}] = 1;
  e3[TensorWord{0}] = -1;
  CHECK(rep.map.image_of(e2) == TablePoly::of(A, ZVec{1}, tv() * tv() - tv()));
  CHECK(rep.map.image_of(e3) == TablePoly::of(A, ZVec{1}, tv() * tv() * tv() - tv()));
  // every J-basis image is a loop: it vanishes at both endpoints
  for (auto& img : rep.images) {
    CHECK(img.eval_t(0).is_zero());
    CHECK(img.eval_t(1).is_zero());
  }
}

TEST_CASE("split extensions classify to zero and naturality holds") {
  CHECK(split_extension_zero_check(table_z(), 3).all_zero);
  CHECK(split_extension_zero_check(table_z2(), 3).all_zero);
  CHECK(loop_naturality_check(table_z(), ZVec{1}).ok);
  CHECK(loop_naturality_check(table_z2(), ZVec{1, 0}).ok);
}

TEST_CASE("classify rejects undersized sections") {
  TruncatedTensorAlgebra T(table_z(), 2);
  std::function<bool(const Int&)> in_A = [](const Int&) { return true; };
  std::function<std::string(const Int&)> st = [](const Int& v) { return v.get_str(); };
  CHECK_THROWS_AS(classify<Int>(T, {}, Int(0), in_A, st), Error);
  auto rep = classify<Int>(T, {Int(0)}, Int(0), in_A, st);
  CHECK(rep.ok);
}

TEST_CASE("classifying data loads from json") {
  auto j = nlohmann::json::parse(R"({
    "rank": 1,
    "names": ["x1"],
    "table": [[[1]]],
    "degree": 3,
    "section": [[[0, 1]]],
    "vanish_at": [0, 1]
  })");
  auto rep = classify_from_json(j);
  CHECK(rep.ok);
  REQUIRE(rep.jbasis.size() == 2);
  CHECK(rep.images[0].str() == "(-t^3 + t)*x1");

  TensorElem e2;
  e2[TensorWord{0, 0}] = 1;
  e2[TensorWord{0}] = -1;
  CHECK(rep.map.image_of(e2).str() == "(t^2 - t)*x1");

  try {
    classify_from_json(nlohmann::json::parse("{\"rank\":1}"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_JSON");
  }
}

TEST_CASE("path algebra membership and the loop embedding") {
  PathAlgebra P{poly_id(1), 2};
  CHECK(P.contains(tv() * tv(), IntPolynomial::constant(1)));
  CHECK_FALSE(P.contains(IntPolynomial::constant(1), IntPolynomial::constant(1)));
  CHECK_FALSE(P.contains(tv() * tv(), IntPolynomial::constant(2)));
  CHECK(P.pi(tv() * tv(), IntPolynomial::constant(1)) == IntPolynomial::constant(1));

  auto io = P.iota(tv() * tv() - tv());
  CHECK(io.first == tv() * tv() - tv());
  CHECK(io.second.is_zero());
  try {
    P.iota(tv() * tv());
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_LOOP");
  }

  FiberProduct F{poly_id(1), poly_id(1)};
  CHECK(F.contains(IntPolynomial::var(1), IntPolynomial::var(1)));
  CHECK_FALSE(F.contains(IntPolynomial::var(1), IntPolynomial()));
}

TEST_CASE("alternating word calculus") {
  auto u = QElem::u(), v = QElem::v();
  CHECK(u * u == u);
  CHECK(v * v == v);
  CHECK(u * v == QElem::word(0, 2));
  CHECK((u * v) * u == QElem::word(0, 3));
  CHECK((u * v) * u == u * (v * u));
  CHECK(QElem::word(0, 3).str() == "uvu");
  CHECK(QElem::word(1, 2).str() == "vu");
  CHECK((u - v).codiagonal() == 0);
  CHECK(QElem::word(0, 3).codiagonal() == 1);
  CHECK((u * v - v * u).codiagonal() == 0);

  auto r5 = qq_confluence_check(5);
  CHECK(r5.confluent);
  CHECK(r5.words_checked == 62);
  auto r6 = qq_confluence_check(6);
  CHECK(r6.confluent);
  CHECK(r6.words_checked == 126);
}

TEST_CASE("idempotent calculus separates K0 classes by rank") {
  auto T = table_z();
  auto e0 = umat_zero(T, 2);
  e0[0][0].unit = 1;  // diag(1, 0)
  auto zero2 = umat_zero(T, 2);

  auto r = qq_calculus(T, e0, zero2);
  CHECK(r.idempotent_ok);
  CHECK(r.hom_ok);
  CHECK_FALSE(r.q_in_ideal);
  CHECK(r.rank0 == 1);
  CHECK(r.rank1 == 0);
  CHECK(umat_str(T, r.uvu_image) == "[0, 0; 0, 0]");

  auto same = qq_calculus(T, e0, e0);
  CHECK(same.q_in_ideal);
  CHECK(same.rank0 == same.rank1);

  auto notidem = umat_zero(T, 2);
  notidem[0][0].unit = 2;
  try {
    qq_calculus(T, notidem, zero2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_IDEMPOTENT");
  }
}

TEST_CASE("k0 conjugation witnesses") {
  auto T = table_z();
  auto e0 = umat_zero(T, 2);
  e0[0][0].unit = 1;
  auto e1 = umat_zero(T, 2);
  e1[1][1].unit = 1;

  K0Witness swap;
  swap.U = umat_zero(T, 2);
  swap.U[0][1].unit = 1;
  swap.U[1][0].unit = 1;
  swap.Uinv = swap.U;
  CHECK(k0_equal(T, e0, e1, swap));

  K0Witness id;
  id.U = umat_zero(T, 2);
  id.U[0][0].unit = 1;
  id.U[1][1].unit = 1;
  id.Uinv = id.U;
  CHECK_FALSE(k0_equal(T, e0, e1, id));

  // stabilization: appending a 1-block and a 0-block preserves the certificate
  K0Witness stab = swap;
  stab.stab_ones = 1;
  stab.stab_zeros = 1;
  stab.U = umat_zero(T, 4);
  stab.U[0][1].unit = 1;
  stab.U[1][0].unit = 1;
  stab.U[2][2].unit = 1;
  stab.U[3][3].unit = 1;
  stab.Uinv = stab.U;
  CHECK(k0_equal(T, e0, e1, stab));
}

TEST_CASE("graded homotopies") {
  auto gp = graded_homotopy_polynomial();
  CHECK(gp.hom_ok);
  CHECK(gp.ev0_is_projection);
  CHECK(gp.ev1_is_identity);
  auto gs = graded_homotopy_square_zero(3);
  CHECK(gs.hom_ok);
  CHECK(gs.ev0_is_projection);
  CHECK(gs.ev1_is_identity);

  auto gd = graded_homotopy_table(table_dual(), {0, 1});
  CHECK(gd.hom_ok);

  try {
    graded_homotopy_table(table_z(), {1});  // x^2 = x is not degree-additive
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "E_INHOMOGENEOUS");
  }
}

TEST_CASE("amalgamated product maps") {
  auto r = amalgamated_maps(amalgam_example(), 5);
  CHECK(r.preconditions_ok);
  CHECK(r.theta_ok);
  CHECK(r.eta_ok);
  CHECK(r.d2_lands_in_d1);
  CHECK(r.witness.empty());

  auto rid = amalgamated_maps(amalgam_identity(table_z2()), 5);
  CHECK(rid.preconditions_ok);
  CHECK(rid.theta_ok);

  // a broken retraction is caught in the preconditions
  AmalgamData bad;
  bad.A = table_z();
  bad.B = table_z2();
  bad.C = table_z();
  bad.incA = {{1}};
  bad.incB = {{1, 0}};
  bad.retA = {{1}};
  bad.retB = {{1}, {1}};
  auto rb = amalgamated_maps(bad, 5);
  CHECK_FALSE(rb.preconditions_ok);
  CHECK(rb.witness == "B -> C at e * f");
}

TEST_CASE("orthogonal sums of matrix homomorphisms") {
  using M = ring::RingMatrix<IntPolynomial>;
  auto pres = ring::presentation_polynomial();
  IntPolynomial x = IntPolynomial::var(1);
  M f(2), g(2);
  f.at(0, 0) = x;
  g.at(1, 1) = x;
  auto mstr = [](const M&) { return std::string("matrix residual"); };
  CHECK(orthogonal_sum_check<M>(pres, {f}, {g}, M::identity(2), mstr).ok);

  auto bad = orthogonal_sum_check<M>(pres, {f}, {f}, M::identity(2), mstr);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failing_relation == "orthogonality at generators x, x");

  CHECK_THROWS_AS(orthogonal_sum_check<M>(pres, {f, g}, {f}, M::identity(2), mstr), Error);
}

}  // TEST_SUITE

#include <doctest.h>

#include "kklab/hnf.hpp"
#include "kklab/ints.hpp"
#include "kklab/laurent.hpp"
#include "kklab/poly.hpp"
#include "kklab/rings.hpp"

using namespace kklab;
using namespace kklab::ring;

TEST_SUITE("rings") {

TEST_CASE("rng is deterministic and range is inclusive") {
  Rng a(1), b(1);
  CHECK(a.next() == 5180492295206395165ull);
  CHECK(a.next() == 12380297144915551517ull);
  CHECK(a.next() == 13389498078930870103ull);
  // two generators with the same seed follow the same stream
  for (int i = 0; i < 3; ++i) b.next();
  CHECK(a.next() == b.next());

  Rng r(1);
  CHECK(r.range(0, 9) == 5);
  Rng s(42);
  bool hit_lo = false, hit_hi = false;
  for (int i = 0; i < 300; ++i) {
    long v = s.range(-2, 2);
    CHECK(v >= -2);
    CHECK(v <= 2);
    hit_lo |= (v == -2);
    hit_hi |= (v == 2);
  }
  CHECK(hit_lo);
  CHECK(hit_hi);
}

TEST_CASE("ipow") {
  CHECK(ipow(Int(3), 4) == 81);
  CHECK(ipow(Int(2), 0) == 1);
  CHECK(ipow(Int(-2), 3) == -8);
}

TEST_CASE("polynomial arithmetic, substitution, evaluation") {
  IntPolynomial x = IntPolynomial::var(1), y = IntPolynomial::var(2);
  IntPolynomial p = (x + IntPolynomial::constant(1)).pow(2);
  CHECK(p == x * x + 2 * x + IntPolynomial::constant(1));
  CHECK(p.total_degree() == 2);
  CHECK(p.eval({Int(3)}) == 16);

  IntPolynomial q = x * y - y;
  CHECK(q.nvars() == 2);
  CHECK(q.eval({Int(2), Int(5)}) == 5);
  // substitute x -> y+1, y -> y:  (y+1)y - y = y^2
  IntPolynomial r = q.substitute({y + IntPolynomial::constant(1), y});
  CHECK(r == y * y);

  CHECK(IntPolynomial::constant(0).is_zero());
  CHECK_FALSE(p.is_zero());
  CHECK((p - p).is_zero());
}

TEST_CASE("monomial enumeration count") {
  // monomials in 2 variables of total degree <= 3: C(3+2,2) = 10
  CHECK(ring::monomials_upto(2, 3).size() == 10);
  CHECK(ring::monomials_upto(1, 6).size() == 7);
}

TEST_CASE("laurent polynomials invert t") {
  auto t = LaurentPolynomial::t(1);
  auto tinv = LaurentPolynomial::t(-1);
  CHECK(t * tinv == LaurentPolynomial::constant(1));
  CHECK((t + tinv) * (t - tinv) == LaurentPolynomial::t(2) - LaurentPolynomial::t(-2));
  CHECK(t.eval(Int(-1)) == -1);
  CHECK((LaurentPolynomial::t(2) + tinv).eval(Int(1)) == 2);
}

TEST_CASE("row hnf on a fixed matrix") {
  ZMat A = {{2, 6}, {4, 8}};
  RowHNF h = row_hnf(A);
  ZMat expect = {{2, 2}, {0, 4}};
  CHECK(h.H == expect);
  CHECK(h.rank == 2);
  // transformation matrix actually performs the reduction
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      Int s = 0;
      for (size_t k = 0; k < 2; ++k) s += h.U[i][k] * A[k][j];
      CHECK(s == h.H[i][j]);
    }
  // HNF is a normal form: reducing again changes nothing
  CHECK(row_hnf(h.H).H == expect);
}

TEST_CASE("kernel basis annihilates and is fixed") {
  ZMat A = {{1, 2, 3}};
  ZMat K = kernel_basis(A);
  ZMat expect = {{1, 1, -1}, {0, 3, -2}};
  CHECK(K == expect);
  for (auto& row : K) CHECK(row[0] * 1 + row[1] * 2 + row[2] * 3 == 0);
}

TEST_CASE("lattice membership and integer solving") {
  ZMat rows = {{2, 0}, {0, 3}};
  CHECK(in_row_lattice(rows, {4, -3}));
  CHECK_FALSE(in_row_lattice(rows, {1, 0}));
  ZVec coef;
  REQUIRE(express_in_rows(rows, {4, -3}, coef));
  CHECK(coef[0] * 2 == 4);
  CHECK(coef[1] * 3 == -3);

  // solve A x = b over Z
  ZMat A = {{1, 1}, {0, 2}};
  ZVec x;
  REQUIRE(solve_integer(A, {3, 4}, x));
  CHECK(A[0][0] * x[0] + A[0][1] * x[1] == 3);
  CHECK(A[1][0] * x[0] + A[1][1] * x[1] == 4);
  ZVec none;
  CHECK_FALSE(solve_integer(A, {0, 1}, none));

  CHECK(rank_of({{1, 2}, {2, 4}, {0, 0}}) == 1);
}

TEST_CASE("presentation homomorphism checks") {
  auto pres = presentation_laurent();
  auto ok = check_hom(pres, std::vector<LaurentPolynomial>{LaurentPolynomial::t(1), LaurentPolynomial::t(-1)},
                      [](const LaurentPolynomial& v) { return v.str(); });
  CHECK(ok.ok);

  // x,y both to t: xy - 1 = t^2 - 1 survives
  auto bad = check_hom(pres, std::vector<LaurentPolynomial>{LaurentPolynomial::t(1), LaurentPolynomial::t(1)},
                       [](const LaurentPolynomial& v) { return v.str(); });
  CHECK_FALSE(bad.ok);
  CHECK(bad.failing_relation == "xy=1");
  CHECK(bad.residual == (LaurentPolynomial::t(2) - LaurentPolynomial::constant(1)).str());
}

TEST_CASE("rotation homotopy interpolates identity to quarter turn") {
  RotationHomotopy rh = rotation_homotopy();
  IntPolynomial t = IntPolynomial::var(1);
  IntPolynomial one = IntPolynomial::constant(1);
  CHECK(rh.W.at(0, 0) == one - t * t);
  CHECK(rh.W.at(0, 1) == -t);
  CHECK(rh.W.at(1, 0) == 2 * t - t * t * t);
  CHECK(rh.W.at(1, 1) == one - t * t);
  CHECK(rh.det == one);

  auto prod = rh.W * rh.Winv;
  auto id = RingMatrix<IntPolynomial>::identity(2);
  CHECK(prod == id);
  CHECK(rh.Winv * rh.W == id);

  // endpoint evaluations
  auto at = [&](const Int& v, size_t i, size_t j) { return rh.W.at(i, j).eval({v}); };
  CHECK(at(0, 0, 0) == 1);
  CHECK(at(0, 0, 1) == 0);
  CHECK(at(0, 1, 0) == 0);
  CHECK(at(0, 1, 1) == 1);
  CHECK(at(1, 0, 0) == 0);
  CHECK(at(1, 0, 1) == -1);
  CHECK(at(1, 1, 0) == 1);
  CHECK(at(1, 1, 1) == 0);
}

TEST_CASE("crossed product twists by the automorphism") {
  IntPolynomial x = IntPolynomial::var(1);
  IntPolynomial one = IntPolynomial::constant(1);
  CrossedProduct R(1, {x + one}, {x - one});
  // t a t^{-1} = sigma(a): moving t across x^2 gives (x+1)^2
  CHECK(R.twist(x * x, 1) == x * x + 2 * x + one);
  CHECK(R.twist(x, -1) == x - one);
  CHECK(R.twist(x, 0) == x);

  auto a = CrossedElem::from_poly(R, x, 1);
  auto t = CrossedElem::t_power(R, 1);
  auto tinv = CrossedElem::t_power(R, -1);
  CHECK(t * tinv == CrossedElem::t_power(R, 0));
  // (x t) * t^{-1} = x
  CHECK(a * tinv == CrossedElem::from_poly(R, x, 0));

  CHECK_THROWS_AS(CrossedProduct(1, {x + one}, {x + one}), kklab::Error);
  try {
    CrossedProduct(1, {x + one}, {x + one});
  } catch (const kklab::Error& e) {
    CHECK(e.code() == "E_NOT_AUTOMORPHISM");
  }
}

TEST_CASE("error carries code and formatted message") {
  kklab::Error e("E_DEMO", "something specific");
  CHECK(e.code() == "E_DEMO");
  CHECK(std::string(e.what()) == "E_DEMO: something specific");
}

}  // TEST_SUITE

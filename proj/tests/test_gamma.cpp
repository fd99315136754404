#include <doctest.h>

#include <vector>

#include "kklab/gamma.hpp"

using namespace kklab;
using namespace kklab::gamma;

namespace {
// a small pool of structurally varied elements for identity testing
std::vector<ProgressionMatrix> samples() {
  return {
      ahat(),
      bhat(),
      ProgressionMatrix::entry(0, 0),
      ProgressionMatrix::entry(2, 5, -3),
      ProgressionMatrix::identity(),
      ProgressionMatrix::progression(2, 1, 3, 0, 0, 5),
      ProgressionMatrix::progression(1, 0, 2, 1) - ProgressionMatrix::entry(4, 9, 2),
  };
}
}  // namespace

TEST_SUITE("gamma") {

TEST_CASE("progression matrices print in closed form") {
  CHECK(ahat().str() == "S e(i,i+1)");
  CHECK(bhat().str() == "S e(i+1,i)");
  CHECK(ProgressionMatrix::progression(2, 1, 3, 0, 0, 5).str() == "5*S e(2i+1,3i)");
  CHECK(ProgressionMatrix::entry(0, 0).str() == "e(0,0)");
  CHECK(ProgressionMatrix::zero().is_zero());
  CHECK(ProgressionMatrix::entry(3, 4).is_finite());
  CHECK_FALSE(ahat().is_finite());
}

TEST_CASE("entry lookup matches the progression definition") {
  auto p = ProgressionMatrix::progression(2, 1, 3, 0, 1, 7);  // 7 * e_{2i+1,3i}, i >= 1
  CHECK(p.entry_at(3, 3) == 7);
  CHECK(p.entry_at(5, 6) == 7);
  CHECK(p.entry_at(1, 0) == 0);  // i = 0 excluded by i0
  CHECK(p.entry_at(3, 4) == 0);
  CHECK(ProgressionMatrix::identity().entry_at(123, 123) == 1);
  CHECK(ProgressionMatrix::identity().entry_at(123, 124) == 0);
}

TEST_CASE("ring laws hold exactly") {
  auto s = samples();
  for (size_t i = 0; i < s.size(); ++i)
    for (size_t j = 0; j < s.size(); ++j) {
      CHECK(s[i] + s[j] == s[j] + s[i]);
      CHECK((s[i] * s[j]).transpose() == s[j].transpose() * s[i].transpose());
      for (size_t k = 0; k < s.size(); ++k) {
        CHECK((s[i] + s[j]) * s[k] == s[i] * s[k] + s[j] * s[k]);
        CHECK((s[i] * s[j]) * s[k] == s[i] * (s[j] * s[k]));
      }
    }
  auto one = ProgressionMatrix::identity();
  for (auto& x : s) {
    CHECK(one * x == x);
    CHECK(x * one == x);
    CHECK(x - x == ProgressionMatrix::zero());
    CHECK(x.transpose().transpose() == x);
  }
}

TEST_CASE("shift generators satisfy the toeplitz relations") {
  auto one = ProgressionMatrix::identity();
  CHECK(ahat() * bhat() == one);
  CHECK(bhat() * ahat() == one - ProgressionMatrix::entry(0, 0));
}

TEST_CASE("sum ring relations hold") {
  auto r = sum_ring_relations(sum_ring_data());
  CHECK(r.ok);
  CHECK(r.failures.empty());

  auto s = sum_ring_data();
  auto one = ProgressionMatrix::identity();
  CHECK(s.alpha1 * s.beta1 == one);
  CHECK(s.alpha2 * s.beta2 == one);
  CHECK(s.beta1 * s.alpha1 + s.beta2 * s.alpha2 == one);
  CHECK((s.alpha1 * s.beta2).is_zero());
  CHECK((s.alpha2 * s.beta1).is_zero());
}

TEST_CASE("block sum and its reindexer") {
  auto e00 = ProgressionMatrix::entry(0, 0);
  CHECK(oplus(e00, e00).str() == "e(0,0) + e(1,1)");
  CHECK(oplus_reindexer().str() == "S e(2i,4i) + S e(4i+1,4i+2) + S e(4i+3,2i+1)");

  auto P = oplus_reindexer();
  auto Pt = P.transpose();
  auto one = ProgressionMatrix::identity();
  CHECK(P * Pt == one);
  CHECK(Pt * P == one);

  auto s = samples();
  for (size_t i = 0; i + 2 < s.size(); ++i) {
    auto lhs = P * oplus(oplus(s[i], s[i + 1]), s[i + 2]) * Pt;
    CHECK(lhs == oplus(s[i], oplus(s[i + 1], s[i + 2])));
  }

  // oplus of units is conjugate to the unit: it is a diagonal 0/1 matrix
  auto d = oplus(one, one);
  CHECK(d == one);
}

TEST_CASE("phi window on the first basis entry") {
  auto w = window(phi_infinity(ProgressionMatrix::entry(0, 0)), 8);
  // e(0,0) lands on the diagonal at positions 2^k - 1
  for (long r = 0; r < 8; ++r)
    for (long c = 0; c < 8; ++c) {
      bool onpos = (r == c) && (r == 0 || r == 1 || r == 3 || r == 7);
      CHECK(w[static_cast<size_t>(r)][static_cast<size_t>(c)] == (onpos ? 1 : 0));
    }
  CHECK(window_csv(w) ==
        "1,0,0,0,0,0,0,0\n"
        "0,1,0,0,0,0,0,0\n"
        "0,0,0,0,0,0,0,0\n"
        "0,0,0,1,0,0,0,0\n"
        "0,0,0,0,0,0,0,0\n"
        "0,0,0,0,0,0,0,0\n"
        "0,0,0,0,0,0,0,0\n"
        "0,0,0,0,0,0,0,1\n");
}

TEST_CASE("phi is unital and multiplicative on windows") {
  const long N = 64;
  for (auto& x : samples()) {
    auto lhs = oplus_oracle(oracle_of(x), phi_infinity(x));
    CHECK(window_serial(lhs, N) == window_serial(phi_infinity(x), N));
  }
  auto s = samples();
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    auto lhs = oracle_product(phi_infinity(s[i]), phi_infinity(s[i + 1]));
    auto rhs = phi_infinity(s[i] * s[i + 1]);
    CHECK(window_serial(lhs, N) == window_serial(rhs, N));
  }
}

TEST_CASE("parallel window extraction matches the serial reference") {
  auto s = samples();
  for (auto& x : s) {
    auto o = phi_infinity(x);
    CHECK(window_parallel(o, 48) == window_serial(o, 48));
  }
  auto prod = oracle_product(phi_infinity(s[0]), phi_infinity(s[1]));
  CHECK(window_parallel(prod, 48) == window_serial(prod, 48));
}

TEST_CASE("windowed products agree on the safe subwindow") {
  auto s = samples();
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    auto v = window_product_check(s[i], s[i + 1], 64);
    CHECK(v.ok);
    CHECK(v.sufficient);
    CHECK(v.safe > 0);
  }
}

TEST_CASE("cone conditions hold for progression matrices") {
  for (auto& x : samples()) {
    auto r = gamma_conditions_check(x, 64);
    CHECK(r.ok);
  }
}

TEST_CASE("diagonal splitting recovers finite and shifted parts") {
  auto x = ProgressionMatrix::entry(1, 2, 5) + ProgressionMatrix::progression(1, 3, 1, 3);
  auto [fin, tail] = m_infinity_split(x);
  CHECK(fin.is_finite());
  CHECK(fin + tail == x);
}

TEST_CASE("wagoner conjugation works for several seeds") {
  for (uint64_t seed : {1ull, 7ull}) {
    auto r = wagoner_Q_check(seed);
    CHECK(r.ok);
    CHECK(r.failures.empty());
  }
}

TEST_CASE("wodzicki blowup grows along the block sizes") {
  std::vector<long> Ns = {1, 3, 10, 28};
  std::vector<long> expect = {1, 2, 4, 7};
  long prev = 0;
  for (size_t i = 0; i < Ns.size(); ++i) {
    auto r = wodzicki_blowup(Ns[i]);
    CHECK(r.max_entry == expect[i]);
    CHECK(r.predicted == expect[i]);
    CHECK(r.match);
    CHECK(r.max_entry > prev);
    prev = r.max_entry;
  }
}

TEST_CASE("json round trip preserves progression matrices") {
  for (auto& x : samples()) {
    auto j = x.to_json();
    CHECK(ProgressionMatrix::from_json(j) == x);
  }
  CHECK_THROWS_AS(ProgressionMatrix::from_json(nlohmann::json::parse("{\"bad\":1}")), Error);
}

}  // TEST_SUITE

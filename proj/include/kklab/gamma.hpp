#pragma once
// Exact arithmetic in the computable subring of the cone ring generated by
// finite matrix units e_{pq} and affine arithmetic progressions
// sum_i e_{a i + b, c i + d}, plus lazy oracle matrices for the operations
// (phi^infty in particular) whose index maps are not affine.  All indices
// are 0-based.
#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kklab/ints.hpp"

namespace kklab::gamma {

using ZWindow = std::vector<std::vector<Int>>;  // dense N x N block [0,N)^2

// one normalized term: coef * e_{p,q}  or  coef * sum_{i>=0} e_{a i+b, c i+d}
struct Term {
  Int coef;
  bool finite = true;
  long p = 0, q = 0;          // finite case
  long a = 1, b = 0, c = 1, d = 0;  // progression case, start folded to i = 0
};

class ProgressionMatrix {
public:
  ProgressionMatrix() = default;  // zero
  static ProgressionMatrix zero() { return {}; }
  static ProgressionMatrix identity();  // sum_i e_{i,i}
  static ProgressionMatrix entry(long p, long q, const Int& coef = 1);
  // coef * sum_{i >= i0} e_{a i + b, c i + d}
  static ProgressionMatrix progression(long a, long b, long c, long d, long i0 = 0,
                                       const Int& coef = 1);

  ProgressionMatrix operator+(const ProgressionMatrix& o) const;
  ProgressionMatrix operator-(const ProgressionMatrix& o) const;
  ProgressionMatrix operator-() const;
  ProgressionMatrix operator*(const ProgressionMatrix& o) const;  // matrix product
  friend ProgressionMatrix operator*(const Int& c, const ProgressionMatrix& x);
  bool operator==(const ProgressionMatrix& o) const { return (*this - o).terms_.empty(); }
  bool operator!=(const ProgressionMatrix& o) const { return !(*this == o); }

  ProgressionMatrix transpose() const;
  Int entry_at(long r, long s) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_finite() const;  // all terms finite (element of M_infty)
  const std::vector<Term>& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  std::string str() const;
  nlohmann::json to_json() const;
  static ProgressionMatrix from_json(const nlohmann::json& j);

private:
  std::vector<Term> terms_;  // pairwise-disjoint supports, canonical order
  void normalize();
};

// lazy matrix: exact entries plus per-row/column support enumerators and the
// declared finiteness bounds of the cone ring.  Entry functions must be pure
// (window extraction runs them concurrently).
struct OracleMatrix {
  std::function<Int(long, long)> entry;
  std::function<std::vector<long>(long)> row_support;  // ascending column indices
  std::function<std::vector<long>(long)> col_support;  // ascending row indices
  long value_bound = 0;        // |nonzero value set| <=
  long row_nonzero_bound = 0;  // nonzeros per row <=
  long col_nonzero_bound = 0;  // nonzeros per column <=
};

OracleMatrix oracle_of(const ProgressionMatrix& x);
OracleMatrix zero_oracle();
OracleMatrix identity_oracle();
OracleMatrix oracle_sum(const OracleMatrix& x, const OracleMatrix& y);
// exact product (finite row supports make the entry sums finite)
OracleMatrix oracle_product(const OracleMatrix& x, const OracleMatrix& y);

// the sum-ring structure
struct SumRing {
  ProgressionMatrix alpha1, beta1, alpha2, beta2;
};
SumRing sum_ring_data();

struct RelationReport {
  bool ok = true;
  std::vector<std::string> failures;
};
// alpha_1 beta_1 = alpha_2 beta_2 = 1, beta_1 alpha_1 + beta_2 alpha_2 = 1,
// alpha_2 beta_1 = alpha_1 beta_2 = 0, alpha_1 alpha_2^i beta_2^j beta_1 =
// delta_{ij} for i, j <= 4
RelationReport sum_ring_relations(const SumRing& s);

// a (+) b = beta_1 a alpha_1 + beta_2 b alpha_2
ProgressionMatrix oplus(const ProgressionMatrix& x, const ProgressionMatrix& y);
OracleMatrix oplus_oracle(const OracleMatrix& x, const OracleMatrix& y);
// permutation progression P with P ((x+y)+z) P^t = x+(y+z); P^t = P^{-1}
ProgressionMatrix oplus_reindexer();

// phi^infty(a) = sum_k beta_2^k beta_1 a alpha_1 alpha_2^k; entry (r,s) with
// r = 2^{k+1} i + 2^k - 1, s = 2^{k+1} j + 2^k - 1 carries a_{ij}
OracleMatrix phi_infinity(const OracleMatrix& x);
OracleMatrix phi_infinity(const ProgressionMatrix& x);

// psi^{V,W}(x) = W x V; requires V W = 1
ProgressionMatrix psi_vw(const ProgressionMatrix& V, const ProgressionMatrix& W,
                         const ProgressionMatrix& x);

// the generators of the Toeplitz image: ahat = sum e_{i,i+1}, bhat = sum e_{i+1,i}
ProgressionMatrix ahat();
ProgressionMatrix bhat();

// finite part (in M_infty) and progression remainder; sum reconstructs x
std::pair<ProgressionMatrix, ProgressionMatrix> m_infinity_split(const ProgressionMatrix& x);

// window extraction [0,N)^2; parallel variant used when OpenMP is enabled
ZWindow window_serial(const OracleMatrix& x, long N);
ZWindow window_parallel(const OracleMatrix& x, long N);
ZWindow window(const OracleMatrix& x, long N);
ZWindow window(const ProgressionMatrix& x, long N);
std::string window_csv(const ZWindow& w);

struct WindowVerdict {
  bool ok = false;
  bool sufficient = false;
  long safe = 0;  // compared subwindow [0,safe)^2
  std::string witness;
};
// compares window(x)*window(y) with window(x*y) on the safe subwindow where
// truncation cannot interfere (row supports of x inside [0,N))
WindowVerdict window_product_check(const OracleMatrix& x, const OracleMatrix& y, long N);
WindowVerdict window_product_check(const ProgressionMatrix& x, const ProgressionMatrix& y, long N);

// cone-ring conditions on a window: nonzero value set <= term count values,
// per-row/per-column nonzero counts <= term count
RelationReport gamma_conditions_check(const ProgressionMatrix& x, long N);

// block-diagonal all-ones blocks of sizes 1,2,3,...: the square has
// unboundedly large entries, so the row/column-finite relaxation of the cone
// conditions is not closed under products
struct WodzickiReport {
  long max_entry = 0;        // max |entry| of A^2 on [0,N)^2, computed numerically
  long predicted = 0;        // largest t with t(t-1)/2 < N
  bool match = false;
};
WodzickiReport wodzicki_blowup(long N);

// invertible 3x3 Q over the progression ring with
// Q diag(a (+) b, 0, 0) Q^{-1} = diag(a, b, 0)
struct WagonerReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::array<std::array<ProgressionMatrix, 3>, 3> Q, Qinv;
};
WagonerReport wagoner_Q_check(uint64_t seed = 1);

}  // namespace kklab::gamma

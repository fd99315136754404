#include "kklab/hnf.hpp"

#include <algorithm>

namespace kklab::ring {

ZMat transpose(const ZMat& A) {
  if (A.empty()) return {};
  size_t m = A.size(), n = A[0].size();
  ZMat T(n, ZVec(m, 0));
  for (size_t i = 0; i < m; ++i) {
    if (A[i].size() != n) throw Error("E_RAGGED", "ragged matrix");
    for (size_t j = 0; j < n; ++j) T[j][i] = A[i][j];
  }
  return T;
}

static void addmul_row(ZVec& dst, const ZVec& src, const Int& q) {
  // dst -= q * src
  for (size_t k = 0; k < dst.size(); ++k) dst[k] -= q * src[k];
}

RowHNF row_hnf(ZMat A) {
  RowHNF out;
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  for (auto& r : A)
    if (r.size() != n) throw Error("E_RAGGED", "ragged matrix");
  ZMat U(m, ZVec(m, 0));
  for (size_t i = 0; i < m; ++i) U[i][i] = 1;

  size_t r = 0;
  for (size_t col = 0; col < n && r < m; ++col) {
    // gcd-reduce entries in this column among rows >= r
    while (true) {
      // locate row with smallest nonzero |entry|
      size_t best = m;
      for (size_t i = r; i < m; ++i) {
        if (A[i][col] == 0) continue;
        if (best == m || mpz_cmpabs(A[i][col].get_mpz_t(), A[best][col].get_mpz_t()) < 0) best = i;
      }
      if (best == m) break;  // column all zero below r
      std::swap(A[r], A[best]);
      std::swap(U[r], U[best]);
      bool other = false;
      for (size_t i = r + 1; i < m; ++i) {
        if (A[i][col] == 0) continue;
        other = true;
        Int q;
        // round-to-nearest quotient keeps entries small
        mpz_tdiv_q(q.get_mpz_t(), A[i][col].get_mpz_t(), A[r][col].get_mpz_t());
        addmul_row(A[i], A[r], q);
        addmul_row(U[i], U[r], q);
        if (A[i][col] != 0) {
          // remainder left; loop again with smaller pivot
        }
      }
      if (!other) break;
      bool remaining = false;
      for (size_t i = r + 1; i < m; ++i)
        if (A[i][col] != 0) remaining = true;
      if (!remaining) break;
    }
    if (A[r][col] == 0) continue;
    if (A[r][col] < 0) {
      for (auto& x : A[r]) x = -x;
      for (auto& x : U[r]) x = -x;
    }
    // reduce entries above the pivot into [0, pivot)
    for (size_t i = 0; i < r; ++i) {
      if (A[i][col] == 0) continue;
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), A[i][col].get_mpz_t(), A[r][col].get_mpz_t());
      if (q != 0) {
        addmul_row(A[i], A[r], q);
        addmul_row(U[i], U[r], q);
      }
    }
    out.pivot_cols.push_back(static_cast<int>(col));
    ++r;
  }
  out.rank = static_cast<int>(r);
  out.H = std::move(A);
  out.U = std::move(U);
  return out;
}

ZMat kernel_basis(const ZMat& A) {
  if (A.empty()) return {};
  size_t n = A[0].size();
  RowHNF h = row_hnf(transpose(A));  // U * A^T = H
  ZMat ker;
  for (size_t i = static_cast<size_t>(h.rank); i < h.U.size(); ++i) ker.push_back(h.U[i]);
  if (ker.empty()) return ker;
  RowHNF canon = row_hnf(std::move(ker));
  canon.H.resize(static_cast<size_t>(canon.rank), ZVec(n, 0));
  return canon.H;
}

bool express_in_rows(const ZMat& B, const ZVec& v, ZVec& coeffs) {
  size_t m = B.size();
  coeffs.assign(m, 0);
  if (m == 0) {
    for (auto& x : v)
      if (x != 0) return false;
    return true;
  }
  RowHNF h = row_hnf(B);
  ZVec w = v;
  ZVec c(static_cast<size_t>(h.rank), 0);
  for (int r = 0; r < h.rank; ++r) {
    size_t col = static_cast<size_t>(h.pivot_cols[static_cast<size_t>(r)]);
    if (w[col] == 0) continue;
    Int q, rem;
    mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), w[col].get_mpz_t(),
                h.H[static_cast<size_t>(r)][col].get_mpz_t());
    if (rem != 0) return false;
    addmul_row(w, h.H[static_cast<size_t>(r)], q);
    c[static_cast<size_t>(r)] = q;
  }
  for (auto& x : w)
    if (x != 0) return false;
  // v = c * H = (c * U) * B
  for (size_t j = 0; j < m; ++j) {
    Int s = 0;
    for (size_t r = 0; r < static_cast<size_t>(h.rank); ++r) s += c[r] * h.U[r][j];
    coeffs[j] = s;
  }
  return true;
}

bool solve_integer(const ZMat& A, const ZVec& b, ZVec& x) {
  // A x = b  <=>  b is an integer combination of the columns of A
  return express_in_rows(transpose(A), b, x);
}

int rank_of(ZMat A) { return row_hnf(std::move(A)).rank; }

}  // namespace kklab::ring

#pragma once
// Square matrices over an arbitrary exact (possibly noncommutative) ring.
// Determinant/adjugate are only offered for commutative coefficient rings;
// callers are responsible for that (all current uses are commutative).
#include <vector>

#include "kklab/ints.hpp"
#include "kklab/laurent.hpp"
#include "kklab/poly.hpp"

namespace kklab::ring {

template <class R>
struct ring_traits;  // specialize: static R zero(); static R one();

template <>
struct ring_traits<Int> {
  static Int zero() { return Int(0); }
  static Int one() { return Int(1); }
};
template <>
struct ring_traits<IntPolynomial> {
  static IntPolynomial zero() { return IntPolynomial(); }
  static IntPolynomial one() { return IntPolynomial::constant(1); }
};
template <>
struct ring_traits<LaurentPolynomial> {
  static LaurentPolynomial zero() { return LaurentPolynomial(); }
  static LaurentPolynomial one() { return LaurentPolynomial::constant(1); }
};

template <class R>
class RingMatrix {
public:
  RingMatrix() : n_(0) {}
  explicit RingMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n, ring_traits<R>::zero()) {}

  static RingMatrix identity(int n) {
    RingMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ring_traits<R>::one();
    return m;
  }

  int size() const { return n_; }
  R& at(int i, int j) { return e_[static_cast<size_t>(i) * n_ + j]; }
  const R& at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }

  bool operator==(const RingMatrix& o) const { return n_ == o.n_ && e_ == o.e_; }
  bool operator!=(const RingMatrix& o) const { return !(*this == o); }

  RingMatrix operator+(const RingMatrix& o) const {
    require_same(o);
    RingMatrix r(n_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] + o.e_[k];
    return r;
  }
  RingMatrix operator-(const RingMatrix& o) const {
    require_same(o);
    RingMatrix r(n_);
    for (size_t k = 0; k < e_.size(); ++k) r.e_[k] = e_[k] - o.e_[k];
    return r;
  }
  RingMatrix operator*(const RingMatrix& o) const {
    require_same(o);
    RingMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        R s = ring_traits<R>::zero();
        for (int k = 0; k < n_; ++k) s = s + at(i, k) * o.at(k, j);
        r.at(i, j) = s;
      }
    return r;
  }

  bool is_zero() const {
    R z = ring_traits<R>::zero();
    for (auto& x : e_)
      if (!(x == z)) return false;
    return true;
  }

private:
  void require_same(const RingMatrix& o) const {
    if (n_ != o.n_) throw Error("E_DIM", "matrix dimension mismatch");
  }
  int n_;
  std::vector<R> e_;
};

// minor with row i / column j removed (commutative use)
template <class R>
RingMatrix<R> minor_matrix(const RingMatrix<R>& m, int i, int j) {
  int n = m.size();
  RingMatrix<R> r(n - 1);
  for (int a = 0, ra = 0; a < n; ++a) {
    if (a == i) continue;
    for (int b = 0, rb = 0; b < n; ++b) {
      if (b == j) continue;
      r.at(ra, rb) = m.at(a, b);
      ++rb;
    }
    ++ra;
  }
  return r;
}

template <class R>
R determinant(const RingMatrix<R>& m) {
  int n = m.size();
  if (n == 0) return ring_traits<R>::one();
  if (n == 1) return m.at(0, 0);
  R det = ring_traits<R>::zero();
  for (int j = 0; j < n; ++j) {
    R cof = m.at(0, j) * determinant(minor_matrix(m, 0, j));
    if (j % 2 == 0)
      det = det + cof;
    else
      det = det - cof;
  }
  return det;
}

template <class R>
RingMatrix<R> adjugate(const RingMatrix<R>& m) {
  int n = m.size();
  RingMatrix<R> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      R c = determinant(minor_matrix(m, i, j));
      // adj = transpose of cofactor matrix
      if ((i + j) % 2 == 0)
        adj.at(j, i) = c;
      else
        adj.at(j, i) = ring_traits<R>::zero() - c;
    }
  return adj;
}

// Exact inverse for matrices with unit determinant (the only case this
// library needs).  Throws if det is not +-1.
template <class R>
RingMatrix<R> unimodular_inverse(const RingMatrix<R>& m) {
  R det = determinant(m);
  RingMatrix<R> adj = adjugate(m);
  if (det == ring_traits<R>::one()) return adj;
  if (det == ring_traits<R>::zero() - ring_traits<R>::one()) {
    RingMatrix<R> r(m.size());
    return r - adj;
  }
  throw Error("E_NOT_UNIMODULAR", "matrix determinant is not a unit +-1");
}

}  // namespace kklab::ring

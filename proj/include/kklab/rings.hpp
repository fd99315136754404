#pragma once
// Presented rings and homomorphism checking, plus the small concrete
// constructions that live at this level: the rotation homotopy, Morita
// corner maps, and twisted Laurent (crossed product) rings.
#include <map>
#include <string>
#include <vector>

#include "kklab/ints.hpp"
#include "kklab/laurent.hpp"
#include "kklab/matrix.hpp"
#include "kklab/poly.hpp"

namespace kklab::ring {

// ---------------------------------------------------------------------------
// free (noncommutative) Z-algebra on numbered generators

using Word = std::vector<int>;  // product of generators, [] = 1

struct NcPoly {
  std::map<Word, Int> terms;

  static NcPoly constant(const Int& c) {
    NcPoly p;
    if (c != 0) p.terms[{}] = c;
    return p;
  }
  static NcPoly one() { return constant(1); }
  static NcPoly gen(int i) {
    NcPoly p;
    p.terms[{i}] = 1;
    return p;
  }

  void add(const Word& w, const Int& c) {
    if (c == 0) return;
    auto it = terms.find(w);
    if (it == terms.end())
      terms[w] = c;
    else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  NcPoly operator+(const NcPoly& o) const {
    NcPoly r = *this;
    for (auto& [w, c] : o.terms) r.add(w, c);
    return r;
  }
  NcPoly operator-(const NcPoly& o) const {
    NcPoly r = *this;
    for (auto& [w, c] : o.terms) r.add(w, -c);
    return r;
  }
  NcPoly operator*(const NcPoly& o) const {
    NcPoly r;
    for (auto& [w1, c1] : terms)
      for (auto& [w2, c2] : o.terms) {
        Word w = w1;
        w.insert(w.end(), w2.begin(), w2.end());
        r.add(w, c1 * c2);
      }
    return r;
  }
  bool operator==(const NcPoly& o) const { return terms == o.terms; }

  std::string str(const std::vector<std::string>& names) const;
};

struct AlgebraPresentation {
  std::vector<std::string> gens;
  std::vector<std::pair<std::string, NcPoly>> relations;  // each NcPoly == 0
};

// catalog
AlgebraPresentation presentation_toeplitz();       // a, b with ab = 1
AlgebraPresentation presentation_laurent();        // x, y with xy = yx = 1
AlgebraPresentation presentation_polynomial();     // x, no relations

// evaluate a free-algebra element under gen(i) -> images[i]
template <class R>
R evaluate(const NcPoly& p, const std::vector<R>& images, const R& one) {
  R acc = one - one;  // zero
  for (auto& [w, c] : p.terms) {
    R term = one;
    for (int g : w) {
      if (g < 0 || static_cast<size_t>(g) >= images.size())
        throw Error("E_GEN_RANGE", "generator index out of range");
      term = term * images[static_cast<size_t>(g)];
    }
    // scalar multiple via repeated addition would be slow; rings here all
    // support Int scalars through constant embedding: emulate with doubling
    R scaled = acc - acc;
    Int k = c;
    bool neg = k < 0;
    if (neg) k = -k;
    R base = term;
    while (k > 0) {
      if (mpz_odd_p(k.get_mpz_t())) scaled = scaled + base;
      base = base + base;
      k >>= 1;
    }
    if (neg)
      acc = acc - scaled;
    else
      acc = acc + scaled;
  }
  return acc;
}

template <class R>
R evaluate(const NcPoly& p, const std::vector<R>& images) {
  return evaluate(p, images, ring_traits<R>::one());
}

struct HomVerdict {
  bool ok = true;
  std::string failing_relation;  // name of first failing relation
  std::string residual;          // printed nonzero image
};

// Verifies gen(i) -> images[i] kills every relation.  Equality in the
// target is exact (normal forms), so this is a complete check.
template <class R, class StrFn>
HomVerdict check_hom(const AlgebraPresentation& pres, const std::vector<R>& images, const R& one,
                     StrFn&& str) {
  if (images.size() != pres.gens.size())
    throw Error("E_GEN_COUNT", "image count does not match generator count");
  HomVerdict v;
  for (auto& [name, rel] : pres.relations) {
    R img = evaluate(rel, images, one);
    R zero = one - one;
    if (!(img == zero)) {
      v.ok = false;
      v.failing_relation = name;
      v.residual = str(img);
      return v;
    }
  }
  return v;
}

template <class R, class StrFn>
HomVerdict check_hom(const AlgebraPresentation& pres, const std::vector<R>& images, StrFn&& str) {
  return check_hom(pres, images, ring_traits<R>::one(), std::forward<StrFn>(str));
}

// ---------------------------------------------------------------------------
// rotation homotopy: W in M2(Z[t]) with W(0) = 1, W(1) = rotation by 90
// degrees, det W = 1.  Built from three shear factors.

struct RotationHomotopy {
  RingMatrix<IntPolynomial> W;
  RingMatrix<IntPolynomial> Winv;
  IntPolynomial det;
};
RotationHomotopy rotation_homotopy();

// ---------------------------------------------------------------------------
// Morita corner maps.  xi_{p,q}(a) = (p_i a q_j)_{ij}; with V = sum e_{1i} q_i
// and W = sum e_{i1} p_i this factors as xi(a) = W (a e_{11}) V.

template <class R>
RingMatrix<R> morita_apply(const std::vector<R>& p, const std::vector<R>& q, const R& a) {
  if (p.size() != q.size()) throw Error("E_DIM", "p and q must have equal length");
  int n = static_cast<int>(p.size());
  RingMatrix<R> m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.at(i, j) = p[static_cast<size_t>(i)] * a * q[static_cast<size_t>(j)];
  return m;
}

// precondition on samples: a (sum_i q_i p_i) a' = a a'
template <class R>
bool morita_precondition(const std::vector<R>& p, const std::vector<R>& q,
                         const std::vector<R>& samples) {
  R s = p.empty() ? throw Error("E_DIM", "empty frame") : p[0] - p[0];
  for (size_t i = 0; i < p.size(); ++i) s = s + q[i] * p[i];
  for (auto& a : samples)
    for (auto& b : samples)
      if (!(a * s * b == a * b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// crossed product A[t, t^{-1}; sigma], A = Z[x1..xn], sigma an automorphism
// given by generator images (with its inverse, which is validated).

class CrossedProduct {
public:
  CrossedProduct(int nvars, std::vector<IntPolynomial> sigma_images,
                 std::vector<IntPolynomial> sigma_inv_images);
  int nvars() const { return nvars_; }
  IntPolynomial twist(const IntPolynomial& p, long m) const;  // sigma^m

private:
  int nvars_;
  std::vector<IntPolynomial> fwd_, inv_;
};

struct CrossedElem {
  const CrossedProduct* ring = nullptr;
  std::map<long, IntPolynomial> c;  // t-exponent -> coefficient in A

  static CrossedElem from_poly(const CrossedProduct& R, const IntPolynomial& a, long texp = 0) {
    CrossedElem e;
    e.ring = &R;
    if (!a.is_zero()) e.c[texp] = a;
    return e;
  }
  static CrossedElem t_power(const CrossedProduct& R, long m) {
    return from_poly(R, IntPolynomial::constant(1), m);
  }

  bool is_zero() const { return c.empty(); }
  bool operator==(const CrossedElem& o) const { return c == o.c; }

  CrossedElem operator+(const CrossedElem& o) const;
  CrossedElem operator-(const CrossedElem& o) const;
  CrossedElem operator*(const CrossedElem& o) const;

  std::string str() const;
};

}  // namespace kklab::ring

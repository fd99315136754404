#include "kklab/rings.hpp"

#include <sstream>

namespace kklab::ring {

std::string NcPoly::str(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [w, c] : terms) {
    Int a = c;
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (a < 0) a = -a;
    first = false;
    if (w.empty() || a != 1) {
      os << a.get_str();
      if (!w.empty()) os << "*";
    }
    for (size_t i = 0; i < w.size(); ++i) {
      if (i) os << "*";
      os << names.at(static_cast<size_t>(w[i]));
    }
  }
  return os.str();
}

AlgebraPresentation presentation_toeplitz() {
  AlgebraPresentation p;
  p.gens = {"a", "b"};
  p.relations.push_back({"ab=1", NcPoly::gen(0) * NcPoly::gen(1) - NcPoly::one()});
  return p;
}

AlgebraPresentation presentation_laurent() {
  AlgebraPresentation p;
  p.gens = {"x", "y"};
  p.relations.push_back({"xy=1", NcPoly::gen(0) * NcPoly::gen(1) - NcPoly::one()});
  p.relations.push_back({"yx=1", NcPoly::gen(1) * NcPoly::gen(0) - NcPoly::one()});
  return p;
}

AlgebraPresentation presentation_polynomial() {
  AlgebraPresentation p;
  p.gens = {"x"};
  return p;
}

RotationHomotopy rotation_homotopy() {
  using M = RingMatrix<IntPolynomial>;
  IntPolynomial t = IntPolynomial::var(1);
  IntPolynomial one = IntPolynomial::constant(1);
  M lower(2), upper(2);
  // shear factors: [[1,0],[t,1]] * [[1,-t],[0,1]] * [[1,0],[t,1]]
  lower.at(0, 0) = one;
  lower.at(1, 0) = t;
  lower.at(1, 1) = one;
  upper.at(0, 0) = one;
  upper.at(0, 1) = -t;
  upper.at(1, 1) = one;
  RotationHomotopy r;
  r.W = lower * upper * lower;
  r.det = determinant(r.W);
  r.Winv = unimodular_inverse(r.W);
  return r;
}

CrossedProduct::CrossedProduct(int nvars, std::vector<IntPolynomial> sigma_images,
                               std::vector<IntPolynomial> sigma_inv_images)
    : nvars_(nvars), fwd_(std::move(sigma_images)), inv_(std::move(sigma_inv_images)) {
  if (fwd_.size() != static_cast<size_t>(nvars) || inv_.size() != static_cast<size_t>(nvars))
    throw Error("E_DIM", "automorphism image count mismatch");
  // sigma and sigma^{-1} must compose to the identity on generators
  for (int i = 1; i <= nvars_; ++i) {
    IntPolynomial xi = IntPolynomial::var(i);
    if (fwd_[static_cast<size_t>(i - 1)].substitute(inv_) != xi ||
        inv_[static_cast<size_t>(i - 1)].substitute(fwd_) != xi)
      throw Error("E_NOT_AUTOMORPHISM", "twist images do not invert each other");
  }
}

IntPolynomial CrossedProduct::twist(const IntPolynomial& p, long m) const {
  IntPolynomial r = p;
  const std::vector<IntPolynomial>& images = m >= 0 ? fwd_ : inv_;
  for (long k = 0; k < (m >= 0 ? m : -m); ++k) r = r.substitute(images);
  return r;
}

static void require_same_ring(const CrossedElem& a, const CrossedElem& b) {
  if (a.ring != b.ring || a.ring == nullptr)
    throw Error("E_RING_MISMATCH", "crossed-product elements from different rings");
}

CrossedElem CrossedElem::operator+(const CrossedElem& o) const {
  require_same_ring(*this, o);
  CrossedElem r = *this;
  for (auto& [e, p] : o.c) {
    auto it = r.c.find(e);
    if (it == r.c.end())
      r.c[e] = p;
    else {
      it->second += p;
      if (it->second.is_zero()) r.c.erase(it);
    }
  }
  return r;
}

CrossedElem CrossedElem::operator-(const CrossedElem& o) const {
  require_same_ring(*this, o);
  CrossedElem neg;
  neg.ring = o.ring;
  for (auto& [e, p] : o.c) neg.c[e] = -p;
  return *this + neg;
}

CrossedElem CrossedElem::operator*(const CrossedElem& o) const {
  require_same_ring(*this, o);
  CrossedElem r;
  r.ring = ring;
  for (auto& [m, a] : c)
    for (auto& [n, b] : o.c) {
      // (a t^m)(b t^n) = a sigma^m(b) t^{m+n}
      IntPolynomial coeff = a * ring->twist(b, m);
      if (coeff.is_zero()) continue;
      auto it = r.c.find(m + n);
      if (it == r.c.end())
        r.c[m + n] = coeff;
      else {
        it->second += coeff;
        if (it->second.is_zero()) r.c.erase(it);
      }
    }
  return r;
}

std::string CrossedElem::str() const {
  if (c.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [e, p] : c) {
    if (!first) os << " + ";
    first = false;
    os << "(" << p.str("x") << ")";
    if (e != 0) {
      os << "*t";
      if (e != 1) os << "^" << e;
    }
  }
  return os.str();
}

}  // namespace kklab::ring

#pragma once
// Laurent polynomials Z[t, t^-1], sparse.
#include <map>
#include <sstream>
#include <string>

#include "kklab/ints.hpp"

namespace kklab::ring {

class LaurentPolynomial {
public:
  LaurentPolynomial() = default;
  static LaurentPolynomial constant(const Int& c) {
    LaurentPolynomial p;
    if (c != 0) p.c_[0] = c;
    return p;
  }
  static LaurentPolynomial t(long e = 1) {
    LaurentPolynomial p;
    p.c_[e] = 1;
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  bool operator==(const LaurentPolynomial& o) const { return c_ == o.c_; }
  bool operator!=(const LaurentPolynomial& o) const { return !(*this == o); }

  LaurentPolynomial operator-() const {
    LaurentPolynomial r;
    for (auto& [e, c] : c_) r.c_[e] = -c;
    return r;
  }
  LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
    for (auto& [e, c] : o.c_) add(e, c);
    return *this;
  }
  LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
    for (auto& [e, c] : o.c_) add(e, -c);
    return *this;
  }
  LaurentPolynomial operator+(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    r += o;
    return r;
  }
  LaurentPolynomial operator-(const LaurentPolynomial& o) const {
    LaurentPolynomial r = *this;
    r -= o;
    return r;
  }
  LaurentPolynomial operator*(const LaurentPolynomial& o) const {
    LaurentPolynomial r;
    for (auto& [e1, c1] : c_)
      for (auto& [e2, c2] : o.c_) r.add(e1 + e2, c1 * c2);
    return r;
  }

  void add(long e, const Int& c) {
    if (c == 0) return;
    auto it = c_.find(e);
    if (it == c_.end())
      c_[e] = c;
    else {
      it->second += c;
      if (it->second == 0) c_.erase(it);
    }
  }

  Int coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? Int(0) : it->second;
  }
  const std::map<long, Int>& terms() const { return c_; }

  // evaluate at an integer point (t = x); negative exponents require |x| = 1
  Int eval(const Int& x) const {
    Int r = 0;
    for (auto& [e, c] : c_) {
      if (e >= 0) {
        r += c * ipow(x, static_cast<unsigned>(e));
      } else {
        if (x != 1 && x != -1)
          throw Error("E_LAURENT_EVAL", "negative exponent needs unit evaluation point");
        Int xe = ipow(x, static_cast<unsigned>(-e));  // x^-e = x^e for x = +-1... careful
        // for x = -1: x^{-e} = x^{e}; for x = 1 trivial
        r += c * xe;
      }
    }
    return r;
  }

  std::string str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      auto [e, c] = *it;
      Int a = c;
      if (first) {
        if (a < 0) os << "-";
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      if (a < 0) a = -a;
      first = false;
      if (e == 0 || a != 1) {
        os << a.get_str();
        if (e != 0) os << "*";
      }
      if (e != 0) {
        os << "t";
        if (e != 1) os << "^" << e;
      }
    }
    return os.str();
  }

private:
  std::map<long, Int> c_;
};

}  // namespace kklab::ring

#pragma once
// Sparse multivariate polynomials over Z, graded-lex term order.
// Variables are t1, t2, ... ; an exponent vector stores exponents of
// t1..tk with trailing zeros stripped, so the representation is stable
// under embedding Z[t1..tn] -> Z[t1..tm], m >= n.
#include <map>
#include <string>
#include <vector>

#include "kklab/ints.hpp"

namespace kklab::ring {

using Exps = std::vector<int>;  // trailing zeros stripped

int total_deg(const Exps& e);

struct GradedLexLess {
  bool operator()(const Exps& a, const Exps& b) const;
};

class IntPolynomial {
public:
  using TermMap = std::map<Exps, Int, GradedLexLess>;

  IntPolynomial() = default;
  static IntPolynomial constant(const Int& c);
  static IntPolynomial var(int i);  // t_i, i >= 1

  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;  // -1 for zero
  int nvars() const;         // max variable index occurring

  IntPolynomial operator-() const;
  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  friend IntPolynomial operator*(const Int& c, const IntPolynomial& p);
  bool operator==(const IntPolynomial& o) const { return terms_ == o.terms_; }
  bool operator!=(const IntPolynomial& o) const { return !(*this == o); }
  bool operator<(const IntPolynomial& o) const;  // arbitrary total order (for use as map key)

  IntPolynomial pow(unsigned e) const;

  // t_i -> images[i-1]; images must cover nvars().
  IntPolynomial substitute(const std::vector<IntPolynomial>& images) const;
  // convenience: substitute integers
  Int eval(const std::vector<Int>& point) const;

  const TermMap& terms() const { return terms_; }
  Int coeff(const Exps& e) const;
  void add_term(const Exps& e, const Int& c);  // accumulate, drop zeros

  std::string str(const std::string& base_name = "t") const;

private:
  TermMap terms_;
};

// Coordinate calculus of the simplex rings.  Z^{Delta^n} is presented in
// eliminated coordinates Z[t1..tn] with t0 = 1 - sum t_k.
//
// face_star(i, n): pullback of the i-th coface, Z[t1..tn] -> Z[t1..t_{n-1}].
// degen_star(j, n): pullback of the j-th codegeneracy, Z[t1..tn] -> Z[t1..t_{n+1}].
IntPolynomial face_star(int i, int n, const IntPolynomial& p);
IntPolynomial degen_star(int j, int n, const IntPolynomial& p);

// All monomials in `nvars` variables of total degree <= d, graded-lex order.
std::vector<Exps> monomials_upto(int nvars, int d);

}  // namespace kklab::ring

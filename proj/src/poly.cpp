#include "kklab/poly.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kklab::ring {

int total_deg(const Exps& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

bool GradedLexLess::operator()(const Exps& a, const Exps& b) const {
  int da = total_deg(a), db = total_deg(b);
  if (da != db) return da < db;
  // lex on padded vectors
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int ai = i < a.size() ? a[i] : 0;
    int bi = i < b.size() ? b[i] : 0;
    if (ai != bi) return ai > bi;  // higher power of earlier variable = later? pick: larger first-exponent sorts earlier in lex; we need a strict weak order, direction is a convention
  }
  return false;
}

static void strip(Exps& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

IntPolynomial IntPolynomial::constant(const Int& c) {
  IntPolynomial p;
  if (c != 0) p.terms_[{}] = c;
  return p;
}

IntPolynomial IntPolynomial::var(int i) {
  if (i < 1) throw Error("E_BAD_VAR", "variable index must be >= 1");
  Exps e(static_cast<size_t>(i), 0);
  e[static_cast<size_t>(i) - 1] = 1;
  IntPolynomial p;
  p.terms_[e] = 1;
  return p;
}

int IntPolynomial::total_degree() const {
  int d = -1;
  for (auto& [e, c] : terms_) d = std::max(d, total_deg(e));
  return d;
}

int IntPolynomial::nvars() const {
  size_t n = 0;
  for (auto& [e, c] : terms_) n = std::max(n, e.size());
  return static_cast<int>(n);
}

void IntPolynomial::add_term(const Exps& e0, const Int& c) {
  if (c == 0) return;
  Exps e = e0;
  strip(e);
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(std::move(e), c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r;
  for (auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

IntPolynomial IntPolynomial::operator+(const IntPolynomial& o) const {
  IntPolynomial r = *this;
  r += o;
  return r;
}

IntPolynomial IntPolynomial::operator-(const IntPolynomial& o) const {
  IntPolynomial r = *this;
  r -= o;
  return r;
}

IntPolynomial IntPolynomial::operator*(const IntPolynomial& o) const {
  IntPolynomial r;
  for (auto& [e1, c1] : terms_) {
    for (auto& [e2, c2] : o.terms_) {
      Exps e(std::max(e1.size(), e2.size()), 0);
      for (size_t i = 0; i < e1.size(); ++i) e[i] += e1[i];
      for (size_t i = 0; i < e2.size(); ++i) e[i] += e2[i];
      r.add_term(e, c1 * c2);
    }
  }
  return r;
}

IntPolynomial operator*(const Int& c, const IntPolynomial& p) {
  IntPolynomial r;
  if (c == 0) return r;
  for (auto& [e, k] : p.terms_) r.terms_[e] = c * k;
  return r;
}

bool IntPolynomial::operator<(const IntPolynomial& o) const {
  // lexicographic on the ordered term list; only used for canonical containers
  auto it1 = terms_.begin(), it2 = o.terms_.begin();
  GradedLexLess lt;
  for (; it1 != terms_.end() && it2 != o.terms_.end(); ++it1, ++it2) {
    if (lt(it1->first, it2->first)) return true;
    if (lt(it2->first, it1->first)) return false;
    if (it1->second != it2->second) return it1->second < it2->second;
  }
  return it1 == terms_.end() && it2 != o.terms_.end();
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
  IntPolynomial r = constant(1);
  IntPolynomial b = *this;
  while (e) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1u;
  }
  return r;
}

IntPolynomial IntPolynomial::substitute(const std::vector<IntPolynomial>& images) const {
  IntPolynomial r;
  for (auto& [e, c] : terms_) {
    IntPolynomial term = constant(c);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= images.size())
        throw Error("E_SUBST_ARITY", "substitution image list too short");
      term = term * images[i].pow(static_cast<unsigned>(e[i]));
    }
    r += term;
  }
  return r;
}

Int IntPolynomial::eval(const std::vector<Int>& point) const {
  Int r = 0;
  for (auto& [e, c] : terms_) {
    Int t = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (i >= point.size()) throw Error("E_SUBST_ARITY", "evaluation point too short");
      t *= ipow(point[i], static_cast<unsigned>(e[i]));
    }
    r += t;
  }
  return r;
}

Int IntPolynomial::coeff(const Exps& e0) const {
  Exps e = e0;
  strip(e);
  auto it = terms_.find(e);
  return it == terms_.end() ? Int(0) : it->second;
}

std::string IntPolynomial::str(const std::string& base_name) const {
  if (terms_.empty()) return "0";
  bool single_var = nvars() <= 1;  // print "t" instead of "t1"
  std::ostringstream os;
  bool first = true;
  // highest-degree terms first for readability
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Int a = c;
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (a < 0) a = -a;
    first = false;
    bool has_vars = total_deg(e) > 0;
    if (!has_vars || a != 1) {
      os << a.get_str();
      if (has_vars) os << "*";
    }
    bool firstv = true;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!firstv) os << "*";
      firstv = false;
      os << base_name;
      if (!single_var) os << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

IntPolynomial face_star(int i, int n, const IntPolynomial& p) {
  if (n < 1 || i < 0 || i > n) throw Error("E_FACE_RANGE", "face index out of range");
  if (p.nvars() > n) throw Error("E_SUBST_ARITY", "polynomial has more variables than source simplex");
  std::vector<IntPolynomial> images;
  images.reserve(static_cast<size_t>(n));
  if (i == 0) {
    // t1 -> 1 - (u1 + ... + u_{n-1}); t_j -> u_{j-1} for j >= 2
    IntPolynomial u0 = IntPolynomial::constant(1);
    for (int k = 1; k <= n - 1; ++k) u0 -= IntPolynomial::var(k);
    images.push_back(u0);
    for (int j = 2; j <= n; ++j) images.push_back(IntPolynomial::var(j - 1));
  } else {
    for (int j = 1; j <= n; ++j) {
      if (j < i)
        images.push_back(IntPolynomial::var(j));
      else if (j == i)
        images.push_back(IntPolynomial());  // t_i -> 0
      else
        images.push_back(IntPolynomial::var(j - 1));
    }
  }
  return p.substitute(images);
}

IntPolynomial degen_star(int j, int n, const IntPolynomial& p) {
  if (j < 0 || j > n) throw Error("E_DEGEN_RANGE", "degeneracy index out of range");
  if (p.nvars() > n) throw Error("E_SUBST_ARITY", "polynomial has more variables than source simplex");
  std::vector<IntPolynomial> images;
  images.reserve(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    if (k < j)
      images.push_back(IntPolynomial::var(k));
    else if (k == j)
      images.push_back(IntPolynomial::var(j) + IntPolynomial::var(j + 1));
    else
      images.push_back(IntPolynomial::var(k + 1));
  }
  // j == 0: every t_k shifts up one slot (t0 = 1 - sum absorbs the split)
  return p.substitute(images);
}

std::vector<Exps> monomials_upto(int nvars, int d) {
  std::vector<Exps> out;
  Exps cur;
  // enumerate all exponent vectors with total degree <= d, then sort graded-lex
  std::function<void(int, int)> rec = [&](int var, int rem) {
    if (var == nvars) {
      Exps e = cur;
      while (!e.empty() && e.back() == 0) e.pop_back();
      out.push_back(e);
      return;
    }
    for (int k = 0; k <= rem; ++k) {
      cur.push_back(k);
      rec(var + 1, rem - k);
      cur.pop_back();
    }
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

}  // namespace kklab::ring

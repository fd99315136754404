#include "kklab/gamma.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kklab::gamma {

namespace {

long floordiv(long a, long b) {  // b > 0
  long q = a / b, r = a % b;
  return r != 0 && r < 0 ? q - 1 : q;
}
long ceildiv(long a, long b) {  // b > 0
  return -floordiv(-a, b);
}

// g = gcd(a,b), a x + b y = g  (a, b >= 0, not both zero)
long egcd(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long x1, y1;
  long g = egcd(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

// integer solutions of  s*i - t*j = r  (s, t >= 1):
// i = i0 + (t/g) u, j = j0 + (s/g) u for all u, when g = gcd(s,t) divides r
struct DioFamily {
  bool any = false;
  long i0 = 0, j0 = 0, istep = 0, jstep = 0;
};
DioFamily dio_solve(long s, long t, long r) {
  DioFamily f;
  long x, y;
  long g = egcd(s, t, x, y);
  if (r % g != 0) return f;
  f.any = true;
  f.i0 = x * (r / g);
  f.j0 = -y * (r / g);
  f.istep = t / g;
  f.jstep = s / g;
  return f;
}

constexpr long kSplitCap = 4096;  // refuse normalizations that would expand hugely

}  // namespace

// ---------------------------------------------------------------------------
// construction

ProgressionMatrix ProgressionMatrix::identity() { return progression(1, 0, 1, 0); }

ProgressionMatrix ProgressionMatrix::entry(long p, long q, const Int& coef) {
  if (p < 0 || q < 0) throw Error("E_RANGE", "matrix-unit indices must be >= 0");
  ProgressionMatrix m;
  if (coef != 0) {
    Term t;
    t.coef = coef;
    t.finite = true;
    t.p = p;
    t.q = q;
    m.terms_.push_back(t);
  }
  m.normalize();
  return m;
}

ProgressionMatrix ProgressionMatrix::progression(long a, long b, long c, long d, long i0,
                                                 const Int& coef) {
  if (a < 1 || c < 1 || b < 0 || d < 0 || i0 < 0)
    throw Error("E_RANGE", "progression needs a,c >= 1 and b,d,i0 >= 0");
  ProgressionMatrix m;
  if (coef != 0) {
    Term t;
    t.coef = coef;
    t.finite = false;
    t.a = a;
    t.b = b + a * i0;  // fold the start into the offsets
    t.c = c;
    t.d = d + c * i0;
    m.terms_.push_back(t);
  }
  m.normalize();
  return m;
}

// ---------------------------------------------------------------------------
// normalization: pairwise-disjoint supports

namespace {

struct PTerm {
  Int coef;
  long a, b, c, d;
};

// support membership of e_{r,s} in the progression; returns parameter i or -1
long pterm_param(const PTerm& t, long r, long s) {
  if (r < t.b || (r - t.b) % t.a != 0) return -1;
  long i = (r - t.b) / t.a;
  return t.c * i + t.d == s ? i : -1;
}

// overlap of two progression supports in their parameters
struct Overlap {
  enum Kind { None, Point, Arith } kind = None;
  long i = 0, j = 0;          // base parameters (first common entry)
  long istep = 0, jstep = 0;  // steps (Arith only)
};

Overlap pterm_overlap(const PTerm& s, const PTerm& t) {
  Overlap o;
  // rows equal: s.a i - t.a j = t.b - s.b ; cols equal: s.c i - t.c j = t.d - s.d
  DioFamily f = dio_solve(s.a, t.a, t.b - s.b);
  if (!f.any) return o;
  long K = s.c * f.istep - t.c * f.jstep;                  // coefficient of u in eq2
  long R = (t.d - s.d) - (s.c * f.i0 - t.c * f.j0);        // residual of eq2 at u=0
  if (K != 0) {
    if (R % K != 0) return o;
    long u = R / K;
    long i = f.i0 + f.istep * u, j = f.j0 + f.jstep * u;
    if (i < 0 || j < 0) return o;
    o.kind = Overlap::Point;
    o.i = i;
    o.j = j;
    return o;
  }
  if (R != 0) return o;
  // whole family solves both equations; clamp to i, j >= 0
  long umin = std::max(ceildiv(-f.i0, f.istep), ceildiv(-f.j0, f.jstep));
  o.kind = Overlap::Arith;
  o.i = f.i0 + f.istep * umin;
  o.j = f.j0 + f.jstep * umin;
  o.istep = f.istep;
  o.jstep = f.jstep;
  return o;
}

using FinMap = std::map<std::pair<long, long>, Int>;

void emit_prefix(const PTerm& t, long upto, FinMap& fin) {  // parameters [0, upto)
  if (upto > kSplitCap) throw Error("E_NORMALIZE", "refinement would expand too far");
  for (long i = 0; i < upto; ++i) fin[{t.a * i + t.b, t.c * i + t.d}] += t.coef;
}

PTerm subprog(const PTerm& t, long base, long step) {  // parameters base + step*u
  return PTerm{t.coef, t.a * step, t.a * base + t.b, t.c * step, t.c * base + t.d};
}

}  // namespace

void ProgressionMatrix::normalize() {
  FinMap fin;
  std::vector<PTerm> prog;
  for (auto& t : terms_) {
    if (t.coef == 0) continue;
    if (t.finite)
      fin[{t.p, t.q}] += t.coef;
    else
      prog.push_back(PTerm{t.coef, t.a, t.b, t.c, t.d});
  }
  terms_.clear();

  for (int guard = 0;; ++guard) {
    if (guard > 1000) throw Error("E_NORMALIZE", "refinement did not stabilize");
    // merge identical progressions, drop zeros
    std::sort(prog.begin(), prog.end(), [](const PTerm& x, const PTerm& y) {
      return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
    });
    std::vector<PTerm> merged;
    for (auto& t : prog) {
      if (!merged.empty() && std::tie(merged.back().a, merged.back().b, merged.back().c,
                                      merged.back().d) == std::tie(t.a, t.b, t.c, t.d))
        merged.back().coef += t.coef;
      else
        merged.push_back(t);
    }
    prog.clear();
    for (auto& t : merged)
      if (t.coef != 0) prog.push_back(t);

    bool changed = false;
    // progression-progression overlaps
    for (size_t x = 0; x < prog.size() && !changed; ++x)
      for (size_t y = x + 1; y < prog.size() && !changed; ++y) {
        Overlap o = pterm_overlap(prog[x], prog[y]);
        if (o.kind == Overlap::None) continue;
        PTerm tx = prog[x], ty = prog[y];
        prog.erase(prog.begin() + y);
        prog.erase(prog.begin() + x);
        if (o.kind == Overlap::Point) {
          emit_prefix(tx, o.i, fin);
          fin[{tx.a * o.i + tx.b, tx.c * o.i + tx.d}] += tx.coef;
          prog.push_back(subprog(tx, o.i + 1, 1));
          emit_prefix(ty, o.j, fin);
          fin[{ty.a * o.j + ty.b, ty.c * o.j + ty.d}] += ty.coef;
          prog.push_back(subprog(ty, o.j + 1, 1));
        } else {
          emit_prefix(tx, o.i, fin);
          for (long r = 1; r < o.istep; ++r) prog.push_back(subprog(tx, o.i + r, o.istep));
          prog.push_back(subprog(tx, o.i, o.istep));  // the shared support
          emit_prefix(ty, o.j, fin);
          for (long r = 1; r < o.jstep; ++r) prog.push_back(subprog(ty, o.j + r, o.jstep));
          prog.push_back(subprog(ty, o.j, o.jstep));
        }
        changed = true;
      }
    if (changed) continue;

    // progression-finite overlaps
    for (size_t x = 0; x < prog.size() && !changed; ++x)
      for (auto& [pq, coef] : fin) {
        if (coef == 0) continue;
        long i = pterm_param(prog[x], pq.first, pq.second);
        if (i < 0) continue;
        PTerm t = prog[x];
        prog.erase(prog.begin() + x);
        emit_prefix(t, i, fin);
        fin[{t.a * i + t.b, t.c * i + t.d}] += t.coef;
        prog.push_back(subprog(t, i + 1, 1));
        changed = true;
        break;
      }
    if (changed) continue;

    // cosmetic compaction (supports already disjoint, so these preserve
    // disjointness): absorb a finite entry extending a progression backwards,
    // and merge two interleaved residue progressions into a coarser one
    for (auto& t : prog) {
      auto it = fin.find({t.b - t.a, t.d - t.c});
      if (t.b - t.a >= 0 && t.d - t.c >= 0 && it != fin.end() && it->second == t.coef) {
        t.b -= t.a;
        t.d -= t.c;
        fin.erase(it);
        changed = true;
        break;
      }
    }
    if (changed) continue;
    for (size_t x = 0; x < prog.size() && !changed; ++x)
      for (size_t y = 0; y < prog.size() && !changed; ++y) {
        if (x == y) continue;
        PTerm &s = prog[x], &t = prog[y];
        if (s.coef != t.coef || s.a != t.a || s.c != t.c) continue;
        if (s.a % 2 != 0 || s.c % 2 != 0) continue;
        if (t.b != s.b + s.a / 2 || t.d != s.d + s.c / 2) continue;
        s.a /= 2;
        s.c /= 2;
        prog.erase(prog.begin() + y);
        changed = true;
      }
    if (!changed) break;
  }

  for (auto& [pq, coef] : fin) {
    if (coef == 0) continue;
    Term t;
    t.coef = coef;
    t.finite = true;
    t.p = pq.first;
    t.q = pq.second;
    terms_.push_back(t);
  }
  std::sort(prog.begin(), prog.end(), [](const PTerm& x, const PTerm& y) {
    return std::tie(x.a, x.b, x.c, x.d) < std::tie(y.a, y.b, y.c, y.d);
  });
  for (auto& t : prog) {
    Term u;
    u.coef = t.coef;
    u.finite = false;
    u.a = t.a;
    u.b = t.b;
    u.c = t.c;
    u.d = t.d;
    terms_.push_back(u);
  }
}

// ---------------------------------------------------------------------------
// arithmetic

ProgressionMatrix ProgressionMatrix::operator+(const ProgressionMatrix& o) const {
  ProgressionMatrix r;
  r.terms_ = terms_;
  r.terms_.insert(r.terms_.end(), o.terms_.begin(), o.terms_.end());
  r.normalize();
  return r;
}

ProgressionMatrix ProgressionMatrix::operator-() const {
  ProgressionMatrix r = *this;
  for (auto& t : r.terms_) t.coef = -t.coef;
  return r;
}

ProgressionMatrix ProgressionMatrix::operator-(const ProgressionMatrix& o) const {
  return *this + (-o);
}

ProgressionMatrix operator*(const Int& c, const ProgressionMatrix& x) {
  ProgressionMatrix r = x;
  for (auto& t : r.terms_) t.coef *= c;
  r.normalize();
  return r;
}

ProgressionMatrix ProgressionMatrix::operator*(const ProgressionMatrix& o) const {
  ProgressionMatrix r;
  for (auto& s : terms_)
    for (auto& t : o.terms_) {
      Int coef = s.coef * t.coef;
      Term u;
      u.coef = coef;
      if (s.finite && t.finite) {
        if (s.q != t.p) continue;
        u.finite = true;
        u.p = s.p;
        u.q = t.q;
      } else if (s.finite && !t.finite) {
        // e_{p,q} * sum e_{a i + b, c i + d}: need a i + b = q
        if (s.q < t.b || (s.q - t.b) % t.a != 0) continue;
        long i = (s.q - t.b) / t.a;
        u.finite = true;
        u.p = s.p;
        u.q = t.c * i + t.d;
      } else if (!s.finite && t.finite) {
        if (t.p < s.d || (t.p - s.d) % s.c != 0) continue;
        long i = (t.p - s.d) / s.c;
        u.finite = true;
        u.p = s.a * i + s.b;
        u.q = t.q;
      } else {
        // sum_i e_{a i+b, c i+d} * sum_j e_{a' j+b', c' j+d'}: c i + d = a' j + b'
        DioFamily f = dio_solve(s.c, t.a, t.b - s.d);
        if (!f.any) continue;
        long umin = std::max(ceildiv(-f.i0, f.istep), ceildiv(-f.j0, f.jstep));
        long i1 = f.i0 + f.istep * umin, j1 = f.j0 + f.jstep * umin;
        u.finite = false;
        u.a = s.a * f.istep;
        u.b = s.a * i1 + s.b;
        u.c = t.c * f.jstep;
        u.d = t.c * j1 + t.d;
      }
      r.terms_.push_back(u);
    }
  r.normalize();
  return r;
}

ProgressionMatrix ProgressionMatrix::transpose() const {
  ProgressionMatrix r;
  for (auto& t : terms_) {
    Term u = t;
    if (t.finite) {
      u.p = t.q;
      u.q = t.p;
    } else {
      u.a = t.c;
      u.b = t.d;
      u.c = t.a;
      u.d = t.b;
    }
    r.terms_.push_back(u);
  }
  r.normalize();
  return r;
}

Int ProgressionMatrix::entry_at(long r, long s) const {
  Int v = 0;
  for (auto& t : terms_) {
    if (t.finite) {
      if (t.p == r && t.q == s) v += t.coef;
    } else {
      PTerm pt{t.coef, t.a, t.b, t.c, t.d};
      if (pterm_param(pt, r, s) >= 0) v += t.coef;
    }
  }
  return v;
}

bool ProgressionMatrix::is_finite() const {
  for (auto& t : terms_)
    if (!t.finite) return false;
  return true;
}

namespace {
std::string linform(long a, long b) {  // "a i + b" simplified
  std::ostringstream os;
  if (a == 1)
    os << "i";
  else
    os << a << "i";
  if (b != 0) os << "+" << b;
  return os.str();
}
}  // namespace

std::string ProgressionMatrix::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& t : terms_) {
    Int coef = t.coef;
    if (!first) {
      os << (coef < 0 ? " - " : " + ");
      if (coef < 0) coef = -coef;
    } else if (coef < 0) {
      os << "-";
      coef = -coef;
    }
    first = false;
    if (coef != 1) os << coef << "*";
    if (t.finite)
      os << "e(" << t.p << "," << t.q << ")";
    else
      os << "S e(" << linform(t.a, t.b) << "," << linform(t.c, t.d) << ")";
  }
  return os.str();
}

nlohmann::json ProgressionMatrix::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (auto& t : terms_) {
    nlohmann::json j;
    j["coef"] = t.coef.get_str();
    if (t.finite)
      j["e"] = {t.p, t.q};
    else
      j["prog"] = {t.a, t.b, t.c, t.d};
    terms.push_back(j);
  }
  return nlohmann::json{{"terms", terms}};
}

ProgressionMatrix ProgressionMatrix::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
    throw Error("E_SCHEMA", "progression matrix wants {terms:[...]}");
  ProgressionMatrix m;
  for (auto& t : j["terms"]) {
    Int coef(t.at("coef").get<std::string>());
    if (t.contains("e")) {
      if (t["e"].size() != 2) throw Error("E_SCHEMA", "finite term wants [p,q]");
      m = m + entry(t["e"][0].get<long>(), t["e"][1].get<long>(), coef);
    } else if (t.contains("prog")) {
      if (t["prog"].size() != 4) throw Error("E_SCHEMA", "progression term wants [a,b,c,d]");
      m = m + progression(t["prog"][0].get<long>(), t["prog"][1].get<long>(),
                          t["prog"][2].get<long>(), t["prog"][3].get<long>(), 0, coef);
    } else {
      throw Error("E_SCHEMA", "term wants e or prog");
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// oracles

OracleMatrix oracle_of(const ProgressionMatrix& x) {
  auto m = std::make_shared<ProgressionMatrix>(x);
  OracleMatrix o;
  o.entry = [m](long r, long s) { return m->entry_at(r, s); };
  o.row_support = [m](long r) {
    std::set<long> cols;
    for (auto& t : m->terms()) {
      if (t.finite) {
        if (t.p == r) cols.insert(t.q);
      } else if (r >= t.b && (r - t.b) % t.a == 0) {
        cols.insert(t.c * ((r - t.b) / t.a) + t.d);
      }
    }
    return std::vector<long>(cols.begin(), cols.end());
  };
  o.col_support = [m](long s) {
    std::set<long> rows;
    for (auto& t : m->terms()) {
      if (t.finite) {
        if (t.q == s) rows.insert(t.p);
      } else if (s >= t.d && (s - t.d) % t.c == 0) {
        rows.insert(t.a * ((s - t.d) / t.c) + t.b);
      }
    }
    return std::vector<long>(rows.begin(), rows.end());
  };
  long n = static_cast<long>(x.term_count());
  o.value_bound = n + 1;
  o.row_nonzero_bound = n;
  o.col_nonzero_bound = n;
  return o;
}

OracleMatrix zero_oracle() { return oracle_of(ProgressionMatrix::zero()); }
OracleMatrix identity_oracle() { return oracle_of(ProgressionMatrix::identity()); }

OracleMatrix oracle_sum(const OracleMatrix& x, const OracleMatrix& y) {
  OracleMatrix o;
  o.entry = [x, y](long r, long s) { return x.entry(r, s) + y.entry(r, s); };
  o.row_support = [x, y](long r) {
    std::set<long> cols;
    for (long c : x.row_support(r)) cols.insert(c);
    for (long c : y.row_support(r)) cols.insert(c);
    std::vector<long> out;
    for (long c : cols)
      if (x.entry(r, c) + y.entry(r, c) != 0) out.push_back(c);
    return out;
  };
  o.col_support = [x, y](long s) {
    std::set<long> rows;
    for (long r : x.col_support(s)) rows.insert(r);
    for (long r : y.col_support(s)) rows.insert(r);
    std::vector<long> out;
    for (long r : rows)
      if (x.entry(r, s) + y.entry(r, s) != 0) out.push_back(r);
    return out;
  };
  o.value_bound = x.value_bound * y.value_bound + x.value_bound + y.value_bound;
  o.row_nonzero_bound = x.row_nonzero_bound + y.row_nonzero_bound;
  o.col_nonzero_bound = x.col_nonzero_bound + y.col_nonzero_bound;
  return o;
}

OracleMatrix oracle_product(const OracleMatrix& x, const OracleMatrix& y) {
  OracleMatrix o;
  o.entry = [x, y](long r, long s) {
    Int v = 0;
    for (long m : x.row_support(r)) v += x.entry(r, m) * y.entry(m, s);
    return v;
  };
  o.row_support = [x, y](long r) {
    std::set<long> cols;
    for (long m : x.row_support(r))
      for (long c : y.row_support(m)) cols.insert(c);
    std::vector<long> out;
    for (long c : cols) {
      Int v = 0;
      for (long m : x.row_support(r)) v += x.entry(r, m) * y.entry(m, c);
      if (v != 0) out.push_back(c);
    }
    return out;
  };
  o.col_support = [x, y](long s) {
    std::set<long> rows;
    for (long m : y.col_support(s))
      for (long r : x.col_support(m)) rows.insert(r);
    std::vector<long> out;
    for (long r : rows) {
      Int v = 0;
      for (long m : x.row_support(r)) v += x.entry(r, m) * y.entry(m, s);
      if (v != 0) out.push_back(r);
    }
    return out;
  };
  o.value_bound = x.value_bound * y.value_bound * std::max(x.row_nonzero_bound, 1L) + 1;
  o.row_nonzero_bound = x.row_nonzero_bound * y.row_nonzero_bound;
  o.col_nonzero_bound = x.col_nonzero_bound * y.col_nonzero_bound;
  return o;
}

// ---------------------------------------------------------------------------
// sum-ring structure

SumRing sum_ring_data() {
  SumRing s;
  s.alpha1 = ProgressionMatrix::progression(1, 0, 2, 0);  // sum e_{i,2i}
  s.beta1 = ProgressionMatrix::progression(2, 0, 1, 0);   // sum e_{2i,i}
  s.alpha2 = ProgressionMatrix::progression(1, 0, 2, 1);  // sum e_{i,2i+1}
  s.beta2 = ProgressionMatrix::progression(2, 1, 1, 0);   // sum e_{2i+1,i}
  return s;
}

RelationReport sum_ring_relations(const SumRing& s) {
  RelationReport rep;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) {
      rep.ok = false;
      rep.failures.push_back(what);
    }
  };
  ProgressionMatrix one = ProgressionMatrix::identity();
  ProgressionMatrix nil = ProgressionMatrix::zero();
  need(s.alpha1 * s.beta1 == one, "alpha1 beta1 != 1");
  need(s.alpha2 * s.beta2 == one, "alpha2 beta2 != 1");
  need(s.beta1 * s.alpha1 + s.beta2 * s.alpha2 == one, "beta1 alpha1 + beta2 alpha2 != 1");
  need(s.alpha2 * s.beta1 == nil, "alpha2 beta1 != 0");
  need(s.alpha1 * s.beta2 == nil, "alpha1 beta2 != 0");
  for (int i = 0; i <= 4; ++i)
    for (int j = 0; j <= 4; ++j) {
      ProgressionMatrix w = s.alpha1;
      for (int k = 0; k < i; ++k) w = w * s.alpha2;
      for (int k = 0; k < j; ++k) w = w * s.beta2;
      w = w * s.beta1;
      ProgressionMatrix expect = i == j ? one : nil;
      if (w != expect) {
        rep.ok = false;
        std::ostringstream os;
        os << "alpha1 alpha2^" << i << " beta2^" << j << " beta1 != delta";
        rep.failures.push_back(os.str());
      }
    }
  return rep;
}

ProgressionMatrix oplus(const ProgressionMatrix& x, const ProgressionMatrix& y) {
  SumRing s = sum_ring_data();
  return s.beta1 * x * s.alpha1 + s.beta2 * y * s.alpha2;
}

OracleMatrix oplus_oracle(const OracleMatrix& x, const OracleMatrix& y) {
  // beta1 a alpha1 + beta2 b alpha2 puts a at even indices, b at odd ones
  OracleMatrix o;
  o.entry = [x, y](long r, long s) -> Int {
    if (r % 2 == 0 && s % 2 == 0) return x.entry(r / 2, s / 2);
    if (r % 2 == 1 && s % 2 == 1) return y.entry((r - 1) / 2, (s - 1) / 2);
    return 0;
  };
  o.row_support = [x, y](long r) {
    std::vector<long> out;
    if (r % 2 == 0)
      for (long c : x.row_support(r / 2)) out.push_back(2 * c);
    else
      for (long c : y.row_support((r - 1) / 2)) out.push_back(2 * c + 1);
    return out;
  };
  o.col_support = [x, y](long s) {
    std::vector<long> out;
    if (s % 2 == 0)
      for (long r : x.col_support(s / 2)) out.push_back(2 * r);
    else
      for (long r : y.col_support((s - 1) / 2)) out.push_back(2 * r + 1);
    return out;
  };
  o.value_bound = x.value_bound + y.value_bound;
  o.row_nonzero_bound = std::max(x.row_nonzero_bound, y.row_nonzero_bound);
  o.col_nonzero_bound = std::max(x.col_nonzero_bound, y.col_nonzero_bound);
  return o;
}

ProgressionMatrix oplus_reindexer() {
  // maps the ((x+y)+z) layout 4N, 4N+2, 2N+1 to the (x+(y+z)) layout
  // 2N, 4N+1, 4N+3
  return ProgressionMatrix::progression(2, 0, 4, 0) +
         ProgressionMatrix::progression(4, 1, 4, 2) +
         ProgressionMatrix::progression(4, 3, 2, 1);
}

// ---------------------------------------------------------------------------
// phi^infty

namespace {
// r = 2^{k+1} i + 2^k - 1  <=>  r+1 = 2^k (2i+1); always decodable
void phi_decode(long r, long& k, long& i) {
  long v = r + 1;
  k = 0;
  while (v % 2 == 0) {
    v /= 2;
    ++k;
  }
  i = (v - 1) / 2;
}
long phi_encode(long k, long i) { return ((2 * i + 1) << k) - 1; }
}  // namespace

OracleMatrix phi_infinity(const OracleMatrix& x) {
  OracleMatrix o;
  o.entry = [x](long r, long s) -> Int {
    long k, i, k2, j;
    phi_decode(r, k, i);
    phi_decode(s, k2, j);
    if (k != k2) return 0;
    return x.entry(i, j);
  };
  o.row_support = [x](long r) {
    long k, i;
    phi_decode(r, k, i);
    std::vector<long> out;
    for (long j : x.row_support(i)) out.push_back(phi_encode(k, j));
    std::sort(out.begin(), out.end());
    return out;
  };
  o.col_support = [x](long s) {
    long k, j;
    phi_decode(s, k, j);
    std::vector<long> out;
    for (long i : x.col_support(j)) out.push_back(phi_encode(k, i));
    std::sort(out.begin(), out.end());
    return out;
  };
  o.value_bound = x.value_bound;
  o.row_nonzero_bound = x.row_nonzero_bound;
  o.col_nonzero_bound = x.col_nonzero_bound;
  return o;
}

OracleMatrix phi_infinity(const ProgressionMatrix& x) { return phi_infinity(oracle_of(x)); }

ProgressionMatrix psi_vw(const ProgressionMatrix& V, const ProgressionMatrix& W,
                         const ProgressionMatrix& x) {
  if (V * W != ProgressionMatrix::identity())
    throw Error("E_PRECONDITION", "psi needs V W = 1");
  return W * x * V;
}

ProgressionMatrix ahat() { return ProgressionMatrix::progression(1, 0, 1, 1); }
ProgressionMatrix bhat() { return ProgressionMatrix::progression(1, 1, 1, 0); }

std::pair<ProgressionMatrix, ProgressionMatrix> m_infinity_split(const ProgressionMatrix& x) {
  ProgressionMatrix fin, rest;
  for (auto& t : x.terms()) {
    ProgressionMatrix piece;
    if (t.finite)
      piece = ProgressionMatrix::entry(t.p, t.q, t.coef);
    else
      piece = ProgressionMatrix::progression(t.a, t.b, t.c, t.d, 0, t.coef);
    if (t.finite)
      fin = fin + piece;
    else
      rest = rest + piece;
  }
  return {fin, rest};
}

// ---------------------------------------------------------------------------
// windows

ZWindow window_serial(const OracleMatrix& x, long N) {
  if (N < 0) throw Error("E_RANGE", "window size must be >= 0");
  ZWindow w(static_cast<size_t>(N), std::vector<Int>(static_cast<size_t>(N), 0));
  for (long r = 0; r < N; ++r)
    for (long s = 0; s < N; ++s) w[r][s] = x.entry(r, s);
  return w;
}

ZWindow window_parallel(const OracleMatrix& x, long N) {
  if (N < 0) throw Error("E_RANGE", "window size must be >= 0");
  ZWindow w(static_cast<size_t>(N), std::vector<Int>(static_cast<size_t>(N), 0));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
  for (long r = 0; r < N; ++r)
    for (long s = 0; s < N; ++s) w[r][s] = x.entry(r, s);
  return w;
}

ZWindow window(const OracleMatrix& x, long N) {
#ifdef _OPENMP
  return window_parallel(x, N);
#else
  return window_serial(x, N);
#endif
}

ZWindow window(const ProgressionMatrix& x, long N) { return window(oracle_of(x), N); }

std::string window_csv(const ZWindow& w) {
  std::ostringstream os;
  for (auto& row : w) {
    for (size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
    os << "\n";
  }
  return os.str();
}

WindowVerdict window_product_check(const OracleMatrix& x, const OracleMatrix& y, long N) {
  WindowVerdict v;
  // rows whose x-support stays inside [0,N) multiply without truncation
  long safe = 0;
  while (safe < N) {
    auto sup = x.row_support(safe);
    if (!sup.empty() && sup.back() >= N) break;
    ++safe;
  }
  v.safe = safe;
  v.sufficient = safe > 0;
  if (!v.sufficient) {
    v.witness = "no safe subwindow: row supports escape the window";
    return v;
  }
  ZWindow wx = window(x, N), wy = window(y, N), wxy = window(oracle_product(x, y), N);
  v.ok = true;
  for (long r = 0; r < safe && v.ok; ++r)
    for (long s = 0; s < safe && v.ok; ++s) {
      Int acc = 0;
      for (long m = 0; m < N; ++m) acc += wx[r][m] * wy[m][s];
      if (acc != wxy[r][s]) {
        v.ok = false;
        std::ostringstream os;
        os << "mismatch at (" << r << "," << s << "): truncated " << acc << " vs exact "
           << wxy[r][s];
        v.witness = os.str();
      }
    }
  return v;
}

WindowVerdict window_product_check(const ProgressionMatrix& x, const ProgressionMatrix& y,
                                   long N) {
  return window_product_check(oracle_of(x), oracle_of(y), N);
}

RelationReport gamma_conditions_check(const ProgressionMatrix& x, long N) {
  RelationReport rep;
  long n = static_cast<long>(x.term_count());
  ZWindow w = window(x, N);
  std::set<Int> values;
  for (long r = 0; r < N; ++r)
    for (long s = 0; s < N; ++s)
      if (w[r][s] != 0) values.insert(w[r][s]);
  if (static_cast<long>(values.size()) > n) {
    rep.ok = false;
    rep.failures.push_back("value set larger than term count");
  }
  for (long r = 0; r < N; ++r) {
    long cnt = 0;
    for (long s = 0; s < N; ++s)
      if (w[r][s] != 0) ++cnt;
    if (cnt > n) {
      rep.ok = false;
      rep.failures.push_back("row " + std::to_string(r) + " has too many nonzeros");
      break;
    }
  }
  for (long s = 0; s < N; ++s) {
    long cnt = 0;
    for (long r = 0; r < N; ++r)
      if (w[r][s] != 0) ++cnt;
    if (cnt > n) {
      rep.ok = false;
      rep.failures.push_back("column " + std::to_string(s) + " has too many nonzeros");
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Wodzicki blowup

WodzickiReport wodzicki_blowup(long N) {
  if (N < 1) throw Error("E_RANGE", "window must be >= 1");
  WodzickiReport rep;
  // extend the computation window so every block meeting [0,N) lies inside
  long M = 0, t = 0;
  while (M < N) {
    ++t;
    M += t;
  }
  ZWindow A(static_cast<size_t>(M), std::vector<Int>(static_cast<size_t>(M), 0));
  long start = 0, size = 1;
  while (start < M) {
    for (long r = start; r < start + size && r < M; ++r)
      for (long s = start; s < start + size && s < M; ++s) A[r][s] = 1;
    start += size;
    ++size;
  }
  for (long r = 0; r < N; ++r)
    for (long s = 0; s < N; ++s) {
      Int acc = 0;
      for (long m = 0; m < M; ++m) acc += A[r][m] * A[m][s];
      if (acc < 0) acc = -acc;
      if (acc > rep.max_entry) rep.max_entry = acc.get_si();
    }
  long u = 1;
  while (u * (u + 1) / 2 < N) ++u;  // first u with T_u >= N
  rep.predicted = (u - 1) * u / 2 < N ? u : u - 1;  // largest t with T_{t-1} < N
  rep.match = rep.max_entry == rep.predicted;
  return rep;
}

// ---------------------------------------------------------------------------
// Wagoner's Q

namespace {
using Mat3 = std::array<std::array<ProgressionMatrix, 3>, 3>;

Mat3 mat3_mul(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      ProgressionMatrix acc;
      for (int k = 0; k < 3; ++k) acc = acc + x[i][k] * y[k][j];
      r[i][j] = acc;
    }
  return r;
}

bool mat3_eq(const Mat3& x, const Mat3& y, std::string* witness) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!(x[i][j] == y[i][j])) {
        if (witness) {
          std::ostringstream os;
          os << "entry (" << i << "," << j << "): " << x[i][j].str() << " vs " << y[i][j].str();
          *witness = os.str();
        }
        return false;
      }
  return true;
}

ProgressionMatrix random_progression(Rng& rng) {
  ProgressionMatrix x;
  int nterms = static_cast<int>(rng.range(1, 4));
  for (int t = 0; t < nterms; ++t) {
    Int coef = Int(rng.range(1, 4)) * (rng.range(0, 1) ? 1 : -1);
    if (rng.range(0, 1))
      x = x + ProgressionMatrix::entry(rng.range(0, 6), rng.range(0, 6), coef);
    else
      x = x + ProgressionMatrix::progression(rng.range(1, 4), rng.range(0, 4), rng.range(1, 4),
                                             rng.range(0, 4), 0, coef);
  }
  return x;
}
}  // namespace

WagonerReport wagoner_Q_check(uint64_t seed) {
  WagonerReport rep;
  SumRing s = sum_ring_data();
  ProgressionMatrix O = ProgressionMatrix::zero();
  ProgressionMatrix I = ProgressionMatrix::identity();
  rep.Q = Mat3{{{s.alpha1, O, O}, {s.alpha2, O, O}, {O, s.beta1, s.beta2}}};
  rep.Qinv = Mat3{{{s.beta1, s.beta2, O}, {O, O, s.alpha1}, {O, O, s.alpha2}}};
  Mat3 id3{{{I, O, O}, {O, I, O}, {O, O, I}}};

  std::string w;
  if (!mat3_eq(mat3_mul(rep.Q, rep.Qinv), id3, &w)) {
    rep.ok = false;
    rep.failures.push_back("Q Q^-1 != 1: " + w);
  }
  if (!mat3_eq(mat3_mul(rep.Qinv, rep.Q), id3, &w)) {
    rep.ok = false;
    rep.failures.push_back("Q^-1 Q != 1: " + w);
  }

  auto conjugation = [&](const ProgressionMatrix& a, const ProgressionMatrix& b,
                         const std::string& label) {
    Mat3 mid{{{oplus(a, b), O, O}, {O, O, O}, {O, O, O}}};
    Mat3 lhs = mat3_mul(mat3_mul(rep.Q, mid), rep.Qinv);
    Mat3 rhs{{{a, O, O}, {O, b, O}, {O, O, O}}};
    std::string ww;
    if (!mat3_eq(lhs, rhs, &ww)) {
      rep.ok = false;
      rep.failures.push_back("conjugation fails for " + label + ": " + ww);
    }
  };
  std::vector<std::pair<std::string, ProgressionMatrix>> gens = {
      {"0", O}, {"ahat", ahat()}, {"bhat", bhat()}, {"e00", ProgressionMatrix::entry(0, 0)}};
  for (auto& [la, a] : gens)
    for (auto& [lb, b] : gens) conjugation(a, b, la + "," + lb);
  Rng rng(seed);
  for (int t = 0; t < 4; ++t)
    conjugation(random_progression(rng), random_progression(rng), "random#" + std::to_string(t));

  // windowed spot check of one instance, cross-validating window extraction
  {
    ProgressionMatrix a = ahat(), b = bhat();
    Mat3 mid{{{oplus(a, b), O, O}, {O, O, O}, {O, O, O}}};
    Mat3 lhs = mat3_mul(mat3_mul(rep.Q, mid), rep.Qinv);
    Mat3 rhs{{{a, O, O}, {O, b, O}, {O, O, O}}};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (window(lhs[i][j], 64) != window(rhs[i][j], 64)) {
          rep.ok = false;
          rep.failures.push_back("windowed conjugation mismatch at block (" +
                                 std::to_string(i) + "," + std::to_string(j) + ")");
        }
  }
  return rep;
}

}  // namespace kklab::gamma

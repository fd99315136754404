#pragma once
// Elementary homotopies and subdivided paths with the last-vertex refinement
// calculus; the eta_{k,l} pasting family on a subdivided interval; truncated
// tensor algebras, classifying maps of additively split extensions and the
// loop extension; mapping path algebras and fiber products; the q/Q
// idempotent calculus with a witness-based K_0 pairing; graded homotopies;
// amalgamated-product maps.
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kklab/hnf.hpp"
#include "kklab/power.hpp"
#include "kklab/rings.hpp"

namespace kklab::homotopy {

using ring::AlgebraPresentation;
using ring::HomVerdict;
using ring::IntPolynomial;
using ring::ZMat;
using ring::ZVec;

// ---------------------------------------------------------------------------
// elementary homotopies: a hom A -> B[t] connecting ev_0 h and ev_1 h.
// Variable 1 is the homotopy parameter t; variables 2.. are the target
// ring's variables, shifted up by one.

IntPolynomial shift_vars(const IntPolynomial& p, int by);
std::vector<IntPolynomial> shift_vars(const std::vector<IntPolynomial>& v, int by);
// substitute t := v and shift the target variables back down
IntPolynomial eval_t1(const IntPolynomial& p, const Int& v);
std::vector<IntPolynomial> eval_t1(const std::vector<IntPolynomial>& v, const Int& x);

struct ElementaryHomotopy {
  AlgebraPresentation source;
  std::vector<IntPolynomial> images;  // per generator, in Z[t, target vars]
};

ElementaryHomotopy constant_homotopy(const AlgebraPresentation& pres,
                                     const std::vector<IntPolynomial>& f);

struct ElementaryVerdict {
  bool ok = true;
  std::string witness;  // failing relation or endpoint generator
};

// h is a hom killing the source relations, ev_0 h = f, ev_1 h = g
ElementaryVerdict check_elementary(const ElementaryHomotopy& h,
                                   const std::vector<IntPolynomial>& f,
                                   const std::vector<IntPolynomial>& g);

// ---------------------------------------------------------------------------
// subdivided paths: 2^level polynomial pieces in walk coordinates along the
// edges of sd^level Delta^1 (piece j runs from walk vertex j to j+1; the
// zigzag orientation of the underlying edges is recovered from the complex)

struct SubdividedPath {
  AlgebraPresentation source;
  int level = 0;
  // pieces[j][g]: image of generator g on walk edge j; var 1 = walk
  // coordinate, vars 2.. = target ring variables
  std::vector<std::vector<IntPolynomial>> pieces;
};

SubdividedPath path_of(const ElementaryHomotopy& h);
SubdividedPath constant_path(const AlgebraPresentation& pres,
                             const std::vector<IntPolynomial>& f, int level = 0);
std::vector<IntPolynomial> path_start(const SubdividedPath& p);
std::vector<IntPolynomial> path_end(const SubdividedPath& p);
SubdividedPath reverse_path(const SubdividedPath& p);
// one last-vertex refinement: an even (forward) piece becomes [h, h(1)],
// an odd (reversed) piece becomes [h(0), h]
SubdividedPath refine_path(const SubdividedPath& p);
SubdividedPath refine_to(const SubdividedPath& p, int level);
bool path_equal(const SubdividedPath& p, const SubdividedPath& q);  // at common level

struct PathVerdict {
  bool ok = true;
  std::string witness;
};
// adjacent pieces agree at shared vertices; every piece kills the relations
PathVerdict validate_path(const SubdividedPath& p);
// endpoint of p must equal start of q; result lives at sd^{max+1}
SubdividedPath concat(const SubdividedPath& p, const SubdividedPath& q);

struct PowerHomResult {
  bool ok = true;
  bool lattice_checked = false;  // basis membership runs for integer targets only
  std::string witness;
  // one element of B^{sd^level Delta^1} per generator
  std::vector<power::PowerElement> components;
};
// re-express the path on the actual complex sd^level Delta^1 and validate:
// face-compatibility per generator (for integer targets additionally lattice
// membership in the computed basis of Z^{sd^level Delta^1}), relations killed
PowerHomResult as_power_hom(const SubdividedPath& p);

// ---------------------------------------------------------------------------
// the eta_{k,l} family on the n-piece subdivided interval: for each target
// square (k,l) the active summand max(k,l) is substituted by
//   t_1 (l < k),  t_2 (k < l),  D(t_1,t_2) (k = l),
// with printed diagonal D = 1 - t_1 - t_2 + t_1 t_2 and repaired diagonal
// D = t_1 + t_2 - t_1 t_2 (the unique interpolant compatible with the
// off-diagonal cases; the printed one is its reflection and fails pasting
// for n >= 2).  Pasting is checked by exhaustive grid-vertex evaluation
// plus symbolic agreement of shared-edge restrictions.

struct EtaReport {
  int n = 0;
  std::vector<std::vector<IntPolynomial>> printed;   // [k-1][l-1] image of s
  std::vector<std::vector<IntPolynomial>> repaired;
  bool printed_vertex_ok = true;
  bool printed_edge_ok = true;
  bool repaired_vertex_ok = true;
  bool repaired_edge_ok = true;
  bool hom_ok = true;  // substitution maps are homs; spot-checked on samples
  std::vector<std::string> printed_failures;
  std::vector<std::string> constants;  // solved inactive-summand constants
  std::vector<std::string> notes;      // endpoint reductions etc.
};
EtaReport eta_transformation(int n);  // 1 <= n <= 3

// ---------------------------------------------------------------------------
// finitely generated free abelian rings given by structure constants

struct MulTable {
  int rank = 0;
  std::vector<std::string> names;            // basis element names
  std::vector<std::vector<ZVec>> c;          // c[i][j] = coords of x_i x_j
  bool associative(std::string* why = nullptr) const;
  ZVec mul(const ZVec& a, const ZVec& b) const;
  std::string str(const ZVec& a) const;
};
MulTable table_z();                 // rank 1, x^2 = x
MulTable table_z2();                // Z x Z, orthogonal idempotents e, f
MulTable table_dual();              // Z[eps]/(eps^2): basis 1, eps
MulTable table_square_zero(int r);  // rank r, all products zero

// polynomials with coefficients in a table ring (variable t)
struct TablePoly {
  const MulTable* table = nullptr;
  std::vector<IntPolynomial> coef;  // per basis element, in Z[t]

  static TablePoly zero(const MulTable& T);
  static TablePoly of(const MulTable& T, const ZVec& a, const IntPolynomial& p);
  bool is_zero() const;
  TablePoly operator+(const TablePoly& o) const;
  TablePoly operator-(const TablePoly& o) const;
  TablePoly operator*(const TablePoly& o) const;
  bool operator==(const TablePoly& o) const;
  TablePoly eval_t(const Int& v) const;  // substitute t := v (constants stay)
  std::string str() const;
};

// ---------------------------------------------------------------------------
// truncated tensor algebra T(A) = sum of A^{(x) n}, n <= d, counit eta_A and
// the ideal slice J(A) = ker eta_A

using TensorWord = std::vector<int>;             // basis indices, length = degree
using TensorElem = std::map<TensorWord, Int>;    // finite integer combination

class TruncatedTensorAlgebra {
public:
  TruncatedTensorAlgebra(MulTable A, int d);

  const MulTable& base() const { return table_; }
  int degree_bound() const { return d_; }
  const std::vector<TensorWord>& words() const { return words_; }  // all, degree-ascending
  long dim() const { return static_cast<long>(words_.size()); }
  long dim_of_degree(int n) const;

  ZVec eta_of(const TensorElem& x) const;  // multiply out each word, sum
  // kernel of eta on the truncation, canonical HNF rows over the word basis
  const ZMat& j_basis_rows() const { return jrows_; }
  long j_rank() const { return static_cast<long>(jrows_.size()); }
  TensorElem from_row(const ZVec& row) const;
  ZVec to_row(const TensorElem& x) const;
  bool j_member(const TensorElem& x) const;

  std::string str(const TensorElem& x) const;

private:
  MulTable table_;
  int d_;
  std::vector<TensorWord> words_;
  std::map<TensorWord, size_t> index_;
  ZMat jrows_;
};

// ---------------------------------------------------------------------------
// classifying maps: extend an additive section multiplicatively over the
// word basis and restrict to J(C).  The target ring is any exact value type
// with +, -, *, ==; scalar action is by repeated addition.

template <class R>
R scalar_mul(Int k, const R& x, const R& zero) {
  R acc = zero, base = x;
  bool neg = k < 0;
  if (neg) k = -k;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) acc = acc + base;
    base = base + base;
    k >>= 1;
  }
  return neg ? zero - acc : acc;
}

template <class R>
struct ClassifyingMap {
  const TruncatedTensorAlgebra* T = nullptr;
  std::vector<R> section;  // images of the basis of C
  R zero;

  R word_image(const TensorWord& w) const {
    R acc = zero;
    bool first = true;
    for (int i : w) {
      const R& s = section[static_cast<size_t>(i)];
      acc = first ? s : acc * s;
      first = false;
    }
    return acc;
  }
  R image_of(const TensorElem& x) const {
    R acc = zero;
    for (auto& [w, k] : x) acc = acc + scalar_mul<R>(k, word_image(w), zero);
    return acc;
  }
};

template <class R>
struct ClassifyingReport {
  bool ok = true;          // every J-basis image passes the kernel predicate
  std::string witness;
  std::vector<TensorElem> jbasis;
  std::vector<R> images;
  ClassifyingMap<R> map;
  // convenience constructors hand out reports whose map points into these
  std::shared_ptr<const MulTable> owned_table;
  std::shared_ptr<const TruncatedTensorAlgebra> owned_algebra;
};

template <class R>
ClassifyingReport<R> classify(const TruncatedTensorAlgebra& T, std::vector<R> section,
                              const R& zero, const std::function<bool(const R&)>& in_A,
                              const std::function<std::string(const R&)>& str) {
  if (section.size() != static_cast<size_t>(T.base().rank))
    throw Error("E_SECTION", "section must cover the basis of C");
  ClassifyingReport<R> rep;
  rep.map = ClassifyingMap<R>{&T, std::move(section), zero};
  for (long i = 0; i < T.j_rank(); ++i) {
    TensorElem x = T.from_row(T.j_basis_rows()[static_cast<size_t>(i)]);
    R img = rep.map.image_of(x);
    if (rep.ok && !in_A(img)) {
      rep.ok = false;
      rep.witness = "image of " + T.str(x) + " escapes the kernel: " + str(img);
    }
    rep.jbasis.push_back(std::move(x));
    rep.images.push_back(std::move(img));
  }
  return rep;
}

// classifying map of the loop extension Omega A -> tA[t] -> A with the
// section a -> t a
ClassifyingReport<TablePoly> loop_rho(const MulTable& A, int d);

// multiplicative section ==> zero classifying map; checked on B = C x C with
// the diagonal section over the given C
struct SplitZeroReport {
  bool all_zero = true;
  std::string witness;
};
SplitZeroReport split_extension_zero_check(const MulTable& C, int d);

// naturality desk check: with f: Z -> B sending the generator to an
// idempotent, the two routes J(Z) -> Omega B (apply f then classify /
// classify then apply f^{S^1}) agree exactly on J(Z)_{<= 3}
struct NaturalityReport {
  bool ok = true;
  std::string witness;
};
NaturalityReport loop_naturality_check(const MulTable& B, const ZVec& idem);

// JSON form: {"rank", "names"?, "table": c[i][j] rows, "degree",
// "section": [[coef lists per basis element]...], "vanish_at": [points]}
ClassifyingReport<TablePoly> classify_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// fiber products and mapping path algebras over polynomial models

struct PolyHom {
  int src_vars = 0, dst_vars = 0;
  std::vector<IntPolynomial> images;  // per source variable
  IntPolynomial apply(const IntPolynomial& p) const;
};
PolyHom poly_id(int vars);

// pairs (b, c) with f(b) = g(c) in D
struct FiberProduct {
  PolyHom f, g;  // f: B -> D, g: C -> D
  bool contains(const IntPolynomial& b, const IntPolynomial& c) const;
};

// P_f = { (p, a) : p in tB[t], deg_t p <= d, p(1) = f(a) }; t is variable 1
// of the path component, B-variables are shifted up by one
struct PathAlgebra {
  PolyHom f;  // A -> B
  int d = 2;
  bool contains(const IntPolynomial& path, const IntPolynomial& a) const;
  IntPolynomial pi(const IntPolynomial& path, const IntPolynomial& a) const;  // = a
  // iota: Omega B -> P_f, omega -> (omega, 0); validates omega(0)=omega(1)=0
  std::pair<IntPolynomial, IntPolynomial> iota(const IntPolynomial& omega) const;
};

// ---------------------------------------------------------------------------
// q/Q idempotent calculus.  Q(Z) = free ring on idempotents u, v; normal
// forms are the nonempty alternating words, encoded (first letter, length).

struct QElem {
  std::map<std::pair<int, int>, Int> c;  // (first in {0,1}, length >= 1) -> coef

  static QElem zero() { return {}; }
  static QElem u() { return word(0, 1); }
  static QElem v() { return word(1, 1); }
  static QElem word(int first, int len);
  QElem operator+(const QElem& o) const;
  QElem operator-(const QElem& o) const;
  QElem operator*(const QElem& o) const;
  bool operator==(const QElem& o) const { return c == o.c; }
  bool is_zero() const { return c.empty(); }
  Int codiagonal() const;  // sum of coefficients (image in Z under u,v -> x)
  std::string str() const;
};

// exhaustive confluence of {uu -> u, vv -> v} on words up to the length bound
struct ConfluenceReport {
  bool confluent = true;
  long words_checked = 0;
  std::string witness;
};
ConfluenceReport qq_confluence_check(int maxlen);

// unitalization element over a table ring: n*1 + a
struct UnitalElem {
  Int unit;
  ZVec a;
};
using UnitalMat = std::vector<std::vector<UnitalElem>>;

UnitalMat umat_zero(const MulTable& T, int n);
UnitalMat umat_mul(const MulTable& T, const UnitalMat& x, const UnitalMat& y);
UnitalMat umat_add(const UnitalMat& x, const UnitalMat& y);
UnitalMat umat_sub(const UnitalMat& x, const UnitalMat& y);
bool umat_eq(const UnitalMat& x, const UnitalMat& y);
std::string umat_str(const MulTable& T, const UnitalMat& x);

struct QQReport {
  bool idempotent_ok = true;
  bool hom_ok = true;           // substitution respects the rewriting products
  bool q_in_ideal = true;       // images of q-generators have zero unit parts
  std::string witness;
  // formal class data
  long rank0 = 0, rank1 = 0;    // ranks of the augmented idempotents
  UnitalMat uvu_image;          // image of the 3-letter word uvu = e0 e1 e0
};
// the hom Q(Z) -> M_n(tilde A) with u -> e0, v -> e1 (throws E_IDEMPOTENT)
QQReport qq_calculus(const MulTable& T, const UnitalMat& e0, const UnitalMat& e1);

struct K0Witness {
  UnitalMat U, Uinv;  // conjugating pair over the unitalization
  int stab_ones = 0;  // 1-blocks appended to e0 before conjugating
  int stab_zeros = 0;
};
// [e0] = [e1] certified by U (e0 + 1_k + 0_m) U^{-1} = e1 + 1_k + 0_m
bool k0_equal(const MulTable& T, const UnitalMat& e0, const UnitalMat& e1,
              const K0Witness& w);

// ---------------------------------------------------------------------------
// graded homotopies h(a_n) = a_n t^n

struct GradedReport {
  bool hom_ok = true;
  bool ev0_is_projection = true;
  bool ev1_is_identity = true;
  std::string witness;
};
// table ring with degrees on basis elements (throws E_INHOMOGENEOUS if the
// structure constants are not degree-additive)
GradedReport graded_homotopy_table(const MulTable& A, const std::vector<int>& degrees);
GradedReport graded_homotopy_polynomial();            // A = Z[x], deg x = 1
GradedReport graded_homotopy_square_zero(int rank);   // A = A_1, square zero

// ---------------------------------------------------------------------------
// amalgamated products over a retracted common subalgebra

struct AmalgamData {
  MulTable A, B, C;
  ZMat incA, incB;  // rows = images of C-basis in A, B
  ZMat retA, retB;  // rows = images of A-, B-basis in C
};
struct AmalgamReport {
  bool preconditions_ok = true;  // inclusions/retractions are homs, ret o inc = 1
  bool theta_ok = true;          // a -> (a, alpha(a)), b -> (beta(b), b) lands in
                                 // the fiber sum and respects products and C
  bool eta_ok = true;            // (a,b) -> diag(a,b) multiplicative on D_2
  bool d2_lands_in_d1 = true;    // alpha(a)=beta(b)=0 ==> zero retraction
  std::string witness;
};
AmalgamReport amalgamated_maps(const AmalgamData& data, uint64_t seed = 5);
AmalgamData amalgam_example();   // A = Z[eps]/(eps^2), B = Z x Z, C = Z
AmalgamData amalgam_identity(const MulTable& C);  // A = B = C, identities

// ---------------------------------------------------------------------------
// orthogonal sums: if f(a) g(b) = g(a) f(b) = 0 on generators then f + g is
// again a homomorphism (checked through the presentation)

template <class R, class StrFn>
ring::HomVerdict orthogonal_sum_check(const AlgebraPresentation& pres,
                                      const std::vector<R>& f, const std::vector<R>& g,
                                      const R& one, StrFn&& str) {
  if (f.size() != g.size() || f.size() != pres.gens.size())
    throw Error("E_GEN_COUNT", "image count mismatch");
  ring::HomVerdict v;
  R zero = one - one;
  for (size_t i = 0; i < f.size(); ++i)
    for (size_t j = 0; j < f.size(); ++j) {
      if (!(f[i] * g[j] == zero) || !(g[i] * f[j] == zero)) {
        v.ok = false;
        v.failing_relation = "orthogonality at generators " + pres.gens[i] + ", " + pres.gens[j];
        v.residual = str(f[i] * g[j] + g[i] * f[j]);
        return v;
      }
    }
  std::vector<R> sum;
  sum.reserve(f.size());
  for (size_t i = 0; i < f.size(); ++i) sum.push_back(f[i] + g[i]);
  return ring::check_hom(pres, sum, one, std::forward<StrFn>(str));
}

}  // namespace kklab::homotopy

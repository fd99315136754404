#include "kklab/power.hpp"

#include <algorithm>
#include <sstream>

namespace kklab::power {

// ---------------------------------------------------------------------------
// PowerElement

static PowerElement zip(const PowerElement& a, const PowerElement& b,
                        IntPolynomial (*op)(const IntPolynomial&, const IntPolynomial&)) {
  if (a.comp.size() != b.comp.size())
    throw Error("E_SHAPE", "power elements over different complexes");
  PowerElement r;
  auto ia = a.comp.begin();
  auto ib = b.comp.begin();
  for (; ia != a.comp.end(); ++ia, ++ib) {
    if (ia->first != ib->first) throw Error("E_SHAPE", "power elements over different complexes");
    r.comp[ia->first] = op(ia->second, ib->second);
  }
  return r;
}

PowerElement PowerElement::operator+(const PowerElement& o) const {
  return zip(*this, o, +[](const IntPolynomial& x, const IntPolynomial& y) { return x + y; });
}
PowerElement PowerElement::operator-(const PowerElement& o) const {
  return zip(*this, o, +[](const IntPolynomial& x, const IntPolynomial& y) { return x - y; });
}
PowerElement PowerElement::operator*(const PowerElement& o) const {
  return zip(*this, o, +[](const IntPolynomial& x, const IntPolynomial& y) { return x * y; });
}
bool PowerElement::is_zero() const {
  for (auto& [id, p] : comp)
    if (!p.is_zero()) return false;
  return true;
}
int PowerElement::max_degree() const {
  int d = -1;
  for (auto& [id, p] : comp) d = std::max(d, p.total_degree());
  return d;
}
std::string PowerElement::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (auto& [id, p] : comp) {
    if (p.is_zero()) continue;
    if (!first) os << ", ";
    first = false;
    os << id << ": " << p.str();
  }
  os << "}";
  return os.str();
}

// ---------------------------------------------------------------------------
// compatibility conditions and the kernel

// pullback of g in Z^{Delta^q} along the degeneracy word w (as a map
// Delta^{q+|w|} -> Delta^q); word stored outermost-first
static IntPolynomial word_pullback(const sset::DegWord& w, int q, const IntPolynomial& g) {
  IntPolynomial cur = g;
  int n = q;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    cur = ring::degen_star(*it, n, cur);
    ++n;
  }
  return cur;
}

PowerBasis::PowerBasis(const sset::FiniteSimplicialSet& K, int degree, bool pointed)
    : degree_(degree), pointed_(pointed) {
  if (degree < 0) throw Error("E_DEGREE", "negative degree bound");
  if (pointed && !K.basepoint()) throw Error("E_BASEPOINT", "pointed power needs a basepoint");
  ids_ = K.all_ids();
  for (auto& id : ids_) dim_[id] = K.dim_of(id);

  // columns: (simplex, monomial deg <= degree), sorted degree-descending so
  // the HNF staircase is degree-adapted
  std::map<std::string, size_t> simp_rank;
  for (size_t k = 0; k < ids_.size(); ++k) simp_rank[ids_[k]] = k;
  for (auto& id : ids_)
    for (auto& m : ring::monomials_upto(dim_.at(id), degree))
      cols_.push_back(Col{id, m, ring::total_deg(m)});
  std::stable_sort(cols_.begin(), cols_.end(), [&](const Col& a, const Col& b) {
    if (a.deg != b.deg) return a.deg > b.deg;
    if (simp_rank.at(a.id) != simp_rank.at(b.id)) return simp_rank.at(a.id) < simp_rank.at(b.id);
    return ring::GradedLexLess{}(a.mono, b.mono);
  });
  for (size_t c = 0; c < cols_.size(); ++c) colidx_[cols_[c].id][cols_[c].mono] = c;

  // compatibility rows: delta_i^*(f_x) = word-pullback(f_y) for every face.
  // Each unknown column of x contributes delta_i^* of its monomial, each
  // unknown column of the face target y contributes minus its word-pullback;
  // conditions are indexed by monomials in n-1 variables.
  ZMat rows;
  for (auto& id : ids_) {
    int n = dim_.at(id);
    if (n == 0) continue;
    for (int i = 0; i <= n; ++i) {
      const sset::SimplexRef& f = K.faces_of(id)[static_cast<size_t>(i)];
      int q = dim_.at(f.id);
      std::map<Exps, ZVec, ring::GradedLexLess> cond;
      auto touch = [&](const Exps& e) -> ZVec& {
        auto it = cond.find(e);
        if (it == cond.end()) it = cond.emplace(e, ZVec(cols_.size(), 0)).first;
        return it->second;
      };
      for (auto& m : ring::monomials_upto(n, degree)) {
        IntPolynomial mono;
        mono.add_term(m, 1);
        IntPolynomial img = ring::face_star(i, n, mono);
        size_t col = colidx_.at(id).at(m);
        for (auto& [e, c] : img.terms()) touch(e)[col] += c;
      }
      for (auto& m : ring::monomials_upto(q, degree)) {
        IntPolynomial mono;
        mono.add_term(m, 1);
        IntPolynomial img = word_pullback(f.word, q, mono);
        size_t col = colidx_.at(f.id).at(m);
        for (auto& [e, c] : img.terms()) touch(e)[col] -= c;
      }
      for (auto& [e, row2] : cond) rows.push_back(row2);
    }
  }
  if (pointed) {
    ZVec row(cols_.size(), 0);
    row[colidx_.at(*K.basepoint()).at(Exps{})] = 1;
    rows.push_back(row);
  }
  if (rows.empty()) rows.push_back(ZVec(cols_.size(), 0));  // no conditions: full space

  rows_ = ring::kernel_basis(rows);
  for (auto& r : rows_) {
    basis_.push_back(from_row(r));
    int md = -1;
    for (size_t c = 0; c < r.size(); ++c)
      if (r[c] != 0) md = std::max(md, cols_[c].deg);
    maxdeg_.push_back(md < 0 ? 0 : md);
  }
}

long PowerBasis::rank_upto(int k) const {
  long n = 0;
  for (int d : maxdeg_)
    if (d <= k) ++n;
  return n;
}

PowerElement PowerBasis::zero() const {
  PowerElement e;
  for (auto& id : ids_) e.comp[id] = IntPolynomial();
  return e;
}

PowerElement PowerBasis::unit() const {
  PowerElement e = zero();
  for (auto& id : ids_) e.comp[id] = IntPolynomial::constant(1);
  return e;
}

bool PowerBasis::to_row(const PowerElement& e, ZVec& out) const {
  out.assign(cols_.size(), 0);
  for (auto& [id, p] : e.comp) {
    auto it = colidx_.find(id);
    if (it == colidx_.end()) throw Error("E_SHAPE", "component for unknown simplex " + id);
    for (auto& [m, c] : p.terms()) {
      auto jt = it->second.find(m);
      if (jt == it->second.end()) return false;  // exceeds degree bound
      out[jt->second] = c;
    }
  }
  return true;
}

PowerElement PowerBasis::from_row(const ZVec& v) const {
  PowerElement e = zero();
  for (size_t c = 0; c < cols_.size(); ++c)
    if (v[c] != 0) e.comp[cols_[c].id].add_term(cols_[c].mono, v[c]);
  return e;
}

bool PowerBasis::member(const PowerElement& e, ZVec* coords) const {
  ZVec v;
  if (!to_row(e, v)) return false;
  ZVec c;
  if (!ring::express_in_rows(rows_, v, c)) return false;
  if (coords) *coords = c;
  return true;
}

nlohmann::json PowerBasis::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (int k = 0; k <= degree_; ++k) {
    nlohmann::json slot;
    slot["degree"] = k;
    nlohmann::json lst = nlohmann::json::array();
    for (size_t i = 0; i < basis_.size(); ++i) {
      if (maxdeg_[i] != k) continue;
      nlohmann::json e = nlohmann::json::object();
      for (auto& [id, p] : basis_[i].comp)
        if (!p.is_zero()) e[id] = p.str();
      lst.push_back(e);
    }
    slot["basis"] = lst;
    out.push_back(slot);
  }
  return out;
}

// ---------------------------------------------------------------------------
// induced maps

PowerElement pullback(const sset::SimplicialMap& f, const sset::FiniteSimplicialSet& K,
                      const sset::FiniteSimplicialSet& L, const PowerElement& g) {
  PowerElement out;
  for (int d : K.dims()) {
    for (auto& id : K.simplices(d)) {
      const sset::SimplexRef& img = f.images.at(id);
      auto it = g.comp.find(img.id);
      IntPolynomial base = it == g.comp.end() ? IntPolynomial() : it->second;
      out.comp[id] = word_pullback(img.word, L.dim_of(img.id), base);
    }
  }
  return out;
}

ZMat induced_matrix(const sset::SimplicialMap& f, const sset::FiniteSimplicialSet& K,
                    const sset::FiniteSimplicialSet& L, const PowerBasis& src,
                    const PowerBasis& dst) {
  ZMat cols;
  for (auto& b : src.basis()) {
    PowerElement img = pullback(f, K, L, b);
    ZVec coords;
    if (!dst.member(img, &coords))
      throw Error("E_NOT_MEMBER", "pullback of a basis element left the target lattice");
    cols.push_back(coords);
  }
  // transpose: matrix columns = images
  ZMat m(dst.rank() ? static_cast<size_t>(dst.rank()) : 0,
         ZVec(cols.size(), 0));
  for (size_t j = 0; j < cols.size(); ++j)
    for (size_t i = 0; i < cols[j].size(); ++i) m[i][j] = cols[j][i];
  return m;
}

// ---------------------------------------------------------------------------
// exactness of 0 -> Z^{(L/K,*)} -> Z^{(L,*)} -> Z^{(K,*)} -> 0

ExactnessReport quotient_exactness_check(const sset::FiniteSimplicialSet& L,
                                         const std::vector<std::string>& sub_ids,
                                         const std::string& star, int d, int slack) {
  ExactnessReport rep;
  if (slack < 0) slack = std::max(0, L.max_dim());
  rep.checked_degree = std::max(0, d - slack);

  // the subcomplex as its own complex
  sset::FiniteSimplicialSet K;
  {
    std::set<std::string> sub(sub_ids.begin(), sub_ids.end());
    for (int dd : L.dims())
      for (auto& id : L.simplices(dd)) {
        if (!sub.count(id)) continue;
        for (auto& fr : L.faces_of(id))
          if (!sub.count(fr.id)) throw Error("E_NOT_SUBCOMPLEX", "not closed under faces: " + id);
        K.add_simplex(dd, id, L.faces_of(id));
      }
  }
  if (!K.has(star) || K.dim_of(star) != 0)
    throw Error("E_BASEPOINT", "star must be a vertex of the subcomplex");
  K.set_basepoint(star);
  sset::FiniteSimplicialSet Lp = L;  // with basepoint
  Lp.set_basepoint(star);

  sset::QuotientResult Q = quotient(Lp, sub_ids);

  PowerBasis PL(Lp, d, true);
  PowerBasis PK(K, d, true);
  PowerBasis PQ(Q.q, d, true);
  rep.rank_total = PL.rank();
  rep.rank_sub = PK.rank();
  rep.rank_quot = PQ.rank();

  // restriction = pullback along the inclusion
  sset::SimplicialMap incl;
  for (auto& id : K.all_ids()) incl.images[id] = sset::SimplexRef{{}, id};

  // image lattice of the quotient pullback, in raw L-coordinates
  ZMat image_rows;
  for (auto& b : PQ.basis()) {
    PowerElement up = pullback(Q.proj, Lp, Q.q, b);
    ZVec v;
    if (!PL.to_row(up, v)) {
      rep.pass = false;
      rep.failures.push_back("quotient pullback exceeded the degree bound on " + b.str());
      continue;
    }
    ZVec c;
    if (!ring::express_in_rows(PL.basis_rows(), v, c)) {
      rep.pass = false;
      rep.failures.push_back("quotient pullback not in the total lattice: " + b.str());
    }
    // composite with restriction must vanish
    PowerElement res = pullback(incl, K, Lp, up);
    if (!res.is_zero()) {
      rep.pass = false;
      rep.failures.push_back("restriction of quotient pullback nonzero: " + res.str());
    }
    image_rows.push_back(v);
  }
  // injectivity of the quotient pullback
  if (ring::rank_of(image_rows) != rep.rank_quot) {
    rep.pass = false;
    rep.failures.push_back("quotient pullback not injective");
  }

  // kernel of the restriction inside Z^{(L,*)}: coefficients c on the
  // PL-basis with restriction(sum c_i b_i) = 0
  ZMat R;  // rows: K-coordinates of the restricted PL-basis elements
  for (auto& b : PL.basis()) {
    PowerElement res = pullback(incl, K, Lp, b);
    ZVec v;
    if (!PK.to_row(res, v)) throw Error("E_DEGREE", "restriction raised the degree");
    R.push_back(v);
  }
  if (R.empty()) {
    for (size_t i = 0; i < PK.basis().size(); ++i)
      if (PK.basis_degree(i) <= rep.checked_degree) {
        rep.pass = false;
        rep.failures.push_back("restriction misses basis element: " + PK.basis()[i].str());
      }
    return rep;
  }
  ZMat Rt = ring::transpose(R);          // columns = basis elements
  ZMat coeff_ker = ring::kernel_basis(Rt);  // vectors c with R^T c = 0
  // kernel elements in raw L-coordinates, re-echelonized to read degrees
  ZMat kernel_rows;
  for (auto& c : coeff_ker) {
    ZVec v(PL.basis_rows()[0].size(), 0);
    for (size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0)
        for (size_t j = 0; j < v.size(); ++j) v[j] += c[i] * PL.basis_rows()[i][j];
    kernel_rows.push_back(v);
  }
  if (!kernel_rows.empty()) {
    ring::RowHNF h = ring::row_hnf(kernel_rows);
    h.H.resize(static_cast<size_t>(h.rank));
    kernel_rows = h.H;
  }
  for (auto& v : kernel_rows) {
    PowerElement e = PL.from_row(v);
    if (e.max_degree() > rep.checked_degree) continue;  // exactness only up to slack
    ZVec c;
    if (!ring::express_in_rows(image_rows, v, c)) {
      rep.pass = false;
      rep.failures.push_back("kernel element not in the image of the quotient: " + e.str());
    }
  }

  // surjectivity of the restriction in degrees <= d - slack
  for (size_t i = 0; i < PK.basis().size(); ++i) {
    if (PK.basis_degree(i) > rep.checked_degree) continue;
    ZVec target;
    if (!PK.to_row(PK.basis()[i], target)) continue;
    ZVec x;
    if (!ring::solve_integer(Rt, target, x)) {
      rep.pass = false;
      rep.failures.push_back("restriction misses basis element: " + PK.basis()[i].str());
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// exponential failure: the square is not the triangle

ExponentialFailureReport exponential_failure_check(int d) {
  if (d < 2) throw Error("E_DEGREE", "need degree >= 2");
  ExponentialFailureReport rep;
  sset::FiniteSimplicialSet line = sset::standard_simplex(1);
  sset::ProductResult sq = sset::product(line, line);
  sset::FiniteSimplicialSet tri = sset::standard_simplex(2);
  PowerBasis Psq(sq.p, d, false);
  PowerBasis Ptri(tri, d, false);
  for (int k = 0; k <= d; ++k) {
    rep.square_ranks.push_back(Psq.rank_upto(k));
    rep.triangle_ranks.push_back(Ptri.rank_upto(k));
  }
  for (int k = 0; k <= d; ++k)
    if (rep.square_ranks[static_cast<size_t>(k)] != rep.triangle_ranks[static_cast<size_t>(k)]) {
      rep.ranks_differ = true;
      rep.first_differing_degree = k;
      break;
    }

  // fiber product over the diagonal edge: two copies of the triangle ring
  // glued along the restriction to the shared edge.  The square is covered
  // by its two triangles; identify each with Delta^2 and re-count ranks.
  // Unknowns: (copy, monomial in 2 vars); conditions: restrictions to the
  // {0,2}-edge agree.
  std::vector<Exps> monos = ring::monomials_upto(2, d);
  size_t ncols = 2 * monos.size();
  std::map<Exps, size_t, ring::GradedLexLess> midx;
  for (size_t i = 0; i < monos.size(); ++i) midx[monos[i]] = i;
  ZMat rows;
  std::vector<Exps> edge_monos = ring::monomials_upto(1, d);
  std::map<Exps, size_t, ring::GradedLexLess> eidx;
  for (size_t i = 0; i < edge_monos.size(); ++i) eidx[edge_monos[i]] = i;
  std::vector<ZVec> cond(edge_monos.size(), ZVec(ncols, 0));
  for (size_t copy = 0; copy < 2; ++copy) {
    int sign = copy == 0 ? 1 : -1;
    for (size_t i = 0; i < monos.size(); ++i) {
      IntPolynomial mono;
      mono.add_term(monos[i], 1);
      IntPolynomial res = ring::face_star(1, 2, mono);  // restrict to the {0,2} edge
      for (auto& [e, c] : res.terms()) cond[eidx.at(e)][copy * monos.size() + i] += sign * c;
    }
  }
  for (auto& r : cond) rows.push_back(r);
  ZMat ker = ring::kernel_basis(rows);
  // per-degree ranks of the fiber product: degree of a kernel vector = max
  // monomial degree over both copies
  std::vector<long> fiber(static_cast<size_t>(d) + 1, 0);
  for (auto& v : ker) {
    int md = 0;
    for (size_t c = 0; c < v.size(); ++c)
      if (v[c] != 0) md = std::max(md, ring::total_deg(monos[c % monos.size()]));
    for (int k = md; k <= d; ++k) fiber[static_cast<size_t>(k)]++;
  }
  rep.fiber_product_matches = true;
  for (int k = 0; k <= d; ++k)
    if (fiber[static_cast<size_t>(k)] != rep.square_ranks[static_cast<size_t>(k)])
      rep.fiber_product_matches = false;
  return rep;
}

}  // namespace kklab::power

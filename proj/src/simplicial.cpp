#include "kklab/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kklab::sset {

// ---------------------------------------------------------------------------
// degeneracy-word calculus

std::string SimplexRef::str() const {
  if (word.empty()) return id;
  std::ostringstream os;
  for (int j : word) os << "s" << j;
  os << "." << id;
  return os.str();
}

DegWord insert_degeneracy(DegWord w, int j) {
  // compose s_j with s_{w0} s_{w1} ... using s_i s_k = s_{k+1} s_i (i <= k)
  DegWord out;
  size_t pos = 0;
  int cur = j;
  while (pos < w.size() && cur <= w[pos]) {
    out.push_back(w[pos] + 1);
    ++pos;
  }
  out.push_back(cur);
  for (; pos < w.size(); ++pos) out.push_back(w[pos]);
  return out;
}

DegWord strip_degeneracy(const DegWord& w, int j) {
  DegWord out;
  bool removed = false;
  for (int x : w) {
    if (x == j && !removed) {
      removed = true;
      continue;
    }
    out.push_back(x > j ? x - 1 : x);
  }
  if (!removed) throw Error("E_STRIP", "degeneracy index not present");
  return out;
}

// ---------------------------------------------------------------------------
// FiniteSimplicialSet basics

void FiniteSimplicialSet::add_simplex(int dim, const std::string& id,
                                      std::vector<SimplexRef> faces) {
  if (dim < 0) throw Error("E_DIM", "negative dimension");
  if (id.empty()) throw Error("E_ID", "empty simplex id");
  if (dim_of_.count(id)) throw Error("E_DUP_ID", "duplicate simplex id: " + id);
  if (faces.size() != (dim == 0 ? 0u : static_cast<size_t>(dim) + 1))
    throw Error("E_FACE_COUNT", "wrong face count for " + id);
  if (by_dim_[dim].empty() && std::find(dims_.begin(), dims_.end(), dim) == dims_.end()) {
    dims_.push_back(dim);
    std::sort(dims_.begin(), dims_.end());
  }
  by_dim_[dim].push_back(id);
  dim_of_[id] = dim;
  faces_[id] = std::move(faces);
}

void FiniteSimplicialSet::set_basepoint(const std::string& id) {
  if (!has(id) || dim_of(id) != 0) throw Error("E_BASEPOINT", "basepoint must be an existing vertex");
  basepoint_ = id;
}

const std::vector<std::string>& FiniteSimplicialSet::simplices(int dim) const {
  static const std::vector<std::string> empty;
  auto it = by_dim_.find(dim);
  return it == by_dim_.end() ? empty : it->second;
}

std::vector<std::string> FiniteSimplicialSet::all_ids() const {
  std::vector<std::string> out;
  for (int d : dims_)
    for (auto& id : simplices(d)) out.push_back(id);
  return out;
}

int FiniteSimplicialSet::dim_of(const std::string& id) const {
  auto it = dim_of_.find(id);
  if (it == dim_of_.end()) throw Error("E_NO_SIMPLEX", "unknown simplex id: " + id);
  return it->second;
}

const std::vector<SimplexRef>& FiniteSimplicialSet::faces_of(const std::string& id) const {
  auto it = faces_.find(id);
  if (it == faces_.end()) throw Error("E_NO_SIMPLEX", "unknown simplex id: " + id);
  return it->second;
}

SimplexRef FiniteSimplicialSet::apply_degeneracy(int j, const SimplexRef& r) const {
  int d = ref_dim(r);
  if (j < 0 || j > d) throw Error("E_DEGEN_RANGE", "degeneracy index out of range");
  return SimplexRef{insert_degeneracy(r.word, j), r.id};
}

SimplexRef FiniteSimplicialSet::apply_face(int i, const SimplexRef& r) const {
  int d = ref_dim(r);
  if (i < 0 || i > d) throw Error("E_FACE_RANGE", "face index out of range");
  if (r.word.empty()) {
    if (d == 0) throw Error("E_FACE_OF_VERTEX", "vertex has no faces");
    return faces_of(r.id)[static_cast<size_t>(i)];
  }
  int j = r.word.front();
  SimplexRef tail{DegWord(r.word.begin() + 1, r.word.end()), r.id};
  if (i == j || i == j + 1) return tail;            // d_j s_j = d_{j+1} s_j = id
  if (i < j) {                                      // d_i s_j = s_{j-1} d_i
    SimplexRef f = apply_face(i, tail);
    return apply_degeneracy(j - 1, f);
  }
  SimplexRef f = apply_face(i - 1, tail);           // d_i s_j = s_j d_{i-1}
  return apply_degeneracy(j, f);
}

SimplexRef FiniteSimplicialSet::simplex_from_monotone(const std::string& y,
                                                      const std::vector<int>& values) const {
  int n = dim_of(y);
  if (values.empty()) throw Error("E_MONOTONE", "empty value list");
  for (size_t k = 0; k < values.size(); ++k) {
    if (values[k] < 0 || values[k] > n) throw Error("E_MONOTONE", "value out of range");
    if (k && values[k] < values[k - 1]) throw Error("E_MONOTONE", "values not monotone");
  }
  // peel one repeat: y.(m~ o sigma_b) = s_b (y.m~)
  for (size_t b = 0; b + 1 < values.size(); ++b) {
    if (values[b] == values[b + 1]) {
      std::vector<int> shorter = values;
      shorter.erase(shorter.begin() + static_cast<long>(b) + 1);
      SimplexRef sub = simplex_from_monotone(y, shorter);
      return apply_degeneracy(static_cast<int>(b), sub);
    }
  }
  // injective: iterated face on the complement, largest index first
  SimplexRef r{{}, y};
  std::vector<bool> keep(static_cast<size_t>(n) + 1, false);
  for (int v : values) keep[static_cast<size_t>(v)] = true;
  for (int j = n; j >= 0; --j)
    if (!keep[static_cast<size_t>(j)]) r = apply_face(j, r);
  return r;
}

SimplexRef FiniteSimplicialSet::iterated_face(const std::string& id,
                                              const std::vector<int>& keep) const {
  return simplex_from_monotone(id, keep);
}

long FiniteSimplicialSet::euler_characteristic() const {
  long chi = 0;
  for (int d : dims_) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(simplices(d).size());
  return chi;
}

void FiniteSimplicialSet::validate() const {
  for (int d : dims_) {
    for (auto& id : simplices(d)) {
      const auto& fs = faces_of(id);
      for (size_t i = 0; i < fs.size(); ++i) {
        const SimplexRef& r = fs[i];
        if (!has(r.id)) throw Error("E_NO_SIMPLEX", "face of " + id + " references unknown id " + r.id);
        for (size_t k = 0; k + 1 < r.word.size(); ++k)
          if (r.word[k] <= r.word[k + 1])
            throw Error("E_WORD_ORDER", "degeneracy word not strictly decreasing on face of " + id);
        // replay-validate word indices: s_{w_last} first
        int cur = dim_of(r.id);
        for (auto it = r.word.rbegin(); it != r.word.rend(); ++it) {
          if (*it < 0 || *it > cur)
            throw Error("E_WORD_RANGE", "degeneracy index out of range on face of " + id);
          ++cur;
        }
        if (cur != d - 1) throw Error("E_FACE_DIM", "face dimension mismatch on " + id);
      }
      // simplicial identities d_i d_j = d_{j-1} d_i (i < j)
      if (d >= 2) {
        for (int j = 1; j <= d; ++j)
          for (int i = 0; i < j; ++i) {
            SimplexRef a = apply_face(i, fs[static_cast<size_t>(j)]);
            SimplexRef b = apply_face(j - 1, fs[static_cast<size_t>(i)]);
            if (!(a == b))
              throw Error("E_SIMPLICIAL_ID",
                          "d_" + std::to_string(i) + " d_" + std::to_string(j) + " != d_" +
                              std::to_string(j - 1) + " d_" + std::to_string(i) + " on " + id);
          }
      }
    }
  }
  if (basepoint_ && (!has(*basepoint_) || dim_of(*basepoint_) != 0))
    throw Error("E_BASEPOINT", "basepoint is not a vertex");
}

bool FiniteSimplicialSet::is_regular(std::string* why) const {
  for (int d : dims_) {
    for (auto& id : simplices(d)) {
      for (auto& f : faces_of(id)) {
        if (!f.word.empty()) {
          if (why) *why = "simplex " + id + " has a degenerate face";
          return false;
        }
      }
      if (d >= 1) {
        // all iterated faces distinct: full Delta^d face lattice
        std::set<std::string> seen;
        size_t total = 0;
        std::vector<int> subset;
        std::function<void(int)> rec = [&](int from) {
          if (!subset.empty()) {
            SimplexRef r = iterated_face(id, subset);
            ++total;
            seen.insert(r.id);
          }
          for (int v = from; v <= d; ++v) {
            subset.push_back(v);
            rec(v + 1);
            subset.pop_back();
          }
        };
        rec(0);
        if (seen.size() != total) {
          if (why) *why = "simplex " + id + " has coincident iterated faces";
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// maps

SimplexRef SimplicialMap::apply(const SimplexRef& r) const {
  auto it = images.find(r.id);
  if (it == images.end()) throw Error("E_MAP_DOMAIN", "no image for simplex " + r.id);
  SimplexRef out = it->second;
  // s_w f(x): apply word outermost-last
  for (auto jt = r.word.rbegin(); jt != r.word.rend(); ++jt)
    out.word = insert_degeneracy(out.word, *jt);
  return out;
}

void validate_map(const SimplicialMap& f, const FiniteSimplicialSet& src,
                  const FiniteSimplicialSet& dst) {
  for (int d : src.dims()) {
    for (auto& id : src.simplices(d)) {
      auto it = f.images.find(id);
      if (it == f.images.end()) throw Error("E_MAP_DOMAIN", "no image for simplex " + id);
      const SimplexRef& img = it->second;
      if (!dst.has(img.id)) throw Error("E_MAP_RANGE", "image references unknown id " + img.id);
      if (dst.ref_dim(img) != d) throw Error("E_MAP_DIM", "image dimension mismatch for " + id);
      for (int i = 0; i <= d && d > 0; ++i) {
        SimplexRef lhs = f.apply(src.faces_of(id)[static_cast<size_t>(i)]);
        SimplexRef rhs = dst.apply_face(i, img);
        if (!(lhs == rhs))
          throw Error("E_MAP_FACE", "map does not commute with d_" + std::to_string(i) + " on " + id);
      }
    }
  }
}

SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g) {
  SimplicialMap h;
  for (auto& [id, ref] : f.images) h.images[id] = g.apply(ref);
  return h;
}

// ---------------------------------------------------------------------------
// canonical form / isomorphism

namespace {

struct CanonState {
  const FiniteSimplicialSet* K;
  std::vector<std::string> ids;          // fixed order
  std::map<std::string, size_t> index;
  std::vector<std::vector<std::pair<size_t, size_t>>> cofaces;  // id -> list of (coface idx, position)
};

std::vector<int> refine_colors(const CanonState& st, std::vector<int> color) {
  size_t n = st.ids.size();
  while (true) {
    std::vector<std::string> sig(n);
    for (size_t k = 0; k < n; ++k) {
      std::ostringstream os;
      os << color[k] << ";";
      const auto& fs = st.K->faces_of(st.ids[k]);
      for (size_t i = 0; i < fs.size(); ++i) {
        os << "f" << i << "[";
        for (int j : fs[i].word) os << j << ",";
        os << "]" << color[st.index.at(fs[i].id)] << ";";
      }
      std::vector<std::string> up;
      for (auto& [ci, pos] : st.cofaces[k]) {
        std::ostringstream u;
        const SimplexRef& r = st.K->faces_of(st.ids[ci])[pos];
        u << "u" << pos << "[";
        for (int j : r.word) u << j << ",";
        u << "]" << color[ci];
        up.push_back(u.str());
      }
      std::sort(up.begin(), up.end());
      for (auto& u : up) os << u << ";";
      sig[k] = os.str();
    }
    std::vector<std::string> uniq = sig;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    std::vector<int> next(n);
    for (size_t k = 0; k < n; ++k)
      next[k] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[k]) - uniq.begin());
    if (next == color) return color;
    bool same_classes = uniq.size() == [&] {
      std::set<int> s(color.begin(), color.end());
      return s.size();
    }();
    color = std::move(next);
    if (same_classes) return color;  // stable partition
  }
}

std::string serialize_with_order(const CanonState& st, const std::vector<size_t>& order) {
  // rank[idx] = position in canonical order
  std::vector<size_t> rank(st.ids.size());
  for (size_t p = 0; p < order.size(); ++p) rank[order[p]] = p;
  std::ostringstream os;
  for (size_t p = 0; p < order.size(); ++p) {
    const std::string& id = st.ids[order[p]];
    os << "#" << st.K->dim_of(id);
    if (st.K->basepoint() && *st.K->basepoint() == id) os << "*";
    for (auto& f : st.K->faces_of(id)) {
      os << "(";
      for (int j : f.word) os << j << ",";
      os << ":" << rank[st.index.at(f.id)] << ")";
    }
    os << "\n";
  }
  return os.str();
}

// individualization-refinement; returns minimal serialization and its order
void canon_search(const CanonState& st, std::vector<int> color, int depth, std::string& best,
                  std::vector<size_t>* best_order) {
  if (depth > 16) throw Error("E_CANON_DEPTH", "canonical search too deep");
  color = refine_colors(st, color);
  size_t n = st.ids.size();
  // group by color, classes ordered by color value; within class: discrete iff singleton
  std::map<int, std::vector<size_t>> classes;
  for (size_t k = 0; k < n; ++k) classes[color[k]].push_back(k);
  const std::vector<size_t>* split = nullptr;
  for (auto& [c, members] : classes)
    if (members.size() > 1) {
      split = &members;
      break;
    }
  if (!split) {
    std::vector<size_t> order;
    for (auto& [c, members] : classes) order.push_back(members[0]);
    std::string s = serialize_with_order(st, order);
    if (best.empty() || s < best) {
      best = s;
      if (best_order) *best_order = order;
    }
    return;
  }
  int fresh = static_cast<int>(n) + depth * static_cast<int>(n) + 1;
  for (size_t member : *split) {
    std::vector<int> c2 = color;
    c2[member] = fresh;  // individualize
    canon_search(st, std::move(c2), depth + 1, best, best_order);
  }
}

CanonState make_state(const FiniteSimplicialSet& K) {
  CanonState st;
  st.K = &K;
  st.ids = K.all_ids();
  for (size_t k = 0; k < st.ids.size(); ++k) st.index[st.ids[k]] = k;
  st.cofaces.resize(st.ids.size());
  for (size_t k = 0; k < st.ids.size(); ++k) {
    const auto& fs = K.faces_of(st.ids[k]);
    for (size_t i = 0; i < fs.size(); ++i) st.cofaces[st.index.at(fs[i].id)].push_back({k, i});
  }
  return st;
}

std::vector<int> initial_colors(const CanonState& st) {
  std::vector<int> color(st.ids.size());
  for (size_t k = 0; k < st.ids.size(); ++k) {
    int c = st.K->dim_of(st.ids[k]) * 2;
    if (st.K->basepoint() && *st.K->basepoint() == st.ids[k]) c += 1;
    color[k] = c;
  }
  return color;
}

}  // namespace

std::string FiniteSimplicialSet::canonical_string() const {
  if (dim_of_.empty()) return "";
  CanonState st = make_state(*this);
  std::string best;
  canon_search(st, initial_colors(st), 0, best, nullptr);
  return best;
}

std::vector<std::string> FiniteSimplicialSet::canonical_order() const {
  CanonState st = make_state(*this);
  std::string best;
  std::vector<size_t> order;
  canon_search(st, initial_colors(st), 0, best, &order);
  std::vector<std::string> out;
  for (size_t idx : order) out.push_back(st.ids[idx]);
  return out;
}

std::optional<std::map<std::string, std::string>> find_isomorphism(const FiniteSimplicialSet& a,
                                                                   const FiniteSimplicialSet& b) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.canonical_string() != b.canonical_string()) return std::nullopt;
  std::vector<std::string> oa = a.canonical_order();
  std::vector<std::string> ob = b.canonical_order();
  std::map<std::string, std::string> match;
  SimplicialMap f;
  for (size_t k = 0; k < oa.size(); ++k) {
    match[oa[k]] = ob[k];
    f.images[oa[k]] = SimplexRef{{}, ob[k]};
  }
  validate_map(f, a, b);  // canonical strings equal => this must pass
  return match;
}

FiniteSimplicialSet FiniteSimplicialSet::relabeled(
    const std::map<std::string, std::string>& newname) const {
  FiniteSimplicialSet out;
  for (int d : dims_) {
    for (auto& id : simplices(d)) {
      std::vector<SimplexRef> fs = faces_of(id);
      for (auto& f : fs) f.id = newname.at(f.id);
      out.add_simplex(d, newname.at(id), std::move(fs));
    }
  }
  if (basepoint_) out.set_basepoint(newname.at(*basepoint_));
  if (origin_) {
    QuotientOrigin o = *origin_;
    for (auto& [id, ref] : o.proj.images) ref.id = newname.at(ref.id);
    out.set_origin(std::move(o));
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON round trip

nlohmann::json FiniteSimplicialSet::to_json() const {
  nlohmann::json j;
  j["dims"] = dims_;
  nlohmann::json sx = nlohmann::json::object();
  for (int d : dims_) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto& id : simplices(d)) {
      if (d == 0) {
        arr.push_back(id);
      } else {
        nlohmann::json e;
        e["id"] = id;
        nlohmann::json fl = nlohmann::json::array();
        for (auto& f : faces_of(id)) fl.push_back(nlohmann::json::array({f.word, f.id}));
        e["faces"] = fl;
        arr.push_back(e);
      }
    }
    sx[std::to_string(d)] = arr;
  }
  j["simplices"] = sx;
  if (basepoint_) j["basepoint"] = *basepoint_;
  return j;
}

FiniteSimplicialSet FiniteSimplicialSet::from_json(const nlohmann::json& j) {
  FiniteSimplicialSet K;
  if (!j.is_object() || !j.contains("dims") || !j.contains("simplices"))
    throw Error("E_SCHEMA", "expected object with dims and simplices");
  std::vector<int> dims;
  try {
    dims = j.at("dims").get<std::vector<int>>();
  } catch (const nlohmann::json::exception&) {
    throw Error("E_SCHEMA", "dims must be an integer list");
  }
  for (int d : dims) {
    std::string key = std::to_string(d);
    if (!j.at("simplices").contains(key))
      throw Error("E_SCHEMA", "missing simplex list for dimension " + key);
    const auto& arr = j.at("simplices").at(key);
    if (!arr.is_array()) throw Error("E_SCHEMA", "simplex list must be an array");
    for (const auto& e : arr) {
      if (d == 0) {
        if (!e.is_string()) throw Error("E_SCHEMA", "dimension-0 entries must be id strings");
        K.add_simplex(0, e.get<std::string>(), {});
      } else {
        if (!e.is_object() || !e.contains("id") || !e.contains("faces"))
          throw Error("E_SCHEMA", "simplex entries need id and faces");
        std::vector<SimplexRef> fs;
        for (const auto& f : e.at("faces")) {
          if (!f.is_array() || f.size() != 2)
            throw Error("E_SCHEMA", "face entries are [degeneracy-word, id] pairs");
          SimplexRef r;
          try {
            r.word = f.at(0).get<std::vector<int>>();
            r.id = f.at(1).get<std::string>();
          } catch (const nlohmann::json::exception&) {
            throw Error("E_SCHEMA", "malformed face entry");
          }
          fs.push_back(std::move(r));
        }
        K.add_simplex(d, e.at("id").get<std::string>(), std::move(fs));
      }
    }
  }
  if (j.contains("basepoint")) {
    if (!j.at("basepoint").is_string()) throw Error("E_SCHEMA", "basepoint must be an id string");
    K.set_basepoint(j.at("basepoint").get<std::string>());
  }
  K.validate();
  return K;
}

// ---------------------------------------------------------------------------
// builders

static std::string subset_id(const std::vector<int>& s) {
  std::string id;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) id += "_";
    id += std::to_string(s[i]);
  }
  return id;
}

FiniteSimplicialSet standard_simplex(int n) {
  if (n < 0) throw Error("E_DIM", "negative dimension");
  FiniteSimplicialSet K;
  // nondeg k-simplices = (k+1)-subsets of {0..n}
  for (int k = 0; k <= n; ++k) {
    std::vector<int> subset;
    std::function<void(int)> rec = [&](int from) {
      if (static_cast<int>(subset.size()) == k + 1) {
        std::vector<SimplexRef> fs;
        if (k > 0) {
          for (int i = 0; i <= k; ++i) {
            std::vector<int> face = subset;
            face.erase(face.begin() + i);
            fs.push_back(SimplexRef{{}, subset_id(face)});
          }
        }
        K.add_simplex(k, subset_id(subset), std::move(fs));
        return;
      }
      for (int v = from; v <= n; ++v) {
        subset.push_back(v);
        rec(v + 1);
        subset.pop_back();
      }
    };
    rec(0);
  }
  return K;
}

FiniteSimplicialSet boundary_simplex(int n) {
  if (n <= 0) throw Error("E_EMPTY", "boundary of a point is empty; not supported");
  FiniteSimplicialSet full = standard_simplex(n);
  FiniteSimplicialSet K;
  for (int k = 0; k < n; ++k)
    for (auto& id : full.simplices(k)) K.add_simplex(k, id, full.faces_of(id));
  return K;
}

FiniteSimplicialSet point_complex() {
  FiniteSimplicialSet K;
  K.add_simplex(0, "*", {});
  K.set_basepoint("*");
  return K;
}

FiniteSimplicialSet circle() {
  FiniteSimplicialSet interval = standard_simplex(1);
  QuotientResult r = quotient(interval, {"0", "1"});
  return std::move(r.q);
}

// ---------------------------------------------------------------------------
// quotient

QuotientResult quotient(const FiniteSimplicialSet& K, const std::vector<std::string>& sub_ids) {
  std::set<std::string> sub(sub_ids.begin(), sub_ids.end());
  for (auto& id : sub_ids) {
    if (!K.has(id)) throw Error("E_NO_SIMPLEX", "subcomplex id unknown: " + id);
    for (auto& f : K.faces_of(id))
      if (!sub.count(f.id))
        throw Error("E_NOT_SUBCOMPLEX", "subcomplex not closed under faces at " + id);
  }
  // choose a basepoint id not colliding with surviving simplices
  std::string star = "*";
  while (K.has(star) && !sub.count(star)) star += "*";

  // projection on nondeg simplices of K
  auto proj_ref = [&](const SimplexRef& r) -> SimplexRef {
    if (!sub.count(r.id)) return r;
    // collapsed m-simplex becomes s_{m-1}...s_0(*)
    int m = K.dim_of(r.id);
    SimplexRef out{{}, star};
    for (int j = 0; j < m; ++j) out.word = insert_degeneracy(out.word, j);
    // then the original word on top
    for (auto it = r.word.rbegin(); it != r.word.rend(); ++it)
      out.word = insert_degeneracy(out.word, *it);
    return out;
  };

  QuotientResult out;
  bool need_star = !sub.empty();
  if (need_star) {
    out.q.add_simplex(0, star, {});
    out.q.set_basepoint(star);
  }
  for (int d : K.dims()) {
    for (auto& id : K.simplices(d)) {
      if (sub.count(id)) continue;
      std::vector<SimplexRef> fs;
      for (auto& f : K.faces_of(id)) fs.push_back(proj_ref(f));
      out.q.add_simplex(d, id, std::move(fs));
    }
  }
  for (int d : K.dims())
    for (auto& id : K.simplices(d)) out.proj.images[id] = proj_ref(SimplexRef{{}, id});
  out.q.validate();
  if (!sub.empty()) {
    QuotientOrigin o;
    o.total = std::make_shared<FiniteSimplicialSet>(K);
    o.collapsed = sub_ids;
    o.proj = out.proj;
    out.q.set_origin(std::move(o));
  }
  return out;
}

// ---------------------------------------------------------------------------
// subdivision

namespace {

// subsets of [0..dim(y)] realizing each iterated face of y (regular complexes)
std::map<std::string, std::vector<int>> face_subsets(const FiniteSimplicialSet& K,
                                                     const std::string& y) {
  std::map<std::string, std::vector<int>> table;
  int n = K.dim_of(y);
  std::vector<int> subset;
  std::function<void(int)> rec = [&](int from) {
    if (!subset.empty()) table[K.iterated_face(y, subset).id] = subset;
    for (int v = from; v <= n; ++v) {
      subset.push_back(v);
      rec(v + 1);
      subset.pop_back();
    }
  };
  rec(0);
  return table;
}

std::string chain_id(const std::vector<std::string>& chain) {
  std::string id;
  for (size_t i = 0; i < chain.size(); ++i) {
    if (i) id += "|";
    id += chain[i];
  }
  return id;
}

SubdivisionResult subdivide_regular(const FiniteSimplicialSet& K) {
  std::vector<std::string> ids = K.all_ids();
  std::map<std::string, size_t> rank;
  for (size_t k = 0; k < ids.size(); ++k) rank[ids[k]] = k;

  // per element: its proper faces (as ranks) and subset tables
  std::map<std::string, std::map<std::string, std::vector<int>>> subsets;
  std::vector<std::vector<size_t>> up(ids.size());  // up[r] = elements strictly containing r
  for (auto& y : ids) subsets[y] = face_subsets(K, y);
  for (size_t k = 0; k < ids.size(); ++k) {
    for (auto& [fid, s] : subsets[ids[k]]) {
      if (fid == ids[k]) continue;
      up[rank[fid]].push_back(k);
    }
  }
  for (auto& u : up) {
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
  }

  // enumerate strict chains (DFS, ascending ranks through containment)
  std::vector<std::vector<std::vector<size_t>>> chains_by_len;  // [len-1] -> chains
  std::vector<size_t> cur;
  std::function<void(size_t)> dfs = [&](size_t last) {
    if (chains_by_len.size() < cur.size()) chains_by_len.resize(cur.size());
    chains_by_len[cur.size() - 1].push_back(cur);
    for (size_t nxt : up[last]) {
      cur.push_back(nxt);
      dfs(nxt);
      cur.pop_back();
    }
  };
  for (size_t k = 0; k < ids.size(); ++k) {
    cur.push_back(k);
    dfs(k);
    cur.pop_back();
  }
  for (auto& bucket : chains_by_len) std::sort(bucket.begin(), bucket.end());

  SubdivisionResult out;
  for (size_t len = 1; len <= chains_by_len.size(); ++len) {
    for (auto& ch : chains_by_len[len - 1]) {
      std::vector<std::string> names;
      for (size_t r : ch) names.push_back(ids[r]);
      std::string id = chain_id(names);
      std::vector<SimplexRef> fs;
      if (len > 1) {
        for (size_t i = 0; i < len; ++i) {
          std::vector<std::string> face = names;
          face.erase(face.begin() + static_cast<long>(i));
          fs.push_back(SimplexRef{{}, chain_id(face)});
        }
      }
      out.K.add_simplex(static_cast<int>(len) - 1, id, std::move(fs));
      out.chains[id] = names;

      // last-vertex image: face of the top element spanned by max(S_i)
      const std::string& top = names.back();
      const auto& table = subsets.at(top);
      std::vector<int> vlist;
      for (auto& x : names) {
        if (x == top) {
          vlist.push_back(K.dim_of(top));
        } else {
          const auto& s = table.at(x);
          vlist.push_back(*std::max_element(s.begin(), s.end()));
        }
      }
      out.lv.images[id] = K.simplex_from_monotone(top, vlist);
    }
  }
  if (K.basepoint()) out.K.set_basepoint(*K.basepoint());  // vertex chain keeps its id
  return out;
}

void maybe_compact(SubdivisionResult& r) {
  bool big = false;
  for (auto& [id, c] : r.chains)
    if (id.size() > 48) big = true;
  if (!big) return;
  std::map<std::string, std::string> newname;
  size_t ctr = 0;
  for (auto& id : r.K.all_ids()) newname[id] = "n" + std::to_string(ctr++);
  FiniteSimplicialSet compacted = r.K.relabeled(newname);
  SimplicialMap lv2;
  for (auto& [id, ref] : r.lv.images) lv2.images[newname.at(id)] = ref;
  std::map<std::string, std::vector<std::string>> chains2;
  for (auto& [id, c] : r.chains) chains2[newname.at(id)] = c;
  r.K = std::move(compacted);
  r.lv = std::move(lv2);
  r.chains = std::move(chains2);
}

}  // namespace

SubdivisionResult subdivide(const FiniteSimplicialSet& K) {
  std::string why;
  if (K.is_regular(&why)) {
    SubdivisionResult r = subdivide_regular(K);
    maybe_compact(r);
    r.K.validate();
    validate_map(r.lv, r.K, K);
    return r;
  }
  if (!K.origin())
    throw Error("E_NOT_REGULAR",
                "subdivision needs a regular complex or quotient provenance: " + why);

  // sd commutes with the collapse: sd(T/L) = sd(T)/sd(L)
  const QuotientOrigin& o = *K.origin();
  SubdivisionResult sdT = subdivide(*o.total);
  std::set<std::string> collapsed(o.collapsed.begin(), o.collapsed.end());
  std::vector<std::string> sdL_ids;
  for (auto& [id, ch] : sdT.chains) {
    bool inside = true;
    for (auto& x : ch)
      if (!collapsed.count(x)) inside = false;
    if (inside) sdL_ids.push_back(id);
  }
  QuotientResult q = quotient(sdT.K, sdL_ids);

  SubdivisionResult out;
  out.K = std::move(q.q);
  // chain contents refer to simplices of T; drop the collapsed ones
  for (auto& [id, ch] : sdT.chains)
    if (out.K.has(id)) out.chains[id] = ch;
  // lv on the quotient: push the total's last-vertex map through both collapses
  for (int d : out.K.dims()) {
    for (auto& id : out.K.simplices(d)) {
      if (out.K.basepoint() && *out.K.basepoint() == id && !sdT.K.has(id)) {
        // the fresh basepoint: image is the collapsed point downstairs
        if (!K.basepoint()) throw Error("E_BASEPOINT", "quotient lost its basepoint");
        out.lv.images[id] = SimplexRef{{}, *K.basepoint()};
        continue;
      }
      SimplexRef down = sdT.lv.images.at(id);  // ref into T
      out.lv.images[id] = o.proj.apply(down);  // ref into K = T/L
    }
  }
  out.K.validate();
  validate_map(out.lv, out.K, K);
  return out;
}

// ---------------------------------------------------------------------------
// product (Eilenberg–Zilber)

namespace {

std::string pair_id(const SimplexRef& a, const SimplexRef& b) {
  return "<" + a.str() + "," + b.str() + ">";
}

// EZ normal form of a pair of refs: extract common degeneracies, largest first
std::pair<DegWord, std::string> pair_normalize(SimplexRef a, SimplexRef b) {
  DegWord outer;
  while (true) {
    std::set<int> sa(a.word.begin(), a.word.end());
    int j = -1;
    for (int x : b.word)
      if (sa.count(x)) j = std::max(j, x);
    if (j < 0) break;
    outer.push_back(j);
    a.word = strip_degeneracy(a.word, j);
    b.word = strip_degeneracy(b.word, j);
  }
  return {outer, pair_id(a, b)};
}

void subsets_of_size(int n, int k, std::vector<std::vector<int>>& out) {
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = from; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
}

}  // namespace

ProductResult product(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L) {
  ProductResult out;
  int maxd = K.max_dim() + L.max_dim();
  for (int n = 0; n <= maxd; ++n) {
    // deterministic traversal: K-simplex, L-simplex, A, B in lex order
    for (int p = 0; p <= std::min(n, K.max_dim()); ++p) {
      for (auto& x : K.simplices(p)) {
        for (int q = 0; q <= std::min(n, L.max_dim()); ++q) {
          if (n > p + q) continue;
          for (auto& y : L.simplices(q)) {
            std::vector<std::vector<int>> As;
            subsets_of_size(n, n - p, As);
            for (auto& A : As) {
              // B subset of [0..n-1] \ A with |B| = n - q
              std::vector<int> rest;
              std::set<int> inA(A.begin(), A.end());
              for (int v = 0; v < n; ++v)
                if (!inA.count(v)) rest.push_back(v);
              std::vector<std::vector<int>> Bidx;
              subsets_of_size(static_cast<int>(rest.size()), n - q, Bidx);
              for (auto& bi : Bidx) {
                std::vector<int> B;
                for (int t : bi) B.push_back(rest[static_cast<size_t>(t)]);
                SimplexRef rx{DegWord(A.rbegin(), A.rend()), x};
                SimplexRef ry{DegWord(B.rbegin(), B.rend()), y};
                std::string id = pair_id(rx, ry);
                std::vector<SimplexRef> fs;
                if (n > 0) {
                  for (int i = 0; i <= n; ++i) {
                    SimplexRef fx = K.apply_face(i, rx);
                    SimplexRef fy = L.apply_face(i, ry);
                    auto [w, fid] = pair_normalize(fx, fy);
                    fs.push_back(SimplexRef{w, fid});
                  }
                }
                out.p.add_simplex(n, id, std::move(fs));
                out.pr1.images[id] = rx;
                out.pr2.images[id] = ry;
              }
            }
          }
        }
      }
    }
  }
  if (K.basepoint() && L.basepoint())
    out.p.set_basepoint(
        pair_id(SimplexRef{{}, *K.basepoint()}, SimplexRef{{}, *L.basepoint()}));
  out.p.validate();
  validate_map(out.pr1, out.p, K);
  validate_map(out.pr2, out.p, L);
  return out;
}

}  // namespace kklab::sset

#pragma once
// Finite simplicial sets, stored semi-simplicially: only nondegenerate
// simplices are materialized; every face is a normal-form pair
// (strictly decreasing degeneracy word, nondegenerate id).
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "kklab/ints.hpp"

namespace kklab::sset {

using DegWord = std::vector<int>;  // strictly decreasing

struct SimplexRef {
  DegWord word;
  std::string id;

  bool operator==(const SimplexRef& o) const { return word == o.word && id == o.id; }
  bool operator!=(const SimplexRef& o) const { return !(*this == o); }
  bool operator<(const SimplexRef& o) const {
    if (id != o.id) return id < o.id;
    return word < o.word;
  }
  std::string str() const;
};

// s_j . s_{w0} s_{w1} ...  normalized to a strictly decreasing word
DegWord insert_degeneracy(DegWord w, int j);
// inverse direction: given u = s_W x with j in W, the word W' with u = s_j s_{W'} x
DegWord strip_degeneracy(const DegWord& w, int j);

class FiniteSimplicialSet;

// A simplicial map is just its assignment on nondegenerate simplices;
// validation/composition take the source and target complexes explicitly
// so maps stay copyable values with no lifetime ties.
struct SimplicialMap {
  std::map<std::string, SimplexRef> images;

  // f(s_w x) = s_w f(x); complex-independent given the assignment
  SimplexRef apply(const SimplexRef& r) const;
};

// throws Error if the assignment is not dimension-compatible or does not
// commute with faces
void validate_map(const SimplicialMap& f, const FiniteSimplicialSet& src,
                  const FiniteSimplicialSet& dst);
SimplicialMap compose(const SimplicialMap& f, const SimplicialMap& g);  // g after f

// quotient provenance, kept so that subdivision extends past non-regular
// quotients (sd commutes with the collapse)
struct QuotientOrigin {
  std::shared_ptr<const FiniteSimplicialSet> total;
  std::vector<std::string> collapsed;  // nondeg ids of the collapsed subcomplex
  SimplicialMap proj;                  // projection total -> this complex
};

class FiniteSimplicialSet {
public:
  void add_simplex(int dim, const std::string& id, std::vector<SimplexRef> faces);
  void set_basepoint(const std::string& id);

  const std::vector<int>& dims() const { return dims_; }
  int max_dim() const { return dims_.empty() ? -1 : dims_.back(); }
  const std::vector<std::string>& simplices(int dim) const;
  std::vector<std::string> all_ids() const;  // dimension-ascending, stored order
  bool has(const std::string& id) const { return dim_of_.count(id) != 0; }
  int dim_of(const std::string& id) const;
  const std::vector<SimplexRef>& faces_of(const std::string& id) const;
  const std::optional<std::string>& basepoint() const { return basepoint_; }
  size_t size() const { return dim_of_.size(); }

  int ref_dim(const SimplexRef& r) const { return dim_of(r.id) + static_cast<int>(r.word.size()); }
  SimplexRef apply_degeneracy(int j, const SimplexRef& r) const;
  SimplexRef apply_face(int i, const SimplexRef& r) const;
  // y . m for a monotone m: [q] -> [dim y] given by its value list
  SimplexRef simplex_from_monotone(const std::string& y, const std::vector<int>& values) const;

  void validate() const;
  // regular: every nondeg simplex carries a full, embedded face lattice
  bool is_regular(std::string* why = nullptr) const;
  // iterated face spanned by vertex positions `keep` (ascending subset)
  SimplexRef iterated_face(const std::string& id, const std::vector<int>& keep) const;
  long euler_characteristic() const;

  // deterministic isomorphism-invariant serialization
  std::string canonical_string() const;
  // canonical traversal order of nondeg ids (the relabeling)
  std::vector<std::string> canonical_order() const;

  FiniteSimplicialSet relabeled(const std::map<std::string, std::string>& newname) const;

  const std::optional<QuotientOrigin>& origin() const { return origin_; }
  void set_origin(QuotientOrigin o) { origin_ = std::move(o); }

  nlohmann::json to_json() const;
  static FiniteSimplicialSet from_json(const nlohmann::json& j);

  bool operator==(const FiniteSimplicialSet& o) const {
    return dims_ == o.dims_ && by_dim_ == o.by_dim_ && faces_ == o.faces_ &&
           basepoint_ == o.basepoint_;
  }

private:
  std::vector<int> dims_;
  std::map<int, std::vector<std::string>> by_dim_;
  std::map<std::string, int> dim_of_;
  std::map<std::string, std::vector<SimplexRef>> faces_;
  std::optional<std::string> basepoint_;
  std::optional<QuotientOrigin> origin_;
};

// builders -------------------------------------------------------------

FiniteSimplicialSet standard_simplex(int n);
FiniteSimplicialSet boundary_simplex(int n);  // n >= 1
FiniteSimplicialSet circle();                 // Delta^1 / boundary, basepoint *
FiniteSimplicialSet point_complex();          // one vertex *, basepoint

// operations -----------------------------------------------------------

struct QuotientResult {
  FiniteSimplicialSet q;
  SimplicialMap proj;  // projection source -> q
};
QuotientResult quotient(const FiniteSimplicialSet& K, const std::vector<std::string>& sub_ids);

struct SubdivisionResult {
  FiniteSimplicialSet K;   // sd of the input
  SimplicialMap lv;        // last-vertex map sd -> input
  std::map<std::string, std::vector<std::string>> chains;  // new id -> chain of old ids
};
SubdivisionResult subdivide(const FiniteSimplicialSet& K);

struct ProductResult {
  FiniteSimplicialSet p;
  SimplicialMap pr1;  // projection to K
  SimplicialMap pr2;  // projection to L
};
ProductResult product(const FiniteSimplicialSet& K, const FiniteSimplicialSet& L);

// isomorphism by canonical relabeling; returns the nondeg-id matching if any
std::optional<std::map<std::string, std::string>> find_isomorphism(const FiniteSimplicialSet& a,
                                                                   const FiniteSimplicialSet& b);
inline bool isomorphic(const FiniteSimplicialSet& a, const FiniteSimplicialSet& b) {
  return find_isomorphism(a, b).has_value();
}

}  // namespace kklab::sset

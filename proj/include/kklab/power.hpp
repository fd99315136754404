#pragma once
// Function rings of finite simplicial sets: Z^K as the equalizer of the
// face-compatibility conditions on per-simplex polynomial tuples, with
// degree-truncated free bases, induced contravariant maps, and the
// exactness / exponential-failure checks built on top.
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kklab/hnf.hpp"
#include "kklab/poly.hpp"
#include "kklab/simplicial.hpp"

namespace kklab::power {

using ring::Exps;
using ring::IntPolynomial;
using ring::ZMat;
using ring::ZVec;

// one polynomial per nondegenerate simplex; f_x lives in Z[t1..t_{dim x}]
struct PowerElement {
  std::map<std::string, IntPolynomial> comp;

  PowerElement operator+(const PowerElement& o) const;
  PowerElement operator-(const PowerElement& o) const;
  PowerElement operator*(const PowerElement& o) const;  // componentwise
  bool operator==(const PowerElement& o) const { return comp == o.comp; }
  bool is_zero() const;
  int max_degree() const;  // -1 for zero
  std::string str() const;
};

// degree-truncated slice of Z^K (or its pointed kernel) with a canonical
// HNF basis; also acts as the coordinate chart for membership tests
class PowerBasis {
public:
  PowerBasis(const sset::FiniteSimplicialSet& K, int degree, bool pointed);

  int degree() const { return degree_; }
  bool pointed() const { return pointed_; }
  const std::vector<std::string>& simplex_ids() const { return ids_; }
  int dim_of(const std::string& id) const { return dim_.at(id); }

  long rank() const { return static_cast<long>(basis_.size()); }
  // rank of the degree-<=k subslice, 0 <= k <= degree
  long rank_upto(int k) const;
  const std::vector<PowerElement>& basis() const { return basis_; }
  const ZMat& basis_rows() const { return rows_; }
  int basis_degree(size_t i) const { return maxdeg_[i]; }

  PowerElement unit() const;  // the constant tuple 1 (compatible by construction)
  PowerElement zero() const;

  // element <-> coordinate row (raw column coordinates, adapted order);
  // to_row fails (returns false) if some monomial exceeds the degree bound
  bool to_row(const PowerElement& e, ZVec& out) const;
  PowerElement from_row(const ZVec& v) const;

  // integral membership in the computed lattice; optionally the coordinates
  // on the basis
  bool member(const PowerElement& e, ZVec* coords = nullptr) const;

  // basis dump: JSON list of {degree, basis: [per-simplex polynomial maps]}
  nlohmann::json to_json() const;

private:
  int degree_;
  bool pointed_;
  std::vector<std::string> ids_;
  std::map<std::string, int> dim_;
  struct Col {
    std::string id;
    Exps mono;
    int deg;
  };
  std::vector<Col> cols_;
  std::map<std::string, std::map<Exps, size_t, ring::GradedLexLess>> colidx_;
  ZMat rows_;  // canonical kernel basis, degree-adapted staircase
  std::vector<PowerElement> basis_;
  std::vector<int> maxdeg_;
};

// pullback of an element of Z^L along f: K -> L (contravariant)
PowerElement pullback(const sset::SimplicialMap& f, const sset::FiniteSimplicialSet& K,
                      const sset::FiniteSimplicialSet& L, const PowerElement& g);

// matrix (columns = images of src-basis elements in dst-basis coordinates)
// of the pullback along f: K -> L, src = basis of Z^L, dst = basis of Z^K
ZMat induced_matrix(const sset::SimplicialMap& f, const sset::FiniteSimplicialSet& K,
                    const sset::FiniteSimplicialSet& L, const PowerBasis& src,
                    const PowerBasis& dst);

struct ExactnessReport {
  bool pass = true;
  std::vector<std::string> failures;  // human-readable witnesses
  long rank_total = 0, rank_sub = 0, rank_quot = 0;
  int checked_degree = 0;  // d - slack
};

// K given by its nondegenerate ids inside L; star must be a vertex of the
// subcomplex.  slack < 0 means "maximal simplex dimension of L".
ExactnessReport quotient_exactness_check(const sset::FiniteSimplicialSet& L,
                                         const std::vector<std::string>& sub_ids,
                                         const std::string& star, int d, int slack = -1);

struct ExponentialFailureReport {
  std::vector<long> square_ranks;    // cumulative, degree 0..d
  std::vector<long> triangle_ranks;  // cumulative, degree 0..d
  bool fiber_product_matches = false;
  bool ranks_differ = false;
  int first_differing_degree = -1;
};
ExponentialFailureReport exponential_failure_check(int d);

}  // namespace kklab::power

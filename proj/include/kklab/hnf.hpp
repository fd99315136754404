#pragma once
// Exact integer linear algebra: row Hermite normal form with transform,
// kernels, lattice membership, integral solving.  Everything dense; the
// matrices this library produces stay small (a few hundred rows/cols).
#include <vector>

#include "kklab/ints.hpp"

namespace kklab::ring {

using ZVec = std::vector<Int>;
using ZMat = std::vector<ZVec>;  // list of rows, all the same length

// U * A = H with U unimodular; H row echelon, pivots positive, entries
// below a pivot zero, entries above reduced into [0, pivot).
struct RowHNF {
  ZMat H;
  ZMat U;
  std::vector<int> pivot_cols;
  int rank = 0;
};

RowHNF row_hnf(ZMat A);

// canonical basis (row HNF) of the right kernel {x : A x = 0}
ZMat kernel_basis(const ZMat& A);

// express v as an integer combination of the rows of B; false if impossible
bool express_in_rows(const ZMat& B, const ZVec& v, ZVec& coeffs);
inline bool in_row_lattice(const ZMat& B, const ZVec& v) {
  ZVec c;
  return express_in_rows(B, v, c);
}

// integral solution of A x = b (x = coefficients on columns); false if none
bool solve_integer(const ZMat& A, const ZVec& b, ZVec& x);

int rank_of(ZMat A);

ZMat transpose(const ZMat& A);

}  // namespace kklab::ring

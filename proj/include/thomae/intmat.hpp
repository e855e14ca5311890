#pragma once

#include <cstdint>
#include <vector>

#include "thomae/errors.hpp"

namespace thomae {

/// Small exact integer matrices for homology bookkeeping.
using IntMat = std::vector<std::vector<long long>>;

IntMat int_identity(int n);
IntMat int_mul(const IntMat& a, const IntMat& b);
IntMat int_transpose(const IntMat& a);

/// Basis of { x in Z^q : A x = 0 } as rows, via column reduction with a
/// tracked unimodular transform.
IntMat integer_kernel(const IntMat& a);

/// Given rows of K spanning a saturated rank-k sublattice of Z^r, return
/// (r-k) rows completing K to a basis of Z^r (representatives of the quotient).
IntMat saturated_complement(const IntMat& k_rows, int r);

/// Is v in the integer row span of rows?
bool in_row_span(const IntMat& rows, const std::vector<long long>& v);

/// Symplectic (Frobenius) reduction of a skew form given by `pair(u, w)` on
/// row vectors: returns C with C M C^T = standard J (a_1..a_g, b_1..b_g).
IntMat symplectic_reduce(const IntMat& m);

}  // namespace thomae

#pragma once

#include "heckeforge/common.hpp"

namespace heckeforge {

// Smith normal form of an integer matrix: U*A*V = D with U, V unimodular and D
// diagonal with d_1 | d_2 | ... (nonnegative).  Small matrices only.
struct Smith {
  IntMat u, v, d;
  // nonzero diagonal entries, in divisibility order
  IntVec invariants() const;
};

Smith smith_normal_form(IntMat a);

// Invariant factors of Z^n / column-span(A); entries > 1 are torsion orders,
// entries 0 stand for free Z factors.
IntVec lattice_quotient(const IntMat& columns, size_t ambient_rank);

}  // namespace heckeforge

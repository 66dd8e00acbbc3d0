#pragma once
// Integer lattice utilities: Hermite and Smith normal forms, integer kernels,
// saturation, membership tests, and linear Diophantine solving.

#include <optional>

#include "linterm/numeric.hpp"

namespace linterm {

// Row-style Hermite normal form. `transform * input` equals `basis` stacked
// on top of (rows - rank) zero rows; `transform` is unimodular, pivots are
// positive and strictly staircase, and entries above each pivot are reduced
// into [0, pivot).
struct HermiteForm {
  IMat basis;      // rank x cols
  IMat transform;  // rows x rows, unimodular
  int rank = 0;
};

HermiteForm hermite_form(const IMat& a);

// The nonzero rows of the Hermite form: a canonical basis of the row lattice.
IMat hermite_basis(const IMat& a);

// Rows span {x in Z^n : a x = 0}. The result is saturated.
IMat integer_kernel(const IMat& a);

// Rows span (rational row span of a) intersected with Z^n.
IMat saturation(const IMat& a);

// Membership and reduction against a staircase basis as produced by
// hermite_basis. reduce returns v minus its lattice projection (zero iff
// v lies in the lattice, which is what contains reports).
bool lattice_contains(const IMat& hnf, const IVec& v);
IVec lattice_reduce(const IMat& hnf, IVec v);

IMat stack_rows(const IMat& a, const IMat& b);

// Smith normal form: left * input * right = diag with diag(i,i) > 0 for
// i < rank, diag(i,i) | diag(i+1,i+1), and both transforms unimodular.
struct SmithForm {
  IMat left;
  IMat diag;
  IMat right;
  int rank = 0;
};

SmithForm smith_form(const IMat& a);

// One integer solution of a x = b, if any.
std::optional<IVec> solve_diophantine(const IMat& a, const IVec& b);

}  // namespace linterm

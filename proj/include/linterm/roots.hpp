#pragma once
// Exact root isolation and refinement. Real roots come from Sturm bisection;
// non-real ones from floating-point Aberth seeds promoted to certified Newton
// discs in rational arithmetic. Every returned box provably contains exactly
// one root, and the boxes are pairwise disjoint.

#include "linterm/interval.hpp"
#include "linterm/poly.hpp"

#include <vector>

namespace linterm {

// All complex roots of f (multiplicity ignored): real roots as boxes whose
// imaginary part is exactly [0,0], non-real roots in conjugate pairs. Sorted
// by (re.lo, im.lo). Degree <= 0 gives the empty list.
std::vector<ComplexInterval> isolate_roots(const IntPoly& f);

// Real roots only, as exact intervals with f nonzero at the endpoints (or
// degenerate points at rational roots), sorted ascending.
std::vector<QInterval> isolate_real_roots(const IntPoly& f);

// Shrink an isolating box for f until both sides are at most eps. The box
// must isolate a simple root of f (as produced by isolate_roots); the result
// is contained in the input.
ComplexInterval refine_root(const IntPoly& f, const ComplexInterval& box, const Rational& eps);
QInterval refine_real_root(const IntPoly& f, const QInterval& iv, const Rational& eps);

// Number of real roots of squarefree f in (a, b]; requires f(a), f(b) != 0.
int count_real_roots(const IntPoly& f, const Rational& a, const Rational& b);

// Faster entry points when the polynomial is already known irreducible (these
// skip the factorization step; behavior is undefined on reducible input).
std::vector<ComplexInterval> isolate_roots_irreducible(const IntPoly& g);
ComplexInterval refine_root_irreducible(const IntPoly& g, const ComplexInterval& box,
                                        const Rational& eps);

}  // namespace linterm

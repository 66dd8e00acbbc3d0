#pragma once
// Factorization of integer polynomials into rational irreducibles: modular
// distinct/equal-degree splitting, Hensel lifting, subset recombination.

#include "linterm/poly.hpp"

namespace linterm {

// Irreducible factors with multiplicities, each primitive with positive
// leading coefficient; the rational constant is dropped. Empty for degree <= 0.
std::vector<std::pair<IntPoly, int>> factorize(const IntPoly& f);

// Irreducible factors of a squarefree polynomial (content/sign normalized away).
std::vector<IntPoly> factor_squarefree(const IntPoly& f);

// True iff primitive_part(f) is irreducible over Q (degree >= 1).
bool is_irreducible(const IntPoly& f);

}  // namespace linterm

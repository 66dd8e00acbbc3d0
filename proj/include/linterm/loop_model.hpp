#pragma once
// Loop programs over integer vectors: the text DSL parser, normalization of
// comparisons to strict positivity, homogenization to a (d+1)x(d+1) system,
// and the loop-powering transform (update f^L with guards g_j composed with
// f^i for i < L).

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "linterm/numeric.hpp"

namespace linterm {

// x := matrix * x + offset, evaluated simultaneously (all right-hand sides
// read the pre-state).
struct AffineUpdate {
  IMat matrix;
  IVec offset;
};

// Strict inequality normal . x + constant > 0.
struct Guard {
  IVec normal;
  Int constant;
};

struct LoopProgram {
  int dimension = 0;
  std::vector<Guard> guards;  // conjunction, m >= 1
  AffineUpdate update;
  std::vector<std::string> var_names;
};

// (f(x); 1) = matrix * (x; 1); guard_rows stacks (normal^T, constant) rows.
struct HomogenizedSystem {
  IMat matrix;      // (d+1) x (d+1), last row (0,...,0,1)
  IMat guard_rows;  // m x (d+1)
};

bool operator==(const AffineUpdate& a, const AffineUpdate& b);
bool operator==(const Guard& a, const Guard& b);
bool operator==(const LoopProgram& a, const LoopProgram& b);
inline bool operator!=(const LoopProgram& a, const LoopProgram& b) { return !(a == b); }

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int column);
  int line;
  int column;
};

// Parse the loop DSL:
//   vars x, y;
//   while <affine> (> | >= | < | <= | UTF-8 geq/leq) <affine> && ... do
//     x := <affine>; ...
//   end
// Comments start with '#'. Comparisons are rewritten to strict positivity
// using integrality (e1 >= e2 becomes e1 - e2 + 1 > 0); unassigned variables
// keep their value. Throws ParseError with line/column on bad input.
LoopProgram parse_loop(const std::string& source);

// Canonical DSL text; parse_loop(print_loop(p)) == p.
std::string print_loop(const LoopProgram& p);

HomogenizedSystem homogenize(const LoopProgram& p);

// The loop with update f^L and the m*L guards g_j(f^i(x)) for 0 <= i < L,
// ordered i-major, which terminates on exactly the same inputs.
LoopProgram power_transform(const LoopProgram& p, unsigned long l);

// Powers the loop by L = lcm of the orders of root-of-unity quotients
// lambda_i/lambda_j of distinct nonzero eigenvalues of the homogenized
// matrix, making the update non-degenerate. Throws LimitError if L exceeds
// the cap.
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
std::pair<LoopProgram, unsigned long> nondegeneracy_reduction(const LoopProgram& p,
                                                              unsigned long cap = 1ul << 20);

}  // namespace linterm

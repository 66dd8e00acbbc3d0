// Hermite/Smith normal forms and the lattice queries built on them.

#include "linterm/lattice.hpp"

#include <cstdlib>
#include <stdexcept>

namespace linterm {

namespace {

Int int_abs(const Int& v) { return v < 0 ? Int(-v) : v; }

// Index of the row in [from, rows) with the smallest nonzero |entry| in
// column col, or -1 if the column is zero there.
int smallest_pivot_row(const IMat& m, int from, int col) {
  int best = -1;
  for (int r = from; r < m.rows(); ++r) {
    if (m(r, col) == 0) continue;
    if (best < 0 || int_abs(m(r, col)) < int_abs(m(best, col))) best = r;
  }
  return best;
}

}  // namespace

HermiteForm hermite_form(const IMat& a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  HermiteForm out;
  IMat h = a;
  IMat u = IMat::Identity(rows, rows);
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    // Euclidean reduction of the column below the current staircase row.
    for (;;) {
      int p = smallest_pivot_row(h, rank, col);
      if (p < 0) break;
      if (p != rank) {
        h.row(p).swap(h.row(rank));
        u.row(p).swap(u.row(rank));
      }
      bool clean = true;
      for (int r = rank + 1; r < rows; ++r) {
        if (h(r, col) == 0) continue;
        Int q = h(r, col) / h(rank, col);
        if (q != 0) {
          h.row(r) -= q * h.row(rank);
          u.row(r) -= q * u.row(rank);
        }
        if (h(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(rank, col) == 0) continue;
    if (h(rank, col) < 0) {
      h.row(rank) *= Int(-1);
      u.row(rank) *= Int(-1);
    }
    for (int r = 0; r < rank; ++r) {
      Int q = floor_div(h(r, col), h(rank, col));
      if (q != 0) {
        h.row(r) -= q * h.row(rank);
        u.row(r) -= q * u.row(rank);
      }
    }
    ++rank;
  }
  out.basis = h.topRows(rank);
  out.transform = u;
  out.rank = rank;
  return out;
}

IMat hermite_basis(const IMat& a) { return hermite_form(a).basis; }

IMat integer_kernel(const IMat& a) {
  // Left kernel of a^T: rows of the transform that map a^T to zero rows.
  IMat at = a.transpose();
  HermiteForm hf = hermite_form(at);
  IMat kern = hf.transform.bottomRows(static_cast<int>(at.rows()) - hf.rank);
  return hermite_basis(kern);
}

IMat saturation(const IMat& a) { return integer_kernel(integer_kernel(a)); }

IVec lattice_reduce(const IMat& hnf, IVec v) {
  for (int r = 0; r < hnf.rows(); ++r) {
    int c = 0;
    while (c < hnf.cols() && hnf(r, c) == 0) ++c;
    if (c == hnf.cols()) continue;
    Int q = floor_div(v(c), hnf(r, c));
    if (q != 0) v -= (q * hnf.row(r).transpose()).eval();
  }
  return v;
}

bool lattice_contains(const IMat& hnf, const IVec& v) {
  IVec r = lattice_reduce(hnf, v);
  for (int i = 0; i < r.size(); ++i)
    if (r(i) != 0) return false;
  return true;
}

IMat stack_rows(const IMat& a, const IMat& b) {
  IMat out(a.rows() + b.rows(), a.rows() > 0 ? a.cols() : b.cols());
  if (a.rows() > 0) out.topRows(a.rows()) = a;
  if (b.rows() > 0) out.bottomRows(b.rows()) = b;
  return out;
}

SmithForm smith_form(const IMat& a) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  SmithForm out;
  IMat s = a;
  IMat left = IMat::Identity(rows, rows);
  IMat right = IMat::Identity(cols, cols);
  int t = 0;
  while (t < rows && t < cols) {
    // Locate the smallest nonzero entry of the trailing block.
    int pi = -1, pj = -1;
    for (int r = t; r < rows; ++r)
      for (int c = t; c < cols; ++c) {
        if (s(r, c) == 0) continue;
        if (pi < 0 || int_abs(s(r, c)) < int_abs(s(pi, pj))) {
          pi = r;
          pj = c;
        }
      }
    if (pi < 0) break;
    if (pi != t) {
      s.row(pi).swap(s.row(t));
      left.row(pi).swap(left.row(t));
    }
    if (pj != t) {
      s.col(pj).swap(s.col(t));
      right.col(pj).swap(right.col(t));
    }
    bool dirty = false;
    for (int r = t + 1; r < rows; ++r) {
      if (s(r, t) == 0) continue;
      Int q = s(r, t) / s(t, t);
      if (q != 0) {
        s.row(r) -= q * s.row(t);
        left.row(r) -= q * left.row(t);
      }
      if (s(r, t) != 0) dirty = true;
    }
    for (int c = t + 1; c < cols; ++c) {
      if (s(t, c) == 0) continue;
      Int q = s(t, c) / s(t, t);
      if (q != 0) {
        s.col(c) -= q * s.col(t);
        right.col(c) -= q * right.col(t);
      }
      if (s(t, c) != 0) dirty = true;
    }
    if (dirty) continue;  // a smaller pivot appeared; redo the elimination
    // Enforce divisibility of the trailing block by the pivot.
    bool fixed = true;
    for (int r = t + 1; r < rows && fixed; ++r)
      for (int c = t + 1; c < cols && fixed; ++c)
        if (s(r, c) % s(t, t) != 0) {
          s.row(t) += s.row(r);
          left.row(t) += left.row(r);
          fixed = false;
        }
    if (!fixed) continue;
    if (s(t, t) < 0) {
      s.row(t) *= Int(-1);
      left.row(t) *= Int(-1);
    }
    ++t;
  }
  out.left = left;
  out.diag = s;
  out.right = right;
  out.rank = t;
  return out;
}

std::optional<IVec> solve_diophantine(const IMat& a, const IVec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve_diophantine: shape mismatch");
  SmithForm sf = smith_form(a);
  IVec rhs;
  rhs = sf.left * b;
  IVec y = IVec::Zero(a.cols());
  for (int i = 0; i < rhs.size(); ++i) {
    if (i < sf.rank) {
      if (rhs(i) % sf.diag(i, i) != 0) return std::nullopt;
      y(i) = rhs(i) / sf.diag(i, i);
    } else if (rhs(i) != 0) {
      return std::nullopt;
    }
  }
  IVec x;
  x = sf.right * y;
  return x;
}

}  // namespace linterm

// Exact rational linear programming (dense simplex with Bland's rule), integer
// feasibility for convex regions (Diophantine elimination of equalities,
// recession-cone recursion for unbounded polyhedra, branch and bound for
// bounded ones), affine hulls, and the orbit-hull search for an integer point
// in the relative interior of a stabilized orbit segment.

#include "linterm/geometry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "linterm/lattice.hpp"

namespace linterm {
namespace {

// --- conversions and small helpers ----------------------------------------

QMat to_rational(const IMat& a) {
  QMat out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = Rational(a(i, j));
  return out;
}

QVec to_rational(const IVec& v) {
  QVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

Rational dot(const QVec& a, const QVec& b) {
  Rational s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

Int round_nearest(const Rational& q) { return floor(q + Rational(1, 2)); }

// --- exact rational simplex ------------------------------------------------
//
// Minimization tableau in equality form  m z = rhs, z >= 0  with the reduced
// cost row kept explicit. Bland's rule (smallest entering index, smallest
// basic index on ratio ties) is used throughout: deterministic and免 cycling.

struct Tableau {
  QMat m;
  QVec rhs;                // kept >= 0
  QVec zrow;               // reduced costs
  Rational zval = 0;       // objective value at the current basic solution
  std::vector<int> basis;  // row -> basic column
};

void pivot(Tableau& t, int r, int c) {
  const int rows = static_cast<int>(t.m.rows());
  const int cols = static_cast<int>(t.m.cols());
  const Rational p = t.m(r, c);
  for (int j = 0; j < cols; ++j)
    if (t.m(r, j) != 0) t.m(r, j) /= p;
  t.rhs(r) /= p;
  for (int i = 0; i < rows; ++i) {
    if (i == r) continue;
    const Rational f = t.m(i, c);
    if (f == 0) continue;
    for (int j = 0; j < cols; ++j)
      if (t.m(r, j) != 0) t.m(i, j) -= f * t.m(r, j);
    t.rhs(i) -= f * t.rhs(r);
  }
  const Rational f = t.zrow(c);
  if (f != 0) {
    for (int j = 0; j < cols; ++j)
      if (t.m(r, j) != 0) t.zrow(j) -= f * t.m(r, j);
    t.zval += f * t.rhs(r);
  }
  t.basis[static_cast<size_t>(r)] = c;
}

// Returns false when the objective is unbounded below.
bool run_simplex(Tableau& t) {
  const int rows = static_cast<int>(t.m.rows());
  const int cols = static_cast<int>(t.m.cols());
  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols; ++j)
      if (t.zrow(j) < 0) {
        enter = j;
        break;
      }
    if (enter < 0) return true;
    int leave = -1;
    Rational best = 0;
    for (int i = 0; i < rows; ++i) {
      const Rational& a = t.m(i, enter);
      if (a <= 0) continue;
      Rational ratio = t.rhs(i) / a;
      if (leave < 0 || ratio < best ||
          (ratio == best &&
           t.basis[static_cast<size_t>(i)] < t.basis[static_cast<size_t>(leave)])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) return false;
    pivot(t, leave, enter);
  }
}

struct SimplexOutcome {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  QVec x;
};

// maximize obj . x  s.t.  A x + b >= 0, E x + e == 0, x free. Free variables
// are split x = xp - xn; inequalities get slack variables; phase one runs with
// one artificial per row.
SimplexOutcome solve_lp(const QVec& obj, const QMat& A, const QVec& b, const QMat& E,
                        const QVec& e) {
  const int d = static_cast<int>(obj.size());
  const int r1 = static_cast<int>(A.rows());
  const int r2 = static_cast<int>(E.rows());
  const int rows0 = r1 + r2;
  const int real_cols = 2 * d + r1;

  QMat base = QMat::Zero(rows0, real_cols);
  QVec rhs0 = QVec::Zero(rows0);
  for (int i = 0; i < r1; ++i) {
    for (int j = 0; j < d; ++j) {
      base(i, j) = A(i, j);
      base(i, d + j) = -A(i, j);
    }
    base(i, 2 * d + i) = -1;  // A x - s = -b
    rhs0(i) = -b(i);
  }
  for (int i = 0; i < r2; ++i) {
    for (int j = 0; j < d; ++j) {
      base(r1 + i, j) = E(i, j);
      base(r1 + i, d + j) = -E(i, j);
    }
    rhs0(r1 + i) = -e(i);
  }
  for (int i = 0; i < rows0; ++i) {
    if (rhs0(i) < 0) {
      for (int j = 0; j < real_cols; ++j) base(i, j) = -base(i, j);
      rhs0(i) = -rhs0(i);
    }
  }

  // Phase one: minimize the sum of artificials.
  Tableau t;
  t.m = QMat::Zero(rows0, real_cols + rows0);
  for (int i = 0; i < rows0; ++i) {
    for (int j = 0; j < real_cols; ++j) t.m(i, j) = base(i, j);
    t.m(i, real_cols + i) = 1;
  }
  t.rhs = rhs0;
  t.basis.resize(static_cast<size_t>(rows0));
  for (int i = 0; i < rows0; ++i) t.basis[static_cast<size_t>(i)] = real_cols + i;
  t.zrow = QVec::Zero(real_cols + rows0);
  for (int j = 0; j < real_cols; ++j) {
    Rational s = 0;
    for (int i = 0; i < rows0; ++i) s += t.m(i, j);
    t.zrow(j) = -s;
  }
  t.zval = 0;
  for (int i = 0; i < rows0; ++i) t.zval += t.rhs(i);
  if (!run_simplex(t)) throw std::logic_error("simplex: phase one unbounded");
  if (t.zval > 0) return SimplexOutcome{LpStatus::infeasible, Rational(0), QVec()};

  // Drive leftover artificials out of the basis (their value is zero); rows
  // they cannot leave are redundant and dropped.
  std::vector<int> keep;
  for (int i = 0; i < rows0; ++i) {
    if (t.basis[static_cast<size_t>(i)] < real_cols) {
      keep.push_back(i);
      continue;
    }
    int c = -1;
    for (int j = 0; j < real_cols; ++j)
      if (t.m(i, j) != 0) {
        c = j;
        break;
      }
    if (c >= 0) {
      pivot(t, i, c);
      keep.push_back(i);
    }
  }

  // Phase two on the real columns only.
  const int rows2 = static_cast<int>(keep.size());
  Tableau t2;
  t2.m = QMat::Zero(rows2, real_cols);
  t2.rhs = QVec::Zero(rows2);
  t2.basis.resize(static_cast<size_t>(rows2));
  for (int i2 = 0; i2 < rows2; ++i2) {
    const int i = keep[static_cast<size_t>(i2)];
    for (int j = 0; j < real_cols; ++j) t2.m(i2, j) = t.m(i, j);
    t2.rhs(i2) = t.rhs(i);
    t2.basis[static_cast<size_t>(i2)] = t.basis[static_cast<size_t>(i)];
  }
  QVec cost = QVec::Zero(real_cols);
  for (int j = 0; j < d; ++j) {
    cost(j) = -obj(j);  // minimize -obj
    cost(d + j) = obj(j);
  }
  t2.zrow = cost;
  t2.zval = 0;
  for (int i = 0; i < rows2; ++i) {
    const Rational cb = cost(t2.basis[static_cast<size_t>(i)]);
    if (cb == 0) continue;
    for (int j = 0; j < real_cols; ++j)
      if (t2.m(i, j) != 0) t2.zrow(j) -= cb * t2.m(i, j);
    t2.zval += cb * t2.rhs(i);
  }
  if (!run_simplex(t2)) return SimplexOutcome{LpStatus::unbounded, Rational(0), QVec()};

  QVec x = QVec::Zero(d);
  for (int i = 0; i < rows2; ++i) {
    const int c = t2.basis[static_cast<size_t>(i)];
    if (c < d)
      x(c) += t2.rhs(i);
    else if (c < 2 * d)
      x(c - d) -= t2.rhs(i);
  }
  return SimplexOutcome{LpStatus::optimal, -t2.zval, x};
}

// Phase-one-only wrapper: any feasible point, or nullopt.
std::optional<QVec> feasible_point(const QMat& A, const QVec& b, int d) {
  SimplexOutcome out = solve_lp(QVec::Zero(d), A, b, QMat(), QVec());
  if (out.status == LpStatus::infeasible) return std::nullopt;
  return out.x;
}

// --- exact rational Gauss-Jordan -------------------------------------------

QMat q_inverse(QMat a) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("q_inverse: matrix not square");
  QMat inv = QMat::Zero(n, n);
  for (int i = 0; i < n; ++i) inv(i, i) = 1;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::invalid_argument("q_inverse: singular matrix");
    if (piv != col) {
      a.row(piv).swap(a.row(col));
      inv.row(piv).swap(inv.row(col));
    }
    const Rational p = a(col, col);
    for (int j = 0; j < n; ++j) {
      if (a(col, j) != 0) a(col, j) /= p;
      if (inv(col, j) != 0) inv(col, j) /= p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Rational f = a(r, col);
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) {
        if (a(col, j) != 0) a(r, j) -= f * a(col, j);
        if (inv(col, j) != 0) inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// Exact inverse of a unimodular integer matrix.
IMat int_inverse(const IMat& a) {
  QMat qi = q_inverse(to_rational(a));
  IMat out(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (den(qi(i, j)) != 1) throw std::logic_error("int_inverse: input not unimodular");
      out(i, j) = num(qi(i, j));
    }
  return out;
}

// Scale a nonzero rational vector to a primitive integer vector.
IVec primitive_direction(const QVec& w) {
  Int scale = 1;
  for (Eigen::Index i = 0; i < w.size(); ++i) scale = lcm(scale, den(w(i)));
  IVec v(w.size());
  Int g = 0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    v(i) = num(w(i) * Rational(scale));
    g = gcd(g, v(i));
  }
  if (g == 0) throw std::invalid_argument("primitive_direction: zero vector");
  if (g > 1)
    for (Eigen::Index i = 0; i < w.size(); ++i) v(i) /= g;
  return v;
}

// A nonzero integer vector of the cone {w : A w >= 0}, if one exists. Probes
// max +-w_i over the cone intersected with the unit box; any positive optimum
// scales to a cone direction.
std::optional<IVec> recession_direction(const QMat& A) {
  const int k = static_cast<int>(A.cols());
  const int r = static_cast<int>(A.rows());
  if (k == 0) return std::nullopt;
  QMat C = QMat::Zero(r + 2 * k, k);
  QVec cb = QVec::Zero(r + 2 * k);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < k; ++j) C(i, j) = A(i, j);
  for (int i = 0; i < k; ++i) {
    C(r + 2 * i, i) = -1;  // 1 - w_i >= 0
    cb(r + 2 * i) = 1;
    C(r + 2 * i + 1, i) = 1;  // 1 + w_i >= 0
    cb(r + 2 * i + 1) = 1;
  }
  for (int i = 0; i < k; ++i) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      QVec obj = QVec::Zero(k);
      obj(i) = sgn == 0 ? Rational(1) : Rational(-1);
      SimplexOutcome out = solve_lp(obj, C, cb, QMat(), QVec());
      if (out.status != LpStatus::optimal)
        throw std::logic_error("recession_direction: box-bounded probe not optimal");
      if (out.value > 0) return primitive_direction(out.x);
    }
  }
  return std::nullopt;
}

bool satisfies_rows(const QMat& A, const QVec& b, const IVec& u) {
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    Rational s = b(i);
    for (Eigen::Index j = 0; j < A.cols(); ++j) s += A(i, j) * Rational(u(j));
    if (s < 0) return false;
  }
  return true;
}

// --- integer feasibility of a rational polyhedron --------------------------

struct PolySearch {
  IntegerPointStatus status = IntegerPointStatus::undecided;
  IVec point;
};

// Integer u with A u + b >= 0. Unbounded polyhedra are reduced by splitting
// off a recession direction w: in the unimodular coordinates [w | W] the
// rows with A w > 0 hold for any W-part once the w-coefficient is large, and
// the rows with A w = 0 constrain the W-part alone, giving a full-rank
// subproblem in one fewer variable. This recursion is complete for rational
// polyhedra; only branch-and-bound node exhaustion yields undecided.
PolySearch poly_integer_point(const QMat& A, const QVec& b, long long& nodes) {
  const int k = static_cast<int>(A.cols());
  const int r = static_cast<int>(A.rows());
  if (nodes-- <= 0) return PolySearch{IntegerPointStatus::undecided, IVec()};
  if (k == 0) {
    for (int i = 0; i < r; ++i)
      if (b(i) < 0) return PolySearch{IntegerPointStatus::empty, IVec()};
    return PolySearch{IntegerPointStatus::point, IVec(0)};
  }
  if (!feasible_point(A, b, k)) return PolySearch{IntegerPointStatus::empty, IVec()};

  if (std::optional<IVec> w = recession_direction(A)) {
    IMat wcol(k, 1);
    for (int i = 0; i < k; ++i) wcol(i, 0) = (*w)(i);
    HermiteForm hf = hermite_form(wcol);
    IMat winv = int_inverse(hf.transform);  // first column is w itself
    IMat W(k, k - 1);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j + 1 < k; ++j) W(i, j) = winv(i, j + 1);
    QVec aw(r);
    for (int i = 0; i < r; ++i) {
      Rational s = 0;
      for (int j = 0; j < k; ++j) s += A(i, j) * Rational((*w)(j));
      aw(i) = s;
      if (s < 0) throw std::logic_error("poly_integer_point: invalid recession direction");
    }
    QMat AW(r, k - 1);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j + 1 < k; ++j) {
        Rational s = 0;
        for (int l = 0; l < k; ++l) s += A(i, l) * Rational(W(l, j));
        AW(i, j) = s;
      }
    std::vector<int> zero_rows;
    for (int i = 0; i < r; ++i)
      if (aw(i) == 0) zero_rows.push_back(i);
    QMat A2(static_cast<Eigen::Index>(zero_rows.size()), k - 1);
    QVec b2(static_cast<Eigen::Index>(zero_rows.size()));
    for (size_t i = 0; i < zero_rows.size(); ++i) {
      for (int j = 0; j + 1 < k; ++j) A2(static_cast<Eigen::Index>(i), j) = AW(zero_rows[i], j);
      b2(static_cast<Eigen::Index>(i)) = b(zero_rows[i]);
    }
    PolySearch sub = poly_integer_point(A2, b2, nodes);
    if (sub.status != IntegerPointStatus::point) return sub;
    // Lift: choose the w-coefficient large enough for every positive row.
    Int a = 0;
    for (int i = 0; i < r; ++i) {
      if (aw(i) <= 0) continue;
      Rational val = b(i);
      for (int j = 0; j + 1 < k; ++j) val += AW(i, j) * Rational(sub.point(j));
      Int need = ceil(-val / aw(i));
      if (need > a) a = need;
    }
    IVec u(k);
    for (int i = 0; i < k; ++i) {
      Int s = a * (*w)(i);
      for (int j = 0; j + 1 < k; ++j) s += W(i, j) * sub.point(j);
      u(i) = s;
    }
    if (!satisfies_rows(A, b, u)) throw std::logic_error("poly_integer_point: bad lift");
    return PolySearch{IntegerPointStatus::point, u};
  }

  // Bounded polyhedron: integer coordinate bounds, then branch and bound.
  IVec lo(k), hi(k);
  for (int i = 0; i < k; ++i) {
    QVec obj = QVec::Zero(k);
    obj(i) = 1;
    SimplexOutcome mx = solve_lp(obj, A, b, QMat(), QVec());
    obj(i) = -1;
    SimplexOutcome mn = solve_lp(obj, A, b, QMat(), QVec());
    if (mx.status != LpStatus::optimal || mn.status != LpStatus::optimal)
      throw std::logic_error("poly_integer_point: bounded region with unbounded coordinate");
    hi(i) = floor(mx.value);
    lo(i) = ceil(-mn.value);
    if (lo(i) > hi(i)) return PolySearch{IntegerPointStatus::empty, IVec()};
  }

  // Node system: original rows plus one box row per bound, constants updated
  // per node.
  const int rows = r + 2 * k;
  QMat NA = QMat::Zero(rows, k);
  QVec nb = QVec::Zero(rows);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < k; ++j) NA(i, j) = A(i, j);
    nb(i) = b(i);
  }
  for (int i = 0; i < k; ++i) {
    NA(r + 2 * i, i) = 1;       // u_i - lo_i >= 0
    NA(r + 2 * i + 1, i) = -1;  // hi_i - u_i >= 0
  }

  struct Node {
    IVec lo, hi;
  };
  std::vector<Node> stack;
  stack.push_back(Node{lo, hi});
  while (!stack.empty()) {
    if (nodes-- <= 0) return PolySearch{IntegerPointStatus::undecided, IVec()};
    Node nd = stack.back();
    stack.pop_back();
    for (int i = 0; i < k; ++i) {
      nb(r + 2 * i) = Rational(-nd.lo(i));
      nb(r + 2 * i + 1) = Rational(nd.hi(i));
    }
    std::optional<QVec> q = feasible_point(NA, nb, k);
    if (!q) continue;
    int frac = -1;
    Rational best_dist = 0;
    for (int i = 0; i < k; ++i) {
      const Rational& qi = (*q)(i);
      if (is_integer(qi)) continue;
      Rational f = Rational(floor(qi));
      Rational dist = std::min(qi - f, f + 1 - qi);
      if (frac < 0 || dist > best_dist) {
        frac = i;
        best_dist = dist;
      }
    }
    if (frac < 0) {
      IVec u(k);
      for (int i = 0; i < k; ++i) u(i) = num((*q)(i));
      return PolySearch{IntegerPointStatus::point, u};
    }
    // Rounding heuristic before splitting: the nearest integer point of the
    // relaxation point often already satisfies everything.
    IVec ur(k);
    for (int i = 0; i < k; ++i) {
      Int v = round_nearest((*q)(i));
      if (v < nd.lo(i)) v = nd.lo(i);
      if (v > nd.hi(i)) v = nd.hi(i);
      ur(i) = v;
    }
    if (satisfies_rows(A, b, ur)) return PolySearch{IntegerPointStatus::point, ur};
    const Int f = floor((*q)(frac));
    Node up = nd;
    up.lo(frac) = f + 1;
    if (up.lo(frac) <= up.hi(frac)) stack.push_back(up);
    Node down = nd;
    down.hi(frac) = f;
    if (down.lo(frac) <= down.hi(frac)) stack.push_back(down);  // explored first
  }
  return PolySearch{IntegerPointStatus::empty, IVec()};
}

// --- incremental reduced row echelon basis ---------------------------------

struct RrefBasis {
  std::vector<QVec> rows;  // leading coefficient 1, mutually reduced
  std::vector<int> leads;  // strictly increasing order maintained on insert

  QVec reduce(QVec v) const {
    for (size_t i = 0; i < rows.size(); ++i) {
      const Rational f = v(leads[i]);
      if (f == 0) continue;
      for (Eigen::Index j = 0; j < v.size(); ++j)
        if (rows[i](j) != 0) v(j) -= f * rows[i](j);
    }
    return v;
  }

  static bool is_zero(const QVec& v) {
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (v(j) != 0) return false;
    return true;
  }

  // Returns true when the vector enlarged the span.
  bool insert(const QVec& v0) {
    QVec v = reduce(v0);
    int lead = -1;
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (v(j) != 0) {
        lead = static_cast<int>(j);
        break;
      }
    if (lead < 0) return false;
    const Rational p = v(lead);
    for (Eigen::Index j = 0; j < v.size(); ++j)
      if (v(j) != 0) v(j) /= p;
    for (size_t i = 0; i < rows.size(); ++i) {
      const Rational f = rows[i](lead);
      if (f == 0) continue;
      for (Eigen::Index j = 0; j < v.size(); ++j)
        if (v(j) != 0) rows[i](j) -= f * v(j);
    }
    size_t pos = 0;
    while (pos < leads.size() && leads[pos] < lead) ++pos;
    rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(pos), v);
    leads.insert(leads.begin() + static_cast<std::ptrdiff_t>(pos), lead);
    return true;
  }
};

// --- 2-D convex hull (exact, integer coordinates) ---------------------------

Int cross2(const IVec& o, const IVec& a, const IVec& b) {
  return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

bool lex_less(const IVec& a, const IVec& b) {
  return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
}

// Counterclockwise hull of distinct points, collinear points dropped.
std::vector<IVec> hull2(std::vector<IVec> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<IVec> h(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower hull
    while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper hull
    while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

bool strictly_inside2(const std::vector<IVec>& hull, const IVec& q) {
  const size_t n = hull.size();
  if (n < 3) return false;
  for (size_t i = 0; i < n; ++i) {
    if (cross2(hull[i], hull[(i + 1) % n], q) <= 0) return false;
  }
  return true;
}

// --- shell enumeration -------------------------------------------------------

// Visit integer offsets of l-infinity norm exactly rad in dimension dim, in
// lexicographic order. Visitor returns true to stop; the function reports
// whether it was stopped.
template <typename F>
bool visit_shell(int dim, long rad, F&& f) {
  std::vector<long> off(static_cast<size_t>(dim), -rad);
  for (;;) {
    long mx = 0;
    for (long v : off) mx = std::max(mx, v < 0 ? -v : v);
    if (mx == rad && f(off)) return true;
    int i = dim - 1;
    while (i >= 0 && off[static_cast<size_t>(i)] == rad) {
      off[static_cast<size_t>(i)] = -rad;
      --i;
    }
    if (i < 0) return false;
    ++off[static_cast<size_t>(i)];
  }
}

// --- relative interior search on the orbit lattice ---------------------------

struct RelintHit {
  IVec point;                          // ambient integer point
  std::vector<IVec> support;           // ambient support points of the certificate
  std::vector<Rational> coefficients;  // all positive, sum 1, combine to point
};

// Convex-combination certificate in one lattice coordinate: every support
// point gets a uniform floor eps, the remainder is carried by the two
// extremes; eps is halved until the shifted target stays strictly between
// them (it converges to the target, which is strictly interior).
std::vector<Rational> positive_combination_1d(const std::vector<Int>& us, const Int& q) {
  const size_t m = us.size();
  size_t lo_ix = 0, hi_ix = 0;
  Rational sum = 0;
  for (size_t i = 0; i < m; ++i) {
    if (us[i] < us[lo_ix]) lo_ix = i;
    if (us[i] > us[hi_ix]) hi_ix = i;
    sum += Rational(us[i]);
  }
  const Rational lo(us[lo_ix]), hi(us[hi_ix]), qr(q);
  Rational eps(1, 2 * static_cast<long>(m));
  for (;;) {
    const Rational rem = 1 - Rational(static_cast<long>(m)) * eps;
    const Rational qp = (qr - eps * sum) / rem;
    if (lo < qp && qp < hi) {
      const Rational beta = (hi - qp) / (hi - lo);
      std::vector<Rational> alpha(m, eps);
      alpha[lo_ix] += rem * beta;
      alpha[hi_ix] += rem * (1 - beta);
      return alpha;
    }
    eps /= 2;
  }
}

// Same scheme in two lattice coordinates: the remainder is placed on a fan
// triangle of the hull containing the shifted target, with nonnegative
// barycentric weights; the uniform eps floor keeps every coefficient positive.
std::vector<Rational> positive_combination_2d(const std::vector<IVec>& us,
                                              const std::vector<IVec>& hull, const IVec& q) {
  const size_t m = us.size();
  Rational sx = 0, sy = 0;
  for (const IVec& u : us) {
    sx += Rational(u(0));
    sy += Rational(u(1));
  }
  auto index_of = [&](const IVec& v) -> size_t {
    for (size_t i = 0; i < m; ++i)
      if (us[i](0) == v(0) && us[i](1) == v(1)) return i;
    throw std::logic_error("positive_combination_2d: hull vertex not in support");
  };
  Rational eps(1, 2 * static_cast<long>(m));
  for (;;) {
    const Rational rem = 1 - Rational(static_cast<long>(m)) * eps;
    const Rational qx = (Rational(q(0)) - eps * sx) / rem;
    const Rational qy = (Rational(q(1)) - eps * sy) / rem;
    for (size_t j = 1; j + 1 < hull.size(); ++j) {
      const IVec &v0 = hull[0], &v1 = hull[j], &v2 = hull[j + 1];
      const Rational ax(v1(0) - v0(0)), ay(v1(1) - v0(1));
      const Rational bx(v2(0) - v0(0)), by(v2(1) - v0(1));
      const Rational det = ax * by - ay * bx;
      if (det == 0) continue;
      const Rational px = qx - Rational(v0(0)), py = qy - Rational(v0(1));
      const Rational l1 = (px * by - py * bx) / det;
      const Rational l2 = (ax * py - ay * px) / det;
      const Rational l0 = 1 - l1 - l2;
      if (l0 < 0 || l1 < 0 || l2 < 0) continue;
      std::vector<Rational> alpha(m, eps);
      alpha[index_of(v0)] += rem * l0;
      alpha[index_of(v1)] += rem * l1;
      alpha[index_of(v2)] += rem * l2;
      return alpha;
    }
    eps /= 2;
  }
}

struct RelintContext {
  int d0 = 0;
  IMat lattice;           // d0 x d, rows: basis of the direction lattice
  IVec zstar;             // ambient base point
  std::vector<IVec> us;   // distinct support points in lattice coordinates
  std::vector<IVec> amb;  // same points in ambient coordinates
  std::function<bool(const IVec&)> accept;  // empty accepts everything
};

bool hit_accepted(const RelintContext& c, const IVec& ambient) {
  return !c.accept || c.accept(ambient);
}

IVec ambient_of(const RelintContext& c, const IVec& u) {
  IVec x = c.zstar;
  for (int j = 0; j < c.d0; ++j)
    for (Eigen::Index t = 0; t < x.size(); ++t) x(t) += c.lattice(j, t) * u(j);
  return x;
}

// Strict-interior search for d0 >= 3: a small LP maximizes the minimum
// coefficient; to keep the LP small the support is thinned to an affinely
// spanning frame plus the most recent points (a subset hull's interior is a
// subset of the full hull's interior once the frame fixes the dimension).
std::optional<RelintHit> relint_generic(const RelintContext& c) {
  const size_t m_all = c.us.size();
  std::vector<char> picked(m_all, 0);
  std::vector<size_t> pick;
  picked[0] = 1;
  pick.push_back(0);
  RrefBasis frame;
  for (size_t i = 1; i < m_all; ++i) {
    QVec dir(c.d0);
    for (int j = 0; j < c.d0; ++j) dir(j) = Rational(c.us[i](j) - c.us[0](j));
    if (frame.insert(dir)) {
      picked[i] = 1;
      pick.push_back(i);
    }
  }
  const size_t cap = 48;
  for (size_t i = m_all; i-- > 0 && pick.size() < cap;) {
    if (!picked[i]) {
      picked[i] = 1;
      pick.push_back(i);
    }
  }
  std::sort(pick.begin(), pick.end());
  const size_t m = pick.size();

  QVec centroid = QVec::Zero(c.d0);
  for (size_t i : pick)
    for (int j = 0; j < c.d0; ++j) centroid(j) += Rational(c.us[i](j));
  for (int j = 0; j < c.d0; ++j) centroid(j) /= Rational(static_cast<long>(m));

  // Candidate targets: floor/ceil corners of the centroid, then small shells.
  std::set<std::vector<Int>> tried;
  std::vector<IVec> candidates;
  auto push_candidate = [&](const IVec& q) {
    std::vector<Int> key(q.data(), q.data() + q.size());
    if (tried.insert(key).second) candidates.push_back(q);
  };
  {
    std::vector<long> sel(static_cast<size_t>(c.d0), 0);
    for (;;) {
      IVec q(c.d0);
      for (int j = 0; j < c.d0; ++j) {
        q(j) = sel[static_cast<size_t>(j)] == 0 ? floor(centroid(j)) : ceil(centroid(j));
      }
      push_candidate(q);
      int i = c.d0 - 1;
      while (i >= 0 && sel[static_cast<size_t>(i)] == 1) sel[static_cast<size_t>(i--)] = 0;
      if (i < 0) break;
      sel[static_cast<size_t>(i)] = 1;
    }
    IVec center(c.d0);
    for (int j = 0; j < c.d0; ++j) center(j) = round_nearest(centroid(j));
    for (long rad = 1; rad <= 2 && candidates.size() < 128; ++rad) {
      visit_shell(c.d0, rad, [&](const std::vector<long>& off) {
        IVec q = center;
        for (int j = 0; j < c.d0; ++j) q(j) += Int(off[static_cast<size_t>(j)]);
        push_candidate(q);
        return candidates.size() >= 128;
      });
    }
  }

  // LP over (alpha_1..alpha_m, t): maximize t subject to alpha_i - t >= 0,
  // sum alpha = 1, sum alpha u_i = q. Positive optimum certifies strict
  // interiority with the alphas as certificate.
  for (const IVec& q : candidates) {
    const int vars = static_cast<int>(m) + 1;
    QMat A = QMat::Zero(static_cast<Eigen::Index>(m), vars);
    QVec b = QVec::Zero(static_cast<Eigen::Index>(m));
    for (size_t i = 0; i < m; ++i) {
      A(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1;
      A(static_cast<Eigen::Index>(i), vars - 1) = -1;
    }
    QMat E = QMat::Zero(c.d0 + 1, vars);
    QVec e = QVec::Zero(c.d0 + 1);
    for (size_t i = 0; i < m; ++i) E(0, static_cast<Eigen::Index>(i)) = 1;
    e(0) = -1;
    for (int r = 0; r < c.d0; ++r) {
      for (size_t i = 0; i < m; ++i)
        E(r + 1, static_cast<Eigen::Index>(i)) = Rational(c.us[pick[i]](r));
      e(r + 1) = Rational(-q(r));
    }
    QVec obj = QVec::Zero(vars);
    obj(vars - 1) = 1;
    SimplexOutcome out = solve_lp(obj, A, b, E, e);
    if (out.status != LpStatus::optimal || out.value <= 0) continue;
    RelintHit hit;
    hit.point = ambient_of(c, q);
    hit.support.reserve(m);
    hit.coefficients.reserve(m);
    for (size_t i = 0; i < m; ++i) {
      hit.support.push_back(c.amb[pick[i]]);
      hit.coefficients.push_back(out.x(static_cast<Eigen::Index>(i)));
    }
    return hit;
  }
  return std::nullopt;
}

std::optional<RelintHit> relint_search(const RelintContext& c) {
  if (c.d0 == 0) {
    if (!hit_accepted(c, c.zstar)) return std::nullopt;
    RelintHit hit;
    hit.point = c.zstar;
    hit.support.push_back(c.zstar);
    hit.coefficients.push_back(Rational(1));
    return hit;
  }
  if (c.d0 == 1) {
    Int lo = c.us[0](0), hi = c.us[0](0);
    Rational mean = 0;
    for (const IVec& u : c.us) {
      lo = std::min(lo, u(0));
      hi = std::max(hi, u(0));
      mean += Rational(u(0));
    }
    if (hi - lo < 2) return std::nullopt;
    mean /= Rational(static_cast<long>(c.us.size()));
    Int q = round_nearest(mean);
    if (q <= lo) q = lo + 1;
    if (q >= hi) q = hi - 1;
    std::vector<Int> us1;
    us1.reserve(c.us.size());
    for (const IVec& u : c.us) us1.push_back(u(0));
    RelintHit hit;
    IVec qv(1);
    qv(0) = q;
    hit.point = ambient_of(c, qv);
    hit.support = c.amb;
    hit.coefficients = positive_combination_1d(us1, q);
    return hit;
  }
  if (c.d0 == 2) {
    std::vector<IVec> hull = hull2(c.us);
    if (hull.size() < 3) return std::nullopt;
    Rational cx = 0, cy = 0;
    for (const IVec& u : c.us) {
      cx += Rational(u(0));
      cy += Rational(u(1));
    }
    cx /= Rational(static_cast<long>(c.us.size()));
    cy /= Rational(static_cast<long>(c.us.size()));
    IVec center(2);
    center(0) = round_nearest(cx);
    center(1) = round_nearest(cy);
    Int rcap = 0;
    for (const IVec& v : hull) {
      Int dx = v(0) - center(0);
      if (dx < 0) dx = -dx;
      Int dy = v(1) - center(1);
      if (dy < 0) dy = -dy;
      rcap = std::max(rcap, std::max(dx, dy));
    }
    long budget = 4096;
    std::optional<IVec> found;
    for (long rad = 0; Int(rad) <= rcap && budget > 0 && !found; ++rad) {
      visit_shell(2, rad, [&](const std::vector<long>& off) {
        if (budget <= 0) return true;
        --budget;
        IVec q = center;
        q(0) += Int(off[0]);
        q(1) += Int(off[1]);
        if (strictly_inside2(hull, q)) {
          found = q;
          return true;
        }
        return false;
      });
    }
    if (found) {
      RelintHit hit;
      hit.point = ambient_of(c, *found);
      hit.support = c.amb;
      hit.coefficients = positive_combination_2d(c.us, hull, *found);
      return hit;
    }
    return std::nullopt;
  }
  return relint_generic(c);
}

std::vector<Int> point_key(const IVec& v) {
  return std::vector<Int>(v.data(), v.data() + v.size());
}

}  // namespace

// --- region builders ---------------------------------------------------------

void add_equality(ConvexRegion& r, const QVec& gradient, const Rational& constant) {
  if (static_cast<int>(gradient.size()) != r.ambient_dimension)
    throw std::invalid_argument("add_equality: gradient dimension mismatch");
  const Eigen::Index rows = r.eq_rows.rows();
  QMat next(rows + 1, r.ambient_dimension);
  QVec nextc(rows + 1);
  if (rows > 0) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index j = 0; j < r.eq_rows.cols(); ++j) next(i, j) = r.eq_rows(i, j);
      nextc(i) = r.eq_consts(i);
    }
  }
  for (Eigen::Index j = 0; j < gradient.size(); ++j) next(rows, j) = gradient(j);
  nextc(rows) = constant;
  r.eq_rows = std::move(next);
  r.eq_consts = std::move(nextc);
}

void add_inequality(ConvexRegion& r, const QVec& gradient, const Rational& constant) {
  if (static_cast<int>(gradient.size()) != r.ambient_dimension)
    throw std::invalid_argument("add_inequality: gradient dimension mismatch");
  r.inequalities.push_back(AffineForm{gradient, constant});
}

void add_field_equality(ConvexRegion& r, const QMat& gradients, const QVec& constants) {
  if (gradients.rows() != constants.size())
    throw std::invalid_argument("add_field_equality: row count mismatch");
  for (Eigen::Index i = 0; i < gradients.rows(); ++i) {
    QVec g(gradients.cols());
    for (Eigen::Index j = 0; j < gradients.cols(); ++j) g(j) = gradients(i, j);
    add_equality(r, g, constants(i));
  }
}

// --- linear programming --------------------------------------------------------

LpResult lp_optimize(const QVec& objective, const QMat& ineq, const QVec& ineq_consts,
                     const QMat& eq, const QVec& eq_consts) {
  const int d = static_cast<int>(objective.size());
  if (ineq.rows() != ineq_consts.size())
    throw std::invalid_argument("lp_optimize: inequality row/constant mismatch");
  if (ineq.rows() > 0 && static_cast<int>(ineq.cols()) != d)
    throw std::invalid_argument("lp_optimize: inequality column mismatch");
  if (eq.rows() != eq_consts.size())
    throw std::invalid_argument("lp_optimize: equality row/constant mismatch");
  if (eq.rows() > 0 && static_cast<int>(eq.cols()) != d)
    throw std::invalid_argument("lp_optimize: equality column mismatch");
  SimplexOutcome out = solve_lp(objective, ineq, ineq_consts, eq, eq_consts);
  LpResult res;
  res.status = out.status;
  if (out.status == LpStatus::optimal) {
    res.objective = out.value;
    res.argument = out.x;
  }
  return res;
}

// --- integer feasibility ---------------------------------------------------------

IntegerPointResult integer_point(const ConvexRegion& r, const GeometryBudget& budget) {
  const int d = r.ambient_dimension;
  if (d < 0) throw std::invalid_argument("integer_point: negative dimension");
  for (const AffineForm& f : r.inequalities)
    if (static_cast<int>(f.gradient.size()) != d)
      throw std::invalid_argument("integer_point: inequality dimension mismatch");
  if (r.eq_rows.rows() > 0 && static_cast<int>(r.eq_rows.cols()) != d)
    throw std::invalid_argument("integer_point: equality dimension mismatch");

  // Equalities: one integer solution plus the integer kernel, by clearing
  // denominators row by row.
  IVec xp;
  IMat K;
  if (r.eq_rows.rows() > 0) {
    const Eigen::Index m = r.eq_rows.rows();
    IMat E(m, d);
    IVec c(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      Int scale = den(r.eq_consts(i));
      for (Eigen::Index j = 0; j < d; ++j) scale = lcm(scale, den(r.eq_rows(i, j)));
      for (Eigen::Index j = 0; j < d; ++j) E(i, j) = num(r.eq_rows(i, j) * Rational(scale));
      c(i) = num(r.eq_consts(i) * Rational(scale));
    }
    IVec rhs(m);
    for (Eigen::Index i = 0; i < m; ++i) rhs(i) = -c(i);
    std::optional<IVec> sol = solve_diophantine(E, rhs);
    if (!sol)
      return IntegerPointResult{IntegerPointStatus::empty, IVec(),
                                "equalities have no integer solution"};
    xp = *sol;
    K = integer_kernel(E);
  } else {
    xp = IVec::Zero(d);
    K = IMat::Zero(d, d);
    for (int i = 0; i < d; ++i) K(i, i) = 1;
  }
  const int k = static_cast<int>(K.rows());
  const QVec xpq = to_rational(xp);

  // Inequalities transported to kernel coordinates x = xp + K^T u.
  const Eigen::Index m_in = static_cast<Eigen::Index>(r.inequalities.size());
  QMat A = QMat::Zero(m_in, k);
  QVec b(m_in);
  for (Eigen::Index i = 0; i < m_in; ++i) {
    const AffineForm& f = r.inequalities[static_cast<size_t>(i)];
    for (int j = 0; j < k; ++j) {
      Rational s = 0;
      for (Eigen::Index t = 0; t < d; ++t) s += Rational(K(j, t)) * f.gradient(t);
      A(i, j) = s;
    }
    b(i) = dot(f.gradient, xpq) + f.constant;
  }
  auto lift = [&](const IVec& u) {
    IVec x = xp;
    for (int j = 0; j < k; ++j)
      for (Eigen::Index t = 0; t < d; ++t) x(t) += K(j, t) * u(j);
    return x;
  };

  if (r.concave.empty()) {
    long long nodes = budget.max_nodes;
    PolySearch ps = poly_integer_point(A, b, nodes);
    IntegerPointResult res;
    res.status = ps.status;
    if (ps.status == IntegerPointStatus::point) {
      res.point = lift(ps.point);
      for (const AffineForm& f : r.inequalities)
        if (f.eval(to_rational(res.point)) < 0)
          throw std::logic_error("integer_point: candidate fails re-verification");
    } else if (ps.status == IntegerPointStatus::undecided) {
      res.note = "branch-and-bound node budget exhausted";
    }
    return res;
  }

  // Concave constraints: enumerate the integer points of the polyhedral part
  // (it must be bounded), certifying each constraint by interval evaluation.
  if (!feasible_point(A, b, k))
    return IntegerPointResult{IntegerPointStatus::empty, IVec(), ""};
  if (k > 0 && recession_direction(A))
    return IntegerPointResult{IntegerPointStatus::undecided, IVec(),
                              "concave constraints over an unbounded polyhedral part"};
  IVec lo(k), hi(k);
  for (int i = 0; i < k; ++i) {
    QVec obj = QVec::Zero(k);
    obj(i) = 1;
    SimplexOutcome mx = solve_lp(obj, A, b, QMat(), QVec());
    obj(i) = -1;
    SimplexOutcome mn = solve_lp(obj, A, b, QMat(), QVec());
    if (mx.status != LpStatus::optimal || mn.status != LpStatus::optimal)
      throw std::logic_error("integer_point: bounded region with unbounded coordinate");
    hi(i) = floor(mx.value);
    lo(i) = ceil(-mn.value);
    if (lo(i) > hi(i)) return IntegerPointResult{IntegerPointStatus::empty, IVec(), ""};
  }
  std::vector<unsigned> bits_schedule;
  for (unsigned bit : {32u, 64u})
    if (bit < budget.refine_bits) bits_schedule.push_back(bit);
  bits_schedule.push_back(budget.refine_bits);

  long long remaining = budget.max_candidates;
  bool truncated = false;
  bool some_unresolved = false;
  IVec u = lo;
  for (;;) {
    if (k > 0 && remaining-- <= 0) {
      truncated = true;
      break;
    }
    if (satisfies_rows(A, b, u)) {
      const IVec x = lift(u);
      const QVec xq = to_rational(x);
      bool rejected = false;
      bool unresolved = false;
      for (const ConcaveConstraint& cc : r.concave) {
        bool settled = false;
        for (unsigned bit : bits_schedule) {
          QInterval val = cc.value(xq, bit);
          if (val.lo >= 0) {
            settled = true;
            break;
          }
          if (val.hi < 0) {
            settled = true;
            rejected = true;
            break;
          }
        }
        if (rejected) break;
        if (!settled) {
          unresolved = true;
          break;
        }
      }
      if (!rejected && !unresolved) return IntegerPointResult{IntegerPointStatus::point, x, ""};
      if (unresolved) some_unresolved = true;
    }
    // advance odometer
    int i = k - 1;
    while (i >= 0 && u(i) == hi(i)) {
      u(i) = lo(i);
      --i;
    }
    if (i < 0) break;
    u(i) += 1;
  }
  if (truncated)
    return IntegerPointResult{IntegerPointStatus::undecided, IVec(),
                              "candidate budget exhausted"};
  if (some_unresolved)
    return IntegerPointResult{IntegerPointStatus::undecided, IVec(),
                              "certified intervals could not settle a concave constraint"};
  return IntegerPointResult{IntegerPointStatus::empty, IVec(), ""};
}

// --- affine hulls -----------------------------------------------------------------

AffineHull affine_hull(const std::vector<QVec>& points) {
  AffineHull h;
  if (points.empty()) return h;
  h.base_point = points[0];
  const Eigen::Index d = points[0].size();
  RrefBasis rb;
  for (size_t i = 1; i < points.size(); ++i) {
    if (points[i].size() != d) throw std::invalid_argument("affine_hull: dimension mismatch");
    QVec dir(d);
    for (Eigen::Index j = 0; j < d; ++j) dir(j) = points[i](j) - h.base_point(j);
    rb.insert(dir);
  }
  h.rank = static_cast<int>(rb.rows.size());
  h.direction_basis = QMat(h.rank, d);
  for (int i = 0; i < h.rank; ++i)
    for (Eigen::Index j = 0; j < d; ++j) h.direction_basis(i, j) = rb.rows[static_cast<size_t>(i)](j);
  return h;
}

// --- orbit hull -----------------------------------------------------------------

std::optional<OrbitHullPoint> orbit_hull_integer_point(const LoopProgram& p, const IVec& z,
                                                       unsigned long horizon) {
  const int d = p.dimension;
  if (static_cast<int>(z.size()) != d)
    throw std::invalid_argument("orbit_hull_integer_point: start point dimension mismatch");
  const IMat& M = p.update.matrix;
  const IVec& a = p.update.offset;
  auto step = [&](const IVec& x) {
    IVec y(d);
    for (int i = 0; i < d; ++i) {
      Int s = a(i);
      for (int j = 0; j < d; ++j) s += M(i, j) * x(j);
      y(i) = s;
    }
    return y;
  };

  IVec cur = z;
  for (int i = 0; i < d; ++i) cur = step(cur);
  const IVec zstar = cur;
  if (horizon < static_cast<unsigned long>(d)) return std::nullopt;

  std::vector<IVec> pts{zstar};
  std::set<std::vector<Int>> seen;
  seen.insert(point_key(zstar));
  RrefBasis span;
  bool stabilized = false;
  RelintContext ctx;
  QMat linv;  // d0 x d, rational left inverse of lattice^T
  unsigned long next_search = 0;
  unsigned long gap = 1;

  auto coords_of = [&](const IVec& x) {
    IVec u(ctx.d0);
    for (int i = 0; i < ctx.d0; ++i) {
      Rational s = 0;
      for (int j = 0; j < d; ++j) s += linv(i, j) * Rational(x(j) - zstar(j));
      if (!is_integer(s)) throw std::logic_error("orbit_hull_integer_point: non-lattice orbit point");
      u(i) = num(s);
    }
    return u;
  };

  unsigned long n = static_cast<unsigned long>(d);
  for (;;) {
    const IVec nxt = step(cur);
    QVec dir(d);
    for (int j = 0; j < d; ++j) dir(j) = Rational(nxt(j) - zstar(j));
    const bool in_span = RrefBasis::is_zero(span.reduce(dir));
    if (!in_span) {
      span.insert(dir);
      stabilized = false;
    } else if (!stabilized) {
      // The affine hull of the tail just stopped growing; since the update is
      // affine it can never grow again, so relative-interior searches are now
      // sound. Build the direction lattice and coordinates once.
      stabilized = true;
      ctx = RelintContext{};
      ctx.zstar = zstar;
      const int d0 = static_cast<int>(span.rows.size());
      ctx.d0 = d0;
      if (d0 == 0) {
        ctx.lattice = IMat(0, d);
      } else {
        IMat diffs(static_cast<Eigen::Index>(pts.size()) - 1, d);
        for (size_t i = 1; i < pts.size(); ++i)
          for (int j = 0; j < d; ++j)
            diffs(static_cast<Eigen::Index>(i) - 1, j) = pts[i](j) - zstar(j);
        ctx.lattice = saturation(diffs);
        if (static_cast<int>(ctx.lattice.rows()) != d0)
          throw std::logic_error("orbit_hull_integer_point: lattice rank mismatch");
        IMat gram(d0, d0);
        for (int i = 0; i < d0; ++i)
          for (int j = 0; j < d0; ++j) {
            Int s = 0;
            for (int t = 0; t < d; ++t) s += ctx.lattice(i, t) * ctx.lattice(j, t);
            gram(i, j) = s;
          }
        linv = q_inverse(to_rational(gram)) * to_rational(ctx.lattice);
      }
      for (const IVec& q : pts) {
        ctx.us.push_back(ctx.d0 > 0 ? coords_of(q) : IVec(0));
        ctx.amb.push_back(q);
      }
      next_search = n;
      gap = 1;
    }
    if (stabilized && n >= next_search) {
      if (std::optional<RelintHit> hit = relint_search(ctx)) {
        OrbitHullPoint out;
        out.point = hit->point;
        out.n_used = n;
        out.support = std::move(hit->support);
        out.coefficients = std::move(hit->coefficients);
        out.lattice.base_point = zstar;
        out.lattice.lattice = ctx.lattice;
        out.lattice.direction_basis = to_rational(ctx.lattice);
        out.lattice.rank = ctx.d0;
        return out;
      }
      next_search = n + gap;
      gap = std::min<unsigned long>(gap * 2, 1024);
    }
    if (n == horizon) break;
    ++n;
    cur = nxt;
    if (seen.insert(point_key(nxt)).second) {
      pts.push_back(nxt);
      if (stabilized) {
        ctx.us.push_back(ctx.d0 > 0 ? coords_of(nxt) : IVec(0));
        ctx.amb.push_back(nxt);
      }
    }
  }
  return std::nullopt;
}

}  // namespace linterm

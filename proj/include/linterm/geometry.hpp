#pragma once
// Exact rational linear programming and integer-point search over convex
// regions, plus affine hulls and the orbit-hull witness search. The LP core is
// a dense rational simplex with Bland's rule, so every answer is exact and
// every run is deterministic.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "linterm/interval.hpp"
#include "linterm/loop_model.hpp"
#include "linterm/numeric.hpp"

namespace linterm {

// Affine form gradient . x + constant; as a constraint it is read >= 0.
struct AffineForm {
  QVec gradient;
  Rational constant;

  Rational eval(const QVec& x) const { return gradient.dot(x) + constant; }
};

// How a concave constraint callback reports values: exact point intervals, or
// certified enclosures that tighten as `bits` grows.
enum class ConcaveExactness { exact, certified_interval };

// Concave constraint value(x) >= 0. The callback returns an interval that is
// guaranteed to contain the true value; for `exact` it is a point interval.
struct ConcaveConstraint {
  ConcaveExactness exactness = ConcaveExactness::certified_interval;
  std::function<QInterval(const QVec& x, unsigned bits)> value;
};

// Conjunction of affine equalities, affine inequalities (>= 0), and concave
// constraints (>= 0) over the ambient integer variables.
struct ConvexRegion {
  int ambient_dimension = 0;
  QMat eq_rows;    // each row r: r . x + eq_consts(i) == 0
  QVec eq_consts;
  std::vector<AffineForm> inequalities;
  std::vector<ConcaveConstraint> concave;
};

void add_equality(ConvexRegion& r, const QVec& gradient, const Rational& constant);
void add_inequality(ConvexRegion& r, const QVec& gradient, const Rational& constant);

// One affine equality whose coefficients live in a shared number field,
// presented componentwise: gradients.row(k) and constants(k) carry the k-th
// power-basis coordinate of each coefficient. A rational point satisfies the
// original equality iff every coordinate row vanishes, so the rows enter the
// region as plain rational equalities.
void add_field_equality(ConvexRegion& r, const QMat& gradients, const QVec& constants);

// --- Linear programming ------------------------------------------------

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational objective;  // valid when optimal
  QVec argument;       // valid when optimal
};

// maximize objective . x  subject to  ineq x + ineq_consts >= 0 (rowwise)
// and eq x + eq_consts == 0. Exact rational simplex; Bland's rule makes the
// run deterministic and cycle-free.
LpResult lp_optimize(const QVec& objective, const QMat& ineq, const QVec& ineq_consts,
                     const QMat& eq = QMat(), const QVec& eq_consts = QVec());

// --- Integer feasibility ------------------------------------------------

struct GeometryBudget {
  long long max_nodes = 200000;      // branch-and-bound nodes
  long long max_candidates = 50000;  // enumerated candidates under concave constraints
  unsigned refine_bits = 96;         // final precision for certified-interval callbacks
};

enum class IntegerPointStatus { point, empty, undecided };

struct IntegerPointResult {
  IntegerPointStatus status = IntegerPointStatus::undecided;
  IVec point;        // valid when status == point
  std::string note;  // diagnostic for undecided results
};

// Search for an integer point of the region. `empty` certifies that no
// integer point exists (the region may still contain rational points);
// `undecided` is only returned on budget exhaustion or when certified
// intervals cannot settle a concave constraint.
IntegerPointResult integer_point(const ConvexRegion& r, const GeometryBudget& budget = {});

// --- Affine hulls --------------------------------------------------------

struct AffineHull {
  QVec base_point;      // empty for an empty input
  QMat direction_basis; // rows span the direction space
  int rank = 0;
};

AffineHull affine_hull(const std::vector<QVec>& points);

// --- Orbit hull witness search -------------------------------------------

// The stabilized affine geometry of an integer orbit: base point f^d(z), a
// rational basis of the direction space, and a basis of the direction lattice
// (direction space intersected with the integer grid).
struct OrbitLattice {
  IVec base_point;
  QMat direction_basis;  // rows
  IMat lattice;          // rows: basis of direction_basis-span intersected with Z^d
  int rank = 0;
};

struct OrbitHullPoint {
  IVec point;             // integer point in the relative interior of the hull
  unsigned long n_used;   // hull built from orbit points f^d(z) .. f^{n_used}(z)
  std::vector<IVec> support;          // distinct orbit points spanning the hull
  std::vector<Rational> coefficients; // all-positive convex combination: sum c_i support_i = point
  OrbitLattice lattice;
};

// Walk the orbit z, f(z), f^2(z), ... of the loop update and search the
// relative interior of conv{f^d(z), ..., f^n(z)} for an integer point, for
// increasing n up to `horizon`. The relative interior is only searched once
// the affine hull of the tail has stabilized (one step without dimension
// growth implies the hull is final, because an affine map sends affine hulls
// to affine hulls); searching earlier could return a point that ends up on
// the boundary of the limit hull. A non-empty `accept` filters candidates:
// rejected points are treated as misses and the search continues with a
// larger hull, so callers can demand extra properties (the hull only gains
// points, so anything acceptable stays reachable at later n).
std::optional<OrbitHullPoint> orbit_hull_integer_point(
    const LoopProgram& p, const IVec& z, unsigned long horizon,
    const std::function<bool(const IVec&)>& accept = {});

}  // namespace linterm

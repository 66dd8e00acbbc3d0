// Exact LP oracles, integer-point feasibility against exhaustive enumeration,
// affine hulls, and the orbit-hull relative-interior search.

#include <random>
#include <utility>
#include <vector>

#include "doctest.h"
#include "linterm/geometry.hpp"

using namespace linterm;

namespace {

IMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  IMat m(static_cast<Eigen::Index>(rows.size()),
         static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (long v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

IVec vec(std::initializer_list<long> vals) {
  IVec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (long x : vals) v(i++) = x;
  return v;
}

QVec qvec(std::initializer_list<Rational> vals) {
  QVec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (const Rational& x : vals) v(i++) = x;
  return v;
}

QMat qmat(std::initializer_list<std::initializer_list<Rational>> rows) {
  QMat m(static_cast<Eigen::Index>(rows.size()),
         static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const Rational& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

QVec to_q(const IVec& v) {
  QVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

// Independent rational rank via destructive Gaussian elimination.
int rat_rank(QMat m) {
  int rank = 0;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index rr = 0;
  for (Eigen::Index c = 0; c < cols && rr < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = rr; i < rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != rr) m.row(piv).swap(m.row(rr));
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == rr || m(i, c) == 0) continue;
      const Rational f = m(i, c) / m(rr, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(rr, j);
    }
    ++rr;
    ++rank;
  }
  return rank;
}

QMat stack_q(const QMat& a, const QVec& extra) {
  QMat out(a.rows() + 1, extra.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (Eigen::Index j = 0; j < extra.size(); ++j) out(a.rows(), j) = extra(j);
  return out;
}

void check_certificate(const OrbitHullPoint& h) {
  REQUIRE(h.support.size() == h.coefficients.size());
  REQUIRE(!h.support.empty());
  Rational sum = 0;
  QVec acc = QVec::Zero(h.point.size());
  for (size_t i = 0; i < h.support.size(); ++i) {
    CHECK(h.coefficients[i] > 0);
    sum += h.coefficients[i];
    for (Eigen::Index j = 0; j < h.point.size(); ++j)
      acc(j) += h.coefficients[i] * Rational(h.support[i](j));
  }
  CHECK(sum == Rational(1));
  for (Eigen::Index j = 0; j < h.point.size(); ++j) CHECK(acc(j) == Rational(h.point(j)));
}

}  // namespace

TEST_CASE("lp_optimize oracles") {
  SUBCASE("bounded interval") {
    LpResult r = lp_optimize(qvec({1}), qmat({{2}, {-2}}), qvec({-1, 5}));
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == Rational(5, 2));
    CHECK(r.argument(0) == Rational(5, 2));
  }
  SUBCASE("unbounded above") {
    LpResult r = lp_optimize(qvec({1}), qmat({{1}}), qvec({0}));
    CHECK(r.status == LpStatus::unbounded);
  }
  SUBCASE("infeasible") {
    LpResult r = lp_optimize(qvec({1}), qmat({{1}, {-1}}), qvec({-1, 0}));
    CHECK(r.status == LpStatus::infeasible);
  }
  SUBCASE("no constraints at all") {
    CHECK(lp_optimize(qvec({1}), QMat(), QVec()).status == LpStatus::unbounded);
    LpResult zero = lp_optimize(qvec({0}), QMat(), QVec());
    REQUIRE(zero.status == LpStatus::optimal);
    CHECK(zero.objective == 0);
  }
  SUBCASE("equalities, including a dependent row") {
    QMat eq = qmat({{1, 1}, {2, 2}});
    QVec eqc = qvec({-2, -4});  // x + y = 2 twice
    QMat in = qmat({{1, 0}, {0, 1}});
    QVec inc = qvec({0, 0});
    LpResult r = lp_optimize(qvec({1, 0}), in, inc, eq, eqc);
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == Rational(2));
    CHECK(r.argument(0) + r.argument(1) == Rational(2));
    CHECK(r.argument(0) >= 0);
    CHECK(r.argument(1) >= 0);
  }
  SUBCASE("negative optimum") {
    // maximize x subject to x <= -3/2
    LpResult r = lp_optimize(qvec({1}), qmat({{-1}}), qvec({Rational(-3, 2)}));
    REQUIRE(r.status == LpStatus::optimal);
    CHECK(r.objective == Rational(-3, 2));
  }
}

TEST_CASE("integer_point oracles") {
  SUBCASE("open unit interval interior is integer-free") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_inequality(r, qvec({1}), Rational(-1, 5));   // x >= 1/5
    add_inequality(r, qvec({-1}), Rational(4, 5));   // x <= 4/5
    CHECK(integer_point(r).status == IntegerPointStatus::empty);
  }
  SUBCASE("interval containing integers") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_inequality(r, qvec({1}), Rational(-1, 2));  // x >= 1/2
    add_inequality(r, qvec({-1}), Rational(5, 2));  // x <= 5/2
    IntegerPointResult res = integer_point(r);
    REQUIRE(res.status == IntegerPointStatus::point);
    CHECK((res.point(0) == 1 || res.point(0) == 2));
  }
  SUBCASE("unbounded strip with no integer points") {
    // 1/10 <= 2y - x <= 2/5: the value 2y - x is an integer on the grid.
    ConvexRegion r;
    r.ambient_dimension = 2;
    add_inequality(r, qvec({-1, 2}), Rational(-1, 10));
    add_inequality(r, qvec({1, -2}), Rational(2, 5));
    CHECK(integer_point(r).status == IntegerPointStatus::empty);
  }
  SUBCASE("equality with no integer solution") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_equality(r, qvec({2}), Rational(-3));  // 2x = 3
    CHECK(integer_point(r).status == IntegerPointStatus::empty);
  }
  SUBCASE("equality pinning the unique point") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_equality(r, qvec({2}), Rational(-4));  // 2x = 4
    IntegerPointResult res = integer_point(r);
    REQUIRE(res.status == IntegerPointStatus::point);
    CHECK(res.point(0) == 2);
  }
  SUBCASE("componentwise split of a field-coefficient equality") {
    // (1 + s)x - (1 + s) = 0 with s irrational: both power-basis coordinate
    // rows read x - 1 = 0.
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_field_equality(r, qmat({{1}, {1}}), qvec({-1, -1}));
    add_inequality(r, qvec({1}), Rational(0));
    IntegerPointResult res = integer_point(r);
    REQUIRE(res.status == IntegerPointStatus::point);
    CHECK(res.point(0) == 1);
  }
  SUBCASE("unbounded ray picks the first integer past the threshold") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_inequality(r, qvec({1}), Rational(-7, 2));  // x >= 7/2
    IntegerPointResult res = integer_point(r);
    REQUIRE(res.status == IntegerPointStatus::point);
    CHECK(res.point(0) == 4);
  }
  SUBCASE("unbounded halfplane is feasible") {
    ConvexRegion r;
    r.ambient_dimension = 2;
    add_inequality(r, qvec({-1, 1}), Rational(-1, 3));  // y - x >= 1/3
    IntegerPointResult res = integer_point(r);
    REQUIRE(res.status == IntegerPointStatus::point);
    CHECK(res.point(1) - res.point(0) >= Rational(1, 3));
  }
  SUBCASE("branch-and-bound budget exhaustion reports undecided") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_inequality(r, qvec({1}), Rational(-1, 2));
    add_inequality(r, qvec({-1}), Rational(5, 2));
    GeometryBudget tight;
    tight.max_nodes = 0;
    IntegerPointResult res = integer_point(r, tight);
    CHECK(res.status == IntegerPointStatus::undecided);
    CHECK(!res.note.empty());
  }
}

TEST_CASE("integer_point with concave constraints") {
  SUBCASE("exact concave constraint filters the grid") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_inequality(r, qvec({1}), Rational(0));   // x >= 0
    add_inequality(r, qvec({-1}), Rational(3));  // x <= 3
    ConcaveConstraint cc;
    cc.exactness = ConcaveExactness::exact;
    cc.value = [](const QVec& x, unsigned) {
      const Rational t = x(0) - Rational(3, 2);
      return QInterval::point(1 - t * t);  // >= 0 iff 1/2 <= x <= 5/2
    };
    r.concave.push_back(cc);
    IntegerPointResult res = integer_point(r);
    REQUIRE(res.status == IntegerPointStatus::point);
    CHECK(res.point(0) == 1);  // lexicographic scan from the lower bound
  }
  SUBCASE("certified rejection on every candidate") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_inequality(r, qvec({1}), Rational(0));
    add_inequality(r, qvec({-1}), Rational(2));
    ConcaveConstraint cc;
    cc.exactness = ConcaveExactness::exact;
    cc.value = [](const QVec&, unsigned) { return QInterval::point(Rational(-1)); };
    r.concave.push_back(cc);
    CHECK(integer_point(r).status == IntegerPointStatus::empty);
  }
  SUBCASE("straddling intervals stay undecided") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_equality(r, qvec({1}), Rational(0));  // x = 0
    ConcaveConstraint cc;
    cc.exactness = ConcaveExactness::certified_interval;
    cc.value = [](const QVec&, unsigned bits) {
      const Rational e(Int(1), pow(Int(2), bits));
      return QInterval(-e, e);
    };
    r.concave.push_back(cc);
    IntegerPointResult res = integer_point(r);
    CHECK(res.status == IntegerPointStatus::undecided);
  }
  SUBCASE("unbounded polyhedral part with concave constraints is undecided") {
    ConvexRegion r;
    r.ambient_dimension = 1;
    add_inequality(r, qvec({1}), Rational(0));
    ConcaveConstraint cc;
    cc.exactness = ConcaveExactness::exact;
    cc.value = [](const QVec&, unsigned) { return QInterval::point(Rational(1)); };
    r.concave.push_back(cc);
    CHECK(integer_point(r).status == IntegerPointStatus::undecided);
  }
}

TEST_CASE("integer_point matches exhaustive enumeration on random bounded polytopes") {
  std::mt19937 rng(20260817u);
  std::uniform_int_distribution<int> dim_d(1, 4);
  std::uniform_int_distribution<int> extra_d(1, 5);
  std::uniform_int_distribution<int> num_d(-4, 4);
  std::uniform_int_distribution<int> den_d(1, 3);
  std::uniform_int_distribution<int> con_d(-6, 6);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = dim_d(rng);
    ConvexRegion r;
    r.ambient_dimension = k;
    std::vector<std::pair<IVec, Int>> irows;  // integer-cleared rows for the oracle
    auto add = [&](const QVec& g, const Rational& c0) {
      add_inequality(r, g, c0);
      Int s = den(c0);
      for (int j = 0; j < k; ++j) s = lcm(s, den(g(j)));
      IVec ig(k);
      for (int j = 0; j < k; ++j) ig(j) = num(g(j) * Rational(s));
      irows.emplace_back(ig, num(c0 * Rational(s)));
    };
    for (int j = 0; j < k; ++j) {
      QVec gp = QVec::Zero(k);
      gp(j) = 1;
      add(gp, Rational(4));
      QVec gm = QVec::Zero(k);
      gm(j) = -1;
      add(gm, Rational(4));
    }
    const int extra = extra_d(rng);
    for (int t = 0; t < extra; ++t) {
      QVec g(k);
      for (int j = 0; j < k; ++j) g(j) = Rational(num_d(rng), den_d(rng));
      add(g, Rational(con_d(rng), den_d(rng)));
    }

    bool exists = false;
    IVec x = IVec::Constant(k, -4);
    for (;;) {
      bool ok = true;
      for (const auto& [ig, ic] : irows) {
        Int s = ic;
        for (int j = 0; j < k; ++j) s += ig(j) * x(j);
        if (s < 0) {
          ok = false;
          break;
        }
      }
      if (ok) {
        exists = true;
        break;
      }
      int j = k - 1;
      while (j >= 0 && x(j) == 4) x(j--) = -4;
      if (j < 0) break;
      x(j) += 1;
    }

    IntegerPointResult res = integer_point(r);
    REQUIRE(res.status != IntegerPointStatus::undecided);
    CHECK((res.status == IntegerPointStatus::point) == exists);
    if (res.status == IntegerPointStatus::point) {
      const QVec qx = to_q(res.point);
      for (const AffineForm& f : r.inequalities) CHECK(f.eval(qx) >= 0);
    }
  }
}

TEST_CASE("affine_hull oracles") {
  SUBCASE("collinear points") {
    AffineHull h = affine_hull({qvec({0, 0}), qvec({1, 1}), qvec({2, 2})});
    CHECK(h.rank == 1);
    REQUIRE(h.direction_basis.rows() == 1);
    CHECK(h.direction_basis(0, 0) == 1);
    CHECK(h.direction_basis(0, 1) == 1);
  }
  SUBCASE("single point") {
    AffineHull h = affine_hull({qvec({0, 0})});
    CHECK(h.rank == 0);
    CHECK(h.direction_basis.rows() == 0);
    CHECK(h.base_point == qvec({0, 0}));
  }
  SUBCASE("triangle spans the plane") {
    AffineHull h = affine_hull({qvec({0, 0}), qvec({1, 0}), qvec({0, 1})});
    CHECK(h.rank == 2);
    CHECK(h.direction_basis == qmat({{1, 0}, {0, 1}}));
  }
  SUBCASE("empty input") {
    AffineHull h = affine_hull({});
    CHECK(h.rank == 0);
    CHECK(h.base_point.size() == 0);
  }
}

TEST_CASE("affine_hull direction space equals the span of differences") {
  std::mt19937 rng(707u);
  std::uniform_int_distribution<int> num_d(-5, 5);
  std::uniform_int_distribution<int> den_d(1, 3);
  std::uniform_int_distribution<int> count_d(1, 6);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 3;
    const int n = count_d(rng);
    std::vector<QVec> pts;
    for (int i = 0; i < n; ++i) {
      QVec p(d);
      for (int j = 0; j < d; ++j) p(j) = Rational(num_d(rng), den_d(rng));
      pts.push_back(p);
    }
    AffineHull h = affine_hull(pts);
    // Independent rank of the difference matrix.
    QMat diffs(n - 1 > 0 ? n - 1 : 0, d);
    for (int i = 1; i < n; ++i)
      for (int j = 0; j < d; ++j) diffs(i - 1, j) = pts[static_cast<size_t>(i)](j) - pts[0](j);
    CHECK(h.rank == rat_rank(diffs));
    CHECK(rat_rank(h.direction_basis) == h.rank);
    // Every pairwise difference lies in the span (rank does not grow).
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        QVec diff(d);
        for (int t = 0; t < d; ++t)
          diff(t) = pts[static_cast<size_t>(i)](t) - pts[static_cast<size_t>(j)](t);
        CHECK(rat_rank(stack_q(h.direction_basis, diff)) == h.rank);
      }
  }
}

TEST_CASE("orbit hull search frozen semantics") {
  SUBCASE("count-up loop") {
    LoopProgram p;
    p.dimension = 1;
    p.update.matrix = mat({{1}});
    p.update.offset = vec({1});
    p.var_names = {"x"};
    auto res = orbit_hull_integer_point(p, vec({1}), 100);
    REQUIRE(res.has_value());
    CHECK(res->point == vec({3}));
    CHECK(res->n_used == 3);
    CHECK(res->lattice.base_point == vec({2}));
    CHECK(res->lattice.rank == 1);
    CHECK(res->lattice.lattice == mat({{1}}));
    check_certificate(*res);
  }
  SUBCASE("collinear shear orbit") {
    LoopProgram p;
    p.dimension = 2;
    p.update.matrix = mat({{1, 1}, {0, 1}});
    p.update.offset = vec({0, 0});
    p.var_names = {"x", "y"};
    auto res = orbit_hull_integer_point(p, vec({1, 1}), 100);
    REQUIRE(res.has_value());
    CHECK(res->point == vec({4, 1}));
    CHECK(res->n_used == 4);
    CHECK(res->lattice.rank == 1);
    check_certificate(*res);
  }
  SUBCASE("fixed point returns immediately") {
    LoopProgram p;
    p.dimension = 1;
    p.update.matrix = mat({{1}});
    p.update.offset = vec({0});
    p.var_names = {"x"};
    auto res = orbit_hull_integer_point(p, vec({5}), 10);
    REQUIRE(res.has_value());
    CHECK(res->point == vec({5}));
    CHECK(res->n_used == 1);
    CHECK(res->lattice.rank == 0);
    check_certificate(*res);
  }
  SUBCASE("rotation orbit surrounds its center") {
    LoopProgram p;
    p.dimension = 2;
    p.update.matrix = mat({{0, -1}, {1, 0}});
    p.update.offset = vec({0, 0});
    p.var_names = {"x", "y"};
    auto res = orbit_hull_integer_point(p, vec({1, 0}), 100);
    REQUIRE(res.has_value());
    CHECK(res->point == vec({0, 0}));
    // The hull stalls at n = 4 as the triangle {(-1,0),(0,-1),(1,0)}, whose
    // relative interior misses (0,0); the hit needs the fourth vertex.
    CHECK(res->n_used == 5);
    CHECK(res->lattice.rank == 2);
    check_certificate(*res);
  }
  SUBCASE("three-dimensional cycle hits an interior lattice point") {
    LoopProgram p;
    p.dimension = 3;
    p.update.matrix = mat({{-1, -1, -1}, {1, 0, 0}, {0, 1, 0}});
    p.update.offset = vec({6, 0, 0});
    p.var_names = {"x", "y", "z"};
    auto res = orbit_hull_integer_point(p, vec({0, 0, 0}), 200);
    REQUIRE(res.has_value());
    CHECK(res->point == vec({1, 1, 1}));
    CHECK(res->n_used == 6);
    CHECK(res->lattice.rank == 3);
    check_certificate(*res);
  }
  SUBCASE("two-cycle with integer-free interior exhausts the horizon") {
    // x := -x + 1 alternates between 0 and 1; the open segment (0, 1) never
    // contains an integer.
    LoopProgram p;
    p.dimension = 1;
    p.update.matrix = mat({{-1}});
    p.update.offset = vec({1});
    p.var_names = {"x"};
    CHECK(!orbit_hull_integer_point(p, vec({0}), 60).has_value());
  }
  SUBCASE("horizon below the stabilization index") {
    LoopProgram p;
    p.dimension = 2;
    p.update.matrix = mat({{1, 1}, {0, 1}});
    p.update.offset = vec({0, 0});
    p.var_names = {"x", "y"};
    CHECK(!orbit_hull_integer_point(p, vec({1, 1}), 1).has_value());
  }
}

// Unit-circle normalization, exact relation search, and torus diagnostics.

#include "doctest.h"
#include "linterm/torus.hpp"

using namespace linterm;

namespace {

HomogenizedSystem hs(const char* src) { return homogenize(parse_loop(src)); }

AlgebraicNumber an(long v) { return AlgebraicNumber(Rational(v)); }

Rational q(long n, long d) { return Rational(n, d); }

IVec vec(std::initializer_list<long> vals) {
  IVec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (long x : vals) v(i++) = x;
  return v;
}

Spectrum spectrum_from_roots(const IntPoly& p) {
  Spectrum sp;
  for (const auto& [value, mult] : roots(p)) {
    sp.eigenvalues.push_back(value);
    sp.multiplicities.push_back(mult);
    sp.k_max = std::max(sp.k_max, mult);
  }
  return sp;
}

IMat basis_matrix(const RelationLattice& l) {
  IMat m(static_cast<Eigen::Index>(l.basis.size()),
         l.basis.empty() ? 0 : l.basis[0].size());
  for (size_t r = 0; r < l.basis.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = l.basis[r].transpose();
  return m;
}

ComplexInterval unit_box(long re_n, long im_n, long den, long width_den) {
  Rational re(re_n, den), im(im_n, den), w(1, width_den);
  return ComplexInterval(QInterval(re - w, re + w), QInterval(im - w, im + w));
}

ComplexInterval unit_point(long re_n, long im_n, long den) {
  return ComplexInterval::point(QComplex(Rational(re_n, den), Rational(im_n, den)));
}

// Exhaustive check of the lattice against is_relation on a small cube.
void brute_force_cross_check(const NormalizedSpectrum& g, const RelationLattice& l, long cap) {
  const int s = g.count();
  IMat h = hermite_basis(basis_matrix(l));
  std::vector<long> t(static_cast<size_t>(s), -cap);
  for (;;) {
    IVec v(s);
    for (int i = 0; i < s; ++i) v(i) = t[static_cast<size_t>(i)];
    CHECK(is_relation(g, v) == lattice_contains(h, v));
    int i = 0;
    while (i < s && ++t[static_cast<size_t>(i)] > cap) t[static_cast<size_t>(i++)] = -cap;
    if (i == s) break;
  }
}

}  // namespace

TEST_CASE("normalize: scaling rotation lands on (3+4i)/5") {
  Spectrum sp = spectrum_of(hs("vars x, y; while x > 0 do x := 3*x - 4*y; y := 4*x + 3*y end"));
  NormalizedSpectrum ns = normalize(sp);
  REQUIRE(ns.count() == 3);
  for (int j = 0; j < 3; ++j) {
    CAPTURE(j);
    CHECK(abs2(ns.gammas[static_cast<size_t>(j)]) == an(1));
    if (sp.eigenvalues[static_cast<size_t>(j)].is_rational()) {
      CHECK(ns.gammas[static_cast<size_t>(j)] == an(1));
    } else {
      // gamma * 5 recovers the eigenvalue, pinning gamma = lambda / 5
      CHECK(ns.gammas[static_cast<size_t>(j)] * an(5) == sp.eigenvalues[static_cast<size_t>(j)]);
      CHECK(!is_root_of_unity(ns.gammas[static_cast<size_t>(j)]));
    }
  }
  // conjugation-closed: each gamma's conjugate appears in the list
  for (const AlgebraicNumber& gamma : ns.gammas) {
    bool found = false;
    for (const AlgebraicNumber& other : ns.gammas) found = found || other == conj(gamma);
    CHECK(found);
  }
}

TEST_CASE("normalize: negative reals flip to -1") {
  Spectrum sp = spectrum_of(hs("vars x; while x > 0 do x := -2*x end"));
  NormalizedSpectrum ns = normalize(sp);
  REQUIRE(ns.count() == 2);
  // eigenvalues sorted: -2 before 1
  CHECK(ns.gammas[0] == an(-1));
  CHECK(ns.gammas[1] == an(1));
}

TEST_CASE("normalize: 1+i lands on the primitive eighth root of unity") {
  Spectrum sp = spectrum_of(hs("vars x, y; while x > 0 do x := x - y; y := x + y end"));
  NormalizedSpectrum ns = normalize(sp);
  REQUIRE(ns.count() == 3);
  for (int j = 0; j < 3; ++j) {
    if (sp.eigenvalues[static_cast<size_t>(j)].is_rational()) continue;
    auto ord = root_of_unity_order(ns.gammas[static_cast<size_t>(j)]);
    REQUIRE(ord.has_value());
    CHECK(*ord == 8);
  }
}

TEST_CASE("normalize rejects zero eigenvalues") {
  Spectrum sp;
  sp.eigenvalues.push_back(an(0));
  sp.multiplicities.push_back(1);
  CHECK_THROWS_AS(normalize(sp), std::domain_error);
}

TEST_CASE("is_relation: fourth roots of unity") {
  NormalizedSpectrum ns = normalize(spectrum_from_roots(IntPoly(std::vector<Int>{Int(1), Int(0), Int(1)})));
  REQUIRE(ns.count() == 2);
  CHECK(is_relation(ns, vec({1, 1})));
  CHECK(!is_relation(ns, vec({1, 0})));
  CHECK(is_relation(ns, vec({4, 0})));
  CHECK(is_relation(ns, vec({2, 2})));
  CHECK(!is_relation(ns, vec({2, 1})));
  CHECK(is_relation(ns, vec({0, 0})));
}

TEST_CASE("is_relation: the sign of the product matters") {
  // gamma = (-1): gamma^1 = -1 is not a relation even though its square is 1.
  Spectrum sp;
  sp.eigenvalues.push_back(an(-1));
  sp.multiplicities.push_back(1);
  sp.k_max = 1;
  NormalizedSpectrum ns = normalize(sp);
  CHECK(!is_relation(ns, vec({1})));
  CHECK(is_relation(ns, vec({2})));
}

TEST_CASE("is_relation: non-root-of-unity rotation") {
  NormalizedSpectrum ns = normalize(spectrum_from_roots(IntPoly(std::vector<Int>{Int(5), Int(-6), Int(5)})));
  REQUIRE(ns.count() == 2);
  CHECK(is_relation(ns, vec({1, 1})));
  CHECK(!is_relation(ns, vec({4, 0})));
  CHECK(!is_relation(ns, vec({3, 1})));
  CHECK(is_relation(ns, vec({-2, -2})));
}

TEST_CASE("relation_basis: fourth roots of unity, cap 8") {
  NormalizedSpectrum ns = normalize(spectrum_from_roots(IntPoly(std::vector<Int>{Int(1), Int(0), Int(1)})));
  SearchBudget budget{.height_bound = 1.0, .degree_bound = 2, .coordinate_cap = 8};
  RelationSearch rs = relation_basis(ns, budget);
  CHECK(rs.complete);
  REQUIRE(rs.lattice.rank == 2);
  CHECK(rs.lattice.basis[0] == vec({1, 1}));
  CHECK(rs.lattice.basis[1] == vec({0, 4}));
  brute_force_cross_check(ns, rs.lattice, 5);
}

TEST_CASE("relation_basis: scaling rotation keeps only the conjugate relation") {
  Spectrum sp = spectrum_of(hs("vars x, y; while x > 0 do x := 3*x - 4*y; y := 4*x + 3*y end"));
  NormalizedSpectrum ns = normalize(sp);
  SearchBudget budget = SearchBudget::for_instance(ns);
  CHECK(budget.degree_bound == 2);
  CHECK(budget.height_bound == 6.0);
  CHECK(budget.instance_bound(2) == 165);
  CHECK(!budget.truncated);
  RelationSearch rs = relation_basis(ns, budget);
  CHECK(rs.complete);
  REQUIRE(rs.lattice.rank == 2);
  CHECK(rs.lattice.basis[0] == vec({1, 0, 0}));
  CHECK(rs.lattice.basis[1] == vec({0, 1, 1}));
  brute_force_cross_check(ns, rs.lattice, 5);
}

TEST_CASE("relation_basis: trivial spectrum") {
  Spectrum sp;
  sp.eigenvalues.push_back(an(1));
  sp.multiplicities.push_back(1);
  sp.k_max = 1;
  NormalizedSpectrum ns = normalize(sp);
  RelationSearch rs = relation_basis(ns, SearchBudget::for_instance(ns));
  CHECK(rs.complete);
  REQUIRE(rs.lattice.rank == 1);
  CHECK(rs.lattice.basis[0] == vec({1}));
}

TEST_CASE("relation_basis: eighth roots with the homogenization eigenvalue") {
  Spectrum sp = spectrum_of(hs("vars x, y; while x > 0 do x := x - y; y := x + y end"));
  NormalizedSpectrum ns = normalize(sp);
  RelationSearch rs = relation_basis(ns, SearchBudget::for_instance(ns));
  CHECK(rs.complete);
  REQUIRE(rs.lattice.rank == 3);
  // Locate the coordinates without assuming the eigenvalue sort order: one
  // real gamma (= 1) and one conjugate pair of primitive eighth roots.
  int real_ix = -1, pair_a = -1, pair_b = -1;
  for (int j = 0; j < 3; ++j)
    (ns.gammas[j].is_real() ? real_ix : (pair_a < 0 ? pair_a : pair_b)) = j;
  REQUIRE(real_ix >= 0);
  REQUIRE(pair_b >= 0);
  IVec e_real = IVec::Zero(3), e_pair = IVec::Zero(3), e_order = IVec::Zero(3);
  e_real(real_ix) = 1;
  e_pair(pair_a) = 1;
  e_pair(pair_b) = 1;
  e_order(pair_a) = 8;
  IMat expected_gens(3, 3);
  expected_gens.row(0) = e_real.transpose();
  expected_gens.row(1) = e_pair.transpose();
  expected_gens.row(2) = e_order.transpose();
  CHECK(basis_matrix(rs.lattice) == hermite_basis(expected_gens));
  IVec lone = IVec::Zero(3);
  lone(pair_a) = 1;
  CHECK(!lattice_contains(basis_matrix(rs.lattice), lone));
  brute_force_cross_check(ns, rs.lattice, 5);
}

TEST_CASE("relation_basis: cross-order relations surface in the residue box") {
  // Sixth and third roots of unity: zeta_6^2 = zeta_3 induces relations
  // beyond the conjugate pairs and the orders.
  IntPoly p = cyclotomic(6) * cyclotomic(3);
  NormalizedSpectrum ns = normalize(spectrum_from_roots(p));
  REQUIRE(ns.count() == 4);
  RelationSearch rs = relation_basis(ns, SearchBudget::for_instance(ns));
  CHECK(rs.complete);
  CHECK(rs.lattice.rank == 4);
  brute_force_cross_check(ns, rs.lattice, 3);
}

TEST_CASE("relation_basis: repeated irrational pair found in the mixed sweep") {
  Spectrum base = spectrum_from_roots(IntPoly(std::vector<Int>{Int(5), Int(-6), Int(5)}));
  Spectrum sp;
  for (int copy = 0; copy < 2; ++copy)
    for (const auto& ev : base.eigenvalues) {
      sp.eigenvalues.push_back(ev);
      sp.multiplicities.push_back(1);
    }
  sp.k_max = 1;
  NormalizedSpectrum ns = normalize(sp);
  SearchBudget budget{.height_bound = 6.0, .degree_bound = 2, .coordinate_cap = 8};
  RelationSearch rs = relation_basis(ns, budget);
  CHECK(!rs.complete);  // cap 8 is far below the instance bound at s = 4
  REQUIRE(rs.lattice.rank == 3);
  // Coordinates 0/2 and 1/3 hold equal gammas, so the lattice is spanned by
  // the two conjugate-pair relations plus one cross-copy quotient.
  IMat expected_gens(3, 4);
  expected_gens.row(0) = vec({1, 1, 0, 0}).transpose();
  expected_gens.row(1) = vec({0, 0, 1, 1}).transpose();
  expected_gens.row(2) = vec({1, 0, -1, 0}).transpose();
  CHECK(basis_matrix(rs.lattice) == hermite_basis(expected_gens));
  // closure under the conjugate-position swap (0 1)(2 3)
  IMat h = basis_matrix(rs.lattice);
  CHECK(lattice_contains(h, vec({0, 1, 0, -1})));
  CHECK(!lattice_contains(h, vec({1, 0, 0, -1})));
  CHECK(!is_relation(ns, vec({1, 0, 0, -1})));
}

TEST_CASE("torus_membership: exact points decide exactly") {
  TorusSubgroup t{RelationLattice{{vec({1, 1})}, 1}};
  CHECK(torus_membership(t, {unit_point(0, 1, 1), unit_point(0, -1, 1)}) ==
        TorusMembership::inside);
  CHECK(torus_membership(t, {unit_point(0, 1, 1), unit_point(0, 1, 1)}) ==
        TorusMembership::outside);
  CHECK(torus_membership(t, {unit_point(-1, 0, 1), unit_point(-1, 0, 1)}) ==
        TorusMembership::inside);
}

TEST_CASE("torus_membership: certified interval verdicts") {
  TorusSubgroup t{RelationLattice{{vec({1, 1})}, 1}};
  // conjugate pair bracketed tightly around (3 +- 4i)/5
  CHECK(torus_membership(t, {unit_box(3, 4, 5, 10'000'000), unit_box(3, -4, 5, 10'000'000)}) ==
        TorusMembership::inside);
  // equal points: product is near e^{2i theta}, certified away from 1
  CHECK(torus_membership(t, {unit_box(3, 4, 5, 10'000'000), unit_box(3, 4, 5, 10'000'000)}) ==
        TorusMembership::outside);
  // wide boxes cannot certify either way
  CHECK(torus_membership(t, {unit_box(3, 4, 5, 500), unit_box(3, -4, 5, 500)}) ==
        TorusMembership::undecided);
  TorusSubgroup full{RelationLattice{}};
  CHECK(torus_membership(full, {unit_box(3, 4, 5, 500)}) == TorusMembership::inside);
}

TEST_CASE("density_probe: fourth roots reach (-1,-1) at n = 2") {
  NormalizedSpectrum ns = normalize(spectrum_from_roots(IntPoly(std::vector<Int>{Int(1), Int(0), Int(1)})));
  RelationSearch rs = relation_basis(ns, SearchBudget::for_instance(ns));
  TorusSubgroup t{rs.lattice};
  std::vector<ComplexInterval> mu{unit_point(-1, 0, 1), unit_point(-1, 0, 1)};
  auto n = density_probe(ns, t, mu, q(1, 1000), 100);
  REQUIRE(n.has_value());
  CHECK(*n == 2);
}

TEST_CASE("density_probe: trivial instance hits immediately") {
  Spectrum sp;
  sp.eigenvalues.push_back(an(1));
  sp.multiplicities.push_back(1);
  sp.k_max = 1;
  NormalizedSpectrum ns = normalize(sp);
  RelationSearch rs = relation_basis(ns, SearchBudget::for_instance(ns));
  TorusSubgroup t{rs.lattice};
  auto n = density_probe(ns, t, {unit_point(1, 0, 1)}, q(1, 1000), 10);
  REQUIRE(n.has_value());
  CHECK(*n == 0);
}

TEST_CASE("density_probe: irrational rotation reaches (-1,-1) and the hit certifies") {
  NormalizedSpectrum ns = normalize(spectrum_from_roots(IntPoly(std::vector<Int>{Int(5), Int(-6), Int(5)})));
  RelationSearch rs = relation_basis(ns, SearchBudget::for_instance(ns));
  TorusSubgroup t{rs.lattice};
  std::vector<ComplexInterval> mu{unit_point(-1, 0, 1), unit_point(-1, 0, 1)};
  auto n = density_probe(ns, t, mu, q(1, 20), 100'000);
  REQUIRE(n.has_value());
  // exact certification of the reported hit: |gamma^n + 1|^2 <= eps^2
  for (int j = 0; j < 2; ++j) {
    AlgebraicNumber d = pow(ns.gammas[static_cast<size_t>(j)], static_cast<long>(*n)) + an(1);
    CHECK(sign(abs2(d) - AlgebraicNumber(q(1, 400))) <= 0);
  }
}

TEST_CASE("density_probe rejects points outside the torus") {
  NormalizedSpectrum ns = normalize(spectrum_from_roots(IntPoly(std::vector<Int>{Int(1), Int(0), Int(1)})));
  RelationSearch rs = relation_basis(ns, SearchBudget::for_instance(ns));
  TorusSubgroup t{rs.lattice};
  std::vector<ComplexInterval> mu{unit_point(0, 1, 1), unit_point(0, 1, 1)};
  CHECK_THROWS_AS(density_probe(ns, t, mu, q(1, 20), 100), std::domain_error);
}

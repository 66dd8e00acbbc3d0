// Spectrum, dominance classes, coefficient tables, and closed-form
// reconstruction, pinned against hand-derived loop oracles.

#include <cmath>

#include "doctest.h"
#include "linterm/spectral.hpp"

using namespace linterm;

namespace {

HomogenizedSystem hs(const char* src) { return homogenize(parse_loop(src)); }

AlgebraicNumber an(long v) { return AlgebraicNumber(Rational(v)); }

IVec vec(std::initializer_list<long> vals) {
  IVec v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (long x : vals) v(i++) = x;
  return v;
}

// Guard value after n exact iterations of the update.
Int guard_after(const LoopProgram& p, int g, IVec x, unsigned long n) {
  for (unsigned long s = 0; s < n; ++s) x = p.update.matrix * x + p.update.offset;
  Int v = p.guards[static_cast<size_t>(g)].constant;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    v += p.guards[static_cast<size_t>(g)].normal(i) * x(i);
  return v;
}

// All points of {-2, 0, 3}^d.
std::vector<IVec> probe_grid(int d) {
  const long vals[] = {-2, 0, 3};
  std::vector<IVec> out;
  std::vector<int> idx(static_cast<size_t>(d), 0);
  for (;;) {
    IVec v(d);
    for (int i = 0; i < d; ++i) v(i) = vals[idx[static_cast<size_t>(i)]];
    out.push_back(std::move(v));
    int i = 0;
    while (i < d && ++idx[static_cast<size_t>(i)] == 3) idx[static_cast<size_t>(i++)] = 0;
    if (i == d) return out;
  }
}

void check_reconstruction(const char* src) {
  LoopProgram p = parse_loop(src);
  HomogenizedSystem h = homogenize(p);
  Spectrum sp = spectrum_of(h);
  CoefficientTable t = coefficient_table(h, sp);
  const int d = p.dimension;
  const unsigned long isize =
      static_cast<unsigned long>(sp.k_max) * static_cast<unsigned long>(sp.count());
  for (const IVec& x : probe_grid(d))
    for (unsigned long n = static_cast<unsigned long>(d);
         n <= static_cast<unsigned long>(d) + isize + 5; ++n)
      for (int g = 0; g < static_cast<int>(p.guards.size()); ++g)
        CHECK(closed_form_value(t, g, n, x) == guard_after(p, g, x, n));
}

}  // namespace

TEST_CASE("spectrum_of: translation Jordan block") {
  Spectrum sp = spectrum_of(hs("vars x; while x > 0 do x := x + 1 end"));
  REQUIRE(sp.count() == 1);
  CHECK(sp.eigenvalues[0] == an(1));
  CHECK(sp.multiplicities[0] == 2);
  CHECK(sp.k_max == 2);
  CHECK(sp.zero_multiplicity == 0);
}

TEST_CASE("spectrum_of: rotation-scaling block plus homogenization eigenvalue") {
  Spectrum sp = spectrum_of(hs("vars x, y; while x > 0 do x := 3*x - 4*y; y := 4*x + 3*y end"));
  REQUIRE(sp.count() == 3);
  CHECK(sp.k_max == 1);
  int rationals = 0, complexes = 0;
  for (int j = 0; j < 3; ++j) {
    CHECK(sp.multiplicities[static_cast<size_t>(j)] == 1);
    if (sp.eigenvalues[static_cast<size_t>(j)].is_rational()) {
      ++rationals;
      CHECK(sp.eigenvalues[static_cast<size_t>(j)] == an(1));
    } else {
      ++complexes;
      CHECK(abs2(sp.eigenvalues[static_cast<size_t>(j)]) == an(25));
    }
  }
  CHECK(rationals == 1);
  CHECK(complexes == 2);
}

TEST_CASE("spectrum_of: identity update") {
  Spectrum sp = spectrum_of(hs("vars x; while x > 0 do x := x end"));
  REQUIRE(sp.count() == 1);
  CHECK(sp.eigenvalues[0] == an(1));
  CHECK(sp.multiplicities[0] == 2);
}

TEST_CASE("spectrum_of: nilpotent update records zero multiplicity") {
  Spectrum sp = spectrum_of(hs("vars x, y; while x + y + 5 > 0 do x := y; y := 0*y end"));
  CHECK(sp.zero_multiplicity == 2);
  REQUIRE(sp.count() == 1);
  CHECK(sp.eigenvalues[0] == an(1));
  CHECK(sp.k_max == 1);
}

TEST_CASE("dominance_structure: equal modulus splits by binomial index") {
  Spectrum sp = spectrum_of(hs("vars x; while x > 0 do x := x + 1 end"));
  DominanceStructure ds = dominance_structure(sp);
  REQUIRE(ds.classes.size() == 2);
  CHECK(ds.classes[0].members == std::vector<GrowthIndex>{{0, 0}});
  CHECK(ds.classes[1].members == std::vector<GrowthIndex>{{1, 0}});
  CHECK(ds.classes[0].binomial_index == 0);
  CHECK(ds.classes[1].binomial_index == 1);
  CHECK(ds.classes[0].modulus == an(1));
  CHECK(ds.classes[1].modulus == an(1));
  CHECK(ds.preceq({0, 0}, {1, 0}));
  CHECK(!ds.preceq({1, 0}, {0, 0}));
  CHECK(ds.index_set().size() == 2);
}

TEST_CASE("dominance_structure: modulus ranks separate 1 from 5") {
  Spectrum sp = spectrum_of(hs("vars x, y; while x > 0 do x := 3*x - 4*y; y := 4*x + 3*y end"));
  DominanceStructure ds = dominance_structure(sp);
  REQUIRE(ds.classes.size() == 2);
  CHECK(ds.classes[0].members.size() == 1);
  CHECK(ds.classes[1].members.size() == 2);
  CHECK(ds.classes[0].modulus == an(1));
  CHECK(ds.classes[1].modulus == an(5));
  GrowthIndex low = ds.classes[0].members[0];
  GrowthIndex ha = ds.classes[1].members[0], hb = ds.classes[1].members[1];
  CHECK(ds.preceq(low, ha));
  CHECK(!ds.preceq(ha, low));
  CHECK(ds.preceq(ha, hb));
  CHECK(ds.preceq(hb, ha));
}

TEST_CASE("dominance_structure: opposite signs share a class") {
  // Spectrum {2, -2}: equal modulus and equal binomial index.
  Spectrum sp;
  for (const auto& [value, mult] : roots(IntPoly(std::vector<Int>{Int(-4), Int(0), Int(1)}))) {
    sp.eigenvalues.push_back(value);
    sp.multiplicities.push_back(mult);
    sp.k_max = std::max(sp.k_max, mult);
  }
  REQUIRE(sp.count() == 2);
  DominanceStructure ds = dominance_structure(sp);
  REQUIRE(ds.classes.size() == 1);
  CHECK(ds.classes[0].members.size() == 2);
  CHECK(ds.classes[0].modulus == an(2));
}

TEST_CASE("coefficient_table: counting up") {
  HomogenizedSystem h = hs("vars x; while x > 0 do x := x + 1 end");
  Spectrum sp = spectrum_of(h);
  CoefficientTable t = coefficient_table(h, sp);
  // g(f^n(x)) = x + n = C(n,0)*x + C(n,1)*1.
  CHECK(t.coefficient(0, 0, 0, 0) == an(1));  // h_0 linear part
  CHECK(t.coefficient(0, 0, 0, 1) == an(0));  // h_0 constant
  CHECK(t.coefficient(0, 1, 0, 0) == an(0));  // h_1 linear part
  CHECK(t.coefficient(0, 1, 0, 1) == an(1));  // h_1 constant
}

TEST_CASE("coefficient_table: counting down") {
  HomogenizedSystem h = hs("vars x; while x > 0 do x := x - 1 end");
  CoefficientTable t = coefficient_table(h, spectrum_of(h));
  CHECK(t.coefficient(0, 0, 0, 0) == an(1));
  CHECK(t.coefficient(0, 0, 0, 1) == an(0));
  CHECK(t.coefficient(0, 1, 0, 0) == an(0));
  CHECK(t.coefficient(0, 1, 0, 1) == an(-1));
}

TEST_CASE("coefficient_table: doubling splits between eigenvalues 1 and 2") {
  HomogenizedSystem h = hs("vars x; while x > 0 do x := 2*x end");
  Spectrum sp = spectrum_of(h);
  CoefficientTable t = coefficient_table(h, sp);
  REQUIRE(sp.count() == 2);
  // roots come out sorted, so eigenvalue 1 precedes eigenvalue 2
  REQUIRE(sp.eigenvalues[0] == an(1));
  REQUIRE(sp.eigenvalues[1] == an(2));
  CHECK(t.coefficient(0, 0, 0, 0) == an(0));
  CHECK(t.coefficient(0, 0, 0, 1) == an(0));
  CHECK(t.coefficient(0, 0, 1, 0) == an(1));
  CHECK(t.coefficient(0, 0, 1, 1) == an(0));
}

TEST_CASE("coefficient_table: second-order Jordan block") {
  // x_n = x + n y + C(n,2), y_n = y + n.
  HomogenizedSystem h = hs("vars x, y; while x > 0 do x := x + y; y := y + 1 end");
  Spectrum sp = spectrum_of(h);
  REQUIRE(sp.count() == 1);
  REQUIRE(sp.k_max == 3);
  CoefficientTable t = coefficient_table(h, sp);
  CHECK(t.coefficient(0, 0, 0, 0) == an(1));
  CHECK(t.coefficient(0, 0, 0, 1) == an(0));
  CHECK(t.coefficient(0, 0, 0, 2) == an(0));
  CHECK(t.coefficient(0, 1, 0, 0) == an(0));
  CHECK(t.coefficient(0, 1, 0, 1) == an(1));
  CHECK(t.coefficient(0, 1, 0, 2) == an(0));
  CHECK(t.coefficient(0, 2, 0, 0) == an(0));
  CHECK(t.coefficient(0, 2, 0, 1) == an(0));
  CHECK(t.coefficient(0, 2, 0, 2) == an(1));
}

TEST_CASE("coefficient_table: mixed multiplicities pad with zero rows") {
  // Guard x + y: g(f^n) = (x + n) + 2^n y.
  HomogenizedSystem h = hs("vars x, y; while x + y > 0 do x := x + 1; y := 2*y end");
  Spectrum sp = spectrum_of(h);
  CoefficientTable t = coefficient_table(h, sp);
  REQUIRE(sp.count() == 2);
  REQUIRE(sp.eigenvalues[0] == an(1));
  REQUIRE(sp.eigenvalues[1] == an(2));
  REQUIRE(sp.k_max == 2);
  // Eigenvalue 1 (multiplicity 2): h_0 = x, h_1 = 1.
  CHECK(t.coefficient(0, 0, 0, 0) == an(1));
  CHECK(t.coefficient(0, 0, 0, 1) == an(0));
  CHECK(t.coefficient(0, 0, 0, 2) == an(0));
  CHECK(t.coefficient(0, 1, 0, 2) == an(1));
  // Eigenvalue 2 (multiplicity 1): h_0 = y, padded h_1 = 0.
  CHECK(t.coefficient(0, 0, 1, 1) == an(1));
  CHECK(t.coefficient(0, 0, 1, 0) == an(0));
  CHECK(t.coefficient(0, 1, 1, 1) == an(0));
  CHECK(t.coefficient(0, 1, 1, 2) == an(0));
}

TEST_CASE("closed-form reconstruction matches exact iteration") {
  check_reconstruction("vars x; while x > 0 do x := x - 1 end");
  check_reconstruction("vars x; while x > 0 do x := 2*x end");
  check_reconstruction("vars x, y; while x > 0 do x := x + y; y := y + 1 end");
  check_reconstruction(
      "vars x, y; while x > 0 do x := 3*x - 4*y - 2; y := 4*x + 3*y - 4 end");
  check_reconstruction("vars x, y; while x + y + 5 > 0 do x := y; y := 0*y end");
  check_reconstruction(
      "vars x, y, z; while x - z > 0 && y > 0 do x := x - 2*y + z; y := x + y; z := z + 2 end");
}

TEST_CASE("conjugate eigenvalues carry conjugate coefficients") {
  HomogenizedSystem h =
      hs("vars x, y; while x - y + 7 > 0 do x := 3*x - 4*y - 2; y := 4*x + 3*y - 4 end");
  Spectrum sp = spectrum_of(h);
  CoefficientTable t = coefficient_table(h, sp);
  int ja = -1, jb = -1;
  for (int j = 0; j < sp.count(); ++j) {
    if (sp.eigenvalues[static_cast<size_t>(j)].is_rational()) continue;
    (ja < 0 ? ja : jb) = j;
  }
  REQUIRE(ja >= 0);
  REQUIRE(jb >= 0);
  REQUIRE(sp.eigenvalues[static_cast<size_t>(ja)] ==
          conj(sp.eigenvalues[static_cast<size_t>(jb)]));
  for (int k = 0; k <= 2; ++k)
    CHECK(t.coefficient(0, 0, ja, k) == conj(t.coefficient(0, 0, jb, k)));
}

TEST_CASE("shift covariance holds exactly in-field") {
  const char* sources[] = {
      "vars x; while x > 0 do x := x + 1 end",
      "vars x, y; while x > 0 do x := x + y; y := y + 1 end",
      "vars x, y; while x + y > 0 do x := x + 1; y := 2*y end",
      "vars x, y; while x > 0 do x := 3*x - 4*y - 2; y := 4*x + 3*y - 4 end",
  };
  for (const char* src : sources) {
    LoopProgram p = parse_loop(src);
    HomogenizedSystem h = homogenize(p);
    Spectrum sp = spectrum_of(h);
    CoefficientTable t = coefficient_table(h, sp);
    for (const IVec& x : probe_grid(p.dimension)) {
      IVec fx = p.update.matrix * x + p.update.offset;
      for (int j = 0; j < sp.count(); ++j) {
        NFElem theta = NFElem::generator(t.block_of(j).field);
        for (int g = 0; g < t.guard_count; ++g)
          for (int i = 0; i < t.k_max; ++i) {
            // h_{i,j}(f(x)) = lambda_j * (h_{i,j}(x) + h_{i+1,j}(x)).
            NFElem next = i + 1 < t.k_max ? t.in_field_value(g, i + 1, j, x) : NFElem();
            CHECK(t.in_field_value(g, i, j, fx) ==
                  theta * (t.in_field_value(g, i, j, x) + next));
          }
      }
    }
  }
}

TEST_CASE("dominance order reflects asymptotic growth at n = 10^4") {
  HomogenizedSystem h = hs("vars x, y; while x > 0 do x := x + y; y := 2*y end");
  Spectrum sp = spectrum_of(h);
  DominanceStructure ds = dominance_structure(sp);
  const double n = 1e4;
  auto log_binom = [n](int i) {
    return std::lgamma(n + 1) - std::lgamma(i + 1) - std::lgamma(n - i + 1);
  };
  auto log_rho = [](const DominanceClass& c) {
    Rational mid = c.modulus.refine_to(Rational(1, 1 << 30)).re.mid();
    return std::log(to_double(mid));
  };
  for (size_t c = 0; c + 1 < ds.classes.size(); ++c) {
    const DominanceClass &lo = ds.classes[c], &hi = ds.classes[c + 1];
    double log_ratio = log_binom(lo.binomial_index) + n * log_rho(lo) -
                       log_binom(hi.binomial_index) - n * log_rho(hi);
    if (lo.modulus_rank != hi.modulus_rank)
      CHECK(log_ratio < std::log(1e-6));
    else
      CHECK(log_ratio < std::log(1e-2));
  }
}

TEST_CASE("nondegeneracy_reduction: sign flip needs L = 2") {
  LoopProgram p = parse_loop("vars x; while x > 0 do x := -x end");
  auto [q, l] = nondegeneracy_reduction(p);
  CHECK(l == 2);
  CHECK(q == power_transform(p, 2));
}

TEST_CASE("nondegeneracy_reduction: counting down is already non-degenerate") {
  LoopProgram p = parse_loop("vars x; while x > 0 do x := x - 1 end");
  auto [q, l] = nondegeneracy_reduction(p);
  CHECK(l == 1);
  CHECK(q == p);
}

TEST_CASE("nondegeneracy_reduction: eighth-root rotation needs L = 4") {
  LoopProgram p = parse_loop("vars x, y; while x > 0 do x := x - y; y := x + y end");
  auto [q, l] = nondegeneracy_reduction(p);
  CHECK(l == 4);
  CHECK(q.guards.size() == 4);
}

TEST_CASE("nondegeneracy_reduction: cap aborts with LimitError") {
  // Eigenvalues are primitive cube roots of unity; L would be 3.
  LoopProgram p = parse_loop("vars x, y; while x > 0 do x := -y; y := x - y end");
  CHECK_THROWS_AS(nondegeneracy_reduction(p, 2), LimitError);
  auto [q, l] = nondegeneracy_reduction(p);
  CHECK(l == 3);
}

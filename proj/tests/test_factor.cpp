// Factorization oracles: hand-checked splittings, irreducibility of classic
// stress cases (x^4 + 1 is reducible mod every prime), multiplicity handling.

#include <algorithm>

#include "doctest.h"
#include "linterm/factor.hpp"

using namespace linterm;

namespace {
IntPoly ip(std::vector<long> c) {
  std::vector<Int> v(c.begin(), c.end());
  return IntPoly(std::move(v));
}

bool same_factor_set(std::vector<IntPoly> got, std::vector<IntPoly> want) {
  auto key = [](const IntPoly& p) { return poly_to_string(p); };
  std::sort(got.begin(), got.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
  std::sort(want.begin(), want.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
  return got == want;
}
}  // namespace

TEST_CASE("squarefree splitting") {
  CHECK(same_factor_set(factor_squarefree(ip({-1, 0, 1})), {ip({-1, 1}), ip({1, 1})}));
  CHECK(same_factor_set(factor_squarefree(ip({-2, 0, -1, 0, 1})),  // (x^2+1)(x^2-2)
                        {ip({1, 0, 1}), ip({-2, 0, 1})}));
  // x^4 - 6x^2 + 25 = (x^2 - 4x + 5)(x^2 + 4x + 5)
  CHECK(same_factor_set(factor_squarefree(ip({25, 0, -6, 0, 1})),
                        {ip({5, -4, 1}), ip({5, 4, 1})}));
  // Product of eight linear factors.
  IntPoly prod = IntPoly::constant(Int(1));
  std::vector<IntPoly> lin;
  for (long r = 1; r <= 8; ++r) {
    lin.push_back(ip({-r, 1}));
    prod = prod * lin.back();
  }
  CHECK(same_factor_set(factor_squarefree(prod), lin));
}

TEST_CASE("irreducibility") {
  CHECK(is_irreducible(ip({1, 0, 0, 0, 1})));      // x^4 + 1
  CHECK(is_irreducible(ip({1, 0, -10, 0, 1})));    // minpoly of sqrt2+sqrt3
  CHECK(is_irreducible(ip({-5, -2, 0, 1})));       // x^3 - 2x - 5
  CHECK(is_irreducible(ip({25, -6, 1})));          // 3+4i and conjugate
  CHECK_FALSE(is_irreducible(ip({-1, 0, 1})));     // (x-1)(x+1)
  CHECK_FALSE(is_irreducible(ip({1, 2, 1})));      // (x+1)^2
  CHECK_FALSE(is_irreducible(ip({2})));            // constants are units
  CHECK(is_irreducible(ip({0, 1})));               // x
  // Scaled/negated inputs are normalized first.
  CHECK(is_irreducible(ip({-2, 0, -2})));          // -2(x^2+1)
}

TEST_CASE("factorization with multiplicities") {
  // 8 * (2x+3)^3 * (x-1), content dropped.
  IntPoly f = Int(8) * ip({3, 2}).pow(3) * ip({-1, 1});
  auto parts = factorize(f);
  REQUIRE(parts.size() == 2);
  std::sort(parts.begin(), parts.end(), [](auto& a, auto& b) { return a.second < b.second; });
  CHECK(parts[0].first == ip({-1, 1}));
  CHECK(parts[0].second == 1);
  CHECK(parts[1].first == ip({3, 2}));
  CHECK(parts[1].second == 3);
  CHECK(factorize(ip({7})).empty());
  CHECK(factorize(IntPoly()).empty());
}

TEST_CASE("cyclotomic factors of x^n - 1") {
  // x^12 - 1 = prod of cyclotomics over divisors of 12.
  std::vector<Int> c(13, Int(0));
  c[0] = -1;
  c[12] = 1;
  auto parts = factor_squarefree(IntPoly(std::move(c)));
  std::vector<IntPoly> want;
  for (unsigned d : {1u, 2u, 3u, 4u, 6u, 12u}) want.push_back(cyclotomic(d));
  CHECK(same_factor_set(parts, want));
}

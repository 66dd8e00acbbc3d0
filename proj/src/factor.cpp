// Zassenhaus-style factorization. Pipeline: squarefree reduction, pick a prime
// keeping f squarefree mod p, Cantor-Zassenhaus splitting in F_p[x], quadratic
// Hensel lifting past the Mignotte bound, subset recombination with trial
// division. Degrees in this project stay small (tens), so the exponential
// recombination corner never bites.

#include "linterm/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <random>

namespace linterm {
namespace {

// ---------------------------------------------------------------------------
// Arithmetic in F_p[x], p < 2^31 so products fit in uint64_t.

using u64 = std::uint64_t;
using MPoly = std::vector<u64>;  // ascending coefficients, trimmed

void mtrim(MPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int mdeg(const MPoly& a) { return static_cast<int>(a.size()) - 1; }

u64 inv_mod(u64 a, u64 p) {
  // Extended Euclid on machine words.
  long long t = 0, nt = 1, r = static_cast<long long>(p), nr = static_cast<long long>(a % p);
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (t < 0) t += static_cast<long long>(p);
  return static_cast<u64>(t);
}

MPoly madd(const MPoly& a, const MPoly& b, u64 p) {
  MPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + b[i]) % p;
  mtrim(c);
  return c;
}
MPoly msub(const MPoly& a, const MPoly& b, u64 p) {
  MPoly c(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = (c[i] + p - b[i]) % p;
  mtrim(c);
  return c;
}
MPoly mmul(const MPoly& a, const MPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  MPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  mtrim(c);
  return c;
}

// Remainder of a by b (b nonzero).
MPoly mrem(MPoly a, const MPoly& b, u64 p) {
  u64 linv = inv_mod(b.back(), p);
  while (mdeg(a) >= mdeg(b)) {
    u64 factor = a.back() * linv % p;
    int shift = mdeg(a) - mdeg(b);
    for (size_t j = 0; j < b.size(); ++j) {
      auto& t = a[shift + j];
      t = (t + p - factor * b[j] % p) % p;
    }
    mtrim(a);
    if (a.empty()) break;
  }
  return a;
}

std::pair<MPoly, MPoly> mdivmod(MPoly a, const MPoly& b, u64 p) {
  if (mdeg(a) < mdeg(b)) return {{}, a};
  u64 linv = inv_mod(b.back(), p);
  MPoly q(mdeg(a) - mdeg(b) + 1, 0);
  while (mdeg(a) >= mdeg(b)) {
    u64 factor = a.back() * linv % p;
    int shift = mdeg(a) - mdeg(b);
    q[shift] = factor;
    for (size_t j = 0; j < b.size(); ++j) {
      auto& t = a[shift + j];
      t = (t + p - factor * b[j] % p) % p;
    }
    mtrim(a);
    if (a.empty()) break;
  }
  mtrim(q);
  return {q, a};
}

MPoly mmonic(MPoly a, u64 p) {
  if (a.empty()) return a;
  u64 linv = inv_mod(a.back(), p);
  for (auto& c : a) c = c * linv % p;
  return a;
}

MPoly mgcd(MPoly a, MPoly b, u64 p) {
  while (!b.empty()) {
    MPoly r = mrem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return mmonic(std::move(a), p);
}

MPoly mderiv(const MPoly& a, u64 p) {
  if (a.size() <= 1) return {};
  MPoly d(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * (i % p) % p;
  mtrim(d);
  return d;
}

// a^e mod (f, p), e an arbitrary-precision exponent.
MPoly mpowmod(MPoly a, Int e, const MPoly& f, u64 p) {
  MPoly r{1};
  a = mrem(std::move(a), f, p);
  while (e > 0) {
    if ((e & 1) != 0) r = mrem(mmul(r, a, p), f, p);
    e >>= 1;
    if (e > 0) a = mrem(mmul(a, a, p), f, p);
  }
  return r;
}

// Bezout coefficients: s*a + t*b = 1 mod p for coprime a, b.
void mbezout(const MPoly& a, const MPoly& b, u64 p, MPoly& s, MPoly& t) {
  MPoly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = mdivmod(r0, r1, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    MPoly ns = msub(s0, mmul(q, s1, p), p);
    s0 = std::move(s1);
    s1 = std::move(ns);
    MPoly nt = msub(t0, mmul(q, t1, p), p);
    t0 = std::move(t1);
    t1 = std::move(nt);
  }
  if (mdeg(r0) != 0) throw std::logic_error("mbezout: inputs not coprime");
  u64 linv = inv_mod(r0[0], p);
  for (auto& c : s0) c = c * linv % p;
  for (auto& c : t0) c = c * linv % p;
  s = std::move(s0);
  t = std::move(t0);
}

MPoly to_mod(const IntPoly& f, u64 p) {
  MPoly a(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) {
    Int c = f.coeff(i) % Int(p);
    if (c < 0) c += p;
    a[i] = c.convert_to<u64>();
  }
  mtrim(a);
  return a;
}

// ---------------------------------------------------------------------------
// Cantor-Zassenhaus: distinct-degree then equal-degree splitting.

void edf(const MPoly& g, int d, u64 p, std::mt19937_64& rng, std::vector<MPoly>& out) {
  if (mdeg(g) == d) {
    out.push_back(mmonic(g, p));
    return;
  }
  Int exponent = (pow(Int(p), static_cast<unsigned long>(d)) - 1) / 2;
  for (;;) {
    MPoly r(mdeg(g), 0);
    for (auto& c : r) c = rng() % p;
    mtrim(r);
    if (r.empty()) continue;
    MPoly s = mgcd(g, r, p);
    if (mdeg(s) > 0 && mdeg(s) < mdeg(g)) {
      edf(s, d, p, rng, out);
      edf(mdivmod(g, s, p).first, d, p, rng, out);
      return;
    }
    MPoly e = mpowmod(r, exponent, g, p);
    if (e.empty()) continue;
    e[0] = (e[0] + p - 1) % p;
    mtrim(e);
    s = mgcd(g, e, p);
    if (mdeg(s) > 0 && mdeg(s) < mdeg(g)) {
      edf(s, d, p, rng, out);
      edf(mdivmod(g, s, p).first, d, p, rng, out);
      return;
    }
  }
}

std::vector<MPoly> cantor_zassenhaus(const MPoly& f, u64 p, std::mt19937_64& rng) {
  std::vector<MPoly> out;
  MPoly rem = mmonic(f, p);
  MPoly h{0, 1};  // x
  for (int d = 1; mdeg(rem) >= 2 * d; ++d) {
    h = mpowmod(h, Int(p), rem, p);
    MPoly hx = h;
    if (hx.size() < 2) hx.resize(2, 0);
    hx[1] = (hx[1] + p - 1) % p;
    mtrim(hx);
    MPoly g = mgcd(rem, hx, p);
    if (mdeg(g) > 0) {
      edf(g, d, p, rng, out);
      rem = mdivmod(rem, g, p).first;
      h = mrem(h, rem, p);
    }
  }
  if (mdeg(rem) > 0) out.push_back(rem);
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic mod M (a prime power held as cpp_int), coefficients in [0, M).

using LPoly = std::vector<Int>;

void ltrim(LPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int ldeg(const LPoly& a) { return static_cast<int>(a.size()) - 1; }

Int lmod(Int v, const Int& M) {
  v %= M;
  if (v < 0) v += M;
  return v;
}

LPoly lreduce(LPoly a, const Int& M) {
  for (auto& c : a) c = lmod(c, M);
  ltrim(a);
  return a;
}

LPoly ladd(const LPoly& a, const LPoly& b, const Int& M) {
  LPoly c(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = lmod(c[i] + b[i], M);
  ltrim(c);
  return c;
}
LPoly lsub(const LPoly& a, const LPoly& b, const Int& M) {
  LPoly c(std::max(a.size(), b.size()), Int(0));
  for (size_t i = 0; i < a.size(); ++i) c[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) c[i] = lmod(c[i] - b[i], M);
  ltrim(c);
  return c;
}
LPoly lmul(const LPoly& a, const LPoly& b, const Int& M) {
  if (a.empty() || b.empty()) return {};
  LPoly c(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = lmod(c[i + j] + a[i] * b[j], M);
  }
  ltrim(c);
  return c;
}

// Division by a monic divisor, everything mod M.
std::pair<LPoly, LPoly> ldivmod_monic(LPoly a, const LPoly& b, const Int& M) {
  if (ldeg(a) < ldeg(b)) return {{}, a};
  LPoly q(ldeg(a) - ldeg(b) + 1, Int(0));
  while (ldeg(a) >= ldeg(b)) {
    Int factor = a.back();
    int shift = ldeg(a) - ldeg(b);
    q[shift] = factor;
    for (size_t j = 0; j < b.size(); ++j) a[shift + j] = lmod(a[shift + j] - factor * b[j], M);
    ltrim(a);
    if (a.empty()) break;
  }
  ltrim(q);
  return {q, a};
}

LPoly from_mod(const MPoly& a) {
  LPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = Int(a[i]);
  return r;
}

LPoly lify(const IntPoly& f, const Int& M) {
  LPoly a(f.degree() + 1);
  for (int i = 0; i <= f.degree(); ++i) a[i] = lmod(f.coeff(i), M);
  ltrim(a);
  return a;
}

// Balanced representative: coefficients in (-M/2, M/2].
IntPoly balanced(const LPoly& a, const Int& M) {
  std::vector<Int> c(a.size());
  for (size_t i = 0; i < a.size(); ++i) c[i] = (a[i] * 2 > M) ? Int(a[i] - M) : a[i];
  return IntPoly(std::move(c));
}

// One quadratic Hensel step: given f = g*h (mod m), s*g + t*h = 1 (mod m),
// h monic, lifts all four to the same congruences mod m^2.
struct HenselPair {
  LPoly g, h, s, t;
};

HenselPair hensel_step(const LPoly& f, const HenselPair& in, const Int& m) {
  Int m2 = m * m;
  LPoly g = lreduce(in.g, m2), h = lreduce(in.h, m2);
  LPoly s = lreduce(in.s, m2), t = lreduce(in.t, m2);
  LPoly e = lsub(f, lmul(g, h, m2), m2);
  auto [q, r] = ldivmod_monic(lmul(s, e, m2), h, m2);
  LPoly g1 = ladd(g, ladd(lmul(t, e, m2), lmul(q, g, m2), m2), m2);
  LPoly h1 = ladd(h, r, m2);
  LPoly b = lsub(ladd(lmul(s, g1, m2), lmul(t, h1, m2), m2), LPoly{Int(1)}, m2);
  auto [c, d] = ldivmod_monic(lmul(s, b, m2), h1, m2);
  LPoly s1 = lsub(s, d, m2);
  LPoly t1 = lsub(t, ladd(lmul(t, b, m2), lmul(c, g1, m2), m2), m2);
  return {g1, h1, s1, t1};
}

// Lift the factorization node = prod(factors[lo..hi)) from mod p to mod
// target = p^(2^steps). node's leading coefficient rides along in the leftmost
// branch; all other branch products are monic.
void hensel_tree(const LPoly& node, const std::vector<MPoly>& factors, int lo, int hi, u64 p,
                 int steps, std::vector<LPoly>& lifted, const Int& target) {
  if (hi - lo == 1) {
    lifted[lo] = lreduce(node, target);
    return;
  }
  int mid = lo + (hi - lo) / 2;
  MPoly left_p{1}, right_p{1};
  for (int i = lo; i < mid; ++i) left_p = mmul(left_p, factors[i], p);
  for (int i = mid; i < hi; ++i) right_p = mmul(right_p, factors[i], p);
  // Fold node's leading unit into the left branch so the right stays monic.
  MPoly node_p(node.size());
  {
    Int pI(p);
    for (size_t i = 0; i < node.size(); ++i) node_p[i] = lmod(node[i], pI).convert_to<u64>();
    mtrim(node_p);
  }
  u64 lc = node_p.back();
  for (auto& c : left_p) c = c * lc % p;
  MPoly s_p, t_p;
  mbezout(left_p, right_p, p, s_p, t_p);

  HenselPair pair{from_mod(left_p), from_mod(right_p), from_mod(s_p), from_mod(t_p)};
  Int m(p);
  while (m < target) {
    pair = hensel_step(lreduce(node, m * m), pair, m);
    m *= m;
  }
  hensel_tree(lreduce(pair.g, target), factors, lo, mid, p, steps, lifted, target);
  hensel_tree(lreduce(pair.h, target), factors, mid, hi, p, steps, lifted, target);
}

Int inv_mod_int(const Int& a, const Int& M) {
  Int t = 0, nt = 1, r = M, nr = lmod(a, M);
  while (nr != 0) {
    Int q = r / nr;
    Int tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::logic_error("inv_mod_int: not invertible");
  return lmod(t, M);
}

// Advance idx to the next k-combination of {0..n-1}; false when exhausted.
bool next_combination(std::vector<size_t>& idx, size_t n) {
  size_t k = idx.size();
  for (size_t i = k; i-- > 0;) {
    if (idx[i] + (k - i) < n) {
      ++idx[i];
      for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

bool try_exact_div(const IntPoly& a, const IntPoly& b, IntPoly& quotient) {
  // Integer-coefficient long division; bail out on any non-exact step.
  if (b.is_zero()) return false;
  std::vector<Int> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) return false;
  std::vector<Int> quo(a.degree() - db + 1, Int(0));
  for (int i = a.degree(); i >= db; --i) {
    Int head = rem[i];
    if (head == 0) continue;
    if (head % b.lc() != 0) return false;
    Int q = head / b.lc();
    quo[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeff(j);
  }
  for (const auto& c : rem)
    if (c != 0) return false;
  quotient = IntPoly(std::move(quo));
  return true;
}

u64 next_prime(u64 p) {
  auto is_prime = [](u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  do {
    ++p;
  } while (!is_prime(p));
  return p;
}

}  // namespace

std::vector<IntPoly> factor_squarefree(const IntPoly& input) {
  std::vector<IntPoly> out;
  IntPoly f = normalize_sign(primitive_part(input));
  if (f.degree() <= 0) return out;
  if (f.degree() == 1) {
    out.push_back(f);
    return out;
  }

  std::mt19937_64 rng(0x137f5eed);

  // Pick a few usable primes and keep the factorization with fewest modular
  // factors (less recombination work).
  std::vector<MPoly> best;
  u64 best_p = 0;
  int tried = 0;
  for (u64 p = 2; tried < 4;) {
    p = next_prime(p);
    if (f.lc() % Int(p) == 0) continue;
    MPoly fp = to_mod(f, p);
    if (mdeg(mgcd(fp, mderiv(fp, p), p)) != 0) continue;  // not squarefree mod p
    ++tried;
    std::vector<MPoly> fac = cantor_zassenhaus(fp, p, rng);
    if (best.empty() || fac.size() < best.size()) {
      best = std::move(fac);
      best_p = p;
    }
    if (best.size() == 1) break;
  }
  if (best.size() == 1) {
    out.push_back(f);
    return out;
  }
  u64 p = best_p;
  std::sort(best.begin(), best.end(),
            [](const MPoly& a, const MPoly& b) { return mdeg(a) < mdeg(b); });

  // Mignotte-style bound: any candidate lc(f) * (monic product of modular
  // factors) that corresponds to a true divisor has coefficients bounded by
  // 2^n * sqrt(n+1) * |f|_inf * |lc(f)|.
  Int height = 0;
  for (const auto& c : f.coeffs()) height = std::max(height, boost::multiprecision::abs(c));
  Int bound = pow(Int(2), static_cast<unsigned long>(f.degree())) *
              (isqrt(Int(f.degree() + 1)) + 1) * height * boost::multiprecision::abs(f.lc());
  Int target(p);
  while (target <= 2 * bound) target *= target;

  std::vector<LPoly> lifted(best.size());
  hensel_tree(lify(f, target), best, 0, static_cast<int>(best.size()), p, 0, lifted, target);
  // Normalize every lifted factor to monic mod target (leftmost one carries lc).
  for (auto& g : lifted) {
    if (g.empty()) throw std::logic_error("factor: lift produced zero");
    Int linv = inv_mod_int(g.back(), target);
    for (auto& c : g) c = lmod(c * linv, target);
  }

  // Subset recombination with trial division over Z.
  std::vector<int> alive(lifted.size());
  for (size_t i = 0; i < alive.size(); ++i) alive[i] = static_cast<int>(i);
  IntPoly rem_f = f;

  auto try_subset = [&](const std::vector<int>& subset) -> bool {
    LPoly prod{lmod(rem_f.lc(), target)};
    for (int idx : subset) prod = lmul(prod, lifted[idx], target);
    IntPoly cand = primitive_part(balanced(prod, target));
    if (cand.degree() <= 0) return false;
    IntPoly quotient;
    if (!try_exact_div(rem_f, cand, quotient)) return false;
    out.push_back(normalize_sign(cand));
    rem_f = primitive_part(quotient);
    return true;
  };

  for (size_t card = 1; !alive.empty() && card <= alive.size() / 2;) {
    std::vector<int> pick(card);
    std::vector<size_t> idx(card);
    for (size_t i = 0; i < card; ++i) idx[i] = i;
    bool removed = false;
    do {
      for (size_t i = 0; i < card; ++i) pick[i] = alive[idx[i]];
      if (try_subset(pick)) {
        std::vector<int> next_alive;
        for (int a : alive)
          if (std::find(pick.begin(), pick.end(), a) == pick.end()) next_alive.push_back(a);
        alive = std::move(next_alive);
        removed = true;  // restart this cardinality against the shrunk list
        break;
      }
    } while (next_combination(idx, alive.size()));
    if (!removed) ++card;
  }
  if (rem_f.degree() > 0) out.push_back(normalize_sign(primitive_part(rem_f)));
  return out;
}

std::vector<std::pair<IntPoly, int>> factorize(const IntPoly& f) {
  std::vector<std::pair<IntPoly, int>> out;
  for (const auto& [part, mult] : squarefree_decomposition(f))
    for (const auto& irr : factor_squarefree(part)) out.emplace_back(irr, mult);
  return out;
}

bool is_irreducible(const IntPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  IntPoly g = primitive_part(f);
  if (gcd(g, g.derivative()).degree() != 0) return false;
  return factor_squarefree(g).size() == 1;
}

}  // namespace linterm

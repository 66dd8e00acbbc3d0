// Spectrum normalization to the unit circle and the relation-lattice search.

#include "linterm/torus.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace linterm {

namespace {

constexpr unsigned kRoundBits = 128;   // outward rounding after interval products
constexpr unsigned kFilterBits = 80;   // precision of the cached gamma enclosures
constexpr long long kBoxWorkCap = 1 << 18;     // root-of-unity residue box
constexpr long long kMixedWorkCap = 4'000'000; // mixed enumeration candidates

QComplex one_value() { return QComplex(Rational(1), Rational(0)); }

long long to_ll(const Int& v) {
  static const Int kCap("4000000000000000000");
  if (v > kCap || v < -kCap) throw std::domain_error("relation exponent too large");
  return v.convert_to<long long>();
}

// Certified enclosure of base^e with bounded-precision endpoints.
ComplexInterval ipow(const ComplexInterval& base, long long e) {
  ComplexInterval b = e < 0 ? base.inverse() : base;
  unsigned long long u =
      e < 0 ? -static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
  ComplexInterval r = ComplexInterval::point(one_value());
  while (u) {
    if (u & 1) r = (r * b).outward(kRoundBits);
    u >>= 1;
    if (u) b = (b * b).outward(kRoundBits);
  }
  return r;
}

QComplex qpow(QComplex b, long long e) {
  if (e < 0) {
    Rational n2 = b.norm2();
    if (n2 == 0) throw std::domain_error("qpow: zero base");
    b = QComplex(b.re / n2, -b.im / n2);
    e = -e;
  }
  QComplex r = one_value();
  unsigned long long u = static_cast<unsigned long long>(e);
  while (u) {
    if (u & 1) r = r * b;
    u >>= 1;
    if (u) b = b * b;
  }
  return r;
}

double coeff_magnitude(const Int& c) {
  Int a = c < 0 ? Int(-c) : c;
  return a.convert_to<double>();
}

// ---- double-precision ball arithmetic -------------------------------------
// A Ball contains a complex value within `rad` of the center. Every operation
// pads the radius generously enough to absorb double rounding, so a decision
// made against the radius is certified; when the radius is too fat to decide,
// callers fall back to exact interval arithmetic. For the unit-modulus gammas
// handled here, inversion is exactly conjugation, so negative powers stay
// representable without division error.

constexpr double kBallPad = 1e-13;

struct Ball {
  double re, im, rad;
};

Ball ball_mul(const Ball& a, const Ball& b) {
  double abs_a = std::abs(a.re) + std::abs(a.im) + a.rad;  // 1-norm upper bound
  double abs_b = std::abs(b.re) + std::abs(b.im) + b.rad;
  Ball out;
  out.re = a.re * b.re - a.im * b.im;
  out.im = a.re * b.im + a.im * b.re;
  out.rad = a.rad * abs_b + b.rad * abs_a + kBallPad * (abs_a * abs_b + 1.0);
  return out;
}

// base^e for a unit-modulus base (inverse = conjugate).
Ball ball_pow_unit(Ball b, long long e) {
  if (e < 0) {
    b.im = -b.im;
    e = -e;
  }
  Ball r{1.0, 0.0, 0.0};
  unsigned long long u = static_cast<unsigned long long>(e);
  while (u) {
    if (u & 1) r = ball_mul(r, b);
    u >>= 1;
    if (u) b = ball_mul(b, b);
  }
  return r;
}

Ball ball_of(const AlgebraicNumber& gamma) {
  ComplexInterval b = gamma.refine_to(Rational(Int(1), pow(Int(2), kFilterBits)));
  QComplex m = b.mid();
  Ball out{to_double(m.re), to_double(m.im), 0.0};
  // half-diagonal of the box plus slack for the double conversions
  out.rad = 0.7072 * to_double(b.max_side()) + 1e-15 * (std::abs(out.re) + std::abs(out.im) + 1.0);
  return out;
}

}  // namespace

NormalizedSpectrum normalize(const Spectrum& sp) {
  NormalizedSpectrum out;
  out.source = sp;
  const int s = sp.count();
  out.gammas.assign(static_cast<size_t>(s), AlgebraicNumber(Rational(0)));
  std::vector<bool> done(static_cast<size_t>(s), false);
  const AlgebraicNumber one(Rational(1));
  for (int j = 0; j < s; ++j) {
    if (done[static_cast<size_t>(j)]) continue;
    const AlgebraicNumber& lam = sp.eigenvalues[static_cast<size_t>(j)];
    if (lam.is_zero()) throw std::domain_error("normalize: zero eigenvalue");
    if (lam.is_real()) {
      out.gammas[static_cast<size_t>(j)] = AlgebraicNumber(Rational(sign(lam)));
      done[static_cast<size_t>(j)] = true;
      continue;
    }
    AlgebraicNumber len2 = abs2(lam);
    AlgebraicNumber gamma = len2 == one ? lam : lam * inverse(sqrt_nonneg(len2));
    out.gammas[static_cast<size_t>(j)] = gamma;
    done[static_cast<size_t>(j)] = true;
    // A conjugate eigenvalue gets the conjugate gamma: cheaper and closes the
    // list under conjugation by construction.
    AlgebraicNumber lc = conj(lam);
    for (int k = j + 1; k < s; ++k) {
      size_t ks = static_cast<size_t>(k);
      if (!done[ks] && sp.eigenvalues[ks] == lc) {
        out.gammas[ks] = conj(gamma);
        done[ks] = true;
        break;
      }
    }
  }
  out.orders.reserve(static_cast<size_t>(s));
  for (const AlgebraicNumber& gamma : out.gammas) out.orders.push_back(root_of_unity_order(gamma));
  return out;
}

long long SearchBudget::instance_bound(int s) const {
  double base = degree_bound * std::log(std::max(height_bound, 1.0));
  if (base <= 0) return 0;
  double raw = std::pow(base, static_cast<double>(s) * static_cast<double>(s));
  if (!(raw < 2e18)) return 2'000'000'000'000'000'000ll;
  return static_cast<long long>(std::ceil(raw));
}

SearchBudget SearchBudget::for_instance(const NormalizedSpectrum& g) {
  SearchBudget b;
  for (const AlgebraicNumber& gamma : g.gammas) {
    IntPoly m = gamma.min_poly();
    b.degree_bound = std::max(b.degree_bound, m.degree());
    for (const Int& c : m.coeffs()) b.height_bound = std::max(b.height_bound, coeff_magnitude(c));
  }
  long long raw = b.instance_bound(g.count());
  b.coordinate_cap = std::max(64ll, std::min(1'000'000ll, raw));
  b.truncated = raw > 1'000'000ll;
  return b;
}

bool is_relation(const NormalizedSpectrum& g, const IVec& v) {
  const int s = g.count();
  if (v.size() != s) throw std::invalid_argument("is_relation: dimension mismatch");
  // When every gamma in the support is a root of unity, the product is an
  // N-th root of unity for N = lcm of the orders. Distinct N-th roots are
  // at least 2 sin(pi/N) >= 15/(4N) apart; an enclosure of the product that
  // contains 1 and is smaller than that separation certifies equality, so
  // such instances never need exact arithmetic.
  unsigned long long n_lcm = 1;
  bool all_rou = true;
  for (int j = 0; j < s && all_rou; ++j) {
    if (v(j) == 0) continue;
    const std::optional<unsigned>& ord = g.orders[static_cast<size_t>(j)];
    if (!ord)
      all_rou = false;
    else
      n_lcm = std::lcm(n_lcm, static_cast<unsigned long long>(*ord));
    if (n_lcm > (1ull << 40)) all_rou = false;
  }
  const double separation = all_rou ? 15.0 / (8.0 * static_cast<double>(n_lcm)) : 0.0;

  // Tier 1: certified double-precision balls. Rejects almost every
  // non-relation and settles all-root-of-unity supports outright.
  {
    Ball prod{1.0, 0.0, 0.0};
    for (int j = 0; j < s; ++j) {
      if (v(j) == 0) continue;
      prod = ball_mul(prod, ball_pow_unit(ball_of(g.gammas[static_cast<size_t>(j)]), to_ll(v(j))));
    }
    double dist = std::hypot(prod.re - 1.0, prod.im);
    if (dist > prod.rad) return false;  // 1 lies outside the enclosure
    if (all_rou && dist + prod.rad < 0.99 * separation) return true;
  }

  // Tier 2: exact rational intervals at higher precision.
  Rational eps(Int(1), pow(Int(2), 112));
  ComplexInterval box = ComplexInterval::point(one_value());
  for (int j = 0; j < s; ++j) {
    if (v(j) == 0) continue;
    box = (box * ipow(g.gammas[static_cast<size_t>(j)].refine_to(eps), to_ll(v(j))))
              .outward(kRoundBits);
  }
  if (!box.contains(one_value())) return false;
  if (all_rou && n_lcm == 1) return true;
  // diameter <= 2 * max_side, so 8 * N * max_side < 15 suffices.
  if (all_rou && box.max_side() * Rational(Int(8) * Int(n_lcm)) < Rational(Int(15))) return true;

  // Tier 3: exact algebraic confirmation.
  AlgebraicNumber w(Rational(1));
  for (int j = 0; j < s; ++j)
    if (v(j) != 0) w = w * pow(g.gammas[static_cast<size_t>(j)], to_ll(v(j)));
  return w == AlgebraicNumber(Rational(1));
}

RelationSearch relation_basis(const NormalizedSpectrum& g, const SearchBudget& budget) {
  const int s = g.count();
  RelationSearch out;
  if (s == 0) {
    out.complete = true;
    return out;
  }

  // Pair conjugate positions; reals pair with themselves.
  std::vector<int> partner(static_cast<size_t>(s), -1);
  for (int j = 0; j < s; ++j) {
    size_t js = static_cast<size_t>(j);
    if (partner[js] >= 0) continue;
    if (g.gammas[js].is_real()) {
      partner[js] = j;
      continue;
    }
    AlgebraicNumber gc = conj(g.gammas[js]);
    int mate = -1;
    for (int k = j + 1; k < s && mate < 0; ++k) {
      size_t ks = static_cast<size_t>(k);
      if (partner[ks] < 0 && !g.gammas[ks].is_real() && g.gammas[ks] == gc) mate = k;
    }
    if (mate < 0) throw std::logic_error("normalized spectrum is not closed under conjugation");
    partner[js] = mate;
    partner[static_cast<size_t>(mate)] = j;
  }

  // One representative per pair, root-of-unity representatives first.
  struct Rep {
    int index;
    long long order;  // 0 when not a root of unity
  };
  std::vector<Rep> reps;
  for (int j = 0; j < s; ++j) {
    if (partner[static_cast<size_t>(j)] < j) continue;
    const std::optional<unsigned>& ord = g.orders[static_cast<size_t>(j)];
    reps.push_back({j, ord ? static_cast<long long>(*ord) : 0});
  }
  std::stable_sort(reps.begin(), reps.end(),
                   [](const Rep& a, const Rep& b) { return (a.order > 0) > (b.order > 0); });
  const int nreps = static_cast<int>(reps.size());
  int nrou = 0;
  while (nrou < nreps && reps[static_cast<size_t>(nrou)].order > 0) ++nrou;
  const int nirr = nreps - nrou;

  IMat accepted(0, s);
  IMat staircase(0, s);
  auto push = [&](const IVec& v) {
    if (lattice_contains(staircase, v)) return;
    IMat row(1, s);
    row.row(0) = v.transpose();
    accepted = stack_rows(accepted, row);
    staircase = hermite_basis(accepted);
  };

  // Seeds: conjugate-pair products and root-of-unity orders are exact
  // relations by construction.
  for (int j = 0; j < s; ++j)
    if (partner[static_cast<size_t>(j)] > j) {
      IVec v = IVec::Zero(s);
      v(j) = 1;
      v(partner[static_cast<size_t>(j)]) = 1;
      push(v);
    }
  for (const Rep& r : reps)
    if (r.order > 0) {
      IVec v = IVec::Zero(s);
      v(r.index) = r.order;
      push(v);
    }

  bool box_complete = true;
  long long box_size = 1;
  for (int i = 0; i < nrou; ++i) {
    box_size *= reps[static_cast<size_t>(i)].order;
    if (box_size > kBoxWorkCap) {
      box_complete = false;
      box_size = kBoxWorkCap + 1;
      break;
    }
  }

  const Rational feps(Int(1), pow(Int(2), kFilterBits));
  std::vector<ComplexInterval> gi, gi_inv;
  for (int j = 0; j < s; ++j) gi.push_back(g.gammas[static_cast<size_t>(j)].refine_to(feps));
  for (int j = 0; j < s; ++j) gi_inv.push_back(gi[static_cast<size_t>(j)].inverse());
  const ComplexInterval one_box = ComplexInterval::point(one_value());

  auto rep_pow = [&](int i, long long e) {
    int j = reps[static_cast<size_t>(i)].index;
    return e >= 0 ? ipow(gi[static_cast<size_t>(j)], e) : ipow(gi_inv[static_cast<size_t>(j)], -e);
  };
  auto consider = [&](const std::vector<long long>& t, const ComplexInterval& w) {
    if (!w.contains(one_value())) return;
    IVec v = IVec::Zero(s);
    for (int i = 0; i < nreps; ++i) v(reps[static_cast<size_t>(i)].index) = t[static_cast<size_t>(i)];
    if (lattice_contains(staircase, v)) return;
    if (is_relation(g, v)) push(v);
  };

  // Residues of the root-of-unity block: every relation reduces into this box
  // modulo the order seeds, so full coverage makes that sublattice complete.
  if (box_complete && nrou > 0) {
    std::vector<long long> t(static_cast<size_t>(nreps), 0);
    for (;;) {
      int nz = 0;
      for (int i = 0; i < nrou; ++i) nz += t[static_cast<size_t>(i)] != 0;
      if (nz >= 2) {
        ComplexInterval w = one_box;
        for (int i = 0; i < nrou; ++i)
          if (t[static_cast<size_t>(i)] != 0)
            w = (w * rep_pow(i, t[static_cast<size_t>(i)])).outward(kRoundBits);
        consider(t, w);
      }
      int i = 0;
      while (i < nrou) {
        if (++t[static_cast<size_t>(i)] < reps[static_cast<size_t>(i)].order) break;
        t[static_cast<size_t>(i)] = 0;
        ++i;
      }
      if (i == nrou) break;
    }
  }

  // Mixed phase: root-of-unity coordinates keep their residue ranges, the
  // remaining coordinates sweep [-W, W]. Pair folding doubles coordinates,
  // hence the factor two on the completeness target.
  bool mixed_complete = true;
  if (nirr > 0) {
    const long long bound = std::max(budget.instance_bound(s), 1ll);
    const long long need = 2 * bound;
    long long w_cap = 2 * std::min(budget.coordinate_cap, bound);
    auto fits = [&](long long w) {
      double c = static_cast<double>(box_size);
      for (int i = 0; i < nirr; ++i) {
        c *= static_cast<double>(2 * w + 1);
        if (c > 1e18) return false;
      }
      return c <= static_cast<double>(kMixedWorkCap);
    };
    while (w_cap > 0 && !fits(w_cap)) w_cap /= 2;
    mixed_complete = box_complete && w_cap >= need;
    if (w_cap > 0) {
      const long long W = w_cap;
      const int last = nreps - 1;
      const ComplexInterval& step = gi[static_cast<size_t>(reps[static_cast<size_t>(last)].index)];
      std::vector<long long> t(static_cast<size_t>(nreps), 0);
      for (int i = nrou; i < last; ++i) t[static_cast<size_t>(i)] = -W;
      for (;;) {
        int nz_rou = 0;
        for (int i = 0; i < nrou; ++i) nz_rou += t[static_cast<size_t>(i)] != 0;
        int nz_irr_outer = 0;
        long long first_irr = 0;
        for (int i = nrou; i < last; ++i) {
          long long ti = t[static_cast<size_t>(i)];
          if (ti != 0) {
            ++nz_irr_outer;
            if (first_irr == 0) first_irr = ti;
          }
        }
        bool sweep = nz_rou + nz_irr_outer > 0 && !(nz_rou == 0 && first_irr < 0);
        if (sweep) {
          ComplexInterval prefix = one_box;
          for (int i = 0; i < last; ++i)
            if (t[static_cast<size_t>(i)] != 0)
              prefix = (prefix * rep_pow(i, t[static_cast<size_t>(i)])).outward(kRoundBits);
          ComplexInterval w = (prefix * rep_pow(last, -W)).outward(kRoundBits);
          for (long long tt = -W; tt <= W; ++tt) {
            int nz_irr = nz_irr_outer + (tt != 0);
            bool skip = nz_irr == 0 || nz_rou + nz_irr <= 1;
            if (!skip && nz_rou == 0) {
              long long lead = first_irr != 0 ? first_irr : tt;
              skip = lead < 0;
            }
            if (!skip) {
              t[static_cast<size_t>(last)] = tt;
              consider(t, w);
            }
            if (tt < W) w = (w * step).outward(kRoundBits);
          }
          t[static_cast<size_t>(last)] = 0;
        }
        int i = 0;
        while (i < last) {
          ++t[static_cast<size_t>(i)];
          long long hi = i < nrou ? reps[static_cast<size_t>(i)].order - 1 : W;
          if (t[static_cast<size_t>(i)] <= hi) break;
          t[static_cast<size_t>(i)] = i < nrou ? 0 : -W;
          ++i;
        }
        if (i >= last) break;
      }
    }
  }

  out.lattice.rank = static_cast<int>(staircase.rows());
  for (int r = 0; r < staircase.rows(); ++r) {
    IVec v = staircase.row(r).transpose();
    out.lattice.basis.push_back(std::move(v));
  }
  out.complete = nirr == 0 ? box_complete : (box_complete && mixed_complete);
  return out;
}

TorusMembership torus_membership(const TorusSubgroup& t, const std::vector<ComplexInterval>& mu) {
  const auto& basis = t.relation_basis.basis;
  if (basis.empty()) return TorusMembership::inside;
  for (const IVec& v : basis)
    if (v.size() != static_cast<int>(mu.size()))
      throw std::invalid_argument("torus_membership: dimension mismatch");

  bool exact = true;
  for (const ComplexInterval& m : mu) exact = exact && m.is_point();
  if (exact) {
    for (const IVec& v : basis) {
      QComplex w = one_value();
      for (int j = 0; j < v.size(); ++j)
        if (v(j) != 0) w = w * qpow(mu[static_cast<size_t>(j)].mid(), to_ll(v(j)));
      if (!(w == one_value())) return TorusMembership::outside;
    }
    return TorusMembership::inside;
  }

  const Rational tight(Int(1), Int(1) << 20);
  Rational worst(0);
  for (const IVec& v : basis) {
    ComplexInterval w = ComplexInterval::point(one_value());
    for (int j = 0; j < v.size(); ++j) {
      if (v(j) == 0) continue;
      if (v(j) < 0 && mu[static_cast<size_t>(j)].contains_zero()) return TorusMembership::undecided;
      w = (w * ipow(mu[static_cast<size_t>(j)], to_ll(v(j)))).outward(kRoundBits);
    }
    if (!w.contains(one_value())) return TorusMembership::outside;
    worst = std::max(worst, w.max_side());
  }
  return worst <= tight ? TorusMembership::inside : TorusMembership::undecided;
}

std::optional<unsigned long> density_probe(const NormalizedSpectrum& g, const TorusSubgroup& t,
                                           const std::vector<ComplexInterval>& mu,
                                           const Rational& eps, unsigned long horizon) {
  const int s = g.count();
  if (static_cast<int>(mu.size()) != s)
    throw std::invalid_argument("density_probe: dimension mismatch");
  if (eps <= 0) throw std::invalid_argument("density_probe: eps must be positive");
  if (torus_membership(t, mu) == TorusMembership::outside)
    throw std::domain_error("density_probe: sample point lies outside the torus subgroup");

  const Rational feps(Int(1), pow(Int(2), 64ul));
  std::vector<ComplexInterval> step, w;
  for (int j = 0; j < s; ++j) {
    step.push_back(g.gammas[static_cast<size_t>(j)].refine_to(feps));
    w.push_back(ComplexInterval::point(one_value()));
  }
  const Rational eps2 = eps * eps;
  const Rational sure = eps * 7 / 10;  // max-norm below this certifies the modulus
  for (unsigned long n = 0;; ++n) {
    bool hit = true;
    for (int j = 0; j < s && hit; ++j) {
      ComplexInterval d = w[static_cast<size_t>(j)] - mu[static_cast<size_t>(j)];
      Rational re_mag = std::max(-d.re.lo, d.re.hi);
      Rational im_mag = std::max(-d.im.lo, d.im.hi);
      if (re_mag > eps || im_mag > eps) {
        hit = false;
      } else if (re_mag > sure || im_mag > sure) {
        hit = d.abs2().hi <= eps2;
      }
    }
    if (hit) return n;
    if (n == horizon) break;
    for (int j = 0; j < s; ++j)
      w[static_cast<size_t>(j)] =
          (w[static_cast<size_t>(j)] * step[static_cast<size_t>(j)]).outward(96);
  }
  return std::nullopt;
}

}  // namespace linterm

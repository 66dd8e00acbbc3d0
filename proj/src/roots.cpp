// Root isolation/refinement. Strategy: factor the input into irreducibles
// (so rational roots are exactly the linear factors and bisection never lands
// on a root of a higher-degree factor), isolate per factor, then refine until
// all boxes are pairwise disjoint. Non-real roots: Aberth seeds in doubles,
// then certified discs in exact arithmetic via min_i |z - root_i| <=
// deg * |f(z)/f'(z)|, kept strictly off the real axis.

#include "linterm/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "linterm/factor.hpp"

namespace linterm {
namespace {

// ---------------------------------------------------------------------------
// Sturm machinery.

std::vector<IntPoly> sturm_chain(const IntPoly& f) {
  std::vector<IntPoly> chain;
  chain.push_back(f);
  chain.push_back(f.derivative());
  while (!chain.back().is_zero() && chain.back().degree() > 0) {
    const IntPoly& a = chain[chain.size() - 2];
    const IntPoly& b = chain.back();
    // Negated remainder; scaling by a positive constant preserves signs, so
    // compensate when the pseudo-division factor lc(b)^(d+1) is negative.
    IntPoly r = pseudo_divmod(a, b).second;
    bool negative_factor = b.lc() < 0 && (a.degree() - b.degree() + 1) % 2 == 1;
    if (!negative_factor) r = -r;
    if (r.is_zero()) break;
    chain.push_back(primitive_part(r));
  }
  return chain;
}

int sign_of(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

int sign_variations(const std::vector<IntPoly>& chain, const Rational& x) {
  int var = 0, last = 0;
  for (const auto& p : chain) {
    int s = sign_of(p.eval<Rational>(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++var;
    last = s;
  }
  return var;
}

Rational cauchy_bound(const IntPoly& f) {
  Rational sum = 1;
  Rational lc_abs(boost::multiprecision::abs(f.lc()));
  for (int i = 0; i < f.degree(); ++i)
    sum += Rational(boost::multiprecision::abs(f.coeff(i))) / lc_abs;
  return sum;
}

// Isolating intervals for an irreducible polynomial (no rational roots when
// degree >= 2, so bisection midpoints are never roots).
std::vector<QInterval> isolate_real_irreducible(const IntPoly& f) {
  std::vector<QInterval> out;
  if (f.degree() == 1) {
    out.push_back(QInterval::point(Rational(-f.coeff(0), f.coeff(1))));
    return out;
  }
  auto chain = sturm_chain(f);
  Rational bound = cauchy_bound(f);
  struct Seg {
    Rational a, b;
    int count;
  };
  std::vector<Seg> work;
  int total = sign_variations(chain, -bound) - sign_variations(chain, bound);
  if (total > 0) work.push_back({-bound, bound, total});
  while (!work.empty()) {
    Seg s = work.back();
    work.pop_back();
    if (s.count == 1) {
      out.push_back(QInterval(s.a, s.b));
      continue;
    }
    Rational m = (s.a + s.b) / 2;
    int left = sign_variations(chain, s.a) - sign_variations(chain, m);
    if (left > 0) work.push_back({s.a, m, left});
    if (s.count - left > 0) work.push_back({m, s.b, s.count - left});
  }
  std::sort(out.begin(), out.end(), [](const QInterval& x, const QInterval& y) {
    return x.lo < y.lo;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Aberth-Ehrlich seeds in double precision.

std::vector<std::complex<double>> aberth_seeds(const IntPoly& f, int iters, double phase) {
  const int n = f.degree();
  unsigned maxbits = 0;
  for (const auto& c : f.coeffs()) maxbits = std::max(maxbits, bit_length(c));
  Int shift = maxbits > 500 ? pow(Int(2), maxbits - 500) : Int(1);
  std::vector<double> a(n + 1);
  for (int i = 0; i <= n; ++i) a[i] = to_double(Rational(f.coeff(i), shift));

  auto eval = [&](std::complex<double> z) {
    std::complex<double> p = 0, dp = 0;
    for (int i = n; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + a[i];
    }
    return std::make_pair(p, dp);
  };

  double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::fabs(a[i] / a[n]));
  radius = 0.5 * (1.0 + radius);

  std::vector<std::complex<double>> z(n);
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * (k + 0.25) / n + phase;
    z[k] = std::polar(radius * (1.0 + 0.05 * k / std::max(1, n)), ang);
  }
  for (int it = 0; it < iters; ++it) {
    double moved = 0;
    for (int k = 0; k < n; ++k) {
      auto [p, dp] = eval(z[k]);
      if (std::abs(p) == 0) continue;
      if (std::abs(dp) == 0) {
        z[k] += 1e-7;
        continue;
      }
      std::complex<double> w = p / dp, sum = 0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        std::complex<double> d = z[k] - z[j];
        if (std::abs(d) < 1e-300) d = 1e-12;
        sum += 1.0 / d;
      }
      std::complex<double> denom = 1.0 - w * sum;
      if (std::abs(denom) < 1e-300) denom = 1e-12;
      std::complex<double> step = w / denom;
      z[k] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-16) break;
  }
  return z;
}

QComplex round_complex(const QComplex& z, unsigned bits) {
  return QComplex(round_down(z.re, bits), round_down(z.im, bits));
}

QComplex eval_qc(const IntPoly& f, const QComplex& z) {
  QComplex r(Rational(0), Rational(0));
  for (int i = f.degree(); i >= 0; --i)
    r = r * z + QComplex(Rational(f.coeff(i)), Rational(0));
  return r;
}

// Certified enclosure radius: the disc around c of radius
// deg * |f(c)| / |f'(c)| contains at least one root of f.
// Returns nullopt if f'(c) = 0. Radius 0 means c is itself a root.
std::optional<Rational> certified_radius(const IntPoly& f, const IntPoly& df, const QComplex& c,
                                         unsigned bits) {
  QComplex fc = eval_qc(f, c);
  if (fc.is_zero()) return Rational(0);
  QComplex dfc = eval_qc(df, c);
  if (dfc.is_zero()) return std::nullopt;
  Rational up = sqrt_upper(fc.norm2(), bits);
  Rational lo = sqrt_lower(dfc.norm2(), bits);
  if (lo <= 0) return std::nullopt;
  return Rational(f.degree()) * up / lo;
}

struct CertifiedDisc {
  QComplex center;
  Rational radius;
};

// Disjointness of the bounding squares (stronger than disc disjointness, and
// what the public boxes need): rectangles split along one axis.
bool squares_disjoint(const CertifiedDisc& a, const CertifiedDisc& b) {
  Rational rr = a.radius + b.radius;
  Rational dre = a.center.re - b.center.re;
  Rational dim = a.center.im - b.center.im;
  if (dre < 0) dre = -dre;
  if (dim < 0) dim = -dim;
  return dre > rr || dim > rr;
}

// Upper-half-plane representatives of the non-real roots of an irreducible f,
// as certified discs strictly above the real axis whose bounding squares are
// pairwise disjoint (conjugates included). Throws after repeated failures.
std::vector<CertifiedDisc> isolate_upper_discs(const IntPoly& f, int expected_pairs) {
  if (expected_pairs == 0) return {};
  IntPoly df = f.derivative();
  for (int attempt = 0; attempt < 8; ++attempt) {
    int iters = 200 << attempt;
    unsigned bits = 96u << std::min(attempt, 5);
    auto seeds = aberth_seeds(f, iters, 0.1 * attempt);
    // The (deg - 2*pairs) seeds nearest the axis approximate the real roots;
    // drop them and keep one representative per conjugate pair.
    std::sort(seeds.begin(), seeds.end(), [](const auto& a, const auto& b) {
      return std::fabs(a.imag()) < std::fabs(b.imag());
    });
    std::vector<std::complex<double>> upper;
    for (size_t i = seeds.size() - 2 * expected_pairs; i < seeds.size(); ++i)
      if (seeds[i].imag() > 0) upper.push_back(seeds[i]);
    if (static_cast<int>(upper.size()) != expected_pairs) continue;

    std::vector<QComplex> centers;
    for (const auto& s : upper)
      centers.emplace_back(round_down(Rational(s.real()), bits),
                           round_down(Rational(s.imag()), bits));

    // Shrink loop: exact Newton polishing drives the certified radii down
    // until the squares separate (the roots themselves are distinct).
    for (int shrink = 0; shrink < 10; ++shrink) {
      std::vector<CertifiedDisc> discs;
      bool certified = true;
      for (const auto& c : centers) {
        auto rad = certified_radius(f, df, c, bits);
        if (!rad || c.im - *rad <= 0) {
          certified = false;
          break;
        }
        discs.push_back({c, *rad});
      }
      if (certified) {
        bool separated = true;
        for (size_t i = 0; i < discs.size() && separated; ++i) {
          CertifiedDisc conj_i{discs[i].center.conj(), discs[i].radius};
          for (size_t j = i + 1; j < discs.size() && separated; ++j) {
            CertifiedDisc conj_j{discs[j].center.conj(), discs[j].radius};
            separated = squares_disjoint(discs[i], discs[j]) &&
                        squares_disjoint(discs[i], conj_j) &&
                        squares_disjoint(conj_i, discs[j]);
          }
        }
        if (separated) return discs;
      }
      for (auto& c : centers) {
        QComplex fc = eval_qc(f, c), dfc = eval_qc(df, c);
        if (fc.is_zero() || dfc.is_zero()) continue;
        c = round_complex(c - fc / dfc, bits);
      }
      bits *= 2;
    }
  }
  throw std::runtime_error("isolate_upper_discs: failed to certify root approximations");
}

ComplexInterval box_of_real(const QInterval& iv) {
  return ComplexInterval(iv, QInterval::point(Rational(0)));
}

// Interval Horner with outward rounding.
ComplexInterval eval_box(const IntPoly& f, const ComplexInterval& z, unsigned bits) {
  ComplexInterval r = ComplexInterval::point(QComplex());
  for (int i = f.degree(); i >= 0; --i) {
    ComplexInterval ci = ComplexInterval::point(QComplex(Rational(f.coeff(i)), Rational(0)));
    r = (r * z + ci).outward(bits);
  }
  return r;
}

// Outward-round the endpoints of `b` to dyadics, then clip to `home` (a box
// isolating the same root). Exact rational radii and split points can leave
// endpoint representations thousands of bits wide even when the box itself is
// tiny, and every later consumer of the box would pay for that. Clipping
// keeps the result inside `home`, so isolation is preserved; the outward
// rounding keeps containment of the root and adds at most `slack` of width.
ComplexInterval tighten_rep(const ComplexInterval& b, const ComplexInterval& home,
                            const Rational& slack) {
  if (slack <= 0 || b.max_side() == 0) return b;
  Int q = ceil(Rational(2) / slack);  // 2 * 2^-bits <= slack
  unsigned bits = std::max(16u, bit_length(q));
  ComplexInterval r = b.outward(bits);
  QInterval re(std::max(r.re.lo, home.re.lo), std::min(r.re.hi, home.re.hi));
  QInterval im(std::max(r.im.lo, home.im.lo), std::min(r.im.hi, home.im.hi));
  return ComplexInterval(re, im);
}

ComplexInterval refine_complex(const IntPoly& f, ComplexInterval cur, const Rational& eps) {
  IntPoly df = f.derivative();
  unsigned bits = 96;
  int jiggle = 0;
  while (cur.max_side() > eps) {
    QComplex c = round_complex(cur.mid(), bits);
    QComplex fc = eval_qc(f, c);
    if (fc.is_zero()) return ComplexInterval::point(c);
    bool stepped = false;
    QComplex dfc = eval_qc(df, c);
    if (!dfc.is_zero()) {
      QComplex next = round_complex(c - fc / dfc, 2 * bits);
      auto rad = certified_radius(f, df, next, bits);
      if (rad) {
        if (*rad == 0) return ComplexInterval::point(next);
        ComplexInterval cand = ComplexInterval::square_around(next, *rad);
        // The disc certifies >= 1 root; containment in cur (exactly one root)
        // pins it to the same root.
        if (cur.contains(cand) && cand.max_side() < cur.max_side()) {
          cur = tighten_rep(cand, cur, cand.max_side() / 64);
          stepped = true;
        }
      }
    }
    if (!stepped) {
      // Quadrisect with a jiggled split point and keep the one quadrant whose
      // interval evaluation cannot exclude the root.
      Rational fr(2 * (jiggle % 3) + 3, 7);  // 3/7, 5/7, 7/7 -> vary split lines
      Rational sx = cur.re.lo + fr * cur.re.width() / 2;
      Rational sy = cur.im.lo + fr * cur.im.width() / 2;
      std::vector<ComplexInterval> quads;
      for (int qx = 0; qx < 2; ++qx)
        for (int qy = 0; qy < 2; ++qy)
          quads.push_back(ComplexInterval(
              qx == 0 ? QInterval(cur.re.lo, sx) : QInterval(sx, cur.re.hi),
              qy == 0 ? QInterval(cur.im.lo, sy) : QInterval(sy, cur.im.hi)));
      std::vector<ComplexInterval> alive;
      for (const auto& q : quads)
        if (eval_box(f, q, bits).contains_zero()) alive.push_back(q);
      if (alive.size() == 1) {
        cur = tighten_rep(alive.front(), cur, alive.front().max_side() / 64);
      } else {
        ++jiggle;
        bits *= 2;
      }
    }
  }
  return cur;
}

ComplexInterval refine_box(const IntPoly& f, const ComplexInterval& box, const Rational& eps) {
  if (box.is_point() || box.max_side() <= eps) return box;
  if (box.is_real_line()) {
    QInterval iv = refine_real_root(f, box.re, eps);
    return box_of_real(iv);
  }
  return refine_complex(f, box, eps);
}

// All root boxes of an irreducible polynomial (pairwise disjoint by
// construction: real intervals may share endpoints, handled by callers).
std::vector<ComplexInterval> isolate_boxes_irreducible(const IntPoly& g) {
  std::vector<ComplexInterval> out;
  auto reals = isolate_real_irreducible(g);
  for (const auto& iv : reals) out.push_back(box_of_real(iv));
  int pairs = (g.degree() - static_cast<int>(reals.size())) / 2;
  for (const auto& disc : isolate_upper_discs(g, pairs)) {
    if (disc.radius == 0) {
      out.push_back(ComplexInterval::point(disc.center));
      out.push_back(ComplexInterval::point(disc.center.conj()));
    } else {
      ComplexInterval sq = ComplexInterval::square_around(disc.center, disc.radius);
      out.push_back(sq);
      out.push_back(sq.conj());
    }
  }
  return out;
}

}  // namespace

int count_real_roots(const IntPoly& f, const Rational& a, const Rational& b) {
  IntPoly g = squarefree_part(f);
  if (g.eval<Rational>(a) == 0 || g.eval<Rational>(b) == 0)
    throw std::domain_error("count_real_roots: endpoint is a root");
  auto chain = sturm_chain(g);
  return sign_variations(chain, a) - sign_variations(chain, b);
}

QInterval refine_real_root(const IntPoly& f, const QInterval& iv, const Rational& eps) {
  if (iv.is_point()) return iv;
  IntPoly g = squarefree_part(f);
  Rational lo = iv.lo, hi = iv.hi;
  int slo = sign_of(g.eval<Rational>(lo));
  int shi = sign_of(g.eval<Rational>(hi));
  if (slo == 0 || shi == 0 || slo == shi)
    throw std::domain_error("refine_real_root: interval does not bracket a sign change");
  while (hi - lo > eps) {
    Rational m = (lo + hi) / 2;
    int sm = sign_of(g.eval<Rational>(m));
    if (sm == 0) return QInterval::point(m);
    if (sm == slo)
      lo = m;
    else
      hi = m;
  }
  return QInterval(lo, hi);
}

std::vector<QInterval> isolate_real_roots(const IntPoly& f) {
  std::vector<std::pair<IntPoly, QInterval>> tagged;
  for (const auto& [g, mult] : factorize(f)) {
    (void)mult;
    for (const auto& iv : isolate_real_irreducible(g)) tagged.emplace_back(g, iv);
  }
  // Refine across factors until pairwise disjoint (roots are distinct).
  bool again = true;
  while (again) {
    again = false;
    for (size_t i = 0; i < tagged.size(); ++i)
      for (size_t j = i + 1; j < tagged.size(); ++j)
        if (tagged[i].second.intersects(tagged[j].second)) {
          Rational w = std::max(tagged[i].second.width(), tagged[j].second.width());
          Rational target = w == 0 ? Rational(1, 1024) : w / 4;
          tagged[i].second = refine_real_root(tagged[i].first, tagged[i].second, target);
          tagged[j].second = refine_real_root(tagged[j].first, tagged[j].second, target);
          again = true;
        }
  }
  std::vector<QInterval> out;
  for (auto& [g, iv] : tagged) out.push_back(iv);
  std::sort(out.begin(), out.end(),
            [](const QInterval& a, const QInterval& b) { return a.lo < b.lo; });
  return out;
}

std::vector<ComplexInterval> isolate_roots(const IntPoly& f) {
  std::vector<std::pair<IntPoly, ComplexInterval>> tagged;
  for (const auto& [g, mult] : factorize(f)) {
    (void)mult;
    for (const auto& box : isolate_boxes_irreducible(g)) tagged.emplace_back(g, box);
  }
  bool again = true;
  while (again) {
    again = false;
    for (size_t i = 0; i < tagged.size(); ++i)
      for (size_t j = i + 1; j < tagged.size(); ++j)
        if (tagged[i].second.intersects(tagged[j].second)) {
          Rational w = std::max(tagged[i].second.max_side(), tagged[j].second.max_side());
          Rational target = w == 0 ? Rational(1, 1024) : w / 4;
          tagged[i].second = refine_box(tagged[i].first, tagged[i].second, target);
          tagged[j].second = refine_box(tagged[j].first, tagged[j].second, target);
          again = true;
        }
  }
  std::vector<ComplexInterval> out;
  for (auto& [g, box] : tagged) out.push_back(box);
  std::sort(out.begin(), out.end(), [](const ComplexInterval& a, const ComplexInterval& b) {
    if (a.re.lo != b.re.lo) return a.re.lo < b.re.lo;
    return a.im.lo < b.im.lo;
  });
  return out;
}

std::vector<ComplexInterval> isolate_roots_irreducible(const IntPoly& g) {
  return isolate_boxes_irreducible(g);
}

ComplexInterval refine_root_irreducible(const IntPoly& g, const ComplexInterval& box,
                                        const Rational& eps) {
  return refine_box(g, box, eps);
}

ComplexInterval refine_root(const IntPoly& f, const ComplexInterval& box, const Rational& eps) {
  // Attribute the box to the irreducible factor whose root it isolates: locate
  // each factor's roots and refine them until each is inside `box` or disjoint
  // from it. (Interval evaluation cannot decide this for fat boxes.)
  for (const auto& [g, mult] : factorize(f)) {
    (void)mult;
    for (ComplexInterval cand : isolate_boxes_irreducible(g)) {
      while (box.intersects(cand) && !box.contains(cand)) {
        Rational w = cand.max_side();
        if (w == 0) break;  // exact point straddling the boundary: outside
        cand = refine_box(g, cand, w / 4);
      }
      if (box.contains(cand)) return refine_box(g, box, eps);
    }
  }
  throw std::domain_error("refine_root: box isolates no root of f");
}

}  // namespace linterm

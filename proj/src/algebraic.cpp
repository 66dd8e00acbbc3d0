// Algebraic-number arithmetic. Derived values get an annihilating polynomial
// from a bivariate resultant; the actual value is then matched against the
// annihilator's roots by shrinking an enclosure of the computed value until a
// single root box survives. Rational operands take exact shortcut paths
// (compose/scale/shift of the minimal polynomial, no matching needed).

#include "linterm/algebraic.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "linterm/factor.hpp"
#include "linterm/roots.hpp"

namespace linterm {
namespace {

// Bivariate polynomials as vectors of x-polynomials indexed by the power of y.
using Biv = std::vector<IntPoly>;

Biv biv_mul(const Biv& a, const Biv& b) {
  if (a.empty() || b.empty()) return {};
  Biv c(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = c[i + j] + a[i] * b[j];
  return c;
}

// p_b(x - y), coefficients in y.
Biv shifted_argument(const IntPoly& pb) {
  Biv acc, pw{IntPoly::constant(Int(1))};
  Biv x_minus_y{IntPoly::x(), IntPoly::constant(Int(-1))};
  for (int k = 0; k <= pb.degree(); ++k) {
    if (pb.coeff(k) != 0) {
      if (acc.size() < pw.size()) acc.resize(pw.size());
      for (size_t j = 0; j < pw.size(); ++j) acc[j] = acc[j] + pb.coeff(k) * pw[j];
    }
    if (k < pb.degree()) pw = biv_mul(pw, x_minus_y);
  }
  return acc;
}

// y^deg(p_b) * p_b(x / y), coefficients in y; roots in x are alpha * beta.
Biv homogenized_quotient(const IntPoly& pb) {
  int n = pb.degree();
  Biv acc(n + 1);
  for (int k = 0; k <= n; ++k) acc[n - k] = IntPoly::monomial(k, pb.coeff(k));
  return acc;
}

Rational shrink_eps(int k) { return Rational(1, pow(Int(2), 16 + 8 * static_cast<unsigned>(k))); }

unsigned totient(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// Conservative lower bound on the distance between distinct roots of a
// squarefree p (Mahler): sqrt(3) * n^(-(n+2)/2) * |p|_2^(-(n-1)) > 1/denom.
Rational root_separation_lower(const IntPoly& p) {
  int n = p.degree();
  if (n < 2) return Rational(1);
  Int norm2 = 0;
  for (const auto& c : p.coeffs()) norm2 += c * c;
  Int m = isqrt(norm2) + 1;
  Int denom = pow(Int(n), static_cast<unsigned long>((n + 3) / 2)) *
              pow(m, static_cast<unsigned long>(n - 1));
  return Rational(1, denom);
}

}  // namespace

AlgebraicNumber::AlgebraicNumber(IntPoly min_poly, ComplexInterval box)
    : min_poly_(std::move(min_poly)),
      cell_(std::make_shared<BoxCell>(box)),
      real_(box.is_real_line()) {}

AlgebraicNumber::AlgebraicNumber(const Rational& q)
    : AlgebraicNumber(IntPoly(std::vector<Int>{-num(q), den(q)}),
                      ComplexInterval::point(QComplex(q, Rational(0)))) {}

ComplexInterval AlgebraicNumber::box() const {
  std::lock_guard<std::mutex> lock(cell_->mu);
  return cell_->box;
}

Rational AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw std::domain_error("rational_value: degree > 1");
  return Rational(-min_poly_.coeff(0), min_poly_.coeff(1));
}

ComplexInterval AlgebraicNumber::refine_to(const Rational& eps) const {
  ComplexInterval cur = box();
  if (cur.max_side() <= eps) return cur;
  ComplexInterval refined = refine_root_irreducible(min_poly_, cur, eps);
  std::lock_guard<std::mutex> lock(cell_->mu);
  if (refined.max_side() < cell_->box.max_side()) cell_->box = refined;
  return refined;
}

AlgebraicNumber AlgebraicNumber::imaginary_unit() {
  return AlgebraicNumber(
      IntPoly(std::vector<Int>{Int(1), Int(0), Int(1)}),
      ComplexInterval::point(QComplex(Rational(0), Rational(1))));
}

AlgebraicNumber AlgebraicNumber::from_root(const IntPoly& poly, const ComplexInterval& box) {
  struct Cand {
    IntPoly factor;
    ComplexInterval box;
  };
  std::vector<Cand> cands;
  for (const auto& [g, mult] : factorize(poly)) {
    (void)mult;
    if (g.degree() == 1) {
      Rational v(-g.coeff(0), g.coeff(1));
      if (box.contains(QComplex(v, Rational(0)))) return AlgebraicNumber(Rational(v));
      continue;
    }
    for (const auto& b : isolate_roots_irreducible(g))
      if (box.intersects(b)) cands.push_back({g, b});
  }
  // The isolated root's candidate keeps intersecting `box`; every other
  // candidate shrinks onto a root outside it and eventually drops out.
  for (int k = 0; k < 256 && !cands.empty(); ++k) {
    for (auto& c : cands)
      if (box.contains(c.box)) return AlgebraicNumber(c.factor, c.box);
    if (cands.size() == 1) return AlgebraicNumber(cands[0].factor, cands[0].box);
    for (auto& c : cands) {
      Rational w = c.box.max_side();
      if (w > 0) c.box = refine_root_irreducible(c.factor, c.box, w / 4);
    }
    std::vector<Cand> alive;
    for (auto& c : cands)
      if (box.intersects(c.box)) alive.push_back(std::move(c));
    cands = std::move(alive);
  }
  throw std::domain_error("from_root: box does not isolate a root of poly");
}

AlgebraicNumber AlgebraicNumber::from_annihilator(
    const IntPoly& annihilator, const std::function<ComplexInterval(int)>& enclose) {
  struct Cand {
    IntPoly factor;
    ComplexInterval box;
  };
  std::vector<Cand> cands;
  for (const auto& [g, mult] : factorize(annihilator)) {
    (void)mult;
    for (const auto& b : isolate_roots_irreducible(g)) cands.push_back({g, b});
  }
  for (int k = 0; k < 64; ++k) {
    ComplexInterval v = enclose(k);
    std::vector<Cand> alive;
    for (auto& c : cands)
      if (c.box.intersects(v)) alive.push_back(std::move(c));
    if (alive.empty()) throw std::logic_error("from_annihilator: enclosure excludes all roots");
    if (alive.size() == 1) {
      if (alive[0].factor.degree() == 1)
        return AlgebraicNumber(Rational(-alive[0].factor.coeff(0), alive[0].factor.coeff(1)));
      return AlgebraicNumber(alive[0].factor, alive[0].box);
    }
    Rational target = v.max_side() / 2;
    if (target == 0) target = shrink_eps(k);
    for (auto& c : alive)
      if (c.box.max_side() > target) c.box = refine_root_irreducible(c.factor, c.box, target);
    cands = std::move(alive);
  }
  throw std::logic_error("from_annihilator: could not separate candidate roots");
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_rational() && b.is_rational())
    return AlgebraicNumber(a.rational_value() + b.rational_value());
  if (a.is_rational() || b.is_rational()) {
    const AlgebraicNumber& alg = a.is_rational() ? b : a;
    Rational q = (a.is_rational() ? a : b).rational_value();
    QPoly shifted = to_qpoly(alg.min_poly_)
                        .compose(QPoly(std::vector<Rational>{-q, Rational(1)}));
    ComplexInterval box = alg.box() + ComplexInterval::point(QComplex(q, Rational(0)));
    return AlgebraicNumber(normalize_sign(to_intpoly_primitive(shifted)), box);
  }
  IntPoly ann = resultant_y(a.min_poly_, shifted_argument(b.min_poly_));
  AlgebraicNumber ac = a, bc = b;
  return AlgebraicNumber::from_annihilator(ann, [ac, bc](int k) {
    Rational eps = shrink_eps(k);
    return ac.refine_to(eps) + bc.refine_to(eps);
  });
}

AlgebraicNumber AlgebraicNumber::operator-() const {
  return AlgebraicNumber(normalize_sign(min_poly_.negate_argument()), -box());
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return a + (-b);
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_zero() || b.is_zero()) return AlgebraicNumber();
  if (a.is_rational() && b.is_rational())
    return AlgebraicNumber(a.rational_value() * b.rational_value());
  if (a.is_rational() || b.is_rational()) {
    const AlgebraicNumber& alg = a.is_rational() ? b : a;
    Rational q = (a.is_rational() ? a : b).rational_value();
    QPoly scaled = to_qpoly(alg.min_poly_)
                       .compose(QPoly(std::vector<Rational>{Rational(0), Rational(1) / q}));
    return AlgebraicNumber(normalize_sign(to_intpoly_primitive(scaled)), q * alg.box());
  }
  IntPoly ann = resultant_y(a.min_poly_, homogenized_quotient(b.min_poly_));
  AlgebraicNumber ac = a, bc = b;
  return AlgebraicNumber::from_annihilator(ann, [ac, bc](int k) {
    Rational eps = shrink_eps(k);
    return ac.refine_to(eps) * bc.refine_to(eps);
  });
}

AlgebraicNumber inverse(const AlgebraicNumber& z) {
  if (z.is_zero()) throw std::domain_error("inverse: division by zero");
  if (z.is_rational()) return AlgebraicNumber(Rational(1) / z.rational_value());
  IntPoly ann = z.min_poly().reverse();
  AlgebraicNumber zc = z;
  return AlgebraicNumber::from_annihilator(ann, [zc](int k) {
    Rational eps = shrink_eps(k);
    ComplexInterval b = zc.refine_to(eps);
    while (b.abs2().contains_zero()) {
      eps = eps / 16;
      b = zc.refine_to(eps);
    }
    return b.inverse();
  });
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  return a * inverse(b);
}

AlgebraicNumber conj(const AlgebraicNumber& z) {
  return AlgebraicNumber(z.min_poly_, z.box().conj());
}

AlgebraicNumber pow(const AlgebraicNumber& z, long e) {
  if (e < 0) return pow(inverse(z), -e);
  AlgebraicNumber r{Rational(1)}, base = z;
  unsigned long u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) r = r * base;
    u >>= 1;
    if (u) base = base * base;
  }
  return r;
}

AlgebraicNumber abs2(const AlgebraicNumber& z) {
  if (z.is_rational()) {
    Rational v = z.rational_value();
    return AlgebraicNumber(v * v);
  }
  if (z.is_real()) return z * z;
  return z * conj(z);
}

AlgebraicNumber sqrt_nonneg(const AlgebraicNumber& a) {
  if (!a.is_real() || sign(a) < 0)
    throw std::domain_error("sqrt_nonneg: argument not a nonnegative real");
  if (a.is_rational()) {
    Rational q = a.rational_value();
    Int sn = isqrt(num(q)), sd = isqrt(den(q));
    if (sn * sn == num(q) && sd * sd == den(q)) return AlgebraicNumber(Rational(sn, sd));
  }
  IntPoly ann = a.min_poly().substitute_square();
  auto enclose = [a](int k) {
    ComplexInterval b = a.refine_to(shrink_eps(k));
    Rational lo = std::max(Rational(0), b.re.lo), hi = std::max(Rational(0), b.re.hi);
    unsigned bits = 16 + 8 * static_cast<unsigned>(k);
    return ComplexInterval(QInterval(sqrt_lower(lo, bits), sqrt_upper(hi, bits)),
                           QInterval::point(Rational(0)));
  };
  return AlgebraicNumber::from_annihilator(ann, enclose);
}

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.min_poly_ != b.min_poly_) return false;
  if (a.is_rational()) return true;  // same degree-1 minimal polynomial
  // Distinct roots of the same irreducible polynomial separate once boxes are
  // smaller than a quarter of the root-separation bound.
  Rational sep = root_separation_lower(a.min_poly_);
  return a.refine_to(sep / 4).intersects(b.refine_to(sep / 4));
}

int sign(const AlgebraicNumber& a) {
  if (!a.is_real()) throw std::domain_error("sign: not a real number");
  if (a.is_rational()) {
    Rational v = a.rational_value();
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }
  ComplexInterval b = a.box();
  for (;;) {
    auto s = b.re.sign();
    if (s) return *s;
    b = a.refine_to(b.re.width() / 4);
  }
}

int compare_real(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (!a.is_real() || !b.is_real()) throw std::domain_error("compare_real: non-real input");
  if (a == b) return 0;
  ComplexInterval ba = a.box(), bb = b.box();
  while (ba.re.intersects(bb.re)) {
    Rational w = std::max(ba.re.width(), bb.re.width());
    Rational target = w == 0 ? Rational(1, 1024) : w / 4;
    ba = a.refine_to(target);
    bb = b.refine_to(target);
  }
  return ba.re.hi < bb.re.lo ? -1 : 1;
}

int compare_modulus(const AlgebraicNumber& z1, const AlgebraicNumber& z2) {
  return compare_real(abs2(z1), abs2(z2));
}

std::optional<unsigned> root_of_unity_order(const AlgebraicNumber& z) {
  unsigned d = static_cast<unsigned>(z.degree());
  // phi(n) = d forces n <= 2 d^2 + 2 (phi(n) >= sqrt(n/2)).
  for (unsigned n = 1; n <= 2 * d * d + 2; ++n)
    if (totient(n) == d && cyclotomic(n) == z.min_poly()) return n;
  return std::nullopt;
}

bool is_root_of_unity(const AlgebraicNumber& z) { return root_of_unity_order(z).has_value(); }

std::vector<std::pair<AlgebraicNumber, int>> roots(const IntPoly& p) {
  if (p.is_zero()) throw std::domain_error("roots: zero polynomial");
  std::vector<std::pair<AlgebraicNumber, int>> out;
  for (const auto& [g, mult] : factorize(p)) {
    if (g.degree() == 1)
      out.emplace_back(AlgebraicNumber(Rational(-g.coeff(0), g.coeff(1))), mult);
    else
      for (const auto& b : isolate_roots_irreducible(g))
        out.emplace_back(AlgebraicNumber(g, b), mult);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    ComplexInterval bx = x.first.box(), by = y.first.box();
    if (bx.re.lo != by.re.lo) return bx.re.lo < by.re.lo;
    return bx.im.lo < by.im.lo;
  });
  return out;
}

std::string to_string(const AlgebraicNumber& z) {
  std::ostringstream os;
  if (z.is_rational()) {
    os << z.rational_value();
    return os.str();
  }
  QComplex m = z.box().mid();
  os << "root of " << poly_to_string(z.min_poly()) << " near (" << to_double(m.re) << ", "
     << to_double(m.im) << ")";
  return os.str();
}

}  // namespace linterm

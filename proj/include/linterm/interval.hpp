#pragma once
// Closed rational intervals, exact complex rationals, and axis-aligned complex
// boxes. These are the enclosures behind root isolation and sign decisions;
// every bound is computed with directed rounding, so containment is never
// approximate.

#include "linterm/numeric.hpp"

#include <algorithm>
#include <optional>

namespace linterm {

struct QInterval {
  Rational lo, hi;  // invariant: lo <= hi

  QInterval() : lo(0), hi(0) {}
  QInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("QInterval: lo > hi");
  }
  static QInterval point(const Rational& q) { return QInterval(q, q); }

  bool operator==(const QInterval& o) const { return lo == o.lo && hi == o.hi; }
  bool operator!=(const QInterval& o) const { return !(*this == o); }

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains_zero() const { return lo <= 0 && 0 <= hi; }
  bool intersects(const QInterval& o) const { return lo <= o.hi && o.lo <= hi; }
  bool contains(const QInterval& o) const { return lo <= o.lo && o.hi <= hi; }

  // Sign if the interval determines it, nullopt otherwise.
  std::optional<int> sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (lo == 0 && hi == 0) return 0;
    return std::nullopt;
  }

  QInterval operator-() const { return QInterval(-hi, -lo); }
  friend QInterval operator+(const QInterval& a, const QInterval& b) {
    return QInterval(a.lo + b.lo, a.hi + b.hi);
  }
  friend QInterval operator-(const QInterval& a, const QInterval& b) { return a + (-b); }
  // Division by a sign-definite interval.
  friend QInterval operator/(const QInterval& a, const QInterval& b) {
    if (b.contains_zero()) throw std::domain_error("QInterval: division by interval with zero");
    Rational q1 = a.lo / b.lo, q2 = a.lo / b.hi, q3 = a.hi / b.lo, q4 = a.hi / b.hi;
    return QInterval(std::min(std::min(q1, q2), std::min(q3, q4)),
                     std::max(std::max(q1, q2), std::max(q3, q4)));
  }
  QInterval intersect(const QInterval& o) const {
    return QInterval(std::max(lo, o.lo), std::min(hi, o.hi));
  }
  friend QInterval operator*(const QInterval& a, const QInterval& b) {
    Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return QInterval(std::min(std::min(p1, p2), std::min(p3, p4)),
                     std::max(std::max(p1, p2), std::max(p3, p4)));
  }
  friend QInterval operator*(const Rational& s, const QInterval& a) {
    return s >= 0 ? QInterval(s * a.lo, s * a.hi) : QInterval(s * a.hi, s * a.lo);
  }

  QInterval square() const {
    Rational l2 = lo * lo, h2 = hi * hi;
    if (contains_zero()) return QInterval(0, std::max(l2, h2));
    return QInterval(std::min(l2, h2), std::max(l2, h2));
  }

  // Outward rounding to dyadic endpoints: caps coefficient growth in long
  // interval computations without losing soundness.
  QInterval outward(unsigned bits) const {
    return QInterval(round_down(lo, bits), round_up(hi, bits));
  }
};

// Exact complex rational.
struct QComplex {
  Rational re, im;

  QComplex() : re(0), im(0) {}
  QComplex(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool operator==(const QComplex& o) const { return re == o.re && im == o.im; }
  QComplex conj() const { return QComplex(re, -im); }
  Rational norm2() const { return re * re + im * im; }
  bool is_zero() const { return re == 0 && im == 0; }

  friend QComplex operator+(const QComplex& a, const QComplex& b) {
    return QComplex(a.re + b.re, a.im + b.im);
  }
  friend QComplex operator-(const QComplex& a, const QComplex& b) {
    return QComplex(a.re - b.re, a.im - b.im);
  }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return QComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend QComplex operator/(const QComplex& a, const QComplex& b) {
    Rational n = b.norm2();
    if (n == 0) throw std::domain_error("QComplex: division by zero");
    return QComplex((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
  }
};

// Axis-aligned rectangle in the complex plane.
struct ComplexInterval {
  QInterval re, im;

  ComplexInterval() = default;
  ComplexInterval(QInterval r, QInterval i) : re(std::move(r)), im(std::move(i)) {}
  static ComplexInterval point(const QComplex& z) {
    return ComplexInterval(QInterval::point(z.re), QInterval::point(z.im));
  }
  static ComplexInterval square_around(const QComplex& c, const Rational& radius) {
    return ComplexInterval(QInterval(c.re - radius, c.re + radius),
                           QInterval(c.im - radius, c.im + radius));
  }

  bool operator==(const ComplexInterval& o) const { return re == o.re && im == o.im; }
  bool operator!=(const ComplexInterval& o) const { return !(*this == o); }

  QComplex mid() const { return QComplex(re.mid(), im.mid()); }
  Rational max_side() const { return std::max(re.width(), im.width()); }
  bool is_point() const { return re.is_point() && im.is_point(); }
  bool is_real_line() const { return im.lo == 0 && im.hi == 0; }
  bool contains(const QComplex& z) const { return re.contains(z.re) && im.contains(z.im); }
  bool contains(const ComplexInterval& o) const {
    return re.contains(o.re) && im.contains(o.im);
  }
  bool intersects(const ComplexInterval& o) const {
    return re.intersects(o.re) && im.intersects(o.im);
  }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }

  ComplexInterval conj() const { return ComplexInterval(re, -im); }
  ComplexInterval operator-() const { return ComplexInterval(-re, -im); }
  QInterval abs2() const { return re.square() + im.square(); }

  friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval(a.re + b.re, a.im + b.im);
  }
  friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval(a.re - b.re, a.im - b.im);
  }
  friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
    return ComplexInterval(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend ComplexInterval operator*(const Rational& s, const ComplexInterval& a) {
    return ComplexInterval(s * a.re, s * a.im);
  }

  ComplexInterval intersect(const ComplexInterval& o) const {
    return ComplexInterval(re.intersect(o.re), im.intersect(o.im));
  }

  // 1/z enclosure; requires the box to exclude zero (abs2 strictly positive).
  ComplexInterval inverse() const {
    QInterval scale = QInterval(Rational(1), Rational(1)) / abs2();
    return ComplexInterval(re * scale, (-im) * scale);
  }

  ComplexInterval outward(unsigned bits) const {
    return ComplexInterval(re.outward(bits), im.outward(bits));
  }
};

}  // namespace linterm

#pragma once
// Dense univariate polynomials over exact scalars: arithmetic, gcd/resultant,
// squarefree decomposition, characteristic polynomial (division-free), and
// cyclotomic construction. The heavyweight integer routines live in poly.cpp.

#include "linterm/numeric.hpp"

#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace linterm {

template <typename T>
struct is_field : std::false_type {};
template <>
struct is_field<Rational> : std::true_type {};

// Coefficient c[i] multiplies x^i. Invariant: no trailing zero coefficients, so
// the zero polynomial is the empty vector and degree() is -1 for it.
template <typename T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(T v) {
    std::vector<T> c;
    c.push_back(std::move(v));
    return Poly(std::move(c));
  }
  static Poly x() { return monomial(1, T(1)); }
  static Poly monomial(int k, T coeff) {
    std::vector<T> c(k + 1, T(0));
    c[k] = std::move(coeff);
    return Poly(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const T& lc() const { return c_.back(); }
  T coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return T(0);
    return c_[i];
  }
  const std::vector<T>& coeffs() const { return c_; }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> c(std::max(a.c_.size(), b.c_.size()), T(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Poly(std::move(c));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }
  friend Poly operator*(const T& s, const Poly& p) {
    Poly r = p;
    for (auto& v : r.c_) v = s * v;
    r.trim();
    return r;
  }
  friend Poly operator*(const Poly& p, const T& s) { return s * p; }

  Poly pow(unsigned e) const {
    Poly r = constant(T(1)), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      if (e >>= 1) b = b * b;
    }
    return r;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * T(static_cast<int>(i));
    return Poly(std::move(c));
  }

  // Horner evaluation at a point of (possibly) another type; U must be
  // constructible from T and support ring arithmetic.
  template <typename U>
  U eval(const U& x) const {
    U r(0);
    for (int i = degree(); i >= 0; --i) r = r * x + U(c_[i]);
    return r;
  }

  // Substitution p(q(x)).
  Poly compose(const Poly& q) const {
    Poly r;
    for (int i = degree(); i >= 0; --i) r = r * q + constant(c_[i]);
    return r;
  }

  // p(x^2): spread coefficients to even positions.
  Poly substitute_square() const {
    if (is_zero()) return Poly();
    std::vector<T> c(2 * c_.size() - 1, T(0));
    for (size_t i = 0; i < c_.size(); ++i) c[2 * i] = c_[i];
    return Poly(std::move(c));
  }

  // p(-x).
  Poly negate_argument() const {
    Poly r = *this;
    for (size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
  }

  // x^deg * p(1/x).
  Poly reverse() const {
    std::vector<T> c(c_.rbegin(), c_.rend());
    return Poly(std::move(c));
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }
  std::vector<T> c_;
};

using IntPoly = Poly<Int>;
using QPoly = Poly<Rational>;

// Quotient/remainder over a coefficient field.
template <typename T>
std::pair<Poly<T>, Poly<T>> divmod(const Poly<T>& a, const Poly<T>& b) {
  static_assert(is_field<T>::value, "divmod needs field coefficients");
  if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
  std::vector<T> rem(a.coeffs());
  int db = b.degree();
  if (a.degree() < db) return {Poly<T>(), a};
  std::vector<T> quo(a.degree() - db + 1, T(0));
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i] == T(0)) continue;
    T q = rem[i] / b.lc();
    quo[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coeff(j);
  }
  return {Poly<T>(std::move(quo)), Poly<T>(std::move(rem))};
}

template <typename T>
Poly<T> gcd_field(Poly<T> a, Poly<T> b) {
  static_assert(is_field<T>::value, "gcd_field needs field coefficients");
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = b;
    b = r;
  }
  if (!a.is_zero()) a = (T(1) / a.lc()) * a;  // monic normal form
  return a;
}

// Extended Euclid: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
template <typename T>
std::tuple<Poly<T>, Poly<T>, Poly<T>> xgcd(Poly<T> a, Poly<T> b) {
  static_assert(is_field<T>::value, "xgcd needs field coefficients");
  Poly<T> u0 = Poly<T>::constant(T(1)), v0, u1, v1 = Poly<T>::constant(T(1));
  while (!b.is_zero()) {
    auto [q, r] = divmod(a, b);
    a = std::move(b);
    b = std::move(r);
    Poly<T> u2 = u0 - q * u1, v2 = v0 - q * v1;
    u0 = std::move(u1);
    v0 = std::move(v1);
    u1 = std::move(u2);
    v1 = std::move(v2);
  }
  if (!a.is_zero()) {
    T inv = T(1) / a.lc();
    a = inv * a;
    u0 = inv * u0;
    v0 = inv * v0;
  }
  return {std::move(a), std::move(u0), std::move(v0)};
}

Int content(const IntPoly& p);                 // gcd of coefficients, >= 0
IntPoly primitive_part(const IntPoly& p);      // p / content, sign of lc preserved
IntPoly normalize_sign(const IntPoly& p);      // flip so lc > 0

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + r with deg r < deg b.
std::pair<IntPoly, IntPoly> pseudo_divmod(const IntPoly& a, const IntPoly& b);

// Exact division; throws if b does not divide a over the integers.
IntPoly exact_div(const IntPoly& a, const IntPoly& b);

// Primitive gcd with positive leading coefficient.
IntPoly gcd(const IntPoly& a, const IntPoly& b);

// Resultant via Sylvester matrix with fraction-free elimination.
Int resultant(const IntPoly& a, const IntPoly& b);

// f / gcd(f, f'), primitive, lc > 0: the radical of f.
IntPoly squarefree_part(const IntPoly& f);

// Yun decomposition: list of (factor, multiplicity) with factors squarefree,
// pairwise coprime, primitive, lc > 0. Product of factor^multiplicity equals
// f up to a rational constant.
std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f);

// Characteristic polynomial det(xI - M), monic, by the Berkowitz scheme
// (no divisions, so it runs directly over the integers).
IntPoly char_poly(const IMat& m);

// n-th cyclotomic polynomial via the Moebius product.
IntPoly cyclotomic(unsigned n);

// Resultant of p(y) and q(x, y) with respect to y, where q is given by its
// y-coefficients (each a polynomial in x). Computed by evaluation at integer
// points x0 (skipping those where the y-leading coefficient vanishes) and
// interpolation.
IntPoly resultant_y(const IntPoly& p, const std::vector<IntPoly>& q_ycoeffs);

// Lagrange interpolation through distinct rational points.
QPoly interpolate(const std::vector<std::pair<Rational, Rational>>& points);

// Clear denominators and divide by content: the primitive integer polynomial
// proportional to q (lc sign preserved).
IntPoly to_intpoly_primitive(const QPoly& q);
QPoly to_qpoly(const IntPoly& p);

std::string poly_to_string(const IntPoly& p, const std::string& var = "x");
std::string poly_to_string(const QPoly& p, const std::string& var = "x");

}  // namespace linterm

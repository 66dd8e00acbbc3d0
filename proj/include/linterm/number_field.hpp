#pragma once
// Arithmetic in Q[x]/(g) for an irreducible g — the exact field generated by
// one root of g. Elements are reduced polynomial representatives (degree
// < deg g) in the generator; the same representative evaluated at different
// roots of g yields algebraically conjugate values, which is how conjugate
// eigenvalue data is produced without recomputation. A null field pointer
// means "plain rational constant": scalar literals work without naming the
// field, and Poly<NFElem> coefficients can be built from ints.

#include <memory>
#include <optional>

#include "linterm/algebraic.hpp"
#include "linterm/poly.hpp"

namespace linterm {

class NumberField {
 public:
  // modulus must be irreducible over Q, primitive, with positive leading
  // coefficient (the minimal polynomial of the intended generator).
  static std::shared_ptr<const NumberField> create(IntPoly modulus);

  const IntPoly& modulus() const { return modulus_; }
  const QPoly& modulus_q() const { return modulus_q_; }
  int degree() const { return modulus_.degree(); }

 private:
  explicit NumberField(IntPoly m) : modulus_(std::move(m)), modulus_q_(to_qpoly(modulus_)) {}
  IntPoly modulus_;
  QPoly modulus_q_;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class NFElem {
 public:
  NFElem() = default;  // rational zero
  explicit NFElem(int v) : rep_(v == 0 ? QPoly() : QPoly::constant(Rational(v))) {}
  explicit NFElem(const Rational& v) : rep_(v == 0 ? QPoly() : QPoly::constant(v)) {}
  // rep is reduced modulo the field's modulus.
  NFElem(FieldPtr field, QPoly rep);

  static NFElem generator(FieldPtr field) { return NFElem(std::move(field), QPoly::x()); }

  const FieldPtr& field() const { return field_; }  // null for plain rationals
  const QPoly& rep() const { return rep_; }
  bool is_zero() const { return rep_.is_zero(); }
  // The value as a rational if the representative is constant.
  std::optional<Rational> rational_value() const;

  NFElem operator-() const;
  NFElem& operator+=(const NFElem& o);
  NFElem& operator-=(const NFElem& o);
  NFElem& operator*=(const NFElem& o);
  NFElem& operator/=(const NFElem& o);
  friend NFElem operator+(NFElem a, const NFElem& b) { return a += b; }
  friend NFElem operator-(NFElem a, const NFElem& b) { return a -= b; }
  friend NFElem operator*(NFElem a, const NFElem& b) { return a *= b; }
  friend NFElem operator/(NFElem a, const NFElem& b) { return a /= b; }

  NFElem inverse() const;

  bool operator==(const NFElem& o) const;
  bool operator!=(const NFElem& o) const { return !(*this == o); }

 private:
  FieldPtr field_;  // null = plain rational constant
  QPoly rep_;
};

template <>
struct is_field<NFElem> : std::true_type {};

inline NFElem pow(NFElem base, unsigned long e) {
  NFElem r(1);
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

// The value of e at a chosen root of its field's modulus, as an exact
// algebraic number. root.min_poly() must equal the modulus.
AlgebraicNumber embed(const NFElem& e, const AlgebraicNumber& root);

// Sign of e's value at a real root of the modulus, decided by interval
// refinement with an exact zero test on the representative (cheaper than
// building the value's own minimal polynomial).
int sign_at(const NFElem& e, const AlgebraicNumber& root);

// Horner evaluation of a rational polynomial over a complex box.
ComplexInterval eval_interval(const QPoly& p, const ComplexInterval& box);

}  // namespace linterm

#pragma once
// Exact algebraic numbers over Q: an irreducible primitive minimal polynomial
// (positive leading coefficient) plus an isolating complex box. Equality of
// minimal polynomials and non-separating boxes decides equality of values;
// the box refines lazily, so repeated sign/comparison queries get cheaper.
// Copies share one refinement cell behind a mutex, so values are logically
// immutable and safe to query from several threads; refine_to hands back the
// refined box by value.
// Invariant: the box is real-line (imaginary part exactly [0,0]) iff the value
// is real.

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "linterm/interval.hpp"
#include "linterm/poly.hpp"

namespace linterm {

class AlgebraicNumber {
 public:
  AlgebraicNumber() : AlgebraicNumber(Rational(0)) {}
  explicit AlgebraicNumber(const Rational& q);

  // The root of `poly` (not necessarily irreducible) isolated by `box`.
  static AlgebraicNumber from_root(const IntPoly& poly, const ComplexInterval& box);

  // The root of `annihilator` pinned down by an enclosure sequence: enclose(k)
  // must return boxes around the value whose size tends to zero as k grows.
  static AlgebraicNumber from_annihilator(
      const IntPoly& annihilator, const std::function<ComplexInterval(int)>& enclose);

  static AlgebraicNumber imaginary_unit();

  const IntPoly& min_poly() const { return min_poly_; }
  int degree() const { return min_poly_.degree(); }
  // Snapshot of the current isolating box.
  ComplexInterval box() const;

  bool is_rational() const { return degree() == 1; }
  Rational rational_value() const;  // requires is_rational()
  bool is_zero() const { return is_rational() && rational_value() == 0; }
  bool is_real() const { return real_; }

  // Shrink the isolating box until both sides are at most eps; returns it.
  ComplexInterval refine_to(const Rational& eps) const;

  friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
  AlgebraicNumber operator-() const;

  friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);
  friend bool operator!=(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return !(a == b);
  }

 private:
  AlgebraicNumber(IntPoly min_poly, ComplexInterval box);

  struct BoxCell {
    explicit BoxCell(ComplexInterval b) : box(std::move(b)) {}
    mutable std::mutex mu;
    ComplexInterval box;
  };

  IntPoly min_poly_;
  std::shared_ptr<BoxCell> cell_;
  bool real_ = true;

  friend AlgebraicNumber conj(const AlgebraicNumber& z);
  friend std::vector<std::pair<AlgebraicNumber, int>> roots(const IntPoly& p);
};

AlgebraicNumber conj(const AlgebraicNumber& z);
AlgebraicNumber inverse(const AlgebraicNumber& z);
AlgebraicNumber pow(const AlgebraicNumber& z, long e);
// |z|^2 as a real algebraic number.
AlgebraicNumber abs2(const AlgebraicNumber& z);
// Nonnegative square root of a nonnegative real algebraic number.
AlgebraicNumber sqrt_nonneg(const AlgebraicNumber& a);

// Sign of a real algebraic number: -1, 0, +1.
int sign(const AlgebraicNumber& a);
// Three-way comparison of real algebraic numbers.
int compare_real(const AlgebraicNumber& a, const AlgebraicNumber& b);
// Three-way comparison of |z1| vs |z2|.
int compare_modulus(const AlgebraicNumber& z1, const AlgebraicNumber& z2);

// Order of z as a root of unity (smallest n >= 1 with z^n = 1), if it is one.
std::optional<unsigned> root_of_unity_order(const AlgebraicNumber& z);
bool is_root_of_unity(const AlgebraicNumber& z);

// All distinct complex roots of p with multiplicities, sorted by box corner
// (real part first). Zero roots come out as exact rational zeros, so callers
// can flag and drop them with is_zero().
std::vector<std::pair<AlgebraicNumber, int>> roots(const IntPoly& p);

// Debug-friendly rendering: exact for rationals, minpoly+approximation else.
std::string to_string(const AlgebraicNumber& z);

}  // namespace linterm

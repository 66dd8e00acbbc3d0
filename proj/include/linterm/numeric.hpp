#pragma once
// Exact scalar types (arbitrary-precision integers and rationals) plus the dense
// matrix aliases used throughout. Everything downstream computes over these; no
// floating point enters any decision path.

#include <Eigen/Core>
#include <boost/multiprecision/traits/is_byte_container.hpp>

namespace boost::multiprecision::detail {
// Eigen matrices advertise a const_iterator typedef (it is void for 2-D
// shapes), which trips this trait's unguarded iterator_traits probe when
// overload resolution tests convertibility of matrix expressions to scalars.
// They are never byte containers; say so before cpp_int can ask. Product
// needs the same treatment: assigning a matrix product materializes it
// through Matrix's explicit converting constructor, which probes the trait.
template <typename S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>> : public boost::false_type {};
template <typename L, typename R, int O>
struct is_byte_container<Eigen::Product<L, R, O>> : public boost::false_type {};
template <typename D>
struct is_byte_container<Eigen::MatrixBase<D>> : public boost::false_type {};
template <typename X, int R, int C, bool P>
struct is_byte_container<Eigen::Block<X, R, C, P>> : public boost::false_type {};
template <typename X>
struct is_byte_container<Eigen::Transpose<X>> : public boost::false_type {};
template <typename Op, typename X>
struct is_byte_container<Eigen::CwiseUnaryOp<Op, X>> : public boost::false_type {};
template <typename Op, typename L, typename R>
struct is_byte_container<Eigen::CwiseBinaryOp<Op, L, R>> : public boost::false_type {};
template <typename Op, typename X>
struct is_byte_container<Eigen::CwiseNullaryOp<Op, X>> : public boost::false_type {};
}  // namespace boost::multiprecision::detail

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace linterm {

// Expression templates stay off: Eigen needs plain value semantics from its
// scalar type, and mixed ternaries/assignments get brittle otherwise.
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

template <typename T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

using IMat = Mat<Int>;
using IVec = Vec<Int>;
using QMat = Mat<Rational>;
using QVec = Vec<Rational>;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Floor division (cpp_int's operator/ truncates toward zero).
inline Int floor_div(const Int& a, const Int& b) {
  Int q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}
inline Int ceil_div(const Int& a, const Int& b) { return -floor_div(-a, b); }

inline Int floor(const Rational& q) { return floor_div(num(q), den(q)); }
inline Int ceil(const Rational& q) { return ceil_div(num(q), den(q)); }
inline bool is_integer(const Rational& q) { return den(q) == 1; }

inline Int pow(Int base, unsigned long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Rational pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("pow: zero to negative power");
    return Rational(pow(den(base), static_cast<unsigned long>(-e)),
                    pow(num(base), static_cast<unsigned long>(-e)));
  }
  return Rational(pow(num(base), static_cast<unsigned long>(e)),
                  pow(den(base), static_cast<unsigned long>(e)));
}

inline Int binomial(unsigned long n, unsigned k) {
  if (k > n) return Int(0);
  Int r = 1;
  for (unsigned long t = 0; t < k; ++t) {
    r *= Int(n - t);
    r /= Int(t + 1);  // exact: r is a running binomial
  }
  return r;
}

// Largest s with s^2 <= n (n >= 0).
inline Int isqrt(const Int& n) {
  if (n < 0) throw std::domain_error("isqrt: negative argument");
  return boost::multiprecision::sqrt(n);
}

// Directed rational bounds on sqrt(q), q >= 0, accurate to about 2^-bits relative error.
// sqrt(a/b) = sqrt(a*b)/b; scale by 4^bits so the integer sqrt carries the precision.
inline Rational sqrt_lower(const Rational& q, unsigned bits = 64) {
  if (q < 0) throw std::domain_error("sqrt_lower: negative argument");
  Int scale = pow(Int(2), bits);
  Int s = isqrt(num(q) * den(q) * scale * scale);
  return Rational(s, den(q) * scale);
}
inline Rational sqrt_upper(const Rational& q, unsigned bits = 64) {
  if (q < 0) throw std::domain_error("sqrt_upper: negative argument");
  Int scale = pow(Int(2), bits);
  Int s = isqrt(num(q) * den(q) * scale * scale);
  return Rational(s + 1, den(q) * scale);
}

// Round q to a dyadic rational with denominator 2^bits (toward -inf / +inf).
inline Rational round_down(const Rational& q, unsigned bits) {
  Int scale = pow(Int(2), bits);
  return Rational(floor(q * Rational(scale)), scale);
}
inline Rational round_up(const Rational& q, unsigned bits) {
  Int scale = pow(Int(2), bits);
  return Rational(ceil(q * Rational(scale)), scale);
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Int& n) { return n.convert_to<double>(); }

// Number of bits in |n| (0 for n = 0); log2-ish size measure for budget decisions.
inline unsigned bit_length(const Int& n) {
  if (n == 0) return 0;
  return static_cast<unsigned>(boost::multiprecision::msb(boost::multiprecision::abs(n))) + 1;
}

}  // namespace linterm

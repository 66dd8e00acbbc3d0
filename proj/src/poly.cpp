// Integer polynomial machinery: gcd/resultant via fraction-free methods, Yun
// squarefree decomposition, Berkowitz characteristic polynomial, cyclotomics,
// and the bivariate resultant used to derive minimal polynomials.

#include "linterm/poly.hpp"

#include <algorithm>
#include <map>

namespace linterm {

Int content(const IntPoly& p) {
  Int g = 0;
  for (const auto& c : p.coeffs()) g = gcd(g, c);
  return g < 0 ? Int(-g) : g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  Int c = content(p);
  std::vector<Int> out(p.coeffs());
  for (auto& v : out) v /= c;
  return IntPoly(std::move(out));
}

IntPoly normalize_sign(const IntPoly& p) {
  if (!p.is_zero() && p.lc() < 0) return -p;
  return p;
}

std::pair<IntPoly, IntPoly> pseudo_divmod(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("pseudo_divmod: zero divisor");
  int d = a.degree() - b.degree();
  if (d < 0) return {IntPoly(), a};
  IntPoly q, r = a;
  Int lb = b.lc();
  int e = d + 1;
  while (!r.is_zero() && r.degree() >= b.degree()) {
    IntPoly s = IntPoly::monomial(r.degree() - b.degree(), r.lc());
    q = lb * q + s;
    r = lb * r - s * b;
    --e;
  }
  // Pad so that lb^(d+1) * a = q*b + r holds exactly.
  Int padding = pow(lb, static_cast<unsigned long>(e));
  return {padding * q, padding * r};
}

IntPoly exact_div(const IntPoly& a, const IntPoly& b) {
  auto [q, r] = divmod(to_qpoly(a), to_qpoly(b));
  if (!r.is_zero()) throw std::domain_error("exact_div: division is not exact");
  std::vector<Int> out(q.degree() + 1);
  for (int i = 0; i <= q.degree(); ++i) {
    Rational c = q.coeff(i);
    if (!is_integer(c)) throw std::domain_error("exact_div: non-integer quotient");
    out[i] = num(c);
  }
  return IntPoly(std::move(out));
}

// Primitive gcd with positive leading coefficient (contents are discarded).
IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = primitive_part(a), y = primitive_part(b);
  while (!y.is_zero()) {
    IntPoly r = pseudo_divmod(x, y).second;
    x = y;
    y = primitive_part(r);
  }
  return normalize_sign(x);
}

namespace {

// Fraction-free (Bareiss) determinant; matrix is consumed.
Int bareiss_det(IMat m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      int pivot = -1;
      for (int r = k + 1; r < n; ++r)
        if (m(r, k) != 0) {
          pivot = r;
          break;
        }
      if (pivot < 0) return 0;
      m.row(k).swap(m.row(pivot));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = 0;
    }
    prev = m(k, k);
  }
  return sign < 0 ? Int(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

}  // namespace

Int resultant(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  const int m = a.degree(), n = b.degree();
  if (m == 0) return pow(a.lc(), static_cast<unsigned long>(n));
  if (n == 0) return pow(b.lc(), static_cast<unsigned long>(m));
  IMat syl = IMat::Zero(m + n, m + n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j) syl(i, i + j) = a.coeff(m - j);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j) syl(n + i, i + j) = b.coeff(n - j);
  return bareiss_det(std::move(syl));
}

IntPoly squarefree_part(const IntPoly& f) {
  if (f.is_zero() || f.degree() == 0) return normalize_sign(primitive_part(f));
  IntPoly g = gcd(f, f.derivative());
  return normalize_sign(exact_div(primitive_part(f), g));
}

std::vector<std::pair<IntPoly, int>> squarefree_decomposition(const IntPoly& f) {
  std::vector<std::pair<IntPoly, int>> out;
  if (f.is_zero() || f.degree() == 0) return out;
  IntPoly a = normalize_sign(primitive_part(f));
  IntPoly g = gcd(a, a.derivative());
  if (g.degree() == 0) {
    out.emplace_back(a, 1);
    return out;
  }
  // Yun's scheme: all divisions below are exact over Z by Gauss's lemma.
  IntPoly w = exact_div(a, g);
  IntPoly y = exact_div(a.derivative(), g);
  IntPoly z = y - w.derivative();
  int i = 1;
  while (w.degree() > 0) {
    IntPoly h = gcd(w, z);
    if (h.degree() > 0) out.emplace_back(h, i);
    w = exact_div(w, h);
    y = exact_div(z, h);
    z = y - w.derivative();
    ++i;
  }
  return out;
}

IntPoly char_poly(const IMat& m) {
  const int n = static_cast<int>(m.rows());
  if (m.cols() != n) throw std::domain_error("char_poly: matrix not square");
  // Berkowitz: iterate over leading principal submatrices; polynomials are held
  // in descending-coefficient order during the recurrence.
  std::vector<Int> p{Int(1)};
  for (int r = 1; r <= n; ++r) {
    IMat sub = m.topLeftCorner(r - 1, r - 1);
    IVec col = m.block(0, r - 1, r - 1, 1);
    Eigen::Matrix<Int, 1, Eigen::Dynamic> row = m.block(r - 1, 0, 1, r - 1);
    // t[0] = 1, t[1] = -m(r-1,r-1), t[k+1] = -row * sub^(k-1) * col.
    std::vector<Int> t(r + 1, Int(0));
    t[0] = 1;
    t[1] = -m(r - 1, r - 1);
    IVec v = col;
    for (int k = 2; k <= r; ++k) {
      t[k] = -(row * v)(0, 0);
      if (k < r) v = sub * v;
    }
    std::vector<Int> next(r + 1, Int(0));
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j < r && j <= i; ++j)
        if (i - j <= r) next[i] += t[i - j] * p[j];
    p = std::move(next);
  }
  std::vector<Int> asc(p.rbegin(), p.rend());
  return IntPoly(std::move(asc));
}

namespace {

int moebius(unsigned n) {
  int mu = 1;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  }
  if (n > 1) mu = -mu;
  return mu;
}

IntPoly x_pow_minus_one(unsigned k) {
  std::vector<Int> c(k + 1, Int(0));
  c[0] = -1;
  c[k] = 1;
  return IntPoly(std::move(c));
}

}  // namespace

IntPoly cyclotomic(unsigned n) {
  if (n == 0) throw std::domain_error("cyclotomic: n must be positive");
  IntPoly numer = IntPoly::constant(Int(1));
  std::vector<unsigned> denominators;
  for (unsigned d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    int mu = moebius(d);
    if (mu == 1)
      numer = numer * x_pow_minus_one(n / d);
    else if (mu == -1)
      denominators.push_back(n / d);
  }
  for (unsigned k : denominators) numer = exact_div(numer, x_pow_minus_one(k));
  return numer;
}

IntPoly resultant_y(const IntPoly& p, const std::vector<IntPoly>& q_ycoeffs) {
  std::vector<IntPoly> q = q_ycoeffs;
  while (!q.empty() && q.back().is_zero()) q.pop_back();
  if (p.is_zero() || q.empty()) return IntPoly();
  const int n = static_cast<int>(q.size()) - 1;  // degree in y
  int dx = 0;
  for (const auto& c : q) dx = std::max(dx, c.degree());
  const int points_needed = p.degree() * dx + 1;

  std::vector<std::pair<Rational, Rational>> samples;
  for (Int x0 = 0; static_cast<int>(samples.size()) < points_needed;
       x0 = (x0 > 0) ? Int(-x0) : Int(-x0 + 1)) {
    // Specialization is only valid where the y-leading coefficient survives.
    if (q.back().eval<Int>(x0) == 0) continue;
    std::vector<Int> qc(n + 1);
    for (int k = 0; k <= n; ++k) qc[k] = q[k].eval<Int>(x0);
    Int r = resultant(p, IntPoly(std::move(qc)));
    samples.emplace_back(Rational(x0), Rational(r));
  }
  QPoly interp = interpolate(samples);
  std::vector<Int> out(interp.degree() + 1, Int(0));
  for (int i = 0; i <= interp.degree(); ++i) {
    Rational c = interp.coeff(i);
    if (!is_integer(c)) throw std::logic_error("resultant_y: non-integer interpolation");
    out[i] = num(c);
  }
  return IntPoly(std::move(out));
}

QPoly interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
  const size_t n = points.size();
  QPoly master = QPoly::constant(Rational(1));
  for (const auto& [x, y] : points) {
    (void)y;
    master = master * (QPoly::x() - QPoly::constant(x));
  }
  QPoly acc;
  for (const auto& [xi, yi] : points) {
    if (yi == 0) continue;
    QPoly li = divmod(master, QPoly::x() - QPoly::constant(xi)).first;
    Rational denom = li.eval<Rational>(xi);
    acc = acc + (yi / denom) * li;
  }
  (void)n;
  return acc;
}

IntPoly to_intpoly_primitive(const QPoly& q) {
  if (q.is_zero()) return IntPoly();
  Int scale = 1;
  for (const auto& c : q.coeffs()) scale = lcm(scale, den(c));
  std::vector<Int> out(q.degree() + 1);
  for (int i = 0; i <= q.degree(); ++i) {
    Rational c = q.coeff(i) * Rational(scale);
    out[i] = num(c);
  }
  return primitive_part(IntPoly(std::move(out)));
}

QPoly to_qpoly(const IntPoly& p) {
  std::vector<Rational> c(p.degree() + 1);
  for (int i = 0; i <= p.degree(); ++i) c[i] = Rational(p.coeff(i));
  return QPoly(std::move(c));
}

namespace {

template <typename T>
std::string poly_to_string_impl(const Poly<T>& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    T c = p.coeff(i);
    if (c == T(0)) continue;
    bool negative = c < T(0);
    T a = negative ? T(-c) : c;
    if (first) {
      if (negative) os << "-";
      first = false;
    } else {
      os << (negative ? " - " : " + ");
    }
    const bool show_coeff = (i == 0) || !(a == T(1));
    if (show_coeff) os << a;
    if (i > 0) {
      if (show_coeff) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

}  // namespace

std::string poly_to_string(const IntPoly& p, const std::string& var) {
  return poly_to_string_impl(p, var);
}
std::string poly_to_string(const QPoly& p, const std::string& var) {
  return poly_to_string_impl(p, var);
}

}  // namespace linterm

// Arithmetic in Q[x]/(g): representative reduction, inversion by extended
// Euclid against the modulus, and embedding of representatives at chosen
// roots as exact algebraic numbers.

#include "linterm/number_field.hpp"

#include <stdexcept>
#include <utility>

namespace linterm {
namespace {

// Fields are compatible when at most one is present or both share a modulus.
const FieldPtr& unified_field(const FieldPtr& a, const FieldPtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a == b || a->modulus() == b->modulus()) return a;
  throw std::logic_error("NFElem: mixed number fields");
}

}  // namespace

std::shared_ptr<const NumberField> NumberField::create(IntPoly modulus) {
  if (modulus.degree() < 1) throw std::domain_error("NumberField: constant modulus");
  return std::shared_ptr<const NumberField>(new NumberField(std::move(modulus)));
}

NFElem::NFElem(FieldPtr field, QPoly rep) : field_(std::move(field)), rep_(std::move(rep)) {
  if (!field_) throw std::domain_error("NFElem: null field; use the rational constructors");
  if (rep_.degree() >= field_->degree()) rep_ = divmod(rep_, field_->modulus_q()).second;
}

std::optional<Rational> NFElem::rational_value() const {
  if (rep_.degree() > 0) return std::nullopt;
  return rep_.is_zero() ? Rational(0) : rep_.coeff(0);
}

NFElem NFElem::operator-() const {
  NFElem r = *this;
  r.rep_ = -r.rep_;
  return r;
}

NFElem& NFElem::operator+=(const NFElem& o) {
  field_ = unified_field(field_, o.field_);
  rep_ = rep_ + o.rep_;
  return *this;
}

NFElem& NFElem::operator-=(const NFElem& o) {
  field_ = unified_field(field_, o.field_);
  rep_ = rep_ - o.rep_;
  return *this;
}

NFElem& NFElem::operator*=(const NFElem& o) {
  field_ = unified_field(field_, o.field_);
  rep_ = rep_ * o.rep_;
  if (field_ && rep_.degree() >= field_->degree())
    rep_ = divmod(rep_, field_->modulus_q()).second;
  return *this;
}

NFElem& NFElem::operator/=(const NFElem& o) { return *this *= o.inverse(); }

NFElem NFElem::inverse() const {
  if (is_zero()) throw std::domain_error("NFElem: division by zero");
  if (!field_ || rep_.degree() == 0) {
    NFElem r = *this;
    r.rep_ = QPoly::constant(Rational(1) / rep_.coeff(0));
    return r;
  }
  // u*rep + v*modulus = 1 (gcd is 1: the modulus is irreducible and rep is a
  // nonzero representative of lower degree).
  auto [g, u, v] = xgcd(rep_, field_->modulus_q());
  (void)v;
  if (g.degree() != 0) throw std::logic_error("NFElem: reducible modulus");
  return NFElem(field_, u);
}

bool NFElem::operator==(const NFElem& o) const {
  unified_field(field_, o.field_);  // throws on genuinely mixed fields
  return rep_ == o.rep_;
}

ComplexInterval eval_interval(const QPoly& p, const ComplexInterval& box) {
  ComplexInterval r = ComplexInterval::point(QComplex(Rational(0), Rational(0)));
  for (int i = p.degree(); i >= 0; --i)
    r = r * box + ComplexInterval::point(QComplex(p.coeff(i), Rational(0)));
  return r;
}

AlgebraicNumber embed(const NFElem& e, const AlgebraicNumber& root) {
  if (auto q = e.rational_value()) return AlgebraicNumber(*q);
  const IntPoly& m = e.field()->modulus();
  if (root.min_poly() != m) throw std::logic_error("embed: root does not generate the field");

  // Annihilator: Res_y(m(y), D*x - D*rep(y)) vanishes at x = rep(root).
  Int d = 1;
  for (const auto& c : e.rep().coeffs()) d = lcm(d, den(c));
  std::vector<IntPoly> biv(e.rep().degree() + 1);
  for (int j = 0; j <= e.rep().degree(); ++j) {
    Int nj = num(e.rep().coeff(j) * d);
    biv[j] = j == 0 ? IntPoly(std::vector<Int>{-nj, d}) : IntPoly::constant(-nj);
  }
  IntPoly ann = resultant_y(m, biv);

  QPoly rep = e.rep();
  AlgebraicNumber base = root;
  return AlgebraicNumber::from_annihilator(ann, [rep, base](int k) {
    Rational eps(1, pow(Int(2), 16 + 8 * static_cast<unsigned>(k)));
    return eval_interval(rep, base.refine_to(eps));
  });
}

int sign_at(const NFElem& e, const AlgebraicNumber& root) {
  if (auto q = e.rational_value()) return *q > 0 ? 1 : (*q < 0 ? -1 : 0);
  if (!root.is_real()) throw std::domain_error("sign_at: non-real root");
  if (root.min_poly() != e.field()->modulus())
    throw std::logic_error("sign_at: root does not generate the field");
  // Nonzero representatives of degree < deg(modulus) cannot vanish at a root
  // of the irreducible modulus, so refinement terminates.
  ComplexInterval b = root.box();
  for (;;) {
    auto s = eval_interval(e.rep(), b).re.sign();
    if (s) return *s;
    Rational w = b.max_side();
    b = root.refine_to(w == 0 ? Rational(1, 1024) : w / 4);
  }
}

}  // namespace linterm

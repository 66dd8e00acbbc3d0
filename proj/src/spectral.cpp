// Eigenvalue structure, dominance classes, and closed-form coefficients.
//
// The coefficient solve works factor by factor. Write the characteristic
// polynomial of the homogenized matrix as x^z * P(x) with P(0) != 0, and let
// F be an irreducible factor of P with multiplicity m. For any guard g and
// start point e, the integer samples y_n = g(f^n(e)) satisfy, for n >= d,
//   y_n = sum over eigenvalues t, i < m_t of c_{t,i} C(n,i) lambda_t^n.
// The shift (S y)_n = y_{n+1} acts on the basis C(n,i) lambda^n as
// lambda*(1 + N) with N lowering i, so for the cofactor q = P / (x-theta)^m
// (computed inside K = Q[y]/(F) by synthetic division), q(S) annihilates
// every other eigenvalue's component and maps this one through the triangular
// matrix with entries tau_u = theta^u q^(u)(theta) / u!. Solving a small
// binomial interpolation system and back-substituting the tau relation
// recovers the c_i for theta; the same representatives serve every root of F.

#include "linterm/spectral.hpp"

#include <algorithm>
#include <numeric>

namespace linterm {

Spectrum spectrum_of(const HomogenizedSystem& h) {
  IntPoly p = char_poly(h.matrix);
  const std::vector<Int>& c = p.coeffs();
  int z = 0;
  while (z < static_cast<int>(c.size()) && c[z] == 0) ++z;

  Spectrum sp;
  sp.zero_multiplicity = z;
  IntPoly nonzero_part(std::vector<Int>(c.begin() + z, c.end()));
  for (const auto& [value, mult] : roots(nonzero_part)) {
    sp.eigenvalues.push_back(value);
    sp.multiplicities.push_back(mult);
    sp.k_max = std::max(sp.k_max, mult);
  }
  return sp;
}

std::vector<GrowthIndex> DominanceStructure::index_set() const {
  std::vector<GrowthIndex> out;
  for (const auto& cls : classes) out.insert(out.end(), cls.members.begin(), cls.members.end());
  return out;
}

DominanceStructure dominance_structure(const Spectrum& sp) {
  DominanceStructure ds;
  ds.k_max = sp.k_max;
  ds.eigen_count = sp.count();

  // Group eigenvalue indices by exact modulus, then sort groups ascending.
  std::vector<std::vector<int>> groups;
  for (int j = 0; j < sp.count(); ++j) {
    bool placed = false;
    for (auto& g : groups)
      if (compare_modulus(sp.eigenvalues[g[0]], sp.eigenvalues[j]) == 0) {
        g.push_back(j);
        placed = true;
        break;
      }
    if (!placed) groups.push_back({j});
  }
  std::sort(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
    return compare_modulus(sp.eigenvalues[a[0]], sp.eigenvalues[b[0]]) < 0;
  });

  ds.modulus_rank.assign(sp.count(), 0);
  for (int r = 0; r < static_cast<int>(groups.size()); ++r)
    for (int j : groups[r]) ds.modulus_rank[j] = r;

  for (int r = 0; r < static_cast<int>(groups.size()); ++r) {
    AlgebraicNumber rho = sqrt_nonneg(abs2(sp.eigenvalues[groups[r][0]]));
    for (int i = 0; i < sp.k_max; ++i) {
      DominanceClass cls;
      cls.binomial_index = i;
      cls.modulus_rank = r;
      cls.modulus = rho;
      for (int j : groups[r]) cls.members.push_back({i, j});
      ds.classes.push_back(std::move(cls));
    }
  }
  return ds;
}

namespace {

Poly<NFElem> lift_rational(const IntPoly& p) {
  std::vector<NFElem> c;
  c.reserve(p.coeffs().size());
  for (const Int& v : p.coeffs()) c.emplace_back(Rational(v));
  return Poly<NFElem>(std::move(c));
}

// Inverse of a small nonsingular rational matrix by Gauss-Jordan elimination.
QMat rational_inverse(QMat a) {
  const Eigen::Index n = a.rows();
  QMat inv = QMat::Identity(n, n);
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < n; ++r)
      if (a(r, col) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("rational_inverse: singular matrix");
    a.row(col).swap(a.row(piv));
    inv.row(col).swap(inv.row(piv));
    Rational scale = Rational(1) / a(col, col);
    a.row(col) *= scale;
    inv.row(col) *= scale;
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      Rational f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

}  // namespace

const NFElem& CoefficientTable::in_field_coefficient(int guard, int i, int eigen, int k) const {
  return blocks[factor_of[eigen]].coeff[guard][i][k];
}

NFElem CoefficientTable::in_field_value(int guard, int i, int eigen, const IVec& x) const {
  const auto& row = blocks[factor_of[eigen]].coeff[guard][i];
  NFElem v = row[dimension];
  for (int k = 0; k < dimension; ++k)
    if (x(k) != 0) v += row[k] * NFElem(Rational(x(k)));
  return v;
}

AlgebraicNumber CoefficientTable::coefficient(int guard, int i, int eigen, int k) const {
  return embed(in_field_coefficient(guard, i, eigen, k), eigenvalues[eigen]);
}

AlgebraicNumber CoefficientTable::value(int guard, int i, int eigen, const IVec& x) const {
  return embed(in_field_value(guard, i, eigen, x), eigenvalues[eigen]);
}

CoefficientTable coefficient_table(const HomogenizedSystem& h, const Spectrum& sp) {
  const int dh = static_cast<int>(h.matrix.rows());
  const int d = dh - 1;
  const int m = static_cast<int>(h.guard_rows.rows());

  CoefficientTable t;
  t.dimension = d;
  t.guard_count = m;
  t.k_max = sp.k_max;
  t.eigenvalues = sp.eigenvalues;
  t.factor_of.assign(sp.count(), -1);

  // Group eigenvalues into blocks by minimal polynomial.
  for (int j = 0; j < sp.count(); ++j) {
    int found = -1;
    for (size_t b = 0; b < t.blocks.size(); ++b)
      if (t.blocks[b].minpoly == sp.eigenvalues[j].min_poly()) {
        found = static_cast<int>(b);
        break;
      }
    if (found < 0) {
      FactorBlock fb;
      fb.minpoly = sp.eigenvalues[j].min_poly();
      fb.field = NumberField::create(fb.minpoly);
      fb.multiplicity = sp.multiplicities[j];
      found = static_cast<int>(t.blocks.size());
      t.blocks.push_back(std::move(fb));
    }
    FactorBlock& fb = t.blocks[static_cast<size_t>(found)];
    if (fb.multiplicity != sp.multiplicities[j])
      throw std::logic_error("coefficient_table: conjugate roots with unequal multiplicities");
    fb.eigen_indices.push_back(j);
    t.factor_of[j] = found;
  }

  // Nonzero part of the characteristic polynomial.
  IntPoly P = IntPoly::constant(Int(1));
  for (const auto& fb : t.blocks) P = P * fb.minpoly.pow(static_cast<unsigned>(fb.multiplicity));
  const int D = P.degree();

  // Integer samples for all guards and probes at once: y[r] has entry (g, p)
  // equal to guard g of f^(d+r)(probe p), probe 0 the origin, probe k the k-th
  // standard basis point.
  IMat probes = IMat::Zero(dh, dh);
  for (int k = 1; k <= d; ++k) probes(k - 1, k) = 1;
  for (int k = 0; k <= d; ++k) probes(d, k) = 1;
  IMat cur = probes;
  for (int step = 0; step < d; ++step) cur = h.matrix * cur;
  std::vector<IMat> y;
  y.reserve(static_cast<size_t>(D));
  for (int r = 0; r < D; ++r) {
    IMat yr;
    yr = h.guard_rows * cur;
    y.push_back(std::move(yr));
    cur = h.matrix * cur;
  }

  for (auto& fb : t.blocks) {
    const int mt = fb.multiplicity;
    NFElem theta = NFElem::generator(fb.field);

    // q = P / (x - theta)^mt by synthetic division inside the quotient field.
    Poly<NFElem> q = lift_rational(P);
    Poly<NFElem> lin(std::vector<NFElem>{-theta, NFElem(1)});
    for (int r = 0; r < mt; ++r) {
      auto [quo, rem] = divmod(q, lin);
      if (!rem.is_zero())
        throw std::logic_error("coefficient_table: factor does not divide the spectrum");
      q = quo;
    }

    // tau_u = theta^u q^(u)(theta)/u!: the action of q on the binomial basis.
    std::vector<NFElem> tau(static_cast<size_t>(mt));
    Poly<NFElem> qd = q;
    Rational factorial(1);
    NFElem theta_pow(1);
    for (int u = 0; u < mt; ++u) {
      if (u) {
        qd = qd.derivative();
        factorial *= u;
        theta_pow *= theta;
      }
      tau[static_cast<size_t>(u)] =
          theta_pow * qd.eval(theta) * NFElem(Rational(1) / factorial);
    }
    if (tau[0].is_zero()) throw std::logic_error("coefficient_table: singular ansatz system");

    // Binomial interpolation matrix over the sample offsets, inverted once.
    QMat bmat(mt, mt);
    for (int r = 0; r < mt; ++r)
      for (int i = 0; i < mt; ++i)
        bmat(r, i) = Rational(binomial(static_cast<unsigned long>(d + r), static_cast<unsigned>(i)));
    QMat binv = rational_inverse(bmat);

    NFElem theta_inv = theta.inverse();
    std::vector<NFElem> inv_pow(static_cast<size_t>(mt));
    NFElem ip = pow(theta_inv, static_cast<unsigned long>(d));
    for (int r = 0; r < mt; ++r) {
      inv_pow[static_cast<size_t>(r)] = ip;
      ip *= theta_inv;
    }

    fb.coeff.assign(static_cast<size_t>(m),
                    std::vector<std::vector<NFElem>>(
                        static_cast<size_t>(t.k_max),
                        std::vector<NFElem>(static_cast<size_t>(d + 1))));
    for (int g = 0; g < m; ++g) {
      std::vector<std::vector<NFElem>> c_probe(static_cast<size_t>(d + 1),
                                               std::vector<NFElem>(static_cast<size_t>(mt)));
      for (int p = 0; p <= d; ++p) {
        // Filtered samples w_r = (q(S) y)(d + r) * theta^-(d+r).
        std::vector<NFElem> w(static_cast<size_t>(mt));
        for (int r = 0; r < mt; ++r) {
          NFElem zr;
          for (int k = 0; k <= q.degree(); ++k)
            zr += q.coeff(k) * NFElem(Rational(y[static_cast<size_t>(r + k)](g, p)));
          w[static_cast<size_t>(r)] = zr * inv_pow[static_cast<size_t>(r)];
        }
        // b solves the binomial system; then undo the triangular tau map.
        std::vector<NFElem> b(static_cast<size_t>(mt));
        for (int i = 0; i < mt; ++i)
          for (int r = 0; r < mt; ++r)
            b[static_cast<size_t>(i)] += NFElem(binv(i, r)) * w[static_cast<size_t>(r)];
        std::vector<NFElem>& c = c_probe[static_cast<size_t>(p)];
        for (int i = mt - 1; i >= 0; --i) {
          NFElem acc = b[static_cast<size_t>(i)];
          for (int u = 1; i + u < mt; ++u)
            acc -= tau[static_cast<size_t>(u)] * c[static_cast<size_t>(i + u)];
          c[static_cast<size_t>(i)] = acc / tau[0];
        }
      }
      for (int i = 0; i < mt; ++i) {
        auto& row = fb.coeff[static_cast<size_t>(g)][static_cast<size_t>(i)];
        row[static_cast<size_t>(d)] = c_probe[0][static_cast<size_t>(i)];
        for (int k = 1; k <= d; ++k)
          row[static_cast<size_t>(k - 1)] =
              c_probe[static_cast<size_t>(k)][static_cast<size_t>(i)] -
              c_probe[0][static_cast<size_t>(i)];
      }
    }
  }
  return t;
}

Int closed_form_value(const CoefficientTable& t, int guard, unsigned long n, const IVec& x) {
  // Per factor, the total contribution of its generator root in-field:
  // sum_i C(n,i) h_i(x) * theta^n. Each conjugate root contributes the same
  // representative evaluated over its own isolating box.
  std::vector<QPoly> reps;
  reps.reserve(t.blocks.size());
  for (const auto& fb : t.blocks) {
    NFElem theta = NFElem::generator(fb.field);
    NFElem s;
    for (int i = 0; i < fb.multiplicity; ++i) {
      const auto& row = fb.coeff[static_cast<size_t>(guard)][static_cast<size_t>(i)];
      NFElem v = row[static_cast<size_t>(t.dimension)];
      for (int k = 0; k < t.dimension; ++k)
        if (x(k) != 0) v += row[static_cast<size_t>(k)] * NFElem(Rational(x(k)));
      s += NFElem(Rational(binomial(n, static_cast<unsigned>(i)))) * v;
    }
    s *= pow(theta, n);
    reps.push_back(s.rep());
  }

  for (int k = 0;; ++k) {
    if (k > 64) throw std::logic_error("closed_form_value: enclosure failed to converge");
    Rational eps(1, pow(Int(2), 8 + 6 * static_cast<unsigned>(k)));
    ComplexInterval total = ComplexInterval::point(QComplex());
    for (size_t j = 0; j < t.eigenvalues.size(); ++j)
      total = total + eval_interval(reps[static_cast<size_t>(t.factor_of[j])],
                                    t.eigenvalues[j].refine_to(eps));
    if (!total.im.contains_zero())
      throw std::logic_error("closed_form_value: enclosure misses the real axis");
    Int lo = ceil(total.re.lo), hi = floor(total.re.hi);
    if (lo == hi) return lo;
    if (lo > hi) throw std::logic_error("closed_form_value: no integer in the enclosure");
  }
}

std::pair<LoopProgram, unsigned long> nondegeneracy_reduction(const LoopProgram& p,
                                                              unsigned long cap) {
  Spectrum sp = spectrum_of(homogenize(p));
  unsigned long l = 1;
  for (int a = 0; a < sp.count(); ++a)
    for (int b = a + 1; b < sp.count(); ++b) {
      AlgebraicNumber quotient = sp.eigenvalues[a] / sp.eigenvalues[b];
      if (auto ord = root_of_unity_order(quotient)) {
        l = std::lcm(l, static_cast<unsigned long>(*ord));
        if (l > cap) throw LimitError("nondegeneracy reduction: power exceeds cap");
      }
    }
  return {power_transform(p, l), l};
}

}  // namespace linterm

#pragma once
// Growth structure of a homogenized loop. The guard value after n steps has
// the closed form
//   g(f^n(x)) = sum over (i,j) in I of C(n,i) * lambda_j^n * h_{i,j}(x),
// valid for all n >= d, where I pairs a binomial index i < k_max with a
// nonzero eigenvalue lambda_j. This module computes the eigenvalue data, the
// dominance preorder that ranks the terms by asymptotic growth, and the affine
// coefficient functions h_{i,j}. Coefficients are solved once per irreducible
// factor of the characteristic polynomial, inside that factor's quotient
// field; embedding the shared representative at each root separates conjugate
// eigenvalues, so conjugate symmetry of the table is structural.

#include <utility>
#include <vector>

#include "linterm/algebraic.hpp"
#include "linterm/loop_model.hpp"
#include "linterm/number_field.hpp"

namespace linterm {

struct Spectrum {
  std::vector<AlgebraicNumber> eigenvalues;  // distinct and nonzero, deterministic order
  std::vector<int> multiplicities;           // parallel to eigenvalues
  int k_max = 0;                             // max multiplicity
  int zero_multiplicity = 0;                 // algebraic multiplicity of eigenvalue 0

  int count() const { return static_cast<int>(eigenvalues.size()); }
};

Spectrum spectrum_of(const HomogenizedSystem& h);

// One point of the index set I; `eigen` is a 0-based index into
// Spectrum::eigenvalues.
struct GrowthIndex {
  int binomial = 0;
  int eigen = 0;
  friend bool operator==(const GrowthIndex& a, const GrowthIndex& b) {
    return a.binomial == b.binomial && a.eigen == b.eigen;
  }
  friend bool operator!=(const GrowthIndex& a, const GrowthIndex& b) { return !(a == b); }
};

// An equivalence class of indices with the same growth rate: equal eigenvalue
// modulus and equal binomial index.
struct DominanceClass {
  std::vector<GrowthIndex> members;
  int binomial_index = 0;   // the shared i
  int modulus_rank = 0;     // 0-based rank of the shared |lambda| (ascending)
  AlgebraicNumber modulus;  // the shared |lambda|, a real algebraic number
};

struct DominanceStructure {
  int k_max = 0;
  int eigen_count = 0;
  std::vector<int> modulus_rank;        // per eigenvalue
  std::vector<DominanceClass> classes;  // strictly increasing dominance order

  // "grows no faster than": strict modulus order, binomial index as tiebreak.
  bool preceq(const GrowthIndex& a, const GrowthIndex& b) const {
    if (modulus_rank[a.eigen] != modulus_rank[b.eigen])
      return modulus_rank[a.eigen] < modulus_rank[b.eigen];
    return a.binomial <= b.binomial;
  }
  // All of I, listed class by class in increasing dominance order.
  std::vector<GrowthIndex> index_set() const;
};

DominanceStructure dominance_structure(const Spectrum& sp);

// Coefficient data for all eigenvalues sharing one minimal polynomial. The
// in-field representative is the same for every root; embedding at a
// particular root produces that eigenvalue's coefficients.
struct FactorBlock {
  IntPoly minpoly;
  FieldPtr field;                  // the quotient field of minpoly
  int multiplicity = 0;            // shared multiplicity of this factor's roots
  std::vector<int> eigen_indices;  // spectrum entries that are roots of minpoly
  // coeff[guard][i][k]: in-field affine coefficients of h_{i,.}; k < d are the
  // linear parts, k == d the constant term. Rows with i >= multiplicity are 0.
  std::vector<std::vector<std::vector<NFElem>>> coeff;
};

struct CoefficientTable {
  int dimension = 0;  // d
  int guard_count = 0;
  int k_max = 0;
  std::vector<AlgebraicNumber> eigenvalues;  // the spectrum's, same order
  std::vector<int> factor_of;                // eigenvalue index -> block index
  std::vector<FactorBlock> blocks;

  const FactorBlock& block_of(int eigen) const { return blocks[factor_of[eigen]]; }

  // Affine coefficient k of h^{(guard)}_{i,eigen}: k < d linear, k == d
  // constant. The in-field form is shared among a factor's conjugate roots.
  const NFElem& in_field_coefficient(int guard, int i, int eigen, int k) const;
  NFElem in_field_value(int guard, int i, int eigen, const IVec& x) const;
  // The same data embedded at eigenvalue `eigen`, as exact algebraic numbers.
  AlgebraicNumber coefficient(int guard, int i, int eigen, int k) const;
  AlgebraicNumber value(int guard, int i, int eigen, const IVec& x) const;
};

CoefficientTable coefficient_table(const HomogenizedSystem& h, const Spectrum& sp);

// g(f^n(x)) for n >= dimension, recovered from the closed form alone:
// certified interval evaluation of the ansatz sum, refined until exactly one
// integer remains in the enclosure.
Int closed_form_value(const CoefficientTable& t, int guard, unsigned long n, const IVec& x);

}  // namespace linterm

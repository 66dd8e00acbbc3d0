#pragma once
// Unit-circle normalization of the spectrum, exact multiplicative-relation
// search, and the torus-subgroup diagnostics built on the relation lattice.
//
// For unit-modulus gammas the relation group L = {v : gamma^v = 1} is an
// integer lattice. The search seeds it with conjugate-pair relations and
// root-of-unity orders, enumerates the residual candidates (root-of-unity
// coordinates modulo their orders, remaining coordinates up to a bound tied
// to the instance's height/degree bound), filters with certified interval
// arithmetic, and confirms survivors exactly before folding them into a
// Hermite-form basis.

#include <optional>
#include <vector>

#include "linterm/algebraic.hpp"
#include "linterm/lattice.hpp"
#include "linterm/spectral.hpp"

namespace linterm {

// Eigenvalues scaled to the unit circle: gammas[j] = lambda_j / |lambda_j|.
struct NormalizedSpectrum {
  std::vector<AlgebraicNumber> gammas;  // |gamma| = 1 exactly; conjugation-closed
  std::vector<std::optional<unsigned>> orders;  // nullopt where gamma is not a root of unity
  Spectrum source;
  int count() const { return static_cast<int>(gammas.size()); }
};

NormalizedSpectrum normalize(const Spectrum& sp);

// Staircase basis of (a sublattice of) the relation group. Every basis
// vector is an exact relation; `rank` is the number of basis vectors.
struct RelationLattice {
  std::vector<IVec> basis;
  int rank = 0;
};

// Height/degree data of the instance plus the enumeration cap. The
// instance bound ceil((D * log H)^(s^2)) is the heuristic completeness
// threshold: a search that covered coordinates up to it provably generated
// the whole lattice (up to the unproved exponent constant).
struct SearchBudget {
  double height_bound = 1.0;  // max |coefficient| over the gamma minimal polynomials
  int degree_bound = 1;       // max degree over the gamma minimal polynomials
  long long coordinate_cap = 64;
  bool truncated = false;  // instance bound exceeded the hard cap of 10^6

  static SearchBudget for_instance(const NormalizedSpectrum& g);
  long long instance_bound(int s) const;
};

struct RelationSearch {
  RelationLattice lattice;
  bool complete = false;
};

// Exact test of gamma^v = 1 (certified interval reject, algebraic confirm).
bool is_relation(const NormalizedSpectrum& g, const IVec& v);

RelationSearch relation_basis(const NormalizedSpectrum& g, const SearchBudget& budget);

// T = {mu on the unit torus : mu^v = 1 for all relations v}.
struct TorusSubgroup {
  RelationLattice relation_basis;
};

enum class TorusMembership { inside, outside, undecided };

// Certified where possible: `outside` means some relation product provably
// misses 1; point inputs are decided exactly; interval inputs report
// `inside` when every relation product brackets 1 tightly, `undecided`
// when the boxes are too wide to tell.
TorusMembership torus_membership(const TorusSubgroup& t, const std::vector<ComplexInterval>& mu);

// Smallest n <= horizon with ||gamma^n - mu||_inf <= eps under certified
// interval evaluation, or nullopt if the horizon is exhausted.
std::optional<unsigned long> density_probe(const NormalizedSpectrum& g, const TorusSubgroup& t,
                                           const std::vector<ComplexInterval>& mu,
                                           const Rational& eps, unsigned long horizon);

}  // namespace linterm

#pragma once

#include <optional>
#include <random>
#include <vector>

#include "k3trc/gamma.hpp"
#include "k3trc/linalg.hpp"

namespace k3trc {

// Eigenvalue classes alpha_1..alpha_2d with alpha_{i+d} = alpha_i^{-1}, each of
// multiplicity e; B[i] couples block i with block i + d.
struct EigenModel {
  int d = 0;
  int e = 1;
  std::vector<QMatrix> B;

  static EigenModel standard(int d, int e);
  static EigenModel of(const WeilPolynomial& L);
  void check() const;
};

// One e x e block per eigenvalue class.
struct CommutantElement {
  std::vector<QMatrix> blocks;

  static CommutantElement identity(const EigenModel& m);
  static CommutantElement random(const EigenModel& m, std::mt19937_64& rng, long range = 5);
  CommutantElement operator*(const CommutantElement& o) const;
  friend bool operator==(const CommutantElement& a, const CommutantElement& b);
};

// Adjoint with respect to the block pairing.
CommutantElement iota(const EigenModel& m, const CommutantElement& f);
// Sum of block traces.
Rational tr2(const CommutantElement& f);
// Tr_2(iota(g) f).
Rational trace_pairing(const EigenModel& m, const CommutantElement& f, const CommutantElement& g);
// Trace of left multiplication by f on the commutant, from its explicit matrix.
Rational regular_trace(const EigenModel& m, const CommutantElement& f);
bool verify_trace_identity(const EigenModel& m, const CommutantElement& f);

struct CommutantDimensions {
  int dimension = 0;
  int center_degree = 0;
  std::optional<int> dim_over_center;  // empty for the zero algebra
};
CommutantDimensions commutant_dimensions(const EigenModel& m);

struct SignaturePair {
  long positive = 0;
  long negative = 0;
  friend bool operator==(const SignaturePair&, const SignaturePair&) = default;
};

struct SignatureReport {
  int rho = 0, d = 0, e = 0;
  long rho1 = 0, rho2 = 0;
  SignaturePair m_part, algebraic, transcendental, total;
};
SignatureReport signature_report(int rho, int d, int e);

// e^n times the number of n-tuples of labels whose eigenvalue product is exactly 1.
long invariant_tuple_dimension(const WeilPolynomial& L, int n, const EffortPolicy& effort = {});

struct GramReport {
  int n = 0;
  // Product-one tuples, in lexicographic order; the Gram matrix is block diagonal over them.
  std::vector<std::vector<int>> tuples;
  std::vector<QMatrix> blocks;
  std::vector<Rational> minors;
  bool positive_definite = false;

  long dimension() const;
  QMatrix dense() const;
};

GramReport tensor_power_gram(const EigenModel& m, const WeilPolynomial& L, int n, const EffortPolicy& effort = {});

}  // namespace k3trc

#pragma once

#include <stdexcept>
#include <vector>

#include "k3trc/poly.hpp"

namespace k3trc {

struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedDegree : std::domain_error {
  using std::domain_error::domain_error;
};

struct Segment {
  Rational slope;  // nu_q of the roots alpha of prod (1 - alpha T)
  int multiplicity;
  friend bool operator==(const Segment&, const Segment&) = default;
};

struct NewtonPolygon {
  Integer p;
  Integer q;
  unsigned long a = 1;  // q = p^a
  std::vector<Segment> segments;

  int degree() const;
  // Number of roots (with multiplicity) of the given nu_q slope.
  int multiplicity(const Rational& slope) const;
  // Abscissae where the hull changes slope, including 0 and deg.
  std::vector<int> vertices() const;
};

// Lower convex hull of (i, nu_p(c_i)); slopes rescaled by 1/a.
NewtonPolygon newton_polygon(const Poly& P, const Integer& p, const Integer& q);

struct PrecisionPolicy {
  long per_degree = 32;
  long ceiling = 4096;
};

// Coefficients c_i = r_i / p^shift with r_i known modulo p^precision.
struct PadicFactor {
  Integer p;
  long precision = 0;
  long shift = 0;
  std::vector<Integer> residues;
  Rational slope;  // nu_q normalization

  int degree() const { return static_cast<int>(residues.size()) - 1; }
  Poly approximation() const;
};

// Factor of P over Q_p collecting the roots of the given nu_q slope,
// normalized to constant term 1.
PadicFactor slope_factor(const Poly& P, const Integer& p, const Integer& q, const Rational& slope,
                         const PrecisionPolicy& policy = {});

// All slope factors in increasing slope order, sharing one precision.
std::vector<PadicFactor> slope_decomposition(const Poly& P, const Integer& p, const Integer& q,
                                             const PrecisionPolicy& policy = {});

// Irreducibility over Q_p for 1 <= deg P <= 10.
bool is_irreducible_local(const Poly& P, const Integer& p);

// Helpers shared with the irreducibility test and the test suite.
Rational truncate_padic(const Rational& x, const Integer& p, long N);
Poly truncate_padic(const Poly& f, const Integer& p, long N);
long min_valuation(const Poly& f, const Integer& p);
// v_p of the discriminant of a squarefree polynomial.
long discriminant_valuation(const Poly& f, const Integer& p);
Rational discriminant(const Poly& f);

}  // namespace k3trc

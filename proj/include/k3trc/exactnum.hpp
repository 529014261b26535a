#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "k3trc/poly.hpp"

namespace k3trc {

struct EndpointIsRoot : std::domain_error {
  using std::domain_error::domain_error;
};

struct InconsistentPowerSums : std::domain_error {
  using std::domain_error::domain_error;
};

// Number of distinct real roots of p in the open interval (a, b).
long sturm_count(const Poly& p, const Rational& a, const Rational& b);

// Square-free decomposition p = lc * prod a_i^i with monic, pairwise coprime a_i.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

struct Factorization {
  Rational unit;
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, canonical order

  Poly expand() const;
};

Factorization factor_rational(const Poly& p);
bool is_irreducible(const Poly& p);

// n-th cyclotomic polynomial in x, monic.
Poly cyclotomic(unsigned n);
unsigned long euler_phi(unsigned long n);

struct CyclotomicSplit {
  Poly C;  // product of root-of-unity factors, C(0) = 1
  Poly R;  // no root of unity among its roots, R(0) = 1
};
CyclotomicSplit cyclotomic_part(const Poly& p);

// p_k = sum alpha_i^k where p(T) = prod (1 - alpha_i T), k = 1..K.
std::vector<Rational> power_sums(const Poly& p, int K);
Poly from_power_sums(const std::vector<Rational>& sums, int degree);

// For a palindromic p of even degree 2m, the g of degree m with p(T) = T^m g(T + 1/T).
Poly chebyshev_image(const Poly& p);

}  // namespace k3trc

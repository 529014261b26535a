#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "k3trc/rational.hpp"

namespace k3trc::modp {

// Polynomials over F_p for word-size primes p < 2^31, ascending, trimmed.
using Elem = std::int64_t;
using MPoly = std::vector<Elem>;

Elem reduce(const Integer& z, Elem p);
// Reduction of a p-integral rational; throws when p divides the denominator.
Elem reduce(const Rational& r, Elem p);
Elem inverse(Elem a, Elem p);

void trim(MPoly& a);
MPoly add(const MPoly& a, const MPoly& b, Elem p);
MPoly sub(const MPoly& a, const MPoly& b, Elem p);
MPoly mul(const MPoly& a, const MPoly& b, Elem p);
MPoly scale(const MPoly& a, Elem s, Elem p);
std::pair<MPoly, MPoly> divmod(const MPoly& a, const MPoly& b, Elem p);
MPoly rem(const MPoly& a, const MPoly& b, Elem p);
MPoly monic(const MPoly& a, Elem p);
MPoly gcd(MPoly a, MPoly b, Elem p);
// (g, s, t) with s a + t b = g monic.
std::tuple<MPoly, MPoly, MPoly> xgcd(const MPoly& a, const MPoly& b, Elem p);
MPoly powmod(MPoly a, Integer k, const MPoly& m, Elem p);
MPoly derivative(const MPoly& a, Elem p);
inline int degree(const MPoly& a) { return static_cast<int>(a.size()) - 1; }

bool is_squarefree(const MPoly& a, Elem p);

// Monic irreducible factors with multiplicity, sorted by (degree, coefficients).
// Deterministic: the equal-degree splitting uses a fixed-seed generator.
std::vector<std::pair<MPoly, int>> factor(const MPoly& a, Elem p);

bool is_irreducible(const MPoly& a, Elem p);

}  // namespace k3trc::modp

#pragma once

#include <gmpxx.h>

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace k3trc {

using Integer = mpz_class;
using Rational = mpq_class;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical n/d; mpq_class(n, d) alone does not reduce.
inline Rational make_rational(const Integer& n, const Integer& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Accepts "n", "-n", "n/d" with optional surrounding blanks. Result is canonical.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// p-adic valuation; nullopt for zero.
std::optional<long> valuation(const Integer& z, const Integer& p);
std::optional<long> valuation(const Rational& r, const Integer& p);

// Exact power of an integer base.
Integer ipow(const Integer& base, unsigned long e);
Rational rpow(const Rational& base, long e);

// If n = p^a for a prime p, returns (p, a).
std::optional<std::pair<Integer, unsigned long>> prime_power(const Integer& n);
bool is_prime(const Integer& n);

// Symmetric residue in (-m/2, m/2].
Integer symmetric_mod(const Integer& x, const Integer& m);

}  // namespace k3trc

namespace Eigen {
template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpq_class NonInteger;
  typedef mpz_class Nested;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

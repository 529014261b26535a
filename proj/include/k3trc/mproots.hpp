#pragma once

#include <boost/multiprecision/mpfr.hpp>
#include <optional>
#include <vector>

#include "k3trc/poly.hpp"

namespace k3trc {

using Real = boost::multiprecision::mpfr_float;

// Sets the working precision of newly created Real values for the current scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

struct Complex {
  Real re, im;

  Complex() : re(0), im(0) {}
  Complex(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return {-re, -im}; }

  Complex conj() const { return {re, -im}; }
  Real norm() const { return re * re + im * im; }
  Real abs() const;
  Real arg() const;
};

Complex cpow(Complex z, long n);
Complex expi(const Real& t);
Real to_real(const Rational& x);
Complex eval(const Poly& p, const Complex& z);

// All roots of a squarefree polynomial (any coefficient order convention: the
// roots of sum c_i x^i), refined to the current precision by Aberth iteration.
std::vector<Complex> complex_roots(const Poly& p);

// Nearest integer to x, and whether |x - round(x)| < 2^-margin_bits.
std::pair<Integer, bool> round_integer(const Real& x, long margin_bits);

// Monic integer polynomial prod (x - z_i) rounded from numeric roots, or nullopt when
// some coefficient is not within the margin of an integer.
std::optional<Poly> round_product(const std::vector<Complex>& zs, long margin_bits);

}  // namespace k3trc

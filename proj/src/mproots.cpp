#include "k3trc/mproots.hpp"

#include <Eigen/Eigenvalues>
#include <complex>

namespace k3trc {

namespace {
unsigned digits_for(unsigned bits) { return static_cast<unsigned>(bits * 0.30103) + 2; }
}  // namespace

PrecisionScope::PrecisionScope(unsigned bits) : saved_(Real::default_precision()) {
  Real::default_precision(digits_for(bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

Complex& Complex::operator*=(const Complex& o) {
  Real r = re * o.re - im * o.im;
  im = re * o.im + im * o.re;
  re = std::move(r);
  return *this;
}

Complex& Complex::operator/=(const Complex& o) {
  Real n = o.norm();
  Real r = (re * o.re + im * o.im) / n;
  im = (im * o.re - re * o.im) / n;
  re = std::move(r);
  return *this;
}

Real Complex::abs() const { return sqrt(norm()); }
Real Complex::arg() const { return atan2(im, re); }

Complex cpow(Complex z, long n) {
  if (n < 0) return cpow(Complex(Real(1)) / z, -n);
  Complex r(Real(1));
  while (n) {
    if (n & 1) r *= z;
    z *= z;
    n >>= 1;
  }
  return r;
}

Complex expi(const Real& t) { return {cos(t), sin(t)}; }

Real to_real(const Rational& x) {
  Real n, d;
  mpfr_set_z(n.backend().data(), x.get_num_mpz_t(), MPFR_RNDN);
  mpfr_set_z(d.backend().data(), x.get_den_mpz_t(), MPFR_RNDN);
  return n / d;
}

Complex eval(const Poly& p, const Complex& z) {
  Complex acc;
  for (int i = p.degree(); i >= 0; --i) acc = acc * z + Complex(to_real(p[i]));
  return acc;
}

std::vector<Complex> complex_roots(const Poly& p) {
  int n = p.degree();
  if (n < 1) return {};
  Poly m = p.monic();
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -m[i].get_d();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  std::vector<Complex> z;
  for (int i = 0; i < n; ++i) {
    auto v = es.eigenvalues()(i);
    z.emplace_back(Real(v.real()), Real(v.imag()));
  }
  Poly dm = m.derivative();
  Real tol = pow(Real(2), -static_cast<long>(Real::default_precision() * 3.3219) + 16);
  for (int iter = 0; iter < 400; ++iter) {
    Real worst(0);
    for (int k = 0; k < n; ++k) {
      Complex w = eval(m, z[k]) / eval(dm, z[k]);
      Complex s;
      for (int j = 0; j < n; ++j)
        if (j != k) s += Complex(Real(1)) / (z[k] - z[j]);
      Complex step = w / (Complex(Real(1)) - w * s);
      z[k] -= step;
      Real a = step.abs();
      if (a > worst) worst = a;
    }
    if (worst < tol) break;
  }
  return z;
}

std::pair<Integer, bool> round_integer(const Real& x, long margin_bits) {
  Real r = round(x);
  Integer out;
  mpfr_get_z(out.get_mpz_t(), r.backend().data(), MPFR_RNDN);
  return {out, abs(x - r) < pow(Real(2), -margin_bits)};
}

std::optional<Poly> round_product(const std::vector<Complex>& zs, long margin_bits) {
  std::vector<Complex> c{Complex(Real(1))};
  for (const auto& z : zs) {
    c.emplace_back();
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - z * c[i];
    c[0] = -(z * c[0]);
  }
  // c holds prod (x - z) in ascending order after the loop above.
  std::vector<Rational> out;
  Real eps = pow(Real(2), -margin_bits);
  for (const auto& v : c) {
    auto [k, ok] = round_integer(v.re, margin_bits);
    if (!ok || abs(v.im) >= eps) return std::nullopt;
    out.emplace_back(k);
  }
  return Poly(out);
}

}  // namespace k3trc

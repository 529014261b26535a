#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k3trc/rational.hpp"

namespace k3trc {

// Dense univariate polynomial over a field, coefficients in ascending degree.
// Trailing zeros are always trimmed, so the zero polynomial has no coefficients.
template <class Scalar>
class Polynomial {
 public:
  using scalar_type = Scalar;

  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

  static Polynomial constant(const Scalar& s) { return Polynomial(std::vector<Scalar>{s}); }
  static Polynomial monomial(const Scalar& s, int k) {
    std::vector<Scalar> v(k + 1, Scalar(0));
    v[k] = s;
    return Polynomial(std::move(v));
  }
  static Polynomial x() { return monomial(Scalar(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coefficients() const { return c_; }
  Scalar operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : Scalar(0); }
  const Scalar& leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  Scalar operator()(const Scalar& t) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Scalar(static_cast<long>(i));
    return Polynomial(std::move(d));
  }

  Polynomial monic() const {
    if (is_zero()) return {};
    return *this * (Scalar(1) / leading());
  }

  // T^n P(1/T) for n = degree.
  Polynomial reversed() const {
    std::vector<Scalar> r(c_.rbegin(), c_.rend());
    return Polynomial(std::move(r));
  }

  // P(s T).
  Polynomial scaled(const Scalar& s) const {
    std::vector<Scalar> r(c_);
    Scalar pw(1);
    for (auto& v : r) {
      v *= pw;
      pw *= s;
    }
    return Polynomial(std::move(r));
  }

  // P(Q(T)).
  Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
  }

  // Truncation modulo T^k.
  Polynomial truncated(int k) const {
    if (k >= static_cast<int>(c_.size())) return *this;
    return Polynomial(std::vector<Scalar>(c_.begin(), c_.begin() + std::max(k, 0)));
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Scalar(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    if (s == 0) {
      c_.clear();
      return *this;
    }
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) { return a * Scalar(-1); }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Scalar> c_;
};

template <class Scalar>
Polynomial<Scalar> pow(const Polynomial<Scalar>& p, unsigned k) {
  Polynomial<Scalar> r = Polynomial<Scalar>::constant(Scalar(1)), b = p;
  while (k) {
    if (k & 1u) r = r * b;
    k >>= 1u;
    if (k) b = b * b;
  }
  return r;
}

// Euclidean division a = q b + r, deg r < deg b.
template <class Scalar>
std::pair<Polynomial<Scalar>, Polynomial<Scalar>> divmod(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  int db = b.degree();
  std::vector<Scalar> r = a.coefficients();
  if (a.degree() < db) return {Polynomial<Scalar>{}, a};
  std::vector<Scalar> q(a.degree() - db + 1, Scalar(0));
  Scalar inv = Scalar(1) / b.leading();
  const auto& bc = b.coefficients();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Scalar f = r[i] * inv;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * bc[j];
  }
  r.resize(db);
  return {Polynomial<Scalar>(std::move(q)), Polynomial<Scalar>(std::move(r))};
}

template <class Scalar>
Polynomial<Scalar> operator/(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  return divmod(a, b).first;
}
template <class Scalar>
Polynomial<Scalar> operator%(const Polynomial<Scalar>& a, const Polynomial<Scalar>& b) {
  return divmod(a, b).second;
}

template <class Scalar>
bool divides(const Polynomial<Scalar>& d, const Polynomial<Scalar>& a) {
  return (a % d).is_zero();
}

// Monic gcd; gcd(0, 0) = 0.
template <class Scalar>
Polynomial<Scalar> gcd(Polynomial<Scalar> a, Polynomial<Scalar> b) {
  while (!b.is_zero()) {
    auto r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

// Extended gcd: returns (g, s, t) with s a + t b = g, g monic.
template <class Scalar>
std::tuple<Polynomial<Scalar>, Polynomial<Scalar>, Polynomial<Scalar>> xgcd(const Polynomial<Scalar>& a,
                                                                             const Polynomial<Scalar>& b) {
  using P = Polynomial<Scalar>;
  P r0 = a, r1 = b, s0 = P::constant(Scalar(1)), s1, t0, t1 = P::constant(Scalar(1));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Scalar inv = Scalar(1) / r0.leading();
  return {r0 * inv, s0 * inv, t0 * inv};
}

// a^k mod m.
template <class Scalar>
Polynomial<Scalar> powmod(Polynomial<Scalar> a, Integer k, const Polynomial<Scalar>& m) {
  Polynomial<Scalar> r = Polynomial<Scalar>::constant(Scalar(1)) % m;
  a = a % m;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = (r * a) % m;
    k >>= 1;
    if (k > 0) a = (a * a) % m;
  }
  return r;
}

using Poly = Polynomial<Rational>;

Poly parse_poly(const std::vector<std::string>& coefficient_strings);
std::vector<std::string> coefficient_strings(const Poly& p);
std::string to_string(const Poly& p, const std::string& var = "T");

// Content-free integer polynomial with positive leading coefficient, as integers.
std::vector<Integer> primitive_integer_part(const Poly& p);
Poly from_integers(const std::vector<Integer>& v);

// Canonical order: degree, then coefficients lexicographically from degree 0.
bool canonical_less(const Poly& a, const Poly& b);

}  // namespace k3trc

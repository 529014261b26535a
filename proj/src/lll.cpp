#include "k3trc/lll.hpp"

#include <algorithm>

namespace k3trc {

namespace {

Rational dot(const std::vector<Rational>& a, const IntVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer round_rational(const Rational& x) {
  Integer n = x.get_num() * 2 + x.get_den();
  Integer d = x.get_den() * 2;
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  return r;
}

}  // namespace

std::vector<IntVector> lll_reduce(std::vector<IntVector> b, const Rational& delta) {
  const std::size_t n = b.size();
  if (n == 0) return b;
  const std::size_t m = b[0].size();
  std::vector<std::vector<Rational>> bs(n, std::vector<Rational>(m));
  std::vector<std::vector<Rational>> mu(n, std::vector<Rational>(n));
  std::vector<Rational> B(n);

  auto gram_schmidt = [&](std::size_t from) {
    for (std::size_t i = from; i < n; ++i) {
      for (std::size_t k = 0; k < m; ++k) bs[i][k] = b[i][k];
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = B[j] == 0 ? Rational(0) : dot(bs[j], b[i]) / B[j];
        for (std::size_t k = 0; k < m; ++k) bs[i][k] -= mu[i][j] * bs[j][k];
      }
      B[i] = dot(bs[i], bs[i]);
    }
  };
  gram_schmidt(0);

  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Integer r = round_rational(mu[k][jj]);
      if (r == 0) continue;
      for (std::size_t t = 0; t < m; ++t) b[k][t] -= r * b[jj][t];
      for (std::size_t t = 0; t < jj; ++t) mu[k][t] -= r * mu[jj][t];
      mu[k][jj] -= r;
    }
    if (B[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
      ++k;
    } else {
      std::swap(b[k], b[k - 1]);
      gram_schmidt(k - 1);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return b;
}

std::optional<IntVector> integer_relation(const std::vector<Real>& xs, long scale_bits, const Integer& bound) {
  const std::size_t n = xs.size();
  Real scale = pow(Real(2), scale_bits);
  std::vector<IntVector> basis(n, IntVector(n + 1, 0));
  for (std::size_t i = 0; i < n; ++i) {
    basis[i][i] = 1;
    basis[i][n] = round_integer(xs[i] * scale, 0).first;
  }
  auto red = lll_reduce(std::move(basis));
  Real tol = pow(Real(2), -scale_bits / 2);
  for (const auto& v : red) {
    IntVector c(v.begin(), v.begin() + static_cast<long>(n));
    if (std::all_of(c.begin(), c.end(), [](const Integer& x) { return x == 0; })) continue;
    bool small = std::all_of(c.begin(), c.end(), [&](const Integer& x) { return abs(x) <= bound; });
    if (!small) continue;
    Real s(0);
    for (std::size_t i = 0; i < n; ++i) s += xs[i] * Real(c[i].get_str());
    if (abs(s) < tol) return c;
    break;
  }
  return std::nullopt;
}

}  // namespace k3trc

#include "k3trc/exactnum.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "k3trc/modp.hpp"

namespace k3trc {

namespace {

int sign_at(const Poly& p, const Rational& x) {
  Rational v = p(x);
  return sgn(v);
}

int sign_changes(const std::vector<Poly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& s : seq) {
    int v = sign_at(s, x);
    if (v == 0) continue;
    if (last != 0 && v != last) ++changes;
    last = v;
  }
  return changes;
}

}  // namespace

long sturm_count(const Poly& p, const Rational& a, const Rational& b) {
  if (p.is_zero()) throw std::domain_error("sturm_count: zero polynomial");
  if (!(a < b)) throw std::domain_error("sturm_count: empty interval");
  if (p(a) == 0 || p(b) == 0) throw EndpointIsRoot("sturm_count: endpoint is a root; perturb the endpoint");
  if (p.degree() == 0) return 0;
  Poly s = p / gcd(p, p.derivative());
  std::vector<Poly> seq{s, s.derivative()};
  while (seq.back().degree() > 0) {
    Poly r = seq[seq.size() - 2] % seq.back();
    if (r.is_zero()) break;
    seq.push_back(-r);
  }
  return sign_changes(seq, a) - sign_changes(seq, b);
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
  std::vector<std::pair<Poly, int>> out;
  if (p.degree() <= 0) return out;
  Poly f = p.monic();
  Poly fp = f.derivative();
  Poly a = gcd(f, fp);
  Poly b = f / a;
  Poly c = fp / a;
  Poly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    Poly g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

namespace {

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  ztrim(r);
  return r;
}

ZPoly zmod(ZPoly a, const Integer& m) {
  for (auto& v : a) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  ztrim(a);
  return a;
}

ZPoly from_mpoly(const modp::MPoly& a) {
  ZPoly r;
  for (auto v : a) r.emplace_back(static_cast<long>(v));
  return r;
}

modp::MPoly to_mpoly(const ZPoly& a, modp::Elem p) {
  modp::MPoly r;
  for (const auto& v : a) r.push_back(modp::reduce(v, p));
  modp::trim(r);
  return r;
}

// Lifts f = lc * G * H (mod l) to the same identity mod l^k, G and H monic.
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& f, ZPoly G, ZPoly H, modp::Elem l, int k) {
  auto [g, s, t] = modp::xgcd(to_mpoly(G, l), to_mpoly(H, l), l);
  const Integer& lc = f.back();
  modp::Elem lcinv = modp::inverse(modp::reduce(lc, l), l);
  Integer lj = l;
  for (int j = 1; j < k; ++j) {
    ZPoly prod = zmul(G, H);
    ZPoly e(f.size(), Integer(0));
    for (std::size_t i = 0; i < f.size(); ++i) e[i] = f[i] - (i < prod.size() ? lc * prod[i] : Integer(0));
    for (auto& v : e) v /= lj;
    modp::MPoly ep = modp::scale(to_mpoly(e, l), lcinv, l);
    auto [q, tau] = modp::divmod(modp::mul(t, ep, l), to_mpoly(G, l), l);
    modp::MPoly sigma = modp::add(modp::mul(s, ep, l), modp::mul(q, to_mpoly(H, l), l), l);
    ZPoly zt = from_mpoly(tau), zs = from_mpoly(sigma);
    for (std::size_t i = 0; i < zt.size(); ++i) G[i] += lj * zt[i];
    for (std::size_t i = 0; i < zs.size(); ++i) H[i] += lj * zs[i];
    lj *= l;
  }
  return {G, H};
}

// Lifts the monic modular factors of f (mod l) to monic factors mod l^k.
std::vector<ZPoly> hensel_lift(const ZPoly& f, const std::vector<modp::MPoly>& factors, modp::Elem l, int k) {
  Integer M = ipow(Integer(l), k);
  std::vector<ZPoly> out;
  ZPoly cur = f;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    modp::MPoly rest{1};
    for (std::size_t j = i + 1; j < factors.size(); ++j) rest = modp::mul(rest, factors[j], l);
    auto [G, H] = hensel_pair(cur, from_mpoly(factors[i]), from_mpoly(rest), l, k);
    out.push_back(zmod(G, M));
    cur = zmod(H, M);
  }
  // Last factor: cur is lc * (product of remaining) already monic when i > 0.
  if (factors.size() == 1) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), M.get_mpz_t());
    ZPoly g = f;
    for (auto& v : g) v *= inv;
    out.push_back(zmod(g, M));
  } else {
    out.push_back(cur);
  }
  return out;
}

Integer norm2_ceil(const ZPoly& f) {
  Integer s = 0;
  for (const auto& v : f) s += v * v;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), s.get_mpz_t());
  return r + 1;
}

std::vector<Poly> factor_squarefree_integer(ZPoly f) {
  int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return {from_integers(f).monic()};
  // Choose the good prime with fewest modular factors among the first few.
  modp::Elem best = 0;
  std::vector<modp::MPoly> best_factors;
  int good = 0;
  for (modp::Elem l = 3; good < 6 && l < 2000; l += 2) {
    if (!is_prime(Integer(l))) continue;
    if (modp::reduce(f.back(), l) == 0) continue;
    modp::MPoly fl = to_mpoly(f, l);
    if (!modp::is_squarefree(fl, l)) continue;
    ++good;
    std::vector<modp::MPoly> fs;
    for (auto& [g, m] : modp::factor(fl, l)) fs.push_back(g);
    if (best == 0 || fs.size() < best_factors.size()) {
      best = l;
      best_factors = fs;
    }
    if (fs.size() == 1) break;
  }
  if (best == 0) throw std::logic_error("no good prime for factorization");
  if (best_factors.size() == 1) return {from_integers(f).monic()};

  Integer bound = abs(f.back()) * ipow(Integer(2), n) * norm2_ceil(f);
  int k = 1;
  Integer M = best;
  while (M <= 2 * bound) {
    M *= best;
    ++k;
  }
  std::vector<ZPoly> lifted = hensel_lift(f, best_factors, best, k);

  std::vector<Poly> found;
  std::vector<std::size_t> idx(lifted.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  Poly cur = from_integers(f);
  std::size_t s = 1;
  while (2 * s <= idx.size()) {
    bool progress = false;
    std::vector<bool> pick(idx.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(s), true);
    do {
      Integer lc = primitive_integer_part(cur).back();
      ZPoly g{lc};
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (pick[i]) g = zmod(zmul(g, lifted[idx[i]]), M);
      for (auto& v : g) v = symmetric_mod(v, M);
      Poly cand = from_integers(primitive_integer_part(from_integers(g)));
      if (cand.degree() <= 0) continue;
      auto [q, r] = divmod(cur, cand);
      if (!r.is_zero()) continue;
      found.push_back(cand.monic());
      cur = q;
      std::vector<std::size_t> keep;
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (!pick[i]) keep.push_back(idx[i]);
      idx = keep;
      progress = true;
      break;
    } while (std::prev_permutation(pick.begin(), pick.end()));
    if (!progress) ++s;
  }
  if (cur.degree() > 0) found.push_back(cur.monic());
  return found;
}

}  // namespace

Poly Factorization::expand() const {
  Poly r = Poly::constant(unit);
  for (const auto& [f, m] : factors) r = r * pow(f, static_cast<unsigned>(m));
  return r;
}

Factorization factor_rational(const Poly& p) {
  if (p.is_zero()) throw std::domain_error("factor_rational: zero polynomial");
  Factorization out{p.leading(), {}};
  for (const auto& [a, m] : squarefree_decomposition(p)) {
    for (auto& g : factor_squarefree_integer(primitive_integer_part(a))) out.factors.emplace_back(g, m);
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return canonical_less(x.first, y.first);
    return x.second < y.second;
  });
  return out;
}

bool is_irreducible(const Poly& p) {
  if (p.degree() <= 0) return false;
  auto f = factor_rational(p);
  return f.factors.size() == 1 && f.factors[0].second == 1;
}

unsigned long euler_phi(unsigned long n) {
  unsigned long r = n;
  for (unsigned long q = 2; q * q <= n; ++q) {
    if (n % q) continue;
    while (n % q == 0) n /= q;
    r -= r / q;
  }
  if (n > 1) r -= r / n;
  return r;
}

Poly cyclotomic(unsigned n) {
  static std::mutex mu;
  static std::map<unsigned, Poly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  Poly r = Poly::monomial(1, static_cast<int>(n)) - Poly::constant(1);
  for (unsigned d = 1; d < n; ++d)
    if (n % d == 0) r = r / cyclotomic(d);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, r);
  return r;
}

CyclotomicSplit cyclotomic_part(const Poly& p) {
  if (p.is_zero() || p[0] != 1) throw std::domain_error("cyclotomic_part: requires P(0) = 1");
  Poly C = Poly::constant(1), R = p;
  unsigned long D = static_cast<unsigned long>(p.degree());
  for (unsigned n = 1; D > 0 && n <= 2 * D * D + 2; ++n) {
    if (euler_phi(n) > D) continue;
    Poly phi = cyclotomic(n);
    Poly phin = phi * (Rational(1) / phi[0]);
    for (;;) {
      if (R.degree() < phin.degree()) break;
      auto [q, r] = divmod(R, phin);
      if (!r.is_zero()) break;
      R = q;
      C = C * phin;
    }
  }
  return {C, R};
}

std::vector<Rational> power_sums(const Poly& p, int K) {
  if (p.is_zero() || p[0] != 1) throw std::domain_error("power_sums: requires P(0) = 1");
  if (K < 1) throw std::domain_error("power_sums: K must be positive");
  std::vector<Rational> s(K + 1);
  for (int k = 1; k <= K; ++k) {
    Rational v = -Rational(k) * p[k];
    for (int i = 1; i < k; ++i) v -= p[i] * s[k - i];
    s[k] = v;
  }
  return {s.begin() + 1, s.end()};
}

Poly from_power_sums(const std::vector<Rational>& sums, int degree) {
  if (degree < 0 || static_cast<int>(sums.size()) < degree)
    throw InconsistentPowerSums("from_power_sums: not enough power sums for the degree");
  int K = static_cast<int>(sums.size());
  std::vector<Rational> c(K + 1);
  c[0] = 1;
  for (int k = 1; k <= K; ++k) {
    Rational v = sums[k - 1];
    for (int i = 1; i < k; ++i) v += c[i] * sums[k - i - 1];
    c[k] = -v / k;
    if (k > degree && c[k] != 0)
      throw InconsistentPowerSums("from_power_sums: sums do not close at the given degree");
  }
  c.resize(degree + 1);
  return Poly(std::move(c));
}

Poly chebyshev_image(const Poly& p) {
  int n = p.degree();
  if (n < 0 || n % 2) throw std::domain_error("chebyshev_image: needs even degree");
  for (int i = 0; i <= n; ++i)
    if (p[i] != p[n - i]) throw std::domain_error("chebyshev_image: not palindromic");
  int m = n / 2;
  // Peel off g_k (x^k) terms, where x^k expands to T^k + T^-k + lower.
  std::vector<Rational> rest(p.coefficients());
  std::vector<Rational> g(m + 1);
  for (int k = m; k >= 0; --k) {
    Rational a = rest[m + k];
    g[k] = a;
    if (a == 0) continue;
    // (T + 1/T)^k has coefficient binom(k, j) at T^{k - 2j}.
    Integer bin = 1;
    for (int j = 0; j <= k; ++j) {
      rest[m + k - 2 * j] -= a * bin;
      bin = bin * (k - j) / (j + 1);
    }
  }
  return Poly(std::move(g));
}

}  // namespace k3trc

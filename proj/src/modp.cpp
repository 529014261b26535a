#include "k3trc/modp.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <tuple>

namespace k3trc::modp {

Elem reduce(const Integer& z, Elem p) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), static_cast<unsigned long>(p));
  return static_cast<Elem>(r.get_ui());
}

Elem reduce(const Rational& r, Elem p) {
  Elem d = reduce(r.get_den(), p);
  if (d == 0) throw std::domain_error("denominator divisible by p");
  return reduce(r.get_num(), p) * inverse(d, p) % p;
}

Elem inverse(Elem a, Elem p) {
  Elem t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  if (nr == 0) throw std::domain_error("inverse of zero mod p");
  while (nr != 0) {
    Elem q = r / nr;
    t = std::exchange(nt, t - q * nt);
    r = std::exchange(nr, r - q * nr);
  }
  return (t % p + p) % p;
}

void trim(MPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

MPoly add(const MPoly& a, const MPoly& b, Elem p) {
  MPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem s = (i < a.size() ? a[i] : 0) + (i < b.size() ? b[i] : 0);
    r[i] = s % p;
  }
  trim(r);
  return r;
}

MPoly sub(const MPoly& a, const MPoly& b, Elem p) {
  MPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    Elem s = (i < a.size() ? a[i] : 0) - (i < b.size() ? b[i] : 0);
    r[i] = ((s % p) + p) % p;
  }
  trim(r);
  return r;
}

MPoly mul(const MPoly& a, const MPoly& b, Elem p) {
  if (a.empty() || b.empty()) return {};
  MPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

MPoly scale(const MPoly& a, Elem s, Elem p) {
  MPoly r(a);
  for (auto& v : r) v = v * s % p;
  trim(r);
  return r;
}

std::pair<MPoly, MPoly> divmod(const MPoly& a, const MPoly& b, Elem p) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  if (a.size() < b.size()) return {{}, a};
  MPoly r(a);
  MPoly q(a.size() - b.size() + 1, 0);
  Elem inv = inverse(b.back(), p);
  int db = degree(b);
  for (int i = degree(a); i >= db; --i) {
    Elem f = r[i] * inv % p;
    if (f == 0) continue;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] = ((r[i - db + j] - f * b[j]) % p + p) % p;
  }
  r.resize(db);
  trim(r);
  trim(q);
  return {q, r};
}

MPoly rem(const MPoly& a, const MPoly& b, Elem p) { return divmod(a, b, p).second; }

MPoly monic(const MPoly& a, Elem p) {
  if (a.empty()) return a;
  return scale(a, inverse(a.back(), p), p);
}

MPoly gcd(MPoly a, MPoly b, Elem p) {
  while (!b.empty()) {
    MPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, p);
}

std::tuple<MPoly, MPoly, MPoly> xgcd(const MPoly& a, const MPoly& b, Elem p) {
  MPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, p);
    r0 = std::exchange(r1, r);
    s0 = std::exchange(s1, sub(s0, mul(q, s1, p), p));
    t0 = std::exchange(t1, sub(t0, mul(q, t1, p), p));
  }
  if (r0.empty()) return {r0, s0, t0};
  Elem inv = inverse(r0.back(), p);
  return {scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)};
}

MPoly powmod(MPoly a, Integer k, const MPoly& m, Elem p) {
  MPoly r = rem(MPoly{1}, m, p);
  a = rem(a, m, p);
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = rem(mul(r, a, p), m, p);
    k >>= 1;
    if (k > 0) a = rem(mul(a, a, p), m, p);
  }
  return r;
}

MPoly derivative(const MPoly& a, Elem p) {
  if (a.size() <= 1) return {};
  MPoly d(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = static_cast<Elem>(i % p) * a[i] % p;
  trim(d);
  return d;
}

bool is_squarefree(const MPoly& a, Elem p) {
  if (degree(a) <= 0) return true;
  return degree(gcd(a, derivative(a, p), p)) == 0;
}

namespace {

std::vector<std::pair<MPoly, int>> squarefree(const MPoly& f, Elem p) {
  std::vector<std::pair<MPoly, int>> out;
  if (degree(f) <= 0) return out;
  MPoly fp = derivative(f, p);
  MPoly c = gcd(f, fp, p);
  MPoly w = divmod(monic(f, p), c, p).first;
  int i = 1;
  while (degree(w) > 0) {
    MPoly y = gcd(w, c, p);
    MPoly fac = divmod(w, y, p).first;
    if (degree(fac) > 0) out.emplace_back(monic(fac, p), i);
    w = y;
    c = divmod(c, y, p).first;
    ++i;
  }
  if (degree(c) > 0) {
    MPoly root;
    for (std::size_t k = 0; k < c.size(); k += static_cast<std::size_t>(p)) root.push_back(c[k]);
    for (auto& [g, m] : squarefree(root, p)) out.emplace_back(g, m * static_cast<int>(p));
  }
  return out;
}

void equal_degree(const MPoly& g, int d, Elem p, std::mt19937_64& rng, std::vector<MPoly>& out) {
  if (degree(g) == d) {
    out.push_back(monic(g, p));
    return;
  }
  std::uniform_int_distribution<Elem> dist(0, p - 1);
  Integer pd = ipow(Integer(p), d);
  for (;;) {
    MPoly a(degree(g));
    for (auto& v : a) v = dist(rng);
    trim(a);
    if (degree(a) <= 0) continue;
    MPoly b;
    if (p == 2) {
      MPoly t = a, acc = a;
      for (int k = 1; k < d; ++k) {
        t = rem(mul(t, t, p), g, p);
        acc = add(acc, t, p);
      }
      b = acc;
    } else {
      b = sub(powmod(a, (pd - 1) / 2, g, p), MPoly{1}, p);
    }
    MPoly h = gcd(g, b, p);
    if (degree(h) > 0 && degree(h) < degree(g)) {
      equal_degree(h, d, p, rng, out);
      equal_degree(divmod(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

std::vector<MPoly> factor_squarefree(MPoly f, Elem p, std::mt19937_64& rng) {
  std::vector<MPoly> out;
  f = monic(f, p);
  MPoly x{0, 1};
  MPoly h = x;
  for (int d = 1; 2 * d <= degree(f); ++d) {
    h = powmod(h, Integer(p), f, p);
    MPoly g = gcd(f, sub(h, x, p), p);
    if (degree(g) > 0) {
      equal_degree(g, d, p, rng, out);
      f = divmod(f, g, p).first;
      h = rem(h, f, p);
    }
  }
  if (degree(f) > 0) out.push_back(monic(f, p));
  return out;
}

}  // namespace

std::vector<std::pair<MPoly, int>> factor(const MPoly& a, Elem p) {
  std::mt19937_64 rng(0x6b33u);
  std::vector<std::pair<MPoly, int>> out;
  for (auto& [g, m] : squarefree(a, p))
    for (auto& h : factor_squarefree(g, p, rng)) out.emplace_back(h, m);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first.size() != y.first.size()) return x.first.size() < y.first.size();
    if (x.first != y.first) return x.first < y.first;
    return x.second < y.second;
  });
  std::vector<std::pair<MPoly, int>> merged;
  for (auto& e : out) {
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(e);
  }
  return merged;
}

bool is_irreducible(const MPoly& a, Elem p) {
  if (degree(a) <= 0) return false;
  auto f = factor(a, p);
  return f.size() == 1 && f[0].second == 1;
}

}  // namespace k3trc::modp

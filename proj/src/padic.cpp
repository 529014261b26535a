#include "k3trc/padic.hpp"

#include <algorithm>
#include <numeric>

#include "k3trc/exactnum.hpp"
#include "k3trc/linalg.hpp"
#include "k3trc/modp.hpp"

namespace k3trc {

namespace {

unsigned long exponent_of(const Integer& q, const Integer& p) {
  auto v = valuation(q, p);
  if (!v || ipow(p, static_cast<unsigned long>(*v)) != q || *v < 1)
    throw std::domain_error("q is not a positive power of p");
  return static_cast<unsigned long>(*v);
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

int NewtonPolygon::degree() const {
  int d = 0;
  for (const auto& s : segments) d += s.multiplicity;
  return d;
}

int NewtonPolygon::multiplicity(const Rational& slope) const {
  for (const auto& s : segments)
    if (s.slope == slope) return s.multiplicity;
  return 0;
}

std::vector<int> NewtonPolygon::vertices() const {
  std::vector<int> v{0};
  for (const auto& s : segments) v.push_back(v.back() + s.multiplicity);
  return v;
}

NewtonPolygon newton_polygon(const Poly& P, const Integer& p, const Integer& q) {
  if (P.is_zero()) throw std::domain_error("newton_polygon: zero polynomial");
  if (P[0] == 0) throw std::domain_error("newton_polygon: requires P(0) != 0");
  NewtonPolygon out{p, q, exponent_of(q, p), {}};
  std::vector<std::pair<long, long>> pts;
  for (int i = 0; i <= P.degree(); ++i)
    if (P[i] != 0) pts.emplace_back(i, *valuation(P[i], p));
  std::vector<std::pair<long, long>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // Drop the middle point unless it lies strictly below the chord.
      if ((y2 - y1) * (pt.first - x1) >= (pt.second - y1) * (x2 - x1))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  for (std::size_t i = 1; i < hull.size(); ++i) {
    long dx = hull[i].first - hull[i - 1].first;
    long dy = hull[i].second - hull[i - 1].second;
    out.segments.push_back({make_rational(dy, dx * static_cast<long>(out.a)), static_cast<int>(dx)});
  }
  return out;
}

Rational truncate_padic(const Rational& x, const Integer& p, long N) {
  if (x == 0) return 0;
  long v = *valuation(x, p);
  if (v >= N) return 0;
  Rational u = x / rpow(Rational(p), v);
  Integer M = ipow(p, static_cast<unsigned long>(N - v));
  Integer inv;
  Integer den = u.get_den();
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
  Integer r = symmetric_mod(u.get_num() * inv, M);
  return Rational(r) * rpow(Rational(p), v);
}

Poly truncate_padic(const Poly& f, const Integer& p, long N) {
  std::vector<Rational> c;
  for (const auto& x : f.coefficients()) c.push_back(truncate_padic(x, p, N));
  return Poly(std::move(c));
}

long min_valuation(const Poly& f, const Integer& p) {
  long m = std::numeric_limits<long>::max();
  for (const auto& x : f.coefficients())
    if (x != 0) m = std::min(m, *valuation(x, p));
  return m;
}

Rational discriminant(const Poly& f) {
  int n = f.degree();
  if (n < 1) throw std::domain_error("discriminant of a constant");
  if (n == 1) return 1;
  Poly g = f.derivative();
  int m = g.degree();
  int N = n + m;
  QMatrix S = QMatrix::Zero(N, N);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i) S(r, r + i) = f[n - i];
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i) S(m + r, r + i) = g[m - i];
  Rational res = determinant(S);
  Rational d = res / f.leading();
  if ((n * (n - 1) / 2) % 2) d = -d;
  return d;
}

long discriminant_valuation(const Poly& f, const Integer& p) {
  Rational d = discriminant(f);
  if (d == 0) throw std::domain_error("discriminant_valuation: polynomial is not squarefree");
  return *valuation(d, p);
}

Poly PadicFactor::approximation() const {
  Integer M = ipow(p, static_cast<unsigned long>(precision));
  Rational scale = rpow(Rational(p), -shift);
  std::vector<Rational> c;
  for (const auto& r : residues) c.push_back(Rational(symmetric_mod(r, M)) * scale);
  return Poly(std::move(c));
}

namespace {

struct SplitFailure {};

long shift_of(const Poly& f, const Integer& p) { return std::max(0L, -min_valuation(f, p)); }

// F = G H with deg G = k holding the roots left of the vertex at k; G(0) = H(0) = 1.
std::pair<Poly, Poly> split_at_vertex(const Poly& F, int k, const Integer& p, long N) {
  int n = F.degree();
  Rational ck = F[k];
  std::vector<Rational> g(k + 1), h(n - k + 1);
  for (int i = 0; i <= k; ++i) g[i] = F[i];
  h[0] = 1;
  for (int j = 1; j <= n - k; ++j) h[j] = F[k + j] / ck;
  Poly G(g), H(h);
  long sG = shift_of(G, p), sH = shift_of(H, p);
  long target = N - sG - sH;
  long last = std::numeric_limits<long>::min();
  int stalls = 0;
  for (int iter = 0; iter < 80; ++iter) {
    G = truncate_padic(G, p, N - sG);
    H = truncate_padic(H, p, N - sH);
    Poly R = F - G * H;
    if (R.is_zero()) return {G, H};
    long v = min_valuation(R, p);
    if (v >= target) return {G, H};
    if (v <= last) {
      if (++stalls >= 3) throw SplitFailure{};
    } else {
      stalls = 0;
      last = v;
    }
    QMatrix A = QMatrix::Zero(n, n + 1);
    for (int r = 1; r <= n; ++r) {
      for (int i = 1; i <= k; ++i) A(r - 1, i - 1) = H[r - i];
      for (int j = 1; j <= n - k; ++j) A(r - 1, k + j - 1) = G[r - j];
      A(r - 1, n) = R[r];
    }
    auto piv = rref_in_place(A);
    if (static_cast<int>(piv.size()) < n || piv.back() == n) throw SplitFailure{};
    std::vector<Rational> dg(k + 1, Rational(0)), dh(n - k + 1, Rational(0));
    for (int i = 1; i <= k; ++i) dg[i] = A(i - 1, n);
    for (int j = 1; j <= n - k; ++j) dh[j] = A(k + j - 1, n);
    G += Poly(dg);
    H += Poly(dh);
  }
  throw SplitFailure{};
}

PadicFactor make_factor(const Poly& G, const Integer& p, long N, const Rational& slope) {
  PadicFactor f;
  f.p = p;
  f.precision = N;
  f.shift = shift_of(G, p);
  f.slope = slope;
  Integer M = ipow(p, static_cast<unsigned long>(N));
  Rational scale = rpow(Rational(p), f.shift);
  for (const auto& c : G.coefficients()) {
    Rational x = c * scale;
    Integer inv;
    Integer den = x.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
    Integer r;
    Integer t = x.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), t.get_mpz_t(), M.get_mpz_t());
    f.residues.push_back(r);
  }
  return f;
}

std::vector<Poly> split_all(const Poly& P, const std::vector<int>& vertices, const Integer& p, long N) {
  std::vector<Poly> out;
  Poly rest = P * (Rational(1) / P[0]);
  for (std::size_t i = 1; i + 1 < vertices.size(); ++i) {
    auto [G, H] = split_at_vertex(rest, vertices[i] - vertices[i - 1], p, N);
    out.push_back(G);
    rest = H;
  }
  out.push_back(rest);
  return out;
}

template <class Fn>
auto with_escalation(int degree, const PrecisionPolicy& policy, Fn fn) {
  for (long N = std::max(1L, policy.per_degree * degree); N <= policy.ceiling; N *= 2) {
    try {
      return fn(N);
    } catch (const SplitFailure&) {
    }
  }
  throw PrecisionExhausted("slope separation failed below the precision ceiling " + std::to_string(policy.ceiling));
}

}  // namespace

std::vector<PadicFactor> slope_decomposition(const Poly& P, const Integer& p, const Integer& q,
                                             const PrecisionPolicy& policy) {
  NewtonPolygon np = newton_polygon(P, p, q);
  return with_escalation(P.degree(), policy, [&](long N) {
    auto parts = split_all(P, np.vertices(), p, N);
    std::vector<PadicFactor> out;
    for (std::size_t i = 0; i < parts.size(); ++i) out.push_back(make_factor(parts[i], p, N, np.segments[i].slope));
    return out;
  });
}

PadicFactor slope_factor(const Poly& P, const Integer& p, const Integer& q, const Rational& slope,
                         const PrecisionPolicy& policy) {
  NewtonPolygon np = newton_polygon(P, p, q);
  auto verts = np.vertices();
  std::size_t idx = np.segments.size();
  for (std::size_t i = 0; i < np.segments.size(); ++i)
    if (np.segments[i].slope == slope) idx = i;
  if (idx == np.segments.size()) throw std::domain_error("slope_factor: slope does not occur in the Newton polygon");
  return with_escalation(P.degree(), policy, [&](long N) {
    Poly rest = P * (Rational(1) / P[0]);
    if (verts[idx] > 0) rest = split_at_vertex(rest, verts[idx], p, N).second;
    if (verts[idx + 1] < P.degree()) rest = split_at_vertex(rest, verts[idx + 1] - verts[idx], p, N).first;
    return make_factor(truncate_padic(rest, p, N - shift_of(rest, p)), p, N, slope);
  });
}

// ---------------------------------------------------------------------------
// Local irreducibility.

namespace {

struct RootValuations {
  std::vector<std::pair<Rational, int>> finite;  // nu_p of roots, counts
  int zero_roots = 0;
};

RootValuations root_valuations(const Poly& monic_chi, const Integer& p) {
  RootValuations rv;
  int z = 0;
  while (monic_chi[z] == 0) ++z;
  rv.zero_roots = z;
  std::vector<Rational> rest(monic_chi.coefficients().begin() + z, monic_chi.coefficients().end());
  Poly r(rest);
  if (r.degree() == 0) return rv;
  Poly rev = r.reversed();
  rev = rev * (Rational(1) / rev[0]);
  for (const auto& s : newton_polygon(rev, p, p).segments) rv.finite.emplace_back(s.slope, s.multiplicity);
  return rv;
}

// Arithmetic in A = Q[x]/(f), coordinates truncated at absolute precision N.
class Algebra {
 public:
  Algebra(Poly f, Integer p, long N) : f_(std::move(f)), p_(std::move(p)), N_(N) {}

  int n() const { return f_.degree(); }
  Poly reduce(const Poly& a) const { return truncate_padic(a % f_, p_, N_); }
  Poly mul(const Poly& a, const Poly& b) const { return reduce(a * b); }
  Poly scalar(const Rational& s) const { return Poly::constant(s); }

  Poly charpoly_of(const Poly& z) const {
    QMatrix M = QMatrix::Zero(n(), n());
    Poly col = reduce(z);
    for (int j = 0; j < n(); ++j) {
      for (int i = 0; i < n(); ++i) M(i, j) = col[i];
      col = (col * Poly::x()) % f_;
    }
    return charpoly(M);
  }

  // Cayley-Hamilton inverse; requires a nonzero norm.
  Poly inverse(const Poly& z, const Poly& chi) const {
    if (chi[0] == 0) throw std::domain_error("zero divisor");
    Poly acc;
    for (int i = chi.degree(); i >= 1; --i) acc = (acc * z + Poly::constant(chi[i])) % f_;
    return reduce(acc * (Rational(-1) / chi[0]));
  }

  Poly power(const Poly& z, long e) const {
    if (e < 0) return power(inverse(z, charpoly_of(z)), -e);
    Poly r = scalar(1), b = reduce(z);
    while (e) {
      if (e & 1) r = mul(r, b);
      e >>= 1;
      if (e) b = mul(b, b);
    }
    return r;
  }

 private:
  Poly f_;
  Integer p_;
  long N_;
};

enum class Verdict { Irreducible, Reducible, Undecided };

struct Valued {
  Poly z;
  Rational v;
};

Poly uniformizer(const Algebra& A, const std::vector<Valued>& elems, long E, const Integer& p) {
  // Find x_k, y with sum x_k n_k + y E = 1 where v_k = n_k / E.
  long g = E;
  std::vector<long> coef(elems.size(), 0);
  long yc = 1;
  for (std::size_t k = 0; k < elems.size(); ++k) {
    Rational nk = elems[k].v * E;
    long n = nk.get_num().get_si();
    // Extended gcd of (g, n): s g + t n = g'.
    long a = g, b = n, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (b != 0) {
      long qq = a / b;
      a = std::exchange(b, a - qq * b);
      s0 = std::exchange(s1, s0 - qq * s1);
      t0 = std::exchange(t1, t0 - qq * t1);
    }
    if (a < 0) {
      a = -a;
      s0 = -s0;
      t0 = -t0;
    }
    for (std::size_t j = 0; j < k; ++j) coef[j] *= s0;
    yc *= s0;
    coef[k] = t0;
    g = a;
  }
  if (g != 1) throw std::logic_error("uniformizer: gcd is not 1");
  Poly pi = A.scalar(rpow(Rational(p), yc));
  for (std::size_t k = 0; k < elems.size(); ++k)
    if (coef[k] != 0) pi = A.mul(pi, A.power(elems[k].z, coef[k]));
  return pi;
}

modp::MPoly reduce_mod_p(const Poly& f, modp::Elem p) {
  modp::MPoly r;
  for (const auto& c : f.coefficients()) r.push_back(modp::reduce(c, p));
  modp::trim(r);
  return r;
}

Poly lift(const modp::MPoly& a) {
  std::vector<Rational> c;
  for (auto v : a) c.emplace_back(static_cast<long>(v));
  return Poly(std::move(c));
}

Verdict tower(const Poly& f, const Integer& p, long N) {
  int n = f.degree();
  Algebra A(f, p, N);
  modp::Elem pe = p.get_si();
  auto rv = root_valuations(f, p);
  if (rv.zero_roots > 0 || rv.finite.size() > 1) return Verdict::Reducible;
  Rational v0 = rv.finite[0].first;
  long E = v0.get_den().get_si(), F = 1;
  if (E == n) return Verdict::Irreducible;
  std::vector<Valued> elems{{Poly::x(), v0}};
  Poly w = A.mul(A.power(Poly::x(), E), A.scalar(rpow(Rational(p), -v0.get_num().get_si())));
  for (int depth = 0; depth < 8; ++depth) {
    Poly chi = A.charpoly_of(w);
    auto fac = modp::factor(reduce_mod_p(chi, pe), pe);
    if (fac.size() > 1) return Verdict::Reducible;
    F = std::lcm(F, static_cast<long>(modp::degree(fac[0].first)));
    if (E * F == n) return Verdict::Irreducible;
    Poly psi = lift(fac[0].first);
    Poly delta = A.reduce(psi.compose(w));
    Poly chid = A.charpoly_of(delta);
    auto rd = root_valuations(chid, p);
    if (rd.zero_roots == n) return Verdict::Undecided;
    if (rd.zero_roots > 0 || rd.finite.size() > 1) return Verdict::Reducible;
    Rational vd = rd.finite[0].first;
    if (vd.get_den() > n) return Verdict::Undecided;
    E = std::lcm(E, vd.get_den().get_si());
    if (E * F == n) return Verdict::Irreducible;
    if (E * F > n) return Verdict::Undecided;
    elems.push_back({delta, vd});
    Poly pi = uniformizer(A, elems, E, p);
    Rational c = vd * E;
    w = A.mul(delta, A.power(pi, -c.get_num().get_si()));
  }
  return Verdict::Undecided;
}

// Integer polynomial helpers modulo m for the certified divisor search.
using ZPoly = std::vector<Integer>;

bool divides_mod(const ZPoly& f, const ZPoly& g, const Integer& m) {
  ZPoly r = f;
  int dg = static_cast<int>(g.size()) - 1;
  for (int i = static_cast<int>(r.size()) - 1; i >= dg; --i) {
    Integer c = r[i];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) r[i - dg + j] -= c * g[j];
  }
  for (int i = 0; i < dg; ++i) {
    Integer c = r[i];
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c != 0) return false;
  }
  return true;
}

struct Budget {
  long left;
};

bool search(const ZPoly& f, ZPoly g, int level, int target, const Integer& p, Budget& budget) {
  if (level == target) return true;
  if (--budget.left < 0) throw PrecisionExhausted("local factor search exceeded its budget");
  int m = static_cast<int>(g.size()) - 1;
  Integer pl = ipow(p, level), next = pl * p;
  long pe = p.get_si();
  long combos = 1;
  for (int i = 0; i < m; ++i) combos *= pe;
  for (long c = 0; c < combos; ++c) {
    ZPoly h = g;
    long t = c;
    for (int i = 0; i < m; ++i) {
      h[i] += pl * (t % pe);
      t /= pe;
    }
    if (divides_mod(f, h, next) && search(f, h, level + 1, target, p, budget)) return true;
  }
  return false;
}

// Certified: f reducible over Z_p iff a monic divisor of degree <= n/2 exists mod p^{D+1}.
bool certified_reducible(const Poly& f, const Integer& p, long D) {
  ZPoly fz;
  for (const auto& c : f.coefficients()) {
    Integer M = ipow(p, D + 2);
    Integer inv, den = c.get_den();
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), M.get_mpz_t());
    fz.push_back(c.get_num() * inv);
  }
  modp::Elem pe = p.get_si();
  modp::MPoly fbar;
  for (const auto& c : fz) fbar.push_back(modp::reduce(c, pe));
  modp::trim(fbar);
  auto fac = modp::factor(fbar, pe);
  int n = f.degree();
  Budget budget{400000};
  // Enumerate monic divisors of f mod p as products of the irreducible factors.
  std::vector<int> exps(fac.size(), 0);
  for (;;) {
    std::size_t i = 0;
    while (i < exps.size() && exps[i] == fac[i].second) exps[i++] = 0;
    if (i == exps.size()) break;
    ++exps[i];
    modp::MPoly g{1};
    for (std::size_t j = 0; j < fac.size(); ++j)
      for (int e = 0; e < exps[j]; ++e) g = modp::mul(g, fac[j].first, pe);
    int m = modp::degree(g);
    if (m < 1 || 2 * m > n) continue;
    ZPoly gz;
    for (auto v : g) gz.emplace_back(static_cast<long>(v));
    if (search(fz, gz, 1, static_cast<int>(D + 1), p, budget)) return true;
  }
  return false;
}

}  // namespace

bool is_irreducible_local(const Poly& P, const Integer& p) {
  int n = P.degree();
  if (n < 1) throw std::domain_error("is_irreducible_local: degree must be at least 1");
  if (n > 10) throw UnsupportedDegree("is_irreducible_local: degree above 10 is not supported");
  if (n == 1) return true;
  if (P[0] == 0) return false;
  Poly f = P.reversed() * (Rational(1) / P[0]);
  if (gcd(f, f.derivative()).degree() > 0) return false;
  // Make the roots integral: y = p^s x.
  Rational lo = 0;
  for (const auto& [v, c] : root_valuations(f, p).finite) lo = std::min(lo, v);
  long s = ceil_div(-lo.get_num(), lo.get_den()).get_si();
  if (s > 0) {
    Rational ps = rpow(Rational(p), s);
    f = f.scaled(Rational(1) / ps) * rpow(ps, n);
  }
  long D = discriminant_valuation(f, p);
  long N = std::max(64L, 4 * D + 32);
  f = truncate_padic(f, p, N);
  Verdict v = tower(f, p, N);
  if (v == Verdict::Irreducible) return true;
  if (v == Verdict::Reducible) return false;
  return !certified_reducible(f, p, D);
}

}  // namespace k3trc

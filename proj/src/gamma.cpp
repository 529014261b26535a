#include "k3trc/gamma.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "k3trc/exactnum.hpp"
#include "k3trc/lll.hpp"

namespace k3trc {

const char* to_string(Certification c) { return c == Certification::Certified ? "certified" : "heuristic"; }

const char* to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Neat:
      return "Neat";
    case VerdictKind::NotNeat:
      return "NotNeat";
    case VerdictKind::Unknown:
      return "Unknown";
  }
  return "?";
}

const char* to_string(Truth t) {
  switch (t) {
    case Truth::CertifiedTrue:
      return "certified-true";
    case Truth::CertifiedFalse:
      return "certified-false";
    case Truth::Undecided:
      return "undecided";
  }
  return "?";
}

EffortPolicy EffortPolicy::named(const std::string& level) {
  EffortPolicy e;
  if (level == "low") {
    e.max_bits = 1024;
    e.exact_max_d = 2;
  } else if (level == "high") {
    e.max_bits = 16384;
    e.max_group = 48;
  } else if (level != "default") {
    throw std::invalid_argument("unknown effort level " + level);
  }
  return e;
}

namespace {

struct Admissible {
  Poly Q;
  int d = 0;
  int e = 1;
  std::optional<int> h;
};

Admissible admissible(const WeilPolynomial& L) {
  auto r = validate_k3_type(L);
  if (!r.overall) {
    const Condition* f = r.first_failure();
    throw NotAdmissible("not admissible: " + f->name + " (" + f->detail + ")");
  }
  if (L.degree() == 0) return {Poly::constant(1), 0, 1, std::nullopt};
  return {*r.Q, r.Q->degree() / 2, r.e, r.h};
}

Real two_pi() { return 2 * acos(Real(-1)); }

// Fractional phase of z in [0, 1).
Real phase(const Complex& z) {
  Real t = z.arg() / two_pi();
  if (t < 0) t += 1;
  return t;
}

// Largest n with phi(n) <= bound.
unsigned long order_bound(unsigned long bound) {
  unsigned long best = 1;
  for (unsigned long n = 1; n <= 6 * bound * bound + 6; ++n)
    if (euler_phi(n) <= bound) best = n;
  return best;
}

// Smallest n <= nmax with n t within tol of an integer.
std::optional<unsigned long> root_of_unity_order(const Real& t, unsigned long nmax, const Real& tol) {
  for (unsigned long n = 1; n <= nmax; ++n) {
    Real x = t * n;
    if (abs(x - round(x)) < tol) return n;
  }
  return std::nullopt;
}

double nearest_rational_distance(const Real& t, unsigned long nmax) {
  Real best(1);
  for (unsigned long n = 1; n <= nmax; ++n) {
    Real x = t * n;
    Real dist = abs(x - round(x)) / n;
    if (dist < best) best = dist;
  }
  return best.convert_to<double>();
}

// g-vector (over alpha_1..alpha_d) of the root with label k.
std::vector<long> gvec(int k, int d) {
  std::vector<long> g(d, 0);
  if (k < d)
    g[k] = 1;
  else
    g[k - d] = -1;
  return g;
}

// f over 2d labels with nonnegative entries and the same product as g.
std::vector<long> f_from_g(const std::vector<long>& g) {
  int d = static_cast<int>(g.size());
  std::vector<long> f(2 * d, 0);
  for (int j = 0; j < d; ++j) {
    if (g[j] > 0) f[j] = g[j];
    if (g[j] < 0) f[j + d] = -g[j];
  }
  return f;
}

std::vector<long> g_from_f(const std::vector<long>& f) {
  int d = static_cast<int>(f.size()) / 2;
  std::vector<long> g(d);
  for (int j = 0; j < d; ++j) g[j] = f[j] - f[j + d];
  return g;
}

std::vector<long> scaled(std::vector<long> v, long n) {
  for (auto& x : v) x *= n;
  return v;
}

QMatrix rows_to_matrix(const std::vector<std::vector<long>>& rows, int d) {
  QMatrix m(static_cast<int>(rows.size()), d);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < d; ++j) m(i, j) = rows[i][j];
  return m;
}

bool in_span(const std::vector<std::vector<long>>& basis, const std::vector<long>& g) {
  int d = static_cast<int>(g.size());
  auto rows = basis;
  int r0 = basis.empty() ? 0 : rank(rows_to_matrix(rows, d));
  rows.push_back(g);
  return rank(rows_to_matrix(rows, d)) == r0;
}

// Primitive integer vector along a rational vector.
std::vector<long> primitive(const QVector& v) {
  Integer l = 1;
  for (int i = 0; i < v.size(); ++i) l = lcm(l, Integer(v(i).get_den()));
  std::vector<Integer> w(v.size());
  Integer g = 0;
  for (int i = 0; i < v.size(); ++i) {
    w[i] = Integer(v(i) * l);
    g = gcd(g, w[i]);
  }
  std::vector<long> out(v.size());
  int first = -1;
  for (int i = 0; i < v.size(); ++i) {
    out[i] = Integer(w[i] / g).get_si();
    if (first < 0 && out[i] != 0) first = i;
  }
  if (first >= 0 && out[first] < 0)
    for (auto& x : out) x = -x;
  return out;
}

Complex root_product(const std::vector<Complex>& roots, const std::vector<long>& g) {
  Complex z(Real(1));
  for (std::size_t j = 0; j < g.size(); ++j)
    if (g[j]) z *= cpow(roots[j], g[j]);
  return z;
}

// Scales a certified relation so that the product is exactly 1.
std::vector<long> exact_one(const std::vector<Complex>& roots, const std::vector<long>& g, unsigned long nmax) {
  Real t = phase(root_product(roots, g));
  Real tol = pow(Real(2), -static_cast<long>(Real::default_precision() * 3.32 / 4));
  auto n = root_of_unity_order(t, nmax, tol);
  if (!n) throw std::logic_error("certified relation without a detectable root-of-unity order");
  return scaled(g, static_cast<long>(*n));
}

// Signed permutations of the d pairs, as label images of alpha_1..alpha_d.
std::vector<std::vector<int>> hyperoctahedral(int d) {
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    for (int s = 0; s < (1 << d); ++s) {
      std::vector<int> img(d);
      for (int j = 0; j < d; ++j) img[j] = perm[j] + ((s >> j) & 1 ? d : 0);
      out.push_back(img);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

long bit_length(const Poly& p) {
  long b = 0;
  for (const auto& c : p.coefficients()) b = std::max<long>(b, static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2)));
  return b;
}

struct ExactLayer {
  std::vector<std::vector<long>> rows;  // h * nu_q(sigma alpha_j), j <= d
  std::size_t group_order = 0;
  std::vector<Complex> roots;
};

// Rows of the valuation matrix over the Galois closure, or nullopt when the group is
// larger than allowed or the precision ceiling is reached.
std::optional<ExactLayer> exact_layer(const WeilPolynomial& L, const Admissible& A, const EffortPolicy& effort) {
  const int d = A.d;
  const int h = *A.h;
  auto W = hyperoctahedral(d);
  std::mt19937_64 rng(effort.seed);
  for (unsigned bits = effort.start_bits; bits <= effort.max_bits; bits *= 2) {
    PrecisionScope scope(bits);
    auto roots = labeled_roots(A.Q);
    Real qr = to_real(Rational(L.q));
    Real tiny = pow(Real(2), -static_cast<long>(bits / 4));

    // Generic linear resolvent theta = sum c_j alpha_j with distinct conjugates.
    std::vector<long> c(d);
    std::vector<Complex> z;
    for (int attempt = 0; attempt < 16; ++attempt) {
      for (int j = 0; j < d; ++j) c[j] = attempt == 0 ? j + 1 : static_cast<long>(rng() % (4 * d + 4)) + 1;
      z.clear();
      for (const auto& img : W) {
        Complex s;
        for (int j = 0; j < d; ++j) s += Complex(Real(c[j])) * roots[img[j]];
        z.push_back(Complex(qr) * s);
      }
      Real sep(1e9);
      for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t k = i + 1; k < z.size(); ++k) sep = std::min(sep, (z[i] - z[k]).abs());
      if (sep > Real(1e-6)) break;
      z.clear();
    }
    if (z.empty()) continue;
    auto R = round_product(z, bits / 4);
    if (!R || bit_length(*R) + 64 > static_cast<long>(bits)) continue;

    // The Galois orbit of theta is the irreducible factor of R vanishing at it.
    auto fac = factor_rational(*R);
    std::vector<int> owner(z.size(), -1);
    std::vector<int> count(fac.factors.size(), 0);
    bool ok = true;
    for (std::size_t i = 0; i < z.size() && ok; ++i) {
      Real best(-1);
      for (std::size_t k = 0; k < fac.factors.size(); ++k) {
        const Poly& f = fac.factors[k].first;
        Real v = eval(f, z[i]).abs() / eval(f.derivative(), z[i]).abs();
        if (best < 0 || v < best) {
          best = v;
          owner[i] = static_cast<int>(k);
        }
      }
      ok = best < tiny;
      if (ok) ++count[owner[i]];
    }
    if (!ok) continue;
    for (std::size_t k = 0; k < fac.factors.size(); ++k)
      if (count[k] != fac.factors[k].first.degree() * fac.factors[k].second) ok = false;
    if (!ok) continue;
    std::vector<std::size_t> G;
    for (std::size_t i = 0; i < z.size(); ++i)
      if (owner[i] == owner[0]) G.push_back(i);
    if (G.size() > effort.max_group) return std::nullopt;

    // Pi = prod alpha_j^(3^j); its conjugates over G decode into valuation rows.
    long weight = 0;
    for (int j = 0, w = 1; j < d; ++j, w *= 3) weight += w;
    Complex scale = cpow(Complex(qr), weight);
    std::vector<Complex> pis;
    for (std::size_t idx : G) {
      Complex pi = scale;
      long w = 1;
      for (int j = 0; j < d; ++j, w *= 3) pi *= cpow(roots[W[idx][j]], w);
      pis.push_back(pi);
    }
    auto C = round_product(pis, bits / 4);
    if (!C || bit_length(*C) + 64 > static_cast<long>(bits)) continue;
    auto np = newton_polygon(C->reversed(), L.p, L.q);
    ExactLayer out;
    out.group_order = G.size();
    for (const auto& seg : np.segments) {
      Rational t = (seg.slope - weight) * h;
      if (t.get_den() != 1) throw std::logic_error("valuation of a resolvent conjugate is not in (1/h)Z");
      long v = t.get_num().get_si();
      std::vector<long> row(d);
      for (int j = 0; j < d; ++j) {
        long r = ((v % 3) + 3) % 3;
        row[j] = r == 2 ? -1 : r;
        v = (v - row[j]) / 3;
      }
      if (v != 0) throw std::logic_error("valuation row out of range");
      for (int k = 0; k < seg.multiplicity; ++k) out.rows.push_back(row);
    }
    out.roots = roots;
    return out;
  }
  return std::nullopt;
}

unsigned long lcm_ul(unsigned long a, unsigned long b) { return a / std::gcd(a, b) * b; }

}  // namespace

std::vector<Complex> labeled_roots(const Poly& Q) {
  auto all = complex_roots(Q.reversed());
  std::vector<Complex> upper;
  for (auto& z : all)
    if (z.im > 0) upper.push_back(z);
  if (2 * upper.size() != all.size()) throw std::logic_error("roots are not in conjugate pairs off the real axis");
  std::sort(upper.begin(), upper.end(), [](const Complex& a, const Complex& b) { return a.arg() < b.arg(); });
  std::vector<Complex> out = upper;
  for (auto& z : upper) out.push_back(z.conj());
  return out;
}

StableBaseChange stable_base_change(const WeilPolynomial& L, const EffortPolicy& effort) {
  Admissible A = admissible(L);
  StableBaseChange out;
  if (A.d == 0) return out;
  const int d = A.d, n = 2 * d;
  unsigned long nmax = order_bound(static_cast<unsigned long>(n * (n - 1)));
  for (unsigned bits = effort.start_bits; bits <= effort.max_bits; bits *= 2) {
    PrecisionScope scope(bits);
    auto roots = labeled_roots(A.Q);
    Real tol = pow(Real(2), -static_cast<long>(bits / 3));
    std::vector<int> cls(n);
    std::iota(cls.begin(), cls.end(), 0);
    std::vector<std::pair<int, unsigned long>> link(n, {-1, 1});
    unsigned long m = 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) {
        if (cls[j] != j) continue;
        auto ord = root_of_unity_order(phase(roots[i] / roots[j]), nmax, tol);
        if (!ord) continue;
        cls[i] = j;
        link[i] = {j, *ord};
        m = lcm_ul(m, *ord);
        break;
      }
    int classes = 0;
    for (int i = 0; i < n; ++i) classes += cls[i] == i;
    auto Lm = base_change(L, static_cast<unsigned>(m));
    auto fac = factor_rational(Lm.poly);
    if (fac.factors.size() != 1) throw std::logic_error("base change is not a power of an irreducible");
    int dm = fac.factors[0].first.degree() / 2;
    if (2 * dm != classes) continue;
    out.m = m;
    out.d = dm;
    std::vector<std::vector<long>> span;
    for (int i = 0; i < n; ++i) {
      if (link[i].first < 0) continue;
      auto gi = gvec(i, d), gj = gvec(link[i].first, d);
      std::vector<long> g(d);
      for (int k = 0; k < d; ++k) g[k] = gi[k] - gj[k];
      if (in_span(span, g)) continue;
      span.push_back(g);
      out.merges.push_back({f_from_g(scaled(g, static_cast<long>(link[i].second))), Certification::Certified});
    }
    return out;
  }
  throw PrecisionExhausted("stable base change: numeric classes never matched the exact factorization");
}

GammaRankReport gamma_rank(const WeilPolynomial& L, const EffortPolicy& effort) {
  Admissible A = admissible(L);
  GammaRankReport r;
  r.d = A.d;
  if (A.d == 0) {
    r.method = "trivial";
    return r;
  }
  auto sb = stable_base_change(L, effort);
  r.stable_d = sb.d;
  auto from_merges = [&](const std::string& method) {
    r.rank_lower = r.rank_upper = sb.d;
    r.method = method;
    r.relations.basis = sb.merges;
    return r;
  };
  if (sb.d <= 2) return from_merges("d<=2");
  if (A.h && *A.h == A.e) return from_merges("h=e");

  if (A.d <= effort.exact_max_d) {
    if (auto ex = exact_layer(L, A, effort)) {
      int d = A.d;
      QMatrix M = rows_to_matrix(ex->rows, d);
      r.rank_lower = r.rank_upper = rank(M);
      r.method = "valuation matrix";
      r.galois_order = ex->group_order;
      Matrix<long> Ml(M.rows(), d);
      for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < d; ++j) Ml(i, j) = M(i, j).get_num().get_si();
      r.valuation_matrix = Ml;
      QMatrix K = kernel(M);
      unsigned long nmax = order_bound(ex->group_order);
      PrecisionScope scope(effort.start_bits);
      auto roots = labeled_roots(A.Q);
      for (int c = 0; c < K.cols(); ++c)
        r.relations.basis.push_back({f_from_g(exact_one(roots, primitive(K.col(c)), nmax)), Certification::Certified});
      return r;
    }
  }

  // Bounds only: rank >= 1 since some valuation is nonzero, rank <= d over every extension.
  r.rank_lower = 1;
  r.rank_upper = sb.d;
  r.method = "bounds";
  r.relations.basis = sb.merges;
  PrecisionScope scope(effort.max_bits);
  auto roots = labeled_roots(A.Q);
  std::vector<Real> xs;
  for (int j = 0; j < A.d; ++j) xs.push_back(phase(roots[j]));
  xs.push_back(Real(1));
  if (auto rel = integer_relation(xs, effort.max_bits / 2, Integer(1000000))) {
    std::vector<long> g(A.d);
    for (int j = 0; j < A.d; ++j) g[j] = (*rel)[j].get_si();
    std::vector<std::vector<long>> span;
    for (auto& m : sb.merges) span.push_back(g_from_f(m.f));
    if (!in_span(span, g)) r.relations.basis.push_back({f_from_g(g), Certification::Heuristic});
  }
  return r;
}

NeatnessVerdict check_neat(const WeilPolynomial& L, const EffortPolicy& effort) {
  Admissible A = admissible(L);
  NeatnessVerdict v;
  if (A.d == 0) {
    v.kind = VerdictKind::Neat;
    v.criterion = "trivial";
    v.rank = gamma_rank(L, effort);
    return v;
  }
  if (A.h && *A.h == A.e) {
    v.kind = VerdictKind::Neat;
    v.criterion = "h=e";
    v.rank = gamma_rank(L, effort);
    return v;
  }
  v.rank = gamma_rank(L, effort);
  for (auto& rel : v.rank.relations.basis)
    if (rel.level == Certification::Heuristic) v.heuristic.push_back(rel);
  if (v.rank.stable_d <= 2) {
    v.kind = VerdictKind::Neat;
    v.criterion = "d<=2";
    return v;
  }
  if (v.rank.rank_lower != v.rank.rank_upper) return v;
  if (v.rank.rank_lower == v.rank.stable_d) {
    v.kind = VerdictKind::Neat;
    v.criterion = "full-rank valuation matrix";
    return v;
  }
  // A certified relation outside the span of the merges violates the criterion.
  auto sb = stable_base_change(L, effort);
  std::vector<std::vector<long>> span;
  for (auto& m : sb.merges) span.push_back(g_from_f(m.f));
  for (auto& rel : v.rank.relations.basis) {
    if (rel.level != Certification::Certified || in_span(span, g_from_f(rel.f))) continue;
    v.kind = VerdictKind::NotNeat;
    v.relation = rel;
    return v;
  }
  throw std::logic_error("rank below stable_d without a certifying relation");
}

RelationCheck verify_relation(const WeilPolynomial& L, const std::vector<long>& f, const EffortPolicy& effort) {
  Admissible A = admissible(L);
  const int d = A.d;
  if (static_cast<int>(f.size()) != 2 * d)
    throw std::invalid_argument("relation vector must have length 2d = " + std::to_string(2 * d));
  if (std::all_of(f.begin(), f.end(), [](long x) { return x == 0; }))
    throw std::invalid_argument("relation vector must be nonzero");
  RelationCheck out;
  auto g = g_from_f(f);
  if (std::all_of(g.begin(), g.end(), [](long x) { return x == 0; })) {
    out.truth = Truth::CertifiedTrue;
    out.method = "product of inverse pairs is exactly 1";
    return out;
  }

  // Exact relation space when the rank is pinned down.
  auto rep = gamma_rank(L, effort);
  if (rep.rank_lower == rep.rank_upper) {
    std::vector<std::vector<long>> span;
    for (auto& rel : rep.relations.basis)
      if (rel.level == Certification::Certified) span.push_back(g_from_f(rel.f));
    bool yes = in_span(span, g);
    out.truth = yes ? Truth::CertifiedTrue : Truth::CertifiedFalse;
    out.method = rep.method == "valuation matrix" ? "valuation matrix over the Galois closure"
                                                  : "relation space from certified base-change merges (" + rep.method + ")";
    return out;
  }

  // No slope-consistent valuation assignment annihilates f.
  int neg = 0;
  {
    NewtonPolygon np = newton_polygon(A.Q, L.p, L.q);
    neg = np.multiplicity(Rational(-1, *A.h));
  }
  bool some_zero = false;
  std::vector<int> r(d, -1);
  while (true) {
    int cnt = 0;
    long dotp = 0;
    for (int j = 0; j < d; ++j) {
      cnt += (r[j] == -1) + (r[j] == 1);
      dotp += g[j] * r[j];
    }
    if (cnt == neg && dotp == 0) some_zero = true;
    int j = 0;
    while (j < d && r[j] == 1) r[j++] = -1;
    if (j == d) break;
    ++r[j];
  }
  if (!some_zero) {
    out.truth = Truth::CertifiedFalse;
    out.method = "every slope-consistent valuation assignment gives a nonzero valuation";
    return out;
  }

  PrecisionScope scope(effort.max_bits);
  auto roots = labeled_roots(A.Q);
  out.bits = effort.max_bits;
  out.phase_distance = nearest_rational_distance(phase(root_product(roots, g)), order_bound(2 * d * (2 * d - 1)));
  out.method = "numeric phase evidence only";
  return out;
}

}  // namespace k3trc

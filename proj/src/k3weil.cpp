#include "k3trc/k3weil.hpp"

#include <algorithm>
#include <sstream>

#include "k3trc/exactnum.hpp"

namespace k3trc {

unsigned long WeilPolynomial::a() const { return static_cast<unsigned long>(*valuation(q, p)); }

WeilPolynomial make_weil(Poly poly, const Integer& p, const Integer& q) {
  if (!is_prime(p)) throw StructuralError("p = " + to_string(p) + " is not prime");
  auto pp = prime_power(q);
  if (!pp || pp->first != p) throw StructuralError("q = " + to_string(q) + " is not a power of p = " + to_string(p));
  if (poly.is_zero() || poly[0] != 1) throw StructuralError("L(0) must equal 1");
  if (poly.degree() > 21) throw StructuralError("degree " + std::to_string(poly.degree()) + " exceeds 21");
  for (const auto& c : poly.coefficients()) {
    Integer den = c.get_den();
    while (den % p == 0) den /= p;
    if (den != 1) throw StructuralError("coefficient " + to_string(c) + " has a denominator prime to p");
  }
  return {std::move(poly), p, q};
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::NotEvaluated:
      return "not-evaluated";
  }
  return "?";
}

const Condition& AdmissibilityReport::condition(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  throw std::out_of_range("no condition named " + name);
}

const Condition* AdmissibilityReport::first_failure() const {
  for (const auto& c : conditions)
    if (c.status != Status::Pass) return &c;
  return nullptr;
}

namespace {

bool palindromic(const Poly& p) {
  int n = p.degree();
  for (int i = 0; i <= n; ++i)
    if (p[i] != p[n - i]) return false;
  return true;
}

// Number of roots of a squarefree g in the closed interval [-2, 2].
long roots_in_closed(Poly g) {
  long count = 0;
  for (long e : {2L, -2L}) {
    if (g(Rational(e)) == 0) {
      ++count;
      g = g / Poly{Rational(-e), 1};
    }
  }
  return count + sturm_count(g, -2, 2);
}

Condition unit_circle(const Poly& L) {
  if (L.degree() == 0) return {"unit_circle", Status::Pass, "L = 1"};
  if (L.degree() % 2 || !palindromic(L)) return {"unit_circle", Status::Fail, "L is not self-reciprocal"};
  Poly g = chebyshev_image(L);
  for (const auto& [gk, mult] : squarefree_decomposition(g)) {
    if (roots_in_closed(gk) != gk.degree())
      return {"unit_circle", Status::Fail, "the image under x = T + 1/T has roots outside [-2, 2]"};
  }
  return {"unit_circle", Status::Pass, "all roots of the Chebyshev image lie in [-2, 2]"};
}

std::string slopes_string(const NewtonPolygon& np) {
  std::ostringstream os;
  for (std::size_t i = 0; i < np.segments.size(); ++i)
    os << (i ? ", " : "") << to_string(np.segments[i].slope) << " x" << np.segments[i].multiplicity;
  return os.str();
}

}  // namespace

AdmissibilityReport validate_k3_type(const WeilPolynomial& L, const PrecisionPolicy& policy) {
  AdmissibilityReport r;
  const Poly& P = L.poly;
  r.conditions.push_back({"integrality", Status::Pass, "coefficients lie in Z[1/p]"});
  int n = P.degree();
  if (n % 2 || n > 20)
    r.conditions.push_back({"degree", Status::Fail, "degree " + std::to_string(n) + " is not even and at most 20"});
  else
    r.conditions.push_back({"degree", Status::Pass, "degree " + std::to_string(n)});
  r.conditions.push_back(unit_circle(P));

  if (n == 0) {
    r.conditions.push_back({"no_root_of_unity", Status::Pass, "L = 1"});
    r.conditions.push_back({"power_of_irreducible", Status::Pass, "L = 1 (supersingular)"});
    r.conditions.push_back({"slope_profile", Status::Pass, "L = 1"});
    r.conditions.push_back({"local_irreducibility", Status::Pass, "L = 1"});
    r.e = 1;
    r.overall = true;
    return r;
  }

  auto cyc = cyclotomic_part(P);
  if (cyc.C.degree() > 0)
    r.conditions.push_back({"no_root_of_unity", Status::Fail, "cyclotomic divisor " + to_string(cyc.C)});
  else
    r.conditions.push_back({"no_root_of_unity", Status::Pass, "no cyclotomic divisor"});

  auto fac = factor_rational(P);
  if (fac.factors.size() != 1 || fac.factors[0].first.degree() % 2) {
    r.conditions.push_back({"power_of_irreducible", Status::Fail,
                            "L is not a power of one irreducible polynomial of even degree"});
    r.conditions.push_back({"slope_profile", Status::NotEvaluated, "needs the irreducible factor Q"});
    r.conditions.push_back({"local_irreducibility", Status::NotEvaluated, "needs the irreducible factor Q"});
    return r;
  }
  const Poly& monicQ = fac.factors[0].first;
  Poly Q = monicQ * (Rational(1) / monicQ[0]);
  r.Q = Q;
  r.e = fac.factors[0].second;
  r.conditions.push_back({"power_of_irreducible", Status::Pass,
                          "L = Q^" + std::to_string(r.e) + " with deg Q = " + std::to_string(Q.degree())});

  NewtonPolygon np = newton_polygon(Q, L.p, L.q);
  std::vector<Rational> neg;
  for (const auto& s : np.segments)
    if (s.slope < 0) neg.push_back(s.slope);
  bool ok = neg.size() == 1 && neg[0].get_num() == -1;
  int h = 0;
  if (ok) {
    h = static_cast<int>(neg[0].get_den().get_si());
    Rational inv(1, h);
    for (const auto& s : np.segments)
      if (s.slope != inv && s.slope != -inv && s.slope != 0) ok = false;
    if (r.e * np.multiplicity(-inv) != h) ok = false;
  }
  if (!ok) {
    r.conditions.push_back({"slope_profile", Status::Fail, "slopes of Q: " + slopes_string(np)});
    r.conditions.push_back({"local_irreducibility", Status::NotEvaluated, "needs the height h"});
    return r;
  }
  r.h = h;
  r.conditions.push_back({"slope_profile", Status::Pass, "h = " + std::to_string(h) + "; slopes of Q: " + slopes_string(np)});

  PadicFactor neg_part = slope_factor(Q, L.p, L.q, Rational(-1, h), policy);
  if (is_irreducible_local(neg_part.approximation(), L.p))
    r.conditions.push_back({"local_irreducibility", Status::Pass,
                            "the slope -1/" + std::to_string(h) + " factor of Q is irreducible over Q_p"});
  else
    r.conditions.push_back({"local_irreducibility", Status::Fail,
                            "the slope -1/" + std::to_string(h) + " factor of Q splits over Q_p"});

  r.overall = std::all_of(r.conditions.begin(), r.conditions.end(),
                          [](const Condition& c) { return c.status == Status::Pass; });
  return r;
}

InvariantReport invariants(const WeilPolynomial& L, const PrecisionPolicy& policy) {
  auto r = validate_k3_type(L, policy);
  if (!r.overall) {
    const Condition* f = r.first_failure();
    throw NotAdmissible("not admissible: " + f->name + " (" + f->detail + ")");
  }
  if (L.degree() == 0) return {0, 1, std::nullopt};
  return {r.Q->degree() / 2, r.e, r.h};
}

WeilPolynomial base_change(const WeilPolynomial& L, unsigned N) {
  if (N == 0) throw std::domain_error("base_change: N must be positive");
  int n = L.degree();
  WeilPolynomial out{L.poly, L.p, ipow(L.q, N)};
  if (n == 0 || N == 1) return out;
  auto sums = power_sums(L.poly, static_cast<int>(N) * n);
  std::vector<Rational> pw;
  for (int k = 1; k <= n; ++k) pw.push_back(sums[static_cast<std::size_t>(k) * N - 1]);
  out.poly = from_power_sums(pw, n);
  return out;
}

WeilPolynomial kummer_transcendental(long a1, long a2, const Integer& q) {
  auto pp = prime_power(q);
  if (!pp) throw StructuralError("q is not a prime power");
  if (pp->first == 2) throw std::domain_error("kummer_transcendental: characteristic must be odd");
  for (long a : {a1, a2})
    if (Integer(a) * a > 4 * q) throw std::domain_error("kummer_transcendental: trace violates the Weil bound");
  auto traces = [&](long a) {
    std::vector<Integer> s{2, a};
    for (int k = 2; k <= 4; ++k) s.push_back(a * s[k - 1] - q * s[k - 2]);
    return s;
  };
  auto s1 = traces(a1), s2 = traces(a2);
  std::vector<Rational> prod;
  for (int k = 1; k <= 4; ++k) prod.push_back(make_rational(s1[k] * s2[k], ipow(q, k)));
  Poly H2 = from_power_sums(prod, 4) * Poly{1, -1} * Poly{1, -1};
  return make_weil(cyclotomic_part(H2).R, pp->first, q);
}

// ---------------------------------------------------------------------------

CandidateStream::CandidateStream(const Integer& q, int degree, long height, const std::string& cursor)
    : q_(q), degree_(degree), height_(height) {
  auto pp = prime_power(q);
  if (!pp) throw StructuralError("q is not a prime power");
  if (degree < 2 || degree % 2 || degree > 20) throw std::domain_error("degree must be even with 2 <= degree <= 20");
  if (height < 1) throw std::domain_error("height bound must be positive");
  p_ = pp->first;
  a_ = pp->second;
  if (!cursor.empty()) {
    std::istringstream is(cursor);
    char sep;
    is >> s_;
    num_.assign(degree / 2, 0);
    for (auto& v : num_) is >> sep >> v;
    is >> sep >> examined_;
    if (!is) throw StructuralError("malformed enumeration cursor");
    started_ = true;
    if (!load_start(s_)) done_ = true;
    // load_start resets numerators; restore the saved position.
    std::istringstream again(cursor);
    again >> s_;
    for (auto& v : num_) again >> sep >> v;
  }
}

std::string CandidateStream::cursor() const {
  std::ostringstream os;
  os << s_;
  for (long v : num_) os << ':' << v;
  os << ':' << examined_;
  return os.str();
}

bool CandidateStream::load_start(unsigned s) {
  for (; s <= a_; ++s) {
    Integer ps = ipow(p_, s);
    if (ps > height_) return false;
    int m = degree_ / 2;
    bound_.assign(m, 0);
    Integer bin = 1;
    for (int k = 1; k <= m; ++k) {
      bin = bin * (degree_ - k + 1) / k;
      Integer b = bin * ps;
      bound_[k - 1] = b < height_ ? b.get_si() : height_;
    }
    s_ = s;
    num_.assign(m, 0);
    for (int k = 0; k < m; ++k) num_[k] = -bound_[k];
    return true;
  }
  return false;
}

bool CandidateStream::advance() {
  for (int k = static_cast<int>(num_.size()) - 1; k >= 0; --k) {
    if (num_[k] < bound_[k]) {
      ++num_[k];
      return true;
    }
    num_[k] = -bound_[k];
  }
  return load_start(s_ + 1);
}

std::optional<WeilPolynomial> CandidateStream::next() {
  while (!done_) {
    if (limit_ >= 0 && examined_ >= limit_) break;
    if (!started_) {
      started_ = true;
      if (!load_start(0)) {
        done_ = true;
        break;
      }
    } else if (!advance()) {
      done_ = true;
      break;
    }
    ++examined_;
    Integer ps = ipow(p_, s_);
    if (s_ > 0 && std::all_of(num_.begin(), num_.end(), [&](long v) { return v % p_.get_si() == 0; })) continue;
    int m = degree_ / 2;
    std::vector<Rational> c(degree_ + 1);
    c[0] = c[degree_] = 1;
    for (int k = 1; k <= m; ++k) c[k] = c[degree_ - k] = make_rational(num_[k - 1], ps);
    WeilPolynomial L{Poly(c), p_, q_};
    if (validate_k3_type(L).overall) return L;
  }
  return std::nullopt;
}

std::vector<WeilPolynomial> enumerate_candidates(const Integer& q, int degree, long height, long max_examined,
                                                 const std::string& cursor) {
  CandidateStream stream(q, degree, height, cursor);
  std::vector<WeilPolynomial> out;
  stream.set_limit(stream.examined() + max_examined);
  while (auto L = stream.next()) out.push_back(*L);
  if (stream.limit_reached()) throw ResourceCeiling(stream.cursor(), out);
  return out;
}

}  // namespace k3trc

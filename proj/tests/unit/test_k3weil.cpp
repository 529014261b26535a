#include <complex>
#include <set>

#include <Eigen/Dense>

#include "doctest.h"
#include "k3trc/exactnum.hpp"
#include "k3trc/k3weil.hpp"

using namespace k3trc;

namespace {

Rational Q(long n, long d = 1) { return make_rational(n, d); }

const Poly kKummer{1, 0, Q(-5, 3), 0, 1};
// prod(1 - alpha_i T / 3) for the roots of x^6 - 7x^5 + 17x^4 - 27x^3 + 153x^2 - 567x + 729.
const Poly kSextic{1, Q(-7, 3), Q(17, 9), -1, Q(17, 9), Q(-7, 3), 1};

std::vector<std::complex<double>> numeric_roots(const Poly& P) {
  Poly m = P.reversed().monic();
  int n = m.degree();
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -m[i].get_d();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C.cast<std::complex<double>>());
  std::vector<std::complex<double>> r;
  for (int i = 0; i < n; ++i) r.push_back(es.eigenvalues()(i));
  return r;
}

// Coefficients of prod(1 - z T) by direct expansion.
std::vector<std::complex<double>> expand(const std::vector<std::complex<double>>& zs) {
  std::vector<std::complex<double>> c{1.0};
  for (auto z : zs) {
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] -= z * c[i - 1];
  }
  return c;
}

// Brute-force admissibility predicate on numeric roots and exact factorization.
bool brute_admissible(const Poly& P, long p, long q) {
  if (P.degree() == 0) return true;
  for (auto z : numeric_roots(P))
    if (std::abs(std::abs(z) - 1.0) > 1e-6) return false;
  try {
    return validate_k3_type(WeilPolynomial{P, p, q}).overall;
  } catch (...) {
    return false;
  }
}

}  // namespace

TEST_CASE("make_weil rejects structural errors") {
  CHECK_NOTHROW(make_weil(kKummer, 3, 3));
  CHECK_THROWS_AS(make_weil(Poly{2, 1}, 3, 3), StructuralError);
  CHECK_THROWS_AS(make_weil(Poly{1, Q(1, 2)}, 3, 3), StructuralError);
  CHECK_THROWS_AS(make_weil(kKummer, 3, 6), StructuralError);
  CHECK_THROWS_AS(make_weil(kKummer, 4, 16), StructuralError);
  CHECK_THROWS_AS(make_weil(kKummer, 3, 25), StructuralError);
  CHECK(make_weil(kKummer, 3, 27).a() == 3);
}

TEST_CASE("validate_k3_type examples") {
  auto r = validate_k3_type(make_weil(kKummer, 3, 3));
  CHECK(r.overall);
  CHECK(r.conditions.size() == 7);
  CHECK(*r.h == 2);
  CHECK(r.e == 1);

  auto bad = validate_k3_type(make_weil(Poly{1, -1} * Poly{1, Q(-5, 3), 1}, 3, 3));
  CHECK_FALSE(bad.overall);
  CHECK(bad.condition("no_root_of_unity").status == Status::Fail);
  CHECK(bad.condition("power_of_irreducible").status == Status::Fail);
  CHECK(bad.condition("slope_profile").status == Status::NotEvaluated);

  auto sq = validate_k3_type(make_weil(pow(Poly{1, Q(-5, 3), 1}, 2), 3, 9));
  CHECK(sq.overall);
  CHECK(sq.e == 2);
  CHECK(*sq.h == 2);

  auto off = validate_k3_type(make_weil(Poly{1, 3, 1}, 3, 3));
  CHECK(off.condition("unit_circle").status == Status::Fail);
  auto odd = validate_k3_type(make_weil(Poly{1, Q(1, 3)}, 3, 3));
  CHECK(odd.condition("degree").status == Status::Fail);
  // Ordinary: slope 0 only.
  auto ord = validate_k3_type(make_weil(Poly{1, Q(-1, 2), 1}, 2, 2));
  CHECK(ord.condition("unit_circle").status == Status::Pass);

  auto sext = validate_k3_type(make_weil(kSextic, 3, 9));
  CHECK(sext.overall);
  CHECK(invariants(make_weil(kSextic, 3, 9)) == InvariantReport{3, 1, 2});

  CHECK(validate_k3_type(make_weil(Poly::constant(1), 3, 3)).overall);
  CHECK(invariants(make_weil(Poly::constant(1), 3, 3)) == InvariantReport{0, 1, std::nullopt});
}

TEST_CASE("invariants of the Kummer example and its base change") {
  auto L = make_weil(kKummer, 3, 3);
  CHECK(invariants(L) == InvariantReport{2, 1, 2});
  auto L2 = base_change(L, 2);
  CHECK(L2.poly == pow(Poly{1, Q(-5, 3), 1}, 2));
  CHECK(L2.q == 9);
  CHECK(invariants(L2) == InvariantReport{1, 2, 2});
  CHECK_THROWS_AS(invariants(make_weil(Poly{1, -1} * Poly{1, Q(-5, 3), 1}, 3, 3)), NotAdmissible);
}

TEST_CASE("base_change against numeric roots and the semigroup law") {
  std::vector<WeilPolynomial> cases = {
      make_weil(kKummer, 3, 3),
      make_weil(kSextic, 3, 9),
      make_weil(Poly{1, Q(2, 5), Q(-3, 25), Q(2, 5), 1}, 5, 5),
  };
  for (const auto& L : cases) {
    const Poly& P = L.poly;
    for (unsigned N : {2u, 3u, 5u}) {
      auto LN = base_change(L, N);
      std::vector<std::complex<double>> zs;
      for (auto z : numeric_roots(P)) zs.push_back(std::pow(z, static_cast<int>(N)));
      auto c = expand(zs);
      for (int i = 0; i <= LN.degree(); ++i) CHECK(std::abs(c[i] - LN.poly[i].get_d()) < 1e-9);
    }
    CHECK(base_change(base_change(L, 2), 3) == base_change(L, 6));
    CHECK(base_change(L, 1) == L);
  }
}

TEST_CASE("kummer_transcendental examples") {
  CHECK(kummer_transcendental(0, 1, 3).poly == kKummer);
  CHECK(kummer_transcendental(0, 0, 3).poly == Poly::constant(1));
  CHECK(kummer_transcendental(1, 1, 3).poly == Poly{1, Q(5, 3), 1});
  CHECK_THROWS(kummer_transcendental(4, 0, 3));
  CHECK_THROWS(kummer_transcendental(0, 0, 4));
}

TEST_CASE("kummer_transcendental against root products") {
  for (long q : {3L, 5L, 9L}) {
    long bound = 0;
    while ((bound + 1) * (bound + 1) <= 4 * q) ++bound;
    for (long a1 = -bound; a1 <= bound; ++a1)
      for (long a2 = -bound; a2 <= bound; ++a2) {
        auto L = kummer_transcendental(a1, a2, q);
        // Oracle: prod (1 - u_i v_j T / q) over the four root products, then
        // strip every factor whose root is (numerically) a root of unity.
        auto roots = [&](long a) {
          std::complex<double> disc = std::sqrt(std::complex<double>(a * a - 4.0 * q));
          return std::vector<std::complex<double>>{(double(a) + disc) / 2.0, (double(a) - disc) / 2.0};
        };
        std::vector<std::complex<double>> kept;
        for (auto u : roots(a1))
          for (auto v : roots(a2)) {
            auto z = u * v / double(q);
            bool unity = false;
            for (int n = 1; n <= 12 && !unity; ++n) unity = std::abs(std::pow(z, n) - 1.0) < 1e-9;
            if (!unity) kept.push_back(z);
          }
        REQUIRE(static_cast<std::size_t>(L.degree()) == kept.size());
        auto c = expand(kept);
        for (int i = 0; i <= L.degree(); ++i) CHECK(std::abs(c[i] - L.poly[i].get_d()) < 1e-9);
      }
  }
}

TEST_CASE("enumerate_candidates matches a brute-force scan") {
  struct Case {
    long q, p;
    long H;
  };
  for (auto cs : {Case{3, 3, 6}, Case{2, 2, 4}, Case{9, 3, 9}}) {
    std::set<std::string> expect;
    // Degree 2: L = 1 + c T + T^2 with c = N / p^s, s minimal, |N| <= min(H, 2 p^s).
    long a = cs.q == 9 ? 2 : 1;
    long ps = 1;
    for (long s = 0; s <= a && ps <= cs.H; ++s, ps *= cs.p)
      for (long N = -std::min(cs.H, 2 * ps); N <= std::min(cs.H, 2 * ps); ++N) {
        if (s > 0 && N % cs.p == 0) continue;
        Poly P{1, Q(N, ps), 1};
        if (brute_admissible(P, cs.p, cs.q)) expect.insert(to_string(P, "T"));
      }
    std::set<std::string> got;
    for (auto& L : enumerate_candidates(cs.q, 2, cs.H)) got.insert(to_string(L.poly, "T"));
    CHECK(got == expect);
    CHECK_FALSE(got.empty());
  }
}

TEST_CASE("enumeration ceiling and resumption") {
  auto all = enumerate_candidates(3, 4, 12);
  std::vector<WeilPolynomial> resumed;
  std::string cursor;
  int rounds = 0;
  while (true) {
    try {
      auto tail = enumerate_candidates(3, 4, 12, 50, cursor);
      resumed.insert(resumed.end(), tail.begin(), tail.end());
      break;
    } catch (const ResourceCeiling& e) {
      resumed.insert(resumed.end(), e.found.begin(), e.found.end());
      cursor = e.cursor;
      ++rounds;
    }
  }
  CHECK(rounds > 0);
  CHECK(resumed == all);
  bool has_kummer = false;
  for (auto& L : all) has_kummer |= L.poly == kKummer;
  CHECK(has_kummer);
}

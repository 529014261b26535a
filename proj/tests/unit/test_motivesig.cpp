#include "doctest.h"
#include "k3trc/motivesig.hpp"

using namespace k3trc;

namespace {

Rational Q(long n, long d = 1) { return make_rational(n, d); }

const Poly kKummer{1, 0, Q(-5, 3), 0, 1};
const Poly kSextic{1, Q(-7, 3), Q(17, 9), -1, Q(17, 9), Q(-7, 3), 1};

// Brute-force Tr_2(iota(g) f) for B = identity, entry by entry.
Rational brute_pairing(const EigenModel& m, const CommutantElement& f, const CommutantElement& g) {
  Rational s = 0;
  for (int i = 0; i < 2 * m.d; ++i) {
    int j = i < m.d ? i + m.d : i - m.d;
    for (int r = 0; r < m.e; ++r)
      for (int c = 0; c < m.e; ++c) s += g.blocks[j](c, r) * f.blocks[i](c, r);
  }
  return s;
}

// Brute-force count of n-tuples of labels with product exactly 1, from numeric roots.
long brute_tuples(const Poly& Qp, int n) {
  PrecisionScope scope(256);
  auto roots = labeled_roots(Qp);
  int k = static_cast<int>(roots.size());
  long count = 0;
  std::vector<int> t(n, 0);
  while (true) {
    Complex p(Real(1));
    for (int x : t) p *= roots[x];
    if ((p - Complex(Real(1))).abs() < Real(1e-40)) ++count;
    int i = 0;
    while (i < n && ++t[i] == k) t[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace

TEST_CASE("commutant_dimensions examples") {
  auto a = commutant_dimensions(EigenModel::standard(2, 1));
  CHECK(a.center_degree == 4);
  CHECK(*a.dim_over_center == 1);
  auto b = commutant_dimensions(EigenModel::standard(1, 2));
  CHECK(b.center_degree == 2);
  CHECK(*b.dim_over_center == 4);
  auto z = commutant_dimensions(EigenModel::standard(0, 1));
  CHECK(z.dimension == 0);
  CHECK_FALSE(z.dim_over_center);
  for (int d = 1; d <= 3; ++d)
    for (int e = 1; e <= 3; ++e) {
      auto c = commutant_dimensions(EigenModel::standard(d, e));
      CHECK(c.center_degree == 2 * d);
      CHECK(*c.dim_over_center == e * e);
      CHECK(c.dimension == 2 * d * e * e);
    }
}

TEST_CASE("trace pairing examples and properties") {
  std::mt19937_64 rng(5);
  for (int d = 1; d <= 3; ++d)
    for (int e = 1; e <= 3; ++e) {
      auto m = EigenModel::standard(d, e);
      auto id = CommutantElement::identity(m);
      CHECK(trace_pairing(m, id, id) == 2 * d * e);
      for (int k = 0; k < 20; ++k) {
        auto f = CommutantElement::random(m, rng), g = CommutantElement::random(m, rng);
        CHECK(trace_pairing(m, f, g) == trace_pairing(m, g, f));
        CHECK(trace_pairing(m, f, g) == brute_pairing(m, f, g));
        CHECK(iota(m, iota(m, f)) == f);
        CHECK(iota(m, f * g) == iota(m, g) * iota(m, f));
      }
    }
  auto m = EigenModel::standard(1, 2);
  auto nil = CommutantElement{{QMatrix::Zero(2, 2), QMatrix::Zero(2, 2)}};
  nil.blocks[0](0, 1) = 3;
  CHECK(trace_pairing(m, nil, CommutantElement::identity(m)) == 0);
}

TEST_CASE("iota with a nontrivial pairing") {
  std::mt19937_64 rng(11);
  auto m = EigenModel::standard(2, 2);
  m.B[0] << 2, 1, 1, 3;
  m.B[1] << 1, 4, 0, 1;
  for (int k = 0; k < 30; ++k) {
    auto f = CommutantElement::random(m, rng), g = CommutantElement::random(m, rng);
    CHECK(iota(m, iota(m, f)) == f);
    CHECK(iota(m, f * g) == iota(m, g) * iota(m, f));
    CHECK(verify_trace_identity(m, f));
  }
}

TEST_CASE("trace identity") {
  std::mt19937_64 rng(7);
  for (int d = 1; d <= 3; ++d)
    for (int e = 1; e <= 3; ++e) {
      auto m = EigenModel::standard(d, e);
      auto id = CommutantElement::identity(m);
      CHECK(regular_trace(m, id) == 2 * d * e * e);
      CHECK(verify_trace_identity(m, id));
      for (int k = 0; k < 25; ++k) CHECK(verify_trace_identity(m, CommutantElement::random(m, rng)));
    }
}

TEST_CASE("signature_report examples") {
  auto ss = signature_report(22, 0, 1);
  CHECK(ss.rho1 == 44);
  CHECK(ss.rho2 == 486);
  CHECK(ss.total == SignaturePair{443, 43});
  auto k = signature_report(18, 2, 1);
  CHECK(k.rho1 == 36);
  CHECK(k.rho2 == 330);
  CHECK(k.total == SignaturePair{295, 35});
  CHECK_THROWS(signature_report(18, 1, 1));
  CHECK_THROWS(signature_report(0, 11, 1));
}

TEST_CASE("invariant_tuple_dimension") {
  auto K = make_weil(kKummer, 3, 3);
  auto S = make_weil(kSextic, 3, 9);
  auto U = make_weil(Poly{1, Q(-5, 3), 1}, 3, 3);
  CHECK(invariant_tuple_dimension(K, 2) == 4);
  CHECK(invariant_tuple_dimension(S, 2) == 6);
  CHECK(invariant_tuple_dimension(U, 4) == 6);
  CHECK(invariant_tuple_dimension(base_change(K, 2), 2) == 8);
  CHECK(invariant_tuple_dimension(make_weil(Poly::constant(1), 3, 3), 2) == 0);
  for (int n = 1; n <= 7; n += 2) {
    CHECK(invariant_tuple_dimension(K, n) == 0);
    CHECK(invariant_tuple_dimension(U, n) == 0);
  }
  for (int n = 2; n <= 6; n += 2) {
    CHECK(invariant_tuple_dimension(K, n) == brute_tuples(kKummer, n));
    CHECK(invariant_tuple_dimension(S, n) == brute_tuples(kSextic, n));
  }
  // alpha_1 alpha_2 alpha_3 = -1 on the sextic: nothing in degree 3, extra classes in degree 6.
  CHECK(invariant_tuple_dimension(S, 3) == 0);
  // 1860 paired-off tuples plus 2 * 6!/(2!2!2!) carrying (alpha_1 alpha_2 alpha_3)^{+-2}.
  CHECK(invariant_tuple_dimension(S, 6) == 2040);
}

TEST_CASE("tensor_power_gram") {
  auto U = make_weil(Poly{1, Q(-5, 3), 1}, 3, 3);
  auto m = EigenModel::of(U);
  auto g2 = tensor_power_gram(m, U, 2);
  CHECK(g2.dimension() == 2);
  CHECK(g2.positive_definite);
  auto g4 = tensor_power_gram(m, U, 4);
  CHECK(g4.dimension() == 6);
  CHECK(g4.positive_definite);
  auto K2 = base_change(make_weil(kKummer, 3, 3), 2);
  auto g6 = tensor_power_gram(EigenModel::of(K2), K2, 6);
  CHECK(g6.dimension() == invariant_tuple_dimension(K2, 6));
  CHECK(g6.positive_definite);
  // Identity vector of End(T) has norm 2de under the Hermitian form.
  auto mk = EigenModel::of(K2);
  auto gk = tensor_power_gram(mk, K2, 2);
  QMatrix G = gk.dense();
  Rational norm = 0;
  // Identity = sum over labels i and basis index a of e_(i,a) (x) e_(partner i, a).
  long off = 0;
  for (std::size_t t = 0; t < gk.tuples.size(); ++t) {
    for (int a = 0; a < mk.e; ++a) {
      long idx = off + a * mk.e + a;
      for (int b = 0; b < mk.e; ++b) norm += G(idx, off + b * mk.e + b);
    }
    off += gk.blocks[t].rows();
  }
  CHECK(norm == 2 * mk.d * mk.e);
  auto empty = tensor_power_gram(EigenModel::standard(0, 1), make_weil(Poly::constant(1), 3, 3), 2);
  CHECK(empty.dimension() == 0);
  CHECK(empty.positive_definite);
  auto bad = EigenModel::of(K2);
  bad.B[0](1, 1) = -1;
  CHECK_THROWS_AS(tensor_power_gram(bad, K2, 2), std::domain_error);
}

#include "k3trc/motivesig.hpp"

#include <functional>
#include <algorithm>
#include <complex>
#include <map>

namespace k3trc {

namespace {

QMatrix identity_matrix(int e) {
  QMatrix m(e, e);
  m.setZero();
  for (int i = 0; i < e; ++i) m(i, i) = 1;
  return m;
}

void check_compatible(const EigenModel& m, const CommutantElement& f) {
  if (static_cast<int>(f.blocks.size()) != 2 * m.d) throw std::invalid_argument("element does not match the model");
  for (const auto& b : f.blocks)
    if (b.rows() != m.e || b.cols() != m.e) throw std::invalid_argument("element block size does not match the model");
}

}  // namespace

EigenModel EigenModel::standard(int d, int e) {
  if (d < 0 || e < 1) throw std::invalid_argument("model needs d >= 0 and e >= 1");
  EigenModel m{d, e, {}};
  for (int i = 0; i < d; ++i) m.B.push_back(identity_matrix(e));
  return m;
}

EigenModel EigenModel::of(const WeilPolynomial& L) {
  auto inv = invariants(L);
  return standard(inv.d, inv.e);
}

void EigenModel::check() const {
  if (static_cast<int>(B.size()) != d) throw std::invalid_argument("model needs one pairing block per inverse pair");
  for (const auto& b : B) {
    if (b.rows() != e || b.cols() != e) throw std::invalid_argument("pairing block has the wrong size");
    if (determinant(b) == 0) throw std::invalid_argument("pairing block is singular");
  }
}

CommutantElement CommutantElement::identity(const EigenModel& m) {
  return {std::vector<QMatrix>(2 * m.d, identity_matrix(m.e))};
}

CommutantElement CommutantElement::random(const EigenModel& m, std::mt19937_64& rng, long range) {
  std::uniform_int_distribution<long> num(-range, range), den(1, 3);
  CommutantElement f;
  for (int i = 0; i < 2 * m.d; ++i) {
    QMatrix b(m.e, m.e);
    for (int r = 0; r < m.e; ++r)
      for (int c = 0; c < m.e; ++c) b(r, c) = make_rational(num(rng), den(rng));
    f.blocks.push_back(b);
  }
  return f;
}

CommutantElement CommutantElement::operator*(const CommutantElement& o) const {
  if (blocks.size() != o.blocks.size()) throw std::invalid_argument("elements of different models");
  CommutantElement r;
  for (std::size_t i = 0; i < blocks.size(); ++i) r.blocks.push_back(blocks[i] * o.blocks[i]);
  return r;
}

bool operator==(const CommutantElement& a, const CommutantElement& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    if (a.blocks[i] != b.blocks[i]) return false;
  return true;
}

CommutantElement iota(const EigenModel& m, const CommutantElement& f) {
  check_compatible(m, f);
  CommutantElement r{std::vector<QMatrix>(2 * m.d)};
  for (int i = 0; i < m.d; ++i) {
    const QMatrix& B = m.B[i];
    QMatrix Binv = inverse(B);
    r.blocks[i + m.d] = Binv * f.blocks[i].transpose() * B;
    r.blocks[i] = (B * f.blocks[i + m.d] * Binv).transpose();
  }
  return r;
}

Rational tr2(const CommutantElement& f) {
  Rational s = 0;
  for (const auto& b : f.blocks) s += b.trace();
  return s;
}

Rational trace_pairing(const EigenModel& m, const CommutantElement& f, const CommutantElement& g) {
  check_compatible(m, f);
  check_compatible(m, g);
  return tr2(iota(m, g) * f);
}

Rational regular_trace(const EigenModel& m, const CommutantElement& f) {
  check_compatible(m, f);
  const int e = m.e, n = 2 * m.d * e * e;
  // Basis E^(i)_{rs} at index (i e + r) e + s; f E^(i)_{rs} = sum_t f_i(t, r) E^(i)_{ts}.
  QMatrix L(n, n);
  L.setZero();
  for (int i = 0; i < 2 * m.d; ++i)
    for (int r = 0; r < e; ++r)
      for (int s = 0; s < e; ++s)
        for (int t = 0; t < e; ++t) L((i * e + t) * e + s, (i * e + r) * e + s) = f.blocks[i](t, r);
  return L.trace();
}

bool verify_trace_identity(const EigenModel& m, const CommutantElement& f) {
  CommutantElement x = f * iota(m, f);
  return regular_trace(m, x) == Rational(m.e) * tr2(x);
}

CommutantDimensions commutant_dimensions(const EigenModel& m) {
  CommutantDimensions out;
  const int n = 2 * m.d * m.e;
  if (n == 0) return out;
  // Frobenius acts by distinct stand-in scalars on the eigenvalue classes; X commutes
  // with it exactly when X_rc (lambda_r - lambda_c) = 0.
  std::vector<int> cls(n);
  for (int r = 0; r < n; ++r) cls[r] = r / m.e;
  std::vector<std::pair<int, int>> basis;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (cls[r] == cls[c]) basis.push_back({r, c});
  out.dimension = static_cast<int>(basis.size());
  // Center, one class block at a time: Z with Z E - E Z = 0 for every matrix unit E.
  for (int k = 0; k < 2 * m.d; ++k) {
    std::vector<std::pair<int, int>> local;
    for (auto [r, c] : basis)
      if (cls[r] == k) local.push_back({r - k * m.e, c - k * m.e});
    const int e = m.e, u = static_cast<int>(local.size());
    QMatrix eqs(u * e * e, u);
    eqs.setZero();
    int row = 0;
    for (auto [a, b] : local) {
      // (Z E_ab)_{xy} = Z_{xa} [y = b];  (E_ab Z)_{xy} = [x = a] Z_{by}.
      for (int x = 0; x < e; ++x)
        for (int y = 0; y < e; ++y, ++row)
          for (int j = 0; j < u; ++j) {
            auto [zr, zc] = local[j];
            Rational v = 0;
            if (y == b && zr == x && zc == a) v += 1;
            if (x == a && zr == b && zc == y) v -= 1;
            eqs(row, j) = v;
          }
    }
    out.center_degree += u - rank(eqs);
  }
  out.dim_over_center = out.dimension / out.center_degree;
  return out;
}

SignatureReport signature_report(int rho, int d, int e) {
  if (rho < 1 || rho > 22) throw std::invalid_argument("rho must lie in 1..22");
  if (d < 0 || e < 1) throw std::invalid_argument("d must be nonnegative and e positive");
  if (22 - rho != 2 * d * e) throw std::invalid_argument("inconsistent (rho, d, e): 22 - rho != 2de");
  if (d >= 1 && rho % 2) throw std::invalid_argument("rho must be even when d >= 1");
  SignatureReport s;
  s.rho = rho;
  s.d = d;
  s.e = e;
  s.rho1 = 2L * rho;
  s.rho2 = 2L + long(rho) * rho + 2L * d * e * e;
  s.m_part = {1, 1};
  s.algebraic = {long(rho) * rho - s.rho1 + 2, s.rho1 - 2};
  s.transcendental = {2L * d * e * e, 0};
  s.total = {s.rho2 - s.rho1 + 1, s.rho1 - 1};
  SignaturePair sum{s.m_part.positive + s.algebraic.positive + s.transcendental.positive,
                    s.m_part.negative + s.algebraic.negative + s.transcendental.negative};
  if (!(sum == s.total)) throw std::logic_error("signature parts do not add up");
  return s;
}

namespace {

// Decides exactly whether prod alpha_j^{g_j} = 1.
class ProductOneOracle {
 public:
  ProductOneOracle(const WeilPolynomial& L, const EffortPolicy& effort) {
    auto inv = invariants(L);
    d_ = inv.d;
    if (d_ == 0) return;
    auto rep = gamma_rank(L, effort);
    if (rep.rank_lower != rep.rank_upper)
      throw std::runtime_error("relation status is Unknown; tuple dimension is not certifiable");
    QMatrix V(static_cast<int>(rep.relations.basis.size()), d_);
    for (int i = 0; i < V.rows(); ++i)
      for (int j = 0; j < d_; ++j)
        V(i, j) = rep.relations.basis[i].f[j] - rep.relations.basis[i].f[j + d_];
    QMatrix K = V.rows() ? kernel(V) : identity_matrix(d_);
    annihilator_ = K.transpose();
    PrecisionScope scope(256);
    Poly Q = *validate_k3_type(L).Q;
    for (auto& z : labeled_roots(Q)) roots_.push_back({z.re.convert_to<long double>(), z.im.convert_to<long double>()});
  }

  bool operator()(const std::vector<long>& g) {
    auto it = memo_.find(g);
    if (it != memo_.end()) return it->second;
    bool one = decide(g);
    memo_.emplace(g, one);
    return one;
  }

 private:
  bool decide(const std::vector<long>& g) const {
    for (int i = 0; i < annihilator_.rows(); ++i) {
      Rational s = 0;
      for (int j = 0; j < d_; ++j) s += annihilator_(i, j) * g[j];
      if (s != 0) return false;
    }
    // A root of unity of bounded order; it is 1 exactly when numerically close to 1.
    std::complex<long double> p(1);
    for (int j = 0; j < d_; ++j) p *= std::pow(roots_[j], static_cast<int>(g[j]));
    return std::abs(p - std::complex<long double>(1)) < 1e-6L;
  }

  int d_ = 0;
  QMatrix annihilator_;
  std::vector<std::complex<long double>> roots_;
  std::map<std::vector<long>, bool> memo_;
};

// Calls visit(counts) for every count vector over k labels summing to n.
void for_each_count(int k, int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> c(k, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == k - 1) {
      c[pos] = left;
      visit(c);
      return;
    }
    for (int v = left; v >= 0; --v) {
      c[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, n);
}

std::vector<long> g_of_counts(const std::vector<int>& c, int d) {
  std::vector<long> g(d);
  for (int j = 0; j < d; ++j) g[j] = c[j] - c[j + d];
  return g;
}

void check_n(int n) {
  if (n < 1 || n > 8) throw std::invalid_argument("tensor power n must lie in 1..8");
}

}  // namespace

long invariant_tuple_dimension(const WeilPolynomial& L, int n, const EffortPolicy& effort) {
  check_n(n);
  auto inv = invariants(L);
  if (inv.d == 0) return 0;
  ProductOneOracle one(L, effort);
  std::vector<long> fact(n + 1, 1);
  for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;
  long tuples = 0;
  for_each_count(2 * inv.d, n, [&](const std::vector<int>& c) {
    if (!one(g_of_counts(c, inv.d))) return;
    long multinomial = fact[n];
    for (int v : c) multinomial /= fact[v];
    tuples += multinomial;
  });
  long en = 1;
  for (int i = 0; i < n; ++i) en *= inv.e;
  return en * tuples;
}

long GramReport::dimension() const {
  long s = 0;
  for (const auto& b : blocks) s += b.rows();
  return s;
}

QMatrix GramReport::dense() const {
  long n = dimension();
  QMatrix out(n, n);
  out.setZero();
  long off = 0;
  for (const auto& b : blocks) {
    out.block(off, off, b.rows(), b.cols()) = b;
    off += b.rows();
  }
  return out;
}

namespace {

GramReport assemble_gram(const EigenModel& m, const std::vector<std::vector<int>>& tuples, int n) {
  GramReport g;
  g.n = n;
  g.tuples = tuples;
  // Hermitian form: block i pairs with itself through B_i, block i + d through B_i^T.
  auto H = [&](int label) -> QMatrix { return label < m.d ? m.B[label] : QMatrix(m.B[label - m.d].transpose()); };
  Rational prefix = 1;
  g.positive_definite = true;
  for (const auto& J : tuples) {
    QMatrix G = QMatrix::Constant(1, 1, Rational(1));
    for (int label : J) {
      QMatrix h = H(label);
      QMatrix K(G.rows() * h.rows(), G.cols() * h.cols());
      for (int a = 0; a < G.rows(); ++a)
        for (int b = 0; b < G.cols(); ++b) K.block(a * h.rows(), b * h.cols(), h.rows(), h.cols()) = G(a, b) * h;
      G = K;
    }
    if (G != G.transpose()) g.positive_definite = false;
    auto minors = leading_principal_minors(G);
    for (const auto& x : minors) {
      g.minors.push_back(prefix * x);
      if (g.minors.back() <= 0) g.positive_definite = false;
    }
    if (!minors.empty()) prefix *= minors.back();
    g.blocks.push_back(G);
  }
  return g;
}

std::vector<std::vector<int>> product_one_tuples(const WeilPolynomial& L, int d, int n, const EffortPolicy& effort) {
  std::vector<std::vector<int>> out;
  if (d == 0) return out;
  ProductOneOracle one(L, effort);
  for_each_count(2 * d, n, [&](const std::vector<int>& c) {
    if (!one(g_of_counts(c, d))) return;
    std::vector<int> t;
    for (int j = 0; j < 2 * d; ++j) t.insert(t.end(), c[j], j);
    do out.push_back(t);
    while (std::next_permutation(t.begin(), t.end()));
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

GramReport tensor_power_gram(const EigenModel& m, const WeilPolynomial& L, int n, const EffortPolicy& effort) {
  check_n(n);
  if (n % 2) throw std::invalid_argument("tensor_power_gram needs an even tensor power");
  m.check();
  auto inv = invariants(L);
  if (inv.d != m.d || inv.e != m.e) throw std::invalid_argument("model does not match the invariants of L");
  // The square must already be positive definite.
  std::vector<std::vector<int>> pairs;
  for (int i = 0; i < 2 * m.d; ++i) pairs.push_back({i, i < m.d ? i + m.d : i - m.d});
  if (!assemble_gram(m, pairs, 2).positive_definite)
    throw std::domain_error("model pairing does not give a positive definite form on the square");
  return assemble_gram(m, product_one_tuples(L, m.d, n, effort), n);
}

}  // namespace k3trc

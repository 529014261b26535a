// Acceptance suite: one PASS/FAIL line per criterion.
#include <Eigen/Eigenvalues>
#include <chrono>
#include <complex>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "k3trc/exactnum.hpp"
#include "k3trc/motivesig.hpp"
#include "k3trc/serialize.hpp"

using namespace k3trc;

namespace {

Rational Q(long n, long d = 1) { return make_rational(n, d); }

struct Entry {
  std::string label;
  WeilPolynomial L;
  bool admissible = false;
};

std::vector<Entry> load_corpus() {
  std::ifstream in(K3TRC_CORPUS_PATH);
  if (!in) throw std::runtime_error("cannot open corpus " K3TRC_CORPUS_PATH);
  Json j = Json::parse(in);
  std::vector<Entry> out;
  for (const auto& e : j) {
    Entry x{e.at("label").get<std::string>(), parse_document(e.at("document"))};
    x.admissible = validate_k3_type(x.L).overall;
    out.push_back(std::move(x));
  }
  return out;
}

bool worked_example(const Entry& e) { return e.label.rfind("kummer", 0) == 0 || e.label.rfind("example", 0) == 0; }

// Collects failures for one criterion.
struct Log {
  std::vector<std::string> failures;
  long checks = 0;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures.size() < 8) failures.push_back(what);
    if (!ok && failures.size() == 8) failures.push_back("...");
  }
};

std::string run_cli(const std::string& args, const std::string& stdin_text = "") {
  std::string cmd = std::string("'") + K3TRC_CLI_PATH + "' " + args;
  std::string tmp;
  if (!stdin_text.empty()) {
    tmp = "/tmp/k3trc_acceptance_" + std::to_string(std::random_device{}()) + ".json";
    std::ofstream(tmp) << stdin_text;
    cmd += " --input '" + tmp + "'";
  }
  std::string out;
  if (FILE* f = popen(cmd.c_str(), "r")) {
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) out.append(buf, n);
    pclose(f);
  }
  if (!tmp.empty()) std::remove(tmp.c_str());
  return out;
}

// ---- p-adic oracles -------------------------------------------------------

using ZPoly = std::vector<Integer>;

long vp(Integer x, long p) {
  if (x == 0) return 1L << 30;
  long v = 0;
  while (x % p == 0) x /= p, ++v;
  return v;
}

// Number of roots alpha of L (with multiplicity) with nu_q(alpha) = -r/s: the roots
// y = q^r alpha^s are then the units, counted as deg(R mod p) - ord_y(R mod p) for the
// primitive integer R(y) = prod(y - q^r alpha^s).
int unit_root_count(const WeilPolynomial& L, long r, long s) {
  int n = L.degree();
  auto ps = power_sums(L.poly, static_cast<int>(s) * n);
  std::vector<Rational> ys(n);
  Rational qr = Rational(ipow(L.q, static_cast<unsigned long>(r < 0 ? -r : r)));
  if (r < 0) qr = 1 / qr;
  Rational w = 1;
  for (int k = 1; k <= n; ++k) {
    w *= qr;
    ys[k - 1] = w * ps[s * k - 1];
  }
  Poly R = from_power_sums(ys, n).reversed();
  auto z = primitive_integer_part(R);
  long p = L.p.get_si();
  int top = -1, low = -1;
  for (int i = 0; i <= n; ++i)
    if (z[i] % p != 0) {
      if (low < 0) low = i;
      top = i;
    }
  return top < 0 ? 0 : top - low;
}

bool divides_mod(const ZPoly& f, const ZPoly& g, const Integer& m) {
  ZPoly r = f;
  int dg = static_cast<int>(g.size()) - 1;
  for (int i = static_cast<int>(r.size()) - 1; i >= dg; --i) {
    Integer c = r[i] % m;
    for (int j = 0; j <= dg; ++j) r[i - dg + j] -= c * g[j];
  }
  for (int i = 0; i < dg; ++i)
    if (r[i] % m != 0) return false;
  return true;
}

// Monic g of degree k dividing F modulo p^K whose constant term has valuation exactly V,
// lifted one p-adic digit at a time.
bool lift_divisor(const ZPoly& F, const ZPoly& g, int level, int K, long p, long V) {
  Integer pl = ipow(Integer(p), static_cast<unsigned long>(level));
  Integer next = pl * p;
  auto ok_constant = [&](const Integer& c, int l) {
    Integer m = ipow(Integer(p), static_cast<unsigned long>(l));
    Integer r = ((c % m) + m) % m;
    if (l <= V) return r == 0;
    return vp(r, p) == V;
  };
  if (level == K) return ok_constant(g[0], K);
  int k = static_cast<int>(g.size()) - 1;
  long combos = 1;
  for (int i = 0; i < k; ++i) combos *= p;
  for (long c = 0; c < combos; ++c) {
    ZPoly h = g;
    long t = c;
    for (int i = 0; i < k; ++i, t /= p) h[i] += pl * (t % p);
    if (!ok_constant(h[0], level + 1)) continue;
    if (divides_mod(F, h, next) && lift_divisor(F, h, level + 1, K, p, V)) return true;
  }
  return false;
}

// Whether the slope -1/h part of Q is irreducible over Q_p, decided on F(x) = prod(x - q alpha)
// by searching p-adic divisors made of the slope -1/h roots only, at precision p^40.
bool local_irreducible_oracle(const Poly& Qpoly, const Integer& p_, const Integer& q, unsigned long a, int h, int m) {
  long p = p_.get_si();
  int n = Qpoly.degree();
  ZPoly F(n + 1);
  Rational qi = 1;
  for (int i = 0; i <= n; ++i) {
    Rational c = Qpoly[i] * qi;
    if (c.get_den() != 1) throw std::logic_error("q alpha is not integral");
    F[n - i] = c.get_num();
    qi *= q;
  }
  for (int k = 1; k < m; ++k) {
    // nu_p(q alpha) = a (1 - 1/h) for the roots in question.
    long num = static_cast<long>(k * a * (h - 1));
    if (num % h) continue;
    long V = num / h;
    long combos = 1;
    for (int i = 0; i < k; ++i) combos *= p;
    for (long c = 0; c < combos; ++c) {
      ZPoly g(k + 1);
      g[k] = 1;
      long t = c;
      for (int i = 0; i < k; ++i, t /= p) g[i] = t % p;
      if (V > 0 && g[0] != 0) continue;
      if (V == 0 && g[0] == 0) continue;
      if (divides_mod(F, g, Integer(p)) && lift_divisor(F, g, 1, 40, p, V)) return false;
    }
  }
  return true;
}

// ---- numeric oracles ------------------------------------------------------

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

std::vector<std::complex<double>> expand(const std::vector<std::complex<double>>& zs) {
  std::vector<std::complex<double>> c{1.0};
  for (auto z : zs) {
    c.push_back(0.0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] -= z * c[i - 1];
  }
  return c;
}

// e^n times the number of label n-tuples with product 1, from 256-bit numeric roots.
long brute_tuples(const Poly& Qp, int e, int n) {
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
  long en = 1;
  for (int i = 0; i < n; ++i) en *= e;
  return count * en;
}

// ---- criteria -------------------------------------------------------------

void criterion1(Log& log) {
  auto L = kummer_transcendental(0, 1, 3);
  auto r = validate_k3_type(L);
  log.expect(r.overall, "kummer(0, 1, 3) is admissible");
  log.expect(invariants(L) == InvariantReport{2, 1, 2}, "invariants (2, 1, 2)");
  auto L2 = base_change(L, 2);
  log.expect(L2.q == 9 && L2.poly == pow(Poly{1, Q(-5, 3), 1}, 2), "base change is (1 - 5/3 T + T^2)^2 over q = 9");
  log.expect(invariants(L2) == InvariantReport{1, 2, 2}, "invariants over F_9 are (1, 2, 2)");

  auto k = run_cli("kummer --a1 0 --a2 1 --q 3");
  auto x = run_cli("extend --n 2", Json::parse(k).dump());
  auto inv = Json::parse(run_cli("invariants", Json::parse(x).dump()));
  log.expect(inv["result"] == Json{{"d", 1}, {"e", 2}, {"h", 2}}, "CLI pipeline kummer | extend | invariants");
}

void criterion2(Log& log, const std::vector<Entry>& corpus) {
  for (const auto& E : corpus) {
    const auto& L = E.L;
    auto r = validate_k3_type(L);
    auto np = newton_polygon(L.poly, L.p, L.q);
    int n = L.degree();
    for (int s = 1; s <= n; ++s) {
      int oracle = unit_root_count(L, 1, s);
      log.expect(np.multiplicity(Rational(-1, s)) == oracle,
                 E.label + ": roots of slope -1/" + std::to_string(s));
    }
    if (!r.Q) continue;
    // Condition (3) from the oracle counts alone.
    bool oracle_profile = false;
    int oracle_h = 0;
    for (int h = 1; h <= n && !oracle_profile; ++h) {
      int neg = unit_root_count(L, 1, h);
      int zero = unit_root_count(L, 0, 1);
      int pos = unit_root_count(L, -1, h);
      if (neg == h && neg + zero + pos == n) oracle_profile = true, oracle_h = h;
    }
    bool module_profile = r.condition("slope_profile").status == Status::Pass;
    log.expect(oracle_profile == module_profile, E.label + ": slope profile verdict");
    if (!module_profile || !oracle_profile) continue;
    log.expect(*r.h == oracle_h, E.label + ": height");
    bool oracle_irr = local_irreducible_oracle(*r.Q, L.p, L.q, L.a(), oracle_h, oracle_h / r.e);
    bool module_irr = r.condition("local_irreducibility").status == Status::Pass;
    log.expect(oracle_irr == module_irr, E.label + ": local irreducibility verdict");
  }
}

void criterion3(Log& log, const std::vector<Entry>& corpus) {
  for (const auto& E : corpus) {
    if (!E.admissible) continue;
    auto inv = invariants(E.L);
    auto v = check_neat(E.L);
    if (worked_example(E)) log.expect(v.kind != VerdictKind::Unknown, E.label + ": Unknown verdict");
    if (inv.d == 0) {
      log.expect(v.kind == VerdictKind::Neat && v.criterion == "trivial", E.label + ": trivial");
    } else if (inv.h == inv.e || inv.d <= 2) {
      bool tag = (v.criterion == "h=e" && inv.h == inv.e) || (v.criterion == "d<=2" && inv.d <= 2);
      log.expect(v.kind == VerdictKind::Neat && tag, E.label + ": Neat with criterion " + v.criterion);
    }
  }
  auto S = make_weil(Poly{1, Q(-7, 3), Q(17, 9), -1, Q(17, 9), Q(-7, 3), 1}, 3, 9);
  // The example's constraints: admissible CM sextic with d = 3, e = 1 and h = 2.
  log.expect(validate_k3_type(S).overall && invariants(S) == InvariantReport{3, 1, 2}, "sextic invariants (3, 1, 2)");
  auto v = check_neat(S);
  log.expect(v.kind == VerdictKind::NotNeat, "sextic is NotNeat");
  log.expect(v.relation && v.relation->f == std::vector<long>{2, 2, 2, 0, 0, 0} &&
                 v.relation->level == Certification::Certified,
             "certified relation (2,2,2,0,0,0)");
  log.expect(verify_relation(S, {2, 2, 2, 0, 0, 0}).truth == Truth::CertifiedTrue, "verify_relation certifies it");
  PrecisionScope scope(512);
  auto roots = labeled_roots(*validate_k3_type(S).Q);
  Complex prod(Real(1));
  for (int i = 0; i < 3; ++i) prod *= roots[i] * roots[i];
  log.expect((prod - Complex(Real(1))).abs() < Real(1e-100), "numeric alpha_1^2 alpha_2^2 alpha_3^2 = 1");
}

void criterion4(Log& log, const std::vector<Entry>& corpus) {
  for (const auto& E : corpus) {
    if (!E.admissible) continue;
    auto r = gamma_rank(E.L);
    auto v = check_neat(E.L);
    for (unsigned N : {2u, 3u, 6u}) {
      auto LN = base_change(E.L, N);
      auto rN = gamma_rank(LN);
      log.expect(r.rank_lower == rN.rank_lower && r.rank_upper == rN.rank_upper,
                 E.label + ": rank bounds under N = " + std::to_string(N));
      log.expect(check_neat(LN).kind == v.kind, E.label + ": verdict under N = " + std::to_string(N));
    }
  }
}

void criterion5(Log& log) {
  std::mt19937_64 rng(45);
  for (int d = 1; d <= 3; ++d)
    for (int e = 1; e <= 3; ++e) {
      auto m = EigenModel::standard(d, e);
      int ok = 0;
      for (int i = 0; i < 500; ++i) ok += verify_trace_identity(m, CommutantElement::random(m, rng));
      log.expect(ok == 500, "trace identity on (d, e) = (" + std::to_string(d) + ", " + std::to_string(e) + ")");
    }
}

void criterion6(Log& log) {
  for (int rho = 1; rho <= 22; ++rho)
    for (int d = 0; 2 * d <= 22 - rho; ++d)
      for (int e = 1; e <= 11; ++e) {
        if (rho + 2 * d * e != 22 || (d == 0 && e > 1)) continue;
        std::string tag = "(" + std::to_string(rho) + ", " + std::to_string(d) + ", " + std::to_string(e) + ")";
        SignatureReport s;
        try {
          s = signature_report(rho, d, e);
        } catch (const std::exception& ex) {
          log.expect(false, tag + ": " + ex.what());
          continue;
        }
        long rho1 = 2L * rho;
        log.expect(s.rho1 == rho1, tag + ": rho_1 = 2 rho");
        log.expect(s.m_part == SignaturePair{1, 1}, tag + ": (1,1)");
        log.expect(s.algebraic == SignaturePair{long(rho) * rho - rho1 + 2, rho1 - 2}, tag + ": algebraic part");
        log.expect(s.transcendental == SignaturePair{2L * d * e * e, 0}, tag + ": transcendental part");
        SignaturePair sum{s.m_part.positive + s.algebraic.positive + s.transcendental.positive,
                          s.m_part.negative + s.algebraic.negative + s.transcendental.negative};
        log.expect(sum == SignaturePair{s.rho2 - rho1 + 1, rho1 - 1} && sum == s.total, tag + ": total");
      }
}

void criterion7(Log& log, const std::vector<Entry>& corpus) {
  for (int d = 1; d <= 3; ++d)
    for (int e = 1; e <= 3; ++e) {
      auto c = commutant_dimensions(EigenModel::standard(d, e));
      log.expect(c.center_degree == 2 * d && c.dim_over_center == e * e && c.dimension == 2 * d * e * e,
                 "commutant dimensions at (" + std::to_string(d) + ", " + std::to_string(e) + ")");
    }
  for (const auto& E : corpus) {
    if (!E.admissible) continue;
    auto inv = invariants(E.L);
    log.expect(invariant_tuple_dimension(E.L, 2) == 2L * inv.d * inv.e * inv.e, E.label + ": n = 2 dimension");
  }
}

void criterion8(Log& log, const std::vector<Entry>& corpus) {
  for (const auto& E : corpus) {
    if (!E.admissible || check_neat(E.L).kind != VerdictKind::Neat) continue;
    auto r = validate_k3_type(E.L);
    for (int n = 1; n <= 7; n += 2)
      log.expect(invariant_tuple_dimension(E.L, n) == 0, E.label + ": odd n = " + std::to_string(n));
    auto model = EigenModel::of(E.L);
    for (int n = 2; n <= 6; n += 2) {
      long got = invariant_tuple_dimension(E.L, n);
      log.expect(got == brute_tuples(*r.Q, r.e, n), E.label + ": tuple count n = " + std::to_string(n));
      auto g = tensor_power_gram(model, E.L, n);
      log.expect(g.positive_definite && g.dimension() == got, E.label + ": Gram n = " + std::to_string(n));
    }
  }
}

void criterion9(Log& log) {
  std::vector<WeilPolynomial> pool;
  for (auto [q, deg, h] : std::vector<std::tuple<long, int, long>>{
           {3, 2, 9}, {5, 2, 15}, {3, 4, 6}, {9, 4, 9}, {3, 6, 3}, {2, 6, 3}, {2, 8, 2}}) {
    auto found = enumerate_candidates(q, deg, h);
    pool.insert(pool.end(), found.begin(), found.end());
  }
  std::mt19937 rng(9);
  std::shuffle(pool.begin(), pool.end(), rng);
  log.expect(pool.size() >= 100, "pool of 100 admissible polynomials");
  if (pool.size() > 100) pool.resize(100);
  for (const auto& L : pool) {
    std::string tag = to_string(L.poly) + " over q = " + L.q.get_str();
    for (unsigned N : {2u, 3u, 6u}) {
      auto LN = base_change(L, N);
      std::vector<std::complex<double>> zs;
      for (auto z : numeric_roots(L.poly)) zs.push_back(std::pow(z, static_cast<int>(N)));
      auto c = expand(zs);
      double err = 0;
      for (int i = 0; i <= LN.degree(); ++i) err = std::max(err, std::abs(c[i] - LN.poly[i].get_d()));
      log.expect(err < 1e-9, tag + ": numeric powering, N = " + std::to_string(N));
    }
    auto L6 = base_change(L, 6);
    log.expect(base_change(base_change(L, 2), 3) == L6 && base_change(base_change(L, 3), 2) == L6,
               tag + ": L^(6) = (L^(2))^(3) = (L^(3))^(2)");
  }
}

}  // namespace

int main() {
  std::vector<Entry> corpus;
  try {
    corpus = load_corpus();
  } catch (const std::exception& e) {
    std::cout << "FAIL corpus: " << e.what() << '\n';
    return 1;
  }
  std::size_t admissible = std::count_if(corpus.begin(), corpus.end(), [](const Entry& e) { return e.admissible; });
  std::cout << "corpus: " << corpus.size() << " entries, " << admissible << " admissible\n";

  struct Criterion {
    int id;
    std::string title;
    double limit_s;  // 0 for no runtime bound
    std::function<void(Log&)> run;
  };
  std::vector<Criterion> criteria = {
      {1, "Kummer pipeline", 1, [&](Log& l) { criterion1(l); }},
      {2, "admissibility against p-adic oracles", 10, [&](Log& l) { criterion2(l, corpus); }},
      {3, "neatness criteria and the sextic counterexample", 0, [&](Log& l) { criterion3(l, corpus); }},
      {4, "extension invariance of rank and verdict", 0, [&](Log& l) { criterion4(l, corpus); }},
      {5, "trace identity", 5, [&](Log& l) { criterion5(l); }},
      {6, "signature bookkeeping", 0, [&](Log& l) { criterion6(l); }},
      {7, "dimension formulas", 0, [&](Log& l) { criterion7(l, corpus); }},
      {8, "tensor-power combinatorics", 60, [&](Log& l) { criterion8(l, corpus); }},
      {9, "base-change oracle equivalence", 0, [&](Log& l) { criterion9(l); }},
  };

  int failed = 0;
  for (auto& c : criteria) {
    Log log;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(log);
    } catch (const std::exception& e) {
      log.expect(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limit_s > 0 && s >= c.limit_s) log.expect(false, "runtime " + std::to_string(s) + " s over the limit");
    bool pass = log.failures.empty();
    failed += !pass;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << ' ' << c.id << ". " << c.title << " (" << log.checks << " checks, "
         << std::fixed << std::setprecision(2) << s << " s)";
    std::cout << line.str() << '\n';
    for (const auto& f : log.failures) std::cout << "    " << f << '\n';
    std::cout.flush();
  }
  return failed ? 1 : 0;
}

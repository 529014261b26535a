#include "k3trc/rational.hpp"

#include <cctype>

namespace k3trc {

namespace {

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto s = strip(text);
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
  num = strip(num);
  den = strip(den);
  if (!is_integer_literal(num) || !is_integer_literal(den))
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  Integer n = parse_integer(num), d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

std::optional<long> valuation(const Integer& z, const Integer& p) {
  if (z == 0) return std::nullopt;
  Integer t = abs(z);
  long v = 0;
  Integer q, r;
  for (;;) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t());
    if (r != 0) return v;
    t = q;
    ++v;
  }
}

std::optional<long> valuation(const Rational& r, const Integer& p) {
  if (r == 0) return std::nullopt;
  return *valuation(r.get_num(), p) - *valuation(r.get_den(), p);
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Rational rpow(const Rational& base, long e) {
  if (e >= 0) return Rational(ipow(base.get_num(), e), ipow(base.get_den(), e));
  if (base == 0) throw std::domain_error("zero to a negative power");
  Rational r(ipow(base.get_den(), -e), ipow(base.get_num(), -e));
  r.canonicalize();
  return r;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

std::optional<std::pair<Integer, unsigned long>> prime_power(const Integer& n) {
  if (n < 2) return std::nullopt;
  for (unsigned long a = mpz_sizeinbase(n.get_mpz_t(), 2); a >= 1; --a) {
    Integer root;
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), a) != 0 && is_prime(root)) return std::make_pair(root, a);
  }
  return std::nullopt;
}

Integer symmetric_mod(const Integer& x, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  if (2 * r > m) r -= m;
  return r;
}

}  // namespace k3trc

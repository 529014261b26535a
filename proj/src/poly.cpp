#include "k3trc/poly.hpp"

#include <sstream>

namespace k3trc {

Poly parse_poly(const std::vector<std::string>& coefficient_strings) {
  std::vector<Rational> c;
  c.reserve(coefficient_strings.size());
  for (const auto& s : coefficient_strings) c.push_back(parse_rational(s));
  return Poly(std::move(c));
}

std::vector<std::string> coefficient_strings(const Poly& p) {
  std::vector<std::string> out;
  for (const auto& c : p.coefficients()) out.push_back(to_string(c));
  return out;
}

std::string to_string(const Poly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i <= p.degree(); ++i) {
    Rational c = p[i];
    if (c == 0) continue;
    bool neg = c < 0;
    Rational a = abs(c);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (i == 0 || a != 1) os << to_string(a);
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

std::vector<Integer> primitive_integer_part(const Poly& p) {
  if (p.is_zero()) return {};
  Integer l = 1;
  for (const auto& c : p.coefficients()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> v;
  Integer g = 0;
  for (const auto& c : p.coefficients()) {
    Integer z = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z.get_mpz_t());
    v.push_back(z);
  }
  if (v.back() < 0) g = -g;
  for (auto& z : v) z /= g;
  return v;
}

Poly from_integers(const std::vector<Integer>& v) {
  std::vector<Rational> c;
  c.reserve(v.size());
  for (const auto& z : v) c.emplace_back(z);
  return Poly(std::move(c));
}

bool canonical_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace k3trc

#include "mukai/rational.hpp"

#include <cctype>

namespace mukai {

namespace {

bool valid_integer_text(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Integer parse_integer(std::string s) {
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

}  // namespace

Rational frac(const Integer& a, const Integer& b) {
  if (b == 0) throw DomainError("division_by_zero", "zero denominator");
  Rational q(a, b);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text.push_back(ch);
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer_text(text)) throw ParseError("not a rational: '" + raw + "'");
    return Rational(parse_integer(text));
  }
  std::string num = text.substr(0, slash), den = text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("not a rational: '" + raw + "'");
  Integer d = parse_integer(den);
  if (d == 0) throw ParseError("zero denominator: '" + raw + "'");
  Rational q(parse_integer(num), d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer to_integer(const Rational& q) {
  if (!is_integer(q)) throw DomainError("integrality", to_string(q) + " is not an integer");
  return q.get_num();
}

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

Rational rational_content(const std::vector<Rational>& xs) {
  Integer g = 0, l = 1;
  for (const auto& x : xs) {
    if (x == 0) continue;
    g = gcd(g, x.get_num());
    l = lcm(l, x.get_den());
  }
  if (g == 0) return 0;
  Rational c(g, l);
  c.canonicalize();
  return c;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  if (r < 0) r += abs(m);
  return r;
}

int sign(const Rational& q) { return sgn(q); }

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  ExtGcd out;
  mpz_gcdext(out.g.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return out;
}

}  // namespace mukai

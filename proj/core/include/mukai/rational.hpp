#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace mukai {

using Rational = mpq_class;
using Integer = mpz_class;

// Violated mathematical precondition. `precondition` is a stable identifier
// that the CLI prints and tests match on.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string precondition, const std::string& detail)
      : std::runtime_error(precondition + ": " + detail),
        precondition_(std::move(precondition)) {}
  const std::string& precondition() const { return precondition_; }

 private:
  std::string precondition_;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// a/b in canonical form. mpq_class(a, b) does not canonicalize, and GMP
// arithmetic on non-canonical operands is undefined.
Rational frac(const Integer& a, const Integer& b);

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

bool is_integer(const Rational& q);
Integer to_integer(const Rational& q);  // throws DomainError if not integral
Integer floor_q(const Rational& q);
Integer ceil_q(const Rational& q);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
// gcd of numerators over lcm of denominators; zero for the zero vector.
Rational rational_content(const std::vector<Rational>& xs);
// Integer-valued mod with result in [0, m).
Integer mod_floor(const Integer& a, const Integer& m);
int sign(const Rational& q);

// Returns (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0.
struct ExtGcd {
  Integer g, s, t;
};
ExtGcd ext_gcd(const Integer& a, const Integer& b);

}  // namespace mukai

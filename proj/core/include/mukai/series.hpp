#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mukai/lattice.hpp"

namespace mukai {

// Sum of c_ij x^i y^j with no zero coefficients stored.
class LaurentPoly {
 public:
  using Exp = std::pair<long, long>;

  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT: constants convert implicitly
  static LaurentPoly monomial(long i, long j, const Rational& c = 1);
  static LaurentPoly xy_power(long k, const Rational& c = 1) { return monomial(k, k, c); }

  const std::map<Exp, Rational>& terms() const { return terms_; }
  Rational coeff(long i, long j) const;
  bool is_zero() const { return terms_.empty(); }
  // Set only when every term is a power of xy.
  bool is_xy_poly() const;
  long xy_degree() const;  // max exponent of xy; throws unless is_xy_poly()
  Rational eval_one() const;  // x = y = 1
  LaurentPoly invert_xy() const;  // (i,j) -> (-i,-j)

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& s);

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
  std::string to_string() const;

 private:
  void add_term(const Exp& e, const Rational& c);
  std::map<Exp, Rational> terms_;
};

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b);
LaurentPoly operator*(const Rational& s, LaurentPoly a);

// Univariate q-series: sum a_k q^(k/denom), valid for k <= max_num.
struct QSeries {
  long denom = 1;
  long max_num = 0;
  std::map<long, Rational> coeffs;

  Rational coeff(long num) const;
};

LaurentPoly e_gl(long n);
// Virtual Hodge polynomial of the default Enriques model: 1 + 10xy + (xy)^2.
LaurentPoly enriques_hodge();

// e(X^[n]) for n = 0..order.
std::vector<LaurentPoly> hilb_series(const LaurentPoly& e_x, long order);
// Euler numbers chi(X^[n]) for n = 0..order, from prod (1-q^m)^(-chi).
std::vector<Integer> hilb_euler(long chi, long order);
// q^(-1/2) prod (1-q^n)^(-12), denominators 2, through q^(order - 1/2).
QSeries eta_inv12(long order);

struct HeckeCoset {
  long a, b, d;
  friend bool operator==(const HeckeCoset&, const HeckeCoset&) = default;
};
std::vector<HeckeCoset> hecke_cosets(long r);
long sigma1(long r);

// Term c(coef) * zeta_d^phase * q^E * q^(s Q(c_L^2)) * qbar^(-s Q(c_R^2)),
// elliptic variable specialised to 0. Q is minus the intersection form.
struct ThetaTerm {
  NSClass c;
  Rational E, s;
  Rational coef;
  long phase = 0, phase_den = 1;
};

struct TermKey {
  std::vector<Rational> c;
  Rational E, s;
  friend bool operator==(const TermKey&, const TermKey&) = default;
  friend bool operator<(const TermKey& a, const TermKey& b) {
    return std::tie(a.c, a.E, a.s) < std::tie(b.c, b.E, b.s);
  }
};
using TermMap = std::map<TermKey, Rational>;

// Lattice vectors with coordinate i in [lo_i, hi_i].
std::vector<NSClass> lattice_box(const std::vector<std::pair<long, long>>& ranges);

std::vector<ThetaTerm> partition_Z1(const NSLattice& lat, const std::vector<NSClass>& box, long order);
// Term of Z1((a tau + 2b)/d, a x), rescaled so that c -> a c and s -> s/r.
std::vector<ThetaTerm> hecke_transform(const std::vector<ThetaTerm>& terms, const NSLattice& lat,
                                       const HeckeCoset& k, long r);
// Collapses terms with equal keys, summing roots of unity exactly.
TermMap collapse(const std::vector<ThetaTerm>& terms);
// Sum over zeta_d^m with rational coefficients; must reduce to a rational.
Rational cyclotomic_sum(const std::vector<Rational>& by_exponent);

// (1/2) sum_b d Z1((a tau + 2b)/d, a x) restricted to `box`.
TermMap evidence_lhs(long a, long d, const NSLattice& lat, const std::vector<NSClass>& box, long order);
// sum over w = (d, xi, -k/2) of d^2 chi(X^[(<w^2>+1)/2]) q^(a<w^2>/2d) ...
TermMap evidence_rhs(long a, long d, const NSLattice& lat, const std::vector<NSClass>& box, long order);
// (1/r^2) sum over cosets of d Z1 transformed.
TermMap hecke_Zr(long r, const NSLattice& lat, const std::vector<NSClass>& box, long order);

struct MultiplicityChi {
  Rational two_over_a2;  // sum (2/a^2) chi(X^[n_w])
  Rational one_over_a2;  // sum (1/a^2) chi(X^[n_w])
  std::vector<std::pair<Integer, long>> terms;  // (a, n_w)
};
MultiplicityChi multiplicity_chi(const MukaiVector& v, const SurfaceModel& m);

struct Stratum {
  std::vector<std::vector<Rational>> pairing;  // (c1(gamma_i), c1(gamma_j))
  std::vector<LaurentPoly> factors;            // e(M^C(gamma_i))
};
Integer stratum_exponent(const Stratum& s);  // -sum_{i<j} pairing_ij
LaurentPoly wallcross_epoly(const LaurentPoly& base, const std::vector<Stratum>& strata);

struct EllipticWallTerm {
  long k;
  LaurentPoly e_shifted;  // e(M(0, tau + (n' - k l) f, chi - k d))
  LaurentPoly e_fiber;    // e(M(0, k l f, k d))
};
// Checks mu_alpha(gamma) = (d - l (alpha,f)) / (l (H,f)) on the model's
// sigma/f basis (tau = sigma) and returns
// e_side + sum_k e_shifted e_fiber (xy)^(k l).
LaurentPoly elliptic_epoly_recursion(const GammaTriple& gamma, long l, long d, const NSClass& alpha,
                                     const NSClass& h, const SurfaceModel& m,
                                     const LaurentPoly& e_side,
                                     const std::vector<EllipticWallTerm>& terms);

}  // namespace mukai

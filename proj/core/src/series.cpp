#include "mukai/series.hpp"

#include <numeric>

#include "mukai/walls.hpp"

namespace mukai {

// ---- LaurentPoly ------------------------------------------------------------

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) terms_[{0, 0}] = c;
}

LaurentPoly LaurentPoly::monomial(long i, long j, const Rational& c) {
  LaurentPoly p;
  p.add_term({i, j}, c);
  return p;
}

void LaurentPoly::add_term(const Exp& e, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational LaurentPoly::coeff(long i, long j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rational(0) : it->second;
}

bool LaurentPoly::is_xy_poly() const {
  for (auto& [e, c] : terms_)
    if (e.first != e.second) return false;
  return true;
}

long LaurentPoly::xy_degree() const {
  if (!is_xy_poly()) throw DomainError("xy_polynomial", "polynomial is not a polynomial in xy");
  if (terms_.empty()) throw DomainError("nonzero_polynomial", "degree of the zero polynomial");
  return terms_.rbegin()->first.first;
}

Rational LaurentPoly::eval_one() const {
  Rational s = 0;
  for (auto& [e, c] : terms_) s += c;
  return s;
}

LaurentPoly LaurentPoly::invert_xy() const {
  LaurentPoly p;
  for (auto& [e, c] : terms_) p.add_term({-e.first, -e.second}, c);
  return p;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  LaurentPoly out;
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) out.add_term({e1.first + e2.first, e1.second + e2.second}, c1 * c2);
  *this = std::move(out);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
LaurentPoly operator*(LaurentPoly a, const LaurentPoly& b) { return a *= b; }
LaurentPoly operator*(const Rational& s, LaurentPoly a) { return a *= s; }

namespace {

std::string power(const char* var, long k) {
  if (k == 0) return "";
  if (k == 1) return var;
  return std::string(var) + "^" + (k < 0 ? "(" + std::to_string(k) + ")" : std::to_string(k));
}

}  // namespace

std::string LaurentPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [i, j] = it->first;
    Rational c = it->second;
    bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty()) out = neg ? "-" : "";
    else out += neg ? " - " : " + ";
    std::string mono = power("x", i);
    std::string py = power("y", j);
    if (!py.empty()) mono += (mono.empty() ? "" : "*") + py;
    if (mono.empty()) out += mukai::to_string(c);
    else if (c == 1) out += mono;
    else out += mukai::to_string(c) + "*" + mono;
  }
  return out;
}

Rational QSeries::coeff(long num) const {
  if (num > max_num) throw DomainError("truncation", "coefficient beyond the truncation order");
  auto it = coeffs.find(num);
  return it == coeffs.end() ? Rational(0) : it->second;
}

// ---- Hodge polynomials and Hilbert schemes ------------------------------------

LaurentPoly e_gl(long n) {
  if (n < 1) throw DomainError("gl_rank_positive", "N must be at least 1");
  LaurentPoly p(Rational(1));
  for (long i = 0; i < n; ++i) p *= LaurentPoly::xy_power(n) - LaurentPoly::xy_power(i);
  return p;
}

LaurentPoly enriques_hodge() {
  return LaurentPoly(1) + LaurentPoly::xy_power(1, 10) + LaurentPoly::xy_power(2);
}

namespace {

// Coefficient of u^k in (1 - u)^(-e).
Rational neg_binomial(const Integer& e, long k) {
  Rational c = 1;
  for (long i = 0; i < k; ++i) c = c * Rational(e + i) / Rational(i + 1);
  return c;
}

// Same product when every term of e(X) is a power of xy: dense integer
// coefficients in t = xy, and (1 - u)^(-c) applied as c in-place divisions
// by (1 - u) (or |c| multiplications when c < 0).
std::vector<LaurentPoly> hilb_series_xy(const LaurentPoly& e_x, long order) {
  const size_t width = 2 * static_cast<size_t>(order) + 1;
  std::vector<std::vector<Integer>> s(order + 1, std::vector<Integer>(width, 0));
  s[0][0] = 1;
  for (long m = 1; m <= order; ++m)
    for (auto& [e, c] : e_x.terms()) {
      const size_t shift = static_cast<size_t>(e.first + m - 1);
      const Integer reps = abs(c.get_num());
      const bool divide = c > 0;
      for (Integer rep = 0; rep < reps; ++rep) {
        if (divide) {
          for (long j = m; j <= order; ++j)
            for (size_t d = shift; d < width; ++d)
              if (s[j - m][d - shift] != 0) s[j][d] += s[j - m][d - shift];
        } else {
          for (long j = order; j >= m; --j)
            for (size_t d = shift; d < width; ++d)
              if (s[j - m][d - shift] != 0) s[j][d] -= s[j - m][d - shift];
        }
      }
    }
  std::vector<LaurentPoly> out(order + 1);
  for (long j = 0; j <= order; ++j)
    for (size_t d = 0; d < width; ++d)
      if (s[j][d] != 0) out[j] += LaurentPoly::xy_power(static_cast<long>(d), Rational(s[j][d]));
  return out;
}

}  // namespace

std::vector<LaurentPoly> hilb_series(const LaurentPoly& e_x, long order) {
  if (order < 0) throw DomainError("order_nonnegative", "order must be nonnegative");
  for (auto& [e, c] : e_x.terms()) {
    if (e.first < 0 || e.first > 2 || e.second < 0 || e.second > 2)
      throw DomainError("surface_hodge", "e(X) must have bidegrees in [0,2]x[0,2]");
    if (!is_integer(c)) throw DomainError("surface_hodge", "Hodge numbers must be integers");
  }
  if (e_x.is_xy_poly()) return hilb_series_xy(e_x, order);
  std::vector<LaurentPoly> s(order + 1);
  s[0] = LaurentPoly(Rational(1));
  for (long m = 1; m <= order; ++m) {
    for (auto& [e, c] : e_x.terms()) {
      // (1 - x^(p+m-1) y^(q+m-1) z^m)^(-c)
      std::vector<LaurentPoly> next(order + 1);
      for (long k = 0; k * m <= order; ++k) {
        Rational b = neg_binomial(c.get_num(), k);
        if (b == 0) break;
        LaurentPoly f = LaurentPoly::monomial(k * (e.first + m - 1), k * (e.second + m - 1), b);
        for (long j = 0; j + k * m <= order; ++j)
          if (!s[j].is_zero()) next[j + k * m] += s[j] * f;
      }
      s = std::move(next);
    }
  }
  return s;
}

std::vector<Integer> hilb_euler(long chi, long order) {
  if (order < 0) throw DomainError("order_nonnegative", "order must be nonnegative");
  std::vector<Integer> a(order + 1, 0);
  a[0] = 1;
  for (long m = 1; m <= order; ++m) {
    // multiply by (1 - q^m)^(-chi)
    std::vector<Integer> next(order + 1, 0);
    for (long k = 0; k * m <= order; ++k) {
      Rational b = neg_binomial(chi, k);
      if (b == 0) break;
      for (long j = 0; j + k * m <= order; ++j) next[j + k * m] += a[j] * b.get_num();
    }
    a = std::move(next);
  }
  return a;
}

QSeries eta_inv12(long order) {
  if (order < 0) throw DomainError("order_nonnegative", "order must be nonnegative");
  // n p(n) = 12 sum_{j=1}^n sigma1(j) p(n-j) for prod (1-q^n)^(-12).
  std::vector<Integer> p(order + 1, 0);
  p[0] = 1;
  for (long n = 1; n <= order; ++n) {
    Integer s = 0;
    for (long j = 1; j <= n; ++j) s += Integer(sigma1(j)) * p[n - j];
    p[n] = 12 * s / n;
  }
  QSeries q;
  q.denom = 2;
  q.max_num = 2 * order - 1;
  for (long n = 0; n <= order; ++n) q.coeffs[2 * n - 1] = Rational(p[n]);
  return q;
}

long sigma1(long r) {
  long s = 0;
  for (long d = 1; d <= r; ++d)
    if (r % d == 0) s += d;
  return s;
}

std::vector<HeckeCoset> hecke_cosets(long r) {
  if (r < 1 || r % 2 == 0) throw DomainError("odd_r", "r must be a positive odd integer");
  std::vector<HeckeCoset> out;
  for (long d = 1; d <= r; ++d) {
    if (r % d) continue;
    for (long b = 0; b < d; ++b) out.push_back({r / d, b, d});
  }
  return out;
}

// ---- theta-term bookkeeping ---------------------------------------------------

std::vector<NSClass> lattice_box(const std::vector<std::pair<long, long>>& ranges) {
  std::vector<NSClass> out;
  NSClass cur(ranges.size());
  for (auto& [lo, hi] : ranges)
    if (lo > hi) throw DomainError("nonempty_box", "empty lattice box");
  for (size_t i = 0; i < ranges.size(); ++i) cur[i] = ranges[i].first;
  while (true) {
    out.push_back(cur);
    bool advanced = false;
    for (size_t i = ranges.size(); i-- > 0;) {
      if (cur[i] < ranges[i].second) {
        cur[i] += 1;
        for (size_t j = i + 1; j < ranges.size(); ++j) cur[j] = ranges[j].first;
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

std::vector<ThetaTerm> partition_Z1(const NSLattice& lat, const std::vector<NSClass>& box, long order) {
  if (box.empty()) throw DomainError("nonempty_box", "empty lattice box");
  auto chi = hilb_euler(12, order);
  std::vector<ThetaTerm> out;
  for (auto& xi : box) {
    if (xi.size() != lat.rank) throw DomainError("lattice_rank", "box vector length mismatch");
    for (long n = 0; n <= order; ++n)
      out.push_back({xi, frac(2 * n - 1, 2), Rational(1, 2), Rational(2 * chi[n]), 0, 1});
  }
  return out;
}

std::vector<ThetaTerm> hecke_transform(const std::vector<ThetaTerm>& terms, const NSLattice& lat,
                                       const HeckeCoset& k, long r) {
  if (k.a * k.d != r) throw DomainError("coset_determinant", "ad must equal r");
  std::vector<ThetaTerm> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (t.phase_den != 1) throw DomainError("phase_free_input", "input terms must carry no phase");
    Rational q2 = -lat.square(t.c);
    Rational m = Rational(2 * k.b) * (t.E + t.s * q2);
    Integer mi = to_integer(m);
    ThetaTerm u;
    u.c = Rational(k.a) * t.c;
    u.E = Rational(k.a) * t.E / Rational(k.d);
    u.s = t.s / Rational(r);
    u.coef = Rational(k.d) * t.coef;
    u.phase_den = k.d;
    u.phase = mod_floor(mi, Integer(k.d)).get_si();
    out.push_back(std::move(u));
  }
  return out;
}

namespace {

using Poly = std::vector<Rational>;  // ascending coefficients

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Quotient of exact division a / b.
Poly poly_div(Poly a, const Poly& b) {
  trim(a);
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    q[shift] = f;
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return q;
}

Poly poly_mod(Poly a, const Poly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    size_t shift = a.size() - b.size();
    Rational f = a.back() / b.back();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return a;
}

Poly cyclotomic(long n) {
  Poly p(n + 1, Rational(0));
  p[0] = -1;
  p[n] = 1;
  for (long e = 1; e < n; ++e)
    if (n % e == 0) p = poly_div(p, cyclotomic(e));
  return p;
}

}  // namespace

Rational cyclotomic_sum(const std::vector<Rational>& by_exponent) {
  long n = static_cast<long>(by_exponent.size());
  if (n == 0) return 0;
  Poly r = poly_mod(by_exponent, cyclotomic(n));
  for (size_t i = 1; i < r.size(); ++i)
    if (r[i] != 0) throw DomainError("phase_sum_rational", "root-of-unity sum is not rational");
  return r.empty() ? Rational(0) : r[0];
}

TermMap collapse(const std::vector<ThetaTerm>& terms) {
  std::map<TermKey, std::vector<const ThetaTerm*>> groups;
  for (auto& t : terms) groups[TermKey{t.c.coords, t.E, t.s}].push_back(&t);
  TermMap out;
  for (auto& [key, group] : groups) {
    long den = 1;
    for (auto* t : group) den = std::lcm(den, t->phase_den);
    std::vector<Rational> acc(den, Rational(0));
    for (auto* t : group) acc[(t->phase * (den / t->phase_den)) % den] += t->coef;
    Rational v = cyclotomic_sum(acc);
    if (v != 0) out[key] = v;
  }
  return out;
}

TermMap evidence_lhs(long a, long d, const NSLattice& lat, const std::vector<NSClass>& box, long order) {
  auto z1 = partition_Z1(lat, box, order);
  std::vector<ThetaTerm> all;
  for (long b = 0; b < d; ++b) {
    auto part = hecke_transform(z1, lat, {a, b, d}, a * d);
    all.insert(all.end(), part.begin(), part.end());
  }
  for (auto& t : all) t.coef /= 2;
  return collapse(all);
}

TermMap evidence_rhs(long a, long d, const NSLattice& lat, const std::vector<NSClass>& box, long order) {
  if (d % 2 == 0) throw DomainError("odd_r", "rank d must be odd");
  auto chi = hilb_euler(12, order);
  SurfaceModel m;
  m.ns = lat;
  m.half_integral = true;
  long r = a * d;
  TermMap out;
  for (auto& xi : box) {
    Integer x2 = to_integer(lat.square(xi));
    // n_w = (x2 + d k + 1)/2 in [0, order], k odd
    Integer klo = ceil_q(frac(-1 - x2, d)), khi = floor_q(frac(2 * order - 1 - x2, d));
    for (Integer k = klo; k <= khi; ++k) {
      if (mod_floor(k, 2) != 1) continue;
      MukaiVector w{Rational(d), xi, Rational(-k, 2)};
      Rational w2 = mukai_square(w, m);
      long nw = to_integer((w2 + 1) / 2).get_si();
      TermKey key{(Rational(a) * xi).coords, Rational(a) * w2 / Rational(2 * d), Rational(1, 2 * r)};
      out[key] += Rational(d * d) * Rational(chi[nw]);
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

TermMap hecke_Zr(long r, const NSLattice& lat, const std::vector<NSClass>& box, long order) {
  auto cosets = hecke_cosets(r);
  auto z1 = partition_Z1(lat, box, order);
  std::vector<ThetaTerm> all;
  for (auto& k : cosets) {
    auto part = hecke_transform(z1, lat, k, r);
    all.insert(all.end(), part.begin(), part.end());
  }
  auto out = collapse(all);
  for (auto& [key, v] : out) v /= Rational(r * r);
  return out;
}

MultiplicityChi multiplicity_chi(const MukaiVector& v, const SurfaceModel& m) {
  if (!m.half_integral) throw DomainError("enriques_surface", "multiplicity_chi needs an Enriques model");
  if (!is_integer(v.r) || v.r <= 0 || to_integer(v.r) % 2 == 0)
    throw DomainError("odd_rank", "rk v must be odd and positive");
  Integer mult = multiplicity(v, m);
  Rational v2 = mukai_square(v, m);
  MultiplicityChi out;
  std::vector<std::pair<Integer, long>> wanted;
  long top = 0;
  for (Integer a = 1; a <= mult; ++a) {
    if (mult % a != 0) continue;
    Rational w2 = v2 / Rational(a * a);
    if (w2 < -1) continue;
    long nw = to_integer((w2 + 1) / 2).get_si();
    wanted.push_back({a, nw});
    top = std::max(top, nw);
  }
  auto chi = hilb_euler(12, top);
  for (auto& [a, nw] : wanted) {
    Rational c(chi[nw]);
    out.two_over_a2 += Rational(2) * c / Rational(a * a);
    out.one_over_a2 += c / Rational(a * a);
  }
  out.terms = std::move(wanted);
  return out;
}

// ---- wall-crossing recursions -------------------------------------------------

Integer stratum_exponent(const Stratum& s) {
  size_t n = s.factors.size();
  if (s.pairing.size() != n) throw DomainError("stratum_shape", "pairing matrix size must match factor count");
  Rational e = 0;
  for (size_t i = 0; i < n; ++i) {
    if (s.pairing[i].size() != n) throw DomainError("stratum_shape", "pairing matrix must be square");
    for (size_t j = i + 1; j < n; ++j) e -= s.pairing[i][j];
  }
  if (!is_integer(e)) throw DomainError("integer_exponent", "-sum (c_i,c_j) must be an integer");
  return e.get_num();
}

LaurentPoly wallcross_epoly(const LaurentPoly& base, const std::vector<Stratum>& strata) {
  LaurentPoly out = base;
  for (auto& s : strata) {
    LaurentPoly term = LaurentPoly::xy_power(stratum_exponent(s).get_si());
    for (auto& f : s.factors) term *= f;
    out += term;
  }
  return out;
}

LaurentPoly elliptic_epoly_recursion(const GammaTriple& gamma, long l, long d, const NSClass& alpha,
                                     const NSClass& h, const SurfaceModel& m,
                                     const LaurentPoly& e_side,
                                     const std::vector<EllipticWallTerm>& terms) {
  if (l == 0) throw DomainError("wall_datum", "l must be nonzero");
  auto fi = m.ns.index_of("f");
  if (!fi) throw DomainError("elliptic_basis", "model needs a fibre class 'f'");
  NSClass f = basis_vector(m.rank(), *fi);
  Rational hf = m.ns.pair(h, f);
  if (hf == 0) throw DomainError("wall_datum", "(H,f) must be nonzero");
  Rational mu = (Rational(d) - Rational(l) * m.ns.pair(alpha, f)) / (Rational(l) * hf);
  if (slope_dim1(gamma, alpha, h, m) != mu)
    throw DomainError("wall_datum", "mu_alpha(gamma) differs from (d - l(alpha,f))/(l(H,f))");
  LaurentPoly out = e_side;
  for (auto& t : terms) out += t.e_shifted * t.e_fiber * LaurentPoly::xy_power(t.k * l);
  return out;
}

}  // namespace mukai

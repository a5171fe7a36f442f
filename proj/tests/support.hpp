#pragma once

// Generators and independent oracles shared by the unit tests and the
// acceptance runner. Oracles deliberately avoid the library code paths they
// check: series by naive multiplication, walls by scanning slopes, gcd chains
// by plain integer loops.

#include <map>
#include <random>
#include <vector>

#include "mukai/fm.hpp"
#include "mukai/json_io.hpp"
#include "mukai/lattice.hpp"
#include "mukai/reduction.hpp"
#include "mukai/series.hpp"
#include "mukai/walls.hpp"

namespace testsupport {

using namespace mukai;

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline Rational rnd_q(std::mt19937_64& rng, long bound = 9) {
  Rational q(uniform(rng, -bound, bound), uniform(rng, 1, bound));
  q.canonicalize();
  return q;
}

inline NSClass rnd_class(std::mt19937_64& rng, size_t rank, long bound, bool integral) {
  NSClass c(rank);
  for (auto& x : c.coords) x = integral ? Rational(uniform(rng, -bound, bound)) : rnd_q(rng, bound);
  return c;
}

inline MukaiVector rnd_vec(std::mt19937_64& rng, const SurfaceModel& m, long bound = 9) {
  return {rnd_q(rng, bound), rnd_class(rng, m.rank(), bound, false), rnd_q(rng, bound)};
}

// Primitive integral K3/abelian vector on <e,f> with positive rank.
inline MukaiVector rnd_primitive_u(std::mt19937_64& rng, const SurfaceModel& m) {
  while (true) {
    MukaiVector v{Rational(uniform(rng, 1, 12)), NSClass{Rational(uniform(rng, -8, 8)), Rational(uniform(rng, -8, 8))},
                  Rational(uniform(rng, -10, 10))};
    Integer l = gcd(gcd(v.r.get_num(), v.c[0].get_num()), v.c[1].get_num());
    if (gcd(l, v.t.get_num()) == 1) return v;
  }
}

// Primitive odd-rank Enriques vector (r, c, -s/2) with <v^2> >= -1.
inline MukaiVector rnd_enriques(std::mt19937_64& rng, const SurfaceModel& m, long rank_max = 15) {
  while (true) {
    long r = 2 * uniform(rng, 0, (rank_max - 1) / 2) + 1;
    NSClass c = rnd_class(rng, m.rank(), 3, true);
    long s = 2 * uniform(rng, -6, 12) + 1;
    MukaiVector v{Rational(r), c, Rational(-s, 2)};
    if (mukai_square(v, m) >= -1 && multiplicity(v, m) == 1) return v;
  }
}

// Euler numbers of Hilb^n from prod (1 - q^m)^(-chi) by repeated truncated
// multiplication with the geometric series sum_k q^(mk), chi times.
inline std::vector<Integer> naive_hilb_euler(long chi, long order) {
  std::vector<Integer> a(order + 1, 0);
  a[0] = 1;
  for (long m = 1; m <= order; ++m)
    for (long rep = 0; rep < chi; ++rep) {
      std::vector<Integer> next(order + 1, 0);
      for (long j = 0; j <= order; ++j)
        for (long k = 0; j + k * m <= order; ++k) next[j + k * m] += a[j];
      a = next;
    }
  return a;
}

// Ranks r_0 = r, r_1 = d in (0, r], r_{i+1} = q r_i - r_{i-1} with ceiling
// quotient q, until the rank is 1.
inline std::vector<Integer> ceiling_euclid(Integer r, Integer d) {
  std::vector<Integer> out{r};
  if (r == 1) return out;
  d = ((d - 1) % r + r) % r + 1;
  while (r != 1) {
    out.push_back(d);
    if (d == 1) break;
    Integer q = (r + d - 1) / d;
    Integer next = q * d - r;
    if (next == 0) next = d;  // unreachable for coprime input
    r = d;
    d = next;
  }
  return out;
}

// Remainder sequence of the classical Euclidean algorithm r_{i+1} = r_{i-1} mod r_i.
inline std::vector<Integer> classical_euclid(Integer r, Integer d) {
  std::vector<Integer> out{r};
  d = ((d % r) + r) % r;
  while (d != 0) {
    out.push_back(d);
    Integer next = r % d;
    r = d;
    d = next;
  }
  return out;
}

// Walls by brute force: for each integral D in a large square and each |n| <= nmax,
// keep (D, n) when the slope equation is nonconstant in alpha and changes sign
// (or vanishes) at some corner of the box. Cone: nonnegative coordinates.
struct OracleWall {
  std::vector<Integer> normal;
  Integer offset;
  std::vector<Rational> D;
  Integer n;
  bool operator<(const OracleWall& o) const {
    return std::tie(normal, offset, D, n) < std::tie(o.normal, o.offset, o.D, o.n);
  }
};

inline std::vector<OracleWall> brute_force_walls(const GammaTriple& g, const NSClass& h,
                                                 const std::vector<std::pair<long, long>>& box,
                                                 const SurfaceModel& m, long span, long nmax) {
  std::vector<OracleWall> out;
  size_t rk = m.rank();
  std::vector<NSClass> corners{NSClass(rk)};
  for (size_t i = 0; i < rk; ++i) {
    std::vector<NSClass> next;
    for (auto& c : corners)
      for (long v : {box[i].first, box[i].second}) {
        NSClass x = c;
        x[i] = v;
        next.push_back(x);
      }
    corners = next;
  }
  auto effective = [](const NSClass& d) {
    for (auto& x : d.coords)
      if (x < 0) return false;
    return true;
  };
  Rational xh = m.ns.pair(g.c1, h);
  for (auto& D : lattice_box(std::vector<std::pair<long, long>>(rk, {-span, span}))) {
    NSClass rest = g.c1 - D;
    if (D.is_zero() || rest.is_zero() || !effective(D) || !effective(rest)) continue;
    Rational dh = m.ns.pair(D, h);
    for (long n = -nmax; n <= nmax; ++n) {
      // (chi - (xi,a))/(xi,H) - (n - (D,a))/(D,H), scaled by (xi,H)(D,H)
      auto f = [&](const NSClass& a) -> Rational {
        return (g.chi - m.ns.pair(g.c1, a)) * dh - (Rational(n) - m.ns.pair(D, a)) * xh;
      };
      std::vector<Rational> coeffs(rk);
      Rational base = f(NSClass(rk));
      bool constant = true;
      for (size_t i = 0; i < rk; ++i) {
        coeffs[i] = f(basis_vector(rk, i)) - base;
        if (coeffs[i] != 0) constant = false;
      }
      if (constant) continue;
      bool neg = false, pos = false;
      for (auto& c : corners) {
        Rational v = f(c);
        if (v <= 0) neg = true;
        if (v >= 0) pos = true;
      }
      if (!(neg && pos)) continue;
      Rational content = rational_content([&] {
        auto all = coeffs;
        all.push_back(base);
        return all;
      }());
      auto lead = std::find_if(coeffs.begin(), coeffs.end(), [](const Rational& x) { return x != 0; });
      if (*lead < 0) content = -content;
      OracleWall w;
      for (auto& x : coeffs) w.normal.push_back(to_integer(x / content));
      w.offset = to_integer(base / content);
      w.D = D.coords;
      w.n = n;
      out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testsupport

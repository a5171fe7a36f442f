#include <doctest.h>

#include "support.hpp"

using namespace mukai;
using namespace testsupport;

TEST_CASE("parse_rational accepts integers and p/q") {
  CHECK(parse_rational("7") == 7);
  CHECK(parse_rational(" -3/6 ") == Rational(-1, 2));
  CHECK(parse_rational("0/5") == 0);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK(to_string(frac(-4, 6)) == "-2/3");
}

TEST_CASE("integer helpers") {
  CHECK(floor_q(Rational(-3, 2)) == -2);
  CHECK(ceil_q(Rational(-3, 2)) == -1);
  CHECK(mod_floor(-7, 3) == 2);
  CHECK(rational_content({Rational(2, 3), Rational(4, 9)}) == Rational(2, 9));
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    Integer a = uniform(rng, -500, 500), b = uniform(rng, -500, 500);
    auto e = ext_gcd(a, b);
    CHECK(e.g == gcd(a, b));
    CHECK(e.s * a + e.t * b == e.g);
  }
  CHECK_THROWS_AS(to_integer(Rational(1, 2)), DomainError);
}

TEST_CASE("linear solve and rank") {
  std::vector<QVector> cols{{1, 0, 1}, {0, 1, 1}};
  auto x = solve_columns(cols, {2, 3, 5});
  REQUIRE(x);
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 3);
  CHECK_FALSE(solve_columns(cols, {1, 1, 0}));
  CHECK(matrix_rank({{1, 2}, {2, 4}}) == 1);
}

TEST_CASE("lattices and presets") {
  auto e8 = e8_negative();
  CHECK(e8.rank == 8);
  for (size_t i = 0; i < 8; ++i) CHECK(e8.gram[i][i] == -2);
  // E8 is unimodular: the Gram determinant is 1 (computed via rank of the
  // adjoined identity system having a unique solution).
  QMatrix g(8, QVector(8));
  for (size_t i = 0; i < 8; ++i)
    for (size_t j = 0; j < 8; ++j) g[i][j] = Rational(e8.gram[i][j]);
  std::vector<QVector> cols = transpose(g);
  CHECK(matrix_rank(cols) == 8);
  for (size_t k = 0; k < 8; ++k) {
    auto x = solve_columns(cols, basis_vector(8, k).coords);
    REQUIRE(x);
    for (auto& q : *x) CHECK(is_integer(q));
  }
  auto en = enriques();
  CHECK(en.rank() == 10);
  CHECK(en.half_integral);
  CHECK_THROWS_AS(make_lattice({{0, 1}, {2, 0}}), DomainError);
  CHECK(parse_surface_kind("elliptic-with-section") == SurfaceKind::elliptic);
  CHECK_THROWS_AS(parse_surface_kind("torus"), ParseError);
}

TEST_CASE("mukai_pair examples") {
  auto k3 = k3_hyperbolic();
  CHECK(mukai_pair(omega_vector(k3), unit_vector(k3), k3) == -1);
  for (long n = 0; n < 6; ++n) {
    CHECK(mukai_square({1, NSClass(2), Rational(1 - n)}, k3) == 2 * n - 2);
    CHECK(mukai_square({2, NSClass(2), Rational(1 - 2 * n)}, k3) == 8 * n - 4);
  }
  auto bad = MukaiVector{1, NSClass(3), 0};
  CHECK_THROWS_AS(mukai_pair(bad, unit_vector(k3), k3), DomainError);
}

TEST_CASE("ring structure, exp and dual") {
  auto m = k3_elliptic(2);
  std::mt19937_64 rng(7);
  auto one = unit_vector(m), om = omega_vector(m);
  CHECK(mukai_mul(om, om, m) == zero_vector(m));
  NSClass D{1, -2, 1, 0};
  CHECK(mukai_mul({1, D, 0}, {1, D, 0}, m) == MukaiVector(1, 2 * D, m.ns.square(D)));
  CHECK(exp_class(NSClass(m.rank()), m) == one);
  // Riemann-Roch: chi(O(D)) = (D^2)/2 + 2 on a K3
  auto od = mukai_mul({1, NSClass(m.rank()), 1}, exp_class(D, m), m);
  CHECK(chi_of(od, m) == m.ns.square(D) / 2 + 2);
  for (int i = 0; i < 300; ++i) {
    auto u = rnd_vec(rng, m), v = rnd_vec(rng, m), w = rnd_vec(rng, m);
    Rational s = rnd_q(rng);
    CHECK(mukai_pair(u, v, m) == mukai_pair(v, u, m));
    CHECK(mukai_pair(s * u + v, w, m) == s * mukai_pair(u, w, m) + mukai_pair(v, w, m));
    CHECK(mukai_mul(u, v, m) == mukai_mul(v, u, m));
    CHECK(mukai_mul(mukai_mul(u, v, m), w, m) == mukai_mul(u, mukai_mul(v, w, m), m));
    CHECK(mukai_mul(one, u, m) == u);
    CHECK(dual(dual(u)) == u);
    CHECK(mukai_pair(dual(u), dual(v), m) == mukai_pair(u, v, m));
    CHECK(dual(mukai_mul(u, v, m)) == mukai_mul(dual(u), dual(v), m));
    auto d1 = rnd_class(rng, m.rank(), 5, false), d2 = rnd_class(rng, m.rank(), 5, false);
    CHECK(mukai_mul(exp_class(d1, m), exp_class(d2, m), m) == exp_class(d1 + d2, m));
    CHECK(mukai_pair(twist(u, d1, m), twist(v, d1, m), m) == mukai_pair(u, v, m));
  }
}

TEST_CASE("multiplicity and vector stats") {
  auto ab = abelian_hyperbolic();
  auto st = vector_stats({2, NSClass(2), -4}, ab);
  CHECK(st.multiplicity == 2);
  CHECK(st.primitive == MukaiVector(1, NSClass(2), -2));
  CHECK(multiplicity({1, NSClass(2), -3}, k3_hyperbolic()) == 1);
  CHECK_THROWS_AS(multiplicity(zero_vector(ab), ab), DomainError);
  auto en = enriques();
  // (3, 0, -3/2): integral coordinates (3, 0, -3) give m = 3
  CHECK(multiplicity({3, NSClass(10), Rational(-3, 2)}, en) == 3);
  CHECK(multiplicity({3, NSClass(10), Rational(-1, 2)}, en) == 1);
  CHECK_FALSE(is_integral_vector({2, NSClass(10), Rational(1, 2)}, en));
  std::mt19937_64 rng(3);
  auto k3 = k3_elliptic(1);
  for (int i = 0; i < 200; ++i) {
    MukaiVector v{Rational(uniform(rng, -6, 6)), rnd_class(rng, 3, 6, true), Rational(uniform(rng, -6, 6))};
    if (v.is_zero()) continue;
    auto s = vector_stats(v, k3);
    CHECK(s.square == s.multiplicity * s.multiplicity * mukai_square(s.primitive, k3));
    CHECK(multiplicity(twist(v, rnd_class(rng, 3, 4, true), k3), k3) == s.multiplicity);
  }
}

TEST_CASE("chi and gamma conventions") {
  auto k3 = k3_hyperbolic(), en = enriques(), ab = abelian_hyperbolic();
  CHECK(chi_of({1, NSClass(2), 1}, k3) == 2);
  CHECK(chi_of({1, NSClass(10), Rational(1, 2)}, en) == 1);
  CHECK(chi_of({3, NSClass{1, 1}, 5}, ab) == 5);
  CHECK(gamma_of({1, NSClass(2), -4}, k3) == GammaTriple{1, NSClass(2), -3});
  auto ke = k3_elliptic();
  CHECK(gamma_of({0, NSClass{1, 0}, 1}, ke) == GammaTriple{0, NSClass{1, 0}, 1});
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto v = rnd_vec(rng, en);
    CHECK(from_gamma(gamma_of(v, en), en) == v);
  }
}

TEST_CASE("effective cone oracle") {
  auto m = elliptic_rational();
  CHECK(m.is_effective(NSClass{1, 2}));
  CHECK(m.is_effective(NSClass{0, 0}));
  CHECK_FALSE(m.is_effective(NSClass{-1, 2}));
  SurfaceModel g = m;
  g.kind = SurfaceKind::generic;
  CHECK_THROWS_AS(g.is_effective(NSClass{1, 1}), DomainError);
  g.effective_generators = {NSClass{1, 0}, NSClass{1, 1}};
  CHECK(g.is_effective(NSClass{2, 1}));
  CHECK_FALSE(g.is_effective(NSClass{0, 1}));
}

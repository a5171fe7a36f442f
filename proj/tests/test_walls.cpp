#include <doctest.h>

#include "support.hpp"

using namespace mukai;
using namespace testsupport;

namespace {

// K3 model <H> + <D> with (H^2) = 2, (D^2) = -2n.
SurfaceModel k3_with_d(long n) {
  SurfaceModel m;
  m.kind = SurfaceKind::k3;
  m.ns = make_lattice({{2, 0}, {0, -2 * n}}, {"h", "d"});
  m.chi_O = 2;
  m.epsilon = 1;
  m.polarization = NSClass{1, 0};
  validate_model(m);
  return m;
}

}  // namespace

TEST_CASE("twisted invariants") {
  auto m = k3_hyperbolic();
  MukaiVector v{3, NSClass{1, 2}, -1};
  TwistData td{MukaiVector{1, NSClass(2), 1}, std::nullopt, m.polarization};
  auto ti = twisted_invariants(v, td, m);
  CHECK(ti.rk == 3);
  CHECK(ti.deg == m.ns.pair(v.c, m.polarization));
  CHECK(ti.chi == chi_of(v, m));
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    MukaiVector g{Rational(uniform(rng, 1, 5)), rnd_class(rng, 2, 4, false), rnd_q(rng)};
    auto a = twisted_invariants(v, {g, std::nullopt, m.polarization}, m);
    Rational s = frac(uniform(rng, 1, 7), uniform(rng, 1, 7));
    auto b = twisted_invariants(v, {s * g, std::nullopt, m.polarization}, m);
    CHECK(a.deg / a.rk == b.deg / b.rk);
    CHECK(a.chi / a.rk == b.chi / b.rk);
  }
  // Cor. ext vector with (D, H) = 0 has deg_G = 0 for G = O_X
  NSClass h{1, 1};
  auto ce = twisted_invariants({2, NSClass{1, -1}, -3}, {unit_vector(m), std::nullopt, h}, m);
  CHECK(ce.deg == 0);
  CHECK_THROWS_AS(twisted_invariants(v, {MukaiVector{0, NSClass(2), 1}, std::nullopt, h}, m), DomainError);
  auto b = beta_reduction(NSClass{3, 1}, m.polarization, m);
  CHECK(m.ns.pair(b, m.polarization) == 0);
}

TEST_CASE("slope_dim1") {
  auto m = elliptic_rational();
  NSClass h{1, 3};
  GammaTriple g{0, NSClass{1, 2}, 1};
  CHECK(slope_dim1(g, NSClass{0, 1}, h, m) == 0);
  CHECK(slope_dim1(g, NSClass(2), h, m) == Rational(1, 4));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    NSClass a = rnd_class(rng, 2, 5, false), b = rnd_class(rng, 2, 5, false);
    Rational s = rnd_q(rng);
    Rational lhs = slope_dim1(g, s * a + (1 - s) * b, h, m);
    CHECK(lhs == s * slope_dim1(g, a, h, m) + (1 - s) * slope_dim1(g, b, h, m));
  }
  CHECK_THROWS_AS(slope_dim1({1, NSClass{1, 2}, 1}, NSClass(2), h, m), DomainError);
  CHECK_THROWS_AS(slope_dim1({0, NSClass{-1, 0}, 1}, NSClass(2), h, m), DomainError);
}

TEST_CASE("walls on the rank-two elliptic model") {
  auto m = elliptic_rational();
  NSClass h{1, 3};
  GammaTriple g{0, NSClass{1, 2}, 1};
  Box box{{{-2, 2}, {-2, 2}}};
  auto walls = walls_dim1(g, h, box, m);
  bool found = false;
  for (auto& w : walls)
    if (w.D == NSClass{0, 1} && w.n == 0) {
      CHECK(w.normal == std::vector<Integer>{3, -1});
      CHECK(w.offset == 1);
      found = true;
    }
  CHECK(found);

  std::vector<OracleWall> got;
  for (auto& w : walls) got.push_back({w.normal, w.offset, w.D.coords, w.n});
  std::sort(got.begin(), got.end());
  auto want = brute_force_walls(g, h, {{-2, 2}, {-2, 2}}, m, 4, 40);
  CHECK(got.size() == want.size());
  CHECK((got.size() == want.size() && std::equal(got.begin(), got.end(), want.begin(), [](auto& a, auto& b) {
           return !(a < b) && !(b < a);
         })));

  // refining the box only removes walls
  auto sub = walls_dim1(g, h, Box{{{-1, 1}, {0, 2}}}, m);
  for (auto& w : sub) {
    bool in = std::any_of(walls.begin(), walls.end(), [&](const Wall& x) {
      return x.same_hyperplane(w) && x.D == w.D && x.n == w.n;
    });
    CHECK(in);
  }
  // xi = f has no nontrivial decomposition
  CHECK(walls_dim1({0, NSClass{0, 1}, 1}, h, box, m).empty());
  CHECK_THROWS_AS(walls_dim1({1, NSClass{1, 2}, 1}, h, box, m), DomainError);
  CHECK_THROWS_AS(walls_dim1(g, h, Box{{{2, -2}, {0, 1}}}, m), DomainError);
}

TEST_CASE("chambers and paths") {
  auto m = elliptic_rational();
  NSClass h{1, 3};
  GammaTriple g{0, NSClass{1, 2}, 1};
  auto walls = walls_dim1(g, h, Box{{{-2, 2}, {-2, 2}}}, m);
  auto on = chamber_locate(NSClass{0, 1}, walls);
  CHECK(std::holds_alternative<OnWall>(on));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    NSClass a = rnd_class(rng, 2, 2, false), b = rnd_class(rng, 2, 2, false);
    auto ca = chamber_locate(a, walls), cb = chamber_locate(b, walls);
    if (!std::holds_alternative<Chamber>(ca) || !std::holds_alternative<Chamber>(cb)) continue;
    auto path = chamber_path(a, b, walls);
    bool same = std::get<Chamber>(ca).signs == std::get<Chamber>(cb).signs;
    // Walls are lines: equal sign vectors iff the segment crosses nothing.
    CHECK(same == path.empty());
    for (auto& c : path) {
      CHECK(c.t > 0);
      CHECK(c.t < 1);
      CHECK(walls[c.wall].evaluate(a + c.t * (b - a)) == 0);
    }
    auto back = chamber_path(b, a, walls);
    REQUIRE(back.size() == path.size());
    for (size_t k = 0; k < path.size(); ++k) CHECK(back[k].t == 1 - path[path.size() - 1 - k].t);
    // slope order of the two sides of each wall's datum is constant on a chamber
    if (same)
      for (auto& w : walls) {
        GammaTriple sub{0, w.D, Rational(w.n)};
        int sa = sign(slope_dim1(sub, a, h, m) - slope_dim1(g, a, h, m));
        int sb = sign(slope_dim1(sub, b, h, m) - slope_dim1(g, b, h, m));
        CHECK(sa == sb);
      }
  }
  NSClass generic{Rational(1, 7), Rational(2, 11)};
  REQUIRE(std::holds_alternative<Chamber>(chamber_locate(generic, walls)));
  CHECK(chamber_path(generic, generic, walls).empty());
  CHECK_THROWS_AS(chamber_path(NSClass{0, 1}, NSClass{1, 1}, walls), DomainError);
}

TEST_CASE("wall_solve_tf") {
  for (long n = 1; n <= 10; ++n) {
    auto m = k3_with_d(n);
    NSClass D{0, 1};
    MukaiVector v{2, NSClass(2), Rational(1 - 2 * n)}, vs{1, D, Rational(-n)};
    auto sol = wall_solve_tf(v, vs, m.polarization, D, m);
    REQUIRE(sol.roots.size() == 1);
    CHECK(sol.roots[0] == Rational(1, 4 * n));
    auto scaled = wall_solve_tf(3 * v, 5 * vs, m.polarization, D, m);
    CHECK(scaled.roots == sol.roots);
  }
  auto m = k3_with_d(2);
  MukaiVector v{2, NSClass(2), -3};
  CHECK(wall_solve_tf(v, Rational(1, 2) * v, m.polarization, NSClass{0, 1}, m).no_wall);
  CHECK_THROWS_AS(wall_solve_tf(v, {1, NSClass{1, 0}, 0}, m.polarization, NSClass{0, 1}, m), DomainError);
}

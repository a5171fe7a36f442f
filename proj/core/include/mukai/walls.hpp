#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "mukai/lattice.hpp"

namespace mukai {

struct TwistData {
  std::optional<MukaiVector> G;  // twisting object class, rk > 0
  std::optional<NSClass> alpha;  // or a Q-divisor twist
  NSClass H;
};

struct TwistedInvariants {
  Rational rk, deg, chi;
};

// rk_G = r_G r_v, deg_G = r_G (c_v,H) - r_v (c_G,H), chi_G = r_G chi(v exp(-c_G/r_G)).
// With only alpha given, G is taken to be exp(alpha) (r_G = 1).
TwistedInvariants twisted_invariants(const MukaiVector& v, const TwistData& td,
                                     const SurfaceModel& m);
// Removes the H-component: alpha - ((alpha,H)/(H^2)) H.
NSClass beta_reduction(const NSClass& alpha, const NSClass& h, const SurfaceModel& m);

Rational slope_dim1(const GammaTriple& g, const NSClass& alpha, const NSClass& h,
                    const SurfaceModel& m);

struct Box {
  std::vector<std::pair<Rational, Rational>> bounds;  // per NS coordinate, lo <= hi
  bool contains(const NSClass& a) const;
};

struct Wall {
  std::vector<Integer> normal;  // functional coefficients on alpha-coordinates
  Integer offset;               // wall: normal . alpha + offset = 0
  NSClass D;
  Integer n;

  Rational evaluate(const NSClass& alpha) const;
  bool same_hyperplane(const Wall& o) const { return normal == o.normal && offset == o.offset; }
};

// Unnormalised functional of the datum (D, n): coefficients and offset.
std::pair<std::vector<Rational>, Rational> wall_functional(const GammaTriple& g, const NSClass& D,
                                                           const Rational& n, const NSClass& h,
                                                           const SurfaceModel& m);
// Scales to coprime integers with positive leading nonzero coefficient.
// Returns nullopt if the functional part vanishes.
std::optional<std::pair<std::vector<Integer>, Integer>> normalize_functional(
    const std::vector<Rational>& coeffs, const Rational& offset);

// Effective decompositions xi = D + D' with D, D' effective and nonzero.
std::vector<NSClass> effective_decompositions(const NSClass& xi, const SurfaceModel& m);

std::vector<Wall> walls_dim1(const GammaTriple& g, const NSClass& h, const Box& box,
                             const SurfaceModel& m);

struct Chamber {
  std::vector<int> signs;
  NSClass sample;
};
struct OnWall {
  std::vector<size_t> indices;
};
std::variant<Chamber, OnWall> chamber_locate(const NSClass& alpha, const std::vector<Wall>& walls);

struct Crossing {
  size_t wall;
  Rational t;
};
std::vector<Crossing> chamber_path(const NSClass& a, const NSClass& b, const std::vector<Wall>& walls);

struct WallSolution {
  bool no_wall = false;              // both sides identical in t
  std::vector<Rational> roots;       // rational roots, ascending
  std::vector<Rational> irrational_minpoly;  // coefficients c0 + c1 t + c2 t^2, if any
};

WallSolution wall_solve_tf(const MukaiVector& v, const MukaiVector& v_sub, const NSClass& h,
                           const NSClass& dir, const SurfaceModel& m);

}  // namespace mukai

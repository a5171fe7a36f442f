#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mukai/lattice.hpp"
#include "mukai/series.hpp"

namespace mukai {

enum class Move { twist, fm_swap, deform };
std::string to_string(Move m);

struct MoveStep {
  Move move;
  std::string detail;
  MukaiVector before, after;
  Rational square;      // <after^2>
  Integer multiplicity;  // m(after)
  bool external = false;  // deformation equivalence taken from outside the trace
};

struct MoveTrace {
  MukaiVector start, end;
  std::vector<MoveStep> steps;
  std::vector<std::pair<std::string, std::string>> params;  // chosen lambda, k, ...
};

// K3 or abelian model on the hyperbolic plane <e,f>.
MoveTrace reduce_to_rank_one(const MukaiVector& v, const SurfaceModel& m);

struct EnriquesReduction {
  MoveTrace trace;
  Integer n;           // (<v^2> + 1) / 2
  LaurentPoly e_hilb;  // e(Hilb^n) of the default Enriques Hodge data
};
EnriquesReduction enriques_reduce(const MukaiVector& v, const SurfaceModel& m);

struct RankDegreeStep {
  Move move;
  Integer r0, d0, r1, d1;
  Integer k;  // twist amount (sigma multiple) for twist steps
};
struct GcdTrace {
  std::vector<RankDegreeStep> steps;
  std::vector<Integer> ranks;  // rank sequence, starting with r
};
// Twists by k sigma put d into (0, r]; the fiberwise transform sends
// (r, d) to (d, -r). Ranks follow r_{i+1} = (-r_{i-1}) mod r_i taken in (0, r_i].
GcdTrace elliptic_gcd_reduce(const Integer& r, const Integer& d);

struct FiltrationDims {
  Rational sum_form;        // sum dims + sum_{i<j} <vi,vj>
  Rational deficit_form;    // <v^2>+1 - (sum(<vi^2>+1) + sum_{i<j} <vi,vj>)
  Rational deficit_closed;  // sum_{i<j} <vi,vj> - (s-1)
};
FiltrationDims filtration_stack_dim(const std::vector<MukaiVector>& vs, const std::vector<Rational>& dims,
                                    const SurfaceModel& m);

enum class DimFlavor { stack, coarse };
Rational moduli_dim(const MukaiVector& v, const SurfaceModel& m, DimFlavor flavor);
Rational fiber_dim(const NSClass& xi, const SurfaceModel& m);

struct PssBound {
  Rational bound;
  bool strict;
};
PssBound pss_bound(const MukaiVector& v, const SurfaceModel& m);

struct GitDims {
  Rational dimV, dimVp, dim_alpha_VW, dim_alpha_VpW;
  std::vector<Rational> dim_alpha_i_V;  // dim alpha_i(V)
  std::vector<Rational> dim_V_i;        // dim ker(alpha_i restricted to V')
};
struct GitData {
  Rational h_m;
  std::vector<Rational> h_i_m, eps;
  Rational a1, n;
};
Rational git_beta0(const GitData& data);
Rational git_weight(const GitDims& dims, const GitData& data);
// Closed form valid when dimV = h(m), dim alpha(V (x) W) = h(m) + a1 n and
// dim alpha_i(V) = h_i(m).
Rational git_weight_factored(const Rational& dimVp, const Rational& dim_alpha_VpW,
                             const std::vector<Rational>& dim_V_i, const GitData& data);
bool git_semistable(const std::vector<GitDims>& subspaces, const GitData& data);

struct ParabolicEuler {
  Rational form1;          // chi(F_{l+1}) + sum alpha_i chi(gr_i)
  Rational form2;          // chi(E) - sum eps_i chi(E/F_{i+1})
  Rational form2_literal;  // chi(E) - sum eps_i chi(gr_i)
};
ParabolicEuler parabolic_euler(const Rational& chi_F_top, const std::vector<Rational>& chi_gr,
                               const std::vector<Rational>& alphas, const Rational& chi_E);

}  // namespace mukai

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <random>
#include <variant>
#include <vector>

#include "mukai/lattice.hpp"
#include "mukai/linalg.hpp"

namespace mukai {

// ---- isotropic decomposition ----------------------------------------------

struct IsotropicCoords {
  Rational l, a, d;
  NSClass D;  // component in H-perp
};

IsotropicCoords isotropic_coords(const MukaiVector& v, const MukaiVector& v1, const NSClass& h,
                                 const SurfaceModel& m);
MukaiVector isotropic_reconstruct(const IsotropicCoords& k, const MukaiVector& v1,
                                  const NSClass& h, const SurfaceModel& m);

struct IsotropicFmData {
  MukaiVector v1, w1;
  NSClass h;
  QMatrix hat;  // NS(X) -> NS(Y), column convention: x_hat = hat * x
};

IsotropicFmData make_isotropic_fm(const MukaiVector& v1, const MukaiVector& w1, const NSClass& h,
                                  const SurfaceModel& x, const SurfaceModel& y,
                                  QMatrix hat = {});
MukaiVector isotropic_fm(const MukaiVector& v, const IsotropicFmData& ctx, const SurfaceModel& x,
                         const SurfaceModel& y);
NSClass hat_of(const NSClass& d, const IsotropicFmData& ctx);

struct FmPreconditions {
  Rational deg_g1, l, a;
  bool deg_g1_zero = false, l_pos = false, a_pos = false;
  bool applicable() const { return deg_g1_zero && l_pos && a_pos; }
};

FmPreconditions fm_preconditions(const MukaiVector& v, const MukaiVector& v1, const SurfaceModel& m,
                                 const NSClass& h);

// The transform of the rank-two hyperbolic example: r + cD - a w  ->  a - cD - r w.
// Realized as -H with v1 = w1 = (1,0,0) and identity hat map.
MukaiVector cor_ext_transform(const MukaiVector& v, const SurfaceModel& m);

// ---- Enriques (-1)-reflection ---------------------------------------------

MukaiVector enriques_reflection(const MukaiVector& v0, const MukaiVector& x, const SurfaceModel& m);

// ---- elliptic transforms (gamma level) -------------------------------------

struct JacobianInput {
  Rational r, l;
  NSClass D;  // in <sigma,f>-perp
  Rational n;  // -ch2
};

struct EllipticBasis {
  size_t sigma, f;
};
EllipticBasis elliptic_basis(const SurfaceModel& m);

JacobianInput jacobian_input_from_gamma(const GammaTriple& g, const SurfaceModel& m);
GammaTriple elliptic_jacobian_fm(const JacobianInput& in, const SurfaceModel& m);
// Inverse on images: recovers (r, l, D, n).
JacobianInput elliptic_jacobian_inverse(const GammaTriple& g, const SurfaceModel& m);

struct RelativeParams {
  Integer r = 1, d = 0, k = 0;
  Rational chi_O_sigma = 1;
  Rational chi_F0_f = 0;
};

// Returns -gamma(F(x)) for x = a E0 + b E0|f + c C.
GammaTriple elliptic_relative_fm(const Rational& a, const Rational& b, const Rational& c,
                                 const RelativeParams& p, const SurfaceModel& m);
// Mukai vectors of E0, E0|f, C. The top coordinate of E0 is fixed by
// <E0^2> = (sigma^2), which makes the induced map an isometry.
std::array<MukaiVector, 3> relative_basis(const RelativeParams& p, const SurfaceModel& m);

// ---- CohMap ----------------------------------------------------------------

struct CohMap;

struct TwistMap {
  NSClass D;
};
struct ReflectionMap {
  MukaiVector v0;
};
struct IsotropicMap {
  IsotropicFmData data;
};
struct JacobianMap {};
struct RelativeMap {
  RelativeParams params;
};
struct CompositeMap {
  std::vector<CohMap> maps;
};

struct CohMap {
  std::variant<TwistMap, ReflectionMap, IsotropicMap, JacobianMap, RelativeMap, CompositeMap> kind;
  std::shared_ptr<const SurfaceModel> source, target;
  int sign = 1;

  std::string kind_name() const;
};

CohMap twist_map(const NSClass& D, const SurfaceModel& m);
CohMap reflection_map(const MukaiVector& v0, const SurfaceModel& m);
CohMap isotropic_map(const IsotropicFmData& data, const SurfaceModel& x, const SurfaceModel& y,
                     int sign = 1);
CohMap jacobian_map(const SurfaceModel& m);
CohMap relative_map(const RelativeParams& p, const SurfaceModel& m);
CohMap compose(const std::vector<CohMap>& maps);

MukaiVector apply(const CohMap& f, const MukaiVector& v);

// Random vector from the map's declared domain (the full space unless the map
// is only defined on a subspace).
MukaiVector sample_domain(const CohMap& f, std::mt19937_64& rng, int bound = 6);
MukaiVector random_vector(const SurfaceModel& m, std::mt19937_64& rng, int bound = 6,
                          bool integral = false);
Rational random_rational(std::mt19937_64& rng, int bound, bool integral = false);

struct IsometryReport {
  bool ok = true;
  size_t samples = 0;
  std::vector<MukaiVector> counterexample;
};
IsometryReport check_isometry(const CohMap& f, size_t samples, uint64_t seed = 1);

}  // namespace mukai

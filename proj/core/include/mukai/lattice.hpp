#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mukai/rational.hpp"

namespace mukai {

class NSClass {
 public:
  NSClass() = default;
  explicit NSClass(size_t rank) : coords(rank, Rational(0)) {}
  NSClass(std::initializer_list<Rational> xs) : coords(xs) {}
  explicit NSClass(std::vector<Rational> xs) : coords(std::move(xs)) {}

  size_t size() const { return coords.size(); }
  Rational& operator[](size_t i) { return coords[i]; }
  const Rational& operator[](size_t i) const { return coords[i]; }
  bool is_zero() const;
  bool is_integral() const;

  NSClass& operator+=(const NSClass& o);
  NSClass& operator-=(const NSClass& o);
  NSClass& operator*=(const Rational& s);

  friend bool operator==(const NSClass&, const NSClass&) = default;

  std::vector<Rational> coords;
};

NSClass operator+(NSClass a, const NSClass& b);
NSClass operator-(NSClass a, const NSClass& b);
NSClass operator-(NSClass a);
NSClass operator*(const Rational& s, NSClass a);
NSClass basis_vector(size_t rank, size_t i);

struct NSLattice {
  size_t rank = 0;
  std::vector<std::vector<Integer>> gram;
  std::vector<std::string> basis_names;

  Rational pair(const NSClass& a, const NSClass& b) const;
  Rational square(const NSClass& a) const { return pair(a, a); }
  // gram * a, the coefficient vector of the functional (a, -).
  std::vector<Rational> dual_coeffs(const NSClass& a) const;
  std::optional<size_t> index_of(const std::string& name) const;
};

NSLattice make_lattice(std::vector<std::vector<Integer>> gram,
                       std::vector<std::string> names = {});
NSLattice hyperbolic_plane(const std::string& a = "e", const std::string& b = "f");
NSLattice e8_negative();
NSLattice direct_sum(const NSLattice& a, const NSLattice& b);

enum class SurfaceKind { abelian, k3, enriques, elliptic, generic };
std::string to_string(SurfaceKind k);
SurfaceKind parse_surface_kind(const std::string& s);

struct SurfaceModel {
  SurfaceKind kind = SurfaceKind::generic;
  NSLattice ns;
  int chi_O = 0;
  int epsilon = 0;
  NSClass polarization;
  std::vector<NSClass> effective_generators;  // empty: kind default
  int h1_O = 0;
  bool half_integral = false;

  size_t rank() const { return ns.rank; }
  bool is_effective(const NSClass& d) const;
  // Generators actually used by is_effective.
  std::vector<NSClass> cone_generators() const;
};

void validate_model(const SurfaceModel& m);
// Same kind, Gram matrix and chi(O_X); polarization and cone are ignored.
bool same_model(const SurfaceModel& a, const SurfaceModel& b);

// Presets. H defaults are ample classes with positive square.
SurfaceModel k3_hyperbolic();        // NS = U = <e,f>, H = e + 2f
SurfaceModel k3_elliptic(size_t extra_rank = 0);  // <sigma,f> with sigma^2 = -2 (+ A1 summands)
SurfaceModel abelian_hyperbolic();   // NS = U
SurfaceModel elliptic_rational();    // <sigma,f> with sigma^2 = -1, chi_O = 1, H = sigma + 3f
SurfaceModel enriques();             // U(sigma,f) + E8(-1), H = sigma + 2f

struct MukaiVector {
  Rational r;
  NSClass c;
  Rational t;

  MukaiVector() = default;
  MukaiVector(Rational r_, NSClass c_, Rational t_)
      : r(std::move(r_)), c(std::move(c_)), t(std::move(t_)) {}

  bool is_zero() const { return r == 0 && t == 0 && c.is_zero(); }
  friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

MukaiVector operator+(const MukaiVector& a, const MukaiVector& b);
MukaiVector operator-(const MukaiVector& a, const MukaiVector& b);
MukaiVector operator-(const MukaiVector& a);
MukaiVector operator*(const Rational& s, const MukaiVector& a);

MukaiVector unit_vector(const SurfaceModel& m);   // (1, 0, 0)
MukaiVector omega_vector(const SurfaceModel& m);  // (0, 0, 1)
MukaiVector zero_vector(const SurfaceModel& m);

void check_same_lattice(const MukaiVector& v, const SurfaceModel& m);

Rational mukai_pair(const MukaiVector& v, const MukaiVector& w, const SurfaceModel& m);
Rational mukai_square(const MukaiVector& v, const SurfaceModel& m);
MukaiVector mukai_mul(const MukaiVector& v, const MukaiVector& w, const SurfaceModel& m);
MukaiVector exp_class(const NSClass& d, const SurfaceModel& m);
MukaiVector twist(const MukaiVector& v, const NSClass& d, const SurfaceModel& m);
MukaiVector dual(const MukaiVector& v);

struct VectorStats {
  Rational square;
  bool isotropic = false;
  Integer multiplicity;
  MukaiVector primitive;
};

// Coordinates in the integral Mukai lattice: (r, c, t) in general,
// (r, c, t - r/2) on half-integral models. Throws if v is not integral.
std::vector<Integer> integral_coords(const MukaiVector& v, const SurfaceModel& m);
bool is_integral_vector(const MukaiVector& v, const SurfaceModel& m);
VectorStats vector_stats(const MukaiVector& v, const SurfaceModel& m);
Integer multiplicity(const MukaiVector& v, const SurfaceModel& m);

struct GammaTriple {
  Rational rank;
  NSClass c1;
  Rational chi;
  friend bool operator==(const GammaTriple&, const GammaTriple&) = default;
};

Rational chi_of(const MukaiVector& v, const SurfaceModel& m);
Rational ch2_of(const MukaiVector& v, const SurfaceModel& m);
GammaTriple gamma_of(const MukaiVector& v, const SurfaceModel& m);
MukaiVector from_gamma(const GammaTriple& g, const SurfaceModel& m);
GammaTriple operator-(const GammaTriple& g);

}  // namespace mukai

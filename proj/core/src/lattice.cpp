#include "mukai/lattice.hpp"

#include <algorithm>
#include <functional>

#include "mukai/linalg.hpp"

namespace mukai {

bool NSClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return x == 0; });
}

bool NSClass::is_integral() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& x) { return is_integer(x); });
}

NSClass& NSClass::operator+=(const NSClass& o) {
  if (o.size() != size()) throw DomainError("lattice_rank", "NS class length mismatch");
  for (size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

NSClass& NSClass::operator-=(const NSClass& o) {
  if (o.size() != size()) throw DomainError("lattice_rank", "NS class length mismatch");
  for (size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

NSClass& NSClass::operator*=(const Rational& s) {
  for (auto& x : coords) x *= s;
  return *this;
}

NSClass operator+(NSClass a, const NSClass& b) { return a += b; }
NSClass operator-(NSClass a, const NSClass& b) { return a -= b; }
NSClass operator-(NSClass a) { return a *= Rational(-1); }
NSClass operator*(const Rational& s, NSClass a) { return a *= s; }

NSClass basis_vector(size_t rank, size_t i) {
  NSClass e(rank);
  e[i] = 1;
  return e;
}

Rational NSLattice::pair(const NSClass& a, const NSClass& b) const {
  if (a.size() != rank || b.size() != rank)
    throw DomainError("lattice_rank", "class length differs from lattice rank " + std::to_string(rank));
  Rational s = 0;
  for (size_t i = 0; i < rank; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < rank; ++j)
      if (gram[i][j] != 0 && b[j] != 0) s += a[i] * Rational(gram[i][j]) * b[j];
  }
  return s;
}

std::vector<Rational> NSLattice::dual_coeffs(const NSClass& a) const {
  std::vector<Rational> out(rank, Rational(0));
  for (size_t i = 0; i < rank; ++i)
    for (size_t j = 0; j < rank; ++j) out[i] += Rational(gram[i][j]) * a[j];
  return out;
}

std::optional<size_t> NSLattice::index_of(const std::string& name) const {
  for (size_t i = 0; i < basis_names.size(); ++i)
    if (basis_names[i] == name) return i;
  return std::nullopt;
}

NSLattice make_lattice(std::vector<std::vector<Integer>> gram, std::vector<std::string> names) {
  NSLattice l;
  l.rank = gram.size();
  if (l.rank == 0) throw DomainError("lattice_rank", "empty Gram matrix");
  for (size_t i = 0; i < l.rank; ++i) {
    if (gram[i].size() != l.rank) throw DomainError("gram_square", "Gram matrix is not square");
    for (size_t j = 0; j < i; ++j)
      if (gram[i][j] != gram[j][i]) throw DomainError("gram_symmetric", "Gram matrix is not symmetric");
  }
  if (names.empty())
    for (size_t i = 0; i < l.rank; ++i) names.push_back("b" + std::to_string(i + 1));
  if (names.size() != l.rank) throw DomainError("lattice_rank", "basis name count mismatch");
  l.gram = std::move(gram);
  l.basis_names = std::move(names);
  return l;
}

NSLattice hyperbolic_plane(const std::string& a, const std::string& b) {
  return make_lattice({{0, 1}, {1, 0}}, {a, b});
}

NSLattice e8_negative() {
  std::vector<std::vector<Integer>> g(8, std::vector<Integer>(8, 0));
  const int edges[7][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (int i = 0; i < 8; ++i) g[i][i] = -2;
  for (auto& e : edges) {
    g[e[0] - 1][e[1] - 1] = 1;
    g[e[1] - 1][e[0] - 1] = 1;
  }
  std::vector<std::string> names;
  for (int i = 1; i <= 8; ++i) names.push_back("e" + std::to_string(i));
  return make_lattice(std::move(g), std::move(names));
}

NSLattice direct_sum(const NSLattice& a, const NSLattice& b) {
  size_t n = a.rank + b.rank;
  std::vector<std::vector<Integer>> g(n, std::vector<Integer>(n, 0));
  for (size_t i = 0; i < a.rank; ++i)
    for (size_t j = 0; j < a.rank; ++j) g[i][j] = a.gram[i][j];
  for (size_t i = 0; i < b.rank; ++i)
    for (size_t j = 0; j < b.rank; ++j) g[a.rank + i][a.rank + j] = b.gram[i][j];
  auto names = a.basis_names;
  names.insert(names.end(), b.basis_names.begin(), b.basis_names.end());
  return make_lattice(std::move(g), std::move(names));
}

std::string to_string(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::abelian: return "abelian";
    case SurfaceKind::k3: return "k3";
    case SurfaceKind::enriques: return "enriques";
    case SurfaceKind::elliptic: return "elliptic";
    case SurfaceKind::generic: return "generic";
  }
  return "generic";
}

SurfaceKind parse_surface_kind(const std::string& s) {
  if (s == "abelian") return SurfaceKind::abelian;
  if (s == "k3") return SurfaceKind::k3;
  if (s == "enriques") return SurfaceKind::enriques;
  if (s == "elliptic" || s == "elliptic-with-section") return SurfaceKind::elliptic;
  if (s == "generic") return SurfaceKind::generic;
  throw ParseError("unknown surface kind '" + s + "'");
}

std::vector<NSClass> SurfaceModel::cone_generators() const {
  if (!effective_generators.empty()) return effective_generators;
  if (kind != SurfaceKind::generic) {
    for (auto [a, b] : {std::pair{"sigma", "f"}, std::pair{"e", "f"}}) {
      auto i = ns.index_of(a), j = ns.index_of(b);
      if (i && j) return {basis_vector(rank(), *i), basis_vector(rank(), *j)};
    }
  }
  throw DomainError("effective_oracle", "no effective cone generators configured");
}

bool SurfaceModel::is_effective(const NSClass& d) const {
  if (d.size() != rank()) throw DomainError("lattice_rank", "class length mismatch");
  if (d.is_zero()) return true;
  auto gens = cone_generators();
  std::vector<QVector> cols;
  for (auto& g : gens) cols.push_back(g.coords);
  size_t target = matrix_rank(cols);
  // Caratheodory: d lies in the cone iff it is a nonnegative combination of
  // some linearly independent subset of size rank(gens).
  size_t n = gens.size();
  std::vector<size_t> pick;
  std::function<bool(size_t)> rec = [&](size_t start) -> bool {
    if (pick.size() == target) {
      std::vector<QVector> sub;
      for (size_t k : pick) sub.push_back(cols[k]);
      if (matrix_rank(sub) != target) return false;
      auto x = solve_columns(sub, d.coords);
      if (!x) return false;
      return std::all_of(x->begin(), x->end(), [](const Rational& q) { return q >= 0; });
    }
    for (size_t k = start; k < n; ++k) {
      pick.push_back(k);
      if (rec(k + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

void validate_model(const SurfaceModel& m) {
  if (m.polarization.size() != m.rank())
    throw DomainError("polarization", "polarization length differs from NS rank");
  if (m.ns.square(m.polarization) <= 0)
    throw DomainError("polarization_positive", "(H^2) must be positive");
  auto expect = [&](int chi, int eps) {
    if (m.chi_O != chi) throw DomainError("chi_O", "chi(O_X) inconsistent with surface kind");
    if (eps >= 0 && m.epsilon != eps)
      throw DomainError("epsilon", "epsilon inconsistent with surface kind");
  };
  switch (m.kind) {
    case SurfaceKind::abelian: expect(0, 0); break;
    case SurfaceKind::k3: expect(2, 1); break;
    case SurfaceKind::enriques:
      expect(1, -1);
      if (!m.half_integral) throw DomainError("half_integral", "Enriques models are half-integral");
      break;
    default: break;
  }
  if (m.h1_O < 0) throw DomainError("h1_O", "h^1(O_X) must be nonnegative");
}

bool same_model(const SurfaceModel& a, const SurfaceModel& b) {
  return a.kind == b.kind && a.ns.gram == b.ns.gram && a.chi_O == b.chi_O &&
         a.half_integral == b.half_integral;
}

namespace {

SurfaceModel finish(SurfaceModel m, NSClass h) {
  m.polarization = std::move(h);
  validate_model(m);
  return m;
}

}  // namespace

SurfaceModel k3_hyperbolic() {
  SurfaceModel m;
  m.kind = SurfaceKind::k3;
  m.ns = hyperbolic_plane("e", "f");
  m.chi_O = 2;
  m.epsilon = 1;
  return finish(std::move(m), NSClass{1, 2});
}

SurfaceModel k3_elliptic(size_t extra_rank) {
  size_t n = 2 + extra_rank;
  std::vector<std::vector<Integer>> g(n, std::vector<Integer>(n, 0));
  g[0][0] = -2;
  g[0][1] = g[1][0] = 1;
  std::vector<std::string> names{"sigma", "f"};
  for (size_t i = 2; i < n; ++i) {
    g[i][i] = -2;
    names.push_back("d" + std::to_string(i - 1));
  }
  SurfaceModel m;
  m.kind = SurfaceKind::k3;
  m.ns = make_lattice(std::move(g), std::move(names));
  m.chi_O = 2;
  m.epsilon = 1;
  NSClass h(n);
  h[0] = 1;
  h[1] = 3;
  return finish(std::move(m), std::move(h));
}

SurfaceModel abelian_hyperbolic() {
  SurfaceModel m;
  m.kind = SurfaceKind::abelian;
  m.ns = hyperbolic_plane("e", "f");
  m.chi_O = 0;
  m.epsilon = 0;
  m.h1_O = 2;
  return finish(std::move(m), NSClass{1, 2});
}

SurfaceModel elliptic_rational() {
  SurfaceModel m;
  m.kind = SurfaceKind::elliptic;
  m.ns = make_lattice({{-1, 1}, {1, 0}}, {"sigma", "f"});
  m.chi_O = 1;
  return finish(std::move(m), NSClass{1, 3});
}

SurfaceModel enriques() {
  SurfaceModel m;
  m.kind = SurfaceKind::enriques;
  m.ns = direct_sum(hyperbolic_plane("sigma", "f"), e8_negative());
  m.chi_O = 1;
  m.half_integral = true;
  NSClass h(10);
  h[0] = 1;
  h[1] = 2;
  return finish(std::move(m), std::move(h));
}

MukaiVector operator+(const MukaiVector& a, const MukaiVector& b) {
  return {a.r + b.r, a.c + b.c, a.t + b.t};
}
MukaiVector operator-(const MukaiVector& a, const MukaiVector& b) {
  return {a.r - b.r, a.c - b.c, a.t - b.t};
}
MukaiVector operator-(const MukaiVector& a) { return {-a.r, -a.c, -a.t}; }
MukaiVector operator*(const Rational& s, const MukaiVector& a) {
  return {s * a.r, s * a.c, s * a.t};
}

MukaiVector unit_vector(const SurfaceModel& m) { return {1, NSClass(m.rank()), 0}; }
MukaiVector omega_vector(const SurfaceModel& m) { return {0, NSClass(m.rank()), 1}; }
MukaiVector zero_vector(const SurfaceModel& m) { return {0, NSClass(m.rank()), 0}; }

void check_same_lattice(const MukaiVector& v, const SurfaceModel& m) {
  if (v.c.size() != m.rank())
    throw DomainError("lattice_rank", "vector has NS length " + std::to_string(v.c.size()) +
                                          ", model rank is " + std::to_string(m.rank()));
}

Rational mukai_pair(const MukaiVector& v, const MukaiVector& w, const SurfaceModel& m) {
  check_same_lattice(v, m);
  check_same_lattice(w, m);
  return m.ns.pair(v.c, w.c) - v.r * w.t - v.t * w.r;
}

Rational mukai_square(const MukaiVector& v, const SurfaceModel& m) { return mukai_pair(v, v, m); }

MukaiVector mukai_mul(const MukaiVector& v, const MukaiVector& w, const SurfaceModel& m) {
  check_same_lattice(v, m);
  check_same_lattice(w, m);
  return {v.r * w.r, v.r * w.c + w.r * v.c, v.r * w.t + w.r * v.t + m.ns.pair(v.c, w.c)};
}

MukaiVector exp_class(const NSClass& d, const SurfaceModel& m) {
  if (d.size() != m.rank()) throw DomainError("lattice_rank", "class length mismatch");
  return {1, d, m.ns.square(d) / 2};
}

MukaiVector twist(const MukaiVector& v, const NSClass& d, const SurfaceModel& m) {
  return mukai_mul(v, exp_class(d, m), m);
}

MukaiVector dual(const MukaiVector& v) { return {v.r, -v.c, v.t}; }

std::vector<Integer> integral_coords(const MukaiVector& v, const SurfaceModel& m) {
  check_same_lattice(v, m);
  std::vector<Integer> out;
  out.push_back(to_integer(v.r));
  for (auto& x : v.c.coords) out.push_back(to_integer(x));
  out.push_back(to_integer(m.half_integral ? v.t - v.r / 2 : v.t));
  return out;
}

bool is_integral_vector(const MukaiVector& v, const SurfaceModel& m) {
  try {
    integral_coords(v, m);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

Integer multiplicity(const MukaiVector& v, const SurfaceModel& m) {
  if (v.is_zero()) throw DomainError("nonzero_vector", "multiplicity of the zero vector");
  Integer g = 0;
  for (auto& x : integral_coords(v, m)) g = gcd(g, x);
  return g;
}

VectorStats vector_stats(const MukaiVector& v, const SurfaceModel& m) {
  VectorStats s;
  s.square = mukai_square(v, m);
  s.isotropic = s.square == 0;
  s.multiplicity = multiplicity(v, m);
  s.primitive = Rational(1, 1) / Rational(s.multiplicity) * v;
  return s;
}

Rational chi_of(const MukaiVector& v, const SurfaceModel& m) {
  return v.t + v.r * frac(m.chi_O, 2);
}

Rational ch2_of(const MukaiVector& v, const SurfaceModel& m) {
  return v.t - v.r * frac(m.chi_O, 2);
}

GammaTriple gamma_of(const MukaiVector& v, const SurfaceModel& m) {
  check_same_lattice(v, m);
  return {v.r, v.c, chi_of(v, m)};
}

MukaiVector from_gamma(const GammaTriple& g, const SurfaceModel& m) {
  if (g.c1.size() != m.rank()) throw DomainError("lattice_rank", "class length mismatch");
  return {g.rank, g.c1, g.chi - g.rank * frac(m.chi_O, 2)};
}

GammaTriple operator-(const GammaTriple& g) { return {-g.rank, -g.c1, -g.chi}; }

}  // namespace mukai

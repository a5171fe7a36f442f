#include "mukai/fm.hpp"

namespace mukai {

namespace {

void require_isotropic_v1(const MukaiVector& v1, const SurfaceModel& m) {
  if (mukai_square(v1, m) != 0) throw DomainError("v1_isotropic", "<v1^2> must vanish");
  if (v1.r <= 0) throw DomainError("v1_rank_positive", "rk v1 must be positive");
}

}  // namespace

IsotropicCoords isotropic_coords(const MukaiVector& v, const MukaiVector& v1, const NSClass& h,
                                 const SurfaceModel& m) {
  check_same_lattice(v, m);
  require_isotropic_v1(v1, m);
  Rational h2 = m.ns.square(h);
  if (h2 == 0) throw DomainError("h_square_nonzero", "(H^2) = 0");
  IsotropicCoords k;
  const Rational& r = v1.r;
  k.l = -mukai_pair(v, omega_vector(m), m) / r;
  k.a = mukai_pair(v, v1, m) / r;
  NSClass x = v.c - k.l * v1.c;
  k.d = m.ns.pair(x, h) / h2;
  k.D = x - k.d * h;
  return k;
}

MukaiVector isotropic_reconstruct(const IsotropicCoords& k, const MukaiVector& v1, const NSClass& h,
                                  const SurfaceModel& m) {
  NSClass x = k.d * h + k.D;
  MukaiVector ns_part{0, x, m.ns.pair(x, v1.c) / v1.r};
  return k.l * v1 - k.a * omega_vector(m) + ns_part;
}

IsotropicFmData make_isotropic_fm(const MukaiVector& v1, const MukaiVector& w1, const NSClass& h,
                                  const SurfaceModel& x, const SurfaceModel& y, QMatrix hat) {
  require_isotropic_v1(v1, x);
  require_isotropic_v1(w1, y);
  if (v1.r != w1.r) throw DomainError("rank_match", "rk w1 must equal rk v1");
  if (hat.empty()) {
    if (x.rank() != y.rank()) throw DomainError("hat_map", "identity hat map needs equal NS ranks");
    hat = identity_matrix(x.rank());
  }
  if (hat.size() != y.rank() || hat[0].size() != x.rank())
    throw DomainError("hat_map", "hat matrix has the wrong shape");
  // hat must carry the intersection form of X to that of Y.
  for (size_t i = 0; i < x.rank(); ++i)
    for (size_t j = 0; j < x.rank(); ++j) {
      NSClass a(y.rank()), b(y.rank());
      for (size_t k = 0; k < y.rank(); ++k) {
        a[k] = hat[k][i];
        b[k] = hat[k][j];
      }
      if (y.ns.pair(a, b) != Rational(x.ns.gram[i][j]))
        throw DomainError("hat_isometry", "hat map is not an isometry of NS lattices");
    }
  return {v1, w1, h, std::move(hat)};
}

NSClass hat_of(const NSClass& d, const IsotropicFmData& ctx) {
  return NSClass(mat_vec(ctx.hat, d.coords));
}

MukaiVector isotropic_fm(const MukaiVector& v, const IsotropicFmData& ctx, const SurfaceModel& x,
                         const SurfaceModel& y) {
  auto k = isotropic_coords(v, ctx.v1, ctx.h, x);
  NSClass xh = hat_of(k.d * ctx.h + k.D, ctx);
  MukaiVector ns_part{0, xh, y.ns.pair(xh, ctx.w1.c) / ctx.w1.r};
  return k.l * omega_vector(y) - k.a * ctx.w1 + ns_part;
}

FmPreconditions fm_preconditions(const MukaiVector& v, const MukaiVector& v1, const SurfaceModel& m,
                                 const NSClass& h) {
  auto k = isotropic_coords(v, v1, h, m);
  FmPreconditions p;
  p.deg_g1 = v1.r * m.ns.pair(v.c, h) - v.r * m.ns.pair(v1.c, h);
  p.l = k.l;
  p.a = k.a;
  p.deg_g1_zero = p.deg_g1 == 0;
  p.l_pos = p.l > 0;
  p.a_pos = p.a > 0;
  return p;
}

MukaiVector cor_ext_transform(const MukaiVector& v, const SurfaceModel& m) {
  auto one = unit_vector(m);
  auto ctx = make_isotropic_fm(one, one, m.polarization, m, m);
  return -isotropic_fm(v, ctx, m, m);
}

MukaiVector enriques_reflection(const MukaiVector& v0, const MukaiVector& x, const SurfaceModel& m) {
  if (m.kind != SurfaceKind::enriques)
    throw DomainError("enriques_surface", "reflection is defined on Enriques models");
  if (mukai_square(v0, m) != -1) throw DomainError("v0_square", "<v0^2> must be -1");
  if (!is_integer(v0.r) || to_integer(v0.r) % 2 == 0)
    throw DomainError("v0_rank_odd", "rk v0 must be odd");
  Rational p = mukai_pair(x, v0, m);
  return -(dual(x) + (2 * p) * dual(v0));
}

EllipticBasis elliptic_basis(const SurfaceModel& m) {
  auto s = m.ns.index_of("sigma"), f = m.ns.index_of("f");
  if (!s || !f) throw DomainError("elliptic_basis", "model needs basis classes 'sigma' and 'f'");
  const auto& g = m.ns.gram;
  if (g[*f][*f] != 0 || g[*s][*f] != 1)
    throw DomainError("elliptic_basis", "need (f^2) = 0 and (sigma,f) = 1");
  for (size_t i = 0; i < m.rank(); ++i) {
    if (i == *s || i == *f) continue;
    if (g[i][*s] != 0 || g[i][*f] != 0)
      throw DomainError("elliptic_basis", "remaining basis must be orthogonal to sigma and f");
  }
  return {*s, *f};
}

JacobianInput jacobian_input_from_gamma(const GammaTriple& g, const SurfaceModel& m) {
  auto b = elliptic_basis(m);
  NSClass f = basis_vector(m.rank(), b.f), s = basis_vector(m.rank(), b.sigma);
  if (m.ns.pair(g.c1, f) != 0)
    throw DomainError("jacobian_domain", "c1 must be of the form l f + D with D in <sigma,f>-perp");
  JacobianInput in;
  in.r = g.rank;
  in.l = m.ns.pair(g.c1, s);
  in.D = g.c1 - in.l * f;
  in.n = -(g.chi - g.rank * m.chi_O);  // -ch2; (K, c1) = 0 on this domain
  return in;
}

GammaTriple elliptic_jacobian_fm(const JacobianInput& in, const SurfaceModel& m) {
  auto b = elliptic_basis(m);
  NSClass f = basis_vector(m.rank(), b.f), s = basis_vector(m.rank(), b.sigma);
  if (in.D.size() != m.rank() || m.ns.pair(in.D, f) != 0 || m.ns.pair(in.D, s) != 0)
    throw DomainError("jacobian_decomposition", "D must lie in <sigma,f>-perp");
  GammaTriple out{0, in.r * s + in.n * f - in.D, in.r + in.l};
  return -out;
}

JacobianInput elliptic_jacobian_inverse(const GammaTriple& g, const SurfaceModel& m) {
  auto b = elliptic_basis(m);
  NSClass f = basis_vector(m.rank(), b.f), s = basis_vector(m.rank(), b.sigma);
  if (g.rank != 0) throw DomainError("jacobian_image", "image classes have rank 0");
  JacobianInput in;
  in.r = -m.ns.pair(g.c1, f);
  in.n = -m.ns.pair(g.c1, s) - in.r * m.ns.square(s);
  in.D = g.c1 + in.r * s + in.n * f;
  in.l = -g.chi - in.r;
  return in;
}

GammaTriple elliptic_relative_fm(const Rational& a, const Rational& b, const Rational& c,
                                 const RelativeParams& p, const SurfaceModel& m) {
  auto eb = elliptic_basis(m);
  NSClass f = basis_vector(m.rank(), eb.f), s = basis_vector(m.rank(), eb.sigma);
  return {0, a * s - (c * Rational(p.r)) * f, b - c * p.chi_F0_f + a * p.chi_O_sigma};
}

std::array<MukaiVector, 3> relative_basis(const RelativeParams& p, const SurfaceModel& m) {
  auto eb = elliptic_basis(m);
  if (p.r <= 0) throw DomainError("relative_rank", "r must be positive");
  NSClass f = basis_vector(m.rank(), eb.f), s = basis_vector(m.rank(), eb.sigma);
  Rational r(p.r), d(p.d), k(p.k);
  NSClass c0 = -d * s + k * f;
  Rational s2 = m.ns.square(s);
  Rational t0 = (m.ns.square(c0) - s2) / (2 * r);
  return {MukaiVector{r, c0, t0}, MukaiVector{0, r * f, -d}, omega_vector(m)};
}

// ---- CohMap ----------------------------------------------------------------

std::string CohMap::kind_name() const {
  switch (kind.index()) {
    case 0: return "twist";
    case 1: return "enriques_reflection";
    case 2: return "isotropic_fm";
    case 3: return "elliptic_jacobian";
    case 4: return "elliptic_relative";
    default: return "composite";
  }
}

namespace {

std::shared_ptr<const SurfaceModel> share(const SurfaceModel& m) {
  return std::make_shared<const SurfaceModel>(m);
}

}  // namespace

CohMap twist_map(const NSClass& D, const SurfaceModel& m) {
  if (D.size() != m.rank()) throw DomainError("lattice_rank", "twist class length mismatch");
  auto sm = share(m);
  return {TwistMap{D}, sm, sm, 1};
}

CohMap reflection_map(const MukaiVector& v0, const SurfaceModel& m) {
  enriques_reflection(v0, zero_vector(m), m);  // validates v0 and the model
  auto sm = share(m);
  return {ReflectionMap{v0}, sm, sm, 1};
}

CohMap isotropic_map(const IsotropicFmData& data, const SurfaceModel& x, const SurfaceModel& y,
                     int sign) {
  return {IsotropicMap{data}, share(x), share(y), sign};
}

CohMap jacobian_map(const SurfaceModel& m) {
  elliptic_basis(m);
  auto sm = share(m);
  return {JacobianMap{}, sm, sm, 1};
}

CohMap relative_map(const RelativeParams& p, const SurfaceModel& m) {
  relative_basis(p, m);
  auto sm = share(m);
  return {RelativeMap{p}, sm, sm, 1};
}

CohMap compose(const std::vector<CohMap>& maps) {
  if (maps.empty()) throw DomainError("composite_nonempty", "empty composite");
  for (size_t i = 1; i < maps.size(); ++i)
    if (!same_model(*maps[i - 1].target, *maps[i].source))
      throw DomainError("model_match", "target of map " + std::to_string(i - 1) +
                                           " differs from source of map " + std::to_string(i));
  return {CompositeMap{maps}, maps.front().source, maps.back().target, 1};
}

MukaiVector apply(const CohMap& f, const MukaiVector& v) {
  const SurfaceModel& x = *f.source;
  const SurfaceModel& y = *f.target;
  check_same_lattice(v, x);
  MukaiVector out = std::visit(
      [&](const auto& k) -> MukaiVector {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, TwistMap>) {
          return twist(v, k.D, x);
        } else if constexpr (std::is_same_v<K, ReflectionMap>) {
          return enriques_reflection(k.v0, v, x);
        } else if constexpr (std::is_same_v<K, IsotropicMap>) {
          return isotropic_fm(v, k.data, x, y);
        } else if constexpr (std::is_same_v<K, JacobianMap>) {
          auto in = jacobian_input_from_gamma(gamma_of(v, x), x);
          return from_gamma(elliptic_jacobian_fm(in, x), y);
        } else if constexpr (std::is_same_v<K, RelativeMap>) {
          auto basis = relative_basis(k.params, x);
          std::vector<QVector> cols;
          for (auto& e : basis) {
            QVector col{e.r};
            col.insert(col.end(), e.c.coords.begin(), e.c.coords.end());
            col.push_back(e.t);
            cols.push_back(col);
          }
          QVector rhs{v.r};
          rhs.insert(rhs.end(), v.c.coords.begin(), v.c.coords.end());
          rhs.push_back(v.t);
          auto abc = solve_columns(cols, rhs);
          if (!abc) throw DomainError("relative_domain", "vector is not in span(E0, E0|f, C)");
          auto g = elliptic_relative_fm((*abc)[0], (*abc)[1], (*abc)[2], k.params, x);
          return from_gamma(-g, y);
        } else {
          MukaiVector cur = v;
          for (const auto& g : k.maps) cur = apply(g, cur);
          return cur;
        }
      },
      f.kind);
  return f.sign == 1 ? out : -out;
}

Rational random_rational(std::mt19937_64& rng, int bound, bool integral) {
  std::uniform_int_distribution<int> num(-bound, bound), den(1, bound);
  if (integral) return num(rng);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

MukaiVector random_vector(const SurfaceModel& m, std::mt19937_64& rng, int bound, bool integral) {
  MukaiVector v;
  v.r = random_rational(rng, bound, integral);
  v.c = NSClass(m.rank());
  for (auto& x : v.c.coords) x = random_rational(rng, bound, integral);
  v.t = random_rational(rng, bound, integral);
  if (integral && m.half_integral) v.t += v.r / 2;
  return v;
}

MukaiVector sample_domain(const CohMap& f, std::mt19937_64& rng, int bound) {
  const SurfaceModel& x = *f.source;
  if (std::holds_alternative<CompositeMap>(f.kind)) {
    // leading twists are invertible: sample the first later stage and pull back
    const auto& maps = std::get<CompositeMap>(f.kind).maps;
    size_t k = 0;
    while (k + 1 < maps.size() && std::holds_alternative<TwistMap>(maps[k].kind)) ++k;
    MukaiVector v = sample_domain(maps[k], rng, bound);
    for (size_t i = k; i-- > 0;) v = twist(v, -std::get<TwistMap>(maps[i].kind).D, x);
    return v;
  }
  if (std::holds_alternative<JacobianMap>(f.kind)) {
    auto b = elliptic_basis(x);
    MukaiVector v = random_vector(x, rng, bound);
    v.c[b.sigma] = 0;  // (c, f) = 0
    return v;
  }
  if (std::holds_alternative<RelativeMap>(f.kind)) {
    auto basis = relative_basis(std::get<RelativeMap>(f.kind).params, x);
    return random_rational(rng, bound) * basis[0] + random_rational(rng, bound) * basis[1] +
           random_rational(rng, bound) * basis[2];
  }
  return random_vector(x, rng, bound);
}

IsometryReport check_isometry(const CohMap& f, size_t samples, uint64_t seed) {
  std::mt19937_64 rng(seed);
  IsometryReport rep;
  for (size_t i = 0; i < samples; ++i) {
    MukaiVector v = sample_domain(f, rng), w = sample_domain(f, rng);
    Rational before = mukai_pair(v, w, *f.source);
    Rational after = mukai_pair(apply(f, v), apply(f, w), *f.target);
    ++rep.samples;
    if (before != after) {
      rep.ok = false;
      rep.counterexample = {v, w};
      return rep;
    }
  }
  return rep;
}

}  // namespace mukai

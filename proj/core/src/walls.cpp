#include "mukai/walls.hpp"

#include <algorithm>
#include <array>

namespace mukai {

TwistedInvariants twisted_invariants(const MukaiVector& v, const TwistData& td,
                                     const SurfaceModel& m) {
  check_same_lattice(v, m);
  Rational rg = 1;
  NSClass cg(m.rank());
  if (td.G) {
    rg = td.G->r;
    cg = td.G->c;
    if (rg <= 0) throw DomainError("g_rank_positive", "rk G must be positive");
  } else if (td.alpha) {
    cg = *td.alpha;
  }
  NSClass alpha = Rational(1) / rg * cg;
  TwistedInvariants out;
  out.rk = rg * v.r;
  out.deg = rg * m.ns.pair(v.c, td.H) - v.r * m.ns.pair(cg, td.H);
  out.chi = rg * chi_of(twist(v, -alpha, m), m);
  return out;
}

NSClass beta_reduction(const NSClass& alpha, const NSClass& h, const SurfaceModel& m) {
  Rational h2 = m.ns.square(h);
  if (h2 == 0) throw DomainError("h_square_nonzero", "(H^2) = 0");
  return alpha - (m.ns.pair(alpha, h) / h2) * h;
}

Rational slope_dim1(const GammaTriple& g, const NSClass& alpha, const NSClass& h,
                    const SurfaceModel& m) {
  if (g.rank != 0) throw DomainError("rank_zero", "slope_dim1 needs a rank-0 class");
  Rational ch = m.ns.pair(g.c1, h);
  if (ch <= 0) throw DomainError("degree_positive", "(c1,H) must be positive");
  return (g.chi - m.ns.pair(g.c1, alpha)) / ch;
}

bool Box::contains(const NSClass& a) const {
  if (a.size() != bounds.size()) return false;
  for (size_t i = 0; i < bounds.size(); ++i)
    if (a[i] < bounds[i].first || a[i] > bounds[i].second) return false;
  return true;
}

Rational Wall::evaluate(const NSClass& alpha) const {
  Rational s = Rational(offset);
  for (size_t i = 0; i < normal.size(); ++i) s += Rational(normal[i]) * alpha[i];
  return s;
}

std::pair<std::vector<Rational>, Rational> wall_functional(const GammaTriple& g, const NSClass& D,
                                                           const Rational& n, const NSClass& h,
                                                           const SurfaceModel& m) {
  Rational xh = m.ns.pair(g.c1, h), dh = m.ns.pair(D, h);
  NSClass w = xh * D - dh * g.c1;
  return {m.ns.dual_coeffs(w), g.chi * dh - n * xh};
}

std::optional<std::pair<std::vector<Integer>, Integer>> normalize_functional(
    const std::vector<Rational>& coeffs, const Rational& offset) {
  std::vector<Rational> all = coeffs;
  all.push_back(offset);
  if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& x) { return x == 0; }))
    return std::nullopt;
  Rational c = rational_content(all);
  auto lead = std::find_if(coeffs.begin(), coeffs.end(), [](const Rational& x) { return x != 0; });
  if (*lead < 0) c = -c;
  std::vector<Integer> out;
  for (auto& x : coeffs) out.push_back(to_integer(x / c));
  return std::make_pair(out, to_integer(offset / c));
}

std::vector<NSClass> effective_decompositions(const NSClass& xi, const SurfaceModel& m) {
  const NSClass& h = m.polarization;
  Rational xh = m.ns.pair(xi, h);
  std::vector<NSClass> out;
  if (!m.is_effective(xi) || xh <= 0) return out;
  auto gens = m.cone_generators();
  std::vector<NSClass> verts{NSClass(m.rank())};
  for (auto& g : gens) {
    Rational gh = m.ns.pair(g, h);
    if (gh <= 0) throw DomainError("bounded_decompositions", "cone generator with (g,H) <= 0");
    verts.push_back(xh / gh * g);
  }
  std::vector<Integer> lo(m.rank()), hi(m.rank());
  for (size_t i = 0; i < m.rank(); ++i) {
    Rational a = verts[0][i], b = verts[0][i];
    for (auto& v : verts) {
      a = std::min(a, v[i]);
      b = std::max(b, v[i]);
    }
    lo[i] = ceil_q(a);
    hi[i] = floor_q(b);
  }
  for (size_t i = 0; i < m.rank(); ++i)
    if (lo[i] > hi[i]) return out;
  NSClass d(m.rank());
  for (size_t i = 0; i < m.rank(); ++i) d[i] = lo[i];
  while (true) {
    if (!d.is_zero() && d != xi && m.is_effective(d) && m.is_effective(xi - d)) out.push_back(d);
    bool advanced = false;
    for (size_t i = m.rank(); i-- > 0;) {
      if (d[i] < Rational(hi[i])) {
        d[i] += 1;
        for (size_t j = i + 1; j < m.rank(); ++j) d[j] = lo[j];
        advanced = true;
        break;
      }
    }
    if (!advanced) return out;
  }
}

std::vector<Wall> walls_dim1(const GammaTriple& g, const NSClass& h, const Box& box,
                             const SurfaceModel& m) {
  if (g.rank != 0) throw DomainError("rank_zero", "walls_dim1 needs a rank-0 class");
  if (box.bounds.size() != m.rank()) throw DomainError("bounded_box", "box needs one range per NS coordinate");
  for (auto& [lo, hi] : box.bounds)
    if (lo > hi) throw DomainError("bounded_box", "empty box range");
  Rational xh = m.ns.pair(g.c1, h);
  if (xh <= 0) throw DomainError("degree_positive", "(xi,H) must be positive");
  SurfaceModel mh = m;
  mh.polarization = h;
  std::vector<Wall> out;
  for (auto& D : effective_decompositions(g.c1, mh)) {
    auto [coeffs, base] = wall_functional(g, D, 0, h, m);
    if (std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& x) { return x == 0; })) continue;
    Rational lo = base, hi = base;
    for (size_t i = 0; i < coeffs.size(); ++i) {
      Rational a = coeffs[i] * box.bounds[i].first, b = coeffs[i] * box.bounds[i].second;
      lo += std::min(a, b);
      hi += std::max(a, b);
    }
    for (Integer n = ceil_q(lo / xh); n <= floor_q(hi / xh); ++n) {
      auto nf = normalize_functional(coeffs, base - Rational(n) * xh);
      out.push_back(Wall{nf->first, nf->second, D, n});
    }
  }
  return out;
}

std::variant<Chamber, OnWall> chamber_locate(const NSClass& alpha, const std::vector<Wall>& walls) {
  Chamber c;
  OnWall on;
  for (size_t i = 0; i < walls.size(); ++i) {
    int s = sign(walls[i].evaluate(alpha));
    if (s == 0) on.indices.push_back(i);
    c.signs.push_back(s);
  }
  if (!on.indices.empty()) return on;
  c.sample = alpha;
  return c;
}

std::vector<Crossing> chamber_path(const NSClass& a, const NSClass& b, const std::vector<Wall>& walls) {
  std::vector<Crossing> out;
  for (size_t i = 0; i < walls.size(); ++i) {
    Rational va = walls[i].evaluate(a), vb = walls[i].evaluate(b);
    if (va == 0 || vb == 0)
      throw DomainError("endpoint_on_wall", "segment endpoint lies on wall " + std::to_string(i));
    if (sign(va) != sign(vb)) out.push_back({i, va / (va - vb)});
  }
  std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
    return x.t != y.t ? x.t < y.t : x.wall < y.wall;
  });
  return out;
}

namespace {

// chi(v exp(-t dir)) / r_v as c0 + c1 t + c2 t^2.
std::array<Rational, 3> reduced_chi_poly(const MukaiVector& v, const NSClass& dir,
                                         const SurfaceModel& m) {
  return {chi_of(v, m) / v.r, -m.ns.pair(v.c, dir) / v.r, m.ns.square(dir) / 2};
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  return Rational(sqrt(n), sqrt(d));
}

}  // namespace

WallSolution wall_solve_tf(const MukaiVector& v, const MukaiVector& v_sub, const NSClass& h,
                           const NSClass& dir, const SurfaceModel& m) {
  check_same_lattice(v, m);
  check_same_lattice(v_sub, m);
  if (v.r <= 0 || v_sub.r <= 0) throw DomainError("rank_positive", "both ranks must be positive");
  if (m.ns.pair(v.c, h) / v.r != m.ns.pair(v_sub.c, h) / v_sub.r)
    throw DomainError("equal_slope", "(c,H)/r must agree for v and v_sub");
  auto p = reduced_chi_poly(v_sub, dir, m), q = reduced_chi_poly(v, dir, m);
  Rational c0 = p[0] - q[0], c1 = p[1] - q[1], c2 = p[2] - q[2];
  WallSolution out;
  if (c0 == 0 && c1 == 0 && c2 == 0) {
    out.no_wall = true;
    return out;
  }
  if (c2 == 0) {
    if (c1 != 0) out.roots.push_back(-c0 / c1);
    return out;
  }
  Rational disc = c1 * c1 - 4 * c0 * c2;
  if (disc < 0) return out;
  if (auto s = rational_sqrt(disc)) {
    Rational r1 = (-c1 - *s) / (2 * c2), r2 = (-c1 + *s) / (2 * c2);
    if (r1 > r2) std::swap(r1, r2);
    out.roots.push_back(r1);
    if (r2 != r1) out.roots.push_back(r2);
  } else {
    Rational c = rational_content({c0, c1, c2});
    out.irrational_minpoly = {c0 / c, c1 / c, c2 / c};
  }
  return out;
}

}  // namespace mukai

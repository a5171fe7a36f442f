#include "mukai/reduction.hpp"

#include <algorithm>

#include "mukai/fm.hpp"

namespace mukai {

std::string to_string(Move m) {
  switch (m) {
    case Move::twist: return "twist";
    case Move::fm_swap: return "fm_swap";
    case Move::deform: return "deform";
  }
  return "?";
}

namespace {

class TraceBuilder {
 public:
  TraceBuilder(const MukaiVector& v, const SurfaceModel& m)
      : m_(m), square_(mukai_square(v, m)), mult_(multiplicity(v, m)) {
    trace_.start = v;
    trace_.end = v;
  }

  const MukaiVector& current() const { return trace_.end; }
  const Rational& square() const { return square_; }

  void step(Move move, std::string detail, const MukaiVector& after, bool external = false) {
    MoveStep s{move, std::move(detail), trace_.end, after, mukai_square(after, m_),
               multiplicity(after, m_), external};
    if (s.square != square_ || s.multiplicity != mult_)
      throw DomainError("invariant_violation", to_string(move) + " step " + s.detail +
                                                   " changed <v^2> or m(v)");
    trace_.steps.push_back(std::move(s));
    trace_.end = after;
  }

  void twist_by(const NSClass& D, const std::string& label) {
    step(Move::twist, label, twist(trace_.end, D, m_));
  }

  void param(const std::string& k, const Integer& v) { trace_.params.emplace_back(k, to_string(v)); }

  MoveTrace take() { return std::move(trace_); }

 private:
  const SurfaceModel& m_;
  Rational square_;
  Integer mult_;
  MoveTrace trace_;
};

Integer content_of(const NSClass& c) {
  Integer g = 0;
  for (auto& x : c.coords) g = gcd(g, to_integer(x));
  return g;
}

bool is_hyperbolic_plane(const SurfaceModel& m) {
  return m.rank() == 2 && m.ns.gram[0][0] == 0 && m.ns.gram[1][1] == 0 && m.ns.gram[0][1] == 1;
}

}  // namespace

MoveTrace reduce_to_rank_one(const MukaiVector& v, const SurfaceModel& m) {
  check_same_lattice(v, m);
  if (!is_hyperbolic_plane(m) || (m.kind != SurfaceKind::k3 && m.kind != SurfaceKind::abelian))
    throw DomainError("hyperbolic_model", "needs a K3 or abelian model with NS = <e,f>, (e,f) = 1");
  if (!is_integral_vector(v, m)) throw DomainError("integral_vector", "v must be integral");
  if (v.r <= 0) throw DomainError("rank_positive", "rk v must be positive");
  Integer R = to_integer(v.r), x = to_integer(v.c[0]), y = to_integer(v.c[1]), a = to_integer(v.t);
  Integer l = gcd(gcd(R, x), y);
  if (gcd(l, a) != 1) throw DomainError("primitive_gcd", "gcd(l, a) must be 1");

  TraceBuilder tb(v, m);
  if (R == 1) return tb.take();

  Integer r = R / l;
  Rational c1sq = m.ns.square(Rational(1, 1) / Rational(l) * v.c);
  Integer lambda = 1, k, b;
  for (;; ++lambda) {
    k = to_integer(-c1sq / 2 + Rational(r * lambda));
    b = -a + l * lambda;
    if (k > 0 && b > 0) break;
  }
  tb.param("lambda", lambda);
  tb.param("k", k);
  tb.param("b", b);

  auto ek = [&](const Integer& kk, const Integer& scale) {
    return NSClass{Rational(scale), Rational(-scale * kk)};
  };
  tb.step(Move::deform, "lambda", MukaiVector(Rational(R), ek(k, l), Rational(-b)), true);
  tb.step(Move::fm_swap, "cor_ext", cor_ext_transform(tb.current(), m));

  Integer lr = l * r, lambda2 = 1, b2, k2, k3;
  for (;; ++lambda2) {
    b2 = lr + lambda2;
    k2 = l * l * k + b * lambda2;
    k3 = lr * (1 - b) + l * l * k + lambda2;
    if (b2 > 0 && k2 > 0 && k3 > 0) break;
  }
  tb.param("lambda'", lambda2);
  tb.param("b'", b2);
  tb.param("k'", k2);
  tb.param("k''", k3);

  tb.step(Move::deform, "lambda'", MukaiVector(Rational(b), ek(k2, 1), Rational(-b2)), true);
  tb.step(Move::fm_swap, "cor_ext", cor_ext_transform(tb.current(), m));
  tb.step(Move::deform, "k''", MukaiVector(Rational(b2), ek(k3, -1), Rational(-1)), true);
  tb.step(Move::fm_swap, "cor_ext", cor_ext_transform(tb.current(), m));
  return tb.take();
}

namespace {

constexpr size_t kSigma = 0, kF = 1, kE8 = 2;

// (r, c, -s/2) -> (s, -c, -r/2), minus the reflection in O_X.
void enriques_swap(TraceBuilder& tb, const SurfaceModel& m) {
  const auto& v = tb.current();
  if (m.ns.square(v.c) >= 0) throw DomainError("swap_precondition", "(c1^2) < 0 fails before swap");
  MukaiVector ox(1, NSClass(m.rank()), Rational(1, 2));
  tb.step(Move::fm_swap, "r<->s", -enriques_reflection(ox, v, m));
}

Integer s_of(const MukaiVector& v) { return to_integer(-2 * v.t); }
Integer r_of(const MukaiVector& v) { return to_integer(v.r); }

// Twists by m e1 for m = 0, 1, -1, 2, ... until s > <v^2>.
void raise_s(TraceBuilder& tb, const SurfaceModel& m) {
  for (long k = 0;; k = k > 0 ? -k : 1 - k) {
    NSClass eta(m.rank());
    eta[kE8] = k;
    if (s_of(twist(tb.current(), eta, m)) > tb.square()) {
      if (k != 0) tb.twist_by(eta, "eta");
      return;
    }
  }
}

// Moves the coefficient of basis class `coord` into (-r/2, r/2) by twisting with a multiple of it.
void center_degree(TraceBuilder& tb, size_t coord, const std::string& label, const SurfaceModel& m) {
  Integer r = r_of(tb.current()), d = to_integer(tb.current().c[coord]);
  Integer k = -floor_q(Rational(2 * d + r) / Rational(2 * r));
  if (k != 0) {
    NSClass D(m.rank());
    D[coord] = k;
    tb.twist_by(D, label);
  }
}

// One branch of the rank induction when d = (c, partner) != 0.
void degree_branch(TraceBuilder& tb, size_t coord, const SurfaceModel& m) {
  raise_s(tb, m);
  Integer r = r_of(tb.current()), d = to_integer(tb.current().c[coord]);
  enriques_swap(tb, m);
  // c is now -c, so the shift is t -> t - k d; pick r' = r + 2kd in [0, 2|d|).
  Integer target = mod_floor(r, 2 * abs(d));
  Integer k = (target - r) / (2 * d);
  if (k != 0) {
    NSClass D(m.rank());
    D[coord == kSigma ? kF : kSigma] = k;
    tb.twist_by(D, "r-reduce");
  }
  enriques_swap(tb, m);
}

std::vector<NSClass> small_e8_vectors(size_t rank) {
  std::vector<NSClass> out{NSClass(rank)};
  for (size_t i = 0; i < 8; ++i)
    for (int a : {1, -1}) {
      NSClass p(rank);
      p[kE8 + i] = a;
      out.push_back(p);
    }
  for (size_t i = 0; i < 8; ++i)
    for (size_t j = i + 1; j < 8; ++j)
      for (int a : {1, -1})
        for (int b : {1, -1}) {
          NSClass p(rank);
          p[kE8 + i] = a;
          p[kE8 + j] = b;
          out.push_back(p);
        }
  return out;
}

constexpr long kSearchBound = 4096;

// c in E8: twist so that c/gcd(r, c) stays primitive and s > <v^2>, swap,
// make c primitive, then twist by sigma - (eta^2/2) f + eta with
// (eta, c) = (s-1)/2 and swap down to rank 1.
void e8_branch(TraceBuilder& tb, const SurfaceModel& m) {
  const auto small = small_e8_vectors(m.rank());
  Integer r = r_of(tb.current()), g = gcd(r, content_of(tb.current().c));
  bool found = false;
  for (long k = 0; !found && std::abs(k) <= kSearchBound; k = k > 0 ? -k : 1 - k) {
    for (auto& p : small) {
      NSClass xi = p;
      xi[kE8] += k;
      auto w = twist(tb.current(), xi, m);
      if (content_of(w.c) == g && s_of(w) > tb.square()) {
        if (!xi.is_zero()) tb.twist_by(xi, "xi1");
        found = true;
        break;
      }
    }
  }
  if (!found) throw DomainError("search_exhausted", "no xi1 within the search bound");
  enriques_swap(tb, m);

  found = content_of(tb.current().c) == 1;
  for (long k = 0; !found && std::abs(k) <= kSearchBound; k = k > 0 ? -k : 1 - k) {
    for (auto& p : small) {
      NSClass xi = p;
      xi[kE8] += k;
      if (content_of(twist(tb.current(), xi, m).c) == 1) {
        tb.twist_by(xi, "xi2");
        found = true;
        break;
      }
    }
  }
  if (!found) throw DomainError("search_exhausted", "no xi2 within the search bound");

  // Solve sum_j u_j eta_j = (s-1)/2 with u = Gram * c, by folding extended gcds.
  const auto& c = tb.current().c;
  auto u = m.ns.dual_coeffs(c);
  Integer target = (s_of(tb.current()) - 1) / 2;
  std::vector<Integer> coef(m.rank(), 0);
  Integer acc = 0;
  for (size_t i = kE8; i < m.rank(); ++i) {
    auto eg = ext_gcd(acc, to_integer(u[i]));
    for (auto& x : coef) x *= eg.s;
    coef[i] = eg.t;
    acc = eg.g;
  }
  if (acc != 1) throw DomainError("primitive", "c1 not primitive in E8");
  NSClass eta(m.rank());
  for (size_t i = kE8; i < m.rank(); ++i) eta[i] = Rational(coef[i] * target);
  NSClass D = eta;
  D[kSigma] += 1;
  D[kF] -= m.ns.square(eta) / 2;
  tb.twist_by(D, "s->1");
  enriques_swap(tb, m);
}

}  // namespace

EnriquesReduction enriques_reduce(const MukaiVector& v, const SurfaceModel& m) {
  if (m.kind != SurfaceKind::enriques) throw DomainError("enriques_surface", "needs an Enriques model");
  check_same_lattice(v, m);
  if (m.ns.index_of("sigma") != kSigma || m.ns.index_of("f") != kF || m.rank() != 10)
    throw DomainError("enriques_basis", "expects basis sigma, f, e1..e8");
  if (!is_integral_vector(v, m)) throw DomainError("integral_vector", "v must be integral");
  if (v.r <= 0 || to_integer(v.r) % 2 == 0) throw DomainError("odd_rank", "rk v must be odd and positive");
  if (multiplicity(v, m) != 1) throw DomainError("primitive", "v must be primitive");
  Rational sq = mukai_square(v, m);
  if (sq < -1) throw DomainError("nonempty_square", "<v^2> >= -1 fails: moduli space is empty");

  TraceBuilder tb(v, m);
  while (tb.current().r != 1) {
    center_degree(tb, kSigma, "center(c,f)", m);
    if (tb.current().c[kSigma] != 0) {
      degree_branch(tb, kSigma, m);
      continue;
    }
    center_degree(tb, kF, "center(c,sigma)", m);
    if (tb.current().c[kF] != 0) {
      degree_branch(tb, kF, m);
      continue;
    }
    e8_branch(tb, m);
  }
  EnriquesReduction out;
  out.n = to_integer((sq + 1) / 2);
  out.e_hilb = hilb_series(enriques_hodge(), out.n.get_si())[out.n.get_si()];
  out.trace = tb.take();
  return out;
}

GcdTrace elliptic_gcd_reduce(const Integer& r0, const Integer& d0) {
  if (r0 <= 0) throw DomainError("rank_positive", "r must be positive");
  if (gcd(r0, d0) != 1) throw DomainError("coprime", "gcd(r, d) must be 1");
  GcdTrace out;
  Integer r = r0, d = d0;
  out.ranks.push_back(r);
  while (r != 1) {
    Integer dn = mod_floor(d - 1, r) + 1;
    if (dn != d) {
      Integer k = (dn - d) / r;
      out.steps.push_back({Move::twist, r, d, r, dn, k});
      d = dn;
    }
    out.steps.push_back({Move::fm_swap, r, d, d, -r, 0});
    Integer nr = d;
    d = -r;
    r = nr;
    out.ranks.push_back(r);
  }
  return out;
}

FiltrationDims filtration_stack_dim(const std::vector<MukaiVector>& vs, const std::vector<Rational>& dims,
                                    const SurfaceModel& m) {
  if (vs.empty()) throw DomainError("nonempty_filtration", "need at least one factor");
  if (vs.size() != dims.size()) throw DomainError("list_lengths", "vs and dims differ in length");
  Rational cross = 0, dsum = 0, sqsum = 0;
  MukaiVector total = zero_vector(m);
  for (size_t i = 0; i < vs.size(); ++i) {
    check_same_lattice(vs[i], m);
    for (size_t j = i + 1; j < vs.size(); ++j) cross += mukai_pair(vs[i], vs[j], m);
    dsum += dims[i];
    sqsum += mukai_square(vs[i], m) + 1;
    total = total + vs[i];
  }
  FiltrationDims out;
  out.sum_form = dsum + cross;
  out.deficit_form = mukai_square(total, m) + 1 - (sqsum + cross);
  out.deficit_closed = cross - Rational(static_cast<long>(vs.size()) - 1);
  return out;
}

Rational moduli_dim(const MukaiVector& v, const SurfaceModel& m, DimFlavor flavor) {
  Rational sq = mukai_square(v, m);
  switch (m.kind) {
    case SurfaceKind::k3:
    case SurfaceKind::abelian:
      return flavor == DimFlavor::stack ? sq + 1 : sq + 2;
    case SurfaceKind::enriques:
      if (!is_integer(v.r) || to_integer(v.r) % 2 == 0)
        throw DomainError("odd_rank", "Enriques dimension formula needs odd rank");
      // Ext^2 vanishes, so stable sheaves have Ext^1 of dimension <v^2> + 1.
      return sq + 1;
    default:
      throw DomainError("unsupported_kind", "no dimension convention for " + to_string(m.kind));
  }
}

Rational fiber_dim(const NSClass& xi, const SurfaceModel& m) { return m.ns.square(xi) / 2 + 1; }

PssBound pss_bound(const MukaiVector& v, const SurfaceModel& m) {
  if (v.r <= 0) throw DomainError("rank_positive", "rk v must be positive");
  Rational sq = mukai_square(v, m);
  return {sq, !(multiplicity(v, m) == 2 && sq == 8)};
}

Rational git_beta0(const GitData& data) {
  if (data.h_i_m.size() != data.eps.size()) throw DomainError("list_lengths", "h_i(m) and eps differ");
  Rational den = data.a1 * data.n;
  if (den == 0) throw DomainError("division_by_zero", "a1 n must be nonzero");
  Rational num = data.h_m;
  for (size_t i = 0; i < data.eps.size(); ++i) num -= data.eps[i] * data.h_i_m[i];
  return num / den;
}

Rational git_weight(const GitDims& dims, const GitData& data) {
  Rational b0 = git_beta0(data);
  size_t l = data.eps.size();
  if (dims.dim_alpha_i_V.size() != l || dims.dim_V_i.size() != l)
    throw DomainError("list_lengths", "per-flag lists must match eps");
  Rational primed = b0 * dims.dim_alpha_VpW, full = b0 * dims.dim_alpha_VW;
  for (size_t i = 0; i < l; ++i) {
    primed += data.eps[i] * (dims.dimVp - dims.dim_V_i[i]);
    full += data.eps[i] * dims.dim_alpha_i_V[i];
  }
  return dims.dimV * primed - dims.dimVp * full;
}

Rational git_weight_factored(const Rational& dimVp, const Rational& dim_alpha_VpW,
                             const std::vector<Rational>& dim_V_i, const GitData& data) {
  Rational b0 = git_beta0(data);
  if (dim_V_i.size() != data.eps.size()) throw DomainError("list_lengths", "dim V_i must match eps");
  Rational alpha1 = 1, inner = b0 * dim_alpha_VpW - b0 * dimVp;
  for (size_t i = 0; i < dim_V_i.size(); ++i) {
    alpha1 -= data.eps[i];
    inner -= data.eps[i] * dim_V_i[i];
  }
  inner -= alpha1 * dimVp;
  return data.h_m * inner;
}

bool git_semistable(const std::vector<GitDims>& subspaces, const GitData& data) {
  return std::all_of(subspaces.begin(), subspaces.end(),
                     [&](const GitDims& d) { return git_weight(d, data) >= 0; });
}

ParabolicEuler parabolic_euler(const Rational& chi_F_top, const std::vector<Rational>& chi_gr,
                               const std::vector<Rational>& alphas, const Rational& chi_E) {
  size_t l = alphas.size();
  if (chi_gr.size() != l) throw DomainError("list_lengths", "chi_gr and alphas differ in length");
  for (size_t i = 0; i < l; ++i)
    if (alphas[i] <= 0 || alphas[i] > 1 || (i > 0 && alphas[i] < alphas[i - 1]))
      throw DomainError("weight_ordering", "need 0 < alpha_1 <= ... <= alpha_l <= 1");
  Rational total = chi_F_top;
  for (auto& g : chi_gr) total += g;
  if (total != chi_E) throw DomainError("chi_additivity", "chi(E) != chi(F_{l+1}) + sum chi(gr_i)");

  ParabolicEuler out;
  out.form1 = chi_F_top;
  out.form2 = chi_E;
  out.form2_literal = chi_E;
  Rational partial = 0;
  for (size_t i = 0; i < l; ++i) {
    Rational eps = (i + 1 < l ? alphas[i + 1] : Rational(1)) - alphas[i];
    partial += chi_gr[i];
    out.form1 += alphas[i] * chi_gr[i];
    out.form2 -= eps * partial;
    out.form2_literal -= eps * chi_gr[i];
  }
  if (out.form1 != out.form2) throw DomainError("internal_identity", "parabolic forms disagree");
  return out;
}

}  // namespace mukai

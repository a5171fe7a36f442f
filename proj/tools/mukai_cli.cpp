#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "mukai/fm.hpp"
#include "mukai/json_io.hpp"
#include "mukai/reduction.hpp"
#include "mukai/series.hpp"
#include "mukai/walls.hpp"

#ifndef MUKAI_FIXTURE_DIR
#define MUKAI_FIXTURE_DIR "fixtures"
#endif

using namespace mukai;
using namespace mukai::io;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string surface, in, out, format = "tsv", box, kind = "rank-one", fixtures = MUKAI_FIXTURE_DIR;
  long order = -1, samples = 200, r = 0, n = 0;
  uint64_t seed = 1;
  bool selftest = false;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// A flag value is a file path if one exists, otherwise inline JSON.
json load_json_arg(const std::string& arg) {
  if (fs::is_regular_file(arg)) return parse_json(slurp(arg));
  return parse_json(arg);
}

SurfaceModel resolve_surface(const Options& o, const json& in, const std::string& fallback) {
  if (!o.surface.empty()) {
    if (fs::is_regular_file(o.surface)) return model_from(parse_json(slurp(o.surface)));
    if (!o.surface.empty() && (o.surface[0] == '{' || o.surface[0] == '"')) return model_from(parse_json(o.surface));
    return model_from(json(o.surface));
  }
  if (in.is_object() && in.contains("surface")) return model_from(in["surface"]);
  return model_from(json(fallback));
}

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("input needs '") + key + "'");
  return j.at(key);
}

long long_of(const json& j, const char* what) {
  Rational q = rational_from(j);
  if (!is_integer(q) || !q.get_num().fits_slong_p()) throw ParseError(std::string(what) + " must be an integer");
  return q.get_num().get_si();
}

std::vector<Rational> rationals_from(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (auto& x : j) out.push_back(rational_from(x));
  return out;
}

GammaTriple gamma_from(const json& j, const SurfaceModel& m) {
  return {rational_from(need(j, "rank")), class_from(need(j, "c1"), m), rational_from(need(j, "chi"))};
}

std::string join(const std::vector<std::string>& xs, const char* sep = ",") {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? sep : "") + xs[i];
  return s;
}

// Flattens a JSON scalar or array of scalars into TSV cell text.
std::string cell(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) {
    std::vector<std::string> xs;
    for (auto& x : j) xs.push_back(cell(x));
    return join(xs);
  }
  if (j.is_object() && j.contains("r") && j.contains("c") && j.contains("t"))
    return "(" + cell(j["r"]) + ";" + cell(j["c"]) + ";" + cell(j["t"]) + ")";
  return j.dump();
}

// ---- subcommands --------------------------------------------------------------

struct Result {
  json data;
  std::vector<std::vector<std::string>> rows;  // TSV body
};

Result cmd_pair(const json& in, const Options& o) {
  auto m = resolve_surface(o, in, "k3");
  auto v = vector_from(need(in, "v"), m);
  auto w = in.contains("w") ? vector_from(in["w"], m) : v;
  Rational p = mukai_pair(v, w, m);
  return {{{"pairing", to_json(p)}}, {{to_string(p)}}};
}

Result cmd_transform(const json& in, const Options& o) {
  auto m = resolve_surface(o, in, "k3");
  auto f = map_from(need(in, "map"), m);
  std::vector<MukaiVector> vs;
  if (in.contains("vectors"))
    for (auto& x : in["vectors"]) vs.push_back(vector_from(x, m));
  else
    vs.push_back(vector_from(need(in, "v"), m));
  Result r;
  r.data = {{"map", f.kind_name()}, {"images", json::array()}};
  for (auto& v : vs) {
    auto img = apply(f, v);
    r.data["images"].push_back(to_json(img));
    std::vector<std::string> row{to_string(img.r)};
    for (auto& x : img.c.coords) row.push_back(to_string(x));
    row.push_back(to_string(img.t));
    r.rows.push_back(row);
  }
  return r;
}

struct WallJob {
  SurfaceModel m;
  GammaTriple g;
  NSClass h;
  Box box;
};

WallJob wall_job(const json& in, const Options& o) {
  WallJob job{resolve_surface(o, in, "elliptic_rational"), {}, {}, {}};
  job.g = gamma_from(need(in, "gamma"), job.m);
  job.h = in.contains("h") ? class_from(in["h"], job.m) : job.m.polarization;
  if (!o.box.empty())
    job.box = box_from_text(o.box, job.m);
  else
    job.box = box_from(need(in, "box"), job.m);
  return job;
}

const char* kCandidateCaveat = "walls are numerical candidates; nonemptiness of strata is not decided";

std::vector<std::string> wall_row(const Wall& w) {
  std::vector<std::string> d, nrm;
  for (auto& x : w.D.coords) d.push_back(to_string(x));
  for (auto& x : w.normal) nrm.push_back(to_string(x));
  return {join(d), to_string(w.n), join(nrm), to_string(w.offset)};
}

Result cmd_walls(const json& in, const Options& o) {
  auto job = wall_job(in, o);
  auto walls = walls_dim1(job.g, job.h, job.box, job.m);
  Result r;
  r.data = {{"walls", json::array()}, {"caveat", kCandidateCaveat}};
  r.rows.push_back({"#D", "n", "normal", "offset"});
  for (auto& w : walls) {
    r.data["walls"].push_back(to_json(w));
    r.rows.push_back(wall_row(w));
  }
  return r;
}

Result cmd_chamberpath(const json& in, const Options& o) {
  auto job = wall_job(in, o);
  auto walls = walls_dim1(job.g, job.h, job.box, job.m);
  auto a = class_from(need(in, "from"), job.m), b = class_from(need(in, "to"), job.m);
  auto path = chamber_path(a, b, walls);
  Result r;
  r.data = {{"crossings", json::array()}, {"caveat", kCandidateCaveat}};
  r.rows.push_back({"#t", "D", "n", "normal", "offset"});
  for (auto& c : path) {
    auto& w = walls[c.wall];
    r.data["crossings"].push_back({{"t", to_json(c.t)}, {"point", to_json(a + c.t * (b - a))}, {"wall", to_json(w)}});
    auto row = wall_row(w);
    row.insert(row.begin(), to_string(c.t));
    r.rows.push_back(row);
  }
  return r;
}

// The rank-two K3 family <H> + <D>, (H^2) = 2, (D^2) = -2n, with v = (2, 0, 1-2n)
// and the destabilizing (1, D, -n); its wall sits at t = 1/(4n).
SurfaceModel k3_h_d(long n) {
  if (n < 1) throw DomainError("family_n_positive", "family parameter n must be >= 1");
  return model_from(json{{"kind", "k3"},
                         {"gram", {{2, 0}, {0, -2 * n}}},
                         {"names", {"h", "d"}},
                         {"chi_O", 2},
                         {"polarization", {1, 0}}});
}

Result cmd_wallsolve(const json& in, const Options& o) {
  SurfaceModel m;
  MukaiVector v, vs;
  NSClass h, dir;
  if (in.contains("family") || (o.n > 0 && !in.contains("v"))) {
    if (in.value("family", std::string("k3_h_d")) != "k3_h_d") throw ParseError("unknown wallsolve family");
    long n = o.n > 0 ? o.n : long_of(need(in, "n"), "n");
    m = k3_h_d(n);
    dir = NSClass{0, 1};
    h = m.polarization;
    v = {2, NSClass(2), Rational(1 - 2 * n)};
    vs = {1, dir, Rational(-n)};
  } else {
    m = resolve_surface(o, in, "k3");
    v = vector_from(need(in, "v"), m);
    vs = vector_from(need(in, "v_sub"), m);
    h = in.contains("h") ? class_from(in["h"], m) : m.polarization;
    dir = class_from(need(in, "dir"), m);
  }
  auto sol = wall_solve_tf(v, vs, h, dir, m);
  Result r;
  r.data = {{"no_wall", sol.no_wall}, {"roots", json::array()}};
  for (auto& t : sol.roots) {
    r.data["roots"].push_back(to_json(t));
    r.rows.push_back({to_string(t)});
  }
  if (!sol.irrational_minpoly.empty()) {
    json mp = json::array();
    std::vector<std::string> cells{"minpoly"};
    for (auto& c : sol.irrational_minpoly) {
      mp.push_back(to_json(c));
      cells.push_back(to_string(c));
    }
    r.data["irrational_minpoly"] = mp;
    r.rows.push_back(cells);
  }
  if (sol.no_wall) r.rows.push_back({"no_wall"});
  return r;
}

Result poly_result(const LaurentPoly& p) { return {{{"poly", to_json(p)}}, {{p.to_string()}}}; }

Result cmd_epoly(const json& in, const Options& o) {
  const std::string kind = need(in, "kind").get<std::string>();
  if (kind == "gl") return poly_result(e_gl(long_of(need(in, "N"), "N")));
  if (kind == "hilb") {
    LaurentPoly ex = in.contains("hodge") ? poly_from(in["hodge"]) : enriques_hodge();
    long order = o.order >= 0 ? o.order : long_of(need(in, "order"), "order");
    auto s = hilb_series(ex, order);
    Result r;
    r.data = {{"series", json::array()}};
    for (long k = 0; k <= order; ++k) {
      r.data["series"].push_back(to_json(s[k]));
      r.rows.push_back({std::to_string(k), s[k].to_string()});
    }
    return r;
  }
  if (kind == "eta") {
    long order = o.order >= 0 ? o.order : long_of(need(in, "order"), "order");
    auto q = eta_inv12(order);
    Result r{{{"series", to_json(q)}}, {}};
    for (auto& [k, c] : q.coeffs) r.rows.push_back({to_string(frac(k, q.denom)), to_string(c)});
    return r;
  }
  if (kind == "wallcross") {
    std::vector<Stratum> strata;
    for (auto& s : need(in, "strata")) {
      Stratum st;
      for (auto& row : need(s, "pairing")) st.pairing.push_back(rationals_from(row));
      for (auto& f : need(s, "factors")) st.factors.push_back(poly_from(f));
      strata.push_back(std::move(st));
    }
    return poly_result(wallcross_epoly(poly_from(need(in, "base")), strata));
  }
  if (kind == "elliptic") {
    auto m = resolve_surface(o, in, "elliptic_rational");
    std::vector<EllipticWallTerm> terms;
    for (auto& t : need(in, "terms"))
      terms.push_back({long_of(need(t, "k"), "k"), poly_from(need(t, "e_shifted")), poly_from(need(t, "e_fiber"))});
    NSClass h = in.contains("h") ? class_from(in["h"], m) : m.polarization;
    return poly_result(elliptic_epoly_recursion(gamma_from(need(in, "gamma"), m), long_of(need(in, "l"), "l"),
                                                long_of(need(in, "d"), "d"), class_from(need(in, "alpha"), m), h, m,
                                                poly_from(need(in, "side")), terms));
  }
  throw ParseError("unknown epoly kind '" + kind + "'");
}

// Integer ranges for a lattice box; missing trailing coordinates are pinned to 0.
std::vector<std::pair<long, long>> int_ranges(const std::string& text, const json& in, size_t rank) {
  std::vector<std::pair<long, long>> out;
  if (!text.empty()) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
      auto comma = part.find(',');
      if (comma == std::string::npos) throw ParseError("box range '" + part + "' must be lo,hi");
      out.push_back({long_of(json(part.substr(0, comma)), "box"), long_of(json(part.substr(comma + 1)), "box")});
    }
  } else if (in.contains("box")) {
    for (auto& pr : in["box"]) out.push_back({long_of(pr.at(0), "box"), long_of(pr.at(1), "box")});
  } else {
    out.push_back({-1, 1});
  }
  if (out.size() > rank) throw ParseError("box has more ranges than the lattice rank");
  out.resize(rank, {0, 0});
  for (auto& [lo, hi] : out)
    if (lo > hi) throw DomainError("box_bounds", "box needs lo <= hi");
  return out;
}

Result cmd_partition(const json& in, const Options& o) {
  auto m = resolve_surface(o, in, "enriques");
  long r = o.r != 0 ? o.r : (in.contains("r") ? long_of(in["r"], "r") : 1);
  long order = o.order >= 0 ? o.order : (in.contains("order") ? long_of(in["order"], "order") : 4);
  auto box = lattice_box(int_ranges(o.box, in, m.rank()));
  auto z = hecke_Zr(r, m.ns, box, order);
  Result res;
  res.data = {{"r", r}, {"terms", to_json(z)}};
  res.rows.push_back({"#c", "E", "s", "coef"});
  for (auto& [k, v] : z) {
    std::vector<std::string> c;
    for (auto& x : k.c) c.push_back(to_string(x));
    res.rows.push_back({join(c), to_string(k.E), to_string(k.s), to_string(v)});
  }
  return res;
}

void trace_rows(const MoveTrace& t, Result& r) {
  r.rows.push_back({"#move", "detail", "before", "after", "square", "multiplicity", "external"});
  for (auto& s : t.steps)
    r.rows.push_back({to_string(s.move), s.detail, cell(to_json(s.before)), cell(to_json(s.after)),
                      to_string(s.square), to_string(s.multiplicity), s.external ? "yes" : "no"});
}

Result cmd_reduce(const json& in, const Options& o) {
  Result r;
  if (o.kind == "rank-one") {
    auto m = resolve_surface(o, in, "k3");
    auto t = reduce_to_rank_one(vector_from(need(in, "v"), m), m);
    r.data = to_json(t);
    trace_rows(t, r);
  } else if (o.kind == "enriques") {
    auto m = resolve_surface(o, in, "enriques");
    auto red = enriques_reduce(vector_from(need(in, "v"), m), m);
    r.data = to_json(red.trace);
    r.data["n"] = to_json(red.n);
    r.data["e_hilb"] = to_json(red.e_hilb);
    trace_rows(red.trace, r);
    r.rows.push_back({"#n", to_string(red.n)});
    r.rows.push_back({"#e_hilb", red.e_hilb.to_string()});
  } else if (o.kind == "elliptic-jacobian") {
    auto t = elliptic_gcd_reduce(rational_from(need(in, "r")).get_num(), rational_from(need(in, "d")).get_num());
    r.data = to_json(t);
    r.rows.push_back({"#move", "r0", "d0", "r1", "d1", "k"});
    for (auto& s : t.steps)
      r.rows.push_back({to_string(s.move), to_string(s.r0), to_string(s.d0), to_string(s.r1), to_string(s.d1),
                        to_string(s.k)});
  } else {
    throw ParseError("--kind must be rank-one, enriques or elliptic-jacobian");
  }
  return r;
}

Result kv_result(const json& data) {
  Result r{data, {}};
  for (auto& [k, v] : data.items()) r.rows.push_back({k, cell(v)});
  return r;
}

Result cmd_dims(const json& in, const Options& o) {
  auto m = resolve_surface(o, in, "k3");
  json out = json::object();
  if (in.contains("v")) {
    auto v = vector_from(in["v"], m);
    auto flavor = in.value("flavor", std::string("stack")) == "coarse" ? DimFlavor::coarse : DimFlavor::stack;
    out["square"] = to_json(mukai_square(v, m));
    out["multiplicity"] = to_json(multiplicity(v, m));
    out["dim"] = to_json(moduli_dim(v, m, flavor));
    if (m.kind == SurfaceKind::k3 || m.kind == SurfaceKind::abelian) {
      if (v.r > 0) {
        auto p = pss_bound(v, m);
        out["pss_bound"] = to_json(p.bound);
        out["pss_strict"] = p.strict;
      }
    }
  }
  if (in.contains("xi")) out["fiber_dim"] = to_json(fiber_dim(class_from(in["xi"], m), m));
  if (in.contains("filtration")) {
    std::vector<MukaiVector> vs;
    for (auto& x : in["filtration"]) vs.push_back(vector_from(x, m));
    auto dims = rationals_from(need(in, "dims"));
    auto fd = filtration_stack_dim(vs, dims, m);
    out["sum_form"] = to_json(fd.sum_form);
    out["deficit_form"] = to_json(fd.deficit_form);
    out["deficit_closed"] = to_json(fd.deficit_closed);
  }
  if (out.empty()) throw ParseError("dims needs 'v', 'xi' or 'filtration'");
  return kv_result(out);
}

GitData git_data_from(const json& j) {
  GitData d;
  d.h_m = rational_from(need(j, "h_m"));
  d.h_i_m = rationals_from(need(j, "h_i_m"));
  d.eps = rationals_from(need(j, "eps"));
  d.a1 = rational_from(need(j, "a1"));
  d.n = rational_from(need(j, "n"));
  return d;
}

GitDims git_dims_from(const json& j) {
  GitDims d;
  d.dimV = rational_from(need(j, "dimV"));
  d.dimVp = rational_from(need(j, "dimVp"));
  d.dim_alpha_VW = rational_from(need(j, "dim_alpha_VW"));
  d.dim_alpha_VpW = rational_from(need(j, "dim_alpha_VpW"));
  d.dim_alpha_i_V = rationals_from(need(j, "dim_alpha_i_V"));
  d.dim_V_i = rationals_from(need(j, "dim_V_i"));
  return d;
}

Result cmd_gitweight(const json& in, const Options&) {
  json out = json::object();
  if (in.contains("data")) {
    auto data = git_data_from(in["data"]);
    out["beta0"] = to_json(git_beta0(data));
    if (in.contains("dims")) {
      auto d = git_dims_from(in["dims"]);
      out["weight"] = to_json(git_weight(d, data));
      out["factored"] = to_json(git_weight_factored(d.dimVp, d.dim_alpha_VpW, d.dim_V_i, data));
    }
    if (in.contains("subspaces")) {
      std::vector<GitDims> subs;
      for (auto& s : in["subspaces"]) subs.push_back(git_dims_from(s));
      out["semistable"] = git_semistable(subs, data);
    }
  }
  if (in.contains("parabolic")) {
    auto& p = in["parabolic"];
    auto pe = parabolic_euler(rational_from(need(p, "chi_F_top")), rationals_from(need(p, "chi_gr")),
                              rationals_from(need(p, "alphas")), rational_from(need(p, "chi_E")));
    out["form1"] = to_json(pe.form1);
    out["form2"] = to_json(pe.form2);
    out["form2_literal"] = to_json(pe.form2_literal);
  }
  if (out.empty()) throw ParseError("gitweight needs 'data' or 'parabolic'");
  return kv_result(out);
}

using Handler = std::function<Result(const json&, const Options&)>;

// ---- self tests ---------------------------------------------------------------

struct Check {
  std::string name;
  bool ok;
  std::string note;
};

// Every key of `want` must match `got`; nested objects are compared the same way.
bool subset_match(const json& want, const json& got) {
  if (want.is_object()) {
    if (!got.is_object()) return false;
    for (auto& [k, v] : want.items())
      if (!got.contains(k) || !subset_match(v, got[k])) return false;
    return true;
  }
  if (want.is_array()) {
    if (!got.is_array() || got.size() != want.size()) return false;
    for (size_t i = 0; i < want.size(); ++i)
      if (!subset_match(want[i], got[i])) return false;
    return true;
  }
  return want == got;
}

std::vector<Check> run_fixtures(const std::string& command, const Handler& h, const Options& base) {
  std::vector<Check> out;
  if (!fs::is_directory(base.fixtures)) return {{"fixtures", false, "missing directory " + base.fixtures}};
  std::vector<fs::path> files;
  for (auto& e : fs::directory_iterator(base.fixtures))
    if (e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (auto& p : files) {
    json fx = parse_json(slurp(p.string()));
    if (fx.value("command", "") != command) continue;
    Options o = base;
    o.surface.clear();
    o.box.clear();
    o.order = -1;
    o.r = 0;
    o.n = 0;
    if (fx.contains("kind")) o.kind = fx["kind"].get<std::string>();
    if (fx.contains("flags")) {
      auto& f = fx["flags"];
      if (f.contains("order")) o.order = f["order"].get<long>();
      if (f.contains("r")) o.r = f["r"].get<long>();
      if (f.contains("n")) o.n = f["n"].get<long>();
      if (f.contains("box")) o.box = f["box"].get<std::string>();
    }
    std::string name = "fixture " + p.filename().string();
    try {
      auto res = h(fx.at("input"), o);
      bool ok = !fx.contains("expect_error") && subset_match(fx.value("expect", json::object()), res.data);
      // expect_contains: each listed element must match some element of the output list
      const json contains = fx.value("expect_contains", json::object());
      for (auto& [k, items] : contains.items())
        for (auto& want : items)
          ok = ok && res.data.contains(k) &&
               std::any_of(res.data[k].begin(), res.data[k].end(), [&](const json& g) { return subset_match(want, g); });
      out.push_back({name, ok, ok ? "" : "got " + res.data.dump()});
    } catch (const DomainError& e) {
      bool ok = fx.contains("expect_error") && fx["expect_error"] == e.precondition();
      out.push_back({name, ok, ok ? "" : e.what()});
    }
  }
  return out;
}

long uniform_int(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

std::vector<SurfaceModel> property_models() {
  return {k3_hyperbolic(), k3_elliptic(1), abelian_hyperbolic(), elliptic_rational(), enriques()};
}

std::vector<Check> properties(const std::string& command, const Options& o) {
  std::mt19937_64 rng(o.seed);
  const size_t n = static_cast<size_t>(std::max<long>(1, o.samples));
  std::vector<Check> out;
  auto check = [&](const std::string& name, auto&& body) {
    try {
      out.push_back({name, body(), ""});
    } catch (const std::exception& e) {
      out.push_back({name, false, e.what()});
    }
  };
  if (command == "pair") {
    check("pairing symmetric and bilinear", [&] {
      for (auto& m : property_models())
        for (size_t i = 0; i < n; ++i) {
          auto a = random_vector(m, rng), b = random_vector(m, rng), c = random_vector(m, rng);
          Rational s = random_rational(rng, 5);
          if (mukai_pair(a, b, m) != mukai_pair(b, a, m)) return false;
          if (mukai_pair(a + s * c, b, m) != mukai_pair(a, b, m) + s * mukai_pair(c, b, m)) return false;
        }
      return true;
    });
  } else if (command == "transform") {
    check("maps preserve the pairing", [&] {
      auto k3 = k3_hyperbolic(), ke = k3_elliptic(), en = enriques();
      std::vector<CohMap> maps{twist_map(NSClass{1, 2}, k3), map_from(json{{"kind", "cor_ext"}}, k3), jacobian_map(ke),
                               relative_map({3, 1, 0, 1, 0}, ke)};
      MukaiVector ox(1, NSClass(10), Rational(1, 2));
      maps.push_back(reflection_map(ox, en));
      for (auto& f : maps)
        if (!check_isometry(f, n, o.seed).ok) return false;
      return true;
    });
  } else if (command == "walls" || command == "chamberpath") {
    auto m = elliptic_rational();
    NSClass h{1, 3};
    GammaTriple g{0, NSClass{1, 2}, 1};
    auto walls = walls_dim1(g, h, Box{{{-2, 2}, {-2, 2}}}, m);
    check("sub-box walls are a subset", [&] {
      for (auto& w : walls_dim1(g, h, Box{{{-1, 1}, {0, 2}}}, m))
        if (std::none_of(walls.begin(), walls.end(), [&](const Wall& x) { return x.same_hyperplane(w) && x.D == w.D; }))
          return false;
      return true;
    });
    check("segments inside a chamber cross nothing", [&] {
      for (size_t i = 0; i < n; ++i) {
        NSClass a{random_rational(rng, 2), random_rational(rng, 2)}, b{random_rational(rng, 2), random_rational(rng, 2)};
        auto ca = chamber_locate(a, walls), cb = chamber_locate(b, walls);
        if (!std::holds_alternative<Chamber>(ca) || !std::holds_alternative<Chamber>(cb)) continue;
        bool same = std::get<Chamber>(ca).signs == std::get<Chamber>(cb).signs;
        if (same != chamber_path(a, b, walls).empty()) return false;
      }
      return true;
    });
  } else if (command == "wallsolve") {
    check("roots scale-invariant, t = 1/(4n)", [&] {
      for (long k = 1; k <= std::min<long>(40, static_cast<long>(n)); ++k) {
        auto m = k3_h_d(k);
        MukaiVector v{2, NSClass(2), Rational(1 - 2 * k)}, vs{1, NSClass{0, 1}, Rational(-k)};
        auto a = wall_solve_tf(v, vs, m.polarization, NSClass{0, 1}, m);
        auto b = wall_solve_tf(Rational(3) * v, Rational(7) * vs, m.polarization, NSClass{0, 1}, m);
        if (a.roots != b.roots || a.roots != std::vector<Rational>{frac(1, 4 * k)}) return false;
      }
      return true;
    });
  } else if (command == "epoly") {
    check("e_gl degree N^2", [&] {
      for (long k = 1; k <= 8; ++k)
        if (e_gl(k).xy_degree() != k * k) return false;
      return true;
    });
    check("eta^-12 matches Hilbert scheme Euler numbers", [&] {
      auto q = eta_inv12(20);
      auto h = hilb_euler(12, 20);
      for (long k = 0; k <= 20; ++k)
        if (q.coeff(2 * k - 1) != Rational(h[k])) return false;
      return true;
    });
  } else if (command == "partition") {
    check("coset count is sigma_1", [&] {
      for (long r = 1; r < 100; r += 2)
        if (static_cast<long>(hecke_cosets(r).size()) != sigma1(r)) return false;
      return true;
    });
    check("Hecke transform matches the Hilbert scheme side", [&] {
      auto lat = enriques().ns;
      std::vector<std::pair<long, long>> ranges(10, {0, 0});
      ranges[0] = ranges[1] = {-1, 1};
      auto box = lattice_box(ranges);
      for (auto [a, d] : {std::pair{1L, 3L}, std::pair{3L, 1L}})
        if (evidence_lhs(a, d, lat, box, 4) != evidence_rhs(a, d, lat, box, 4)) return false;
      return true;
    });
  } else if (command == "reduce") {
    auto preserved = [](const MoveTrace& t, const SurfaceModel& m) {
      Rational sq = mukai_square(t.start, m);
      Integer mu = multiplicity(t.start, m);
      for (auto& s : t.steps)
        if (mukai_square(s.after, m) != sq || multiplicity(s.after, m) != mu) return false;
      return t.end.r == 1;
    };
    check("rank-one reduction preserves <v^2> and m(v)", [&] {
      auto m = k3_hyperbolic();
      for (size_t i = 0; i < n; ++i) {
        auto v = random_vector(m, rng, 6, true);
        MoveTrace t;
        try {
          t = reduce_to_rank_one(v, m);
        } catch (const DomainError&) {
          continue;  // outside the admissible set
        }
        if (!preserved(t, m)) return false;
      }
      return true;
    });
    check("Enriques reduction preserves <v^2> and m(v)", [&] {
      auto m = enriques();
      for (size_t i = 0; i < std::min<size_t>(n, 60); ++i) {
        MukaiVector v = random_vector(m, rng, 4, true);
        v.r = 2 * uniform_int(rng, 0, 5) + 1;
        v.t = frac(-(2 * uniform_int(rng, -4, 8) + 1), 2);
        if (mukai_square(v, m) < -1 || multiplicity(v, m) != 1) continue;
        auto red = enriques_reduce(v, m);
        if (!preserved(red.trace, m) || 2 * red.n - 1 != mukai_square(v, m)) return false;
      }
      return true;
    });
    check("rank/degree reduction terminates", [&] {
      for (long r = 1; r <= 60; ++r)
        for (long d = -r; d <= r; ++d)
          if (::mukai::gcd(Integer(r), Integer(d)) == 1 && elliptic_gcd_reduce(r, d).ranks.back() != 1) return false;
      return true;
    });
  } else if (command == "dims") {
    check("filtration deficit forms agree", [&] {
      auto m = k3_hyperbolic();
      for (size_t i = 0; i < n; ++i) {
        std::vector<MukaiVector> vs;
        std::vector<Rational> dims;
        for (long k = 0; k < 1 + uniform_int(rng, 0, 4); ++k) {
          vs.push_back(random_vector(m, rng));
          dims.push_back(mukai_square(vs.back(), m) + 1);
        }
        auto fd = filtration_stack_dim(vs, dims, m);
        if (fd.deficit_form != fd.deficit_closed) return false;
      }
      return true;
    });
  } else if (command == "gitweight") {
    check("weight vanishes at 0 and V, factored form agrees", [&] {
      for (size_t i = 0; i < n; ++i) {
        size_t l = static_cast<size_t>(uniform_int(rng, 1, 4));
        GitData data;
        data.h_m = uniform_int(rng, 5, 40);
        data.a1 = uniform_int(rng, 1, 4);
        data.n = uniform_int(rng, 1, 5);
        GitDims full;
        for (size_t k = 0; k < l; ++k) {
          data.h_i_m.push_back(uniform_int(rng, 1, 30));
          data.eps.push_back(frac(uniform_int(rng, 0, 5), 5 * static_cast<long>(l)));
        }
        full.dimV = full.dimVp = data.h_m;
        full.dim_alpha_VW = full.dim_alpha_VpW = data.h_m + data.a1 * data.n;
        full.dim_alpha_i_V = data.h_i_m;
        for (size_t k = 0; k < l; ++k) full.dim_V_i.push_back(full.dimV - data.h_i_m[k]);
        GitDims zero = full;
        zero.dimVp = zero.dim_alpha_VpW = 0;
        zero.dim_V_i.assign(l, 0);
        GitDims mid = full;
        mid.dimVp = uniform_int(rng, 0, 40);
        mid.dim_alpha_VpW = uniform_int(rng, 0, 40);
        for (auto& x : mid.dim_V_i) x = uniform_int(rng, 0, 20);
        if (git_weight(full, data) != 0 || git_weight(zero, data) != 0) return false;
        if (git_weight(mid, data) != git_weight_factored(mid.dimVp, mid.dim_alpha_VpW, mid.dim_V_i, data))
          return false;
      }
      return true;
    });
  }
  return out;
}

int selftest(const std::string& command, const Handler& h, const Options& o, std::ostream& os) {
  auto checks = run_fixtures(command, h, o);
  auto props = properties(command, o);
  checks.insert(checks.end(), props.begin(), props.end());
  bool all = true;
  for (auto& c : checks) {
    os << (c.ok ? "PASS" : "FAIL") << "  " << command << ": " << c.name;
    if (!c.note.empty()) os << "  (" << c.note << ")";
    os << "\n";
    all = all && c.ok;
  }
  if (checks.empty()) os << "FAIL  " << command << ": no checks ran\n";
  return all && !checks.empty() ? 0 : 1;
}

void emit(const Result& r, const Options& o, std::ostream& os) {
  if (o.format == "json") {
    os << r.data.dump(2) << "\n";
    return;
  }
  for (auto& row : r.rows) os << join(row, "\t") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mukai: Mukai lattice, Fourier-Mukai and wall-crossing computations"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::pair<std::string, Handler>> commands{
      {"pair", cmd_pair},           {"transform", cmd_transform}, {"walls", cmd_walls},
      {"chamberpath", cmd_chamberpath}, {"wallsolve", cmd_wallsolve}, {"epoly", cmd_epoly},
      {"partition", cmd_partition}, {"reduce", cmd_reduce},       {"dims", cmd_dims},
      {"gitweight", cmd_gitweight}};
  const std::map<std::string, std::string> help{
      {"pair", "Mukai pairing <v, w>, or <v^2> without w"},
      {"transform", "apply a cohomological FM action to vectors"},
      {"walls", "candidate walls in a box of twisting parameters"},
      {"chamberpath", "walls crossed by the segment from -> to"},
      {"wallsolve", "wall position t for the direction family H + tD"},
      {"epoly", "virtual Hodge polynomials and series"},
      {"partition", "Hecke-transformed theta term lists"},
      {"reduce", "move-sequence traces down to rank one"},
      {"dims", "moduli, fiber and filtration dimensions"},
      {"gitweight", "GIT weights and parabolic Euler characteristics"}};

  std::map<std::string, CLI::App*> subs;
  for (auto& [name, h] : commands) {
    auto* s = app.add_subcommand(name, help.at(name));
    s->add_option("--surface", o.surface, "surface model: preset name, JSON file or inline JSON");
    s->add_option("--in", o.in, "input JSON file or inline JSON");
    s->add_option("--out", o.out, "write output here instead of stdout");
    s->add_option("--format", o.format, "json or tsv")->check(CLI::IsMember({"json", "tsv"}));
    s->add_option("--order", o.order, "series truncation order");
    s->add_option("--box", o.box, "box as \"lo,hi;lo,hi;...\"");
    s->add_option("--samples", o.samples, "samples per property check");
    s->add_option("--seed", o.seed, "RNG seed for property checks");
    s->add_option("--fixtures", o.fixtures, "fixture directory for --selftest");
    s->add_flag("--selftest", o.selftest, "run fixtures and property checks");
    if (name == "partition") s->add_option("--r", o.r, "Hecke order (odd)");
    if (name == "wallsolve") s->add_option("--n", o.n, "family parameter n");
    if (name == "reduce")
      s->add_option("--kind", o.kind, "rank-one, enriques or elliptic-jacobian")
          ->check(CLI::IsMember({"rank-one", "enriques", "elliptic-jacobian"}));
    subs[name] = s;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string name;
  Handler handler;
  for (auto& [n, h] : commands)
    if (subs[n]->parsed()) {
      name = n;
      handler = h;
    }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      std::cerr << "error: cannot write '" << o.out << "'\n";
      return 2;
    }
  }
  std::ostream& os = o.out.empty() ? std::cout : file;

  try {
    if (o.selftest) return selftest(name, handler, o, os);
    json in = o.in.empty() ? json::object() : load_json_arg(o.in);
    // A fixture file carries its input and flags; command-line flags win.
    if (in.is_object() && in.contains("command") && in.contains("input")) {
      json fx = in;
      in = fx["input"];
      auto f = fx.value("flags", json::object());
      if (o.order < 0 && f.contains("order")) o.order = f["order"].get<long>();
      if (o.r == 0 && f.contains("r")) o.r = f["r"].get<long>();
      if (o.n == 0 && f.contains("n")) o.n = f["n"].get<long>();
      if (o.box.empty() && f.contains("box")) o.box = f["box"].get<std::string>();
      if (fx.contains("kind") && subs[name]->count("--kind") == 0) o.kind = fx["kind"].get<std::string>();
    }
    emit(handler(in, o), o, os);
    return 0;
  } catch (const DomainError& e) {
    std::cerr << "error: precondition violated: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: parse: " << e.what() << "\n";
    return 2;
  }
}

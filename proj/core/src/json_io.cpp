#include "mukai/json_io.hpp"

namespace mukai::io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return j.at(key);
}

long long_from(const json& j, const char* what) {
  Rational q = rational_from(j);
  if (!is_integer(q) || !q.get_num().fits_slong_p())
    throw ParseError(std::string(what) + " must be a machine integer");
  return q.get_num().get_si();
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Rational rational_from(const json& j) {
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a rational (integer or \"p/q\" string), got " + j.dump());
}

json to_json(const Rational& q) { return to_string(q); }
json to_json(const Integer& z) { return to_string(z); }

NSClass class_from(const json& j, const SurfaceModel& m) {
  NSClass c(m.rank());
  if (j.is_array()) {
    if (j.size() != m.rank())
      throw ParseError("class has " + std::to_string(j.size()) + " coordinates, NS rank is " +
                       std::to_string(m.rank()));
    for (size_t i = 0; i < j.size(); ++i) c[i] = rational_from(j[i]);
    return c;
  }
  if (j.is_object()) {
    for (auto& [name, val] : j.items()) {
      auto i = m.ns.index_of(name);
      if (!i) throw ParseError("unknown basis class '" + name + "'");
      c[*i] = rational_from(val);
    }
    return c;
  }
  throw ParseError("expected an NS class (array or object)");
}

json to_json(const NSClass& c) {
  json a = json::array();
  for (auto& x : c.coords) a.push_back(to_json(x));
  return a;
}

MukaiVector vector_from(const json& j, const SurfaceModel& m) {
  if (j.is_object() && j.contains("rank"))
    return from_gamma({rational_from(j.at("rank")), class_from(field(j, "c1"), m), rational_from(field(j, "chi"))},
                      m);
  return {rational_from(field(j, "r")), class_from(field(j, "c"), m), rational_from(field(j, "t"))};
}

json to_json(const MukaiVector& v) { return {{"r", to_json(v.r)}, {"c", to_json(v.c)}, {"t", to_json(v.t)}}; }

json to_json(const GammaTriple& g) {
  return {{"rank", to_json(g.rank)}, {"c1", to_json(g.c1)}, {"chi", to_json(g.chi)}};
}

namespace {

SurfaceModel preset(const std::string& name, const json& j) {
  if (name == "k3" || name == "k3_hyperbolic") return k3_hyperbolic();
  if (name == "k3_elliptic") return k3_elliptic(j.contains("extra_rank") ? long_from(j["extra_rank"], "extra_rank") : 0);
  if (name == "abelian" || name == "abelian_hyperbolic") return abelian_hyperbolic();
  if (name == "elliptic_rational") return elliptic_rational();
  if (name == "enriques") return enriques();
  throw ParseError("unknown surface preset '" + name + "'");
}

}  // namespace

SurfaceModel model_from(const json& j) {
  if (j.is_string()) return preset(j.get<std::string>(), json::object());
  if (!j.is_object()) throw ParseError("expected a surface model");
  SurfaceModel m;
  if (j.contains("preset")) {
    m = preset(field(j, "preset").get<std::string>(), j);
  } else {
    m.kind = parse_surface_kind(field(j, "kind").get<std::string>());
    std::vector<std::vector<Integer>> gram;
    for (auto& row : field(j, "gram")) {
      std::vector<Integer> r;
      for (auto& x : row) {
        Rational q = rational_from(x);
        if (!is_integer(q)) throw ParseError("Gram entries must be integers");
        r.push_back(q.get_num());
      }
      gram.push_back(std::move(r));
    }
    std::vector<std::string> names;
    if (j.contains("names")) names = j["names"].get<std::vector<std::string>>();
    try {
      m.ns = make_lattice(std::move(gram), std::move(names));
    } catch (const DomainError& e) {
      throw ParseError(e.what());
    }
    m.chi_O = static_cast<int>(long_from(field(j, "chi_O"), "chi_O"));
    if (j.contains("epsilon")) m.epsilon = static_cast<int>(long_from(j["epsilon"], "epsilon"));
    if (j.contains("h1_O")) m.h1_O = static_cast<int>(long_from(j["h1_O"], "h1_O"));
    m.half_integral = j.value("half_integral", m.kind == SurfaceKind::enriques);
    if (m.kind == SurfaceKind::k3) m.epsilon = j.contains("epsilon") ? m.epsilon : 1;
  }
  if (j.contains("polarization")) m.polarization = class_from(j["polarization"], m);
  if (j.contains("effective")) {
    m.effective_generators.clear();
    for (auto& g : j["effective"]) m.effective_generators.push_back(class_from(g, m));
  }
  validate_model(m);
  return m;
}

json to_json(const SurfaceModel& m) {
  json gram = json::array();
  for (auto& row : m.ns.gram) {
    json r = json::array();
    for (auto& x : row) r.push_back(x.get_si());
    gram.push_back(r);
  }
  json j = {{"kind", to_string(m.kind)},
            {"gram", gram},
            {"names", m.ns.basis_names},
            {"chi_O", m.chi_O},
            {"epsilon", m.epsilon},
            {"h1_O", m.h1_O},
            {"half_integral", m.half_integral},
            {"polarization", to_json(m.polarization)}};
  if (!m.effective_generators.empty()) {
    json e = json::array();
    for (auto& g : m.effective_generators) e.push_back(to_json(g));
    j["effective"] = e;
  }
  return j;
}

CohMap map_from(const json& j, const SurfaceModel& m) {
  if (j.is_array()) {
    std::vector<CohMap> maps;
    for (auto& x : j) maps.push_back(map_from(x, m));
    return compose(maps);
  }
  const std::string kind = field(j, "kind").get<std::string>();
  const json params = j.value("params", json::object());
  int sign = 1;
  if (j.contains("sign")) {
    long s = long_from(j["sign"], "sign");
    if (s != 1 && s != -1) throw ParseError("sign must be +1 or -1");
    sign = static_cast<int>(s);
  }
  CohMap out;
  if (kind == "twist") {
    out = twist_map(class_from(field(params, "D"), m), m);
  } else if (kind == "reflection" || kind == "enriques_reflection") {
    MukaiVector v0 = params.contains("v0") ? vector_from(params["v0"], m)
                                           : MukaiVector(1, NSClass(m.rank()), Rational(1, 2));
    out = reflection_map(v0, m);
  } else if (kind == "isotropic" || kind == "isotropic_fm") {
    auto v1 = vector_from(field(params, "v1"), m);
    auto w1 = params.contains("w1") ? vector_from(params["w1"], m) : v1;
    NSClass h = params.contains("h") ? class_from(params["h"], m) : m.polarization;
    QMatrix hat;
    if (params.contains("hat"))
      for (auto& row : params["hat"]) {
        QVector r;
        for (auto& x : row) r.push_back(rational_from(x));
        hat.push_back(std::move(r));
      }
    out = isotropic_map(make_isotropic_fm(v1, w1, h, m, m, hat), m, m);
  } else if (kind == "cor_ext") {
    auto one = unit_vector(m);
    out = isotropic_map(make_isotropic_fm(one, one, m.polarization, m, m), m, m, -1);
  } else if (kind == "jacobian" || kind == "elliptic_jacobian") {
    out = jacobian_map(m);
  } else if (kind == "relative" || kind == "elliptic_relative") {
    RelativeParams p;
    if (params.contains("r")) p.r = rational_from(params["r"]).get_num();
    if (params.contains("d")) p.d = rational_from(params["d"]).get_num();
    if (params.contains("k")) p.k = rational_from(params["k"]).get_num();
    if (params.contains("chi_O_sigma")) p.chi_O_sigma = rational_from(params["chi_O_sigma"]);
    if (params.contains("chi_F0_f")) p.chi_F0_f = rational_from(params["chi_F0_f"]);
    out = relative_map(p, m);
  } else if (kind == "composite") {
    return map_from(field(params, "maps"), m);
  } else {
    throw ParseError("unknown map kind '" + kind + "'");
  }
  out.sign *= sign;
  return out;
}

json to_json(const Wall& w) {
  json n = json::array();
  for (auto& x : w.normal) n.push_back(to_json(x));
  return {{"normal", n}, {"offset", to_json(w.offset)}, {"D", to_json(w.D)}, {"n", to_json(w.n)}};
}

json to_json(const LaurentPoly& p) {
  json terms = json::array();
  for (auto& [e, c] : p.terms()) terms.push_back({e.first, e.second, to_json(c)});
  return {{"terms", terms}, {"text", p.to_string()}};
}

LaurentPoly poly_from(const json& j) {
  LaurentPoly p;
  if (j.is_object() && j.contains("xy")) {
    long k = 0;
    for (auto& c : j["xy"]) p += LaurentPoly::xy_power(k++, rational_from(c));
    return p;
  }
  if (!j.is_array()) throw ParseError("expected a polynomial: [[i, j, c], ...] or {\"xy\": [...]}");
  for (auto& t : j) {
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer())
      throw ParseError("polynomial term must be [i, j, c] with integer exponents");
    p += LaurentPoly::monomial(t[0].get<long>(), t[1].get<long>(), rational_from(t[2]));
  }
  return p;
}

Box box_from(const json& j, const SurfaceModel& m) {
  if (!j.is_array() || j.size() != m.rank())
    throw ParseError("box needs one [lo, hi] pair per NS coordinate (" + std::to_string(m.rank()) + ")");
  Box b;
  for (auto& pr : j) {
    if (!pr.is_array() || pr.size() != 2) throw ParseError("box entry must be [lo, hi]");
    b.bounds.push_back({rational_from(pr[0]), rational_from(pr[1])});
  }
  return b;
}

Box box_from_text(const std::string& text, const SurfaceModel& m) {
  json arr = json::array();
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(';', start);
    std::string part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    auto comma = part.find(',');
    if (comma == std::string::npos) throw ParseError("box range '" + part + "' must be lo,hi");
    arr.push_back({part.substr(0, comma), part.substr(comma + 1)});
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return box_from(arr, m);
}

json to_json(const QSeries& s) {
  json c = json::array();
  for (auto& [k, v] : s.coeffs) c.push_back({to_json(frac(k, s.denom)), to_json(v)});
  return {{"denominator", s.denom}, {"max_exponent", to_json(frac(s.max_num, s.denom))}, {"coefficients", c}};
}

json to_json(const TermMap& t) {
  json a = json::array();
  for (auto& [k, v] : t) {
    json c = json::array();
    for (auto& x : k.c) c.push_back(to_json(x));
    a.push_back({{"c", c}, {"E", to_json(k.E)}, {"s", to_json(k.s)}, {"coef", to_json(v)}});
  }
  return a;
}

json to_json(const MoveTrace& t) {
  json steps = json::array();
  for (auto& s : t.steps)
    steps.push_back({{"move", to_string(s.move)},
                     {"detail", s.detail},
                     {"before", to_json(s.before)},
                     {"after", to_json(s.after)},
                     {"square", to_json(s.square)},
                     {"multiplicity", to_json(s.multiplicity)},
                     {"external", s.external}});
  json params = json::object();
  for (auto& [k, v] : t.params) params[k] = v;
  return {{"start", to_json(t.start)}, {"end", to_json(t.end)}, {"params", params}, {"steps", steps}};
}

json to_json(const GcdTrace& t) {
  json steps = json::array();
  for (auto& s : t.steps) {
    json j = {{"move", to_string(s.move)},
              {"before", {to_json(s.r0), to_json(s.d0)}},
              {"after", {to_json(s.r1), to_json(s.d1)}}};
    if (s.move == Move::twist) j["k"] = to_json(s.k);
    steps.push_back(j);
  }
  json ranks = json::array();
  for (auto& r : t.ranks) ranks.push_back(to_json(r));
  return {{"steps", steps}, {"ranks", ranks}};
}

}  // namespace mukai::io

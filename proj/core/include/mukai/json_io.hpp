#pragma once

#include <json.hpp>

#include "mukai/fm.hpp"
#include "mukai/lattice.hpp"
#include "mukai/reduction.hpp"
#include "mukai/series.hpp"
#include "mukai/walls.hpp"

// JSON schema shared by the library and the CLI. Rationals are strings "p/q"
// or bare integers. All readers throw ParseError on malformed input.
namespace mukai::io {

using nlohmann::json;

json parse_json(const std::string& text);

Rational rational_from(const json& j);
json to_json(const Rational& q);
json to_json(const Integer& z);

// Array of coordinates, or an object {"basis name": coefficient, ...}.
NSClass class_from(const json& j, const SurfaceModel& m);
json to_json(const NSClass& c);

// {"r", "c", "t"} or {"rank", "c1", "chi"}.
MukaiVector vector_from(const json& j, const SurfaceModel& m);
json to_json(const MukaiVector& v);
json to_json(const GammaTriple& g);

// Preset name, {"preset": name, ...overrides}, or a full description with
// "kind", "gram", "names", "chi_O", "polarization", ...
SurfaceModel model_from(const json& j);
json to_json(const SurfaceModel& m);

// {"kind": ..., "params": {...}, "sign": +-1}, or an array (composite).
CohMap map_from(const json& j, const SurfaceModel& m);

json to_json(const Wall& w);
json to_json(const LaurentPoly& p);
// [[i, j, c], ...] or {"xy": [c0, c1, ...]} for polynomials in xy.
LaurentPoly poly_from(const json& j);
// [[lo, hi], ...], one pair per NS coordinate.
Box box_from(const json& j, const SurfaceModel& m);
// "lo,hi;lo,hi" as used on the command line.
Box box_from_text(const std::string& text, const SurfaceModel& m);
json to_json(const QSeries& s);
json to_json(const TermMap& t);
json to_json(const MoveTrace& t);
json to_json(const GcdTrace& t);

}  // namespace mukai::io

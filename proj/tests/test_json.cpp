#include <doctest.h>

#include "support.hpp"

using namespace mukai;
using namespace mukai::io;

TEST_CASE("rationals and vectors") {
  CHECK(rational_from(json(5)) == 5);
  CHECK(rational_from(json("-2/4")) == Rational(-1, 2));
  CHECK_THROWS_AS(rational_from(json(1.5)), ParseError);
  auto m = model_from(json("enriques"));
  auto v = vector_from(parse_json(R"({"r": 3, "c": {"sigma": 1, "e2": "-1"}, "t": "-1/2"})"), m);
  CHECK(v.r == 3);
  CHECK(v.c[0] == 1);
  CHECK(v.c[3] == -1);
  CHECK(vector_from(to_json(v), m) == v);
  auto g = vector_from(parse_json(R"({"rank": 1, "c1": [0,0,0,0,0,0,0,0,0,0], "chi": 1})"), m);
  CHECK(g == MukaiVector(1, NSClass(10), Rational(1, 2)));
  CHECK_THROWS_AS(vector_from(parse_json(R"({"r": 1, "c": [1, 2], "t": 0})"), m), ParseError);
  CHECK_THROWS_AS(vector_from(parse_json(R"({"r": 1, "c": {"zz": 1}, "t": 0})"), m), ParseError);
  CHECK_THROWS_AS(parse_json("{"), ParseError);
}

TEST_CASE("surface models") {
  auto m = model_from(parse_json(R"({"kind": "elliptic", "gram": [[-1,1],[1,0]], "names": ["sigma","f"],
                                     "chi_O": 1, "polarization": [1, 3]})"));
  CHECK(m.ns.square(m.polarization) == 5);
  auto back = model_from(to_json(m));
  CHECK(same_model(m, back));
  CHECK(back.polarization == m.polarization);
  auto p = model_from(parse_json(R"({"preset": "k3", "polarization": {"e": 1, "f": 1}})"));
  CHECK(p.polarization == NSClass{1, 1});
  CHECK_THROWS_AS(model_from(json("torus")), ParseError);
  CHECK_THROWS_AS(model_from(parse_json(R"({"kind": "k3", "gram": [[0,1],[1,0]], "chi_O": 1,
                                            "polarization": [1, 1]})")),
                  DomainError);
}

TEST_CASE("maps") {
  auto m = model_from(json("k3_elliptic"));
  auto f = map_from(parse_json(R"([{"kind": "twist", "params": {"D": {"f": 1}}},
                                   {"kind": "jacobian"}])"),
                    m);
  CHECK(f.kind_name() == "composite");
  auto c = map_from(parse_json(R"({"kind": "cor_ext"})"), model_from(json("k3")));
  auto k3 = model_from(json("k3"));
  CHECK(apply(c, {2, NSClass{1, -1}, -3}) == MukaiVector(3, NSClass{-1, 1}, -2));
  auto r = map_from(parse_json(R"({"kind": "relative", "params": {"r": 3, "d": 1}, "sign": -1})"), m);
  CHECK(r.sign == -1);
  CHECK_THROWS_AS(map_from(parse_json(R"({"kind": "nope"})"), m), ParseError);
  CHECK_THROWS_AS(map_from(parse_json(R"({"kind": "reflection"})"), m), DomainError);
}

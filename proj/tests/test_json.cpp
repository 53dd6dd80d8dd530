#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "subgeo/json_io.hpp"
#include "subgeo/random.hpp"

using namespace subgeo;
using nlohmann::json;

TEST_CASE("round trip preserves the span") {
  Rng rng(101);
  for (Field f : {Field::Real, Field::Complex}) {
    for (int p : {0, 1, 3, 5}) {
      const Subspace s = random_subspace(5, p, f, rng);
      const Subspace back = subspace_from_json(subspace_to_json(s));
      CHECK(back.dim() == p);
      CHECK(back.field() == f);
      CHECK(same_span(s, back));
    }
  }
}

TEST_CASE("file round trip") {
  Rng rng(103);
  const Subspace s = random_subspace(4, 2, Field::Complex, rng);
  const std::string path = "tmp_subspace_io.json";
  write_subspace_file(path, s);
  const Subspace back = read_subspace_file(path);
  CHECK(same_span(s, back));
  std::remove(path.c_str());
}

TEST_CASE("spanning vectors may be dependent") {
  const json j{{"field", "real"},
               {"ambient", 3},
               {"vectors", {{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {0.0, 1.0, 0.0}}}};
  CHECK(subspace_from_json(j).dim() == 2);
}

TEST_CASE("empty vector list is the zero subspace") {
  const json j{{"field", "complex"}, {"ambient", 4},
               {"vectors", json::array()}};
  const Subspace s = subspace_from_json(j);
  CHECK(s.dim() == 0);
  CHECK(s.ambient() == 4);
}

TEST_CASE("complex entries parse as [re, im]") {
  const json j{{"field", "complex"},
               {"ambient", 2},
               {"vectors", {{json::array({0.0, 1.0}), 0.0}}}};
  const Subspace s = subspace_from_json(j);
  CHECK(s.dim() == 1);
  CHECK(std::abs(std::abs(s.basis()(0, 0)) - 1.0) < 1e-15);
}

TEST_CASE("bare numbers are accepted in complex files") {
  const json j{{"field", "complex"}, {"ambient", 2}, {"vectors", {{1.0, 2.0}}}};
  CHECK(subspace_from_json(j).dim() == 1);
}

TEST_CASE("malformed input is rejected") {
  CHECK_THROWS_AS(subspace_from_json(json{{"ambient", 3}}), ParseError);
  CHECK_THROWS_AS(
      subspace_from_json(json{{"field", "quaternion"},
                              {"ambient", 2},
                              {"vectors", json::array()}}),
      ParseError);
  // wrong vector length
  CHECK_THROWS_AS(
      subspace_from_json(json{{"field", "real"},
                              {"ambient", 3},
                              {"vectors", {{1.0, 0.0}}}}),
      ParseError);
  // complex pair inside a real file
  CHECK_THROWS_AS(
      subspace_from_json(json{{"field", "real"},
                              {"ambient", 2},
                              {"vectors", {{json::array({1.0, 1.0}), 0.0}}}}),
      ParseError);
  // negative ambient
  CHECK_THROWS_AS(
      subspace_from_json(json{{"field", "real"},
                              {"ambient", -1},
                              {"vectors", json::array()}}),
      ParseError);
}

TEST_CASE("non-finite entries are rejected") {
  json j{{"field", "real"}, {"ambient", 2}, {"vectors", {{1.0, 0.0}}}};
  j["vectors"][0][0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(subspace_from_json(j), ParseError);
  j["vectors"][0][0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(subspace_from_json(j), ParseError);
}

TEST_CASE("unreadable or invalid files raise ParseError") {
  CHECK_THROWS_AS(read_subspace_file("does_not_exist.json"), ParseError);
  const std::string path = "tmp_bad_syntax.json";
  std::ofstream(path) << "{ not json";
  CHECK_THROWS_AS(read_subspace_file(path), ParseError);
  std::remove(path.c_str());
}

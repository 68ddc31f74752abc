// Copyright 2026 The conewitness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <string>

#include <unistd.h>

#include "conewitness/errors.hpp"
#include "conewitness/io.hpp"
#include "conewitness/map_catalog.hpp"
#include "doctest.h"

using namespace conewitness;
using io::Json;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kNotAState;
}

Json two_by_two() {
  return Json::parse(R"({"rows":2,"cols":2,"data":[[[1,0],[0,-1]],[[0,1],[2.5,0]]]})");
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("conewitness_io_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("parse_matrix reads [re, im] pairs row by row") {
  const io::MatrixFile f = io::parse_matrix(two_by_two());
  REQUIRE(f.matrix.rows() == 2);
  REQUIRE(f.matrix.cols() == 2);
  CHECK(f.matrix(0, 0) == Complex(1, 0));
  CHECK(f.matrix(0, 1) == Complex(0, -1));
  CHECK(f.matrix(1, 0) == Complex(0, 1));
  CHECK(f.matrix(1, 1) == Complex(2.5, 0));
  CHECK_FALSE(f.hermitian_tag);
  CHECK_FALSE(f.dim_in.has_value());

  Json tagged = two_by_two();
  tagged["hermitian"] = true;
  CHECK(io::parse_matrix(tagged).hermitian_tag);

  Json rect = Json::parse(R"({"rows":1,"cols":3,"data":[[[1,0],[2,0],[3,-4]]]})");
  const io::MatrixFile r = io::parse_matrix(rect);
  CHECK(r.matrix.cols() == 3);
  CHECK(r.matrix(0, 2) == Complex(3, -4));
}

TEST_CASE("parse_matrix rejects malformed documents") {
  const auto bad = [](const std::function<void(Json&)>& edit) {
    Json j = two_by_two();
    edit(j);
    return kind_of([&] { io::parse_matrix(j); });
  };
  CHECK(kind_of([] { io::parse_matrix(Json::array()); }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) { j.erase("rows"); }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) { j["rows"] = 0; }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) { j["cols"] = 1.5; }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) { j["rows"] = 3; }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) { j.erase("data"); }) == ErrorKind::kParseError);
  // Ragged row.
  CHECK(bad([](Json& j) { j["data"][1].erase(1); }) == ErrorKind::kParseError);
  // Entry that is not a pair.
  CHECK(bad([](Json& j) { j["data"][0][0] = Json::array({1.0}); }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) { j["data"][0][0] = 1.0; }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) { j["data"][0][0][1] = "x"; }) == ErrorKind::kParseError);
  // Non-finite values.
  CHECK(bad([](Json& j) { j["data"][0][0][0] = std::numeric_limits<double>::quiet_NaN(); }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) { j["data"][1][1][1] = std::numeric_limits<double>::infinity(); }) == ErrorKind::kParseError);
  // Hermitian tag must be a boolean and must be true to the data.
  CHECK(bad([](Json& j) { j["hermitian"] = "yes"; }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) {
          j["hermitian"] = true;
          j["data"][1][0] = Json::array({0.0, -1.0});
        }) == ErrorKind::kParseError);
  // Dimensions come as a pair and must factor the size.
  CHECK(bad([](Json& j) { j["dim_in"] = 1; }) == ErrorKind::kParseError);
  CHECK(bad([](Json& j) {
          j["dim_in"] = 2;
          j["dim_out"] = 2;
        }) == ErrorKind::kParseError);
  Json ok = two_by_two();
  ok["dim_in"] = 1;
  ok["dim_out"] = 2;
  const io::MatrixFile f = io::parse_matrix(ok);
  CHECK(*f.dim_in == 1);
  CHECK(*f.dim_out == 2);
}

TEST_CASE("read_matrix_file reports missing files and syntax errors as parse errors") {
  const auto dir = scratch_dir();
  CHECK(kind_of([&] { io::read_matrix_file((dir / "missing.json").string()); }) == ErrorKind::kParseError);
  const auto broken = dir / "broken.json";
  std::ofstream(broken) << "{\"rows\": 2,";
  CHECK(kind_of([&] { io::read_matrix_file(broken.string()); }) == ErrorKind::kParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("canonical_dump sorts keys and prints 17 significant digits") {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = 0.1;
  j["mid"] = Json{{"b", 2.0}, {"a", -1e-20}};
  j["flag"] = true;
  j["none"] = nullptr;
  j["list"] = Json::array({3.0, "s", 1.0 / 3.0});
  CHECK(io::canonical_dump(j) ==
        R"({"alpha":0.10000000000000001,"flag":true,"list":[3.0,"s",0.33333333333333331],)"
        R"("mid":{"a":-9.9999999999999995e-21,"b":2.0},"none":null,"zeta":1})");
  // Integers stay integers; integral doubles keep a ".0".
  CHECK(io::canonical_dump(Json(7)) == "7");
  CHECK(io::canonical_dump(Json(7.0)) == "7.0");
  CHECK(io::canonical_dump(Json(-0.0)) == "-0.0");
  CHECK(io::canonical_dump(Json(1e300)) == "1.0000000000000001e+300");
  CHECK(io::canonical_dump(Json(std::numeric_limits<double>::quiet_NaN())) == "null");
}

TEST_CASE("canonical_dump is a fixed point of parse and preserves doubles exactly") {
  Rng rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 50; ++trial) {
    Json j;
    Json arr = Json::array();
    for (int k = 0; k < 8; ++k) arr.push_back(g(rng) * std::pow(10.0, static_cast<int>(g(rng) * 10)));
    j["values"] = arr;
    j["nested"] = Json{{"q", g(rng)}, {"p", static_cast<int>(g(rng) * 100)}};
    const std::string once = io::canonical_dump(j);
    const Json back = Json::parse(once);
    CHECK(io::canonical_dump(back) == once);
    for (std::size_t k = 0; k < arr.size(); ++k) CHECK(back["values"][k].get<double>() == arr[k].get<double>());
  }
}

TEST_CASE("MatrixFile round trip is exact") {
  Rng rng(5);
  const LinearMatrixMap bh = breuer_hall(random_antisymmetric_unitary(4, rng));
  const io::MatrixFile f{bh.choi(), true, 4, 4};
  const std::string text = io::canonical_dump(io::matrix_file_json(f));
  const io::MatrixFile back = io::parse_matrix(Json::parse(text));
  CHECK(back.matrix == f.matrix);
  CHECK(back.hermitian_tag);
  CHECK(*back.dim_in == 4);
  CHECK(*back.dim_out == 4);
  CHECK(io::canonical_dump(io::matrix_file_json(back)) == text);

  ComplexVector v(2);
  v << Complex(0.5, -0.25), Complex(0, 1);
  CHECK(io::canonical_dump(io::vector_to_json(v)) == "[[0.5,-0.25],[0.0,1.0]]");
}

TEST_CASE("write_atomically replaces the file and leaves no temporaries") {
  const auto dir = scratch_dir();
  const auto target = dir / "report.json";
  io::write_atomically(target.string(), "first\n");
  CHECK(slurp(target) == "first\n");
  io::write_atomically(target.string(), "second\n");
  CHECK(slurp(target) == "second\n");
  int entries = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  CHECK_THROWS_AS(io::write_atomically((dir / "no_such_dir" / "x.json").string(), "x"), Error);
  std::filesystem::remove_all(dir);
}

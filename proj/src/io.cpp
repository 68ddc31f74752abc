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

#include "conewitness/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "conewitness/errors.hpp"

namespace conewitness::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::kParseError, what); }

double finite_number(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " is not a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_error(std::string(what) + " is not finite");
  return v;
}

int positive_int(const Json& doc, const char* key) {
  if (!doc.contains(key)) parse_error(std::string("missing \"") + key + "\"");
  const Json& j = doc.at(key);
  if (!j.is_number_integer() || j.get<long long>() < 1) parse_error(std::string("\"") + key + "\" must be a positive integer");
  return static_cast<int>(j.get<long long>());
}

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // nlohmann::json objects iterate in key order
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump_into(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        break;
      }
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", v);
      std::string s(buf);
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      out += s;
      break;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

MatrixFile parse_matrix(const Json& doc) {
  if (!doc.is_object()) parse_error("matrix document must be a JSON object");
  const int rows = positive_int(doc, "rows");
  const int cols = positive_int(doc, "cols");
  if (!doc.contains("data") || !doc.at("data").is_array()) parse_error("missing \"data\" array");
  const Json& data = doc.at("data");
  if (static_cast<int>(data.size()) != rows) parse_error("\"data\" has " + std::to_string(data.size()) + " rows, expected " + std::to_string(rows));
  MatrixFile out;
  out.matrix.resize(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const Json& row = data[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) parse_error("row " + std::to_string(i) + " is ragged");
    for (int j = 0; j < cols; ++j) {
      const Json& entry = row[static_cast<std::size_t>(j)];
      if (!entry.is_array() || entry.size() != 2) parse_error("entries must be [re, im] pairs");
      out.matrix(i, j) = Complex(finite_number(entry[0], "real part"), finite_number(entry[1], "imaginary part"));
    }
  }
  if (doc.contains("hermitian")) {
    if (!doc.at("hermitian").is_boolean()) parse_error("\"hermitian\" must be a boolean");
    out.hermitian_tag = doc.at("hermitian").get<bool>();
    if (out.hermitian_tag && !is_hermitian(out.matrix)) parse_error("matrix tagged Hermitian is not Hermitian");
  }
  if (doc.contains("dim_in")) out.dim_in = positive_int(doc, "dim_in");
  if (doc.contains("dim_out")) out.dim_out = positive_int(doc, "dim_out");
  if (out.dim_in.has_value() != out.dim_out.has_value()) parse_error("\"dim_in\" and \"dim_out\" come together");
  if (out.dim_in && (rows != cols || *out.dim_in * *out.dim_out != rows)) {
    parse_error("dim_in * dim_out must equal the matrix size");
  }
  return out;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
  return parse_matrix(doc);
}

Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    data.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json matrix_file_json(const MatrixFile& f) {
  Json j = matrix_to_json(f.matrix);
  j["hermitian"] = f.hermitian_tag;
  if (f.dim_in) j["dim_in"] = *f.dim_in;
  if (f.dim_out) j["dim_out"] = *f.dim_out;
  return j;
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(Json::array({v(i).real(), v(i).imag()}));
  return out;
}

std::string canonical_dump(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kParseError, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorKind::kParseError, "write to " + tmp.string() + " failed");
  }
  fs::rename(tmp, target);
}

}  // namespace conewitness::io

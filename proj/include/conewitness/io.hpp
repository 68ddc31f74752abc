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

#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "conewitness/linalg.hpp"

namespace conewitness::io {

using Json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1.0";

/// MatrixFile: {"rows": R, "cols": C, "data": [[[re, im], ...], ...]} with
/// optional "hermitian" (bool) and, for Choi matrices, "dim_in"/"dim_out".
struct MatrixFile {
  ComplexMatrix matrix;
  bool hermitian_tag = false;
  std::optional<int> dim_in;
  std::optional<int> dim_out;
};

/// Throws Error(ParseError) on missing fields, ragged rows, non-finite numbers,
/// or a Hermitian tag on a non-Hermitian matrix.
MatrixFile parse_matrix(const Json& doc);
MatrixFile read_matrix_file(const std::string& path);

Json matrix_to_json(const ComplexMatrix& m);
Json matrix_file_json(const MatrixFile& f);
Json vector_to_json(const ComplexVector& v);

/// Sorted keys, no whitespace, every floating-point number printed with 17
/// significant digits (and a trailing ".0" when that leaves it integral-looking),
/// so that dump(parse(dump(j))) == dump(j).
std::string canonical_dump(const Json& j);

/// Writes `content` to `path` via a temporary file in the same directory and a rename.
void write_atomically(const std::string& path, const std::string& content);

}  // namespace conewitness::io

// Copyright 2026 The punif Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Matrix files: {"n": 1, "d": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}.
// "n" may be omitted and is then inferred from the row count; when present it
// must agree with it.

#ifndef PUNIF_MATRIX_JSON_H
#define PUNIF_MATRIX_JSON_H

#include <filesystem>

#include "json.hpp"
#include "punif/dense_operator.h"

namespace punif {

nlohmann::json operator_to_json(const DenseOperator &op);
DenseOperator operator_from_json(const nlohmann::json &j);
UnitaryHandle unitary_from_json(const nlohmann::json &j, double tolerance = kDefaultUnitarityTolerance);

UnitaryHandle read_unitary_file(const std::filesystem::path &path, double tolerance = kDefaultUnitarityTolerance);
void write_operator_file(const std::filesystem::path &path, const DenseOperator &op);

}  // namespace punif

#endif

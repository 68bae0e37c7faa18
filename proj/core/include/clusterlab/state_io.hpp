// Copyright 2026 The clusterlab Authors
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

#include <nlohmann/json.hpp>

#include <string>
#include <variant>

#include "clusterlab/qstate.hpp"

// JSON forms of states. Complex numbers are always [re, im].
//   pure:    {"num_qubits": n, "amplitudes": [[re, im], ...]}
//   density: {"num_qubits": n, "matrix": [[re, im], ...]}   (row-major)
namespace clusterlab {

nlohmann::json to_json(const PureState& state);
nlohmann::json to_json(const DensityMatrix& rho);

PureState pure_state_from_json(const nlohmann::json& j);
DensityMatrix density_matrix_from_json(const nlohmann::json& j);

// Accepts either form; pure states are converted to density matrices.
DensityMatrix any_state_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);

}  // namespace clusterlab

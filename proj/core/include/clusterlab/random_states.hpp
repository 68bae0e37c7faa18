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

#include <Eigen/Dense>

#include <cstdint>
#include <random>

#include "clusterlab/qstate.hpp"

namespace clusterlab {

using Rng = std::mt19937_64;

// Independent generator for repetition `stream` of a run seeded with `seed`.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

// Haar-random single-qubit unitary.
Eigen::Matrix2cd random_unitary2(Rng& rng);

// Haar-random pure state.
PureState random_pure_state(int num_qubits, Rng& rng);

// Full-rank random density matrix from a square Ginibre matrix G:
// rho = G G^dag / Tr(G G^dag).
DensityMatrix random_density_matrix(int num_qubits, Rng& rng);

// Random fully product pure state (independent Haar qubits).
PureState random_product_state(int num_qubits, Rng& rng);

}  // namespace clusterlab

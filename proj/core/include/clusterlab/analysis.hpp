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

#include <array>
#include <vector>

#include "clusterlab/pauli.hpp"
#include "clusterlab/qstate.hpp"

// Entanglement persistency of a four-qubit state: what survives when one
// photon is measured along sigma_x, when one photon is lost, and when two
// photons are measured. Targets and witnesses come from the ideal cluster
// state, so a noisy input is compared against what the ideal one would give.
namespace clusterlab {

struct BranchResult {
  int outcome;  // +1 for +45, -1 for -45
  DensityMatrix state;
  double probability;
  double fidelity;  // to the projected ideal cluster
  double witness;
};

struct ProjectionReport {
  QubitLabel mode;
  std::vector<BranchResult> branches;  // outcome +1 first
  // True when the witness is an analogous construction rather than the
  // standard mode-d witness.
  bool derived_witness;
};

struct LossReport {
  QubitLabel mode;
  DensityMatrix state;
  double witness;
  bool derived_witness;
};

struct PairReport {
  std::array<QubitLabel, 2> modes;
  std::array<int, 2> outcomes;
  DensityMatrix state;
  double probability;
  double fidelity;
  double log_negativity;
};

struct ModePersistency {
  ProjectionReport projection;
  LossReport loss;
  // Log-negativity of the probability-weighted branch mixture, each single
  // qubit against the other two.
  std::array<double, 3> mixture_log_negativity;
  bool mixture_hv_diagonal;
};

struct PersistencyReport {
  std::vector<ModePersistency> modes;  // a, b, c, d
  PairReport pair;
};

// Ideal cluster projected onto sigma_x = outcome at `mode` (three qubits).
PureState projection_target(QubitLabel mode, int outcome);

// Eight stabilizers of projection_target(mode, outcome).
std::vector<PauliString> projected_stabilizers(QubitLabel mode, int outcome);

// Witness applied to the projected branch: the standard one for mode d,
// the GHZ-class analogue for the other modes.
OperatorExpr projection_witness(QubitLabel mode, int outcome);

// Witness applied after losing `mode`: 1 - S_A - S_B with S_A, S_B the two
// preferred cluster stabilizers acting trivially on the lost mode. For mode d
// this is 1 - ZZ1 - XXZ.
OperatorExpr loss_witness(QubitLabel mode);

ProjectionReport reduce_by_x_projection(const DensityMatrix& rho4, QubitLabel mode);
LossReport reduce_by_loss(const DensityMatrix& rho4, QubitLabel mode);

// Sequential sigma_x projections of two modes. For (b, c) with outcomes
// (-1, -1) the ideal cluster leaves (|H->-|V+>)/sqrt2 on (a, d).
PairReport reduce_to_pair(const DensityMatrix& rho4, std::array<QubitLabel, 2> modes,
                          std::array<int, 2> outcomes);

// sum_k p_k rho_k over the branches.
DensityMatrix branch_mixture(const ProjectionReport& report);

// Log-negativity of each single qubit against the rest.
std::vector<double> single_qubit_negativities(const DensityMatrix& rho);

// All off-diagonal entries below `tolerance` in magnitude.
bool is_hv_diagonal(const DensityMatrix& rho, double tolerance = 1e-12);

PersistencyReport persistency_report(const DensityMatrix& rho4);

nlohmann::json to_json(const PersistencyReport& report);

}  // namespace clusterlab

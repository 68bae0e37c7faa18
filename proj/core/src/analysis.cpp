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

#include "clusterlab/analysis.hpp"

#include <algorithm>

#include "clusterlab/errors.hpp"
#include "clusterlab/stabilizer.hpp"

namespace clusterlab {
namespace {

void check_four_qubits(const DensityMatrix& rho) {
  if (rho.num_qubits() != 4) throw DomainError("persistency analysis needs a four-qubit state");
}

void check_mode(QubitLabel mode) {
  if (mode.position() < 0 || mode.position() > 3) {
    throw DomainError(std::string("invalid mode ") + mode.name());
  }
}

}  // namespace

PureState projection_target(QubitLabel mode, int outcome) {
  check_mode(mode);
  return project_pure(make_cluster4(), mode, Axis::X, outcome).state;
}

std::vector<PauliString> projected_stabilizers(QubitLabel mode, int outcome) {
  check_mode(mode);
  if (outcome != 1 && outcome != -1) throw DomainError("outcome must be +1 or -1");
  const StabilizerGroup group = full_group(cluster4_generators());
  std::vector<PauliString> out;
  for (const PauliString& s : group.elements) {
    const Pauli p = s[mode.position()];
    if (p == Pauli::Y || p == Pauli::Z) continue;
    PauliString reduced = s.without({mode.position()});
    if (p == Pauli::X && outcome < 0) reduced = reduced.negated();
    out.push_back(std::move(reduced));
  }
  return out;
}

OperatorExpr projection_witness(QubitLabel mode, int outcome) {
  if (mode == kModeD) return witness_c3(outcome);
  return ghz_class_witness(projected_stabilizers(mode, outcome));
}

OperatorExpr loss_witness(QubitLabel mode) {
  check_mode(mode);
  if (mode == kModeD) return witness_rho_abc();
  std::vector<PauliString> surviving;
  for (const PauliString& s : full_group(cluster4_generators()).elements) {
    if (s[mode.position()] == Pauli::I && !s.is_identity()) {
      surviving.push_back(s.without({mode.position()}));
    }
  }
  std::sort(surviving.begin(), surviving.end(), preferred_stabilizer);
  return pair_witness(surviving.at(0), surviving.at(1));
}

ProjectionReport reduce_by_x_projection(const DensityMatrix& rho4, QubitLabel mode) {
  check_four_qubits(rho4);
  check_mode(mode);
  ProjectionReport report{mode, {}, mode != kModeD};
  for (int outcome : {+1, -1}) {
    Projection p = [&]() -> Projection {
      try {
        return project(rho4, mode, Axis::X, outcome);
      } catch (const ImpossibleOutcome&) {
        return {DensityMatrix::maximally_mixed(3), 0.0};
      }
    }();
    const double f = fidelity(p.state, projection_target(mode, outcome));
    const double w = expectation(p.state, projection_witness(mode, outcome));
    report.branches.push_back({outcome, std::move(p.state), p.probability, f, w});
  }
  return report;
}

LossReport reduce_by_loss(const DensityMatrix& rho4, QubitLabel mode) {
  check_four_qubits(rho4);
  check_mode(mode);
  std::vector<QubitLabel> keep;
  for (int k = 0; k < 4; ++k) {
    if (k != mode.position()) keep.emplace_back(k);
  }
  DensityMatrix reduced = partial_trace(rho4, keep);
  const double w = expectation(reduced, loss_witness(mode));
  return {mode, std::move(reduced), w, mode != kModeD};
}

PairReport reduce_to_pair(const DensityMatrix& rho4, std::array<QubitLabel, 2> modes,
                          std::array<int, 2> outcomes) {
  check_four_qubits(rho4);
  check_mode(modes[0]);
  check_mode(modes[1]);
  if (modes[0] == modes[1]) throw DomainError("pair reduction needs two distinct modes");
  // Project the later mode first so the earlier one keeps its position.
  std::array<int, 2> order = {0, 1};
  if (modes[0] < modes[1]) order = {1, 0};

  const Projection first = project(rho4, modes[order[0]], Axis::X, outcomes[order[0]]);
  const Projection second = project(first.state, modes[order[1]], Axis::X, outcomes[order[1]]);
  const PureProjection t1 =
      project_pure(make_cluster4(), modes[order[0]], Axis::X, outcomes[order[0]]);
  const PureProjection t2 = project_pure(t1.state, modes[order[1]], Axis::X, outcomes[order[1]]);

  PairReport out{modes,
                 outcomes,
                 second.state,
                 first.probability * second.probability,
                 fidelity(second.state, t2.state),
                 logarithmic_negativity(second.state, {QubitLabel(0)})};
  return out;
}

DensityMatrix branch_mixture(const ProjectionReport& report) {
  std::vector<std::pair<double, DensityMatrix>> parts;
  for (const BranchResult& b : report.branches) parts.emplace_back(b.probability, b.state);
  return mixture(parts);
}

std::vector<double> single_qubit_negativities(const DensityMatrix& rho) {
  std::vector<double> out;
  for (int k = 0; k < rho.num_qubits(); ++k) {
    out.push_back(logarithmic_negativity(rho, {QubitLabel(k)}));
  }
  return out;
}

bool is_hv_diagonal(const DensityMatrix& rho, double tolerance) {
  const Eigen::MatrixXcd& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      if (r != c && std::abs(m(r, c)) > tolerance) return false;
  return true;
}

PersistencyReport persistency_report(const DensityMatrix& rho4) {
  check_four_qubits(rho4);
  PersistencyReport report{{}, reduce_to_pair(rho4, {kModeB, kModeC}, {-1, -1})};
  for (QubitLabel mode : {kModeA, kModeB, kModeC, kModeD}) {
    ProjectionReport projection = reduce_by_x_projection(rho4, mode);
    const DensityMatrix mix = branch_mixture(projection);
    const std::vector<double> neg = single_qubit_negativities(mix);
    report.modes.push_back({std::move(projection), reduce_by_loss(rho4, mode),
                            {neg[0], neg[1], neg[2]}, is_hv_diagonal(mix)});
  }
  return report;
}

nlohmann::json to_json(const PersistencyReport& report) {
  nlohmann::json modes = nlohmann::json::array();
  for (const ModePersistency& m : report.modes) {
    nlohmann::json branches = nlohmann::json::array();
    for (const BranchResult& b : m.projection.branches) {
      branches.push_back({{"outcome", b.outcome},
                          {"probability", b.probability},
                          {"fidelity", b.fidelity},
                          {"witness", b.witness}});
    }
    modes.push_back({{"mode", std::string(1, m.projection.mode.name())},
                     {"branches", std::move(branches)},
                     {"loss", {{"witness", m.loss.witness}}},
                     {"derived_witness", m.projection.derived_witness},
                     {"mixture_log_negativity", m.mixture_log_negativity},
                     {"mixture_hv_diagonal", m.mixture_hv_diagonal}});
  }
  const PairReport& p = report.pair;
  return {{"modes", std::move(modes)},
          {"pair",
           {{"measured", std::string{p.modes[0].name(), p.modes[1].name()}},
            {"outcomes", p.outcomes},
            {"probability", p.probability},
            {"fidelity", p.fidelity},
            {"log_negativity", p.log_negativity}}}};
}

}  // namespace clusterlab

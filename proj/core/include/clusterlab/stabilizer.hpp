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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clusterlab/analysis_result.hpp"
#include "clusterlab/basis.hpp"
#include "clusterlab/pauli.hpp"
#include "clusterlab/qstate.hpp"

namespace clusterlab {

// Bell operator bounds: local hidden variables cannot exceed 2; the cluster
// state reaches the algebraic maximum 4.
inline constexpr double kBellLocalBound = 2.0;
inline constexpr double kBellMaximum = 4.0;

// One local measurement axis per qubit.
class MeasurementSetting {
 public:
  explicit MeasurementSetting(std::vector<Axis> axes);
  static MeasurementSetting parse(std::string_view text);  // e.g. "XXZZ"

  const std::vector<Axis>& axes() const { return axes_; }
  int num_qubits() const { return static_cast<int>(axes_.size()); }
  std::string to_string() const;

  // True when every non-identity letter of `op` matches the axis there.
  bool measures(const PauliString& op) const;

  friend bool operator==(const MeasurementSetting&, const MeasurementSetting&) = default;
  friend auto operator<=>(const MeasurementSetting&, const MeasurementSetting&) = default;

 private:
  std::vector<Axis> axes_;
};

struct StabilizerGroup {
  std::vector<PauliString> generators;
  // elements[mask] is the product of the generators whose bit is set in
  // `mask` (bit k <-> generator k), so elements[0] is the identity.
  std::vector<PauliString> elements;

  bool contains(const PauliString& op) const;
};

// +ZZ11, +XXZ1, +1ZXX, +11ZZ.
std::vector<PauliString> cluster4_generators();

// The 16 cluster stabilizers in the customary listing order: the four
// generators, then -YYZ1, Z1XX, ZZZZ, XYYX, XX1Z, -1ZYY, YXYX, -YY1Z, -Z1YY,
// XYXY, YXXY and finally the identity.
std::vector<PauliString> cluster4_stabilizers();

// All 2^k products of k independent, pairwise commuting generators.
StabilizerGroup full_group(const std::vector<PauliString>& generators);

// Mean of the stabilizer expectations. For a graph state this equals the
// fidelity, since |G><G| = 2^-n sum_k S_k. The second form propagates
// independent errors: sigma = sqrt(sum sigma_k^2) / count.
AnalysisResult fidelity_from_stabilizers(std::span<const double> expectations);
AnalysisResult fidelity_from_stabilizers(std::span<const AnalysisResult> expectations);

// Projector-sum operator (1/|G|) sum_k S_k; its expectation is the fidelity.
OperatorExpr fidelity_operator(const StabilizerGroup& group);

// 3*1 - (ZZ11 + 1)(1ZXX + 1)/2 - (XXZ1 + 1)(11ZZ + 1)/2, expanded into
// 2*1 - (ZZ11 + 1ZXX + Z1XX + XXZ1 + 11ZZ + XX1Z)/2.
OperatorExpr witness_c4();

// Z1XX + XYYX + XYXY - Z1YY.
OperatorExpr bell_operator();
double bell_value(const DensityMatrix& rho);

// Genuine tripartite witnesses for the three-qubit states left after
// projecting mode d of the cluster onto +/-45:
//   W(sign) = 3/2 - XXZ - (ZZ1 + sign Z1X + sign 1ZX)/2
OperatorExpr witness_c3(int sign);
// Entanglement witness for the state left after losing mode d:
//   1 - ZZ1 - XXZ
OperatorExpr witness_rho_abc();

// Witness of the form 3/2 - S1 - (S2 + S3 + S2 S3)/2 for a three-qubit
// stabilizer state of GHZ class, built from its 8-element group: S2, S3 span
// the weight-2 elements and S1 is the preferred weight-3 element (positive
// sign, fewest Y, then letter order X < Y < Z).
OperatorExpr ghz_class_witness(const std::vector<PauliString>& group);

// 1 - S_A - S_B for two commuting stabilizers.
OperatorExpr pair_witness(const PauliString& a, const PauliString& b);

// Sort key used to pick among equivalent stabilizers: positive sign first,
// then fewer Y letters, then letters in X < Y < Z order.
bool preferred_stabilizer(const PauliString& lhs, const PauliString& rhs);

struct PlannedSetting {
  MeasurementSetting setting;
  std::vector<PauliString> covered;
};

// Greedy cover: repeatedly take the setting that measures the most still
// uncovered targets, ties going to the first setting in X < Y < Z order
// (mode a most significant). Each target is listed under exactly one setting.
std::vector<PlannedSetting> settings_plan(const std::vector<PauliString>& targets);

// All 3^n settings in X < Y < Z order.
std::vector<MeasurementSetting> all_settings(int num_qubits);

}  // namespace clusterlab

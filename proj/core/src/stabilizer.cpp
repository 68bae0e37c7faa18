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

#include "clusterlab/stabilizer.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "clusterlab/errors.hpp"

namespace clusterlab {

MeasurementSetting::MeasurementSetting(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.empty() || static_cast<int>(axes_.size()) > kMaxQubits) {
    throw DomainError("measurement setting needs 1.." + std::to_string(kMaxQubits) + " axes");
  }
}

MeasurementSetting MeasurementSetting::parse(std::string_view text) {
  std::vector<Axis> axes;
  for (char c : text) axes.push_back(axis_from_char(c));
  return MeasurementSetting(std::move(axes));
}

std::string MeasurementSetting::to_string() const {
  std::string out;
  for (Axis a : axes_) out.push_back(axis_char(a));
  return out;
}

bool MeasurementSetting::measures(const PauliString& op) const {
  if (op.num_qubits() != num_qubits()) return false;
  for (int k = 0; k < num_qubits(); ++k) {
    const Pauli p = op[k];
    if (p == Pauli::I) continue;
    const Axis needed = p == Pauli::X ? Axis::X : (p == Pauli::Y ? Axis::Y : Axis::Z);
    if (axes_[k] != needed) return false;
  }
  return true;
}

bool StabilizerGroup::contains(const PauliString& op) const {
  return std::find(elements.begin(), elements.end(), op) != elements.end();
}

std::vector<PauliString> cluster4_generators() {
  return {PauliString::parse("ZZ11"), PauliString::parse("XXZ1"), PauliString::parse("1ZXX"),
          PauliString::parse("11ZZ")};
}

std::vector<PauliString> cluster4_stabilizers() {
  std::vector<PauliString> out;
  for (const char* s : {"ZZ11", "XXZ1", "1ZXX", "11ZZ", "-YYZ1", "Z1XX", "ZZZZ", "XYYX", "XX1Z",
                        "-1ZYY", "YXYX", "-YY1Z", "-Z1YY", "XYXY", "YXXY", "1111"}) {
    out.push_back(PauliString::parse(s));
  }
  return out;
}

StabilizerGroup full_group(const std::vector<PauliString>& generators) {
  if (generators.empty()) throw DomainError("no stabilizer generators");
  const int n = generators.front().num_qubits();
  const std::size_t k = generators.size();
  if (static_cast<int>(k) > n) throw DomainError("more generators than qubits");
  for (std::size_t i = 0; i < k; ++i) {
    if (generators[i].num_qubits() != n) throw DomainError("generators differ in length");
    for (std::size_t j = i + 1; j < k; ++j) {
      if (!generators[i].commutes_with(generators[j])) {
        throw DomainError("generators " + generators[i].to_string() + " and " +
                          generators[j].to_string() + " do not commute");
      }
    }
  }
  StabilizerGroup group{generators, {}};
  group.elements.reserve(std::size_t{1} << k);
  std::set<std::vector<Pauli>> seen;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    PauliString element = PauliString::identity(n);
    for (std::size_t g = 0; g < k; ++g) {
      if (mask & (1u << g)) element = element * generators[g];
    }
    if (!seen.insert(element.letters()).second || (mask != 0 && element.is_identity())) {
      throw DomainError("stabilizer generators are not independent");
    }
    group.elements.push_back(std::move(element));
  }
  return group;
}

AnalysisResult fidelity_from_stabilizers(std::span<const double> expectations) {
  const std::size_t count = expectations.size();
  if (count < 2 || (count & (count - 1)) != 0) {
    throw DomainError("need 2^n stabilizer expectations, got " + std::to_string(count));
  }
  double sum = 0;
  for (double e : expectations) {
    if (!(e >= -1.0 - 1e-12 && e <= 1.0 + 1e-12)) {
      throw DomainError("stabilizer expectation outside [-1, 1]");
    }
    sum += e;
  }
  return {sum / static_cast<double>(count), 0.0};
}

AnalysisResult fidelity_from_stabilizers(std::span<const AnalysisResult> expectations) {
  std::vector<double> values;
  double variance = 0;
  for (const AnalysisResult& r : expectations) {
    if (r.sigma < 0) throw DomainError("negative standard error");
    values.push_back(r.value);
    variance += r.sigma * r.sigma;
  }
  AnalysisResult out = fidelity_from_stabilizers(values);
  out.sigma = std::sqrt(variance) / static_cast<double>(values.size());
  return out;
}

OperatorExpr fidelity_operator(const StabilizerGroup& group) {
  OperatorExpr op;
  const double w = 1.0 / static_cast<double>(group.elements.size());
  for (const PauliString& s : group.elements) op.add(w, s);
  return op;
}

OperatorExpr witness_c4() {
  OperatorExpr w;
  w.add(2.0, "1111");
  for (const char* s : {"ZZ11", "1ZXX", "Z1XX", "XXZ1", "11ZZ", "XX1Z"}) w.add(-0.5, s);
  return w;
}

OperatorExpr bell_operator() {
  OperatorExpr s;
  s.add(1.0, "Z1XX").add(1.0, "XYYX").add(1.0, "XYXY").add(-1.0, "Z1YY");
  return s;
}

double bell_value(const DensityMatrix& rho) {
  if (rho.num_qubits() != 4) throw DomainError("Bell operator acts on four qubits");
  return expectation(rho, bell_operator());
}

OperatorExpr witness_c3(int sign) {
  if (sign != 1 && sign != -1) throw DomainError("witness sign must be +1 or -1");
  OperatorExpr w;
  w.add(1.5, "111").add(-1.0, "XXZ").add(-0.5, "ZZ1").add(-0.5 * sign, "Z1X").add(-0.5 * sign,
                                                                                  "1ZX");
  return w;
}

OperatorExpr witness_rho_abc() {
  OperatorExpr w;
  w.add(1.0, "111").add(-1.0, "ZZ1").add(-1.0, "XXZ");
  return w;
}

bool preferred_stabilizer(const PauliString& lhs, const PauliString& rhs) {
  auto y_count = [](const PauliString& p) {
    return std::count(p.letters().begin(), p.letters().end(), Pauli::Y);
  };
  if (lhs.sign() != rhs.sign()) return lhs.sign() > rhs.sign();
  if (y_count(lhs) != y_count(rhs)) return y_count(lhs) < y_count(rhs);
  return lhs.letters() < rhs.letters();
}

OperatorExpr ghz_class_witness(const std::vector<PauliString>& group) {
  if (group.size() != 8 || group.front().num_qubits() != 3) {
    throw DomainError("GHZ-class witness needs the 8-element group of a three-qubit state");
  }
  std::vector<PauliString> pairs;
  std::vector<PauliString> triples;
  for (const PauliString& s : group) {
    // a weight-1 element means one qubit factors out
    if (s.weight() == 1) throw DomainError("stabilizer group is not of GHZ class");
    if (s.weight() == 2) pairs.push_back(s);
    if (s.weight() == 3) triples.push_back(s);
  }
  if (pairs.size() != 3 || triples.empty()) {
    throw DomainError("stabilizer group is not of GHZ class");
  }
  std::sort(pairs.begin(), pairs.end(), preferred_stabilizer);
  std::sort(triples.begin(), triples.end(), preferred_stabilizer);
  OperatorExpr w;
  w.add(1.5, PauliString::identity(3));
  w.add(-1.0, triples.front());
  w.add(-0.5, pairs[0]).add(-0.5, pairs[1]).add(-0.5, pairs[0] * pairs[1]);
  return w;
}

OperatorExpr pair_witness(const PauliString& a, const PauliString& b) {
  if (!a.commutes_with(b)) throw DomainError("pair witness needs commuting stabilizers");
  OperatorExpr w;
  w.add(1.0, PauliString::identity(a.num_qubits())).add(-1.0, a).add(-1.0, b);
  return w;
}

std::vector<MeasurementSetting> all_settings(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) throw DomainError("bad qubit count");
  std::vector<MeasurementSetting> out;
  int total = 1;
  for (int k = 0; k < num_qubits; ++k) total *= 3;
  for (int code = 0; code < total; ++code) {
    std::vector<Axis> axes(num_qubits);
    int rest = code;
    for (int k = num_qubits - 1; k >= 0; --k) {
      axes[k] = static_cast<Axis>(rest % 3);
      rest /= 3;
    }
    out.emplace_back(std::move(axes));
  }
  return out;
}

std::vector<PlannedSetting> settings_plan(const std::vector<PauliString>& targets) {
  if (targets.empty()) throw DomainError("settings plan needs at least one target");
  const int n = targets.front().num_qubits();
  for (const PauliString& t : targets) {
    if (t.num_qubits() != n) throw DomainError("plan targets differ in length");
  }
  const std::vector<MeasurementSetting> candidates = all_settings(n);
  std::vector<bool> covered(targets.size(), false);
  std::size_t remaining = targets.size();
  std::vector<PlannedSetting> plan;
  while (remaining > 0) {
    std::size_t best = 0;
    std::size_t best_count = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      std::size_t count = 0;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        if (!covered[t] && candidates[c].measures(targets[t])) ++count;
      }
      if (count > best_count) {
        best = c;
        best_count = count;
      }
    }
    PlannedSetting step{candidates[best], {}};
    for (std::size_t t = 0; t < targets.size(); ++t) {
      if (!covered[t] && candidates[best].measures(targets[t])) {
        covered[t] = true;
        step.covered.push_back(targets[t]);
        --remaining;
      }
    }
    plan.push_back(std::move(step));
  }
  return plan;
}

}  // namespace clusterlab

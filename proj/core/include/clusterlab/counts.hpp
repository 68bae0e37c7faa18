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
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clusterlab/analysis_result.hpp"
#include "clusterlab/pauli.hpp"
#include "clusterlab/qstate.hpp"
#include "clusterlab/random_states.hpp"
#include "clusterlab/stabilizer.hpp"

// Coincidence-count statistics: exact outcome probabilities per measurement
// setting, Poissonian synthetic counts, detector-efficiency correction and
// estimators with first-order propagated errors.
//
// Outcome index convention: bit k (mode a most significant) is set when
// qubit k gave -1 (V, -45 or R). Index 0 is "++++".
namespace clusterlab {

std::string outcome_label(unsigned outcome, int num_qubits);
unsigned outcome_from_label(std::string_view label);

struct CountRecord {
  MeasurementSetting setting;
  std::vector<std::uint64_t> counts;  // 2^n bins

  std::uint64_t total() const;
};

// Relative detector efficiencies, two detectors per mode ('+' and '-'
// analyzer port). Stored normalized so that the largest equals 1.
class EfficiencyTable {
 public:
  static EfficiencyTable uniform(int num_qubits);
  // Entry k holds {eta(+), eta(-)} of qubit k.
  explicit EfficiencyTable(std::vector<std::array<double, 2>> per_qubit);

  // JSON map detector-id -> efficiency, ids "a+", "a-", "b+", ...
  static EfficiencyTable from_json(const nlohmann::json& j, int num_qubits);
  nlohmann::json to_json() const;

  int num_qubits() const { return static_cast<int>(eta_.size()); }
  double efficiency(int qubit, int port) const { return eta_.at(qubit).at(port); }
  // Product of the detector efficiencies selecting `outcome`.
  double pattern_efficiency(unsigned outcome) const;

 private:
  std::vector<std::array<double, 2>> eta_;
};

struct ExperimentConfig {
  double rate_per_hour = 150.0;  // fourfold events per hour
  double hours = 2.0;
  std::uint64_t seed = 1;

  void validate() const;
  double expected_events() const { return rate_per_hour * hours; }
};

// Count record after efficiency correction. `variances` carry the Poisson
// variance of each corrected bin (raw / eta^2).
struct CorrectedRecord {
  MeasurementSetting setting;
  std::vector<double> values;
  std::vector<double> variances;

  double total() const;
};

// Probabilities of the 2^n joint outcomes of `setting`.
std::vector<double> outcome_probabilities(const DensityMatrix& rho,
                                          const MeasurementSetting& setting);

// Independent Poisson counts with means events * probs[i] (* efficiency of
// the outcome, when given). Deterministic for a given generator state.
CountRecord sample_counts(std::span<const double> probs, const MeasurementSetting& setting,
                          double expected_events, Rng& rng,
                          const EfficiencyTable* efficiencies = nullptr);

// Uses stream `stream` of config.seed; see make_stream().
CountRecord sample_counts(std::span<const double> probs, const MeasurementSetting& setting,
                          const ExperimentConfig& config, std::uint64_t stream = 0,
                          const EfficiencyTable* efficiencies = nullptr);

CorrectedRecord efficiency_correct(const CountRecord& record, const EfficiencyTable& eff);
CorrectedRecord uncorrected(const CountRecord& record);

// Noise-free limit: bins hold events * probs[i] with Poisson variances.
CorrectedRecord expected_record(std::span<const double> probs, const MeasurementSetting& setting,
                                double events);

// E = sum_i s_i N_i / sum_i N_i with s_i the eigenvalue of `target` on
// outcome i; sigma^2 = sum_i (s_i - E)^2 Var(N_i) / (sum_i N_i)^2.
AnalysisResult correlation(const CorrectedRecord& record, const PauliString& target);

struct Estimate {
  AnalysisResult result;
  std::vector<MeasurementSetting> settings_used;
};

// Value sum_k c_k E_k, each term taken from the first record that measures
// it; the identity term enters exactly. Terms sharing a record keep their
// full covariance; distinct records are independent. Throws PlanningError
// when a term is not measured by any record.
Estimate estimate_with_settings(const OperatorExpr& expr, std::span<const CorrectedRecord> records);
AnalysisResult estimate(const OperatorExpr& expr, std::span<const CorrectedRecord> records);

// Linear inversion rho = 2^-n sum_P <P> P over all Pauli strings (each <P>
// averaged over the records measuring it), then projection to the nearest
// physical state by clipping negative eigenvalues and renormalizing.
DensityMatrix linear_inversion_tomography(std::span<const CorrectedRecord> records,
                                          int num_qubits);
DensityMatrix tomography_2q(std::span<const CorrectedRecord> records);

// CSV with header "setting,outcome,count", one row per outcome.
void write_counts_csv(std::ostream& out, const CountRecord& record);
std::vector<CountRecord> read_counts_csv(std::istream& in);

// Sums records that share a setting, keeping first-appearance order.
std::vector<CountRecord> merge_by_setting(const std::vector<CountRecord>& records);

}  // namespace clusterlab

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

#include "clusterlab/counts.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "clusterlab/errors.hpp"

namespace clusterlab {
namespace {

constexpr double kNegativeProbabilityTolerance = -1e-12;

void check_record_shape(const MeasurementSetting& setting, std::size_t bins) {
  if (bins != (std::size_t{1} << setting.num_qubits())) {
    throw DomainError("record for setting " + setting.to_string() + " needs " +
                      std::to_string(1u << setting.num_qubits()) + " bins");
  }
}

// Rows are the bras of the +1 and -1 eigenstates of `axis`.
Eigen::Matrix2cd measurement_basis(Axis axis) {
  Eigen::Matrix2cd u;
  u.row(0) = axis_eigenstate(axis, +1).adjoint();
  u.row(1) = axis_eigenstate(axis, -1).adjoint();
  return u;
}

}  // namespace

std::string outcome_label(unsigned outcome, int num_qubits) {
  std::string s;
  for (int k = 0; k < num_qubits; ++k) s.push_back((outcome >> (num_qubits - 1 - k)) & 1u ? '-' : '+');
  return s;
}

unsigned outcome_from_label(std::string_view label) {
  unsigned outcome = 0;
  for (char c : label) {
    outcome <<= 1;
    if (c == '-') {
      outcome |= 1u;
    } else if (c != '+') {
      throw ParseError("bad outcome label '" + std::string(label) + "'");
    }
  }
  return outcome;
}

std::uint64_t CountRecord::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

double CorrectedRecord::total() const {
  double t = 0;
  for (double v : values) t += v;
  return t;
}

EfficiencyTable EfficiencyTable::uniform(int num_qubits) {
  return EfficiencyTable(std::vector<std::array<double, 2>>(num_qubits, {1.0, 1.0}));
}

EfficiencyTable::EfficiencyTable(std::vector<std::array<double, 2>> per_qubit)
    : eta_(std::move(per_qubit)) {
  if (eta_.empty()) throw DomainError("efficiency table is empty");
  double largest = 0;
  for (const auto& pair : eta_) {
    for (double e : pair) {
      if (!(e > 0.0) || !std::isfinite(e)) {
        throw DomainError("detector efficiencies must be positive");
      }
      largest = std::max(largest, e);
    }
  }
  for (auto& pair : eta_)
    for (double& e : pair) e /= largest;
}

EfficiencyTable EfficiencyTable::from_json(const nlohmann::json& j, int num_qubits) {
  if (!j.is_object()) throw ParseError("efficiency table must be a JSON object");
  std::vector<std::array<double, 2>> eta(num_qubits, {0.0, 0.0});
  std::size_t seen = 0;
  for (const auto& [id, value] : j.items()) {
    if (id.size() != 2 || (id[1] != '+' && id[1] != '-') || id[0] < 'a' ||
        id[0] >= 'a' + num_qubits) {
      throw ParseError("unknown detector id '" + id + "'");
    }
    if (!value.is_number()) throw ParseError("efficiency of " + id + " is not a number");
    eta[id[0] - 'a'][id[1] == '+' ? 0 : 1] = value.get<double>();
    ++seen;
  }
  if (seen != 2 * static_cast<std::size_t>(num_qubits)) {
    throw ParseError("efficiency table needs all " + std::to_string(2 * num_qubits) +
                     " detectors");
  }
  return EfficiencyTable(std::move(eta));
}

nlohmann::json EfficiencyTable::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (int k = 0; k < num_qubits(); ++k) {
    const std::string mode(1, static_cast<char>('a' + k));
    j[mode + "+"] = eta_[k][0];
    j[mode + "-"] = eta_[k][1];
  }
  return j;
}

double EfficiencyTable::pattern_efficiency(unsigned outcome) const {
  const int n = num_qubits();
  double eta = 1.0;
  for (int k = 0; k < n; ++k) eta *= eta_[k][(outcome >> (n - 1 - k)) & 1u];
  return eta;
}

void ExperimentConfig::validate() const {
  if (!(rate_per_hour > 0.0) || !std::isfinite(rate_per_hour)) {
    throw DomainError("event rate must be positive");
  }
  if (!(hours > 0.0) || !std::isfinite(hours)) throw DomainError("duration must be positive");
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho,
                                          const MeasurementSetting& setting) {
  const int n = rho.num_qubits();
  if (setting.num_qubits() != n) {
    throw DomainError("setting " + setting.to_string() + " does not match a " +
                      std::to_string(n) + "-qubit state");
  }
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Ones(1, 1);
  for (Axis axis : setting.axes()) {
    const Eigen::Matrix2cd b = measurement_basis(axis);
    Eigen::MatrixXcd next(u.rows() * 2, u.cols() * 2);
    for (Eigen::Index i = 0; i < u.rows(); ++i)
      for (Eigen::Index j = 0; j < u.cols(); ++j) next.block(2 * i, 2 * j, 2, 2) = u(i, j) * b;
    u = std::move(next);
  }
  const Eigen::MatrixXcd rotated = u * rho.matrix() * u.adjoint();
  std::vector<double> probs(rotated.rows());
  for (Eigen::Index i = 0; i < rotated.rows(); ++i) probs[i] = std::max(0.0, rotated(i, i).real());
  return probs;
}

CountRecord sample_counts(std::span<const double> probs, const MeasurementSetting& setting,
                          double expected_events, Rng& rng, const EfficiencyTable* efficiencies) {
  check_record_shape(setting, probs.size());
  if (!(expected_events >= 0.0)) throw DomainError("expected event count must be non-negative");
  if (efficiencies && efficiencies->num_qubits() != setting.num_qubits()) {
    throw DomainError("efficiency table does not match the setting");
  }
  double sum = 0;
  for (double p : probs) {
    if (p < kNegativeProbabilityTolerance) throw DomainError("negative outcome probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw DomainError("outcome probabilities do not sum to 1");
  CountRecord record{setting, std::vector<std::uint64_t>(probs.size(), 0)};
  for (std::size_t i = 0; i < probs.size(); ++i) {
    double mean = expected_events * std::max(0.0, probs[i]);
    if (efficiencies) mean *= efficiencies->pattern_efficiency(static_cast<unsigned>(i));
    if (mean <= 0.0) continue;
    std::poisson_distribution<std::uint64_t> poisson(mean);
    record.counts[i] = poisson(rng);
  }
  return record;
}

CountRecord sample_counts(std::span<const double> probs, const MeasurementSetting& setting,
                          const ExperimentConfig& config, std::uint64_t stream,
                          const EfficiencyTable* efficiencies) {
  config.validate();
  Rng rng = make_stream(config.seed, stream);
  return sample_counts(probs, setting, config.expected_events(), rng, efficiencies);
}

CorrectedRecord efficiency_correct(const CountRecord& record, const EfficiencyTable& eff) {
  check_record_shape(record.setting, record.counts.size());
  if (eff.num_qubits() != record.setting.num_qubits()) {
    throw DomainError("efficiency table does not match the record");
  }
  CorrectedRecord out{record.setting, {}, {}};
  for (std::size_t i = 0; i < record.counts.size(); ++i) {
    const double eta = eff.pattern_efficiency(static_cast<unsigned>(i));
    const double raw = static_cast<double>(record.counts[i]);
    out.values.push_back(raw / eta);
    out.variances.push_back(raw / (eta * eta));
  }
  return out;
}

CorrectedRecord uncorrected(const CountRecord& record) {
  return efficiency_correct(record, EfficiencyTable::uniform(record.setting.num_qubits()));
}

CorrectedRecord expected_record(std::span<const double> probs, const MeasurementSetting& setting,
                                double events) {
  check_record_shape(setting, probs.size());
  CorrectedRecord out{setting, {}, {}};
  for (double p : probs) {
    out.values.push_back(events * std::max(0.0, p));
    out.variances.push_back(out.values.back());
  }
  return out;
}

namespace {

std::vector<int> eigenvalues_on_outcomes(const PauliString& target, std::size_t bins) {
  std::vector<int> s(bins);
  for (std::size_t i = 0; i < bins; ++i) s[i] = target.eigenvalue(static_cast<unsigned>(i));
  return s;
}

}  // namespace

AnalysisResult correlation(const CorrectedRecord& record, const PauliString& target) {
  if (!record.setting.measures(target)) {
    throw DomainError(target.to_string() + " is not measurable under setting " +
                      record.setting.to_string());
  }
  const double total = record.total();
  if (!(total > 0.0)) throw NoDataError("no events recorded for setting " +
                                        record.setting.to_string());
  const std::vector<int> s = eigenvalues_on_outcomes(target, record.values.size());
  double weighted = 0;
  for (std::size_t i = 0; i < s.size(); ++i) weighted += s[i] * record.values[i];
  const double e = weighted / total;
  double variance = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    variance += (s[i] - e) * (s[i] - e) * record.variances[i];
  }
  return {e, std::sqrt(variance) / total};
}

Estimate estimate_with_settings(const OperatorExpr& expr,
                                std::span<const CorrectedRecord> records) {
  if (expr.terms().empty()) throw DomainError("empty operator expression");
  // Terms grouped by the record that measures them.
  std::map<std::size_t, std::vector<const OperatorExpr::Term*>> by_record;
  std::vector<PauliString> missing;
  double value = 0;
  for (const auto& term : expr.terms()) {
    if (term.op.is_identity()) {
      value += term.coefficient * term.op.sign();
      continue;
    }
    std::size_t r = 0;
    while (r < records.size() && !records[r].setting.measures(term.op)) ++r;
    if (r == records.size()) {
      missing.push_back(term.op);
    } else {
      by_record[r].push_back(&term);
    }
  }
  if (!missing.empty()) {
    std::vector<std::string> settings;
    std::string list;
    for (const PlannedSetting& p : settings_plan(missing)) {
      settings.push_back(p.setting.to_string());
      list += (list.empty() ? "" : ", ") + settings.back();
    }
    throw PlanningError("missing measurement settings: " + list, std::move(settings));
  }

  Estimate out;
  double variance = 0;
  for (const auto& [r, terms] : by_record) {
    const CorrectedRecord& rec = records[r];
    const double total = rec.total();
    if (!(total > 0.0)) throw NoDataError("no events recorded for setting " +
                                          rec.setting.to_string());
    // d(sum_k c_k E_k)/dN_i = sum_k c_k (s_ki - E_k) / total
    std::vector<double> gradient(rec.values.size(), 0.0);
    for (const OperatorExpr::Term* t : terms) {
      const AnalysisResult e = correlation(rec, t->op);
      value += t->coefficient * e.value;
      for (std::size_t i = 0; i < gradient.size(); ++i) {
        gradient[i] +=
            t->coefficient * (t->op.eigenvalue(static_cast<unsigned>(i)) - e.value) / total;
      }
    }
    for (std::size_t i = 0; i < gradient.size(); ++i) {
      variance += gradient[i] * gradient[i] * rec.variances[i];
    }
    out.settings_used.push_back(rec.setting);
  }
  out.result = {value, std::sqrt(variance)};
  return out;
}

AnalysisResult estimate(const OperatorExpr& expr, std::span<const CorrectedRecord> records) {
  return estimate_with_settings(expr, records).result;
}

DensityMatrix linear_inversion_tomography(std::span<const CorrectedRecord> records,
                                          int num_qubits) {
  if (num_qubits < 1 || num_qubits > 3) throw DomainError("tomography supports 1..3 qubits");
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Identity(dim, dim);
  std::vector<PauliString> missing;
  const unsigned strings = 1u << (2 * num_qubits);
  for (unsigned code = 1; code < strings; ++code) {
    std::vector<Pauli> letters(num_qubits);
    for (int k = 0; k < num_qubits; ++k) {
      letters[k] = static_cast<Pauli>((code >> (2 * (num_qubits - 1 - k))) & 3u);
    }
    const PauliString p(1, std::move(letters));
    double sum = 0;
    int used = 0;
    for (const CorrectedRecord& rec : records) {
      if (rec.setting.num_qubits() != num_qubits) {
        throw DomainError("tomography record has the wrong qubit count");
      }
      if (rec.setting.measures(p)) {
        sum += correlation(rec, p).value;
        ++used;
      }
    }
    if (used == 0) {
      missing.push_back(p);
      continue;
    }
    rho += (sum / used) * p.matrix();
  }
  if (!missing.empty()) {
    std::vector<std::string> settings;
    for (const PlannedSetting& ps : settings_plan(missing)) settings.push_back(ps.setting.to_string());
    throw PlanningError("settings are not informationally complete", std::move(settings));
  }
  rho /= static_cast<double>(dim);
  rho = 0.5 * (rho + rho.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
  Eigen::VectorXd eig = solver.eigenvalues().cwiseMax(0.0);
  if (!(eig.sum() > 0.0)) throw DomainError("reconstruction has no positive part");
  eig /= eig.sum();
  Eigen::MatrixXcd physical =
      solver.eigenvectors() * eig.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
  physical = 0.5 * (physical + physical.adjoint()).eval();
  physical /= physical.trace().real();
  return DensityMatrix(num_qubits, std::move(physical));
}

DensityMatrix tomography_2q(std::span<const CorrectedRecord> records) {
  return linear_inversion_tomography(records, 2);
}

void write_counts_csv(std::ostream& out, const CountRecord& record) {
  check_record_shape(record.setting, record.counts.size());
  out << "setting,outcome,count\n";
  const std::string setting = record.setting.to_string();
  for (std::size_t i = 0; i < record.counts.size(); ++i) {
    out << setting << ',' << outcome_label(static_cast<unsigned>(i), record.setting.num_qubits())
        << ',' << record.counts[i] << '\n';
  }
}

std::vector<CountRecord> read_counts_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty count file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "setting,outcome,count") throw ParseError("count file header must be setting,outcome,count");

  std::vector<CountRecord> records;
  std::vector<std::vector<bool>> filled;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string setting_text, outcome_text, count_text;
    if (!std::getline(row, setting_text, ',') || !std::getline(row, outcome_text, ',') ||
        !std::getline(row, count_text)) {
      throw ParseError("line " + std::to_string(line_no) + ": expected three fields");
    }
    MeasurementSetting setting = [&] {
      try {
        return MeasurementSetting::parse(setting_text);
      } catch (const DomainError& e) {
        throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
      }
    }();
    if (outcome_text.size() != setting_text.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": outcome length mismatch");
    }
    const unsigned outcome = outcome_from_label(outcome_text);
    std::uint64_t count = 0;
    try {
      std::size_t used = 0;
      if (count_text.empty() || count_text[0] == '-') throw std::invalid_argument("sign");
      count = std::stoull(count_text, &used);
      if (used != count_text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad count '" + count_text + "'");
    }
    auto it = std::find_if(records.begin(), records.end(),
                           [&](const CountRecord& r) { return r.setting == setting; });
    if (it == records.end()) {
      const std::size_t bins = std::size_t{1} << setting.num_qubits();
      records.push_back({setting, std::vector<std::uint64_t>(bins, 0)});
      filled.emplace_back(bins, false);
      it = records.end() - 1;
    }
    auto& seen = filled[it - records.begin()];
    if (seen[outcome]) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate outcome " + outcome_text);
    }
    seen[outcome] = true;
    it->counts[outcome] = count;
  }
  for (std::size_t r = 0; r < records.size(); ++r) {
    if (std::find(filled[r].begin(), filled[r].end(), false) != filled[r].end()) {
      throw ParseError("setting " + records[r].setting.to_string() + " is missing outcomes");
    }
  }
  return records;
}

std::vector<CountRecord> merge_by_setting(const std::vector<CountRecord>& records) {
  std::vector<CountRecord> out;
  for (const CountRecord& r : records) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const CountRecord& o) { return o.setting == r.setting; });
    if (it == out.end()) {
      out.push_back(r);
    } else {
      for (std::size_t i = 0; i < r.counts.size(); ++i) it->counts[i] += r.counts[i];
    }
  }
  return out;
}

}  // namespace clusterlab

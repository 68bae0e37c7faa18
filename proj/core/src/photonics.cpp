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

#include "clusterlab/photonics.hpp"

#include <algorithm>
#include <cmath>

#include "clusterlab/errors.hpp"

namespace clusterlab {
namespace {

constexpr double kPruneAmplitude = 1e-15;

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void check_transmission(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw DomainError("PDBS transmission must lie in [0, 1], got " + std::to_string(t));
  }
}

}  // namespace

FockPolynomial FockPolynomial::vacuum() {
  FockPolynomial p;
  p.terms_[{}] = 1.0;
  return p;
}

void FockPolynomial::add(Monomial modes, Complex coefficient) {
  std::sort(modes.begin(), modes.end());
  terms_[std::move(modes)] += coefficient;
}

int FockPolynomial::photon_number() const {
  if (terms_.empty()) return 0;
  const std::size_t n = terms_.begin()->first.size();
  for (const auto& [modes, c] : terms_) {
    if (modes.size() != n) throw DomainError("Fock polynomial mixes photon numbers");
  }
  return static_cast<int>(n);
}

double FockPolynomial::norm_squared() const {
  double total = 0;
  for (const auto& [modes, c] : terms_) {
    double weight = 1;
    for (std::size_t i = 0; i < modes.size();) {
      std::size_t j = i;
      while (j < modes.size() && modes[j] == modes[i]) ++j;
      weight *= factorial(static_cast<int>(j - i));
      i = j;
    }
    total += std::norm(c) * weight;
  }
  return total;
}

FockPolynomial& FockPolynomial::operator+=(const FockPolynomial& other) {
  for (const auto& [modes, c] : other.terms_) terms_[modes] += c;
  return *this;
}

FockPolynomial FockPolynomial::operator*(Complex scale) const {
  FockPolynomial out = *this;
  for (auto& [modes, c] : out.terms_) c *= scale;
  return out;
}

Eigen::Matrix4cd pdbs_transfer(const PdbsSpec& spec) {
  check_transmission(spec.transmission_h);
  check_transmission(spec.transmission_v);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  const double transmissions[2] = {spec.transmission_h, spec.transmission_v};
  for (int pol = 0; pol < 2; ++pol) {
    const double t = std::sqrt(transmissions[pol]);
    const Complex r(0.0, std::sqrt(1.0 - transmissions[pol]));
    const int in1 = pol;
    const int in2 = 2 + pol;
    m(in1, in1) = t;
    m(in2, in2) = t;
    m(in2, in1) = r;
    m(in1, in2) = r;
  }
  return m;
}

Network::Network(std::vector<std::string> input_names, std::vector<std::string> output_names)
    : input_names_(std::move(input_names)),
      output_names_(std::move(output_names)),
      current_names_(input_names_) {
  if (input_names_.empty() || input_names_.size() != output_names_.size()) {
    throw DomainError("network needs matching, nonempty input and output channel lists");
  }
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(input_names_.size());
  transfer_ = Eigen::MatrixXcd::Identity(dim, dim);
}

void Network::add_pdbs(int channel1, int channel2, const PdbsSpec& spec) {
  if (channel1 == channel2 || channel1 < 0 || channel2 < 0 || channel1 >= num_channels() ||
      channel2 >= num_channels()) {
    throw DomainError("PDBS needs two distinct channels of the network");
  }
  const Eigen::Matrix4cd block = pdbs_transfer(spec);
  const int index[4] = {2 * channel1, 2 * channel1 + 1, 2 * channel2, 2 * channel2 + 1};
  Eigen::MatrixXcd element = Eigen::MatrixXcd::Identity(transfer_.rows(), transfer_.cols());
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) element(index[r], index[c]) = block(r, c);
  transfer_ = element * transfer_;
  elements_.push_back({"pdbs", channel1, channel2, spec});
  element_ports_.push_back({current_names_[channel1], current_names_[channel2]});
  current_names_[channel1] = output_names_[channel1];
  current_names_[channel2] = output_names_[channel2];
}

int Network::input_channel(const std::string& name) const {
  const auto it = std::find(input_names_.begin(), input_names_.end(), name);
  if (it == input_names_.end()) throw DomainError("no input channel named " + name);
  return static_cast<int>(it - input_names_.begin());
}

int Network::output_channel(const std::string& name) const {
  const auto it = std::find(output_names_.begin(), output_names_.end(), name);
  if (it == output_names_.end()) throw DomainError("no output channel named " + name);
  return static_cast<int>(it - output_names_.begin());
}

nlohmann::json Network::to_json() const {
  nlohmann::json elements = nlohmann::json::array();
  for (std::size_t k = 0; k < elements_.size(); ++k) {
    elements.push_back({{"type", elements_[k].type},
                        {"modes", element_ports_[k]},
                        {"T_H", elements_[k].spec.transmission_h},
                        {"T_V", elements_[k].spec.transmission_v}});
  }
  return {{"inputs", input_names_}, {"outputs", output_names_}, {"elements", elements}};
}

Network build_gate_network() {
  using namespace gate_channel;
  Network net({"a", "b'", "c'", "d", "vac_b", "vac_c"},
              {"a", "b", "c", "d", "loss_b", "loss_c"});
  net.add_pdbs(kB, kC, {1.0, kOverlapTransmissionV});
  net.add_pdbs(kB, kLossB, {kEqualizerTransmissionH, 1.0});
  net.add_pdbs(kC, kLossC, {kEqualizerTransmissionH, 1.0});
  return net;
}

FockPolynomial evolve(const FockPolynomial& input, const Network& network) {
  const Eigen::MatrixXcd& u = network.transfer();
  FockPolynomial output;
  for (const auto& [modes, coefficient] : input.terms()) {
    std::map<FockPolynomial::Monomial, Complex> partial{{{}, coefficient}};
    for (const ModeIndex& mode : modes) {
      if (mode.channel < 0 || mode.channel >= network.num_channels()) {
        throw DomainError("photon in channel " + std::to_string(mode.channel) +
                          " is outside the network");
      }
      const int column = mode.optical_index();
      std::map<FockPolynomial::Monomial, Complex> next;
      for (const auto& [mono, c] : partial) {
        for (Eigen::Index row = 0; row < u.rows(); ++row) {
          const Complex entry = u(row, column);
          if (entry == Complex(0.0)) continue;
          FockPolynomial::Monomial grown = mono;
          grown.push_back({static_cast<int>(row / 2), static_cast<Polarization>(row % 2),
                           mode.temporal});
          std::sort(grown.begin(), grown.end());
          next[std::move(grown)] += c * entry;
        }
      }
      partial = std::move(next);
    }
    for (auto& [mono, c] : partial) {
      if (std::abs(c) > kPruneAmplitude) output.add(mono, c);
    }
  }
  return output;
}

FockPolynomial encode_polarization(const Eigen::VectorXcd& amplitudes,
                                   const std::vector<int>& channels,
                                   const std::vector<int>& temporal_labels) {
  const std::size_t n = channels.size();
  if (temporal_labels.size() != n || amplitudes.size() != (Eigen::Index{1} << n)) {
    throw DomainError("encode_polarization: inconsistent channel, label or amplitude counts");
  }
  FockPolynomial out;
  for (unsigned pattern = 0; pattern < static_cast<unsigned>(amplitudes.size()); ++pattern) {
    if (amplitudes(pattern) == Complex(0.0)) continue;
    FockPolynomial::Monomial modes;
    for (std::size_t k = 0; k < n; ++k) {
      const bool v = (pattern >> (n - 1 - k)) & 1u;
      modes.push_back({channels[k], v ? Polarization::V : Polarization::H, temporal_labels[k]});
    }
    out.add(std::move(modes), amplitudes(pattern));
  }
  return out;
}

DensityMatrix PostSelection::density() const {
  if (branches.empty() || probability < kImpossibleProbability) {
    throw ImpossibleOutcome(probability);
  }
  const Eigen::Index dim = branches.front().amplitudes.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const Branch& b : branches) m += b.amplitudes * b.amplitudes.adjoint();
  m /= probability;
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  return DensityMatrix(n, std::move(m));
}

PostSelection postselect(const FockPolynomial& output, const std::vector<int>& channels) {
  const std::size_t n = channels.size();
  std::map<std::vector<int>, Eigen::VectorXcd> grouped;
  for (const auto& [modes, c] : output.terms()) {
    if (modes.size() != n) continue;
    std::vector<bool> filled(n, false);
    bool accepted = true;
    unsigned pattern = 0;
    std::vector<int> labels(n, 0);
    for (const ModeIndex& mode : modes) {
      const auto it = std::find(channels.begin(), channels.end(), mode.channel);
      if (it == channels.end()) {
        accepted = false;
        break;
      }
      const std::size_t slot = static_cast<std::size_t>(it - channels.begin());
      if (filled[slot]) {
        accepted = false;
        break;
      }
      filled[slot] = true;
      if (mode.polarization == Polarization::V) pattern |= 1u << (n - 1 - slot);
      labels[slot] = mode.temporal;
    }
    if (!accepted) continue;
    auto [it, inserted] = grouped.try_emplace(labels);
    if (inserted) it->second = Eigen::VectorXcd::Zero(Eigen::Index{1} << n);
    it->second(pattern) += c;
  }
  PostSelection result;
  for (auto& [labels, amps] : grouped) {
    result.probability += amps.squaredNorm();
    result.branches.push_back({labels, std::move(amps)});
  }
  return result;
}

NoiseParams noise_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("overlap") || !j["overlap"].is_number()) {
    throw DomainError("experiment config needs a numeric \"overlap\"");
  }
  NoiseParams p{j["overlap"].get<double>()};
  if (!(p.overlap >= 0.0 && p.overlap <= 1.0)) throw DomainError("overlap must lie in [0, 1]");
  return p;
}

GateResult simulate_gate(const PureState& input) {
  using namespace gate_channel;
  if (input.num_qubits() != 2) throw DomainError("gate input must be a two-qubit state");
  static const Network network = build_gate_network();
  const FockPolynomial out =
      evolve(encode_polarization(input.amplitudes(), {kB, kC}, {0, 0}), network);
  const PostSelection sel = postselect(out, {kB, kC});
  if (sel.branches.size() != 1 || sel.probability < kImpossibleProbability) {
    throw ImpossibleOutcome(sel.probability);
  }
  return {PureState::normalized(2, sel.branches.front().amplitudes), sel.probability};
}

ExperimentResult run_gate_experiment(const PureState& input, const NoiseParams& noise) {
  using namespace gate_channel;
  if (input.num_qubits() != 4) throw DomainError("experiment input must be a four-qubit state");
  if (!(noise.overlap >= 0.0 && noise.overlap <= 1.0)) {
    throw DomainError("overlap must lie in [0, 1]");
  }
  static const Network network = build_gate_network();
  const std::vector<int> channels = {kA, kB, kC, kD};
  FockPolynomial in;
  if (noise.overlap > 0.0) {
    in += encode_polarization(input.amplitudes(), channels, {0, 0, 0, 0}) *
          std::sqrt(noise.overlap);
  }
  if (noise.overlap < 1.0) {
    in += encode_polarization(input.amplitudes(), channels, {0, 0, 1, 1}) *
          std::sqrt(1.0 - noise.overlap);
  }
  const PostSelection sel = postselect(evolve(in, network), channels);
  return {sel.density(), sel.probability};
}

ExperimentResult run_cluster_experiment(const NoiseParams& noise) {
  const PureState pairs = make_bell(+1).tensor(make_bell(+1));
  return run_gate_experiment(pairs, noise);
}

double calibrate_overlap(double target_fidelity, double tolerance) {
  const PureState cluster = make_cluster4();
  auto fidelity_at = [&](double v) {
    return fidelity(run_cluster_experiment({v}).state, cluster);
  };
  double lo = 0.0;
  double hi = 1.0;
  const double f_lo = fidelity_at(lo);
  const double f_hi = fidelity_at(hi);
  if (target_fidelity < f_lo - tolerance || target_fidelity > f_hi + tolerance) {
    throw DomainError("target fidelity " + std::to_string(target_fidelity) +
                      " is outside the reachable range [" + std::to_string(f_lo) + ", " +
                      std::to_string(f_hi) + "]");
  }
  double mid = 0.5;
  for (int iter = 0; iter < 200; ++iter) {
    mid = 0.5 * (lo + hi);
    const double f = fidelity_at(mid);
    if (std::abs(f - target_fidelity) <= tolerance) break;
    (f < target_fidelity ? lo : hi) = mid;
  }
  return mid;
}

}  // namespace clusterlab

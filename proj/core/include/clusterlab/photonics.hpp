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
#include <nlohmann/json.hpp>

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "clusterlab/qstate.hpp"

// Bosonic simulation of the linear-optics C-Phase gate built from
// polarization-dependent beam splitters (PDBS).
//
// A network acts on a fixed set of spatial channels. Each channel carries two
// polarization modes, so an N-channel network has a 2N x 2N transfer matrix U
// over (channel, polarization) with channel-major order (ch0 H, ch0 V, ch1 H,
// ...). A creation operator on input mode k becomes sum_j U(j, k) a^dag_j.
// Photons also carry a temporal label that no optical element touches; it
// only serves to make photons distinguishable.
namespace clusterlab {

enum class Polarization : int { H = 0, V = 1 };

struct ModeIndex {
  int channel = 0;
  Polarization polarization = Polarization::H;
  int temporal = 0;

  int optical_index() const { return 2 * channel + static_cast<int>(polarization); }
  friend auto operator<=>(const ModeIndex&, const ModeIndex&) = default;
};

// Multi-mode photon state written as a polynomial in creation operators
// applied to the vacuum: sum_m c_m prod_{k in m} a^dag_k |0>. A monomial is a
// sorted multiset of modes. The state norm picks up prod_k n_k! for modes
// occupied n_k times.
class FockPolynomial {
 public:
  using Monomial = std::vector<ModeIndex>;

  static FockPolynomial vacuum();

  // Adds c * prod a^dag_k; the modes need not be sorted.
  void add(Monomial modes, Complex coefficient);

  const std::map<Monomial, Complex>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  // Total photon number shared by every term; throws if terms disagree.
  int photon_number() const;
  double norm_squared() const;

  FockPolynomial& operator+=(const FockPolynomial& other);
  FockPolynomial operator*(Complex scale) const;

 private:
  std::map<Monomial, Complex> terms_;
};

struct PdbsSpec {
  double transmission_h = 1.0;
  double transmission_v = 1.0;
};

// 4x4 transfer matrix over (in1 H, in1 V, in2 H, in2 V). For each
// polarization p the block is [[t, i r], [i r, t]] with t = sqrt(T_p) and
// r = sqrt(1 - T_p); in1 transmits into out1.
Eigen::Matrix4cd pdbs_transfer(const PdbsSpec& spec);

class Network {
 public:
  struct Element {
    std::string type;  // "pdbs"
    int channel1;
    int channel2;
    PdbsSpec spec;
  };

  // `input_names[k]` and `output_names[k]` label channel k before and after
  // the network.
  Network(std::vector<std::string> input_names, std::vector<std::string> output_names);

  // Appends a PDBS acting on (channel1, channel2), channel1 being port 1.
  void add_pdbs(int channel1, int channel2, const PdbsSpec& spec);

  int num_channels() const { return static_cast<int>(input_names_.size()); }
  const std::vector<std::string>& input_names() const { return input_names_; }
  const std::vector<std::string>& output_names() const { return output_names_; }
  const std::vector<Element>& elements() const { return elements_; }
  const Eigen::MatrixXcd& transfer() const { return transfer_; }

  int input_channel(const std::string& name) const;
  int output_channel(const std::string& name) const;

  // {"inputs": [...], "outputs": [...], "elements": [{"type": "pdbs",
  //   "modes": [..], "T_H": .., "T_V": ..}, ...]} in application order.
  nlohmann::json to_json() const;

 private:
  std::vector<std::string> input_names_;
  std::vector<std::string> output_names_;
  std::vector<Element> elements_;
  std::vector<std::vector<std::string>> element_ports_;
  std::vector<std::string> current_names_;
  Eigen::MatrixXcd transfer_;
};

// Channels of the gate network.
namespace gate_channel {
inline constexpr int kA = 0;
inline constexpr int kB = 1;  // b' before the gate, b after
inline constexpr int kC = 2;  // c' before the gate, c after
inline constexpr int kD = 3;
inline constexpr int kLossB = 4;
inline constexpr int kLossC = 5;
}  // namespace gate_channel

inline constexpr double kOverlapTransmissionV = 1.0 / 3.0;
inline constexpr double kEqualizerTransmissionH = 1.0 / 3.0;
// Post-selected success probability of the ideal gate.
inline constexpr double kGateSuccessProbability = 1.0 / 9.0;

// PDBS1 (T_H = 1, T_V = 1/3) overlapping b' and c', then PDBS2 on output b
// and PDBS3 on output c (T_H = 1/3, T_V = 1), each coupling to its own
// vacuum channel. Modes a and d pass untouched.
Network build_gate_network();

// Replaces every creation operator by its image under the network.
FockPolynomial evolve(const FockPolynomial& input, const Network& network);

// Puts one photon per listed channel, polarization pattern weighted by the
// given amplitudes (first channel = most significant bit).
FockPolynomial encode_polarization(const Eigen::VectorXcd& amplitudes,
                                   const std::vector<int>& channels,
                                   const std::vector<int>& temporal_labels);

// Terms with exactly one photon in each listed channel and none elsewhere,
// grouped by the photons' temporal labels. Amplitudes are unnormalized.
struct PostSelection {
  struct Branch {
    std::vector<int> temporal_labels;  // per listed channel
    Eigen::VectorXcd amplitudes;       // over polarization patterns
  };
  std::vector<Branch> branches;
  double probability = 0.0;

  // Polarization state with temporal labels traced out, normalized.
  DensityMatrix density() const;
};
PostSelection postselect(const FockPolynomial& output, const std::vector<int>& channels);

struct NoiseParams {
  double overlap = 1.0;  // indistinguishability at PDBS1, in [0, 1]
};
NoiseParams noise_from_json(const nlohmann::json& j);

struct GateResult {
  PureState output;  // post-selected (b, c) state
  double success_probability;
};

// Runs a two-photon polarization state on (b', c') through the gate with
// indistinguishable photons and post-selects one photon in each of b, c.
GateResult simulate_gate(const PureState& input);

struct ExperimentResult {
  DensityMatrix state;  // polarization state of (a, b, c, d)
  double success_probability;
};

// Four-photon run with input polarization state on (a, b', c', d). The
// photons of the second pair (c', d) carry temporal label
// sqrt(V)|0> + sqrt(1-V)|1>, while a and b' carry |0>.
ExperimentResult run_gate_experiment(const PureState& input, const NoiseParams& noise);

// Input |Phi+>_{ab'} (x) |Phi+>_{c'd}.
ExperimentResult run_cluster_experiment(const NoiseParams& noise);

// Bisection on the overlap so that the simulated cluster fidelity meets
// `target` within `tolerance`. Fidelity increases with the overlap.
double calibrate_overlap(double target_fidelity, double tolerance = 1e-6);

}  // namespace clusterlab

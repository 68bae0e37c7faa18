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

#include "clusterlab/state_io.hpp"

#include <fstream>

#include "clusterlab/errors.hpp"

namespace clusterlab {
namespace {

nlohmann::json complex_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

Complex complex_from(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex numbers must be [re, im] arrays");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

int qubits_from(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("num_qubits") || !j["num_qubits"].is_number_integer()) {
    throw ParseError("state JSON needs an integer \"num_qubits\"");
  }
  const int n = j["num_qubits"].get<int>();
  if (n < 1 || n > kMaxQubits) throw ParseError("num_qubits out of range");
  return n;
}

}  // namespace

nlohmann::json to_json(const PureState& state) {
  nlohmann::json amps = nlohmann::json::array();
  for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) {
    amps.push_back(complex_json(state.amplitudes()(i)));
  }
  return {{"num_qubits", state.num_qubits()}, {"amplitudes", std::move(amps)}};
}

nlohmann::json to_json(const DensityMatrix& rho) {
  nlohmann::json entries = nlohmann::json::array();
  const Eigen::MatrixXcd& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back(complex_json(m(r, c)));
  return {{"num_qubits", rho.num_qubits()}, {"matrix", std::move(entries)}};
}

PureState pure_state_from_json(const nlohmann::json& j) {
  const int n = qubits_from(j);
  if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) {
    throw ParseError("pure state JSON needs \"amplitudes\"");
  }
  const auto& amps = j["amplitudes"];
  const std::size_t dim = std::size_t{1} << n;
  if (amps.size() != dim) throw ParseError("amplitudes length must be 2^num_qubits");
  Eigen::VectorXcd v(dim);
  for (std::size_t i = 0; i < dim; ++i) v(i) = complex_from(amps[i]);
  try {
    return PureState(n, std::move(v));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid pure state: ") + e.what());
  }
}

DensityMatrix density_matrix_from_json(const nlohmann::json& j) {
  const int n = qubits_from(j);
  if (!j.contains("matrix") || !j["matrix"].is_array()) {
    throw ParseError("density matrix JSON needs \"matrix\"");
  }
  const auto& entries = j["matrix"];
  const std::size_t dim = std::size_t{1} << n;
  if (entries.size() != dim * dim) throw ParseError("matrix must have 4^num_qubits entries");
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = complex_from(entries[r * dim + c]);
  try {
    return DensityMatrix(n, std::move(m));
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid density matrix: ") + e.what());
  }
}

DensityMatrix any_state_from_json(const nlohmann::json& j) {
  if (j.is_object() && j.contains("matrix")) return density_matrix_from_json(j);
  if (j.is_object() && j.contains("amplitudes")) {
    return DensityMatrix::from_pure(pure_state_from_json(j));
  }
  throw ParseError("state JSON needs \"matrix\" or \"amplitudes\"");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace clusterlab

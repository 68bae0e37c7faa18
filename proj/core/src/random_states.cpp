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

#include "clusterlab/random_states.hpp"

namespace clusterlab {
namespace {

Complex gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    0x636c7573u};
  return Rng(seq);
}

Eigen::Matrix2cd random_unitary2(Rng& rng) {
  Eigen::Matrix2cd g;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = gaussian_complex(rng);
  // QR of a Ginibre matrix with the phases of R's diagonal fixed is Haar.
  Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
  Eigen::Matrix2cd q = qr.householderQ();
  const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < 2; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
  return q;
}

PureState random_pure_state(int num_qubits, Rng& rng) {
  Eigen::VectorXcd v(Eigen::Index{1} << num_qubits);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = gaussian_complex(rng);
  return PureState::normalized(num_qubits, std::move(v));
}

DensityMatrix random_density_matrix(int num_qubits, Rng& rng) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) g(i, j) = gaussian_complex(rng);
  Eigen::MatrixXcd rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(num_qubits, std::move(rho));
}

PureState random_product_state(int num_qubits, Rng& rng) {
  PureState out = PureState::normalized(1, random_unitary2(rng).col(0));
  for (int k = 1; k < num_qubits; ++k) {
    out = out.tensor(PureState::normalized(1, random_unitary2(rng).col(0)));
  }
  return out;
}

}  // namespace clusterlab

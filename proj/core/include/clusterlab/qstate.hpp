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

#include <utility>
#include <vector>

#include "clusterlab/basis.hpp"
#include "clusterlab/pauli.hpp"

// Dense n-qubit states (n <= 6) and the operations on them. Everything else
// in the library is checked against these routines.
//
// Conventions: H = |0> (sigma_z = +1), V = |1>. Mode a is the most
// significant bit of a basis index, so |HHHV> has index 1.
namespace clusterlab {

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPhysicalityTolerance = -1e-8;
inline constexpr double kImpossibleProbability = 1e-14;

class PureState {
 public:
  // Validates length and norm.
  PureState(int num_qubits, Eigen::VectorXcd amplitudes);

  // Rescales to unit norm; rejects the zero vector.
  static PureState normalized(int num_qubits, Eigen::VectorXcd amplitudes);
  static PureState basis(int num_qubits, unsigned index);

  int num_qubits() const { return num_qubits_; }
  int dimension() const { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex operator[](unsigned index) const { return amplitudes_(index); }

  // Tensor product, this state's qubits first.
  PureState tensor(const PureState& other) const;

 private:
  int num_qubits_;
  Eigen::VectorXcd amplitudes_;
};

class DensityMatrix {
 public:
  // Validates Hermiticity, unit trace and positivity within module
  // tolerances; the stored matrix is the exact Hermitian part.
  DensityMatrix(int num_qubits, Eigen::MatrixXcd matrix);

  static DensityMatrix from_pure(const PureState& state);
  static DensityMatrix maximally_mixed(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  DensityMatrix tensor(const DensityMatrix& other) const;

 private:
  int num_qubits_;
  Eigen::MatrixXcd matrix_;
};

inline DensityMatrix pure_to_density(const PureState& state) {
  return DensityMatrix::from_pure(state);
}

// Convex combination sum_k w_k rho_k; weights must be non-negative and sum
// to one.
DensityMatrix mixture(const std::vector<std::pair<double, DensityMatrix>>& parts);

// Named states.
PureState make_cluster4();
PureState make_bell(int sign);  // (|HH> + sign |VV>)/sqrt2
PureState make_ghz(int num_qubits);

// Single-qubit eigenstate of `axis` with eigenvalue `outcome` (+1/-1).
Eigen::Vector2cd axis_eigenstate(Axis axis, int outcome);

// Product state of local axis eigenstates; outcomes[k] applies to qubit k.
PureState product_state(const std::vector<Axis>& axes,
                        const std::vector<int>& outcomes);

// Negates every amplitude with V on both q1 and q2.
PureState ideal_cphase(const PureState& state, QubitLabel q1, QubitLabel q2);

// Applies a 2x2 unitary to one qubit.
PureState apply_local(const PureState& state, QubitLabel qubit,
                      const Eigen::Matrix2cd& unitary);
DensityMatrix apply_local(const DensityMatrix& rho, QubitLabel qubit,
                          const Eigen::Matrix2cd& unitary);

double expectation(const PureState& state, const PauliString& op);
double expectation(const DensityMatrix& rho, const PauliString& op);
double expectation(const PureState& state, const OperatorExpr& op);
double expectation(const DensityMatrix& rho, const OperatorExpr& op);

double fidelity(const DensityMatrix& rho, const PureState& target);

struct Projection {
  DensityMatrix state;  // on the remaining qubits, renormalized
  double probability;
};
struct PureProjection {
  PureState state;
  double probability;
};

// Projects `qubit` onto the `outcome` eigenstate of `axis` and removes it.
// Throws ImpossibleOutcome below kImpossibleProbability.
Projection project(const DensityMatrix& rho, QubitLabel qubit, Axis axis,
                   int outcome);
Projection project(const PureState& state, QubitLabel qubit, Axis axis,
                   int outcome);
PureProjection project_pure(const PureState& state, QubitLabel qubit, Axis axis,
                            int outcome);

// Reduced state on `keep` (kept qubits stay in their original order).
DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::vector<QubitLabel>& keep);

// Partial transpose over the qubits in `subsystem`. Result is Hermitian but
// not necessarily positive, so it is returned as a plain matrix.
Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho,
                                   const std::vector<QubitLabel>& subsystem);

// log2 of the trace norm of the partial transpose over `partition`.
double logarithmic_negativity(const DensityMatrix& rho,
                              const std::vector<QubitLabel>& partition);

double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace clusterlab

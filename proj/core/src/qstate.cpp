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

#include "clusterlab/qstate.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "clusterlab/errors.hpp"

namespace clusterlab {
namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > kMaxQubits) {
    throw DomainError("qubit count must be 1.." + std::to_string(kMaxQubits) + ", got " +
                      std::to_string(n));
  }
}

void check_qubit(int num_qubits, QubitLabel q) {
  if (q.position() < 0 || q.position() >= num_qubits) {
    throw DomainError(std::string("mode ") + q.name() + " is outside a " +
                      std::to_string(num_qubits) + "-qubit state");
  }
}

// Bit of qubit `position` inside a basis index of an n-qubit register.
unsigned bit_of(int num_qubits, int position) { return 1u << (num_qubits - 1 - position); }

// Index on n qubits with `bit` inserted at `position` into an (n-1)-qubit index.
unsigned insert_bit(unsigned index, int num_qubits, int position, unsigned bit) {
  const int shift = num_qubits - 1 - position;
  const unsigned low = index & ((1u << shift) - 1);
  const unsigned high = index >> shift;
  return (high << (shift + 1)) | (bit << shift) | low;
}

void check_partition(int num_qubits, const std::vector<QubitLabel>& part, bool allow_full) {
  if (part.empty()) throw DomainError("qubit subset must be nonempty");
  if (!allow_full && static_cast<int>(part.size()) >= num_qubits) {
    throw DomainError("partition must be a strict subset of the qubits");
  }
  std::vector<QubitLabel> sorted = part;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("qubit subset contains duplicates");
  }
  for (QubitLabel q : part) check_qubit(num_qubits, q);
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

PureState::PureState(int num_qubits, Eigen::VectorXcd amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubit_count(num_qubits_);
  if (amplitudes_.size() != (Eigen::Index{1} << num_qubits_)) {
    throw DomainError("amplitude vector length must be 2^num_qubits");
  }
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance) {
    throw DomainError("state is not normalized (norm^2 = " +
                      std::to_string(amplitudes_.squaredNorm()) + ")");
  }
}

PureState PureState::normalized(int num_qubits, Eigen::VectorXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (norm < 1e-300) throw DomainError("cannot normalize the zero vector");
  amplitudes /= norm;
  return PureState(num_qubits, std::move(amplitudes));
}

PureState PureState::basis(int num_qubits, unsigned index) {
  check_qubit_count(num_qubits);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
  if (index >= static_cast<unsigned>(v.size())) throw DomainError("basis index out of range");
  v(index) = 1.0;
  return PureState(num_qubits, std::move(v));
}

PureState PureState::tensor(const PureState& other) const {
  return PureState::normalized(num_qubits_ + other.num_qubits_,
                               kron(amplitudes_, other.amplitudes_));
}

DensityMatrix::DensityMatrix(int num_qubits, Eigen::MatrixXcd matrix)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
  check_qubit_count(num_qubits_);
  const Eigen::Index dim = Eigen::Index{1} << num_qubits_;
  if (matrix_.rows() != dim || matrix_.cols() != dim) {
    throw DomainError("density matrix dimension must be 2^num_qubits");
  }
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermiticityTolerance) {
    throw DomainError("density matrix is not Hermitian (max deviation " +
                      std::to_string(asym) + ")");
  }
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint()).eval();
  const double trace = matrix_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw DomainError("density matrix trace is " + std::to_string(trace));
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kPhysicalityTolerance) {
    throw DomainError("density matrix has negative eigenvalue " +
                      std::to_string(solver.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& state) {
  return DensityMatrix(state.num_qubits(),
                       state.amplitudes() * state.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  check_qubit_count(num_qubits);
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  return DensityMatrix(num_qubits,
                       Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& other) const {
  return DensityMatrix(num_qubits_ + other.num_qubits_, kron(matrix_, other.matrix_));
}

DensityMatrix mixture(const std::vector<std::pair<double, DensityMatrix>>& parts) {
  if (parts.empty()) throw DomainError("mixture of no states");
  const int n = parts.front().second.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(parts.front().second.dimension(),
                                              parts.front().second.dimension());
  for (const auto& [w, rho] : parts) {
    if (rho.num_qubits() != n) throw DomainError("mixture components differ in qubit count");
    if (w < 0) throw DomainError("negative mixture weight");
    m += w * rho.matrix();
  }
  return DensityMatrix(n, std::move(m));
}

PureState make_cluster4() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
  v(0b0000) = 0.5;   // HHHH
  v(0b0011) = 0.5;   // HHVV
  v(0b1100) = 0.5;   // VVHH
  v(0b1111) = -0.5;  // VVVV
  return PureState(4, std::move(v));
}

PureState make_bell(int sign) {
  if (sign != 1 && sign != -1) throw DomainError("Bell sign must be +1 or -1");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = M_SQRT1_2;
  v(3) = sign * M_SQRT1_2;
  return PureState(2, std::move(v));
}

PureState make_ghz(int num_qubits) {
  if (num_qubits < 2 || num_qubits > kMaxQubits) {
    throw DomainError("GHZ state needs 2.." + std::to_string(kMaxQubits) + " qubits");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << num_qubits);
  v(0) = M_SQRT1_2;
  v(v.size() - 1) = M_SQRT1_2;
  return PureState(num_qubits, std::move(v));
}

Eigen::Vector2cd axis_eigenstate(Axis axis, int outcome) {
  if (outcome != 1 && outcome != -1) throw DomainError("outcome must be +1 or -1");
  const double s = outcome;
  switch (axis) {
    case Axis::Z:
      return outcome > 0 ? Eigen::Vector2cd(1, 0) : Eigen::Vector2cd(0, 1);
    case Axis::X:
      return Eigen::Vector2cd(M_SQRT1_2, s * M_SQRT1_2);
    case Axis::Y:
      return Eigen::Vector2cd(M_SQRT1_2, Complex(0, s * M_SQRT1_2));
  }
  throw DomainError("bad axis");
}

PureState product_state(const std::vector<Axis>& axes, const std::vector<int>& outcomes) {
  if (axes.size() != outcomes.size()) throw DomainError("axes and outcomes differ in length");
  check_qubit_count(static_cast<int>(axes.size()));
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Ones(1, 1);
  for (std::size_t k = 0; k < axes.size(); ++k) {
    v = kron(v, axis_eigenstate(axes[k], outcomes[k]));
  }
  return PureState::normalized(static_cast<int>(axes.size()), v.col(0));
}

PureState ideal_cphase(const PureState& state, QubitLabel q1, QubitLabel q2) {
  const int n = state.num_qubits();
  check_qubit(n, q1);
  check_qubit(n, q2);
  if (q1 == q2) throw DomainError("C-Phase needs two distinct qubits");
  const unsigned both = bit_of(n, q1.position()) | bit_of(n, q2.position());
  Eigen::VectorXcd v = state.amplitudes();
  for (Eigen::Index x = 0; x < v.size(); ++x) {
    if ((static_cast<unsigned>(x) & both) == both) v(x) = -v(x);
  }
  return PureState(n, std::move(v));
}

namespace {

Eigen::MatrixXcd local_operator(int num_qubits, int position, const Eigen::Matrix2cd& u) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < num_qubits; ++k) {
    out = kron(out, k == position ? Eigen::MatrixXcd(u)
                                  : Eigen::MatrixXcd(Eigen::Matrix2cd::Identity()));
  }
  return out;
}

void check_unitary(const Eigen::Matrix2cd& u) {
  if ((u * u.adjoint() - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("local operation is not unitary");
  }
}

}  // namespace

PureState apply_local(const PureState& state, QubitLabel qubit, const Eigen::Matrix2cd& unitary) {
  check_qubit(state.num_qubits(), qubit);
  check_unitary(unitary);
  return PureState::normalized(
      state.num_qubits(),
      local_operator(state.num_qubits(), qubit.position(), unitary) * state.amplitudes());
}

DensityMatrix apply_local(const DensityMatrix& rho, QubitLabel qubit,
                          const Eigen::Matrix2cd& unitary) {
  check_qubit(rho.num_qubits(), qubit);
  check_unitary(unitary);
  const Eigen::MatrixXcd u = local_operator(rho.num_qubits(), qubit.position(), unitary);
  return DensityMatrix(rho.num_qubits(), u * rho.matrix() * u.adjoint());
}

double expectation(const PureState& state, const PauliString& op) {
  if (op.num_qubits() != state.num_qubits()) {
    throw DomainError("operator acts on " + std::to_string(op.num_qubits()) +
                      " qubits, state has " + std::to_string(state.num_qubits()));
  }
  const unsigned mask = op.flip_mask();
  const Eigen::VectorXcd& v = state.amplitudes();
  Complex total = 0;
  for (unsigned x = 0; x < static_cast<unsigned>(v.size()); ++x) {
    total += std::conj(v(x ^ mask)) * op.phase_on(x) * v(x);
  }
  return total.real();
}

double expectation(const DensityMatrix& rho, const PauliString& op) {
  if (op.num_qubits() != rho.num_qubits()) {
    throw DomainError("operator acts on " + std::to_string(op.num_qubits()) +
                      " qubits, state has " + std::to_string(rho.num_qubits()));
  }
  // P(x ^ mask, x) = phase(x), so Tr(rho P) = sum_x rho(x, x ^ mask) phase(x)
  const unsigned mask = op.flip_mask();
  const Eigen::MatrixXcd& m = rho.matrix();
  Complex total = 0;
  for (unsigned x = 0; x < static_cast<unsigned>(m.rows()); ++x) {
    total += op.phase_on(x) * m(x, x ^ mask);
  }
  return total.real();
}

double expectation(const PureState& state, const OperatorExpr& op) {
  double total = 0;
  for (const auto& t : op.terms()) total += t.coefficient * expectation(state, t.op);
  return total;
}

double expectation(const DensityMatrix& rho, const OperatorExpr& op) {
  double total = 0;
  for (const auto& t : op.terms()) total += t.coefficient * expectation(rho, t.op);
  return total;
}

double fidelity(const DensityMatrix& rho, const PureState& target) {
  if (rho.num_qubits() != target.num_qubits()) throw DomainError("fidelity: dimension mismatch");
  const Eigen::VectorXcd& psi = target.amplitudes();
  return psi.dot(rho.matrix() * psi).real();
}

namespace {

// <e|_qubit M |e>_qubit for an operator M on n qubits; result acts on n-1.
Eigen::MatrixXcd contract_qubit(const Eigen::MatrixXcd& m, int n, int position,
                                const Eigen::Vector2cd& e) {
  const Eigen::Index out_dim = Eigen::Index{1} << (n - 1);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  for (unsigned i = 0; i < out_dim; ++i) {
    for (unsigned j = 0; j < out_dim; ++j) {
      Complex acc = 0;
      for (unsigned bi = 0; bi < 2; ++bi) {
        for (unsigned bj = 0; bj < 2; ++bj) {
          acc += std::conj(e(bi)) * m(insert_bit(i, n, position, bi),
                                      insert_bit(j, n, position, bj)) * e(bj);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

}  // namespace

Projection project(const DensityMatrix& rho, QubitLabel qubit, Axis axis, int outcome) {
  const int n = rho.num_qubits();
  check_qubit(n, qubit);
  if (n < 2) throw DomainError("cannot project the only qubit of a state");
  Eigen::MatrixXcd reduced =
      contract_qubit(rho.matrix(), n, qubit.position(), axis_eigenstate(axis, outcome));
  const double probability = reduced.trace().real();
  if (probability < kImpossibleProbability) throw ImpossibleOutcome(probability);
  reduced /= probability;
  return {DensityMatrix(n - 1, std::move(reduced)), probability};
}

Projection project(const PureState& state, QubitLabel qubit, Axis axis, int outcome) {
  return project(DensityMatrix::from_pure(state), qubit, axis, outcome);
}

PureProjection project_pure(const PureState& state, QubitLabel qubit, Axis axis, int outcome) {
  const int n = state.num_qubits();
  check_qubit(n, qubit);
  if (n < 2) throw DomainError("cannot project the only qubit of a state");
  const Eigen::Vector2cd e = axis_eigenstate(axis, outcome);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << (n - 1));
  for (unsigned i = 0; i < static_cast<unsigned>(out.size()); ++i) {
    out(i) = std::conj(e(0)) * state[insert_bit(i, n, qubit.position(), 0)] +
             std::conj(e(1)) * state[insert_bit(i, n, qubit.position(), 1)];
  }
  const double probability = out.squaredNorm();
  if (probability < kImpossibleProbability) throw ImpossibleOutcome(probability);
  return {PureState::normalized(n - 1, std::move(out)), probability};
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<QubitLabel>& keep) {
  const int n = rho.num_qubits();
  check_partition(n, keep, true);
  std::vector<int> traced;
  for (int k = 0; k < n; ++k) {
    if (std::find(keep.begin(), keep.end(), QubitLabel(k)) == keep.end()) traced.push_back(k);
  }
  Eigen::MatrixXcd m = rho.matrix();
  int current = n;
  // Trace out from the highest position down so lower positions stay valid.
  for (auto it = traced.rbegin(); it != traced.rend(); ++it) {
    m = contract_qubit(m, current, *it, Eigen::Vector2cd(1, 0)) +
        contract_qubit(m, current, *it, Eigen::Vector2cd(0, 1));
    --current;
  }
  return DensityMatrix(current, std::move(m));
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho,
                                   const std::vector<QubitLabel>& subsystem) {
  const int n = rho.num_qubits();
  check_partition(n, subsystem, true);
  unsigned mask = 0;
  for (QubitLabel q : subsystem) mask |= bit_of(n, q.position());
  const Eigen::MatrixXcd& m = rho.matrix();
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (unsigned i = 0; i < static_cast<unsigned>(m.rows()); ++i) {
    for (unsigned j = 0; j < static_cast<unsigned>(m.cols()); ++j) {
      // Swap the subsystem bits between row and column index.
      const unsigned ti = (i & ~mask) | (j & mask);
      const unsigned tj = (j & ~mask) | (i & mask);
      out(ti, tj) = m(i, j);
    }
  }
  return out;
}

double logarithmic_negativity(const DensityMatrix& rho,
                              const std::vector<QubitLabel>& partition) {
  check_partition(rho.num_qubits(), partition, false);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      partial_transpose(rho, partition), Eigen::EigenvaluesOnly);
  const double trace_norm = solver.eigenvalues().cwiseAbs().sum();
  return std::max(0.0, std::log2(trace_norm));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.num_qubits() != b.num_qubits()) throw DomainError("trace distance: dimension mismatch");
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.matrix() - b.matrix(),
                                                               Eigen::EigenvaluesOnly);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

}  // namespace clusterlab

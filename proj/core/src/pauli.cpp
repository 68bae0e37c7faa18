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

#include "clusterlab/pauli.hpp"

#include <algorithm>
#include <array>

#include "clusterlab/errors.hpp"

namespace clusterlab {

QubitLabel QubitLabel::from_char(char name) {
  if (name < 'a' || name >= 'a' + kMaxQubits) {
    throw DomainError(std::string("unknown mode label '") + name + "'");
  }
  return QubitLabel(name - 'a');
}

char axis_char(Axis axis) {
  switch (axis) {
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  return '?';
}

Axis axis_from_char(char c) {
  switch (c) {
    case 'X': case 'x': return Axis::X;
    case 'Y': case 'y': return Axis::Y;
    case 'Z': case 'z': return Axis::Z;
    default: throw DomainError(std::string("bad measurement axis '") + c + "'");
  }
}

char pauli_char(Pauli p) {
  static constexpr std::array<char, 4> kChars = {'1', 'X', 'Y', 'Z'};
  return kChars[static_cast<int>(p)];
}

PauliProduct multiply(Pauli a, Pauli b) {
  if (a == Pauli::I) return {0, b};
  if (b == Pauli::I) return {0, a};
  if (a == b) return {0, Pauli::I};
  // Cyclic X -> Y -> Z: XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
  const int ia = static_cast<int>(a);
  const int ib = static_cast<int>(b);
  const int third = 6 - ia - ib;
  const bool cyclic = (ib - ia + 3) % 3 == 1;
  return {cyclic ? 1 : 3, static_cast<Pauli>(third)};
}

PauliString::PauliString(int sign, std::vector<Pauli> letters)
    : sign_(sign), letters_(std::move(letters)) {
  if (sign_ != 1 && sign_ != -1) throw DomainError("Pauli string sign must be +1 or -1");
  if (letters_.empty() || static_cast<int>(letters_.size()) > kMaxQubits) {
    throw DomainError("Pauli string length must be 1.." + std::to_string(kMaxQubits));
  }
}

PauliString PauliString::parse(std::string_view text) {
  int sign = 1;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    sign = text.front() == '-' ? -1 : 1;
    text.remove_prefix(1);
  }
  std::vector<Pauli> letters;
  letters.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '1': case 'I': letters.push_back(Pauli::I); break;
      case 'X': letters.push_back(Pauli::X); break;
      case 'Y': letters.push_back(Pauli::Y); break;
      case 'Z': letters.push_back(Pauli::Z); break;
      default:
        throw DomainError("bad Pauli string '" + std::string(text) + "'");
    }
  }
  return PauliString(sign, std::move(letters));
}

PauliString PauliString::identity(int num_qubits) {
  return PauliString(1, std::vector<Pauli>(num_qubits, Pauli::I));
}

std::string PauliString::to_string() const {
  std::string out = sign_ < 0 ? "-" : "";
  for (Pauli p : letters_) out.push_back(pauli_char(p));
  return out;
}

int PauliString::weight() const {
  return static_cast<int>(
      std::count_if(letters_.begin(), letters_.end(), [](Pauli p) { return p != Pauli::I; }));
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (other.num_qubits() != num_qubits()) throw DomainError("Pauli strings differ in length");
  int anticommuting = 0;
  for (int k = 0; k < num_qubits(); ++k) {
    const Pauli a = letters_[k];
    const Pauli b = other.letters_[k];
    if (a != Pauli::I && b != Pauli::I && a != b) ++anticommuting;
  }
  return anticommuting % 2 == 0;
}

PauliString PauliString::without(const std::vector<int>& positions) const {
  std::vector<Pauli> kept;
  for (int k = 0; k < num_qubits(); ++k) {
    if (std::find(positions.begin(), positions.end(), k) == positions.end()) {
      kept.push_back(letters_[k]);
    }
  }
  return PauliString(sign_, std::move(kept));
}

unsigned PauliString::flip_mask() const {
  const int n = num_qubits();
  unsigned mask = 0;
  for (int k = 0; k < n; ++k) {
    if (letters_[k] == Pauli::X || letters_[k] == Pauli::Y) mask |= 1u << (n - 1 - k);
  }
  return mask;
}

Complex PauliString::phase_on(unsigned basis_index) const {
  const int n = num_qubits();
  int i_power = 0;
  int minus = sign_ < 0 ? 1 : 0;
  for (int k = 0; k < n; ++k) {
    const bool bit = (basis_index >> (n - 1 - k)) & 1u;
    switch (letters_[k]) {
      case Pauli::I: case Pauli::X: break;
      case Pauli::Z: minus += bit; break;
      case Pauli::Y: i_power += 1; minus += bit; break;  // Y|0> = i|1>, Y|1> = -i|0>
    }
  }
  static constexpr std::array<Complex, 4> kPowers = {
      Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
  const Complex phase = kPowers[i_power % 4];
  return (minus % 2) ? -phase : phase;
}

Eigen::MatrixXcd PauliString::matrix() const {
  const int dim = 1 << num_qubits();
  const unsigned mask = flip_mask();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (unsigned x = 0; x < static_cast<unsigned>(dim); ++x) m(x ^ mask, x) = phase_on(x);
  return m;
}

int PauliString::eigenvalue(unsigned outcome_bits) const {
  const int n = num_qubits();
  int value = sign_;
  for (int k = 0; k < n; ++k) {
    if (letters_[k] != Pauli::I && ((outcome_bits >> (n - 1 - k)) & 1u)) value = -value;
  }
  return value;
}

SignedProduct multiply(const PauliString& a, const PauliString& b) {
  if (a.num_qubits() != b.num_qubits()) throw DomainError("Pauli strings differ in length");
  int phase = 0;
  std::vector<Pauli> letters(a.num_qubits());
  for (int k = 0; k < a.num_qubits(); ++k) {
    const PauliProduct p = multiply(a[k], b[k]);
    phase += p.phase;
    letters[k] = p.result;
  }
  int sign = a.sign() * b.sign();
  phase %= 4;
  if (phase >= 2) {
    sign = -sign;
    phase -= 2;
  }
  return {phase, PauliString(sign, std::move(letters))};
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  SignedProduct p = multiply(a, b);
  if (p.phase != 0) {
    throw DomainError("product of anticommuting strings " + a.to_string() + " and " +
                      b.to_string() + " is not Hermitian");
  }
  return p.string;
}

OperatorExpr::OperatorExpr(std::vector<Term> terms) {
  for (const Term& t : terms) add(t.coefficient, t.op);
}

OperatorExpr& OperatorExpr::add(double coefficient, const PauliString& op) {
  if (!terms_.empty() && terms_.front().op.num_qubits() != op.num_qubits()) {
    throw DomainError("operator terms differ in qubit count");
  }
  const PauliString positive(1, op.letters());
  const double c = coefficient * op.sign();
  for (Term& t : terms_) {
    if (t.op == positive) {
      t.coefficient += c;
      return *this;
    }
  }
  terms_.push_back({c, positive});
  return *this;
}

int OperatorExpr::num_qubits() const {
  return terms_.empty() ? 0 : terms_.front().op.num_qubits();
}

double OperatorExpr::identity_coefficient() const {
  for (const Term& t : terms_) {
    if (t.op.is_identity()) return t.coefficient * t.op.sign();
  }
  return 0.0;
}

Eigen::MatrixXcd OperatorExpr::matrix() const {
  if (terms_.empty()) throw DomainError("empty operator expression");
  const int dim = 1 << num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const Term& t : terms_) m += t.coefficient * t.op.matrix();
  return m;
}

}  // namespace clusterlab

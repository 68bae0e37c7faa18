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

#include <complex>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "clusterlab/basis.hpp"

namespace clusterlab {

using Complex = std::complex<double>;

enum class Pauli : unsigned char { I, X, Y, Z };

char pauli_char(Pauli p);  // identity prints as '1'

// Product of two single-qubit Paulis: a * b = i^phase * result.
struct PauliProduct {
  int phase;  // power of i, in 0..3
  Pauli result;
};
PauliProduct multiply(Pauli a, Pauli b);

// Signed tensor product of Pauli operators, one letter per qubit, mode a
// first. Always Hermitian: the sign is +1 or -1.
class PauliString {
 public:
  PauliString() = default;
  PauliString(int sign, std::vector<Pauli> letters);

  // Text form: optional leading '-' (or '+'), then one of {1, I, X, Y, Z}
  // per qubit, e.g. "-YYZ1".
  static PauliString parse(std::string_view text);
  static PauliString identity(int num_qubits);

  std::string to_string() const;

  int sign() const { return sign_; }
  const std::vector<Pauli>& letters() const { return letters_; }
  int num_qubits() const { return static_cast<int>(letters_.size()); }
  Pauli operator[](int qubit) const { return letters_.at(qubit); }

  int weight() const;
  bool is_identity() const { return weight() == 0; }
  bool commutes_with(const PauliString& other) const;

  PauliString negated() const { return PauliString(-sign_, letters_); }
  // Same letters with the given positions removed.
  PauliString without(const std::vector<int>& positions) const;

  // Bit mask (mode a = most significant) of positions carrying X or Y.
  unsigned flip_mask() const;

  // Phase of P|x> = phase(x) |x ^ flip_mask()> for basis index x.
  Complex phase_on(unsigned basis_index) const;

  // Dense 2^n x 2^n matrix.
  Eigen::MatrixXcd matrix() const;

  // Eigenvalue (+1/-1) of this operator on a joint outcome of local
  // measurements of `axes`-compatible letters. `outcome_bits` has bit k
  // (mode a most significant) set when qubit k gave -1. Identity positions
  // contribute +1.
  int eigenvalue(unsigned outcome_bits) const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  friend auto operator<=>(const PauliString&, const PauliString&) = default;

 private:
  int sign_ = 1;
  std::vector<Pauli> letters_;
};

// Full product a * b = i^phase * string (string carries the real sign).
struct SignedProduct {
  int phase;
  PauliString string;
};
SignedProduct multiply(const PauliString& a, const PauliString& b);

// Product of two commuting strings; throws DomainError otherwise.
PauliString operator*(const PauliString& a, const PauliString& b);

// Real linear combination of Pauli strings on a fixed number of qubits.
class OperatorExpr {
 public:
  struct Term {
    double coefficient;
    PauliString op;
  };

  OperatorExpr() = default;
  explicit OperatorExpr(std::vector<Term> terms);

  // Adds c * op, merging with an existing term on the same letters.
  OperatorExpr& add(double coefficient, const PauliString& op);
  OperatorExpr& add(double coefficient, std::string_view op_text) {
    return add(coefficient, PauliString::parse(op_text));
  }

  const std::vector<Term>& terms() const { return terms_; }
  int num_qubits() const;

  // Coefficient of the all-identity term (0 if absent).
  double identity_coefficient() const;

  Eigen::MatrixXcd matrix() const;

 private:
  std::vector<Term> terms_;
};

}  // namespace clusterlab

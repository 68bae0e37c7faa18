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

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "clusterlab/errors.hpp"
#include "clusterlab/pauli.hpp"
#include "dense_oracle.hpp"

using namespace clusterlab;
using Catch::Matchers::WithinAbs;

TEST_CASE("single-qubit Pauli products follow XY = iZ", "[pauli]") {
  CHECK(multiply(Pauli::X, Pauli::Y).phase == 1);
  CHECK(multiply(Pauli::X, Pauli::Y).result == Pauli::Z);
  CHECK(multiply(Pauli::Y, Pauli::X).phase == 3);
  CHECK(multiply(Pauli::Z, Pauli::X).result == Pauli::Y);
  CHECK(multiply(Pauli::Z, Pauli::X).phase == 1);
  CHECK(multiply(Pauli::Y, Pauli::Y).result == Pauli::I);
  CHECK(multiply(Pauli::I, Pauli::Z).result == Pauli::Z);

  // Cross-check every pair against explicit matrices.
  const char letters[] = {'1', 'X', 'Y', 'Z'};
  const std::complex<double> powers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const PauliProduct p = multiply(static_cast<Pauli>(a), static_cast<Pauli>(b));
      const oracle::Mat lhs = oracle::pauli(letters[a]) * oracle::pauli(letters[b]);
      const oracle::Mat rhs = powers[p.phase] * oracle::pauli(pauli_char(p.result));
      CHECK((lhs - rhs).norm() < 1e-15);
    }
  }
}

TEST_CASE("Pauli string text round trip", "[pauli]") {
  for (const char* text : {"-YYZ1", "ZZ11", "1111", "XYXY", "-Z", "X1Z"}) {
    CHECK(PauliString::parse(text).to_string() == text);
  }
  CHECK(PauliString::parse("+IZXX").to_string() == "1ZXX");
  CHECK_THROWS_AS(PauliString::parse("ZQ11"), DomainError);
  CHECK_THROWS_AS(PauliString::parse(""), DomainError);
  CHECK_THROWS_AS(PauliString::parse("1111111"), DomainError);
}

TEST_CASE("Pauli string matrices match the Kronecker oracle", "[pauli]") {
  for (const char* text : {"-YYZ1", "XYYX", "Z1XX", "1ZYY", "Y", "-XZ", "YXZ1X"}) {
    const oracle::Mat m = PauliString::parse(text).matrix();
    CHECK((m - oracle::pauli_string(text)).norm() < 1e-15);
    // Hermitian and unitary, squares to identity.
    CHECK((m - m.adjoint()).norm() < 1e-15);
    CHECK((m * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).norm() < 1e-14);
  }
}

TEST_CASE("string products track signs", "[pauli]") {
  // ZZ11 * XXZ1 = (ZX)(ZX)Z1 = (iY)(iY)Z1 = -YYZ1
  CHECK(PauliString::parse("ZZ11") * PauliString::parse("XXZ1") == PauliString::parse("-YYZ1"));
  CHECK(PauliString::parse("ZZ11") * PauliString::parse("11ZZ") == PauliString::parse("ZZZZ"));
  CHECK_THROWS_AS(PauliString::parse("X1") * PauliString::parse("Z1"), DomainError);

  const SignedProduct p = multiply(PauliString::parse("X1"), PauliString::parse("Z1"));
  CHECK(p.phase == 1);
  CHECK(p.string == PauliString::parse("-Y1"));  // XZ = -iY

  // Random products agree with matrix multiplication.
  std::mt19937 rng(7);
  const char letters[] = {'1', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 200; ++trial) {
    std::string a, b;
    for (int k = 0; k < 4; ++k) {
      a.push_back(letters[rng() % 4]);
      b.push_back(letters[rng() % 4]);
    }
    if (rng() % 2) a = "-" + a;
    const SignedProduct prod = multiply(PauliString::parse(a), PauliString::parse(b));
    const std::complex<double> powers[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const oracle::Mat expected = oracle::pauli_string(a) * oracle::pauli_string(b);
    CHECK((expected - powers[prod.phase] * prod.string.matrix()).norm() < 1e-13);
    CHECK(PauliString::parse(a).commutes_with(PauliString::parse(b)) == (prod.phase == 0));
  }
}

TEST_CASE("eigenvalue on outcome bits includes sign and ignores identities", "[pauli]") {
  const PauliString s = PauliString::parse("-ZZ11");
  CHECK(s.eigenvalue(0b0000) == -1);
  CHECK(s.eigenvalue(0b1000) == 1);
  CHECK(s.eigenvalue(0b1100) == -1);
  CHECK(s.eigenvalue(0b0011) == -1);
}

TEST_CASE("operator expressions merge terms and fold signs", "[pauli]") {
  OperatorExpr e;
  e.add(1.0, "ZZ").add(0.5, "-ZZ").add(2.0, "11");
  REQUIRE(e.terms().size() == 2);
  CHECK_THAT(e.terms()[0].coefficient, WithinAbs(0.5, 1e-15));
  CHECK_THAT(e.identity_coefficient(), WithinAbs(2.0, 1e-15));
  CHECK((e.matrix() - (0.5 * oracle::pauli_string("ZZ") + 2.0 * oracle::pauli_string("11")))
            .norm() < 1e-15);
  CHECK_THROWS_AS(e.add(1.0, "ZZZ"), DomainError);
}

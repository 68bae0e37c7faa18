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

#include <cstdio>
#include <fstream>

#include "clusterlab/errors.hpp"
#include "clusterlab/random_states.hpp"
#include "clusterlab/state_io.hpp"

using namespace clusterlab;
using nlohmann::json;

TEST_CASE("pure state JSON round trip", "[io]") {
  const PureState c = make_cluster4();
  const json j = to_json(c);
  CHECK(j["num_qubits"] == 4);
  CHECK(j["amplitudes"].size() == 16);
  CHECK(j["amplitudes"][15] == json::array({-0.5, 0.0}));
  const PureState back = pure_state_from_json(j);
  CHECK(back.amplitudes() == c.amplitudes());
}

TEST_CASE("density matrix JSON is row-major and round-trips exactly", "[io]") {
  Rng rng(41);
  const DensityMatrix rho = random_density_matrix(2, rng);
  const json j = to_json(rho);
  REQUIRE(j["matrix"].size() == 16);
  CHECK(j["matrix"][1][0].get<double>() == rho.matrix()(0, 1).real());
  CHECK(j["matrix"][4][1].get<double>() == rho.matrix()(1, 0).imag());
  // Through text as well: doubles survive serialization bit-for-bit.
  const DensityMatrix back = density_matrix_from_json(json::parse(j.dump()));
  CHECK(back.matrix() == rho.matrix());
}

TEST_CASE("any_state_from_json accepts both forms", "[io]") {
  const DensityMatrix a = any_state_from_json(to_json(make_bell(+1)));
  CHECK(a.num_qubits() == 2);
  CHECK(std::abs(a.matrix()(0, 3).real() - 0.5) < 1e-15);
  const DensityMatrix b = any_state_from_json(to_json(DensityMatrix::maximally_mixed(3)));
  CHECK(b.num_qubits() == 3);
  CHECK_THROWS_AS(any_state_from_json(json{{"num_qubits", 2}}), ParseError);
}

TEST_CASE("malformed state JSON is a parse error", "[io]") {
  json bad_norm = to_json(make_bell(+1));
  bad_norm["amplitudes"][0] = json::array({1.0, 0.0});
  CHECK_THROWS_AS(pure_state_from_json(bad_norm), ParseError);

  json short_amps = to_json(make_bell(+1));
  short_amps["amplitudes"].erase(3);
  CHECK_THROWS_AS(pure_state_from_json(short_amps), ParseError);

  json bad_complex = to_json(make_bell(+1));
  bad_complex["amplitudes"][0] = 0.7;
  CHECK_THROWS_AS(pure_state_from_json(bad_complex), ParseError);

  json bad_qubits = to_json(make_bell(+1));
  bad_qubits["num_qubits"] = 9;
  CHECK_THROWS_AS(pure_state_from_json(bad_qubits), ParseError);

  json not_positive = to_json(DensityMatrix::maximally_mixed(1));
  not_positive["matrix"] = json::array({json::array({1.5, 0}), json::array({0, 0}),
                                        json::array({0, 0}), json::array({-0.5, 0})});
  CHECK_THROWS_AS(density_matrix_from_json(not_positive), ParseError);
}

TEST_CASE("file reading distinguishes I/O from parse failures", "[io]") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/dir/state.json"), IoError);
  const std::string path = "clusterlab_io_test.json";
  {
    std::ofstream out(path);
    out << "{ not json";
  }
  CHECK_THROWS_AS(read_json_file(path), ParseError);
  {
    std::ofstream out(path);
    out << to_json(make_cluster4()).dump();
  }
  CHECK(any_state_from_json(read_json_file(path)).num_qubits() == 4);
  std::remove(path.c_str());
}

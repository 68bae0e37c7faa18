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

#include <cmath>

#include "clusterlab/analysis.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/random_states.hpp"
#include "clusterlab/stabilizer.hpp"
#include "dense_oracle.hpp"

using namespace clusterlab;
using Catch::Matchers::WithinAbs;

namespace {

const DensityMatrix& cluster() {
  static const DensityMatrix rho = pure_to_density(make_cluster4());
  return rho;
}

// Dense oracle for <+-|_q applied to |C4>, renormalized.
Eigen::VectorXcd oracle_projected_cluster(int q, int outcome) {
  const Eigen::VectorXcd c = make_cluster4().amplitudes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(8);
  for (int x = 0; x < 16; ++x) {
    const int bit = (x >> (3 - q)) & 1;
    const int high = x >> (4 - q);
    const int low = x & ((1 << (3 - q)) - 1);
    const int rest = (high << (3 - q)) | low;
    out(rest) += (bit && outcome < 0 ? -1.0 : 1.0) * M_SQRT1_2 * c(x);
  }
  return out / out.norm();
}

}  // namespace

TEST_CASE("x-projection of mode d gives the two three-qubit cluster branches", "[analysis]") {
  const ProjectionReport r = reduce_by_x_projection(cluster(), kModeD);
  REQUIRE(r.branches.size() == 2);
  CHECK_FALSE(r.derived_witness);
  const double h = 0.5;
  for (const BranchResult& b : r.branches) {
    const int s = b.outcome;
    Eigen::VectorXcd c3(8);  // (|HH+> + |VV->)/sqrt2 for s = +1
    c3 << h, s * h, 0, 0, 0, 0, h, -s * h;
    CHECK_THAT(b.probability, WithinAbs(0.5, 1e-12));
    CHECK_THAT(b.fidelity, WithinAbs(1.0, 1e-10));
    CHECK_THAT(fidelity(b.state, PureState(3, c3)), WithinAbs(1.0, 1e-10));
    CHECK_THAT(b.witness, WithinAbs(-1.0, 1e-10));
  }
  CHECK(r.branches[0].outcome == 1);
}

TEST_CASE("projection targets match the dense oracle for every mode", "[analysis]") {
  for (int q = 0; q < 4; ++q) {
    for (int outcome : {+1, -1}) {
      const PureState t = projection_target(QubitLabel(q), outcome);
      const Eigen::VectorXcd want = oracle_projected_cluster(q, outcome);
      CHECK_THAT(std::norm(want.dot(t.amplitudes())), WithinAbs(1.0, 1e-12));
      // Every projected stabilizer fixes the target.
      for (const PauliString& s : projected_stabilizers(QubitLabel(q), outcome)) {
        CHECK_THAT(expectation(t, s), WithinAbs(1.0, 1e-12));
      }
    }
  }
}

TEST_CASE("every mode's projection branches are witnessed on the ideal cluster", "[analysis]") {
  for (int q = 0; q < 4; ++q) {
    const ProjectionReport r = reduce_by_x_projection(cluster(), QubitLabel(q));
    CHECK(r.derived_witness == (q != 3));
    double total = 0;
    for (const BranchResult& b : r.branches) {
      CHECK_THAT(b.fidelity, WithinAbs(1.0, 1e-10));
      CHECK_THAT(b.witness, WithinAbs(-1.0, 1e-10));
      total += b.probability;
    }
    CHECK_THAT(total, WithinAbs(1.0, 1e-10));
    // Witnesses are non-negative on the maximally mixed state.
    for (int outcome : {+1, -1}) {
      CHECK(expectation(DensityMatrix::maximally_mixed(3), projection_witness(QubitLabel(q), outcome)) >
            0.0);
    }
  }
}

TEST_CASE("projection of the maximally mixed state", "[analysis]") {
  const ProjectionReport r = reduce_by_x_projection(DensityMatrix::maximally_mixed(4), kModeD);
  for (const BranchResult& b : r.branches) {
    CHECK_THAT(b.probability, WithinAbs(0.5, 1e-12));
    CHECK(trace_distance(b.state, DensityMatrix::maximally_mixed(3)) < 1e-12);
  }
}

TEST_CASE("GHZ branches lose all entanglement in the mixture", "[analysis]") {
  const DensityMatrix ghz = pure_to_density(make_ghz(4));
  const ProjectionReport r = reduce_by_x_projection(ghz, kModeD);
  for (const BranchResult& b : r.branches) {
    Eigen::VectorXcd g(8);
    g << M_SQRT1_2, 0, 0, 0, 0, 0, 0, b.outcome * M_SQRT1_2;
    CHECK_THAT(fidelity(b.state, PureState(3, g)), WithinAbs(1.0, 1e-12));
    CHECK_THAT(b.probability, WithinAbs(0.5, 1e-12));
  }
  const DensityMatrix mix = branch_mixture(r);
  for (double n : single_qubit_negativities(mix)) CHECK_THAT(n, WithinAbs(0.0, 1e-12));
  CHECK(is_hv_diagonal(mix));

  const LossReport loss = reduce_by_loss(ghz, kModeD);
  CHECK(is_hv_diagonal(loss.state));
  CHECK(loss.witness >= 0.0);
}

TEST_CASE("cluster branch mixture keeps entanglement", "[analysis]") {
  const DensityMatrix mix = branch_mixture(reduce_by_x_projection(cluster(), kModeD));
  // The mixture is (Phi+ (x) |H><H| + Phi- (x) |V><V|)/2 on (a, b, c).
  const Eigen::VectorXcd phi_p = oracle::ket({M_SQRT1_2, 0, 0, M_SQRT1_2});
  const Eigen::VectorXcd phi_m = oracle::ket({M_SQRT1_2, 0, 0, -M_SQRT1_2});
  oracle::Mat h = oracle::Mat::Zero(2, 2), v = oracle::Mat::Zero(2, 2);
  h(0, 0) = 1;
  v(1, 1) = 1;
  const oracle::Mat want = 0.5 * (oracle::kron(oracle::projector(phi_p), h) +
                                  oracle::kron(oracle::projector(phi_m), v));
  CHECK((mix.matrix() - want).norm() < 1e-12);

  const std::vector<double> neg = single_qubit_negativities(mix);
  CHECK_THAT(neg[0], WithinAbs(1.0, 1e-10));  // a | bc
  CHECK_THAT(neg[1], WithinAbs(1.0, 1e-10));  // b | ac
  CHECK_THAT(neg[2], WithinAbs(0.0, 1e-10));  // c | ab: classically correlated
  CHECK_FALSE(is_hv_diagonal(mix));
}

TEST_CASE("loss of one photon", "[analysis]") {
  const LossReport d = reduce_by_loss(cluster(), kModeD);
  CHECK_FALSE(d.derived_witness);
  CHECK_THAT(d.witness, WithinAbs(-1.0, 1e-10));
  CHECK_THAT(reduce_by_loss(DensityMatrix::maximally_mixed(4), kModeD).witness,
             WithinAbs(1.0, 1e-12));
  for (int q = 0; q < 3; ++q) {
    const LossReport r = reduce_by_loss(cluster(), QubitLabel(q));
    CHECK(r.derived_witness);
    CHECK_THAT(r.witness, WithinAbs(-1.0, 1e-10));
    CHECK_THAT(expectation(DensityMatrix::maximally_mixed(3), loss_witness(QubitLabel(q))),
               WithinAbs(1.0, 1e-12));
  }
  CHECK_THROWS_AS(reduce_by_loss(cluster(), QubitLabel(4)), DomainError);
  CHECK_THROWS_AS(reduce_by_loss(DensityMatrix::maximally_mixed(3), kModeA), DomainError);
}

TEST_CASE("projection branches recombine into the loss state", "[analysis][property]") {
  Rng rng(61);
  for (int trial = 0; trial < 25; ++trial) {
    const DensityMatrix rho = random_density_matrix(4, rng);
    for (int q = 0; q < 4; ++q) {
      const ProjectionReport r = reduce_by_x_projection(rho, QubitLabel(q));
      const LossReport loss = reduce_by_loss(rho, QubitLabel(q));
      CHECK((branch_mixture(r).matrix() - loss.state.matrix()).cwiseAbs().maxCoeff() < 1e-12);
      double total = 0;
      for (const BranchResult& b : r.branches) {
        CHECK(b.probability >= 0.0);
        CHECK(b.probability <= 1.0);
        CHECK(b.fidelity >= -1e-12);
        CHECK(b.fidelity <= 1.0 + 1e-12);
        total += b.probability;
      }
      CHECK_THAT(total, WithinAbs(1.0, 1e-10));
    }
  }
}

TEST_CASE("two-qubit reduction reproduces the CNOT input state", "[analysis]") {
  const PairReport p = reduce_to_pair(cluster(), {kModeB, kModeC}, {-1, -1});
  // (|H-> - |V+>)/sqrt2 on (a, d)
  const PureState target(2, oracle::ket({0.5, -0.5, -0.5, -0.5}));
  CHECK_THAT(fidelity(p.state, target), WithinAbs(1.0, 1e-10));
  CHECK_THAT(p.fidelity, WithinAbs(1.0, 1e-10));
  CHECK_THAT(p.probability, WithinAbs(0.25, 1e-12));
  CHECK_THAT(p.log_negativity, WithinAbs(1.0, 1e-10));

  const PairReport pp = reduce_to_pair(cluster(), {kModeB, kModeC}, {+1, +1});
  CHECK_THAT(pp.log_negativity, WithinAbs(1.0, 1e-10));
  CHECK_THAT(pp.fidelity, WithinAbs(1.0, 1e-10));

  // Order of the listed modes does not matter.
  const PairReport swapped = reduce_to_pair(cluster(), {kModeC, kModeB}, {-1, -1});
  CHECK(trace_distance(swapped.state, p.state) < 1e-12);

  const PairReport mixed = reduce_to_pair(DensityMatrix::maximally_mixed(4), {kModeB, kModeC}, {1, -1});
  CHECK(trace_distance(mixed.state, DensityMatrix::maximally_mixed(2)) < 1e-12);
  CHECK_THAT(mixed.log_negativity, WithinAbs(0.0, 1e-12));

  CHECK_THROWS_AS(reduce_to_pair(cluster(), {kModeB, kModeB}, {1, 1}), DomainError);
  CHECK_THROWS_AS(reduce_to_pair(cluster(), {kModeB, QubitLabel(5)}, {1, 1}), DomainError);
}

TEST_CASE("persistency report JSON", "[analysis]") {
  const PersistencyReport r = persistency_report(cluster());
  REQUIRE(r.modes.size() == 4);
  const nlohmann::json j = to_json(r);
  CHECK(j["modes"].size() == 4);
  CHECK(j["modes"][3]["mode"] == "d");
  CHECK(j["modes"][3]["derived_witness"] == false);
  CHECK(j["modes"][0]["derived_witness"] == true);
  CHECK(j["modes"][3]["branches"].size() == 2);
  CHECK_THAT(j["modes"][3]["loss"]["witness"].get<double>(), WithinAbs(-1.0, 1e-10));
  CHECK_THAT(j["pair"]["fidelity"].get<double>(), WithinAbs(1.0, 1e-10));
  CHECK_THAT(j["pair"]["log_negativity"].get<double>(), WithinAbs(1.0, 1e-10));
  CHECK(j["pair"]["measured"] == "bc");
}

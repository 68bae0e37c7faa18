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


#include <benchmark/benchmark.h>

#include <vector>

#include "clusterlab/analysis.hpp"
#include "clusterlab/counts.hpp"
#include "clusterlab/photonics.hpp"
#include "clusterlab/stabilizer.hpp"

using namespace clusterlab;

namespace {

void BM_EvolveGate(benchmark::State& state) {
  const PureState in = PureState::basis(2, 3);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_gate(in));
}
BENCHMARK(BM_EvolveGate);

void BM_ClusterExperiment(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(run_cluster_experiment({0.79}));
}
BENCHMARK(BM_ClusterExperiment);

void BM_PersistencyReport(benchmark::State& state) {
  const DensityMatrix rho = run_cluster_experiment({0.79}).state;
  for (auto _ : state) benchmark::DoNotOptimize(persistency_report(rho));
}
BENCHMARK(BM_PersistencyReport);

void BM_FidelityFromCounts(benchmark::State& state) {
  const DensityMatrix rho = run_cluster_experiment({0.79}).state;
  const auto plan = settings_plan(cluster4_stabilizers());
  std::vector<CorrectedRecord> records;
  std::uint64_t stream = 0;
  for (const auto& p : plan) {
    records.push_back(uncorrected(
        sample_counts(outcome_probabilities(rho, p.setting), p.setting, ExperimentConfig{}, stream++)));
  }
  const OperatorExpr f = fidelity_operator(full_group(cluster4_generators()));
  for (auto _ : state) benchmark::DoNotOptimize(estimate(f, records));
}
BENCHMARK(BM_FidelityFromCounts);

void BM_Tomography2q(benchmark::State& state) {
  const DensityMatrix rho = DensityMatrix::from_pure(make_bell(1));
  std::vector<CorrectedRecord> records;
  for (const auto& s : all_settings(2)) {
    records.push_back(expected_record(outcome_probabilities(rho, s), s, 1e5));
  }
  for (auto _ : state) benchmark::DoNotOptimize(tomography_2q(records));
}
BENCHMARK(BM_Tomography2q);

}  // namespace

BENCHMARK_MAIN();

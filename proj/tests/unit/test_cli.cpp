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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "clusterlab/analysis.hpp"
#include "clusterlab/state_io.hpp"
#include "commands.hpp"

using namespace clusterlab;
using Catch::Matchers::WithinAbs;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const char* base = std::getenv("CLUSTERLAB_TEST_TMP");
  fs::path dir = fs::path(base && *base ? base : fs::temp_directory_path() / "clusterlab_cli") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_state(const fs::path& p, const DensityMatrix& rho) {
  std::ofstream(p) << to_json(rho).dump();
}

std::map<std::string, json> quantities(const fs::path& report) {
  std::map<std::string, json> out;
  const json doc = read_json_file(report.string());
  for (const json& q : doc["quantities"]) out[q["quantity"].get<std::string>()] = q;
  return out;
}

}  // namespace

TEST_CASE("simulate prints the success probability and writes a state", "[cli]") {
  const fs::path dir = scratch("simulate");
  const Run r = run({"simulate", "--overlap", "1", "--out", (dir / "ideal.json").string()});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out == "success_probability 0.111111111111\n");
  const json j = read_json_file((dir / "ideal.json").string());
  CHECK(j["manifest"]["command"] == "simulate");
  CHECK(j["manifest"].contains("tool_version"));
  CHECK_THAT(fidelity(any_state_from_json(j), make_cluster4()), WithinAbs(1.0, 1e-10));

  REQUIRE(run({"simulate", "--overlap", "0.5", "--out", (dir / "half.json").string()}).code == 0);
  CHECK_NOTHROW(any_state_from_json(read_json_file((dir / "half.json").string())));
}

TEST_CASE("simulate rejects bad overlaps", "[cli]") {
  const fs::path dir = scratch("simulate_bad");
  CHECK(run({"simulate", "--overlap", "1.5", "--out", (dir / "x.json").string()}).code == cli::kExitUsage);
  CHECK(run({"simulate", "--overlap", "abc"}).code == cli::kExitUsage);
  std::ofstream(dir / "cfg.json") << R"({"overlap": 3})";
  CHECK(run({"simulate", "--config", (dir / "cfg.json").string(), "--out", (dir / "x.json").string()}).code ==
        cli::kExitUsage);
  std::ofstream(dir / "good.json") << R"({"overlap": 0.25})";
  const Run ok = run({"simulate", "--config", (dir / "good.json").string(), "--out", (dir / "y.json").string()});
  CHECK(ok.code == cli::kExitOk);
  CHECK(read_json_file((dir / "y.json").string())["overlap"] == 0.25);
  CHECK(run({"simulate", "--config", (dir / "missing.json").string()}).code == cli::kExitIo);
  CHECK(!fs::exists(dir / "x.json"));
}

TEST_CASE("usage errors", "[cli]") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"analyze"}).code == cli::kExitUsage);
  CHECK(run({"analyze", "--state", "a.json", "--counts", "dir"}).code == cli::kExitUsage);
  CHECK(run({"persistency"}).code == cli::kExitUsage);
  const Run help = run({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("simulate") != std::string::npos);
}

TEST_CASE("analyze in exact mode", "[cli]") {
  const fs::path dir = scratch("analyze_exact");
  write_state(dir / "ideal.json", pure_to_density(make_cluster4()));
  write_state(dir / "mixed.json", DensityMatrix::maximally_mixed(4));

  const Run r = run({"analyze", "--state", (dir / "ideal.json").string(), "--report",
                     (dir / "ideal_report.json").string(), "--pretty"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("witness_c4") != std::string::npos);
  auto q = quantities(dir / "ideal_report.json");
  CHECK(q.size() == 19);
  CHECK_THAT(q["fidelity"]["value"].get<double>(), WithinAbs(1.0, 1e-10));
  CHECK_THAT(q["witness_c4"]["value"].get<double>(), WithinAbs(-1.0, 1e-10));
  CHECK_THAT(q["bell_S"]["value"].get<double>(), WithinAbs(4.0, 1e-10));
  CHECK_THAT(q["-YYZ1"]["value"].get<double>(), WithinAbs(1.0, 1e-10));
  for (const auto& [name, v] : q) CHECK(v["sigma"] == 0.0);
  CHECK(q["witness_c4"]["settings_used"].size() == 2);

  REQUIRE(run({"analyze", "--state", (dir / "mixed.json").string(), "--report",
               (dir / "mixed_report.json").string()}).code == 0);
  q = quantities(dir / "mixed_report.json");
  CHECK_THAT(q["fidelity"]["value"].get<double>(), WithinAbs(1.0 / 16, 1e-12));
  CHECK_THAT(q["witness_c4"]["value"].get<double>(), WithinAbs(2.0, 1e-12));
  CHECK_THAT(q["bell_S"]["value"].get<double>(), WithinAbs(0.0, 1e-12));

  std::ofstream(dir / "broken.json") << R"({"num_qubits": 4, "matrix": [1, 2]})";
  CHECK(run({"analyze", "--state", (dir / "broken.json").string(), "--report",
             (dir / "r.json").string()}).code == cli::kExitData);
  write_state(dir / "two.json", DensityMatrix::maximally_mixed(2));
  CHECK(run({"analyze", "--state", (dir / "two.json").string(), "--report",
             (dir / "r.json").string()}).code == cli::kExitData);
  CHECK(run({"analyze", "--state", (dir / "nope.json").string()}).code == cli::kExitIo);
}

TEST_CASE("synth writes the settings plan deterministically", "[cli]") {
  const fs::path dir = scratch("synth");
  write_state(dir / "ideal.json", pure_to_density(make_cluster4()));
  const std::string state = (dir / "ideal.json").string();
  REQUIRE(run({"synth", "--state", state, "--out", (dir / "a").string(), "--seed", "5"}).code == 0);
  REQUIRE(run({"synth", "--state", state, "--out", (dir / "b").string(), "--seed", "5"}).code == 0);

  int csv = 0;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    if (entry.path().extension() != ".csv") continue;
    ++csv;
    const std::string text = slurp(entry.path());
    CHECK(std::count(text.begin(), text.end(), '\n') == 17);  // header + 16 rows
    CHECK(text == slurp(dir / "b" / entry.path().filename()));
  }
  CHECK(csv == 11);
  CHECK(fs::exists(dir / "a" / "stab_ZZZZ.csv"));
  CHECK(fs::exists(dir / "a" / "witness_XXZZ.csv"));
  const json manifest = read_json_file((dir / "a" / "manifest.json").string());
  CHECK(manifest["manifest"]["seed"] == 5);
  CHECK(manifest["files"].size() == 11);

  REQUIRE(run({"synth", "--state", state, "--out", (dir / "c").string(), "--seed", "6"}).code == 0);
  CHECK(slurp(dir / "a" / "stab_XYYX.csv") != slurp(dir / "c" / "stab_XYYX.csv"));

  CHECK(run({"synth", "--state", state, "--hours", "0.0", "--out", (dir / "d").string()}).code ==
        cli::kExitUsage);
  std::ofstream(dir / "blocker") << "x";
  CHECK(run({"synth", "--state", state, "--out", (dir / "blocker" / "sub").string()}).code ==
        cli::kExitIo);
}

TEST_CASE("analyze counts with efficiencies and missing settings", "[cli]") {
  const fs::path dir = scratch("analyze_counts");
  REQUIRE(run({"simulate", "--overlap", "0.8", "--out", (dir / "noisy.json").string()}).code == 0);
  std::ofstream(dir / "eff.json")
      << R"({"a+":1.0,"a-":0.9,"b+":0.8,"b-":0.95,"c+":0.85,"c-":1.0,"d+":0.9,"d-":0.7})";
  REQUIRE(run({"synth", "--state", (dir / "noisy.json").string(), "--eff", (dir / "eff.json").string(),
               "--out", (dir / "counts").string()}).code == 0);
  const Run r = run({"analyze", "--counts", (dir / "counts").string(), "--eff",
                     (dir / "eff.json").string(), "--report", (dir / "report.json").string()});
  REQUIRE(r.code == cli::kExitOk);
  auto q = quantities(dir / "report.json");
  CHECK(q.size() == 19);
  for (const char* name : {"fidelity", "witness_c4", "bell_S", "XYYX"}) {
    const double sigma = q[name]["sigma"].get<double>();
    CHECK(std::isfinite(sigma));
    CHECK(sigma > 0.0);
  }
  CHECK(q["fidelity"]["settings_used"].size() == 9);

  const fs::path partial = dir / "partial";
  fs::create_directories(partial);
  fs::copy_file(dir / "counts" / "stab_ZZZZ.csv", partial / "stab_ZZZZ.csv");
  const Run missing = run({"analyze", "--counts", partial.string(), "--report", (dir / "x.json").string()});
  CHECK(missing.code == cli::kExitData);
  CHECK(missing.err.find("XXZZ") != std::string::npos);

  CHECK(run({"analyze", "--counts", (dir / "absent").string()}).code == cli::kExitIo);
  fs::create_directories(dir / "empty");
  CHECK(run({"analyze", "--counts", (dir / "empty").string()}).code == cli::kExitData);
  std::ofstream(dir / "empty" / "bad.csv") << "setting,outcome,count\nZZZZ,++++,x\n";
  CHECK(run({"analyze", "--counts", (dir / "empty").string()}).code == cli::kExitData);
}

TEST_CASE("persistency command", "[cli]") {
  const fs::path dir = scratch("persistency");
  write_state(dir / "ideal.json", pure_to_density(make_cluster4()));
  write_state(dir / "ghz.json", pure_to_density(make_ghz(4)));
  write_state(dir / "mixed.json", DensityMatrix::maximally_mixed(4));

  REQUIRE(run({"persistency", "--state", (dir / "ideal.json").string(), "--report",
               (dir / "ideal_p.json").string()}).code == 0);
  const json ideal = read_json_file((dir / "ideal_p.json").string());
  for (const json& m : ideal["modes"]) {
    for (const json& b : m["branches"]) CHECK_THAT(b["witness"].get<double>(), WithinAbs(-1.0, 1e-10));
    CHECK_THAT(m["loss"]["witness"].get<double>(), WithinAbs(-1.0, 1e-10));
  }
  CHECK_THAT(ideal["pair"]["log_negativity"].get<double>(), WithinAbs(1.0, 1e-10));
  CHECK(ideal["manifest"]["command"] == "persistency");

  REQUIRE(run({"persistency", "--state", (dir / "ghz.json").string(), "--report",
               (dir / "ghz_p.json").string()}).code == 0);
  const json ghz = read_json_file((dir / "ghz_p.json").string());
  for (const json& n : ghz["modes"][3]["mixture_log_negativity"]) {
    CHECK_THAT(n.get<double>(), WithinAbs(0.0, 1e-12));
  }

  REQUIRE(run({"persistency", "--state", (dir / "mixed.json").string(), "--report",
               (dir / "mixed_p.json").string()}).code == 0);
  const json mixed = read_json_file((dir / "mixed_p.json").string());
  CHECK_THAT(mixed["modes"][3]["loss"]["witness"].get<double>(), WithinAbs(1.0, 1e-12));
  for (const json& b : mixed["modes"][3]["branches"]) CHECK(b["witness"].get<double>() > 0.0);

  std::ofstream(dir / "bad.json") << "{ nope";
  CHECK(run({"persistency", "--state", (dir / "bad.json").string()}).code == cli::kExitData);
}

TEST_CASE("output directory defaults to the environment variable", "[cli]") {
  const fs::path dir = scratch("env_out");
  ::setenv(cli::kOutputDirEnv, dir.string().c_str(), 1);
  const Run r = run({"simulate"});
  ::unsetenv(cli::kOutputDirEnv);
  REQUIRE(r.code == 0);
  CHECK(fs::exists(dir / "state.json"));
}

TEST_CASE("reruns are byte-identical", "[cli]") {
  const fs::path dir = scratch("rerun");
  const std::string out = (dir / "s.json").string();
  REQUIRE(run({"simulate", "--overlap", "0.7", "--out", out}).code == 0);
  const std::string first = slurp(out);
  REQUIRE(run({"simulate", "--overlap", "0.7", "--out", out}).code == 0);
  CHECK(slurp(out) == first);
  const std::string rep = (dir / "r.json").string();
  REQUIRE(run({"analyze", "--state", out, "--report", rep}).code == 0);
  const std::string report = slurp(rep);
  REQUIRE(run({"analyze", "--state", out, "--report", rep}).code == 0);
  CHECK(slurp(rep) == report);
}

TEST_CASE("exact and high-statistics count analyses agree", "[cli][montecarlo]") {
  const fs::path dir = scratch("agreement");
  const std::string state = (dir / "noisy.json").string();
  REQUIRE(run({"simulate", "--overlap", "0.8", "--out", state}).code == 0);
  REQUIRE(run({"analyze", "--state", state, "--report", (dir / "exact.json").string()}).code == 0);
  auto exact = quantities(dir / "exact.json");

  int checked = 0, beyond3 = 0;
  double worst = 0;
  for (int seed = 0; seed < 50; ++seed) {
    const fs::path counts = dir / ("counts_" + std::to_string(seed));
    REQUIRE(run({"synth", "--state", state, "--rate", "100000", "--hours", "1", "--seed",
                 std::to_string(seed), "--out", counts.string()}).code == 0);
    const fs::path rep = dir / ("report_" + std::to_string(seed) + ".json");
    REQUIRE(run({"analyze", "--counts", counts.string(), "--report", rep.string()}).code == 0);
    for (const auto& [name, q] : quantities(rep)) {
      const double diff = std::abs(q["value"].get<double>() - exact[name]["value"].get<double>());
      const double sigma = q["sigma"].get<double>();
      if (sigma == 0.0) {
        CHECK(diff < 1e-9);
        continue;
      }
      ++checked;
      beyond3 += diff > 3 * sigma;
      worst = std::max(worst, diff / sigma);
    }
    fs::remove_all(counts);
  }
  INFO("pairs beyond 3 sigma: " << beyond3 << " of " << checked << ", worst " << worst);
  CHECK(beyond3 <= checked / 100);
  CHECK(worst < 5.0);
}

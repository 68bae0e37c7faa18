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

#include "commands.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "clusterlab/analysis.hpp"
#include "clusterlab/counts.hpp"
#include "clusterlab/errors.hpp"
#include "clusterlab/photonics.hpp"
#include "clusterlab/stabilizer.hpp"
#include "clusterlab/state_io.hpp"

#ifndef CLUSTERLAB_VERSION
#define CLUSTERLAB_VERSION "unknown"
#endif

namespace clusterlab::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunManifest {
  std::string command;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> config_paths;
  std::string output;

  json to_json() const {
    json j = {{"command", command},
              {"config_paths", config_paths},
              {"output", output},
              {"tool_version", CLUSTERLAB_VERSION}};
    j["seed"] = seed ? json(*seed) : json(nullptr);
    return j;
  }
};

fs::path default_output(const std::string& file_name) {
  const char* dir = std::getenv(kOutputDirEnv);
  return (dir && *dir) ? fs::path(dir) / file_name : fs::path(file_name);
}

void ensure_directory(const fs::path& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  ensure_directory(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

void write_json(const fs::path& path, const json& j) { write_file(path, j.dump(2) + "\n"); }

DensityMatrix read_four_qubit_state(const std::string& path) {
  DensityMatrix rho = any_state_from_json(read_json_file(path));
  if (rho.num_qubits() != 4) {
    throw ParseError(path + ": expected a four-qubit state, found " +
                     std::to_string(rho.num_qubits()) + " qubits");
  }
  return rho;
}

EfficiencyTable read_efficiencies(const std::string& path) {
  return EfficiencyTable::from_json(read_json_file(path), 4);
}

// ---- simulate -------------------------------------------------------------

struct SimulateOptions {
  double overlap = 1.0;
  std::string config;
  std::string out;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
  NoiseParams noise{opt.overlap};
  RunManifest manifest{"simulate", std::nullopt, {}, {}};
  if (!opt.config.empty()) {
    const json cfg = read_json_file(opt.config);
    try {
      noise = noise_from_json(cfg);
    } catch (const DomainError& e) {
      throw UsageError(opt.config + ": " + e.what());
    }
    manifest.config_paths.push_back(opt.config);
  }
  const fs::path path = opt.out.empty() ? default_output("state.json") : fs::path(opt.out);
  manifest.output = path.string();

  const ExperimentResult result = run_cluster_experiment(noise);
  json j = to_json(result.state);
  j["overlap"] = noise.overlap;
  j["success_probability"] = result.success_probability;
  j["manifest"] = manifest.to_json();
  write_json(path, j);

  char line[64];
  std::snprintf(line, sizeof line, "%.12f", result.success_probability);
  out << "success_probability " << line << "\n";
  return kExitOk;
}

// ---- analyze --------------------------------------------------------------

struct Quantity {
  std::string name;
  OperatorExpr expr;
};

std::vector<Quantity> analysis_quantities() {
  std::vector<Quantity> q;
  for (const PauliString& s : cluster4_stabilizers()) {
    q.push_back({s.to_string(), OperatorExpr().add(1.0, s)});
  }
  q.push_back({"fidelity", fidelity_operator(full_group(cluster4_generators()))});
  q.push_back({"witness_c4", witness_c4()});
  q.push_back({"bell_S", bell_operator()});
  return q;
}

std::vector<std::string> exact_settings(const OperatorExpr& expr) {
  std::vector<PauliString> terms;
  for (const auto& t : expr.terms()) {
    if (!t.op.is_identity()) terms.push_back(t.op);
  }
  std::vector<std::string> out;
  if (terms.empty()) return out;
  for (const PlannedSetting& p : settings_plan(terms)) out.push_back(p.setting.to_string());
  return out;
}

std::vector<CountRecord> read_counts_dir(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("counts directory " + dir + " does not exist");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  if (ec) throw IoError("cannot list " + dir + ": " + ec.message());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw NoDataError("no .csv count files in " + dir);
  std::vector<CountRecord> records;
  for (const fs::path& f : files) {
    std::ifstream in(f);
    if (!in) throw IoError("cannot open " + f.string());
    try {
      for (CountRecord& r : read_counts_csv(in)) records.push_back(std::move(r));
    } catch (const ParseError& e) {
      throw ParseError(f.string() + ": " + e.what());
    }
  }
  return merge_by_setting(records);
}

struct AnalyzeOptions {
  std::string state;
  std::string counts;
  std::string eff;
  std::string report;
  bool pretty = false;
};

void print_table(std::ostream& out, const json& quantities) {
  out << "quantity        value        sigma   settings\n";
  for (const json& q : quantities) {
    char line[128];
    std::snprintf(line, sizeof line, "%-10s %10.4f %12.4f   ", q["quantity"].get<std::string>().c_str(),
                  q["value"].get<double>(), q["sigma"].get<double>());
    std::string settings;
    for (const json& s : q["settings_used"]) {
      settings += (settings.empty() ? "" : " ") + s.get<std::string>();
    }
    out << line << settings << "\n";
  }
}

// Report every missing setting at once instead of failing on the first
// quantity that lacks one.
void require_coverage(const std::vector<CorrectedRecord>& records) {
  std::vector<PauliString> uncovered;
  for (const Quantity& q : analysis_quantities()) {
    for (const auto& t : q.expr.terms()) {
      if (t.op.is_identity()) continue;
      const bool measured = std::any_of(records.begin(), records.end(), [&](const CorrectedRecord& r) {
        return r.setting.measures(t.op);
      });
      if (!measured && std::find(uncovered.begin(), uncovered.end(), t.op) == uncovered.end()) {
        uncovered.push_back(t.op);
      }
    }
  }
  if (uncovered.empty()) return;
  std::vector<std::string> missing;
  for (const PlannedSetting& p : settings_plan(uncovered)) missing.push_back(p.setting.to_string());
  std::string list;
  for (const std::string& m : missing) list += (list.empty() ? "" : " ") + m;
  throw PlanningError("missing measurement settings: " + list, missing);
}

int cmd_analyze(const AnalyzeOptions& opt, std::ostream& out) {
  RunManifest manifest{"analyze", std::nullopt, {}, {}};
  const fs::path path = opt.report.empty() ? default_output("report.json") : fs::path(opt.report);
  manifest.output = path.string();

  json quantities = json::array();
  if (!opt.state.empty()) {
    manifest.config_paths.push_back(opt.state);
    const DensityMatrix rho = read_four_qubit_state(opt.state);
    for (const Quantity& q : analysis_quantities()) {
      quantities.push_back({{"quantity", q.name},
                            {"value", expectation(rho, q.expr)},
                            {"sigma", 0.0},
                            {"settings_used", exact_settings(q.expr)}});
    }
  } else {
    manifest.config_paths.push_back(opt.counts);
    const std::vector<CountRecord> raw = read_counts_dir(opt.counts);
    EfficiencyTable eff = EfficiencyTable::uniform(4);
    if (!opt.eff.empty()) {
      manifest.config_paths.push_back(opt.eff);
      eff = read_efficiencies(opt.eff);
    }
    std::vector<CorrectedRecord> records;
    for (const CountRecord& r : raw) {
      if (r.setting.num_qubits() != 4) {
        throw ParseError("setting " + r.setting.to_string() + " is not a four-qubit setting");
      }
      records.push_back(efficiency_correct(r, eff));
    }
    require_coverage(records);
    for (const Quantity& q : analysis_quantities()) {
      const Estimate e = estimate_with_settings(q.expr, records);
      std::vector<std::string> used;
      for (const MeasurementSetting& s : e.settings_used) used.push_back(s.to_string());
      quantities.push_back({{"quantity", q.name},
                            {"value", e.result.value},
                            {"sigma", e.result.sigma},
                            {"settings_used", used}});
    }
  }
  write_json(path, {{"manifest", manifest.to_json()}, {"quantities", quantities}});
  if (opt.pretty) print_table(out, quantities);
  return kExitOk;
}

// ---- persistency ----------------------------------------------------------

struct PersistencyOptions {
  std::string state;
  std::string report;
};

int cmd_persistency(const PersistencyOptions& opt, std::ostream& out) {
  const fs::path path =
      opt.report.empty() ? default_output("persistency.json") : fs::path(opt.report);
  RunManifest manifest{"persistency", std::nullopt, {opt.state}, path.string()};
  const PersistencyReport report = persistency_report(read_four_qubit_state(opt.state));
  json j = to_json(report);
  j["manifest"] = manifest.to_json();
  write_json(path, j);

  for (const ModePersistency& m : report.modes) {
    char line[160];
    std::snprintf(line, sizeof line, "mode %c: branch witnesses %+.4f %+.4f, loss witness %+.4f%s\n",
                  m.projection.mode.name(), m.projection.branches[0].witness,
                  m.projection.branches[1].witness, m.loss.witness,
                  m.projection.derived_witness ? " (derived witnesses)" : "");
    out << line;
  }
  char line[128];
  std::snprintf(line, sizeof line, "pair (a,d): fidelity %.4f, log-negativity %.4f\n",
                report.pair.fidelity, report.pair.log_negativity);
  out << line;
  return kExitOk;
}

// ---- synth ----------------------------------------------------------------

struct SynthOptions {
  std::string state;
  double rate = 150.0;
  double hours = 2.0;
  std::uint64_t seed = 1;
  std::string eff;
  std::string out;
};

int cmd_synth(const SynthOptions& opt, std::ostream& out) {
  const ExperimentConfig config{opt.rate, opt.hours, opt.seed};
  try {
    config.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  const fs::path dir = opt.out.empty() ? default_output("counts") : fs::path(opt.out);
  RunManifest manifest{"synth", opt.seed, {opt.state}, dir.string()};

  const DensityMatrix rho = read_four_qubit_state(opt.state);
  std::optional<EfficiencyTable> eff;
  if (!opt.eff.empty()) {
    manifest.config_paths.push_back(opt.eff);
    eff = read_efficiencies(opt.eff);
  }

  std::vector<std::pair<std::string, MeasurementSetting>> jobs;
  for (const PlannedSetting& p : settings_plan(cluster4_stabilizers())) {
    jobs.emplace_back("stab_", p.setting);
  }
  std::vector<PauliString> witness_terms;
  const OperatorExpr witness = witness_c4();
  for (const auto& t : witness.terms()) {
    if (!t.op.is_identity()) witness_terms.push_back(t.op);
  }
  for (const PlannedSetting& p : settings_plan(witness_terms)) jobs.emplace_back("witness_", p.setting);

  ensure_directory(dir);
  json files = json::array();
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto& [prefix, setting] = jobs[k];
    const CountRecord rec = sample_counts(outcome_probabilities(rho, setting), setting, config, k,
                                          eff ? &*eff : nullptr);
    std::ostringstream csv;
    write_counts_csv(csv, rec);
    const std::string name = prefix + setting.to_string() + ".csv";
    write_file(dir / name, csv.str());
    files.push_back({{"file", name}, {"setting", setting.to_string()}, {"stream", k},
                     {"events", rec.total()}});
  }
  json m = {{"manifest", manifest.to_json()},
            {"rate_per_hour", opt.rate},
            {"hours", opt.hours},
            {"files", files}};
  if (eff) m["efficiencies"] = eff->to_json();
  write_json(dir / "manifest.json", m);
  out << "wrote " << jobs.size() << " count files to " << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"clusterlab: four-photon cluster-state simulation and analysis", "clusterlab"};
  app.set_version_flag("--version", CLUSTERLAB_VERSION);
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Run the post-selected gate experiment");
  simulate->add_option("--overlap", sim.overlap, "Photon indistinguishability V in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--config", sim.config, "Experiment config JSON {\"overlap\": V}");
  simulate->add_option("--out", sim.out, "Output state file (default $CLUSTERLAB_OUT/state.json)");

  AnalyzeOptions ana;
  CLI::App* analyze = app.add_subcommand("analyze", "Stabilizer, fidelity, witness and Bell report");
  auto* state_opt = analyze->add_option("--state", ana.state, "State JSON file (exact analysis)");
  auto* counts_opt = analyze->add_option("--counts", ana.counts, "Directory of count CSV files");
  analyze->add_option("--eff", ana.eff, "Detector efficiency JSON")->needs(counts_opt);
  analyze->add_option("--report", ana.report, "Report file (default $CLUSTERLAB_OUT/report.json)");
  analyze->add_flag("--pretty", ana.pretty, "Print an aligned table");
  state_opt->excludes(counts_opt);

  PersistencyOptions per;
  CLI::App* persistency = app.add_subcommand("persistency", "Projection, loss and pair reductions");
  persistency->add_option("--state", per.state, "State JSON file")->required();
  persistency->add_option("--report", per.report,
                          "Report file (default $CLUSTERLAB_OUT/persistency.json)");

  SynthOptions syn;
  CLI::App* synth = app.add_subcommand("synth", "Synthesize Poissonian coincidence counts");
  synth->add_option("--state", syn.state, "State JSON file")->required();
  synth->add_option("--rate", syn.rate, "Fourfold events per hour")->capture_default_str();
  synth->add_option("--hours", syn.hours, "Measurement time per setting")->capture_default_str();
  synth->add_option("--seed", syn.seed, "Random seed")->capture_default_str();
  synth->add_option("--eff", syn.eff, "Detector efficiency JSON");
  synth->add_option("--out", syn.out, "Output directory (default $CLUSTERLAB_OUT/counts)");

  std::vector<const char*> argv = {"clusterlab"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (analyze->parsed() && ana.state.empty() && ana.counts.empty()) {
      throw CLI::RequiredError("analyze needs --state or --counts");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, out);
    if (analyze->parsed()) return cmd_analyze(ana, out);
    if (persistency->parsed()) return cmd_persistency(per, out);
    if (synth->parsed()) return cmd_synth(syn, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const PlanningError& e) {
    err << "error: " << e.what() << "\nrequired settings:\n";
    for (const std::string& s : e.missing_settings()) err << "  " << s << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    // Parse, domain, no-data and JSON type errors all concern the input data.
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace clusterlab::cli

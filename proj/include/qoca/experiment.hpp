// Copyright 2026 The qoca-workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Declarative experiments: YAML configs, named presets, sweeps over ansatz
// and depth, and the CSV/JSON artifacts they leave behind.

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "qoca/vqe.hpp"

namespace qoca {

struct ExperimentConfig {
  // Exactly one problem source.
  std::optional<LatticeSpec> lattice;
  std::optional<std::string> hamiltonian_file;
  std::optional<std::size_t> num_qubits;
  std::optional<LatticeSpec> ansatz_lattice;  // molecular runs only

  std::vector<AnsatzKind> ansatze{AnsatzKind::QOCA};
  std::vector<std::size_t> depths{1};
  Strategy strategy = Strategy::Full;
  std::string initial_state = "plus_all";  // kind, "bits:...", or "hf"
  OptimizerConfig optimizer;
  std::string output_dir = "out";
  std::size_t record_every = 1;
  bool include_d0 = true;

  void validate() const {
    if (lattice.has_value() == hamiltonian_file.has_value()) {
      throw ConfigError("config needs exactly one of problem.lattice or problem.hamiltonian_file");
    }
    if (lattice) lattice->validate();
    if (hamiltonian_file && !num_qubits) throw ConfigError("problem.num_qubits is required with a file");
    if (ansatze.empty()) throw ConfigError("ansatz list is empty");
    if (depths.empty()) throw ConfigError("depth list is empty");
    if (record_every == 0) throw ConfigError("record_every must be at least 1");
    optimizer.validate();
    if (initial_state != "hf") parse_initial_state(initial_state);
    for (AnsatzKind a : ansatze) {
      if (a != AnsatzKind::FTVHA) continue;
      const LatticeSpec& shape = lattice ? *lattice : ansatz_lattice_or_default();
      if (!shape.is_periodic_chain() || shape.num_sites() < 3) {
        throw ConfigError("ftvha needs a periodic chain, got " + shape.name());
      }
    }
  }

  /// Molecular runs borrow the term structure of an open 1 x (n/2) chain
  /// unless told otherwise.
  LatticeSpec ansatz_lattice_or_default() const {
    if (ansatz_lattice) return *ansatz_lattice;
    const std::size_t n = num_qubits.value_or(2);
    return LatticeSpec{1, std::max<std::size_t>(1, n / 2), false};
  }
};

namespace detail {

inline LatticeSpec parse_lattice(const YAML::Node& n) {
  LatticeSpec lat;
  if (!n.IsMap()) throw ConfigError("lattice must be a mapping");
  lat.rows = n["rows"].as<std::size_t>(1);
  lat.cols = n["cols"].as<std::size_t>(1);
  lat.periodic = n["periodic"].as<bool>(false);
  lat.t = n["t"].as<double>(1.0);
  lat.U = n["U"].as<double>(4.0);
  lat.mu = n["mu"].as<double>(lat.U / 2.0);
  const std::string order = n["order"].as<std::string>("row_major");
  if (order == "snake") {
    lat.order = SiteOrder::Snake;
  } else if (order != "row_major") {
    throw ConfigError("lattice order must be row_major or snake, got '" + order + "'");
  }
  return lat;
}

/// Accepts a scalar, a list, or a "lo..hi" range.
inline std::vector<std::size_t> parse_depths(const YAML::Node& n) {
  std::vector<std::size_t> out;
  if (n.IsSequence()) {
    for (const auto& x : n) out.push_back(x.as<std::size_t>());
    return out;
  }
  const std::string s = n.as<std::string>();
  if (auto dots = s.find(".."); dots != std::string::npos) {
    const std::size_t lo = std::stoul(s.substr(0, dots)), hi = std::stoul(s.substr(dots + 2));
    if (hi < lo) throw ConfigError("empty depth range '" + s + "'");
    for (std::size_t d = lo; d <= hi; ++d) out.push_back(d);
    return out;
  }
  out.push_back(std::stoul(s));
  return out;
}

inline std::vector<AnsatzKind> parse_ansatze(const YAML::Node& n) {
  std::vector<AnsatzKind> out;
  if (n.IsSequence()) {
    for (const auto& x : n) out.push_back(parse_ansatz(x.as<std::string>()));
  } else {
    out.push_back(parse_ansatz(n.as<std::string>()));
  }
  return out;
}

}  // namespace detail

struct Preset {
  std::string name;
  std::string description;
  ExperimentConfig config;
};

/// Named experiments. The 2x2 plaquette uses row-major site order;
/// "2x2-ring" is the same lattice as a periodic 1x4 chain, needed by the
/// Fourier-based ansatz and initial states.
inline std::vector<Preset> presets() {
  std::vector<Preset> out;
  auto hubbard = [](LatticeSpec lat, std::vector<AnsatzKind> a, std::vector<std::size_t> d) {
    ExperimentConfig c;
    c.lattice = lat;
    c.ansatze = std::move(a);
    c.depths = std::move(d);
    return c;
  };
  const std::vector<std::size_t> d1to10{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  out.push_back({"2x1", "dimer, VHA/QOCA/sQOCA/HEA at d=1,2",
                 hubbard({2, 1, false}, {AnsatzKind::VHA, AnsatzKind::QOCA, AnsatzKind::SQOCA, AnsatzKind::HEA},
                         {1, 2})});
  out.push_back({"2x2", "2x2 open plaquette, QOCA/VHA/sQOCA/HEA, d=1..10",
                 hubbard({2, 2, false},
                         {AnsatzKind::QOCA, AnsatzKind::VHA, AnsatzKind::SQOCA, AnsatzKind::HEA}, d1to10)});
  out.push_back({"2x2-ring", "2x2 as a periodic 1x4 chain, FT-VHA/VHA/QOCA, d=1..10",
                 hubbard({1, 4, true}, {AnsatzKind::FTVHA, AnsatzKind::VHA, AnsatzKind::QOCA}, d1to10)});
  out.push_back({"2x3", "2x3 open lattice, QOCA/VHA/sQOCA/HEA, d=1..10",
                 hubbard({2, 3, false},
                         {AnsatzKind::QOCA, AnsatzKind::VHA, AnsatzKind::SQOCA, AnsatzKind::HEA}, d1to10)});
  ExperimentConfig h2o;
  h2o.hamiltonian_file = "data/h2o_sto3g_jw.txt";
  h2o.num_qubits = 12;
  h2o.ansatz_lattice = LatticeSpec{1, 6, false};
  h2o.ansatze = {AnsatzKind::QOCA};
  h2o.depths = {1, 2, 3, 4, 5};
  out.push_back({"h2o", "water, STO-3G, frozen core, 12 qubits; QOCA on a 1x6 chain", h2o});
  return out;
}

inline ExperimentConfig preset(const std::string& name) {
  for (auto& p : presets()) {
    if (p.name == name) return p.config;
  }
  throw ConfigError("unknown preset '" + name + "'");
}

/// Reads a YAML config. A `preset:` key seeds the defaults; other keys
/// override it.
inline ExperimentConfig parse_config(const YAML::Node& root) {
  if (!root.IsMap()) throw ConfigError("config must be a mapping");
  ExperimentConfig c;
  try {
    if (root["preset"]) c = preset(root["preset"].as<std::string>());
    if (const auto p = root["problem"]) {
      if (p["lattice"]) {
        c.lattice = detail::parse_lattice(p["lattice"]);
        c.hamiltonian_file.reset();
      }
      if (p["hamiltonian_file"]) {
        c.hamiltonian_file = p["hamiltonian_file"].as<std::string>();
        c.lattice.reset();
      }
      if (p["num_qubits"]) c.num_qubits = p["num_qubits"].as<std::size_t>();
      if (p["ansatz_lattice"]) c.ansatz_lattice = detail::parse_lattice(p["ansatz_lattice"]);
    }
    if (root["ansatz"]) c.ansatze = detail::parse_ansatze(root["ansatz"]);
    if (root["depth"]) c.depths = detail::parse_depths(root["depth"]);
    if (root["strategy"]) c.strategy = parse_strategy(root["strategy"].as<std::string>());
    if (root["initial_state"]) c.initial_state = root["initial_state"].as<std::string>();
    if (const auto o = root["optimizer"]) {
      if (o["method"]) c.optimizer.method = parse_method(o["method"].as<std::string>());
      if (o["max_evals"]) c.optimizer.max_evals = static_cast<std::size_t>(o["max_evals"].as<double>());
      if (o["rho_begin"]) c.optimizer.rho_begin = o["rho_begin"].as<double>();
      if (o["rho_end"]) c.optimizer.rho_end = o["rho_end"].as<double>();
      if (o["seed"]) c.optimizer.seed = o["seed"].as<std::uint64_t>();
    }
    if (root["output_dir"]) c.output_dir = root["output_dir"].as<std::string>();
    if (root["record_every"]) c.record_every = root["record_every"].as<std::size_t>();
    if (root["include_d0"]) c.include_d0 = root["include_d0"].as<bool>();
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

inline ExperimentConfig load_config(const std::string& path) {
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw ConfigError("cannot read config '" + path + "': " + e.what());
  }
  return parse_config(root);
}

/// QOCA_OUT, when set, replaces output_dir.
inline void apply_environment(ExperimentConfig& c) {
  if (const char* out = std::getenv("QOCA_OUT"); out && *out) c.output_dir = out;
}

/// Builds the shared problem data and resolves the initial state.
struct PreparedExperiment {
  ProblemFixture problem;
  InitialState initial;
};

inline PreparedExperiment prepare_experiment(const ExperimentConfig& c) {
  c.validate();
  PreparedExperiment out;
  if (c.lattice) {
    out.problem = ProblemFixture::hubbard(*c.lattice);
  } else {
    const HamiltonianFile f = load_hamiltonian_file(*c.hamiltonian_file, c.num_qubits);
    out.problem = ProblemFixture::molecular(*c.hamiltonian_file, f.hamiltonian, c.ansatz_lattice_or_default());
    if (c.initial_state == "hf") {
      const auto bits = f.meta("hf_bitstring");
      if (!bits) throw ConfigError("initial_state hf needs '# hf_bitstring=' in the Hamiltonian file");
      out.initial = InitialState::computational(*bits);
    }
  }
  if (c.initial_state != "hf") {
    out.initial = parse_initial_state(c.initial_state);
  } else if (c.lattice) {
    throw ConfigError("initial_state hf only applies to Hamiltonian files");
  }
  // Fail before any optimization if the state cannot be prepared.
  prepare_initial_state(out.initial, out.problem.num_qubits(), out.problem.lattice);
  return out;
}

inline nlohmann::ordered_json to_json(const SummaryRow& r) {
  return {{"ansatz", r.ansatz},
          {"depth", r.depth},
          {"strategy", r.strategy},
          {"initial_state", r.initial_state},
          {"max_fidelity", r.max_fidelity},
          {"best_energy", r.best_energy},
          {"n_evals", r.n_evals},
          {"n_params_per_layer", r.n_params_per_layer},
          {"n_cnot_per_layer", r.n_cnot_per_layer}};
}

inline std::string trace_file_name(AnsatzKind a, std::size_t depth) {
  return "trace_" + std::string(to_string(a)) + "_d" + std::to_string(depth) + ".csv";
}

struct SweepEntry {
  AnsatzKind ansatz;
  std::size_t depth;
  std::optional<RunResult> result;
  std::string error;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  bool all_ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.result.has_value(); });
  }
};

namespace detail {

inline void write_summary(const std::filesystem::path& dir, const std::vector<SweepEntry>& entries) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    if (e.result) {
      rows.push_back(to_json(e.result->summary));
    } else if (!e.error.empty()) {
      rows.push_back({{"ansatz", std::string(to_string(e.ansatz))}, {"depth", e.depth}, {"error", e.error}});
    }
  }
  std::ofstream out(dir / "summary.json");
  out << rows.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) << "\n";
}

}  // namespace detail

/// Every (ansatz, depth) pair of the config, plus d=0 rows when enabled.
/// Runs are spread over `jobs` threads; a failed run is recorded and the rest
/// continue. Writes one trace CSV per run, summary.json, and plot data.
inline SweepResult run_sweep(const ExperimentConfig& c, std::size_t jobs = 1) {
  const PreparedExperiment prep = prepare_experiment(c);
  const std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);

  SweepResult sweep;
  for (AnsatzKind a : c.ansatze) {
    if (c.include_d0 && std::find(c.depths.begin(), c.depths.end(), 0) == c.depths.end()) {
      sweep.entries.push_back({a, 0, std::nullopt, {}});
    }
    for (std::size_t d : c.depths) sweep.entries.push_back({a, d, std::nullopt, {}});
  }

  std::mutex summary_mutex;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < sweep.entries.size(); i = next++) {
      SweepEntry& e = sweep.entries[i];
      RunSpec spec{e.ansatz, e.depth, c.strategy, prep.initial, c.optimizer, c.record_every, false};
      try {
        RunResult r = run_vqe(prep.problem, spec);
        std::ofstream out(dir / trace_file_name(e.ansatz, e.depth));
        r.trace.write_csv(out);
        std::lock_guard lock(summary_mutex);
        e.result = std::move(r);
        detail::write_summary(dir, sweep.entries);
      } catch (const std::exception& ex) {
        std::lock_guard lock(summary_mutex);
        e.error = ex.what();
        detail::write_summary(dir, sweep.entries);
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, sweep.entries.size());
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  detail::write_summary(dir, sweep.entries);
  return sweep;
}

struct PlotSeries {
  std::string name;
  const OptimizationTrace* trace;
};

/// Long-format CSVs `series,iter,value`: infidelity and occupancy per trace.
inline void emit_plot_data(const std::vector<PlotSeries>& series, std::ostream& infidelity,
                           std::ostream& occupancy) {
  infidelity << "series,iter,value\n";
  occupancy << "series,iter,value\n";
  for (const auto& s : series) {
    for (const auto& r : s.trace->records) {
      infidelity << s.name << "," << r.iter << "," << format_double(1.0 - r.fidelity) << "\n";
      occupancy << s.name << "," << r.iter << "," << format_double(r.occupancy) << "\n";
    }
  }
}

/// One row per (ansatz, depth): series is the ansatz, iter the depth, value
/// the final infidelity 1 - max_fidelity.
inline void emit_depth_plot(const SweepResult& sweep, std::ostream& os) {
  os << "series,iter,value\n";
  for (const auto& e : sweep.entries) {
    if (!e.result) continue;
    os << to_string(e.ansatz) << "," << e.depth << "," << format_double(1.0 - e.result->summary.max_fidelity)
       << "\n";
  }
}

inline void write_plot_files(const SweepResult& sweep, const std::filesystem::path& dir) {
  std::vector<PlotSeries> series;
  for (const auto& e : sweep.entries) {
    if (e.result) {
      series.push_back({std::string(to_string(e.ansatz)) + "_d" + std::to_string(e.depth), &e.result->trace});
    }
  }
  std::ofstream inf(dir / "plot_infidelity.csv"), occ(dir / "plot_occupancy.csv"), dep(dir / "plot_depth.csv");
  emit_plot_data(series, inf, occ);
  emit_depth_plot(sweep, dep);
}

}  // namespace qoca

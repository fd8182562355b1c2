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

// qoca-workbench: run VQE experiments from YAML configs.
//
//   qoca-workbench run <config> [overrides]
//   qoca-workbench sweep <config> [overrides] [--jobs N]
//   qoca-workbench check-hamiltonian <file> [--qubits N]
//   qoca-workbench presets
//
// Exit codes: 0 success, 2 config error, 3 run failure.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "qoca/experiment.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kRunFailure = 3;

struct Overrides {
  std::string preset;
  std::vector<std::string> ansatze;
  std::string depths;
  std::string strategy;
  std::string initial_state;
  std::string method;
  std::optional<std::size_t> max_evals;
  std::optional<double> rho_begin;
  std::optional<double> rho_end;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
  std::optional<std::size_t> record_every;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--ansatz", o.ansatze, "ansatz names (hea, vha, ftvha, qoca, sqoca)");
  cmd->add_option("--depth", o.depths, "depth, list 'a,b' or range 'lo..hi'");
  cmd->add_option("--strategy", o.strategy, "full or scalable");
  cmd->add_option("--initial-state", o.initial_state, "plus_all, omega_T1, omega_T2, omega_T, bond_singlets, bits:..., hf");
  cmd->add_option("--method", o.method, "cobyla or nelder-mead");
  cmd->add_option("--max-evals", o.max_evals);
  cmd->add_option("--rho-begin", o.rho_begin);
  cmd->add_option("--rho-end", o.rho_end);
  cmd->add_option("--seed", o.seed);
  cmd->add_option("--output-dir", o.output_dir);
  cmd->add_option("--record-every", o.record_every);
}

std::vector<std::size_t> parse_depth_flag(const std::string& s) {
  std::vector<std::size_t> out;
  if (s.find("..") != std::string::npos) return qoca::detail::parse_depths(YAML::Node(s));
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) out.push_back(std::stoul(tok));
  return out;
}

qoca::ExperimentConfig resolve(const std::string& path, const Overrides& o) {
  qoca::ExperimentConfig c = path.empty() ? qoca::preset(o.preset) : qoca::load_config(path);
  if (!o.ansatze.empty()) {
    c.ansatze.clear();
    for (const auto& a : o.ansatze) c.ansatze.push_back(qoca::parse_ansatz(a));
  }
  if (!o.depths.empty()) {
    try {
      c.depths = parse_depth_flag(o.depths);
    } catch (const std::exception&) {
      throw qoca::ConfigError("bad --depth '" + o.depths + "'");
    }
  }
  if (!o.strategy.empty()) c.strategy = qoca::parse_strategy(o.strategy);
  if (!o.initial_state.empty()) c.initial_state = o.initial_state;
  if (!o.method.empty()) c.optimizer.method = qoca::parse_method(o.method);
  if (o.max_evals) c.optimizer.max_evals = *o.max_evals;
  if (o.rho_begin) c.optimizer.rho_begin = *o.rho_begin;
  if (o.rho_end) c.optimizer.rho_end = *o.rho_end;
  if (o.seed) c.optimizer.seed = *o.seed;
  if (!o.output_dir.empty()) c.output_dir = o.output_dir;
  if (o.record_every) c.record_every = *o.record_every;
  qoca::apply_environment(c);
  c.validate();
  return c;
}

void print_presets() {
  for (const auto& p : qoca::presets()) std::cout << p.name << "\t" << p.description << "\n";
}

int print_summary(const qoca::SweepResult& sweep) {
  for (const auto& e : sweep.entries) {
    std::cout << qoca::to_string(e.ansatz) << " d=" << e.depth;
    if (e.result) {
      const auto& s = e.result->summary;
      std::cout << " max_fidelity=" << qoca::format_double(s.max_fidelity)
                << " best_energy=" << qoca::format_double(s.best_energy) << " n_evals=" << s.n_evals
                << " params/layer=" << s.n_params_per_layer << " cnots/layer=" << s.n_cnot_per_layer << "\n";
    } else {
      std::cout << " FAILED: " << e.error << "\n";
    }
  }
  return sweep.all_ok() ? 0 : kRunFailure;
}

int check_hamiltonian(const std::string& path, std::optional<std::size_t> qubits) {
  const qoca::HamiltonianFile f = qoca::load_hamiltonian_file(path, qubits);
  const qoca::PauliSum& h = f.hamiltonian;
  std::cout << "file: " << path << "\n"
            << "qubits: " << h.num_qubits() << "\n"
            << "terms: " << h.size() << "\n"
            << "hermitian: yes\n";
  for (const auto& [k, v] : f.metadata) std::cout << "meta " << k << "=" << v << "\n";
  if (h.num_qubits() <= qoca::kDefaultDenseCap) {
    const qoca::GroundSpace gs = qoca::exact_ground_space(h);
    std::cout << "ground_energy: " << qoca::format_double(gs.energy) << "\n"
              << "degeneracy: " << gs.degeneracy() << "\n";
    if (const auto bits = f.meta("hf_bitstring")) {
      const auto s = qoca::Statevector::from_bits(*bits);
      std::cout << "hf_energy: " << qoca::format_double(qoca::expectation(s, h)) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational eigensolver workbench for Hubbard and molecular Hamiltonians"};
  app.require_subcommand(0, 1);
  bool list_presets = false;
  app.add_flag("--list-presets", list_presets, "list the named presets and exit");

  Overrides run_o, sweep_o;
  std::string run_cfg, sweep_cfg, ham_file;
  std::size_t jobs = 1;
  std::optional<std::size_t> ham_qubits;

  auto* run = app.add_subcommand("run", "one optimization (single ansatz and depth)");
  run->add_option("config", run_cfg, "YAML config");
  run->add_option("--preset", run_o.preset, "start from a named preset instead of a file");
  add_overrides(run, run_o);

  auto* sweep = app.add_subcommand("sweep", "every ansatz and depth in the config, plus d=0 rows");
  sweep->add_option("config", sweep_cfg, "YAML config");
  sweep->add_option("--preset", sweep_o.preset, "start from a named preset instead of a file");
  sweep->add_option("--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);
  add_overrides(sweep, sweep_o);

  auto* check = app.add_subcommand("check-hamiltonian", "validate an interchange Hamiltonian file");
  check->add_option("file", ham_file)->required();
  check->add_option("--qubits", ham_qubits, "expected qubit count");

  auto* pre = app.add_subcommand("presets", "list the named presets");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigError;
  }

  try {
    if (list_presets || pre->parsed()) {
      print_presets();
      return 0;
    }
    if (check->parsed()) return check_hamiltonian(ham_file, ham_qubits);
    if (run->parsed() || sweep->parsed()) {
      const bool is_run = run->parsed();
      const std::string& cfg = is_run ? run_cfg : sweep_cfg;
      const Overrides& o = is_run ? run_o : sweep_o;
      if (cfg.empty() == o.preset.empty()) {
        std::cerr << "error: give either a config file or --preset\n";
        return kConfigError;
      }
      qoca::ExperimentConfig c = resolve(cfg, o);
      if (is_run) {
        if (c.ansatze.size() != 1 || c.depths.size() != 1) {
          throw qoca::ConfigError("run needs exactly one ansatz and one depth; use sweep for lists");
        }
        c.include_d0 = false;
      }
      const qoca::SweepResult result = qoca::run_sweep(c, is_run ? 1 : jobs);
      if (!is_run) qoca::write_plot_files(result, c.output_dir);
      return print_summary(result);
    }
    std::cout << app.help();
    return 0;
  } catch (const qoca::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const qoca::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "run failure: " << e.what() << "\n";
    return kRunFailure;
  }
}

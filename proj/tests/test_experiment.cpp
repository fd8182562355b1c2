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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qoca/experiment.hpp"

namespace {

using namespace qoca;
namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qoca_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig dimer_config(const fs::path& out) {
  ExperimentConfig c;
  c.lattice = LatticeSpec{2, 1, false};
  c.ansatze = {AnsatzKind::QOCA, AnsatzKind::VHA};
  c.depths = {1};
  c.optimizer.max_evals = 150;
  c.output_dir = out.string();
  return c;
}

TEST(Config, ParsesNestedYaml) {
  const auto c = parse_config(YAML::Load(R"(
problem:
  lattice: {rows: 2, cols: 3, U: 6, order: snake}
ansatz: [qoca, vha]
depth: 2..4
strategy: scalable
initial_state: omega_T1
optimizer: {method: nelder-mead, max_evals: 1e4, rho_begin: 0.3, seed: 9}
record_every: 10
)"));
  ASSERT_TRUE(c.lattice);
  EXPECT_EQ(c.lattice->rows, 2u);
  EXPECT_EQ(c.lattice->cols, 3u);
  EXPECT_DOUBLE_EQ(c.lattice->U, 6.0);
  EXPECT_DOUBLE_EQ(c.lattice->mu, 3.0);
  EXPECT_EQ(c.lattice->order, SiteOrder::Snake);
  EXPECT_EQ(c.ansatze, (std::vector<AnsatzKind>{AnsatzKind::QOCA, AnsatzKind::VHA}));
  EXPECT_EQ(c.depths, (std::vector<std::size_t>{2, 3, 4}));
  EXPECT_EQ(c.strategy, Strategy::Scalable);
  EXPECT_EQ(c.optimizer.method, Method::NelderMead);
  EXPECT_EQ(c.optimizer.max_evals, 10000u);
  EXPECT_DOUBLE_EQ(c.optimizer.rho_begin, 0.3);
  EXPECT_EQ(c.optimizer.seed, 9u);
  EXPECT_EQ(c.record_every, 10u);
}

TEST(Config, PresetKeySeedsDefaults) {
  const auto c = parse_config(YAML::Load("preset: 2x3\ndepth: 9\nansatz: qoca\n"));
  EXPECT_EQ(c.lattice->name(), LatticeSpec({2, 3, false}).name());
  EXPECT_EQ(c.depths, std::vector<std::size_t>{9});
  EXPECT_EQ(c.ansatze.size(), 1u);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config(YAML::Load("ansatz: uccsd\n")), ConfigError);
  EXPECT_THROW(parse_config(YAML::Load("depth: 5..2\n")), ConfigError);
  EXPECT_THROW(parse_config(YAML::Load("problem: {lattice: {rows: 2, order: spiral}}\n")), ConfigError);
  EXPECT_THROW(parse_config(YAML::Load("- 1\n- 2\n")), ConfigError);
  EXPECT_THROW(parse_config(YAML::Load("optimizer: {rho_begin: 1e-7}\n")).validate(), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/qoca.yaml"), ConfigError);

  ExperimentConfig none;
  EXPECT_THROW(none.validate(), ConfigError);
  ExperimentConfig ft;
  ft.lattice = LatticeSpec{2, 3, false};
  ft.ansatze = {AnsatzKind::FTVHA};
  EXPECT_THROW(ft.validate(), ConfigError);
  ft.lattice = LatticeSpec{1, 4, true};
  EXPECT_NO_THROW(ft.validate());
  ExperimentConfig hf;
  hf.lattice = LatticeSpec{2, 1, false};
  hf.initial_state = "hf";
  EXPECT_THROW(prepare_experiment(hf), ConfigError);
}

TEST(Config, PresetsCoverStandardLattices) {
  std::vector<std::string> names;
  for (const auto& p : presets()) names.push_back(p.name);
  for (const char* want : {"2x1", "2x2", "2x2-ring", "2x3", "h2o"}) {
    EXPECT_NE(std::find(names.begin(), names.end(), want), names.end()) << want;
  }
  EXPECT_THROW(preset("3x3"), ConfigError);
  for (const auto& p : presets()) {
    if (p.config.lattice) {
      EXPECT_NO_THROW(p.config.validate()) << p.name;
    }
  }
}

TEST(Config, EnvironmentOverridesOutputDir) {
  ExperimentConfig c;
  ::setenv("QOCA_OUT", "/tmp/elsewhere", 1);
  apply_environment(c);
  ::unsetenv("QOCA_OUT");
  EXPECT_EQ(c.output_dir, "/tmp/elsewhere");
}

TEST(Sweep, WritesTracesSummaryAndDepthZeroRows) {
  const fs::path out = scratch_dir("sweep");
  const auto sweep = run_sweep(dimer_config(out), 2);
  ASSERT_TRUE(sweep.all_ok());
  ASSERT_EQ(sweep.entries.size(), 4u);
  for (const char* f : {"trace_qoca_d0.csv", "trace_qoca_d1.csv", "trace_vha_d0.csv", "trace_vha_d1.csv",
                        "summary.json"}) {
    EXPECT_TRUE(fs::exists(out / f)) << f;
  }
  const auto rows = nlohmann::json::parse(slurp(out / "summary.json"));
  ASSERT_EQ(rows.size(), 4u);
  const Statevector plus = prepare_initial_state(InitialState::plus_all(), 4, LatticeSpec{2, 1, false});
  const ProblemFixture p = ProblemFixture::hubbard({2, 1, false});
  for (const auto& row : rows) {
    if (row["depth"] == 0) {
      EXPECT_NEAR(row["max_fidelity"].get<double>(), fidelity(plus, p.ground), 1e-14);
    }
  }
  EXPECT_EQ(rows[1]["ansatz"], "qoca");
  EXPECT_EQ(rows[1]["n_params_per_layer"], 7);
  EXPECT_EQ(rows[1]["initial_state"], "plus_all");

  // The summary maximum is the largest fidelity in the trace file.
  std::istringstream trace(slurp(out / "trace_qoca_d1.csv"));
  std::string line;
  std::getline(trace, line);
  EXPECT_EQ(line, "iter,energy,fidelity,occupancy");
  double mx = 0.0;
  while (std::getline(trace, line)) {
    std::stringstream ls(line);
    std::string tok;
    for (int k = 0; k < 3; ++k) std::getline(ls, tok, ',');
    mx = std::max(mx, std::stod(tok));
  }
  EXPECT_DOUBLE_EQ(mx, rows[1]["max_fidelity"].get<double>());
}

TEST(Sweep, RerunsAreByteIdentical) {
  const fs::path a = scratch_dir("rerun_a"), b = scratch_dir("rerun_b");
  auto ca = dimer_config(a), cb = dimer_config(b);
  ca.ansatze = cb.ansatze = {AnsatzKind::SQOCA};
  run_sweep(ca, 1);
  run_sweep(cb, 3);
  EXPECT_EQ(slurp(a / "summary.json"), slurp(b / "summary.json"));
  EXPECT_EQ(slurp(a / "trace_sqoca_d1.csv"), slurp(b / "trace_sqoca_d1.csv"));
}

TEST(Sweep, PlotDataIsLongFormat) {
  OptimizationTrace t;
  t.records.push_back({1, -1.0, 0.75, 1.0, {}});
  t.records.push_back({2, -2.0, 1.0, 0.5, {}});
  std::ostringstream inf, occ;
  emit_plot_data({{"qoca_d1", &t}}, inf, occ);
  EXPECT_EQ(inf.str(), "series,iter,value\nqoca_d1,1,0.25\nqoca_d1,2,0\n");
  EXPECT_EQ(occ.str(), "series,iter,value\nqoca_d1,1,1\nqoca_d1,2,0.5\n");
}

TEST(Sweep, HamiltonianFileWithHartreeFockState) {
  const fs::path dir = scratch_dir("hfile");
  {
    std::ofstream f(dir / "h.txt");
    f << "# hf_bitstring=1100\n# fci_energy=-2\n-1.0 0 ZIII\n-1.0 0 IZII\n0.5 0 IIZZ\n";
  }
  ExperimentConfig c;
  c.hamiltonian_file = (dir / "h.txt").string();
  c.num_qubits = 4;
  c.initial_state = "hf";
  c.depths = {0};
  c.include_d0 = false;
  c.output_dir = (dir / "out").string();
  const auto sweep = run_sweep(c);
  ASSERT_TRUE(sweep.all_ok());
  const auto& s = sweep.entries[0].result->summary;
  EXPECT_EQ(s.initial_state, "bits:1100");
  EXPECT_NEAR(s.best_energy, 2.5, 1e-12);  // Z1 = Z2 = -1, Z3 Z4 = +1

  c.num_qubits = 5;
  EXPECT_THROW(run_sweep(c), ParseError);
}

#ifdef QOCA_WORKBENCH_BIN
int cli(const std::string& args) {
  const std::string cmd = std::string(QOCA_WORKBENCH_BIN) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch_dir("cli");
  {
    std::ofstream ok(dir / "one.txt");
    ok << "1.0 0.0 Z\n";
    std::ofstream bad(dir / "bad.txt");
    bad << "1.0 0.0 Z\n1.0 zero X\n";
    std::ofstream cfg(dir / "bad.yaml");
    cfg << "ansatz: nope\n";
  }
  EXPECT_EQ(cli("--list-presets"), 0);
  EXPECT_EQ(cli("check-hamiltonian " + (dir / "one.txt").string()), 0);
  EXPECT_EQ(cli("check-hamiltonian " + (dir / "one.txt").string() + " --qubits 2"), 2);
  EXPECT_EQ(cli("check-hamiltonian " + (dir / "bad.txt").string()), 2);
  EXPECT_EQ(cli("run " + (dir / "bad.yaml").string()), 2);
  EXPECT_EQ(cli("run --preset 2x1 --depth 1..2"), 2);
  EXPECT_EQ(cli("sweep --preset 2x2 --ansatz ftvha"), 2);
  EXPECT_EQ(cli("run --preset 2x1 --ansatz qoca --depth 1 --max-evals 50 --output-dir " + (dir / "o").string()), 0);
  EXPECT_TRUE(fs::exists(dir / "o" / "trace_qoca_d1.csv"));
  EXPECT_EQ(cli("frobnicate"), 2);
}
#endif

}  // namespace

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

// Energy objective, optimizer driver with per-evaluation trace capture, and
// the single-run VQE entry point.

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qoca/ansatz.hpp"
#include "qoca/fermion.hpp"
#include "qoca/ground_space.hpp"
#include "qoca/optimize.hpp"
#include "qoca/pauli_io.hpp"
#include "qoca/statevector.hpp"

namespace qoca {

/// E(theta) = <psi(theta)|H|psi(theta)>, with the identity coefficient of H
/// split off as a constant offset.
class Objective {
 public:
  Objective(Circuit circuit, const PauliSum& hamiltonian, Statevector initial)
      : circuit_(std::move(circuit)),
        observable_(hamiltonian.without_identity()),
        initial_(std::move(initial)),
        offset_(hamiltonian.identity_coefficient().real()) {
    if (hamiltonian.num_qubits() != circuit_.num_qubits() ||
        initial_.num_qubits() != circuit_.num_qubits()) {
      throw DimensionError("circuit, Hamiltonian and initial state sizes differ");
    }
  }

  std::size_t num_params() const noexcept { return circuit_.num_params(); }
  double constant_offset() const noexcept { return offset_; }
  const Circuit& circuit() const noexcept { return circuit_; }
  const Statevector& initial_state() const noexcept { return initial_; }

  Statevector prepare(std::span<const double> theta) const {
    Statevector s = initial_;
    run_circuit(circuit_, s, theta);
    return s;
  }

  double energy_of(const Statevector& s) const { return observable_.expectation(s) + offset_; }

  double evaluate(std::span<const double> theta) const { return energy_of(prepare(theta)); }

 private:
  Circuit circuit_;
  CompiledObservable observable_;
  Statevector initial_;
  double offset_ = 0.0;
};

enum class Method { COBYLA, NelderMead };

inline std::string_view to_string(Method m) { return m == Method::COBYLA ? "cobyla" : "nelder-mead"; }

inline Method parse_method(std::string_view s) {
  if (s == "cobyla" || s == "COBYLA") return Method::COBYLA;
  if (s == "nelder-mead" || s == "neldermead" || s == "NelderMead") return Method::NelderMead;
  throw ConfigError("unknown optimizer method '" + std::string(s) + "'");
}

struct OptimizerConfig {
  Method method = Method::COBYLA;
  std::size_t max_evals = 100000;
  double rho_begin = 0.5;
  double rho_end = 1e-6;
  std::uint64_t seed = 0;

  MinimizerOptions minimizer_options() const { return {rho_begin, rho_end, max_evals}; }

  void validate() const {
    if (max_evals < 1) throw ConfigError("optimizer.max_evals must be at least 1");
    if (!(rho_end > 0.0) || !(rho_end < rho_begin)) {
      throw ConfigError("optimizer needs 0 < rho_end < rho_begin");
    }
  }
};

struct TraceRecord {
  std::size_t iter = 0;
  double energy = 0.0;
  double fidelity = 0.0;
  double occupancy = 0.0;
  std::vector<double> params;  // empty unless snapshots are kept
};

struct OptimizationTrace {
  std::vector<TraceRecord> records;
  double best_energy = std::numeric_limits<double>::infinity();
  std::vector<double> best_params;
  double best_fidelity = 0.0;  // fidelity at best_params
  double max_fidelity = 0.0;   // over every evaluation
  std::size_t n_evals = 0;

  void write_csv(std::ostream& os) const {
    os << "iter,energy,fidelity,occupancy\n";
    for (const auto& r : records) {
      os << r.iter << "," << format_double(r.energy) << "," << format_double(r.fidelity) << ","
         << format_double(r.occupancy) << "\n";
    }
  }
};

/// What to measure at each evaluation besides the energy.
struct TraceOptions {
  const GroundSpace* ground = nullptr;
  const CompiledObservable* occupancy = nullptr;
  /// Keep every k-th evaluation; evaluations that improve the best energy or
  /// the maximum fidelity, and the last one, are always kept.
  std::size_t record_every = 1;
  bool keep_params = false;
};

inline OptimizationTrace minimize(const Objective& obj, const OptimizerConfig& config,
                                  const std::vector<double>& theta0, const TraceOptions& topt = {}) {
  config.validate();
  if (theta0.size() != obj.num_params()) {
    throw DimensionError("initial parameters have length " + std::to_string(theta0.size()) +
                         ", circuit expects " + std::to_string(obj.num_params()));
  }
  const std::size_t every = std::max<std::size_t>(1, topt.record_every);
  OptimizationTrace trace;
  std::optional<TraceRecord> pending;  // last unrecorded evaluation
  auto f = [&](const Eigen::VectorXd& x) {
    const std::span<const double> theta(x.data(), static_cast<std::size_t>(x.size()));
    const Statevector s = obj.prepare(theta);
    const double e = obj.energy_of(s);
    const std::size_t it = ++trace.n_evals;
    if (!std::isfinite(e)) {
      throw std::runtime_error("objective returned a non-finite value at evaluation " +
                               std::to_string(it));
    }
    TraceRecord r{it, e, topt.ground ? fidelity(s, *topt.ground) : 0.0,
                  topt.occupancy ? topt.occupancy->expectation(s) : 0.0, {}};
    bool keep = (it - 1) % every == 0;
    if (e < trace.best_energy) {
      trace.best_energy = e;
      trace.best_params.assign(theta.begin(), theta.end());
      trace.best_fidelity = r.fidelity;
      keep = true;
    }
    if (r.fidelity > trace.max_fidelity) {
      trace.max_fidelity = r.fidelity;
      keep = true;
    }
    if (keep) {
      if (topt.keep_params) r.params.assign(theta.begin(), theta.end());
      trace.records.push_back(std::move(r));
      pending.reset();
    } else {
      pending = std::move(r);
    }
    return e;
  };
  const Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(theta0.data(), static_cast<Eigen::Index>(theta0.size()));
  if (config.method == Method::COBYLA) {
    cobyla(f, x0, config.minimizer_options());
  } else {
    nelder_mead(f, x0, config.minimizer_options());
  }
  if (pending) trace.records.push_back(std::move(*pending));
  return trace;
}

/// Read-only data shared by every run on one problem: the Hamiltonian, the
/// exact ground space, the occupancy observable, and the lattice whose terms
/// shape the Hamiltonian-based ansatze.
struct ProblemFixture {
  std::string name;
  PauliSum hamiltonian;
  std::optional<LatticeSpec> lattice;  // set for Hubbard problems
  HubbardModel ansatz_model;
  GroundSpace ground;
  CompiledObservable occupancy;

  std::size_t num_qubits() const noexcept { return hamiltonian.num_qubits(); }

  static ProblemFixture hubbard(const LatticeSpec& lat, const GroundSpaceOptions& gopt = {}) {
    lat.validate();
    ProblemFixture p;
    p.name = lat.name();
    p.lattice = lat;
    p.ansatz_model = build_hubbard(lat);
    p.hamiltonian = p.ansatz_model.qubit_hamiltonian();
    p.ground = exact_ground_space(p.hamiltonian, gopt);
    p.occupancy = CompiledObservable(occupancy_observable(lat));
    return p;
  }

  /// A file-supplied Hamiltonian; the Hamiltonian-based ansatze borrow their
  /// term structure from `ansatz_lattice`.
  static ProblemFixture molecular(std::string name, const PauliSum& h, const LatticeSpec& ansatz_lattice,
                                  const GroundSpaceOptions& gopt = {}) {
    ansatz_lattice.validate();
    if (ansatz_lattice.num_orbitals() != h.num_qubits()) {
      throw ConfigError("ansatz lattice " + ansatz_lattice.name() + " does not match " +
                        std::to_string(h.num_qubits()) + " qubits");
    }
    ProblemFixture p;
    p.name = std::move(name);
    p.hamiltonian = h;
    p.ansatz_model = build_hubbard(ansatz_lattice);
    p.ground = exact_ground_space(h, gopt);
    p.occupancy = CompiledObservable(occupancy_observable(h.num_qubits()));
    return p;
  }
};

struct RunSpec {
  AnsatzKind ansatz = AnsatzKind::QOCA;
  std::size_t depth = 1;
  Strategy strategy = Strategy::Full;
  InitialState initial = InitialState::plus_all();
  OptimizerConfig optimizer;
  std::size_t record_every = 1;
  bool keep_params = false;
  // Start short-QOCA at zero like every other ansatz instead of a random draw.
  bool zero_start = false;
};

struct SummaryRow {
  std::string ansatz;
  std::size_t depth = 0;
  std::string strategy;
  std::string initial_state;
  double max_fidelity = 0.0;
  double best_energy = 0.0;
  std::size_t n_evals = 0;
  std::size_t n_params_per_layer = 0;
  std::size_t n_cnot_per_layer = 0;
};

struct RunResult {
  OptimizationTrace trace;
  SummaryRow summary;
};

inline Circuit build_for(const ProblemFixture& p, const RunSpec& spec) {
  if (spec.depth == 0) return Circuit(p.num_qubits());
  return build_ansatz(spec.ansatz, p.ansatz_model, spec.depth, spec.strategy);
}

/// Starting point: zeros, except short-QOCA draws uniformly from [-pi, pi).
inline std::vector<double> initial_parameters(const RunSpec& spec, std::size_t count) {
  std::vector<double> theta(count, 0.0);
  if (spec.ansatz == AnsatzKind::SQOCA && !spec.zero_start) {
    std::mt19937_64 rng(spec.optimizer.seed);
    std::uniform_real_distribution<double> u(-std::numbers::pi, std::numbers::pi);
    for (auto& t : theta) t = u(rng);
  }
  return theta;
}

/// One optimization. depth 0 evaluates the bare initial state.
inline RunResult run_vqe(const ProblemFixture& p, const RunSpec& spec) {
  spec.optimizer.validate();
  Circuit circuit = build_for(p, spec);
  const ResourceCount rc = count_resources(circuit);
  Statevector init = prepare_initial_state(spec.initial, p.num_qubits(), p.lattice);
  Objective obj(std::move(circuit), p.hamiltonian, std::move(init));
  TraceOptions topt{&p.ground, &p.occupancy, spec.record_every, spec.keep_params};

  RunResult r;
  if (obj.num_params() == 0) {
    const Statevector s = obj.prepare({});
    const double e = obj.energy_of(s);
    r.trace.n_evals = 1;
    r.trace.best_energy = e;
    r.trace.best_fidelity = r.trace.max_fidelity = fidelity(s, p.ground);
    r.trace.records.push_back({1, e, r.trace.max_fidelity, p.occupancy.expectation(s), {}});
  } else {
    r.trace = minimize(obj, spec.optimizer, initial_parameters(spec, obj.num_params()), topt);
  }
  r.summary = {std::string(to_string(spec.ansatz)), spec.depth, std::string(to_string(spec.strategy)),
               spec.initial.name(), r.trace.max_fidelity, r.trace.best_energy, r.trace.n_evals,
               rc.params_per_layer, rc.cnots_per_layer};
  return r;
}

}  // namespace qoca

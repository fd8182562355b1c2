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

// Parametrized circuits for the hardware-efficient, Hamiltonian-variational,
// Fourier-transformed, and drive-augmented ansatze, plus lowering of Pauli
// exponentials to CNOTs and single-qubit gates.

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qoca/fermion.hpp"
#include "qoca/pauli.hpp"
#include "qoca/statevector.hpp"

namespace qoca {

enum class GateKind { PauliExp, OneQubit, CNOT, DenseBlock };

/// One circuit element. A parametrized gate uses angle = scale * theta[slot];
/// a fixed gate uses `angle`. Several gates may share a slot.
struct Gate {
  GateKind kind = GateKind::PauliExp;
  PauliString pauli;                         // PauliExp: exp(i angle P)
  OneQubitGate one_qubit = OneQubitGate::H;  // OneQubit
  std::size_t q0 = 0;                        // OneQubit qubit, CNOT control, DenseBlock first qubit
  std::size_t q1 = 0;                        // CNOT target
  std::optional<std::size_t> slot;
  double scale = 1.0;
  double angle = 0.0;
  std::size_t block = 0;  // DenseBlock: index into Circuit::blocks()

  static Gate pauli_exp(PauliString p, std::size_t slot, double scale) {
    Gate g;
    g.kind = GateKind::PauliExp;
    g.pauli = std::move(p);
    g.slot = slot;
    g.scale = scale;
    return g;
  }
  static Gate fixed_pauli_exp(PauliString p, double angle) {
    Gate g;
    g.kind = GateKind::PauliExp;
    g.pauli = std::move(p);
    g.angle = angle;
    return g;
  }
  static Gate one(OneQubitGate which, std::size_t qubit, std::optional<std::size_t> slot = {},
                  double scale = 1.0, double angle = 0.0) {
    Gate g;
    g.kind = GateKind::OneQubit;
    g.one_qubit = which;
    g.q0 = qubit;
    g.slot = slot;
    g.scale = scale;
    g.angle = angle;
    return g;
  }
  static Gate cnot(std::size_t control, std::size_t target) {
    Gate g;
    g.kind = GateKind::CNOT;
    g.q0 = control;
    g.q1 = target;
    return g;
  }

  double bound_angle(std::span<const double> theta) const {
    return slot ? scale * theta[*slot] : angle;
  }
};

struct DenseBlock {
  std::string tag;
  Eigen::MatrixXcd matrix;
};

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(std::size_t num_qubits) : n_(num_qubits) {}

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t num_params() const noexcept { return num_params_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::vector<DenseBlock>& blocks() const noexcept { return blocks_; }
  std::size_t num_layers() const noexcept { return layer_starts_.size(); }
  bool empty() const noexcept { return gates_.empty(); }

  /// Gate index range [begin, end) of layer `k`.
  std::pair<std::size_t, std::size_t> layer_range(std::size_t k) const {
    const std::size_t b = layer_starts_.at(k);
    const std::size_t e = k + 1 < layer_starts_.size() ? layer_starts_[k + 1] : gates_.size();
    return {b, e};
  }

  void begin_layer() { layer_starts_.push_back(gates_.size()); }

  std::size_t new_slot() { return num_params_++; }
  void reserve_slots(std::size_t count) { num_params_ = std::max(num_params_, count); }

  Circuit& add(Gate g) {
    validate(g);
    if (g.slot) num_params_ = std::max(num_params_, *g.slot + 1);
    gates_.push_back(std::move(g));
    return *this;
  }

  /// Registers a dense unitary acting on qubits first..first+k-1.
  Circuit& add_dense(const std::string& tag, const Eigen::MatrixXcd& u, std::size_t first_qubit) {
    if (!Statevector::is_unitary(u)) throw std::invalid_argument("dense block '" + tag + "' is not unitary");
    std::size_t idx = blocks_.size();
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      if (blocks_[i].tag == tag) idx = i;
    }
    if (idx == blocks_.size()) blocks_.push_back({tag, u});
    Gate g;
    g.kind = GateKind::DenseBlock;
    g.q0 = first_qubit;
    g.block = idx;
    gates_.push_back(std::move(g));
    return *this;
  }

  void apply(Statevector& s, std::span<const double> theta) const {
    if (theta.size() != num_params_) {
      throw DimensionError("circuit expects " + std::to_string(num_params_) + " parameters, got " +
                           std::to_string(theta.size()));
    }
    if (s.num_qubits() != n_) throw DimensionError("circuit and state sizes differ");
    for (const Gate& g : gates_) apply_gate(s, g, theta);
  }

  static void apply_gate(Statevector& s, const Gate& g, std::span<const double> theta,
                         const std::vector<DenseBlock>* blocks = nullptr) {
    switch (g.kind) {
      case GateKind::PauliExp: s.apply_pauli_exponential(g.pauli, g.bound_angle(theta)); break;
      case GateKind::OneQubit: s.apply_one_qubit(g.one_qubit, g.q0, g.bound_angle(theta)); break;
      case GateKind::CNOT: s.apply_cnot(g.q0, g.q1); break;
      case GateKind::DenseBlock:
        if (!blocks) throw std::logic_error("dense block without its circuit");
        s.apply_dense_unitary((*blocks)[g.block].matrix, g.q0, false);
        break;
    }
  }

  /// Distinct parameter slots referenced in layer `k`.
  std::size_t params_in_layer(std::size_t k) const {
    auto [b, e] = layer_range(k);
    std::set<std::size_t> slots;
    for (std::size_t i = b; i < e; ++i) {
      if (gates_[i].slot) slots.insert(*gates_[i].slot);
    }
    return slots.size();
  }

  /// Text dump, one gate per line.
  void dump(std::ostream& os) const {
    for (const Gate& g : gates_) {
      switch (g.kind) {
        case GateKind::PauliExp:
          os << "PAULIEXP " << g.pauli.str();
          if (g.slot) os << " slot=" << *g.slot << " scale=" << g.scale;
          else os << " angle=" << g.angle;
          break;
        case GateKind::OneQubit:
          os << "1Q " << to_string(g.one_qubit) << " " << g.q0;
          if (g.slot) os << " slot=" << *g.slot << " scale=" << g.scale;
          else if (is_rotation(g.one_qubit)) os << " angle=" << g.angle;
          break;
        case GateKind::CNOT: os << "CNOT " << g.q0 << " " << g.q1; break;
        case GateKind::DenseBlock: os << "DENSE " << blocks_[g.block].tag; break;
      }
      os << "\n";
    }
  }

  std::string dump() const {
    std::ostringstream os;
    dump(os);
    return os.str();
  }

 private:
  void validate(const Gate& g) const {
    auto check = [&](std::size_t q) {
      if (q == 0 || q > n_) throw DimensionError("gate qubit " + std::to_string(q) + " out of range");
    };
    switch (g.kind) {
      case GateKind::PauliExp:
        if (g.pauli.num_qubits() != n_) throw DimensionError("Pauli exponential size mismatch");
        break;
      case GateKind::OneQubit: check(g.q0); break;
      case GateKind::CNOT:
        check(g.q0);
        check(g.q1);
        if (g.q0 == g.q1) throw DimensionError("CNOT control equals target");
        break;
      case GateKind::DenseBlock: break;
    }
  }

  friend void run_circuit(const Circuit&, Statevector&, std::span<const double>);

  std::size_t n_ = 0;
  std::size_t num_params_ = 0;
  std::vector<Gate> gates_;
  std::vector<DenseBlock> blocks_;
  std::vector<std::size_t> layer_starts_;
};

/// Executes the bound circuit on `s` in place.
inline void run_circuit(const Circuit& c, Statevector& s, std::span<const double> theta) {
  if (theta.size() != c.num_params_) {
    throw DimensionError("circuit expects " + std::to_string(c.num_params_) + " parameters, got " +
                         std::to_string(theta.size()));
  }
  if (s.num_qubits() != c.n_) throw DimensionError("circuit and state sizes differ");
  for (const Gate& g : c.gates_) Circuit::apply_gate(s, g, theta, &c.blocks_);
}

enum class Strategy { Full, Scalable };

inline std::string_view to_string(Strategy s) { return s == Strategy::Full ? "full" : "scalable"; }

enum class AnsatzKind { HEA, VHA, FTVHA, QOCA, SQOCA };

inline std::string_view to_string(AnsatzKind k) {
  switch (k) {
    case AnsatzKind::HEA: return "hea";
    case AnsatzKind::VHA: return "vha";
    case AnsatzKind::FTVHA: return "ftvha";
    case AnsatzKind::QOCA: return "qoca";
    case AnsatzKind::SQOCA: return "sqoca";
  }
  return "?";
}

inline AnsatzKind parse_ansatz(std::string_view s) {
  if (s == "hea") return AnsatzKind::HEA;
  if (s == "vha") return AnsatzKind::VHA;
  if (s == "ftvha" || s == "ft-vha") return AnsatzKind::FTVHA;
  if (s == "qoca") return AnsatzKind::QOCA;
  if (s == "sqoca" || s == "short-qoca") return AnsatzKind::SQOCA;
  throw ConfigError("unknown ansatz '" + std::string(s) + "'");
}

inline Strategy parse_strategy(std::string_view s) {
  if (s == "full") return Strategy::Full;
  if (s == "scalable") return Strategy::Scalable;
  throw ConfigError("unknown strategy '" + std::string(s) + "'");
}

/// Per layer: RY then RZ on every qubit (own parameters), then a CNOT ladder
/// k -> k+1.
inline Circuit build_hea(std::size_t num_qubits, std::size_t depth) {
  Circuit c(num_qubits);
  for (std::size_t d = 0; d < depth; ++d) {
    c.begin_layer();
    for (std::size_t q = 1; q <= num_qubits; ++q) {
      c.add(Gate::one(OneQubitGate::RY, q, c.new_slot()));
      c.add(Gate::one(OneQubitGate::RZ, q, c.new_slot()));
    }
    for (std::size_t q = 1; q < num_qubits; ++q) c.add(Gate::cnot(q, q + 1));
  }
  return c;
}

namespace detail {

/// exp(i theta H_term) as commuting Pauli exponentials (identity part dropped
/// as a global phase). The JW images of single bonds and sites commute
/// term-wise, so the product is exact.
inline void add_term_exponentials(Circuit& c, const FermionSum& op, std::size_t slot) {
  const PauliSum image = jw_transform(op, c.num_qubits()).without_identity();
  for (const auto& [p, coeff] : image) c.add(Gate::pauli_exp(p, slot, coeff.real()));
}

inline void add_hopping_layer(Circuit& c, const HubbardModel& m, Strategy s) {
  for (TermGroup g : m.groups()) {
    if (g == TermGroup::Onsite) continue;
    std::optional<std::size_t> shared;
    if (s == Strategy::Scalable) shared = c.new_slot();
    for (const HubbardTerm* t : m.group_terms(g)) {
      add_term_exponentials(c, t->op, shared ? *shared : c.new_slot());
    }
  }
}

inline void add_onsite_layer(Circuit& c, const HubbardModel& m, Strategy s) {
  std::optional<std::size_t> shared;
  if (s == Strategy::Scalable) shared = c.new_slot();
  for (const HubbardTerm* t : m.group_terms(TermGroup::Onsite)) {
    add_term_exponentials(c, t->op, shared ? *shared : c.new_slot());
  }
}

/// Trotterized X and Y drives on both spin registers; slots are tied across
/// the registers. Full: one slot per (site, kind); Scalable: one per kind.
inline void add_drive_layer(Circuit& c, std::size_t L, Strategy s) {
  const std::size_t count = s == Strategy::Full ? 2 * L : 2;
  std::vector<std::size_t> slots(count);
  for (auto& x : slots) x = c.new_slot();
  for (SpinRegister reg : {SpinRegister::Up, SpinRegister::Down}) {
    const auto xs = drive_strings({DriveKind::X, reg}, L, c.num_qubits());
    const auto ys = drive_strings({DriveKind::Y, reg}, L, c.num_qubits());
    for (std::size_t j = 0; j < L; ++j) {
      const std::size_t sx = s == Strategy::Full ? slots[2 * j] : slots[0];
      const std::size_t sy = s == Strategy::Full ? slots[2 * j + 1] : slots[1];
      c.add(Gate::pauli_exp(xs[j], sx, 1.0));
      c.add(Gate::pauli_exp(ys[j], sy, 1.0));
    }
  }
}

}  // namespace detail

/// Per layer: every hopping bond (spin-tied), group by group, then every
/// on-site term.
inline Circuit build_vha(const HubbardModel& m, std::size_t depth, Strategy s = Strategy::Full) {
  Circuit c(m.num_qubits());
  for (std::size_t d = 0; d < depth; ++d) {
    c.begin_layer();
    detail::add_hopping_layer(c, m, s);
    detail::add_onsite_layer(c, m, s);
  }
  return c;
}

/// VHA layer followed by the drive block on both spin registers.
inline Circuit build_qoca(const HubbardModel& m, std::size_t depth, Strategy s = Strategy::Full) {
  Circuit c(m.num_qubits());
  for (std::size_t d = 0; d < depth; ++d) {
    c.begin_layer();
    detail::add_hopping_layer(c, m, s);
    detail::add_onsite_layer(c, m, s);
    detail::add_drive_layer(c, m.lattice.num_sites(), s);
  }
  return c;
}

/// QOCA without the hopping part: on-site terms then drives.
inline Circuit build_sqoca(const HubbardModel& m, std::size_t depth, Strategy s = Strategy::Full) {
  Circuit c(m.num_qubits());
  for (std::size_t d = 0; d < depth; ++d) {
    c.begin_layer();
    detail::add_onsite_layer(c, m, s);
    detail::add_drive_layer(c, m.lattice.num_sites(), s);
  }
  return c;
}

/// Per layer: FT on each spin register, diagonal momentum-space hopping
/// exponentials (one slot per momentum mode, spin-tied), FT^dagger, then the
/// on-site exponentials. Needs a periodic chain.
inline Circuit build_ftvha(const HubbardModel& m, std::size_t depth, Strategy s = Strategy::Full) {
  const LatticeSpec& lat = m.lattice;
  if (!lat.is_periodic_chain() || lat.num_sites() < 3) {
    throw ConfigError("FT-VHA needs a periodic chain of at least 3 sites, got " + lat.name());
  }
  const std::size_t L = lat.num_sites();
  const std::size_t n = lat.num_orbitals();
  const Eigen::MatrixXcd ft = fourier_unitary(L);
  const Eigen::MatrixXcd ft_dag = ft.adjoint();
  const std::vector<double> eps = chain_dispersion(L, lat.t);
  Circuit c(n);
  for (std::size_t d = 0; d < depth; ++d) {
    c.begin_layer();
    c.add_dense("FT", ft, 1);
    c.add_dense("FT", ft, L + 1);
    std::optional<std::size_t> shared;
    if (s == Strategy::Scalable) shared = c.new_slot();
    for (std::size_t k = 0; k < L; ++k) {
      const std::size_t slot = shared ? *shared : c.new_slot();
      // eps_k n_k = eps_k (I - Z_k)/2; the identity part is a global phase.
      for (std::size_t offset : {std::size_t{0}, L}) {
        c.add(Gate::pauli_exp(PauliString::single(n, offset + k + 1, 'Z'), slot, -eps[k] / 2.0));
      }
    }
    c.add_dense("FTdag", ft_dag, 1);
    c.add_dense("FTdag", ft_dag, L + 1);
    detail::add_onsite_layer(c, m, s);
  }
  return c;
}

inline Circuit build_ansatz(AnsatzKind kind, const HubbardModel& m, std::size_t depth,
                            Strategy s = Strategy::Full) {
  switch (kind) {
    case AnsatzKind::HEA: return build_hea(m.num_qubits(), depth);
    case AnsatzKind::VHA: return build_vha(m, depth, s);
    case AnsatzKind::FTVHA: return build_ftvha(m, depth, s);
    case AnsatzKind::QOCA: return build_qoca(m, depth, s);
    case AnsatzKind::SQOCA: return build_sqoca(m, depth, s);
  }
  throw ConfigError("unknown ansatz");
}

struct CompileReport {
  Circuit circuit;
  std::vector<std::string> unlowered;  // tags of dense blocks kept as-is
  bool complete() const noexcept { return unlowered.empty(); }
};

namespace detail {

inline void lower_pauli_exp(const Gate& g, std::vector<Gate>& out) {
  std::vector<std::size_t> active;
  for (std::size_t q = 1; q <= g.pauli.num_qubits(); ++q) {
    if (g.pauli.letter(q) != 'I') active.push_back(q);
  }
  if (active.empty()) return;  // global phase
  auto basis = [&](std::size_t q) -> std::optional<OneQubitGate> {
    switch (g.pauli.letter(q)) {
      case 'X': return OneQubitGate::H;
      case 'Y': return OneQubitGate::G;
      default: return std::nullopt;
    }
  };
  for (std::size_t q : active) {
    if (auto b = basis(q)) out.push_back(Gate::one(*b, q));
  }
  for (std::size_t i = 0; i + 1 < active.size(); ++i) out.push_back(Gate::cnot(active[i], active[i + 1]));
  // exp(i a Z) = RZ(-2a)
  Gate rz = Gate::one(OneQubitGate::RZ, active.back());
  if (g.slot) {
    rz.slot = g.slot;
    rz.scale = -2.0 * g.scale;
  } else {
    rz.angle = -2.0 * g.angle;
  }
  out.push_back(rz);
  for (std::size_t i = active.size() - 1; i > 0; --i) out.push_back(Gate::cnot(active[i - 1], active[i]));
  for (std::size_t q : active) {
    if (auto b = basis(q)) out.push_back(Gate::one(*b, q));
  }
}

inline bool is_fixed_involution(const Gate& g) {
  if (g.kind == GateKind::CNOT) return true;
  return g.kind == GateKind::OneQubit && !g.slot &&
         (g.one_qubit == OneQubitGate::H || g.one_qubit == OneQubitGate::G ||
          g.one_qubit == OneQubitGate::X);
}

inline bool same_involution(const Gate& a, const Gate& b) {
  if (a.kind != b.kind || !is_fixed_involution(a) || !is_fixed_involution(b)) return false;
  if (a.kind == GateKind::CNOT) return a.q0 == b.q0 && a.q1 == b.q1;
  return a.one_qubit == b.one_qubit && a.q0 == b.q0;
}

inline std::vector<std::size_t> gate_qubits(const Gate& g, const std::vector<DenseBlock>& blocks) {
  switch (g.kind) {
    case GateKind::OneQubit: return {g.q0};
    case GateKind::CNOT: return {g.q0, g.q1};
    case GateKind::PauliExp: {
      std::vector<std::size_t> qs;
      for (std::size_t q = 1; q <= g.pauli.num_qubits(); ++q) {
        if (g.pauli.letter(q) != 'I') qs.push_back(q);
      }
      return qs;
    }
    case GateKind::DenseBlock: {
      const auto k = static_cast<std::size_t>(std::countr_zero(
          static_cast<std::uint64_t>(blocks[g.block].matrix.rows())));
      std::vector<std::size_t> qs;
      for (std::size_t i = 0; i < k; ++i) qs.push_back(g.q0 + i);
      return qs;
    }
  }
  return {};
}

/// Removes pairs of identical self-inverse gates (CNOT, H, G, X) that meet
/// with nothing acting on their qubits in between. Cascades are handled.
inline std::vector<Gate> cancel_adjacent_involutions(const std::vector<Gate>& in, std::size_t n,
                                                     const std::vector<DenseBlock>& blocks) {
  std::vector<Gate> out;
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> last(n + 1);
  for (const Gate& g : in) {
    const auto qs = gate_qubits(g, blocks);
    if (is_fixed_involution(g) && !last[qs.front()].empty()) {
      const std::size_t top = last[qs.front()].back();
      bool cancels = same_involution(out[top], g);
      for (std::size_t q : qs) cancels = cancels && !last[q].empty() && last[q].back() == top;
      if (cancels) {
        alive[top] = false;
        for (std::size_t q : qs) last[q].pop_back();
        continue;
      }
    }
    for (std::size_t q : qs) last[q].push_back(out.size());
    out.push_back(g);
    alive.push_back(true);
  }
  std::vector<Gate> kept;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (alive[i]) kept.push_back(std::move(out[i]));
  }
  return kept;
}

}  // namespace detail

/// Lowers every Pauli exponential to basis changes (H for X, G for Y), a CNOT
/// ladder onto the last active qubit, RZ, and the mirror image; then cancels
/// adjacent inverse pairs within each layer. Dense blocks are kept and
/// reported as unlowered.
inline CompileReport compile_to_cnot(const Circuit& c, bool cancel_pairs = true) {
  CompileReport rep{Circuit(c.num_qubits()), {}};
  std::set<std::string> seen;
  auto lower_range = [&](std::size_t b, std::size_t e) {
    std::vector<Gate> lowered;
    for (std::size_t i = b; i < e; ++i) {
      const Gate& g = c.gates()[i];
      if (g.kind == GateKind::PauliExp) {
        detail::lower_pauli_exp(g, lowered);
      } else {
        if (g.kind == GateKind::DenseBlock && seen.insert(c.blocks()[g.block].tag).second) {
          rep.unlowered.push_back(c.blocks()[g.block].tag);
        }
        lowered.push_back(g);
      }
    }
    if (cancel_pairs) lowered = detail::cancel_adjacent_involutions(lowered, c.num_qubits(), c.blocks());
    for (auto& g : lowered) {
      if (g.kind == GateKind::DenseBlock) {
        const DenseBlock& blk = c.blocks()[g.block];
        rep.circuit.add_dense(blk.tag, blk.matrix, g.q0);
      } else {
        rep.circuit.add(std::move(g));
      }
    }
  };
  if (c.num_layers() == 0) {
    lower_range(0, c.gates().size());
  } else {
    for (std::size_t k = 0; k < c.num_layers(); ++k) {
      rep.circuit.begin_layer();
      auto [b, e] = c.layer_range(k);
      lower_range(b, e);
    }
  }
  rep.circuit.reserve_slots(c.num_params());
  return rep;
}

struct ResourceCount {
  std::size_t params_per_layer = 0;
  std::size_t cnots_per_layer = 0;
  std::vector<std::string> unlowered;
};

/// Parameters and CNOTs in the first layer after lowering (all layers of the
/// builders above are identical). All-to-all connectivity is assumed.
inline ResourceCount count_resources(const Circuit& c) {
  ResourceCount r;
  if (c.empty() || c.num_layers() == 0) return r;
  const CompileReport rep = compile_to_cnot(c);
  r.params_per_layer = c.params_in_layer(0);
  auto [b, e] = rep.circuit.layer_range(0);
  for (std::size_t i = b; i < e; ++i) {
    if (rep.circuit.gates()[i].kind == GateKind::CNOT) ++r.cnots_per_layer;
  }
  r.unlowered = rep.unlowered;
  return r;
}

}  // namespace qoca

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

// Second-quantized operators, the Jordan-Wigner map, and Fermi-Hubbard
// model construction.
//
// Spin orbitals are numbered 1..N. For a lattice of L sites (row-major site
// order) orbitals 1..L are the spin-up sites and L+1..2L the spin-down sites.
// Orbital p is encoded on qubit p.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qoca/pauli.hpp"
#include "qoca/statevector.hpp"

namespace qoca {

struct Ladder {
  std::size_t orbital;  // 1-based
  bool dagger;
  friend bool operator==(const Ladder&, const Ladder&) = default;
};

/// Product of ladder operators, kept in the order written.
struct FermionTerm {
  std::vector<Ladder> factors;
  cplx coefficient{1.0};
};

class FermionSum {
 public:
  explicit FermionSum(std::size_t num_orbitals = 0) : n_(num_orbitals) {}

  std::size_t num_orbitals() const noexcept { return n_; }
  const std::vector<FermionTerm>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  FermionSum& add(FermionTerm t) {
    for (const Ladder& f : t.factors) check_orbital(f.orbital);
    terms_.push_back(std::move(t));
    return *this;
  }
  FermionSum& add(std::vector<Ladder> factors, cplx coeff) {
    return add(FermionTerm{std::move(factors), coeff});
  }
  FermionSum& operator+=(const FermionSum& o) {
    if (o.n_ != n_) throw DimensionError("fermion sums on different registers");
    for (const auto& t : o.terms_) terms_.push_back(t);
    return *this;
  }
  friend FermionSum operator+(FermionSum a, const FermionSum& b) { return a += b; }

  FermionSum adjoint() const {
    FermionSum out(n_);
    for (const auto& t : terms_) {
      FermionTerm a{{t.factors.rbegin(), t.factors.rend()}, std::conj(t.coefficient)};
      for (Ladder& f : a.factors) f.dagger = !f.dagger;
      out.terms_.push_back(std::move(a));
    }
    return out;
  }

  /// a+_p a_p
  static FermionSum number(std::size_t n, std::size_t p, cplx coeff = 1.0) {
    FermionSum s(n);
    return s.add({{p, true}, {p, false}}, coeff);
  }
  /// coeff (a+_p a_q + a+_q a_p)
  static FermionSum hopping(std::size_t n, std::size_t p, std::size_t q, cplx coeff = 1.0) {
    FermionSum s(n);
    s.add({{p, true}, {q, false}}, coeff);
    return s.add({{q, true}, {p, false}}, coeff);
  }

 private:
  void check_orbital(std::size_t p) const {
    if (p == 0 || p > n_) {
      throw DimensionError("orbital index " + std::to_string(p) + " outside 1.." +
                           std::to_string(n_));
    }
  }

  std::size_t n_;
  std::vector<FermionTerm> terms_;
};

/// JW image of a_p (dagger = false) or a+_p: (X_p +/- i Y_p)/2 with Z on all
/// qubits l < p. Annihilation is sigma = |0><1| = (X + iY)/2.
inline PauliSum jw_ladder(std::size_t p, bool dagger, std::size_t n) {
  if (p == 0 || p > n) {
    throw DimensionError("orbital index " + std::to_string(p) + " outside 1.." + std::to_string(n));
  }
  PauliString xs(n), ys(n);
  for (std::size_t l = 1; l < p; ++l) {
    xs.set(l, 'Z');
    ys.set(l, 'Z');
  }
  xs.set(p, 'X');
  ys.set(p, 'Y');
  PauliSum out(n);
  out.add_term(xs, 0.5);
  out.add_term(ys, cplx(0.0, dagger ? -0.5 : 0.5));
  return out;
}

inline PauliSum jw_transform(const FermionSum& f, std::size_t n) {
  if (f.num_orbitals() > n) throw DimensionError("fermion sum larger than the qubit register");
  PauliSum out(n);
  for (const FermionTerm& t : f.terms()) {
    PauliSum prod = PauliSum::identity(n, t.coefficient);
    for (const Ladder& l : t.factors) prod = prod * jw_ladder(l.orbital, l.dagger, n);
    out += prod;
  }
  return out.simplify();
}

inline PauliSum jw_transform(const FermionSum& f) { return jw_transform(f, f.num_orbitals()); }

/// How sites are numbered. Snake order reverses every odd row, which makes
/// the 2x2 plaquette coincide with the periodic 1x4 chain.
enum class SiteOrder { RowMajor, Snake };

/// Rectangular Fermi-Hubbard lattice.
struct LatticeSpec {
  std::size_t rows = 1;
  std::size_t cols = 1;
  bool periodic = false;
  double t = 1.0;
  double U = 4.0;
  double mu = 2.0;
  SiteOrder order = SiteOrder::RowMajor;

  std::size_t num_sites() const noexcept { return rows * cols; }
  std::size_t num_orbitals() const noexcept { return 2 * num_sites(); }
  bool half_filling() const noexcept { return mu == U / 2.0; }
  std::size_t site(std::size_t r, std::size_t c) const noexcept {
    return r * cols + (order == SiteOrder::Snake && r % 2 ? cols - 1 - c : c);
  }
  /// 1-based orbital of 0-based `site` with spin 0 (up) or 1 (down).
  std::size_t orbital(std::size_t site, int spin) const noexcept {
    return site + 1 + (spin == 0 ? 0 : num_sites());
  }
  /// True for a periodic 1xL or Lx1 ring.
  bool is_periodic_chain() const noexcept { return periodic && (rows == 1 || cols == 1); }

  void validate() const {
    if (rows == 0 || cols == 0) throw ConfigError("lattice has zero sites");
    if (num_orbitals() > kMaxQubits) throw ConfigError("lattice too large");
  }

  std::string name() const {
    return std::to_string(rows) + "x" + std::to_string(cols) + (periodic ? "-periodic" : "-open") +
           (order == SiteOrder::Snake ? "-snake" : "");
  }

  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

enum class TermGroup { HopHorizontalEven, HopHorizontalOdd, HopVerticalEven, HopVerticalOdd, Onsite };

inline std::string_view to_string(TermGroup g) {
  switch (g) {
    case TermGroup::HopHorizontalEven: return "hop_h_even";
    case TermGroup::HopHorizontalOdd: return "hop_h_odd";
    case TermGroup::HopVerticalEven: return "hop_v_even";
    case TermGroup::HopVerticalOdd: return "hop_v_odd";
    case TermGroup::Onsite: return "onsite";
  }
  return "?";
}

struct Bond {
  std::size_t i;  // 0-based sites
  std::size_t j;
  TermGroup group;
};

/// Nearest-neighbour bonds, grouped by direction and by the parity of the
/// lower coordinate along that direction. A periodic dimension of length 2
/// adds no second bond.
inline std::vector<Bond> lattice_bonds(const LatticeSpec& lat) {
  lat.validate();
  std::vector<Bond> bonds;
  for (std::size_t r = 0; r < lat.rows; ++r) {
    for (std::size_t c = 0; c + 1 < lat.cols; ++c) {
      bonds.push_back({lat.site(r, c), lat.site(r, c + 1),
                       c % 2 ? TermGroup::HopHorizontalOdd : TermGroup::HopHorizontalEven});
    }
    if (lat.periodic && lat.cols > 2) {
      const std::size_t c = lat.cols - 1;
      bonds.push_back({lat.site(r, c), lat.site(r, 0),
                       c % 2 ? TermGroup::HopHorizontalOdd : TermGroup::HopHorizontalEven});
    }
  }
  for (std::size_t c = 0; c < lat.cols; ++c) {
    for (std::size_t r = 0; r + 1 < lat.rows; ++r) {
      bonds.push_back({lat.site(r, c), lat.site(r + 1, c),
                       r % 2 ? TermGroup::HopVerticalOdd : TermGroup::HopVerticalEven});
    }
    if (lat.periodic && lat.rows > 2) {
      const std::size_t r = lat.rows - 1;
      bonds.push_back({lat.site(r, c), lat.site(0, c),
                       r % 2 ? TermGroup::HopVerticalOdd : TermGroup::HopVerticalEven});
    }
  }
  std::stable_sort(bonds.begin(), bonds.end(),
                   [](const Bond& a, const Bond& b) { return a.group < b.group; });
  return bonds;
}

/// One independently parametrizable piece of the Hubbard Hamiltonian: a bond
/// (both spins) or the on-site part of a site.
struct HubbardTerm {
  TermGroup group;
  std::size_t site_a;
  std::size_t site_b;  // equals site_a for on-site terms
  FermionSum op;
};

struct HubbardModel {
  LatticeSpec lattice;
  std::vector<HubbardTerm> terms;  // hopping groups in enum order, then on-site

  std::size_t num_qubits() const noexcept { return lattice.num_orbitals(); }

  FermionSum total() const {
    FermionSum s(num_qubits());
    for (const auto& t : terms) s += t.op;
    return s;
  }
  PauliSum qubit_hamiltonian() const { return jw_transform(total(), num_qubits()); }

  /// Groups with at least one term, in Trotter order.
  std::vector<TermGroup> groups() const {
    std::vector<TermGroup> g;
    for (const auto& t : terms) {
      if (g.empty() || g.back() != t.group) g.push_back(t.group);
    }
    return g;
  }
  std::vector<const HubbardTerm*> group_terms(TermGroup g) const {
    std::vector<const HubbardTerm*> out;
    for (const auto& t : terms) {
      if (t.group == g) out.push_back(&t);
    }
    return out;
  }
};

/// -t sum_<ij>,s (a+_is a_js + h.c.) + U sum_i n_iu n_id - mu sum_is n_is
inline HubbardModel build_hubbard(const LatticeSpec& lat) {
  lat.validate();
  const std::size_t n = lat.num_orbitals();
  HubbardModel m{lat, {}};
  for (const Bond& b : lattice_bonds(lat)) {
    FermionSum op(n);
    for (int s = 0; s < 2; ++s) op += FermionSum::hopping(n, lat.orbital(b.i, s), lat.orbital(b.j, s), -lat.t);
    m.terms.push_back({b.group, b.i, b.j, std::move(op)});
  }
  for (std::size_t i = 0; i < lat.num_sites(); ++i) {
    const std::size_t up = lat.orbital(i, 0), dn = lat.orbital(i, 1);
    FermionSum op(n);
    op.add({{up, true}, {up, false}, {dn, true}, {dn, false}}, lat.U);
    op += FermionSum::number(n, up, -lat.mu);
    op += FermionSum::number(n, dn, -lat.mu);
    m.terms.push_back({TermGroup::Onsite, i, i, std::move(op)});
  }
  return m;
}

/// Total particle number sum_p n_p on `n` orbitals.
inline FermionSum total_number(std::size_t n) {
  FermionSum s(n);
  for (std::size_t p = 1; p <= n; ++p) s += FermionSum::number(n, p);
  return s;
}

enum class DriveKind { X, Y };
enum class SpinRegister { Up, Down };

struct DriveSpec {
  DriveKind kind;
  SpinRegister reg;
};

/// JW image of sum_j (a+_j + a_j) (X drive) or sum_j i(a+_j - a_j) (Y drive)
/// on one spin register. The Z string starts at the first qubit of that register.
inline std::vector<PauliString> drive_strings(const DriveSpec& spec, std::size_t L, std::size_t n) {
  const std::size_t offset = spec.reg == SpinRegister::Up ? 0 : L;
  if (L == 0 || offset + L > n) throw DimensionError("drive register block exceeds the register");
  std::vector<PauliString> out;
  for (std::size_t j = 1; j <= L; ++j) {
    PauliString p(n);
    for (std::size_t l = 1; l < j; ++l) p.set(offset + l, 'Z');
    p.set(offset + j, spec.kind == DriveKind::X ? 'X' : 'Y');
    out.push_back(p);
  }
  return out;
}

inline PauliSum build_drive(const DriveSpec& spec, std::size_t L, std::size_t n) {
  PauliSum s(n);
  for (const auto& p : drive_strings(spec, L, n)) s.add_term(p, 1.0);
  return s;
}

namespace detail {

/// a+_p applied to a Fock-space vector on L modes, with the JW sign.
inline Eigen::VectorXcd apply_creation(const Eigen::VectorXcd& v, std::size_t p, std::size_t L) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  const std::uint64_t b = std::uint64_t{1} << (L - p);
  const std::uint64_t below = ~((b << 1) - 1) & ((std::uint64_t{1} << L) - 1);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    if (idx & b || v[i] == cplx{}) continue;
    const double sign = (std::popcount(idx & below) & 1) ? -1.0 : 1.0;
    out[static_cast<Eigen::Index>(idx | b)] += sign * v[i];
  }
  return out;
}

}  // namespace detail

/// Fermionic Fourier transform FT on L periodic-chain modes, as a dense
/// 2^L x 2^L unitary with FT T FT^dagger diagonal for the chain hopping T.
///
/// Column n of FT^dagger is c+_{k1} c+_{k2} ... |vac> for the momenta k
/// occupied in n, where c+_k = L^{-1/2} sum_j exp(-2 pi i k j / L) a+_j.
inline Eigen::MatrixXcd fourier_unitary(std::size_t L, std::size_t cap = kDefaultDenseCap) {
  if (L == 0) throw DimensionError("fourier_unitary: need at least one mode");
  require_dense_cap(L, cap);
  const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << L);
  const double norm = 1.0 / std::sqrt(static_cast<double>(L));
  Eigen::MatrixXcd ft_dag(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[0] = 1.0;
    // Rightmost creation operator acts first: highest momentum first.
    for (std::size_t k = L; k >= 1; --k) {
      if (!((static_cast<std::uint64_t>(col) >> (L - k)) & 1)) continue;
      Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
      for (std::size_t j = 1; j <= L; ++j) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>((k - 1) * (j - 1)) /
                           static_cast<double>(L);
        acc += norm * std::polar(1.0, ang) * detail::apply_creation(v, j, L);
      }
      v = acc;
    }
    ft_dag.col(col) = v;
  }
  return ft_dag.adjoint();
}

/// Single-particle energies -2t cos(2 pi k / L), k = 0..L-1.
inline std::vector<double> chain_dispersion(std::size_t L, double t) {
  std::vector<double> e(L);
  for (std::size_t k = 0; k < L; ++k) {
    e[k] = -2.0 * t * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(L));
  }
  return e;
}

enum class InitialStateKind { PlusAll, OmegaT1, OmegaT2, OmegaTSuperposition, Computational, BondSinglets };

struct InitialState {
  InitialStateKind kind = InitialStateKind::PlusAll;
  std::string bits;  // Computational only, qubit 1 first

  static InitialState plus_all() { return {InitialStateKind::PlusAll, {}}; }
  static InitialState computational(std::string b) { return {InitialStateKind::Computational, std::move(b)}; }

  std::string name() const {
    switch (kind) {
      case InitialStateKind::PlusAll: return "plus_all";
      case InitialStateKind::OmegaT1: return "omega_T1";
      case InitialStateKind::OmegaT2: return "omega_T2";
      case InitialStateKind::OmegaTSuperposition: return "omega_T";
      case InitialStateKind::Computational: return "bits:" + bits;
      case InitialStateKind::BondSinglets: return "bond_singlets";
    }
    return "?";
  }
};

inline InitialState parse_initial_state(std::string_view s) {
  if (s == "plus_all" || s == "plus") return {InitialStateKind::PlusAll, {}};
  if (s == "omega_T1") return {InitialStateKind::OmegaT1, {}};
  if (s == "omega_T2") return {InitialStateKind::OmegaT2, {}};
  if (s == "omega_T" || s == "omega_T_superposition") return {InitialStateKind::OmegaTSuperposition, {}};
  if (s == "bond_singlets") return {InitialStateKind::BondSinglets, {}};
  if (s.starts_with("bits:")) return InitialState::computational(std::string(s.substr(5)));
  throw ConfigError("unknown initial state '" + std::string(s) + "'");
}

/// Reference states. The omega_* states are the selected non-interacting
/// ground states of the four-site ring and need that lattice.
inline Statevector prepare_initial_state(const InitialState& init, std::size_t num_qubits,
                                         const std::optional<LatticeSpec>& lattice = std::nullopt) {
  switch (init.kind) {
    case InitialStateKind::PlusAll: {
      Statevector s(num_qubits);
      for (std::size_t q = 1; q <= num_qubits; ++q) s.apply_one_qubit(OneQubitGate::H, q);
      return s;
    }
    case InitialStateKind::Computational: {
      if (init.bits.size() != num_qubits) {
        throw ConfigError("initial bit string has " + std::to_string(init.bits.size()) +
                          " bits, register has " + std::to_string(num_qubits));
      }
      Statevector s(num_qubits);
      for (std::size_t q = 1; q <= num_qubits; ++q) {
        if (init.bits[q - 1] == '1') s.apply_one_qubit(OneQubitGate::X, q);
        else if (init.bits[q - 1] != '0') throw ConfigError("initial bit string must be 0/1");
      }
      return s;
    }
    case InitialStateKind::BondSinglets: {
      // Spin singlets (a+_{i up} a+_{j dn} - a+_{i dn} a+_{j up})/sqrt2 on sites (1,2), (3,4), ...
      if (num_qubits % 4 != 0) throw ConfigError("bond_singlets needs an even number of sites");
      const std::size_t L = num_qubits / 2;
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << num_qubits));
      v[0] = 1.0;
      for (std::size_t i = 1; i < L; i += 2) {
        const std::size_t j = i + 1;
        auto pair = [&](std::size_t a, std::size_t b) {
          return detail::apply_creation(detail::apply_creation(v, b, num_qubits), a, num_qubits);
        };
        v = (pair(i, L + j) - pair(L + i, j)) / std::numbers::sqrt2;
      }
      return Statevector::from_amplitudes(std::vector<cplx>(v.data(), v.data() + v.size()));
    }
    default: break;
  }
  if (!lattice || lattice->num_sites() != 4 || !lattice->is_periodic_chain() ||
      num_qubits != 8) {
    throw ConfigError("state '" + init.name() + "' requires the periodic 1x4 chain");
  }
  const Eigen::MatrixXcd ft_dag = fourier_unitary(4).adjoint();
  auto omega = [&](std::string_view momenta) {
    Statevector s = Statevector::from_bits(std::string(momenta) + std::string(momenta));
    s.apply_dense_unitary(ft_dag, 1, false).apply_dense_unitary(ft_dag, 5, false);
    return s;
  };
  if (init.kind == InitialStateKind::OmegaT1) return omega("1100");
  if (init.kind == InitialStateKind::OmegaT2) return omega("1001");
  const Statevector a = omega("1100");
  const Statevector b = omega("1001");
  std::vector<cplx> amps(a.dimension());
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] = (a[i] - b[i]) / std::numbers::sqrt2;
  return Statevector::from_amplitudes(std::move(amps));
}

}  // namespace qoca

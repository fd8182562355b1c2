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

// Exact complex statevector with in-place gate application.
//
// Basis index bit (n - q) holds the occupation of qubit q, so qubit 1 is the
// most significant bit. Gates never materialize full-register matrices.

#include <Eigen/Dense>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qoca/pauli.hpp"

namespace qoca {

enum class OneQubitGate { RX, RY, RZ, H, G, X };

inline std::string_view to_string(OneQubitGate g) {
  switch (g) {
    case OneQubitGate::RX: return "RX";
    case OneQubitGate::RY: return "RY";
    case OneQubitGate::RZ: return "RZ";
    case OneQubitGate::H: return "H";
    case OneQubitGate::G: return "G";
    case OneQubitGate::X: return "X";
  }
  return "?";
}

inline bool is_rotation(OneQubitGate g) {
  return g == OneQubitGate::RX || g == OneQubitGate::RY || g == OneQubitGate::RZ;
}

/// 2x2 matrix of a single-qubit gate; R_a(angle) = exp(-i angle sigma_a / 2).
inline Eigen::Matrix2cd one_qubit_matrix(OneQubitGate g, double angle = 0.0) {
  const double c = std::cos(angle / 2.0);
  const double s = std::sin(angle / 2.0);
  const cplx I(0.0, 1.0);
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd m;
  switch (g) {
    case OneQubitGate::RX: m << c, -I * s, -I * s, c; break;
    case OneQubitGate::RY: m << c, -s, s, c; break;
    case OneQubitGate::RZ: m << std::exp(-I * (angle / 2.0)), 0.0, 0.0, std::exp(I * (angle / 2.0)); break;
    case OneQubitGate::H: m << r, r, r, -r; break;
    // (Y + Z) / sqrt(2): Hermitian, self-inverse, maps Z to Y under conjugation.
    case OneQubitGate::G: m << r, -I * r, I * r, -r; break;
    case OneQubitGate::X: m << 0.0, 1.0, 1.0, 0.0; break;
  }
  return m;
}

class Statevector {
 public:
  Statevector() = default;

  /// |0...0> on `num_qubits` qubits.
  explicit Statevector(std::size_t num_qubits) : n_(num_qubits) {
    if (num_qubits == 0 || num_qubits > 30) {
      throw DimensionError("Statevector: qubit count must be in 1..30");
    }
    amps_.assign(std::size_t{1} << n_, cplx{});
    amps_[0] = 1.0;
  }

  static Statevector basis_state(std::size_t num_qubits, std::uint64_t index) {
    Statevector s(num_qubits);
    if (index >= s.dimension()) throw DimensionError("basis index out of range");
    s.amps_[0] = 0.0;
    s.amps_[index] = 1.0;
    return s;
  }

  /// Computational basis state from an occupation string, qubit 1 first.
  static Statevector from_bits(std::string_view bits) {
    std::uint64_t index = 0;
    for (char b : bits) {
      if (b != '0' && b != '1') throw ParseError("bit string may only contain 0 and 1");
      index = (index << 1) | static_cast<std::uint64_t>(b == '1');
    }
    return basis_state(bits.size(), index);
  }

  static Statevector from_amplitudes(std::vector<cplx> amps) {
    const std::size_t dim = amps.size();
    if (dim < 2 || !std::has_single_bit(dim)) {
      throw DimensionError("amplitude count must be a power of two >= 2");
    }
    Statevector s;
    s.n_ = static_cast<std::size_t>(std::countr_zero(dim));
    s.amps_ = std::move(amps);
    return s;
  }

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

  double norm() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return std::sqrt(s);
  }

  Statevector& normalize() {
    const double nrm = norm();
    if (nrm == 0.0) throw std::domain_error("cannot normalize the zero vector");
    for (cplx& a : amps_) a /= nrm;
    return *this;
  }

  /// <this|other>
  cplx inner(const Statevector& other) const {
    require_same(other.n_);
    cplx s{};
    for (std::size_t i = 0; i < amps_.size(); ++i) s += std::conj(amps_[i]) * other.amps_[i];
    return s;
  }

  Statevector& apply_matrix(const Eigen::Matrix2cd& m, std::size_t qubit) {
    const std::uint64_t b = bit(qubit);
    const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & b) continue;
      const cplx a0 = amps_[i];
      const cplx a1 = amps_[i | b];
      amps_[i] = m00 * a0 + m01 * a1;
      amps_[i | b] = m10 * a0 + m11 * a1;
    }
    return *this;
  }

  Statevector& apply_one_qubit(OneQubitGate g, std::size_t qubit, double angle = 0.0) {
    if (g == OneQubitGate::X) {
      const std::uint64_t b = bit(qubit);
      for (std::uint64_t i = 0; i < amps_.size(); ++i) {
        if (!(i & b)) std::swap(amps_[i], amps_[i | b]);
      }
      return *this;
    }
    if (g == OneQubitGate::RZ) {
      const std::uint64_t b = bit(qubit);
      const cplx p0 = std::polar(1.0, -angle / 2.0);
      const cplx p1 = std::polar(1.0, angle / 2.0);
      for (std::uint64_t i = 0; i < amps_.size(); ++i) amps_[i] *= (i & b) ? p1 : p0;
      return *this;
    }
    return apply_matrix(one_qubit_matrix(g, angle), qubit);
  }

  Statevector& apply_cnot(std::size_t control, std::size_t target) {
    if (control == target) throw DimensionError("CNOT control and target coincide");
    const std::uint64_t cb = bit(control);
    const std::uint64_t tb = bit(target);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if ((i & cb) && !(i & tb)) std::swap(amps_[i], amps_[i | tb]);
    }
    return *this;
  }

  /// |psi> <- P |psi>
  Statevector& apply_pauli(const PauliString& p) {
    require_same(p.num_qubits());
    std::vector<cplx> out(amps_.size());
    for (std::uint64_t i = 0; i < amps_.size(); ++i) out[i ^ p.x_mask()] = p.phase_on(i) * amps_[i];
    amps_.swap(out);
    return *this;
  }

  /// |psi> <- exp(i angle P) |psi> = cos(angle) |psi> + i sin(angle) P |psi>.
  Statevector& apply_pauli_exponential(const PauliString& p, double angle) {
    require_same(p.num_qubits());
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const std::uint64_t x = p.x_mask();
    const std::uint64_t z = p.z_mask();
    const std::size_t dim = amps_.size();
    if (x == 0) {
      const cplx plus(c, s), minus(c, -s);
      for (std::uint64_t i = 0; i < dim; ++i) {
        amps_[i] *= (std::popcount(i & z) & 1) ? minus : plus;
      }
      return *this;
    }
    // i sin(angle) times the Y-count phase of P; the Z parity adds a sign.
    const cplx isb = cplx(0.0, s) * PauliString::i_pow(static_cast<int>(p.num_y()));
    const std::uint64_t hi = std::bit_floor(x);
    for (std::uint64_t j = 0; j < dim; ++j) {
      if (j & hi) continue;
      const std::uint64_t k = j ^ x;
      const cplx a = amps_[j];
      const cplx b = amps_[k];
      const cplx fj = (std::popcount(j & z) & 1) ? -isb : isb;
      const cplx fk = (std::popcount(k & z) & 1) ? -isb : isb;
      amps_[j] = c * a + fk * b;
      amps_[k] = c * b + fj * a;
    }
    return *this;
  }

  /// Applies a 2^k x 2^k unitary to the contiguous qubits first..first+k-1
  /// (first is the block's most significant qubit).
  Statevector& apply_dense_unitary(const Eigen::MatrixXcd& u, std::size_t first_qubit,
                                   bool check_unitary = true) {
    const auto bdim = static_cast<std::size_t>(u.rows());
    if (u.cols() != u.rows() || bdim < 2 || !std::has_single_bit(bdim)) {
      throw DimensionError("dense block must be square with power-of-two size");
    }
    const std::size_t k = static_cast<std::size_t>(std::countr_zero(bdim));
    if (first_qubit == 0 || first_qubit + k - 1 > n_) {
      throw DimensionError("dense block does not fit in the register");
    }
    if (check_unitary && !is_unitary(u)) {
      throw std::invalid_argument("apply_dense_unitary: matrix is not unitary to 1e-10");
    }
    const std::size_t shift = n_ - (first_qubit + k - 1);
    const std::uint64_t block_mask = (std::uint64_t{bdim} - 1) << shift;
    Eigen::VectorXcd in(static_cast<Eigen::Index>(bdim));
    Eigen::VectorXcd out(static_cast<Eigen::Index>(bdim));
    for (std::uint64_t base = 0; base < amps_.size(); ++base) {
      if (base & block_mask) continue;
      for (std::uint64_t l = 0; l < bdim; ++l) in[static_cast<Eigen::Index>(l)] = amps_[base | (l << shift)];
      out.noalias() = u * in;
      for (std::uint64_t l = 0; l < bdim; ++l) amps_[base | (l << shift)] = out[static_cast<Eigen::Index>(l)];
    }
    return *this;
  }

  static bool is_unitary(const Eigen::MatrixXcd& u, double tol = 1e-10) {
    if (u.rows() != u.cols()) return false;
    const Eigen::MatrixXcd d = u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
  }

  /// Little-endian interleaved float64 (re, im) pairs, basis index ascending.
  void write_binary(std::ostream& os) const {
    for (const cplx& a : amps_) {
      const double re = a.real(), im = a.imag();
      os.write(reinterpret_cast<const char*>(&re), sizeof re);
      os.write(reinterpret_cast<const char*>(&im), sizeof im);
    }
  }

  std::uint64_t bit(std::size_t qubit) const {
    if (qubit == 0 || qubit > n_) {
      throw DimensionError("qubit index " + std::to_string(qubit) + " outside 1.." +
                           std::to_string(n_));
    }
    return std::uint64_t{1} << (n_ - qubit);
  }

 private:
  void require_same(std::size_t n) const {
    if (n != n_) {
      throw DimensionError("operand acts on " + std::to_string(n) + " qubits, state has " +
                           std::to_string(n_));
    }
  }

  std::size_t n_ = 0;
  std::vector<cplx> amps_;
};

/// A Hermitian PauliSum pre-arranged for repeated expectation values.
///
/// Terms sharing an X mask are folded into one weight vector, so
/// <psi|O|psi> = sum_x sum_j conj(psi_j) w_x[j] psi_{j^x}.
class CompiledObservable {
 public:
  CompiledObservable() = default;
  explicit CompiledObservable(const PauliSum& o) : n_(o.num_qubits()) {
    if (!o.is_hermitian(1e-12)) throw std::invalid_argument("observable is not Hermitian");
    if (n_ > 30) throw DimensionError("observable too large for a statevector");
    scale_ = std::max(1.0, o.one_norm());
    const std::size_t dim = std::size_t{1} << n_;
    std::unordered_map<std::uint64_t, std::size_t> slot;
    for (const auto& [p, c] : o) {
      auto [it, fresh] = slot.try_emplace(p.x_mask(), groups_.size());
      if (fresh) groups_.push_back({p.x_mask(), std::vector<cplx>(dim)});
      auto& w = groups_[it->second].weights;
      for (std::uint64_t j = 0; j < dim; ++j) w[j] += c * p.phase_on(j ^ p.x_mask());
    }
  }

  std::size_t num_qubits() const noexcept { return n_; }

  double expectation(const Statevector& s) const {
    if (s.num_qubits() != n_) throw DimensionError("observable and state sizes differ");
    const auto a = s.amplitudes();
    cplx total{};
    for (const auto& g : groups_) {
      cplx acc{};
      for (std::uint64_t j = 0; j < a.size(); ++j) acc += std::conj(a[j]) * g.weights[j] * a[j ^ g.x];
      total += acc;
    }
    if (std::abs(total.imag()) > 1e-10 * scale_) {
      throw std::runtime_error("expectation value has imaginary part " +
                               std::to_string(total.imag()));
    }
    return total.real();
  }

 private:
  struct Group {
    std::uint64_t x;
    std::vector<cplx> weights;
  };
  std::size_t n_ = 0;
  double scale_ = 1.0;
  std::vector<Group> groups_;
};

/// <psi|O|psi> for a Hermitian O.
inline double expectation(const Statevector& s, const PauliSum& o) {
  return CompiledObservable(o).expectation(s);
}

}  // namespace qoca

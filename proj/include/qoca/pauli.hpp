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

// Pauli strings and weighted sums of Pauli strings.
//
// Qubits are numbered from 1. Qubit 1 is the leftmost tensor factor, which is
// the most significant bit of a computational-basis index. Every module of the
// library shares this convention.

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "qoca/errors.hpp"

namespace qoca {

using cplx = std::complex<double>;

inline constexpr std::size_t kMaxQubits = 64;
inline constexpr std::size_t kDefaultDenseCap = 14;
inline constexpr double kPruneTolerance = 1e-12;

/// Tensor product of single-qubit Paulis stored as X and Z bit masks.
///
/// A qubit with only its X bit set carries X, only Z carries Z, and both carry
/// Y. As an operator the string is exactly the Hermitian product of its
/// letters, so Y = i X Z on that qubit.
class PauliString {
 public:
  PauliString() = default;
  explicit PauliString(std::size_t num_qubits) : n_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw DimensionError("PauliString: qubit count must be in 1.." + std::to_string(kMaxQubits));
    }
  }
  PauliString(std::size_t num_qubits, std::uint64_t x_mask, std::uint64_t z_mask)
      : PauliString(num_qubits) {
    const std::uint64_t valid = mask_all();
    if ((x_mask & ~valid) != 0 || (z_mask & ~valid) != 0) {
      throw DimensionError("PauliString: mask has bits beyond the qubit count");
    }
    x_ = x_mask;
    z_ = z_mask;
  }

  /// Parses letters in {I,X,Y,Z}, qubit 1 first.
  static PauliString from_letters(std::string_view letters) {
    PauliString p(letters.size());
    for (std::size_t k = 0; k < letters.size(); ++k) p.set(k + 1, letters[k]);
    return p;
  }

  static PauliString single(std::size_t num_qubits, std::size_t qubit, char letter) {
    PauliString p(num_qubits);
    p.set(qubit, letter);
    return p;
  }

  std::size_t num_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }

  /// Basis-index bit that belongs to `qubit` (1-based).
  std::uint64_t bit(std::size_t qubit) const {
    check_qubit(qubit);
    return std::uint64_t{1} << (n_ - qubit);
  }

  char letter(std::size_t qubit) const {
    const std::uint64_t b = bit(qubit);
    const bool x = (x_ & b) != 0;
    const bool z = (z_ & b) != 0;
    return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
  }

  PauliString& set(std::size_t qubit, char letter) {
    const std::uint64_t b = bit(qubit);
    x_ &= ~b;
    z_ &= ~b;
    switch (letter) {
      case 'I': break;
      case 'X': x_ |= b; break;
      case 'Y': x_ |= b; z_ |= b; break;
      case 'Z': z_ |= b; break;
      default:
        throw ParseError(std::string("invalid Pauli letter '") + letter + "'");
    }
    return *this;
  }

  std::size_t weight() const noexcept { return std::popcount(x_ | z_); }
  std::size_t num_y() const noexcept { return std::popcount(x_ & z_); }
  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  bool is_diagonal() const noexcept { return x_ == 0; }

  bool commutes_with(const PauliString& o) const {
    require_same_size(o);
    return ((std::popcount(x_ & o.z_) + std::popcount(z_ & o.x_)) & 1) == 0;
  }

  std::string str() const {
    std::string s(n_, 'I');
    for (std::size_t q = 1; q <= n_; ++q) s[q - 1] = letter(q);
    return s;
  }

  /// Sign and power of i picked up by P|index> = phase * |index ^ x_mask>.
  cplx phase_on(std::uint64_t index) const noexcept {
    int k = static_cast<int>(num_y()) + 2 * (std::popcount(index & z_) & 1);
    return i_pow(k);
  }

  static cplx i_pow(int k) noexcept {
    switch (((k % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }

  void require_same_size(const PauliString& o) const {
    if (n_ != o.n_) {
      throw DimensionError("Pauli strings act on " + std::to_string(n_) + " and " +
                           std::to_string(o.n_) + " qubits");
    }
  }

  friend bool operator==(const PauliString& a, const PauliString& b) noexcept {
    return a.n_ == b.n_ && a.x_ == b.x_ && a.z_ == b.z_;
  }

  /// Lexicographic on the letter string with I < X < Y < Z.
  friend std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) noexcept {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    const std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
    if (diff == 0) return std::strong_ordering::equal;
    const std::uint64_t top = std::uint64_t{1} << (63 - std::countl_zero(diff));
    return a.code(top) <=> b.code(top);
  }

 private:
  std::uint64_t mask_all() const noexcept {
    return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
  }
  void check_qubit(std::size_t qubit) const {
    if (qubit == 0 || qubit > n_) {
      throw DimensionError("qubit index " + std::to_string(qubit) + " outside 1.." +
                           std::to_string(n_));
    }
  }
  int code(std::uint64_t b) const noexcept {
    const bool x = (x_ & b) != 0;
    const bool z = (z_ & b) != 0;
    return x ? (z ? 2 : 1) : (z ? 3 : 0);
  }

  std::size_t n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Exact phase i^k.
struct Phase {
  int power = 0;
  cplx value() const noexcept { return PauliString::i_pow(power); }
  friend bool operator==(Phase a, Phase b) noexcept {
    return ((a.power - b.power) % 4 + 4) % 4 == 0;
  }
};

struct PauliProduct {
  Phase phase;
  PauliString result;
};

/// a * b = phase * result, with the phase one of {1, i, -1, -i}.
inline PauliProduct pauli_mul(const PauliString& a, const PauliString& b) {
  a.require_same_size(b);
  PauliString r(a.num_qubits(), a.x_mask() ^ b.x_mask(), a.z_mask() ^ b.z_mask());
  // With P = i^{|x&z|} X^x Z^z, moving Z^{z_a} past X^{x_b} costs (-1)^{|z_a & x_b|}.
  const int k = static_cast<int>(a.num_y() + b.num_y()) - static_cast<int>(r.num_y()) +
                2 * std::popcount(a.z_mask() & b.x_mask());
  return {Phase{((k % 4) + 4) % 4}, r};
}

/// Sparse complex combination of Pauli strings on a fixed register.
class PauliSum {
 public:
  using TermMap = std::map<PauliString, cplx>;

  PauliSum() = default;
  explicit PauliSum(std::size_t num_qubits) : n_(num_qubits) {
    if (num_qubits == 0 || num_qubits > kMaxQubits) {
      throw DimensionError("PauliSum: qubit count must be in 1.." + std::to_string(kMaxQubits));
    }
  }
  PauliSum(const PauliString& p, cplx coeff = 1.0) : PauliSum(p.num_qubits()) {
    add_term(p, coeff);
  }

  static PauliSum identity(std::size_t num_qubits, cplx coeff = 1.0) {
    return PauliSum(PauliString(num_qubits), coeff);
  }
  static PauliSum from_letters(std::string_view letters, cplx coeff = 1.0) {
    return PauliSum(PauliString::from_letters(letters), coeff);
  }

  std::size_t num_qubits() const noexcept { return n_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const TermMap& terms() const noexcept { return terms_; }
  auto begin() const noexcept { return terms_.begin(); }
  auto end() const noexcept { return terms_.end(); }

  cplx coefficient(const PauliString& p) const {
    auto it = terms_.find(p);
    return it == terms_.end() ? cplx{} : it->second;
  }
  cplx identity_coefficient() const { return n_ == 0 ? cplx{} : coefficient(PauliString(n_)); }

  PauliSum& add_term(const PauliString& p, cplx coeff) {
    require_qubits(p.num_qubits());
    terms_[p] += coeff;
    return *this;
  }

  /// Drops terms with |coefficient| below `tol`.
  PauliSum& simplify(double tol = kPruneTolerance) {
    std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
    return *this;
  }
  PauliSum simplified(double tol = kPruneTolerance) const {
    PauliSum s = *this;
    return s.simplify(tol);
  }

  PauliSum without_identity() const {
    PauliSum s = *this;
    if (n_ != 0) s.terms_.erase(PauliString(n_));
    return s;
  }

  PauliSum adjoint() const {
    PauliSum s = *this;
    for (auto& [p, c] : s.terms_) c = std::conj(c);
    return s;
  }

  /// Every string is Hermitian, so the sum is Hermitian iff all coefficients are real.
  bool is_hermitian(double tol = kPruneTolerance) const {
    for (const auto& [p, c] : terms_) {
      if (std::abs(c.imag()) > tol) return false;
    }
    return true;
  }

  double one_norm() const {
    double s = 0.0;
    for (const auto& [p, c] : terms_) s += std::abs(c);
    return s;
  }

  bool approx_equal(const PauliSum& o, double tol = 1e-10) const {
    if (n_ != o.n_) return false;
    PauliSum d = *this;
    d -= o;
    for (const auto& [p, c] : d.terms_) {
      if (std::abs(c) > tol) return false;
    }
    return true;
  }

  PauliSum& operator+=(const PauliSum& o) {
    adopt_size(o);
    for (const auto& [p, c] : o.terms_) terms_[p] += c;
    return simplify();
  }
  PauliSum& operator-=(const PauliSum& o) {
    adopt_size(o);
    for (const auto& [p, c] : o.terms_) terms_[p] -= c;
    return simplify();
  }
  PauliSum& operator*=(cplx s) {
    for (auto& [p, c] : terms_) c *= s;
    return simplify();
  }

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
  friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }

  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    a.require_qubits(b.n_);
    PauliSum out(a.n_);
    for (const auto& [pa, ca] : a.terms_) {
      for (const auto& [pb, cb] : b.terms_) {
        auto [phase, r] = pauli_mul(pa, pb);
        out.terms_[r] += phase.value() * ca * cb;
      }
    }
    return out.simplify();
  }

  friend bool operator==(const PauliSum& a, const PauliSum& b) = default;

 private:
  void require_qubits(std::size_t n) const {
    if (n_ != n) {
      throw DimensionError("Pauli sums act on " + std::to_string(n_) + " and " +
                           std::to_string(n) + " qubits");
    }
  }
  // A default-constructed sum is the additive zero of any size.
  void adopt_size(const PauliSum& o) {
    if (n_ == 0 && terms_.empty()) n_ = o.n_;
    require_qubits(o.n_);
  }

  std::size_t n_ = 0;
  TermMap terms_;
};

inline PauliSum sum_add(const PauliSum& a, const PauliSum& b) { return a + b; }
inline PauliSum sum_scale(const PauliSum& a, cplx s) { return a * s; }
inline PauliSum sum_mul(const PauliSum& a, const PauliSum& b) { return a * b; }

inline PauliSum commutator(const PauliSum& a, const PauliSum& b) { return a * b - b * a; }

inline bool commutator_is_zero(const PauliSum& a, const PauliSum& b,
                               double tol = kPruneTolerance) {
  return commutator(a, b).simplify(tol).empty();
}

inline void require_dense_cap(std::size_t num_qubits, std::size_t cap) {
  if (num_qubits > cap) {
    throw CapacityError("dense construction on " + std::to_string(num_qubits) +
                        " qubits exceeds the dense cap of " + std::to_string(cap) + " qubits");
  }
}

/// Dense 2^n x 2^n matrix of a sum.
inline Eigen::MatrixXcd to_dense(const PauliSum& s, std::size_t cap = kDefaultDenseCap) {
  require_dense_cap(s.num_qubits(), cap);
  const std::uint64_t dim = std::uint64_t{1} << s.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  for (const auto& [p, c] : s) {
    for (std::uint64_t i = 0; i < dim; ++i) {
      m(static_cast<Eigen::Index>(i ^ p.x_mask()), static_cast<Eigen::Index>(i)) +=
          c * p.phase_on(i);
    }
  }
  return m;
}

inline Eigen::MatrixXcd to_dense(const PauliString& p, std::size_t cap = kDefaultDenseCap) {
  return to_dense(PauliSum(p), cap);
}

}  // namespace qoca

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

// Exact ground space by dense diagonalization, fidelity against it, and the
// site-occupancy diagnostic.

#include <lapacke.h>

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

#include "qoca/fermion.hpp"
#include "qoca/pauli.hpp"
#include "qoca/statevector.hpp"

namespace qoca {

struct GroundSpace {
  double energy = 0.0;
  std::vector<Statevector> basis;
  double degeneracy_tolerance = 0.0;

  std::size_t degeneracy() const noexcept { return basis.size(); }
  std::size_t num_qubits() const noexcept { return basis.empty() ? 0 : basis.front().num_qubits(); }
};

struct GroundSpaceOptions {
  /// Degeneracy window relative to the spectral-range bound 2 * sum |c_P|.
  double relative_tolerance = 1e-8;
  /// Keep only the first eigenvector even if the level is degenerate.
  bool pin_single = false;
  std::size_t dense_cap = kDefaultDenseCap;
};

namespace detail {

inline bool is_real_operator(const PauliSum& h) {
  for (const auto& [p, c] : h) {
    if (p.num_y() % 2 != 0 && std::abs(c) > 0.0) return false;
  }
  return true;
}

/// Lowest `count` eigenpairs of the dense matrix of `h`, ascending.
inline std::pair<std::vector<double>, std::vector<std::vector<cplx>>> lowest_eigenpairs(
    const PauliSum& h, std::size_t count) {
  const std::uint64_t dim = std::uint64_t{1} << h.num_qubits();
  const auto n = static_cast<lapack_int>(dim);
  const auto k = static_cast<lapack_int>(std::min<std::uint64_t>(count, dim));
  std::vector<double> w(dim);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(k));
  lapack_int found = 0;
  std::vector<std::vector<cplx>> vecs;
  if (is_real_operator(h)) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (const auto& [p, c] : h) {
      for (std::uint64_t i = 0; i < dim; ++i) {
        m(static_cast<Eigen::Index>(i ^ p.x_mask()), static_cast<Eigen::Index>(i)) +=
            (c * p.phase_on(i)).real();
      }
    }
    Eigen::MatrixXd z(n, k);
    const lapack_int info =
        LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', n, m.data(), n, 0.0, 0.0, 1, k, 0.0, &found,
                       w.data(), z.data(), n, support.data());
    if (info != 0) throw std::runtime_error("dsyevr failed with info " + std::to_string(info));
    for (lapack_int j = 0; j < found; ++j) {
      std::vector<cplx> v(dim);
      for (std::uint64_t i = 0; i < dim; ++i) v[i] = z(static_cast<Eigen::Index>(i), j);
      vecs.push_back(std::move(v));
    }
  } else {
    Eigen::MatrixXcd m = to_dense(h, 30);
    Eigen::MatrixXcd z(n, k);
    const lapack_int info = LAPACKE_zheevr(
        LAPACK_COL_MAJOR, 'V', 'I', 'L', n, reinterpret_cast<lapack_complex_double*>(m.data()), n,
        0.0, 0.0, 1, k, 0.0, &found, w.data(), reinterpret_cast<lapack_complex_double*>(z.data()),
        n, support.data());
    if (info != 0) throw std::runtime_error("zheevr failed with info " + std::to_string(info));
    for (lapack_int j = 0; j < found; ++j) {
      std::vector<cplx> v(dim);
      for (std::uint64_t i = 0; i < dim; ++i) v[i] = z(static_cast<Eigen::Index>(i), j);
      vecs.push_back(std::move(v));
    }
  }
  w.resize(static_cast<std::size_t>(found));
  return {std::move(w), std::move(vecs)};
}

}  // namespace detail

/// Lowest eigenspace of a Hermitian sum: every eigenvector whose eigenvalue
/// lies within the degeneracy window of the minimum.
inline GroundSpace exact_ground_space(const PauliSum& h, const GroundSpaceOptions& opt = {}) {
  require_dense_cap(h.num_qubits(), opt.dense_cap);
  if (!h.is_hermitian(1e-12)) throw std::invalid_argument("exact_ground_space: not Hermitian");
  const double window =
      opt.relative_tolerance * std::max(1.0, 2.0 * h.without_identity().one_norm());
  const std::uint64_t dim = std::uint64_t{1} << h.num_qubits();
  std::size_t count = std::min<std::uint64_t>(8, dim);
  for (;;) {
    auto [w, v] = detail::lowest_eigenpairs(h, count);
    std::size_t deg = 1;
    while (deg < w.size() && w[deg] - w[0] <= window) ++deg;
    if (deg < w.size() || count == dim) {
      GroundSpace g{w[0], {}, window};
      if (opt.pin_single) deg = 1;
      for (std::size_t j = 0; j < deg; ++j) g.basis.push_back(Statevector::from_amplitudes(v[j]));
      return g;
    }
    count = std::min<std::uint64_t>(2 * count, dim);
  }
}

/// Weight of `state` in the ground space: sum_v |<v|psi>|^2.
inline double fidelity(const Statevector& state, const GroundSpace& target) {
  if (target.basis.empty()) throw std::invalid_argument("empty ground space");
  double f = 0.0;
  for (const auto& v : target.basis) f += std::norm(v.inner(state));
  return f;
}

/// <N>/L with N the JW image of the total particle number.
/// <N>/L for a register of n = 2L spin orbitals.
inline PauliSum occupancy_observable(std::size_t num_qubits) {
  if (num_qubits == 0 || num_qubits % 2 != 0) throw DimensionError("occupancy needs an even register");
  return jw_transform(total_number(num_qubits), num_qubits) *
         cplx(2.0 / static_cast<double>(num_qubits));
}

inline PauliSum occupancy_observable(const LatticeSpec& lat) {
  return occupancy_observable(lat.num_orbitals());
}

inline double site_occupancy(const Statevector& state, const LatticeSpec& lat) {
  if (state.num_qubits() != lat.num_orbitals()) {
    throw DimensionError("state does not match the lattice register");
  }
  return expectation(state, occupancy_observable(lat));
}

}  // namespace qoca

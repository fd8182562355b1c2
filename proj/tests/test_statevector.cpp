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

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qoca/statevector.hpp"

namespace {

using qoca::cplx;
using qoca::OneQubitGate;
using qoca::PauliString;
using qoca::PauliSum;
using qoca::Statevector;

Statevector from_vec(const oracle::Vec& v) { return Statevector::from_amplitudes({v.data(), v.data() + v.size()}); }

oracle::Vec to_vec(const Statevector& s) {
  return Eigen::Map<const oracle::Vec>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dimension()));
}

/// 2x2 gate on qubit q of n, as a Kronecker product.
oracle::Mat embed(const oracle::Mat& g, std::size_t q, std::size_t n) {
  oracle::Mat m = oracle::Mat::Identity(1, 1);
  for (std::size_t k = 1; k <= n; ++k) m = oracle::kron(m, k == q ? g : oracle::pauli('I'));
  return m;
}

TEST(Statevector, BasisConventionQubitOneIsMostSignificant) {
  const auto s = Statevector::from_bits("100");
  EXPECT_EQ(s[0b100], cplx(1.0));
  EXPECT_EQ(s.bit(1), 0b100u);
  EXPECT_THROW(Statevector(0), qoca::DimensionError);
  EXPECT_THROW(Statevector(31), qoca::DimensionError);
  EXPECT_THROW(Statevector::from_amplitudes({1.0, 0.0, 0.0}), qoca::DimensionError);
}

TEST(Statevector, OneQubitGatesMatchDense) {
  std::mt19937_64 rng(5);
  const cplx i(0, 1);
  const double a = 0.37;
  const oracle::Mat X = oracle::pauli('X'), Y = oracle::pauli('Y'), Z = oracle::pauli('Z');
  const oracle::Mat I2 = oracle::pauli('I');
  struct Case {
    OneQubitGate g;
    oracle::Mat m;
  };
  const std::vector<Case> cases{
      {OneQubitGate::RX, (std::cos(a / 2) * I2 - i * std::sin(a / 2) * X)},
      {OneQubitGate::RY, (std::cos(a / 2) * I2 - i * std::sin(a / 2) * Y)},
      {OneQubitGate::RZ, (std::cos(a / 2) * I2 - i * std::sin(a / 2) * Z)},
      {OneQubitGate::H, ((X + Z) / std::numbers::sqrt2)},
      {OneQubitGate::G, ((Y + Z) / std::numbers::sqrt2)},
      {OneQubitGate::X, X},
  };
  for (const auto& c : cases) {
    for (std::size_t q = 1; q <= 3; ++q) {
      const oracle::Vec v = oracle::random_state(3, rng);
      Statevector s = from_vec(v);
      s.apply_one_qubit(c.g, q, a);
      EXPECT_TRUE(to_vec(s).isApprox(embed(c.m, q, 3) * v, 1e-13)) << qoca::to_string(c.g) << q;
    }
  }
}

TEST(Statevector, GMapsZToY) {
  const oracle::Mat g = qoca::one_qubit_matrix(OneQubitGate::G);
  EXPECT_TRUE((g * g).isApprox(oracle::Mat::Identity(2, 2), 1e-15));
  EXPECT_TRUE((g * oracle::pauli('Z') * g).isApprox(oracle::pauli('Y'), 1e-15));
}

TEST(Statevector, CnotMatchesDense) {
  std::mt19937_64 rng(6);
  const oracle::Vec v = oracle::random_state(3, rng);
  Statevector s = from_vec(v);
  s.apply_cnot(3, 1);
  // CNOT(c=3, t=1) = |0><0|_3 + |1><1|_3 X_1
  oracle::Mat p0(2, 2), p1(2, 2);
  p0 << 1, 0, 0, 0;
  p1 << 0, 0, 0, 1;
  const oracle::Mat cx = embed(p0, 3, 3) + embed(oracle::pauli('X'), 1, 3) * embed(p1, 3, 3);
  EXPECT_TRUE(to_vec(s).isApprox(cx * v, 1e-13));
  EXPECT_THROW(s.apply_cnot(2, 2), qoca::DimensionError);
}

TEST(Statevector, PauliExponentialMatchesMatrixExponential) {
  std::mt19937_64 rng(7);
  static const char kLetters[] = "IXYZ";
  std::uniform_int_distribution<int> u(0, 3);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int rep = 0; rep < 60; ++rep) {
    std::string letters;
    for (int k = 0; k < 4; ++k) letters += kLetters[u(rng)];
    const double theta = ang(rng);
    const oracle::Vec v = oracle::random_state(4, rng);
    Statevector s = from_vec(v);
    s.apply_pauli_exponential(PauliString::from_letters(letters), theta);
    const oracle::Mat U = oracle::expm(cplx(0, theta) * oracle::kron_string(letters));
    EXPECT_TRUE(to_vec(s).isApprox(U * v, 1e-12)) << letters << " " << theta;
  }
}

TEST(Statevector, ApplyPauliMatchesDense) {
  std::mt19937_64 rng(8);
  const oracle::Vec v = oracle::random_state(3, rng);
  Statevector s = from_vec(v);
  s.apply_pauli(PauliString::from_letters("YZX"));
  EXPECT_TRUE(to_vec(s).isApprox(oracle::kron_string("YZX") * v, 1e-13));
}

TEST(Statevector, DenseBlockOnContiguousQubits) {
  std::mt19937_64 rng(9);
  const oracle::Mat u2 = oracle::expm(cplx(0, 0.3) * (oracle::kron_string("XY") + oracle::kron_string("ZZ")));
  const oracle::Vec v = oracle::random_state(4, rng);
  Statevector s = from_vec(v);
  s.apply_dense_unitary(u2, 2);
  const oracle::Mat full = oracle::kron(oracle::kron(oracle::pauli('I'), u2), oracle::pauli('I'));
  EXPECT_TRUE(to_vec(s).isApprox(full * v, 1e-12));
  EXPECT_THROW(s.apply_dense_unitary(oracle::kron_string("XX") * 2.0, 1), std::invalid_argument);
  EXPECT_THROW(s.apply_dense_unitary(u2, 4), qoca::DimensionError);
}

TEST(Statevector, GatesPreserveNorm) {
  std::mt19937_64 rng(10);
  Statevector s = from_vec(oracle::random_state(6, rng));
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int k = 0; k < 50; ++k) {
    s.apply_one_qubit(OneQubitGate::RY, 1 + k % 6, ang(rng));
    s.apply_cnot(1 + k % 6, 1 + (k + 1) % 6);
    s.apply_pauli_exponential(PauliString::from_letters("XZYIZX"), ang(rng));
  }
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
}

TEST(Expectation, MatchesDenseSandwich) {
  std::mt19937_64 rng(11);
  PauliSum h(4);
  h.add_term(PauliString::from_letters("XXYY"), 0.3);
  h.add_term(PauliString::from_letters("ZIZI"), -1.2);
  h.add_term(PauliString::from_letters("IYZX"), 0.7);
  h.add_term(PauliString::from_letters("IIII"), 2.0);
  h.add_term(PauliString::from_letters("XIII"), -0.4);
  const oracle::Vec v = oracle::random_state(4, rng);
  const double expect = (v.adjoint() * qoca::to_dense(h) * v)(0).real();
  EXPECT_NEAR(qoca::expectation(from_vec(v), h), expect, 1e-12);
  EXPECT_THROW(qoca::CompiledObservable(PauliSum::from_letters("XY", cplx(0, 1))), std::invalid_argument);
}

TEST(Expectation, SingleRotationClosedForm) {
  // exp(i theta X)|0> under Z gives cos(2 theta).
  for (double theta : {0.0, 0.3, 1.1, -2.0}) {
    Statevector s(1);
    s.apply_pauli_exponential(PauliString::from_letters("X"), theta);
    EXPECT_NEAR(qoca::expectation(s, PauliSum::from_letters("Z")), std::cos(2 * theta), 1e-14);
  }
}

TEST(Statevector, BinaryDumpIsLittleEndianPairs) {
  Statevector s(1);
  std::ostringstream os;
  s.write_binary(os);
  const std::string bytes = os.str();
  ASSERT_EQ(bytes.size(), 4 * sizeof(double));
  double re0 = 0;
  std::memcpy(&re0, bytes.data(), sizeof(double));
  EXPECT_EQ(re0, 1.0);
}

}  // namespace

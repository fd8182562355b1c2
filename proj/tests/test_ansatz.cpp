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

#include <random>
#include <vector>

#include "oracles.hpp"
#include "qoca/ansatz.hpp"
#include "qoca/ground_space.hpp"

namespace {

using qoca::AnsatzKind;
using qoca::Circuit;
using qoca::LatticeSpec;
using qoca::Statevector;
using qoca::Strategy;

const LatticeSpec kRing{1, 4, true};
const LatticeSpec kPlaquette{2, 2, false};
const LatticeSpec k2x3{2, 3, false};

Statevector from_vec(const oracle::Vec& v) { return Statevector::from_amplitudes({v.data(), v.data() + v.size()}); }

oracle::Vec to_vec(const Statevector& s) {
  return Eigen::Map<const oracle::Vec>(s.amplitudes().data(), static_cast<Eigen::Index>(s.dimension()));
}

std::vector<double> random_params(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::vector<double> t(n);
  for (auto& x : t) x = u(rng);
  return t;
}

Circuit build(AnsatzKind k, const LatticeSpec& lat, std::size_t d, Strategy s = Strategy::Full) {
  return qoca::build_ansatz(k, qoca::build_hubbard(lat), d, s);
}

std::size_t params_per_layer(AnsatzKind k, const LatticeSpec& lat, Strategy s = Strategy::Full) {
  return qoca::count_resources(build(k, lat, 1, s)).params_per_layer;
}

TEST(Ansatz, ParameterCountsPerLayer) {
  for (const LatticeSpec& four : {kRing, kPlaquette}) {
    EXPECT_EQ(params_per_layer(AnsatzKind::HEA, four), 16u);
    EXPECT_EQ(params_per_layer(AnsatzKind::VHA, four), 8u);
    EXPECT_EQ(params_per_layer(AnsatzKind::QOCA, four), 16u);
    EXPECT_EQ(params_per_layer(AnsatzKind::QOCA, four, Strategy::Scalable), 5u);
    EXPECT_EQ(params_per_layer(AnsatzKind::SQOCA, four), 12u);
  }
  EXPECT_EQ(params_per_layer(AnsatzKind::FTVHA, kRing), 8u);
  EXPECT_EQ(params_per_layer(AnsatzKind::HEA, k2x3), 24u);
  EXPECT_EQ(params_per_layer(AnsatzKind::VHA, k2x3), 13u);
  EXPECT_EQ(params_per_layer(AnsatzKind::QOCA, k2x3), 25u);
  EXPECT_EQ(params_per_layer(AnsatzKind::QOCA, k2x3, Strategy::Scalable), 6u);
  EXPECT_EQ(params_per_layer(AnsatzKind::SQOCA, k2x3), 18u);
}

TEST(Ansatz, ParameterCountsFollowPeriodicChainFormulas) {
  // eta = 1: VHA 2L / 3, FT-VHA 2L / 2, QOCA 4L / 5, sQOCA 3L / 3; HEA has
  // 2 per qubit, i.e. 4L.
  for (std::size_t L : {4u, 6u}) {
    const LatticeSpec ring{1, L, true};
    EXPECT_EQ(params_per_layer(AnsatzKind::HEA, ring), 4 * L);
    EXPECT_EQ(params_per_layer(AnsatzKind::VHA, ring), 2 * L);
    EXPECT_EQ(params_per_layer(AnsatzKind::VHA, ring, Strategy::Scalable), 3u);
    EXPECT_EQ(params_per_layer(AnsatzKind::FTVHA, ring), 2 * L);
    EXPECT_EQ(params_per_layer(AnsatzKind::FTVHA, ring, Strategy::Scalable), 2u);
    EXPECT_EQ(params_per_layer(AnsatzKind::QOCA, ring), 4 * L);
    EXPECT_EQ(params_per_layer(AnsatzKind::QOCA, ring, Strategy::Scalable), 5u);
    EXPECT_EQ(params_per_layer(AnsatzKind::SQOCA, ring), 3 * L);
    EXPECT_EQ(params_per_layer(AnsatzKind::SQOCA, ring, Strategy::Scalable), 3u);
  }
}

TEST(Ansatz, DepthScalesParameters) {
  EXPECT_EQ(build(AnsatzKind::QOCA, kPlaquette, 4).num_params(), 64u);
  EXPECT_EQ(build(AnsatzKind::QOCA, kPlaquette, 10, Strategy::Scalable).num_params(), 50u);
  EXPECT_EQ(build(AnsatzKind::QOCA, kPlaquette, 3).num_layers(), 3u);
}

TEST(Ansatz, CnotCounts) {
  auto cx = [](AnsatzKind k, const LatticeSpec& lat) {
    return qoca::count_resources(build(k, lat, 1)).cnots_per_layer;
  };
  EXPECT_EQ(cx(AnsatzKind::HEA, kPlaquette), 7u);
  EXPECT_EQ(cx(AnsatzKind::HEA, k2x3), 11u);
  for (const LatticeSpec& four : {kRing, kPlaquette}) {
    EXPECT_EQ(cx(AnsatzKind::VHA, four), 56u);
    EXPECT_EQ(cx(AnsatzKind::QOCA, four), 88u);
    EXPECT_EQ(cx(AnsatzKind::SQOCA, four), 40u);
  }
  EXPECT_EQ(cx(AnsatzKind::VHA, k2x3), 116u);
  EXPECT_EQ(cx(AnsatzKind::QOCA, k2x3), 172u);
  EXPECT_EQ(cx(AnsatzKind::SQOCA, k2x3), 68u);
}

TEST(Ansatz, EmptyCircuitHasNoResources) {
  const auto r = qoca::count_resources(Circuit(4));
  EXPECT_EQ(r.params_per_layer, 0u);
  EXPECT_EQ(r.cnots_per_layer, 0u);
  EXPECT_EQ(qoca::build_hea(4, 0).num_params(), 0u);
}

TEST(Ansatz, DriveOrderWithinLayer) {
  const Circuit c = build(AnsatzKind::QOCA, LatticeSpec{2, 1, false}, 1);
  const std::string dump = c.dump();
  // hopping (2 spins x XX,YY), onsite (1 string per site), drives X then Y per site, up then down
  const std::string tail =
      "PAULIEXP XIII slot=3 scale=1\n"
      "PAULIEXP YIII slot=4 scale=1\n"
      "PAULIEXP ZXII slot=5 scale=1\n"
      "PAULIEXP ZYII slot=6 scale=1\n"
      "PAULIEXP IIXI slot=3 scale=1\n"
      "PAULIEXP IIYI slot=4 scale=1\n"
      "PAULIEXP IIZX slot=5 scale=1\n"
      "PAULIEXP IIZY slot=6 scale=1\n";
  ASSERT_GE(dump.size(), tail.size());
  EXPECT_EQ(dump.substr(dump.size() - tail.size()), tail);
  EXPECT_NE(dump.find("PAULIEXP IIXX slot=0 scale=-0.5"), std::string::npos);
  EXPECT_NE(dump.find("PAULIEXP ZIZI slot=1 scale=1"), std::string::npos);
}

TEST(Ansatz, ZeroBindingIsIdentity) {
  std::mt19937_64 rng(12);
  for (AnsatzKind k : {AnsatzKind::VHA, AnsatzKind::FTVHA, AnsatzKind::QOCA, AnsatzKind::SQOCA}) {
    for (Strategy s : {Strategy::Full, Strategy::Scalable}) {
      const Circuit c = build(k, kRing, 2, s);
      const oracle::Vec v = oracle::random_state(8, rng);
      Statevector st = from_vec(v);
      qoca::run_circuit(c, st, std::vector<double>(c.num_params(), 0.0));
      EXPECT_LT((to_vec(st) - v).norm(), 1e-10) << qoca::to_string(k);
    }
  }
}

TEST(Ansatz, ParameterLengthChecked) {
  const Circuit c = build(AnsatzKind::VHA, kRing, 1);
  Statevector s(8);
  EXPECT_THROW(qoca::run_circuit(c, s, std::vector<double>(3)), qoca::DimensionError);
}

TEST(Ansatz, ParticleNumberConservation) {
  std::mt19937_64 rng(13);
  for (AnsatzKind k : {AnsatzKind::VHA, AnsatzKind::FTVHA, AnsatzKind::QOCA}) {
    const Circuit c = build(k, kRing, 2);
    const oracle::Vec v = oracle::random_state(8, rng);
    Statevector s = from_vec(v);
    const double before = qoca::site_occupancy(s, kRing);
    qoca::run_circuit(c, s, random_params(c.num_params(), rng));
    const double diff = std::abs(qoca::site_occupancy(s, kRing) - before);
    if (k == AnsatzKind::QOCA) {
      EXPECT_GT(diff, 1e-6);
    } else {
      EXPECT_LT(diff, 1e-8) << qoca::to_string(k);
    }
  }
}

TEST(Ansatz, TiedSlotActsOnBothSpins) {
  // One VHA bond slot: its up and down strings follow the same angle, so the
  // circuit equals exp(i theta H_bond) with H_bond from explicit matrices.
  const LatticeSpec dimer{2, 1, false};
  const auto m = qoca::build_hubbard(dimer);
  const Circuit c = qoca::build_vha(m, 1);
  std::mt19937_64 rng(14);
  const oracle::Vec v = oracle::random_state(4, rng);
  const double theta = 0.81;
  Statevector s = from_vec(v);
  qoca::run_circuit(c, s, std::vector<double>{theta, 0.0, 0.0});
  oracle::Mat hop = oracle::Mat::Zero(16, 16);
  for (std::size_t off : {0u, 2u}) {
    hop -= oracle::annihilator(1 + off, 4).adjoint() * oracle::annihilator(2 + off, 4) +
           oracle::annihilator(2 + off, 4).adjoint() * oracle::annihilator(1 + off, 4);
  }
  EXPECT_TRUE(to_vec(s).isApprox(oracle::expm(qoca::cplx(0, theta) * hop) * v, 1e-12));
}

TEST(Ansatz, FtVhaLayerMatchesDenseProduct) {
  const auto m = qoca::build_hubbard(kRing);
  const Circuit c = qoca::build_ftvha(m, 1);
  std::mt19937_64 rng(15);
  const auto theta = random_params(c.num_params(), rng);
  const oracle::Vec v = oracle::random_state(8, rng);
  Statevector s = from_vec(v);
  qoca::run_circuit(c, s, theta);

  // Dense: FT on both registers, exp(i tau_k eps_k n_k) per mode, FT^dagger,
  // then exp(i nu_j V_j) per site.
  const oracle::Mat ft = qoca::fourier_unitary(4);
  const oracle::Mat ft2 = oracle::kron(ft, ft);
  const auto eps = qoca::chain_dispersion(4, 1.0);
  oracle::Mat diag = oracle::Mat::Identity(256, 256);
  for (std::size_t k = 0; k < 4; ++k) {
    for (std::size_t off : {0u, 4u}) {
      const oracle::Mat nk = oracle::annihilator(k + 1 + off, 8).adjoint() * oracle::annihilator(k + 1 + off, 8);
      diag = oracle::expm(qoca::cplx(0, theta[k] * eps[k]) * nk) * diag;
    }
  }
  oracle::Mat onsite = oracle::Mat::Identity(256, 256);
  for (std::size_t j = 0; j < 4; ++j) {
    const oracle::Mat zz = oracle::kron_string(std::string(j, 'I') + "Z" + std::string(3, 'I') + "Z" +
                                               std::string(3 - j, 'I'));
    onsite = oracle::expm(qoca::cplx(0, theta[4 + j]) * zz) * onsite;
  }
  const oracle::Vec expect = onsite * ft2.adjoint() * diag * ft2 * v;
  // Identity parts of the terms only contribute a global phase.
  const qoca::cplx overlap = expect.dot(to_vec(s));
  EXPECT_NEAR(std::abs(overlap), 1.0, 1e-10);
}

TEST(Ansatz, FtVhaRefusesOpenLattices) {
  EXPECT_THROW(build(AnsatzKind::FTVHA, k2x3, 1), qoca::ConfigError);
}

TEST(Compile, LoweringExamples) {
  Circuit zz(2);
  zz.begin_layer();
  zz.add(qoca::Gate::pauli_exp(qoca::PauliString::from_letters("ZZ"), 0, 1.0));
  const auto lz = qoca::compile_to_cnot(zz);
  EXPECT_EQ(lz.circuit.dump(), "CNOT 1 2\n1Q RZ 2 slot=0 scale=-2\nCNOT 1 2\n");

  Circuit zzx(3);
  zzx.begin_layer();
  zzx.add(qoca::Gate::pauli_exp(qoca::PauliString::from_letters("ZZX"), 0, 1.0));
  EXPECT_EQ(qoca::compile_to_cnot(zzx).circuit.dump(),
            "1Q H 3\nCNOT 1 2\nCNOT 2 3\n1Q RZ 3 slot=0 scale=-2\nCNOT 2 3\nCNOT 1 2\n1Q H 3\n");
}

TEST(Compile, PreservesSemanticsOnRandomStates) {
  std::mt19937_64 rng(16);
  for (AnsatzKind k : {AnsatzKind::VHA, AnsatzKind::QOCA, AnsatzKind::SQOCA, AnsatzKind::HEA}) {
    const Circuit c = build(k, kPlaquette, 2);
    const auto rep = qoca::compile_to_cnot(c);
    ASSERT_TRUE(rep.complete());
    for (int rep_i = 0; rep_i < 20; ++rep_i) {
      const auto theta = random_params(c.num_params(), rng);
      const oracle::Vec v = oracle::random_state(8, rng);
      Statevector a = from_vec(v), b = from_vec(v);
      qoca::run_circuit(c, a, theta);
      qoca::run_circuit(rep.circuit, b, theta);
      EXPECT_LT((to_vec(a) - to_vec(b)).norm(), 1e-10) << qoca::to_string(k);
    }
  }
}

TEST(Compile, WithoutCancellationIsAlsoEquivalent) {
  std::mt19937_64 rng(17);
  const Circuit c = build(AnsatzKind::QOCA, kRing, 1);
  const auto plain = qoca::compile_to_cnot(c, false);
  const auto theta = random_params(c.num_params(), rng);
  const oracle::Vec v = oracle::random_state(8, rng);
  Statevector a = from_vec(v), b = from_vec(v);
  qoca::run_circuit(c, a, theta);
  qoca::run_circuit(plain.circuit, b, theta);
  EXPECT_LT((to_vec(a) - to_vec(b)).norm(), 1e-10);
}

TEST(Compile, DenseBlocksReportedUnlowered) {
  const Circuit c = build(AnsatzKind::FTVHA, kRing, 1);
  const auto rep = qoca::compile_to_cnot(c);
  EXPECT_FALSE(rep.complete());
  EXPECT_EQ(rep.unlowered, (std::vector<std::string>{"FT", "FTdag"}));
  std::mt19937_64 rng(18);
  const auto theta = random_params(c.num_params(), rng);
  const oracle::Vec v = oracle::random_state(8, rng);
  Statevector a = from_vec(v), b = from_vec(v);
  qoca::run_circuit(c, a, theta);
  qoca::run_circuit(rep.circuit, b, theta);
  EXPECT_LT((to_vec(a) - to_vec(b)).norm(), 1e-10);
}

TEST(Compile, DumpFormat) {
  Circuit c(2);
  c.add(qoca::Gate::one(qoca::OneQubitGate::H, 1));
  c.add(qoca::Gate::cnot(1, 2));
  c.add(qoca::Gate::pauli_exp(qoca::PauliString::from_letters("XY"), 0, 0.5));
  c.add_dense("U", oracle::kron_string("XX"), 1);
  EXPECT_EQ(c.dump(), "1Q H 1\nCNOT 1 2\nPAULIEXP XY slot=0 scale=0.5\nDENSE U\n");
}

}  // namespace

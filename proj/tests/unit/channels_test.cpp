// Copyright 2026 The cmilab Authors
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

#include "cmilab/channels.hpp"
#include "cmilab/zoo.hpp"
#include "test_support.hpp"

namespace cmilab {
namespace {

// Kraus-sum oracle on the full space.
Matrix kraus_oracle(const Matrix &m, const SiteChannel &c, int n) {
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (const Matrix &k : c.kraus_form()) {
        Matrix full = Matrix::Identity(1, 1);
        for (int s = 0; s < n; ++s) full = kron(full, s == c.site() ? k : Matrix::Identity(2, 2));
        out += full * m * full.adjoint();
    }
    return out;
}

std::vector<SiteChannel> sample_channels(int site) {
    return {dephasing(site, 0.3), bit_flip(site, 0.2), depolarizing(site, 0.4), amplitude_damping(site, 0.35),
            transition_bit_flip(site, 0.1), complete_depolarizing(site)};
}

TEST(Channels, KrausFormIsTracePreserving) {
    for (const SiteChannel &c : sample_channels(0)) {
        Matrix sum = Matrix::Zero(2, 2);
        for (const Matrix &k : c.kraus_form()) sum += k.adjoint() * k;
        EXPECT_LT((sum - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Channels, ApplyLayerMatchesKrausOracle) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
        DensityMatrix rho = testing::random_density(3, rng);
        for (const SiteChannel &c : sample_channels(t % 3)) {
            ChannelLayer layer({c});
            Matrix got = apply_layer(rho.matrix(), layer, 3, 2);
            EXPECT_LT((got - kraus_oracle(rho.matrix(), c, 3)).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Channels, UnitalityClassification) {
    EXPECT_TRUE(is_unital(dephasing(0, 0.3)));
    EXPECT_TRUE(is_unital(depolarizing(0, 0.3)));
    EXPECT_FALSE(is_unital(amplitude_damping(0, 0.3)));
    EXPECT_TRUE(is_unital(transition_bit_flip(0, 0.2)));
    RealMatrix skew(2, 2);
    skew << 0.9, 0.3, 0.1, 0.7;
    EXPECT_FALSE(is_unital(SiteChannel::transition(0, skew)));
}

TEST(Channels, CompleteDepolarizingDetection) {
    EXPECT_TRUE(complete_depolarizing(0).is_complete_depolarizing());
    EXPECT_TRUE(depolarizing(0, 1.0).is_complete_depolarizing());
    EXPECT_FALSE(depolarizing(0, 0.5).is_complete_depolarizing());
}

TEST(Channels, PauliProfileMatchesHeisenbergAction) {
    // Dephasing with probability p keeps Z and multiplies X, Y by 1 - 2p.
    auto f = pauli_damping_profile(dephasing(0, 0.3));
    EXPECT_NEAR(f[0], 1.0, 1e-15);
    EXPECT_NEAR(f[1], 0.4, 1e-15);
    EXPECT_NEAR(f[2], 0.4, 1e-15);
    EXPECT_NEAR(f[3], 1.0, 1e-15);
    auto g = pauli_damping_profile(depolarizing(0, 0.3));
    for (int k = 1; k < 4; ++k) EXPECT_NEAR(g[k], 0.7, 1e-14);
    EXPECT_FALSE(is_pauli_diagonal(amplitude_damping(0, 0.3)));
}

TEST(Channels, TransitionMatrixValidation) {
    RealMatrix bad(2, 2);
    bad << 0.5, 0.5, 0.6, 0.5;
    EXPECT_THROW(SiteChannel::transition(0, bad), Error);
    RealMatrix neg(2, 2);
    neg << 1.2, 0.0, -0.2, 1.0;
    EXPECT_THROW(SiteChannel::transition(0, neg), Error);
}

TEST(Channels, DiagonalPreservationAndClassicalTransition) {
    EXPECT_TRUE(bit_flip(0, 0.2).preserves_diagonal());
    EXPECT_TRUE(dephasing(0, 0.2).preserves_diagonal());
    Matrix hadamard(2, 2);
    hadamard << 1, 1, 1, -1;
    EXPECT_FALSE(SiteChannel::kraus(0, {hadamard / std::sqrt(2.0)}).preserves_diagonal());
    RealMatrix t = bit_flip(0, 0.2).classical_transition();
    EXPECT_NEAR(t(0, 0), 0.8, 1e-15);
    EXPECT_NEAR(t(1, 0), 0.2, 1e-15);
}

TEST(Channels, DiagonalLayerMatchesDenseLayer) {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 10; ++t) {
        Distribution d = testing::random_distribution(3, 2, rng);
        ComplexVector diag(8);
        for (int i = 0; i < 8; ++i) diag[i] = d[i];
        ChannelLayer layer({bit_flip(0, 0.3), amplitude_damping(2, 0.4)});
        Matrix dense = apply_layer(Matrix(diag.asDiagonal()), layer, 3, 2);
        ComplexVector fast = apply_layer_diagonal(diag, layer, 3, 2);
        EXPECT_LT((fast - dense.diagonal()).cwiseAbs().maxCoeff(), 1e-14);
    }
}

TEST(Channels, PauliMeasurementRemovesAnticommutingParts) {
    Matrix xx = PauliString::parse("XX").dense();
    Matrix zi = PauliString::parse("ZI").dense();
    Matrix zz = PauliString::parse("ZZ").dense();
    EXPECT_LT(apply_pauli_measurement(zi, PauliString::parse("XX")).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((apply_pauli_measurement(zz, PauliString::parse("XX")) - zz).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((apply_pauli_measurement(xx, PauliString::parse("XX")) - xx).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Channels, ComposeWithTraceReplacesChannels) {
    ChannelLayer layer({bit_flip(1, 0.2)});
    ChannelLayer traced = compose_with_trace(layer, {0, 1}, 2);
    ASSERT_NE(traced.find(0), nullptr);
    ASSERT_NE(traced.find(1), nullptr);
    EXPECT_TRUE(traced.find(0)->is_complete_depolarizing());
    EXPECT_TRUE(traced.find(1)->is_complete_depolarizing());
}

TEST(Channels, PauliChannelsPreserveCommutation) {
    LocalHamiltonian h = cluster_chain(5);
    ChannelLayer layer({depolarizing(1, 0.3), bit_flip(2, 0.5), dephasing(3, 0.1)});
    EXPECT_EQ(is_commutation_preserving(layer, h, 3, 2).verdict, Verdict::kTrue);
}

TEST(Channels, DenseCheckAgreesOnDiagonalModel) {
    // Amplitude damping keeps Z products diagonal, so they still commute.
    LocalHamiltonian h = ising_chain(3);
    ChannelLayer layer({amplitude_damping(1, 0.4)});
    EXPECT_EQ(is_commutation_preserving(layer, h, 3, 2).verdict, Verdict::kTrue);
}

TEST(Channels, AmplitudeDampingBreaksBellChainCommutation) {
    // On site 0, ZZ picks up an I Z piece that fails to commute with XX.
    LocalHamiltonian h = bell_chain(1);
    ChannelLayer layer({amplitude_damping(0, 0.4)});
    CommutationCheck c = is_commutation_preserving(layer, h, 3, 2);
    EXPECT_EQ(c.verdict, Verdict::kFalse) << c.detail;
}

TEST(Channels, NonCommutingHamiltonianIsRejected) {
    SiteGraph g(2, 2);
    LocalHamiltonian bad(g, {HamiltonianTerm::pauli(PauliString::parse("ZZ"), -1),
                             HamiltonianTerm::pauli(PauliString::parse("XI"), 0.5)});
    EXPECT_THROW(is_commutation_preserving(ChannelLayer(), bad, 2, 2), Error);
}

TEST(Channels, LayerPermutationMovesSites) {
    ChannelLayer layer({bit_flip(0, 0.1)}, {0, 1});
    ChannelLayer p = layer.permuted({2, 0, 1});
    EXPECT_NE(p.find(2), nullptr);
    EXPECT_EQ(p.find(0), nullptr);
    EXPECT_EQ(p.region(), (SiteSet{0, 2}));
}

}  // namespace
}  // namespace cmilab

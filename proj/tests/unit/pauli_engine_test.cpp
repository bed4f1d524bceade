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

#include <cmath>
#include <limits>
#include <random>

#include "cmilab/dense.hpp"
#include "cmilab/pauli_engine.hpp"
#include "cmilab/zoo.hpp"
#include "test_support.hpp"

namespace cmilab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(PauliEngine, SingleTermExpansion) {
    // exp(-b l Z) / (2 cosh b l) = (I - tanh(b l) Z) / 2
    SiteGraph g(1, 2);
    LocalHamiltonian h(g, {HamiltonianTerm::pauli(PauliString::parse("Z"), 0.5)});
    PauliExpansion e = expand_gibbs(h, 0.8);
    EXPECT_NEAR(e.coefficient(PauliString::parse("Z")), -std::tanh(0.4), 1e-15);
    EXPECT_NEAR(e.coefficient(PauliString::parse("-Z")), std::tanh(0.4), 1e-15);
    EXPECT_EQ(e.coefficient(PauliString::parse("I")), 1.0);
    EXPECT_NEAR(e.log_scale(), std::log(std::cosh(0.4)), 1e-15);
}

TEST(PauliEngine, ToDenseMatchesDenseEngine) {
    std::mt19937_64 rng(61);
    for (int t = 0; t < 20; ++t) {
        const int n = 2 + t % 5;
        LocalHamiltonian h = random_stabilizer_model(n, n + 1, 3, rng);
        const double beta = 0.2 + 0.15 * t;
        EXPECT_LT((expand_gibbs(h, beta).to_dense() - gibbs_state(h, beta).matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(PauliEngine, ZeroTemperatureMatchesDense) {
    for (int n = 2; n <= 6; ++n) {
        LocalHamiltonian h = cluster_chain(n);
        EXPECT_LT((expand_gibbs(h, kInf).to_dense() - gibbs_state(h, kInf).matrix()).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(PauliEngine, LayerMatchesDenseLayer) {
    std::mt19937_64 rng(62);
    for (int t = 0; t < 20; ++t) {
        const int n = 3 + t % 4;
        LocalHamiltonian h = random_stabilizer_model(n, n, 3, rng);
        SiteSet all(n);
        for (int s = 0; s < n; ++s) all[s] = s;
        ChannelLayer layer = random_pauli_layer(all, rng);
        const double beta = 0.5;
        Matrix a = apply_pauli_layer(expand_gibbs(h, beta), layer).to_dense();
        Matrix b = apply_layer(gibbs_state(h, beta), layer).matrix();
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(PauliEngine, MeasurementsMatchDense) {
    ModelInstance inst = builtin_instance("bell_chain_n2");
    for (double beta : {0.3, kInf}) {
        Matrix a = apply_pauli_layer(expand_gibbs(inst.h, beta), inst.layer).to_dense();
        Matrix b = apply_layer(gibbs_state(inst.h, beta), inst.layer).matrix();
        EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(PauliEngine, NonPauliChannelIsRejected) {
    ChannelLayer layer({amplitude_damping(0, 0.3)});
    EXPECT_THROW(apply_pauli_layer(expand_gibbs(ising_chain(3), 0.4), layer), Error);
}

TEST(PauliEngine, RestrictedGroupRank) {
    // The zero-temperature cluster chain group restricted to the middle of 5 sites.
    PauliExpansion e = expand_gibbs(cluster_chain(5), kInf);
    EXPECT_EQ(restricted_group(e, {0, 1, 2, 3, 4}).rank(), 5u);
    EXPECT_EQ(restricted_group(e, {1, 2, 3}).rank(), 1u);
    EXPECT_EQ(restricted_group(e, {2}).rank(), 0u);
}

TEST(PauliEngine, SpectrumSumsToOne) {
    std::mt19937_64 rng(63);
    for (int t = 0; t < 10; ++t) {
        LocalHamiltonian h = random_stabilizer_model(5, 6, 3, rng);
        PauliExpansion e = expand_gibbs(h, 0.7);
        for (const SiteSet &s : testing::all_subsets(5)) {
            MarginalSpectrum sp = marginal_spectrum(e, s);
            double total = 0;
            for (double v : sp.eigenvalues) {
                EXPECT_GE(v, -1e-12);
                total += v * sp.degeneracy;
            }
            EXPECT_NEAR(total, 1.0, 1e-12);
        }
    }
}

TEST(PauliEngine, MarginalEntropiesMatchDenseOnAllSubsets) {
    std::mt19937_64 rng(64);
    for (int t = 0; t < 20; ++t) {
        const int n = 3 + t % 6;
        LocalHamiltonian h = random_stabilizer_model(n, n + 2, 3, rng);
        SiteSet all(n);
        for (int s = 0; s < n; ++s) all[s] = s;
        ChannelLayer layer = random_pauli_layer(all, rng);
        const double beta = 0.3 + 0.1 * (t % 7);
        PauliExpansion e = apply_pauli_layer(expand_gibbs(h, beta), layer);
        DensityMatrix rho = apply_layer(gibbs_state(h, beta), layer);
        for (const SiteSet &s : testing::all_subsets(n)) {
            EXPECT_NEAR(marginal_entropy(e, s), von_neumann_entropy(rho, s), 1e-10);
        }
    }
}

TEST(PauliEngine, CmiMatchesDense) {
    for (int d = 1; d <= 3; ++d) {
        ModelInstance inst = family_instance("cluster_chain", d, ChannelSpec{"depolarizing", 0.4});
        for (double beta : {0.2, 1.0}) {
            PauliExpansion e = apply_pauli_layer(expand_gibbs(inst.h, beta), inst.layer);
            const double dense = quantum_cmi(apply_layer(gibbs_state(inst.h, beta), inst.layer), inst.partition);
            EXPECT_NEAR(pauli_cmi(e, inst.partition), dense, 1e-11);
        }
    }
}

TEST(PauliEngine, RequiresCommutingPauliModel) {
    SiteGraph g(2, 2);
    LocalHamiltonian bad(g, {HamiltonianTerm::pauli(PauliString::parse("ZZ"), -1),
                             HamiltonianTerm::pauli(PauliString::parse("XI"), 0.5)});
    EXPECT_THROW(expand_gibbs(bad, 0.5), Error);
    EXPECT_THROW(expand_gibbs(parity_chain(2), 0.5), Error);
}

TEST(PauliEngine, LargeChainsStayExact) {
    // Zero-temperature Bell chains with 16 qubits: one Bell pair of entropy across the cut per side.
    ModelInstance inst = builtin_instance("bell_chain_n7");
    PauliExpansion e = apply_pauli_layer(expand_gibbs(inst.h, kInf), inst.layer);
    EXPECT_NEAR(pauli_cmi(e, inst.partition), 2.0, 1e-12);
}

}  // namespace
}  // namespace cmilab

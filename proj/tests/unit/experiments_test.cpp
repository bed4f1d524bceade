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

#include "cmilab/experiments.hpp"
#include "cmilab/zoo.hpp"

namespace cmilab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::pair<double, double>> synthetic(double xi, double amp, int count) {
    std::vector<std::pair<double, double>> pts;
    for (int d = 1; d <= count; ++d) pts.emplace_back(d, amp * std::exp(-d / xi));
    return pts;
}

TEST(Experiments, FitRecoversMarkovLength) {
    MarkovLengthFit f = fit_markov_length(synthetic(0.7, 0.3, 6));
    EXPECT_NEAR(f.xi, 0.7, 1e-12);
    EXPECT_NEAR(f.r_squared, 1.0, 1e-12);
    EXPECT_FALSE(f.divergent);
    EXPECT_EQ(f.used, 6u);
}

TEST(Experiments, FitIsScaleEquivariant) {
    std::mt19937_64 rng(81);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    for (int t = 0; t < 50; ++t) {
        auto pts = synthetic(0.5 + t * 0.05, 1e-2, 6);
        for (auto &p : pts) p.second *= u(rng);
        auto scaled = pts;
        const double c = std::exp(u(rng) * 3);
        for (auto &p : scaled) p.second *= c;
        MarkovLengthFit a = fit_markov_length(pts), b = fit_markov_length(scaled);
        EXPECT_NEAR(a.xi, b.xi, 1e-9 * a.xi);
        EXPECT_NEAR(b.intercept - a.intercept, std::log(c), 1e-9);
    }
}

TEST(Experiments, FitCensorsBelowFloorAndDetectsDivergence) {
    auto pts = synthetic(0.2, 1.0, 8);
    MarkovLengthFit f = fit_markov_length(pts);
    EXPECT_GT(f.censored, 0u);
    EXPECT_EQ(f.used + f.censored, 8u);
    EXPECT_THROW(fit_markov_length({{1, 0.1}, {2, 0.0}, {3, 0.0}}), Error);
    MarkovLengthFit flat = fit_markov_length({{1, 1.0}, {2, 1.0}, {3, 1.0}});
    EXPECT_TRUE(flat.divergent);
    EXPECT_TRUE(std::isinf(flat.xi));
}

TEST(Experiments, BoundCalculator) {
    EXPECT_EQ(theorem3_bound(1, 0.0), 2.0);
    EXPECT_EQ(theorem3_bound(3, 0.0), 6.0);
    for (int k = 1; k <= 4; ++k) {
        for (double q : {1e-12, 1e-8, 1e-4, 1e-2, 0.5}) EXPECT_LT(theorem3_bound(k, q), 2.0 * k);
    }
    EXPECT_EQ(theorem3_bound(1, 0.5), 0.0);
    EXPECT_THROW(theorem3_bound(0, 0.1), Error);
    EXPECT_THROW(theorem3_bound(1, 1.5), Error);
}

TEST(Experiments, BinaryEntropy) {
    EXPECT_EQ(binary_entropy(0.0), 0.0);
    EXPECT_DOUBLE_EQ(binary_entropy(0.5), 1.0);
    EXPECT_NEAR(binary_entropy(0.11), binary_entropy(0.89), 1e-15);
}

TEST(Experiments, EnginesAgreeOnIsingChain) {
    for (int d = 1; d <= 4; ++d) {
        ModelInstance inst = family_instance("ising_chain", d, ChannelSpec{"bitflip", 0.3});
        for (double beta : {0.2, 0.9}) {
            const double c = instance_cmi(inst, beta, Engine::kClassical);
            EXPECT_NEAR(instance_cmi(inst, beta, Engine::kDense), c, 1e-11);
            EXPECT_NEAR(instance_cmi(inst, beta, Engine::kPauli), c, 1e-11);
        }
    }
}

TEST(Experiments, InfiniteTemperatureHasNoCmi) {
    for (const char *family : {"ising_chain", "cluster_chain"}) {
        DecayCurve c = decay_curve(family, {1, 2, 3}, {0.0}, Engine::kDense);
        for (const auto &p : c.points) EXPECT_LE(p.cmi, 1e-10);
    }
}

TEST(Experiments, DecayCurveIsThreadIndependent) {
    auto a = decay_curve("ising_chain", {1, 2, 3, 4}, {0.1, 0.5}, Engine::kClassical, ChannelSpec{"bitflip", 0.2}, 1);
    auto b = decay_curve("ising_chain", {4, 3, 2, 1}, {0.1, 0.5}, Engine::kClassical, ChannelSpec{"bitflip", 0.2}, 4);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
        EXPECT_EQ(a.points[i].distance, b.points[i].distance);
        EXPECT_EQ(a.points[i].cmi, b.points[i].cmi);
    }
    EXPECT_THROW(decay_curve("ising_chain", {1, 1}, {0.1}, Engine::kClassical), Error);
}

TEST(Experiments, MarkovLengthGrowsWithBeta) {
    const std::vector<double> betas = {0.05, 0.1, 0.2};
    auto c = decay_curve("ising_chain", {1, 2, 3, 4, 5, 6}, betas, Engine::kClassical, ChannelSpec{"bitflip", 0.2}, 2);
    double prev = 0;
    for (double b : betas) {
        MarkovLengthFit f = fit_markov_length(c.series(b));
        EXPECT_GT(f.xi, prev);
        EXPECT_GE(f.r_squared, 0.98);
        prev = f.xi;
    }
}

TEST(Experiments, ClusterEquivalenceOnBothRoutes) {
    for (double beta : {0.2, 1.0}) {
        EXPECT_TRUE(cluster_gibbs_equivalence(5, beta, Engine::kDense).pass);
        EXPECT_TRUE(cluster_gibbs_equivalence(9, beta, Engine::kPauli).pass);
    }
    EquivalenceReport r = cluster_gibbs_equivalence(4, 0.5, Engine::kDense);
    EXPECT_NEAR(r.p, 1.0 / (std::exp(1.0) + 1.0), 1e-15);
    EXPECT_THROW(cluster_gibbs_equivalence(4, 0.5, Engine::kClassical), Error);
}

TEST(Experiments, LowTemperatureDemos) {
    auto parity = low_temperature_chain_demo("parity_chain", {2, 3, 4}, {kInf});
    for (const auto &p : parity.points) EXPECT_NEAR(p.cmi, 1.0, 1e-9);
    auto bell = low_temperature_chain_demo("bell_chain", {2, 3, 4}, {kInf});
    for (const auto &p : bell.points) EXPECT_NEAR(p.cmi, 2.0, 1e-9);
    EXPECT_EQ(bell.engine, "pauli");
    EXPECT_THROW(low_temperature_chain_demo("ising_chain", {1}, {kInf}), Error);
}

TEST(Experiments, ZooIdsAndDistances) {
    EXPECT_TRUE(is_builtin_id("ising_chain_n6"));
    EXPECT_TRUE(is_builtin_id("ising_lattice_2x3"));
    EXPECT_FALSE(is_builtin_id("ising_chain"));
    EXPECT_FALSE(is_builtin_id("potts_chain_n3"));
    for (int d = 1; d <= 5; ++d) {
        for (const char *family : {"ising_chain", "cluster_chain", "parity_chain"}) {
            ModelInstance inst = family_instance(family, d);
            EXPECT_EQ(graph_distance(inst.h, inst.partition).value(), static_cast<std::size_t>(d)) << family;
        }
    }
    ModelInstance p = builtin_instance("parity_chain_n3");
    EXPECT_EQ(p.h.n_sites(), 5);
    EXPECT_EQ(p.h.local_dim(), 4);
    ModelInstance b = builtin_instance("bell_chain_n2");
    EXPECT_EQ(b.h.n_sites(), 6);
    EXPECT_EQ(b.layer.pauli_measurements().size(), 4u);
    ModelInstance l = builtin_instance("ising_lattice_2x3");
    EXPECT_EQ(l.partition.a, (SiteSet{0, 3}));
    EXPECT_EQ(l.partition.c, (SiteSet{2, 5}));
}

TEST(Experiments, RandomStabilizerModelsCommute) {
    std::mt19937_64 rng(82);
    for (int t = 0; t < 30; ++t) {
        LocalHamiltonian h = random_stabilizer_model(3 + t % 5, 6, 3, rng);
        EXPECT_TRUE(verify_commuting(h));
        EXPECT_TRUE(h.all_pauli());
        for (const auto &term : h.terms()) EXPECT_LE(std::abs(term.lambda()), 1.0);
    }
}

}  // namespace
}  // namespace cmilab

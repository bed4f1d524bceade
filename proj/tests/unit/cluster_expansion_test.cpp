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
#include <numbers>

#include "cmilab/cluster_expansion.hpp"
#include "cmilab/dense.hpp"
#include "cmilab/zoo.hpp"

namespace cmilab {
namespace {

std::vector<double> lambdas_of(const LocalHamiltonian &h) {
    std::vector<double> out;
    for (const auto &t : h.terms()) out.push_back(t.lambda());
    return out;
}

TEST(ClusterExpansion, CriticalBeta) {
    const double e = std::numbers::e;
    EXPECT_DOUBLE_EQ(beta_critical(1), 1.0 / (4 * e));
    EXPECT_DOUBLE_EQ(beta_critical(2), 1.0 / (6 * e * (1 + e)));
    EXPECT_THROW(beta_critical(0), Error);
}

TEST(ClusterExpansion, TruncatedProduct) {
    // (1 + x0)(1 - x0) = 1 - x0^2, truncated at degree 1 leaves 1.
    TruncatedSeries a = TruncatedSeries::identity(1, 2, 1, false);
    a.add(Cluster::from_terms({0}), Matrix::Ones(1, 1));
    TruncatedSeries b = TruncatedSeries::identity(1, 2, 1, false);
    b.add(Cluster::from_terms({0}), -Matrix::Ones(1, 1));
    TruncatedSeries p = a * b;
    EXPECT_NEAR(p.coefficient(Cluster()).real()(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(p.coefficient_norm(Cluster::from_terms({0})), 0.0, 1e-15);
    EXPECT_NEAR(p.coefficient(Cluster::from_terms({0, 0})).real()(0, 0), -1.0, 1e-15);
    TruncatedSeries low(1, 1, 1, false);
    low.add(Cluster::from_terms({0, 0}), Matrix::Ones(1, 1));
    EXPECT_TRUE(low.coefficients().empty());
}

TEST(ClusterExpansion, SeriesEvaluatesToChannelledExponential) {
    const double beta = 0.05;
    ModelInstance inst = family_instance("cluster_chain", 2, ChannelSpec{"depolarizing", 0.3});
    TruncatedSeries s = series_of_channelled_gibbs(inst.h, beta, inst.layer, 6);
    EXPECT_FALSE(s.diagonal());
    Matrix exact = apply_layer(hermitian_exp(-beta * inst.h.dense()), inst.layer, 4, 2);
    EXPECT_LT((s.evaluate(lambdas_of(inst.h)) - exact).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ClusterExpansion, DiagonalModeMatchesExponential) {
    const double beta = 0.05;
    ModelInstance inst = family_instance("ising_chain", 4, ChannelSpec{"bitflip", 0.2});
    TruncatedSeries s = series_of_channelled_gibbs(inst.h, beta, inst.layer, 6);
    EXPECT_TRUE(s.diagonal());
    Matrix exact = apply_layer(hermitian_exp(-beta * inst.h.dense()), inst.layer, 5, 2);
    EXPECT_LT((s.evaluate(lambdas_of(inst.h)) - exact).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ClusterExpansion, CoefficientsMatchDirectProducts) {
    // Coefficient of x^e is (-beta)^{|e|} / e! E[prod h^e].
    const double beta = 0.3;
    ModelInstance inst = family_instance("cluster_chain", 2, ChannelSpec{"bitflip", 0.25});
    TruncatedSeries s = series_of_channelled_gibbs(inst.h, beta, inst.layer, 4);
    for (const Cluster &w : {Cluster::from_terms({0}), Cluster::from_terms({1, 1}), Cluster::from_terms({0, 2, 2}),
                             Cluster::from_terms({1, 2, 3, 3})}) {
        Matrix prod = Matrix::Identity(16, 16);
        for (int t : w.expanded()) prod = prod * inst.h.term(t).pauli_op().dense();
        Matrix expect = std::pow(-beta, w.weight()) / w.factorial() * apply_layer(prod, inst.layer, 4, 2);
        EXPECT_LT((s.coefficient(w) - expect).cwiseAbs().maxCoeff(), 1e-14) << w.str();
    }
}

TEST(ClusterExpansion, LogAndExpAreInverse) {
    ModelInstance inst = family_instance("cluster_chain", 2, ChannelSpec{"dephasing", 0.2});
    TruncatedSeries s = series_of_channelled_gibbs(inst.h, 0.2, inst.layer, 4);
    TruncatedSeries back = exp_series(log_series(s));
    for (const auto &[m, c] : s.coefficients()) {
        EXPECT_LT((back.coefficient(m) - s.coefficient(m)).cwiseAbs().maxCoeff(), 1e-13) << m.str();
    }
    EXPECT_THROW(log_series(TruncatedSeries(inst.h.size(), 2, 16, false)), Error);
}

TEST(ClusterExpansion, DisconnectedLogDerivativesVanish) {
    for (const char *id : {"ising_chain_n5", "cluster_chain_n5"}) {
        ModelInstance inst = builtin_instance(id, ChannelSpec{"dephasing", 0.3});
        DualInteractionGraph g = build_dual_graph(inst.h);
        TruncatedSeries log = log_series(series_of_channelled_gibbs(inst.h, 0.1, inst.layer, 4));
        for (const Cluster &w : enumerate_all_clusters(inst.h.size(), 4)) {
            if (!is_connected(w, g)) EXPECT_LE(cluster_derivative(log, w).cwiseAbs().maxCoeff(), 1e-9) << w.str();
        }
    }
}

TEST(ClusterExpansion, CmiOperatorSeriesMatchesDenseOperator) {
    const double beta = 0.05;
    ModelInstance inst = family_instance("cluster_chain", 2, ChannelSpec{"depolarizing", 0.5});
    TruncatedSeries s = cmi_operator_series(inst.h, beta, inst.layer, inst.partition, 7);
    CmiOperator op = cmi_operator(inst.h, beta, inst.layer, inst.partition);
    EXPECT_LT((s.evaluate(lambdas_of(inst.h)) - op.matrix).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(ClusterExpansion, CmiOperatorSupportedOnConnectingClusters) {
    ModelInstance inst = builtin_instance("ising_lattice_2x3", ChannelSpec{"bitflip", 0.3});
    DualInteractionGraph g = build_dual_graph(inst.h);
    TruncatedSeries s = cmi_operator_series(inst.h, 0.1, inst.layer, inst.partition, 4);
    for (const auto &[w, c] : s.coefficients()) {
        if (!connects(w, g, inst.partition.a, inst.partition.c)) EXPECT_LE(s.coefficient_norm(w), 1e-9) << w.str();
    }
}

TEST(ClusterExpansion, CertificatePassesAtSmallBeta) {
    ModelInstance inst = builtin_instance("ising_chain_n5", ChannelSpec{"dephasing", 0.3});
    CertificateReport r = derivative_norm_certificate(inst.h, 0.05, inst.layer, 4);
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.degree, 2);
    EXPECT_EQ(r.commutation_verdict, "true");
    EXPECT_LE(r.max_vanishing_norm, 1e-9);
    EXPECT_FALSE(r.entries.empty());
    for (const auto &e : r.entries) EXPECT_LE(e.norm, e.bound * (1 + 1e-9) + 1e-12);
}

TEST(ClusterExpansion, PinnedCheckPassesForAllOutcomes) {
    LocalHamiltonian h = ising_chain(4);
    ChannelLayer layer({transition_bit_flip(1, 0.2), transition_bit_flip(2, 0.2)}, {1, 2});
    for (int y = 0; y < 4; ++y) {
        CertificateReport r = pinned_series_check(h, 0.05, layer, {y >> 1, y & 1}, 4);
        EXPECT_TRUE(r.passed());
        EXPECT_LE(r.constant_term_error, 1e-12);
    }
}

TEST(ClusterExpansion, PreconditionsAreChecked) {
    LocalHamiltonian h = ising_chain(3);
    EXPECT_THROW(series_of_channelled_gibbs(h, 0.1, ChannelLayer({amplitude_damping(1, 0.3)}), 3), Error);
    EXPECT_THROW(series_of_channelled_gibbs(h, std::numeric_limits<double>::infinity(), ChannelLayer(), 3), Error);
    SiteGraph g(2, 2);
    LocalHamiltonian bad(g, {HamiltonianTerm::pauli(PauliString::parse("ZZ"), -1),
                             HamiltonianTerm::pauli(PauliString::parse("XI"), 0.5)});
    EXPECT_THROW(series_of_channelled_gibbs(bad, 0.1, ChannelLayer(), 3), Error);
    // A layer that breaks commutation is refused by the certificate.
    LocalHamiltonian bell = bell_chain(1);
    EXPECT_THROW(derivative_norm_certificate(bell, 0.1, ChannelLayer({amplitude_damping(0, 0.4)}), 2), Error);
}

}  // namespace
}  // namespace cmilab

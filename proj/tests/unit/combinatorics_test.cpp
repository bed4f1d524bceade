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

#include "cmilab/cluster_expansion.hpp"
#include "cmilab/combinatorics.hpp"
#include "cmilab/zoo.hpp"

namespace cmilab {
namespace {

SimpleGraph path(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return SimpleGraph(n, e);
}

SimpleGraph cycle(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return SimpleGraph(n, e);
}

SimpleGraph complete(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return SimpleGraph(n, e);
}

BigInt eval(const std::vector<BigInt> &coeffs, long long x) {
    BigInt v = 0, p = 1;
    for (const BigInt &c : coeffs) {
        v += c * p;
        p *= x;
    }
    return v;
}

long long brute_colorings(const SimpleGraph &g, int k) {
    const int n = g.num_nodes();
    std::vector<int> c(n, 0);
    long long count = 0;
    while (true) {
        bool ok = true;
        for (auto [u, v] : g.edges()) ok = ok && c[u] != c[v];
        count += ok;
        int i = n - 1;
        while (i >= 0 && ++c[i] == k) c[i--] = 0;
        if (i < 0) break;
    }
    return count;
}

TEST(Combinatorics, ChromaticPolynomialsOfStandardFamilies) {
    for (int n = 1; n <= 7; ++n) {
        for (long long x = 0; x <= 5; ++x) {
            BigInt p = x;
            for (int i = 1; i < n; ++i) p *= (x - 1);
            EXPECT_EQ(eval(chromatic_polynomial(path(n)), x), p);
            BigInt k = 1;
            for (int i = 0; i < n; ++i) k *= (x - i);
            EXPECT_EQ(eval(chromatic_polynomial(complete(n)), x), k);
            if (n >= 3) {
                BigInt c = 1;
                for (int i = 0; i < n; ++i) c *= (x - 1);
                c += (n % 2 ? -1 : 1) * (x - 1);
                EXPECT_EQ(eval(chromatic_polynomial(cycle(n)), x), c);
            }
        }
    }
}

TEST(Combinatorics, ChromaticCountMatchesBruteForceOnRandomGraphs) {
    std::mt19937_64 rng(71);
    std::bernoulli_distribution coin(0.4);
    for (int t = 0; t < 60; ++t) {
        const int n = 2 + t % 5;
        std::vector<std::pair<int, int>> e;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (coin(rng)) e.emplace_back(i, j);
        SimpleGraph g(n, e);
        for (int k = 1; k <= 4; ++k) EXPECT_EQ(chromatic_count(g, k), BigInt(brute_colorings(g, k)));
    }
}

TEST(Combinatorics, ExactColoringsByInclusionExclusion) {
    // chi*(n, K_n) = n!, chi*(k, edgeless on n) = Stirling(n, k) k!.
    EXPECT_EQ(chi_star(4, complete(4)), BigInt(24));
    EXPECT_EQ(chi_star(3, complete(4)), BigInt(0));
    EXPECT_EQ(chi_star(2, SimpleGraph(3, {})), BigInt(6));
    EXPECT_EQ(chi_star(2, path(4)), BigInt(2));
}

TEST(Combinatorics, ColoringCoefficients) {
    EXPECT_EQ(coloring_coefficient(SimpleGraph(1, {})), BigRational(1));
    // K2: chi*(2) = 2 gives -2/2.
    EXPECT_EQ(coloring_coefficient(complete(2)), BigRational(-1));
    // K3: chi*(3) = 6 gives +6/3.
    EXPECT_EQ(coloring_coefficient(complete(3)), BigRational(2));
    EXPECT_EQ(coloring_coefficient(SimpleGraph(2, {})), BigRational(0));
}

TEST(Combinatorics, SpanningTreeCounts) {
    for (int n = 2; n <= 8; ++n) {
        BigInt cayley = 1;
        for (int i = 0; i < n - 2; ++i) cayley *= n;
        EXPECT_EQ(spanning_tree_count(complete(n)), cayley);
        EXPECT_EQ(spanning_tree_count(path(n)), BigInt(1));
        if (n >= 3) EXPECT_EQ(spanning_tree_count(cycle(n)), BigInt(n));
    }
    EXPECT_EQ(spanning_tree_count(SimpleGraph(3, {{0, 1}})), BigInt(0));
}

TEST(Combinatorics, ConnectedPartitionCounts) {
    EXPECT_EQ(enumerate_connected_partitions(path(3)).size(), 4u);
    // On a complete graph every set partition is connected: Bell numbers.
    const std::size_t bell[] = {1, 1, 2, 5, 15, 52, 203};
    for (int n = 1; n <= 6; ++n) EXPECT_EQ(enumerate_connected_partitions(complete(n)).size(), bell[n]);
    // On a path with n nodes: 2^{n-1} ways to cut.
    EXPECT_EQ(enumerate_connected_partitions(path(6)).size(), 32u);
}

TEST(Combinatorics, BlockGraphJoinsAdjacentBlocks) {
    auto parts = enumerate_connected_partitions(path(4));
    for (const auto &p : parts) {
        SimpleGraph b = block_graph(path(4), p);
        EXPECT_EQ(b.num_nodes(), static_cast<int>(p.blocks.size()));
        EXPECT_EQ(b.num_edges(), p.blocks.size() - 1);
    }
}

TEST(Combinatorics, InteractionGraphOfRepeatedTerms) {
    DualInteractionGraph g = build_dual_graph(ising_chain(5));
    SimpleGraph gra = interaction_graph_of_cluster(Cluster::from_terms({0, 0, 2}), g);
    EXPECT_EQ(gra.num_nodes(), 3);
    EXPECT_TRUE(gra.adjacent(0, 1));
    EXPECT_FALSE(gra.adjacent(0, 2));
}

TEST(Combinatorics, EstimateChainHoldsOnChainAndLattice) {
    for (const LocalHamiltonian &h : {ising_chain(7), ising_lattice(2, 3)}) {
        DualInteractionGraph g = build_dual_graph(h);
        for (const Cluster &w : enumerate_connected_clusters(g, 4)) {
            CombinatorialEstimate e = verify_combinatorial_estimate(w, g);
            EXPECT_TRUE(e.pass) << w.str();
            EXPECT_LE(e.left, BigRational(e.tree_term));
            EXPECT_LE(e.tree_term, e.degree_term);
        }
    }
}

TEST(Combinatorics, ReconstructionEqualsLogDerivative) {
    for (const char *id : {"ising_chain_n5", "cluster_chain_n4"}) {
        ModelInstance inst = builtin_instance(id, ChannelSpec{"dephasing", 0.25});
        DualInteractionGraph g = build_dual_graph(inst.h);
        TruncatedSeries s = series_of_channelled_gibbs(inst.h, 0.3, inst.layer, 4);
        TruncatedSeries log = log_series(s);
        for (const Cluster &w : enumerate_connected_clusters(g, 4)) {
            Matrix r = coloring_reconstruction(s, w, g);
            EXPECT_LT((r - cluster_derivative(log, w)).cwiseAbs().maxCoeff(), 1e-12) << id << " " << w.str();
        }
    }
}

TEST(Combinatorics, AnchoredCountsRespectBound) {
    for (const LocalHamiltonian &h : {ising_chain(8), ising_lattice(3, 3)}) {
        for (const ClusterCount &c : anchored_cluster_counts(build_dual_graph(h), h.n_sites(), 5)) {
            EXPECT_TRUE(c.pass) << c.site << " " << c.weight;
        }
    }
    // A chain end has exactly one anchored weight-1 cluster.
    auto counts = anchored_cluster_counts(build_dual_graph(ising_chain(5)), 5, 1);
    EXPECT_EQ(counts[0].count, 1u);
}

}  // namespace
}  // namespace cmilab

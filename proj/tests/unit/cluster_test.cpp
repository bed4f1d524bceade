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

#include <set>

#include "cmilab/cluster.hpp"
#include "cmilab/zoo.hpp"

namespace cmilab {
namespace {

TEST(Cluster, ConstructionMergesDuplicates) {
    Cluster w({{2, 1}, {0, 2}, {2, 1}, {5, 0}});
    EXPECT_EQ(w.entries(), (std::vector<std::pair<int, int>>{{0, 2}, {2, 2}}));
    EXPECT_EQ(w.weight(), 4);
    EXPECT_EQ(w.factorial(), 4.0);
    EXPECT_EQ(w.multiplicity(2), 2);
    EXPECT_EQ(w.multiplicity(1), 0);
    EXPECT_EQ(w.terms(), (std::vector<int>{0, 2}));
    EXPECT_EQ(w.expanded(), (std::vector<int>{0, 0, 2, 2}));
    EXPECT_EQ(w.str(), "{0^2,2^2}");
    EXPECT_EQ(Cluster::from_terms({2, 0, 2, 0}), w);
}

TEST(Cluster, Arithmetic) {
    Cluster a = Cluster::from_terms({0, 1});
    Cluster b = Cluster::from_terms({1, 3});
    Cluster s = a + b;
    EXPECT_EQ(s, Cluster::from_terms({0, 1, 1, 3}));
    EXPECT_TRUE(s.contains(a));
    EXPECT_EQ(s - a, b);
    EXPECT_THROW(a - b, Error);
    EXPECT_TRUE((a - a).empty());
}

TEST(Cluster, ConnectivityOnChain) {
    DualInteractionGraph g = build_dual_graph(ising_chain(6));
    EXPECT_TRUE(is_connected(Cluster::from_terms({1, 2, 2}), g));
    EXPECT_FALSE(is_connected(Cluster::from_terms({0, 2}), g));
    EXPECT_FALSE(is_connected(Cluster(), g));
    auto parts = connected_components(Cluster::from_terms({4, 0, 0, 1, 3}), g);
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0], Cluster::from_terms({0, 0, 1}));
    EXPECT_EQ(parts[1], Cluster::from_terms({3, 4}));
    EXPECT_TRUE(connects(Cluster::from_terms({0, 1, 2, 3, 4}), g, {0}, {5}));
    EXPECT_FALSE(connects(Cluster::from_terms({0, 1, 2, 3}), g, {0}, {5}));
    EXPECT_TRUE(touches(Cluster::from_terms({4}), g, {5}));
}

// Brute force: filter all multisets by connectivity.
TEST(Cluster, ConnectedEnumerationMatchesFilteredBruteForce) {
    for (const LocalHamiltonian &h : {ising_chain(6), ising_lattice(2, 3), cluster_chain(5)}) {
        DualInteractionGraph g = build_dual_graph(h);
        for (int w = 1; w <= 4; ++w) {
            std::vector<Cluster> expected;
            for (const Cluster &c : enumerate_all_clusters(h.size(), w)) {
                if (is_connected(c, g)) expected.push_back(c);
            }
            EXPECT_EQ(enumerate_connected_clusters(g, w), expected);
        }
    }
}

TEST(Cluster, AllClustersCountIsMultisetCoefficient) {
    // Multisets of size 1..w from m terms: sum_k C(m + k - 1, k).
    auto binom = [](int n, int k) {
        double r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return static_cast<std::size_t>(std::llround(r));
    };
    for (int m = 1; m <= 6; ++m) {
        for (int w = 1; w <= 4; ++w) {
            std::size_t expected = 0;
            for (int k = 1; k <= w; ++k) expected += binom(m + k - 1, k);
            EXPECT_EQ(enumerate_all_clusters(m, w).size(), expected);
        }
    }
}

TEST(Cluster, EnumerationIsSortedAndUnique) {
    DualInteractionGraph g = build_dual_graph(ising_lattice(3, 3));
    auto all = enumerate_connected_clusters(g, 4);
    std::set<Cluster> unique(all.begin(), all.end());
    EXPECT_EQ(unique.size(), all.size());
    for (std::size_t i = 1; i < all.size(); ++i) {
        EXPECT_LE(all[i - 1].weight(), all[i].weight());
    }
}

TEST(Cluster, AnchorKeepsOnlyTouchingClusters) {
    DualInteractionGraph g = build_dual_graph(ising_chain(7));
    for (const Cluster &c : enumerate_connected_clusters(g, 4, SiteSet{0})) {
        EXPECT_TRUE(touches(c, g, {0}));
    }
    // On a path the connected term sets are intervals.
    EXPECT_EQ(enumerate_connected_term_sets(g, 3).size(), 6u + 5u + 4u);
}

TEST(Cluster, WeightCapIsEnforced) {
    DualInteractionGraph g = build_dual_graph(ising_chain(4));
    EXPECT_THROW(enumerate_connected_clusters(g, 20), CapError);
}

}  // namespace
}  // namespace cmilab

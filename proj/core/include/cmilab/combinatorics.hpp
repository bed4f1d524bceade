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

#ifndef CMILAB_COMBINATORICS_HPP
#define CMILAB_COMBINATORICS_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cmilab/cluster.hpp"
#include "cmilab/cluster_expansion.hpp"
#include "cmilab/model.hpp"

namespace cmilab {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Undirected simple graph on nodes 0..n-1 (at most 32 nodes).
class SimpleGraph {
   public:
    SimpleGraph() = default;
    SimpleGraph(int num_nodes, const std::vector<std::pair<int, int>> &edges);

    int num_nodes() const { return n_; }
    std::vector<std::pair<int, int>> edges() const;
    std::size_t num_edges() const;
    bool adjacent(int u, int v) const { return ((adj_[u] >> v) & 1u) != 0; }
    std::uint32_t neighbor_mask(int u) const { return adj_[u]; }
    int degree(int u) const;
    bool connected() const;
    SimpleGraph induced(const std::vector<int> &nodes) const;

    bool operator==(const SimpleGraph &other) const = default;

   private:
    int n_ = 0;
    std::vector<std::uint32_t> adj_;
};

/// Gra(W): one node per element of W.expanded(), adjacent when supports overlap (copies of a term
/// are mutually adjacent).
SimpleGraph interaction_graph_of_cluster(const Cluster &w, const DualInteractionGraph &g);

/// Blocks are sorted node lists; blocks are ordered by their smallest node.
struct ConnectedPartition {
    std::vector<std::vector<int>> blocks;
};

inline constexpr int kMaxPartitionNodes = 10;

/// Every partition of the nodes into blocks inducing connected subgraphs.
std::vector<ConnectedPartition> enumerate_connected_partitions(const SimpleGraph &g);
/// Gra(B): blocks as nodes, adjacent when some edge joins them.
SimpleGraph block_graph(const SimpleGraph &g, const ConnectedPartition &b);

/// Chromatic polynomial coefficients (index = power) by memoized deletion-contraction.
std::vector<BigInt> chromatic_polynomial(const SimpleGraph &g);
BigInt chromatic_count(const SimpleGraph &g, int colors);
/// Proper colorings using exactly n colors: sum_j (-1)^{n-j} C(n, j) P(g, j).
BigInt chi_star(int n, const SimpleGraph &g);
/// sum_{n=1}^{|V|} (-1)^{n-1} chi*(n, g) / n
BigRational coloring_coefficient(const SimpleGraph &g);
/// Matrix-tree theorem with fraction-free elimination; 0 for a disconnected graph.
BigInt spanning_tree_count(const SimpleGraph &g);

struct CombinatorialEstimate {
    Cluster cluster;
    BigRational left;
    BigInt tree_term;    // 2^{|W|-1} tau(Gra(W))
    BigInt degree_term;  // 2^{|W|-1} prod_{v != root} deg(v)
    double right = 0;    // W! (2e(1 + d))^{|W|+1}
    bool pass = false;
};

/// Evaluates the chain left <= tree_term <= degree_term <= right exactly (the right side in doubles).
CombinatorialEstimate verify_combinatorial_estimate(const Cluster &w, const DualInteractionGraph &g);

/// sum_{B in PaC(Gra(W))} coloring_coefficient(Gra(B)) prod_{V in B} D_V E[r], with the D_V read from a
/// series of E[r]. Equals D_W log E[r] when the derivatives commute.
Matrix coloring_reconstruction(const TruncatedSeries &series, const Cluster &w, const DualInteractionGraph &g);

struct ClusterCount {
    int site = 0;
    int weight = 0;
    std::size_t count = 0;
    double bound = 0;  // e d (1 + e(d-1))^{w-1}
    bool pass = false;
};

/// Connected clusters of each exact weight 1..max_weight having a term on each site.
std::vector<ClusterCount> anchored_cluster_counts(const DualInteractionGraph &g, int n_sites, int max_weight);

}  // namespace cmilab

#endif

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

#include "cmilab/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace cmilab {

namespace {

using Poly = std::vector<BigInt>;

Poly poly_sub(const Poly &a, const Poly &b) {
    Poly out(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

// x (x - 1) ... (x - n + 1)
Poly falling_factorial(int n) {
    Poly p{1};
    for (int k = 0; k < n; ++k) {
        Poly next(p.size() + 1);
        for (std::size_t i = 0; i < p.size(); ++i) {
            next[i + 1] += p[i];
            next[i] -= p[i] * k;
        }
        p = std::move(next);
    }
    return p;
}

using AdjKey = std::vector<std::uint32_t>;

// Node v merged into u: v's neighbors move to u, then v is removed and higher nodes shift down.
AdjKey contract(const AdjKey &adj, int u, int v) {
    const int n = static_cast<int>(adj.size());
    std::vector<std::uint32_t> merged = adj;
    merged[u] |= merged[v];
    merged[u] &= ~((1u << u) | (1u << v));
    for (int w = 0; w < n; ++w) {
        if ((merged[w] >> v) & 1u) {
            merged[w] &= ~(1u << v);
            if (w != u) {
                merged[w] |= 1u << u;
            }
        }
    }
    for (int w = 0; w < n; ++w) {
        if ((merged[u] >> w) & 1u) {
            merged[w] |= 1u << u;
        }
    }
    AdjKey out;
    for (int w = 0; w < n; ++w) {
        if (w == v) continue;
        std::uint32_t m = merged[w];
        std::uint32_t low = m & ((1u << v) - 1);
        std::uint32_t high = (m >> (v + 1)) << v;
        out.push_back(low | high);
    }
    return out;
}

class ChromaticMemo {
   public:
    Poly get(const AdjKey &adj) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find(adj);
            if (it != memo_.end()) return it->second;
        }
        Poly p = compute(adj);
        std::lock_guard<std::mutex> lock(mu_);
        memo_.emplace(adj, p);
        return p;
    }

   private:
    Poly compute(const AdjKey &adj) {
        const int n = static_cast<int>(adj.size());
        std::size_t edges = 0;
        for (auto m : adj) edges += std::popcount(m);
        edges /= 2;
        if (edges == 0) {
            Poly p(n + 1);
            p[n] = 1;
            return p;
        }
        if (edges == static_cast<std::size_t>(n) * (n - 1) / 2) {
            return falling_factorial(n);
        }
        // Pick the edge at the lowest-degree endpoint that has one.
        int u = -1;
        for (int w = 0; w < n; ++w) {
            if (adj[w] != 0 && (u < 0 || std::popcount(adj[w]) < std::popcount(adj[u]))) u = w;
        }
        int v = std::countr_zero(adj[u]);
        AdjKey deleted = adj;
        deleted[u] &= ~(1u << v);
        deleted[v] &= ~(1u << u);
        return poly_sub(get(deleted), get(contract(adj, u, v)));
    }

    std::mutex mu_;
    std::map<AdjKey, Poly> memo_;
};

ChromaticMemo &memo() {
    static ChromaticMemo m;
    return m;
}

BigInt binomial(int n, int k) {
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

void partitions_rec(const SimpleGraph &g, std::uint32_t remaining, std::vector<std::vector<int>> &blocks,
                    std::vector<ConnectedPartition> &out) {
    if (remaining == 0) {
        out.push_back(ConnectedPartition{blocks});
        return;
    }
    const int v = std::countr_zero(remaining);
    const std::uint32_t rest = remaining & ~(1u << v);
    // Every subset of `rest`, joined with v, that induces a connected subgraph.
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
        std::uint32_t block = sub | (1u << v);
        std::uint32_t seen = 1u << v;
        std::uint32_t frontier = seen;
        while (frontier) {
            int w = std::countr_zero(frontier);
            frontier &= frontier - 1;
            std::uint32_t next = g.neighbor_mask(w) & block & ~seen;
            seen |= next;
            frontier |= next;
        }
        if (seen == block) {
            std::vector<int> nodes;
            for (std::uint32_t b = block; b; b &= b - 1) nodes.push_back(std::countr_zero(b));
            blocks.push_back(std::move(nodes));
            partitions_rec(g, remaining & ~block, blocks, out);
            blocks.pop_back();
        }
        if (sub == 0) break;
    }
}

}  // namespace

SimpleGraph::SimpleGraph(int num_nodes, const std::vector<std::pair<int, int>> &edges)
    : n_(num_nodes), adj_(num_nodes, 0) {
    if (num_nodes < 0 || num_nodes > 32) {
        throw Error("SimpleGraph supports 0..32 nodes");
    }
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
            throw Error("invalid edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        }
        if (adjacent(u, v)) {
            throw Error("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        }
        adj_[u] |= 1u << v;
        adj_[v] |= 1u << u;
    }
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (adjacent(u, v)) out.emplace_back(u, v);
    return out;
}

std::size_t SimpleGraph::num_edges() const { return edges().size(); }

int SimpleGraph::degree(int u) const { return std::popcount(adj_[u]); }

bool SimpleGraph::connected() const {
    if (n_ == 0) return true;
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
        int w = std::countr_zero(frontier);
        frontier &= frontier - 1;
        std::uint32_t next = adj_[w] & ~seen;
        seen |= next;
        frontier |= next;
    }
    return std::popcount(seen) == n_;
}

SimpleGraph SimpleGraph::induced(const std::vector<int> &nodes) const {
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (adjacent(nodes[i], nodes[j])) e.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return SimpleGraph(static_cast<int>(nodes.size()), e);
}

SimpleGraph interaction_graph_of_cluster(const Cluster &w, const DualInteractionGraph &g) {
    const std::vector<int> nodes = w.expanded();
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes.size(); ++j) {
            if (nodes[i] == nodes[j] || g.adjacent(nodes[i], nodes[j])) {
                e.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    }
    return SimpleGraph(static_cast<int>(nodes.size()), e);
}

std::vector<ConnectedPartition> enumerate_connected_partitions(const SimpleGraph &g) {
    if (g.num_nodes() > kMaxPartitionNodes) {
        throw CapError("connected partitions are limited to " + std::to_string(kMaxPartitionNodes) + " nodes");
    }
    std::vector<ConnectedPartition> out;
    std::vector<std::vector<int>> blocks;
    const std::uint32_t all = g.num_nodes() == 0 ? 0u : ((1u << g.num_nodes()) - 1);
    partitions_rec(g, all, blocks, out);
    return out;
}

SimpleGraph block_graph(const SimpleGraph &g, const ConnectedPartition &b) {
    std::vector<std::uint32_t> masks;
    for (const auto &block : b.blocks) {
        std::uint32_t m = 0;
        for (int v : block) m |= 1u << v;
        masks.push_back(m);
    }
    std::vector<std::pair<int, int>> e;
    for (std::size_t i = 0; i < masks.size(); ++i) {
        for (std::size_t j = i + 1; j < masks.size(); ++j) {
            bool joined = false;
            for (std::uint32_t m = masks[i]; m && !joined; m &= m - 1) {
                joined = (g.neighbor_mask(std::countr_zero(m)) & masks[j]) != 0;
            }
            if (joined) e.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return SimpleGraph(static_cast<int>(masks.size()), e);
}

std::vector<BigInt> chromatic_polynomial(const SimpleGraph &g) {
    AdjKey adj;
    for (int u = 0; u < g.num_nodes(); ++u) adj.push_back(g.neighbor_mask(u));
    return memo().get(adj);
}

BigInt chromatic_count(const SimpleGraph &g, int colors) {
    const Poly p = chromatic_polynomial(g);
    BigInt acc = 0;
    BigInt power = 1;
    for (const BigInt &c : p) {
        acc += c * power;
        power *= colors;
    }
    return acc;
}

BigInt chi_star(int n, const SimpleGraph &g) {
    if (n < 0) throw Error("chi_star needs n >= 0");
    BigInt acc = 0;
    for (int j = 0; j <= n; ++j) {
        BigInt term = binomial(n, j) * chromatic_count(g, j);
        acc += ((n - j) % 2 == 0) ? term : BigInt(-term);
    }
    return acc;
}

BigRational coloring_coefficient(const SimpleGraph &g) {
    BigRational acc = 0;
    for (int n = 1; n <= g.num_nodes(); ++n) {
        BigRational term(chi_star(n, g), BigInt(n));
        acc += (n % 2 == 1) ? term : BigRational(-term);
    }
    return acc;
}

BigInt spanning_tree_count(const SimpleGraph &g) {
    const int n = g.num_nodes();
    if (n <= 1) return 1;
    if (!g.connected()) return 0;
    const int m = n - 1;
    std::vector<std::vector<BigInt>> a(m, std::vector<BigInt>(m));
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
            a[i - 1][j - 1] = (i == j) ? BigInt(g.degree(i)) : BigInt(g.adjacent(i, j) ? -1 : 0);
        }
    }
    // Bareiss elimination: every division is exact.
    BigInt prev = 1;
    int sign = 1;
    for (int k = 0; k < m - 1; ++k) {
        if (a[k][k] == 0) {
            int swap = -1;
            for (int r = k + 1; r < m; ++r) {
                if (a[r][k] != 0) {
                    swap = r;
                    break;
                }
            }
            if (swap < 0) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i) {
            for (int j = k + 1; j < m; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    BigInt det = a[m - 1][m - 1];
    return sign < 0 ? BigInt(-det) : det;
}

CombinatorialEstimate verify_combinatorial_estimate(const Cluster &w, const DualInteractionGraph &g) {
    if (w.weight() < 1 || w.weight() > 7) {
        throw CapError("combinatorial estimate needs 1 <= |W| <= 7");
    }
    CombinatorialEstimate est;
    est.cluster = w;
    const SimpleGraph gra = interaction_graph_of_cluster(w, g);
    for (const auto &b : enumerate_connected_partitions(gra)) {
        est.left += abs(coloring_coefficient(block_graph(gra, b)));
    }
    const BigInt pow2 = BigInt(1) << (w.weight() - 1);
    est.tree_term = pow2 * spanning_tree_count(gra);
    // A spanning tree is fixed by each non-root node's parent edge, so any root gives a valid product.
    int root = 0;
    for (int v = 1; v < gra.num_nodes(); ++v) {
        if (gra.degree(v) > gra.degree(root)) root = v;
    }
    BigInt prod = 1;
    for (int v = 0; v < gra.num_nodes(); ++v) {
        if (v != root) prod *= gra.degree(v);
    }
    est.degree_term = pow2 * prod;
    est.right = w.factorial() * std::pow(2 * std::numbers::e * (1 + g.degree), w.weight() + 1);
    est.pass = est.left <= BigRational(est.tree_term) && est.tree_term <= est.degree_term &&
               est.degree_term.convert_to<double>() <= est.right;
    return est;
}

Matrix coloring_reconstruction(const TruncatedSeries &series, const Cluster &w, const DualInteractionGraph &g) {
    const SimpleGraph gra = interaction_graph_of_cluster(w, g);
    const std::vector<int> labels = w.expanded();
    Matrix acc = Matrix::Zero(series.dim(), series.dim());
    for (const auto &b : enumerate_connected_partitions(gra)) {
        const double c = coloring_coefficient(block_graph(gra, b)).convert_to<double>();
        Matrix prod = Matrix::Identity(series.dim(), series.dim());
        for (const auto &block : b.blocks) {
            std::vector<int> terms;
            for (int v : block) terms.push_back(labels[v]);
            prod = prod * cluster_derivative(series, Cluster::from_terms(terms));
        }
        acc += c * prod;
    }
    return acc;
}

std::vector<ClusterCount> anchored_cluster_counts(const DualInteractionGraph &g, int n_sites, int max_weight) {
    const double e = std::numbers::e;
    const int d = g.degree;
    std::vector<ClusterCount> out;
    for (int site = 0; site < n_sites; ++site) {
        std::vector<std::size_t> counts(max_weight + 1, 0);
        for (const Cluster &w : enumerate_connected_clusters(g, max_weight, SiteSet{site})) {
            ++counts[w.weight()];
        }
        for (int wt = 1; wt <= max_weight; ++wt) {
            ClusterCount c;
            c.site = site;
            c.weight = wt;
            c.count = counts[wt];
            c.bound = e * d * std::pow(1 + e * (d - 1), wt - 1);
            c.pass = c.count <= static_cast<std::size_t>(std::floor(c.bound));
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace cmilab

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

#ifndef CMILAB_CLUSTER_HPP
#define CMILAB_CLUSTER_HPP

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cmilab/linalg.hpp"
#include "cmilab/model.hpp"

namespace cmilab {

/// Multiset of term indices, stored as sorted (term, multiplicity) pairs with multiplicity >= 1.
/// The empty multiset is allowed and serves as the constant monomial of a series.
class Cluster {
   public:
    Cluster() = default;
    /// Merges duplicate terms and drops zero multiplicities.
    explicit Cluster(std::vector<std::pair<int, int>> entries);
    /// One entry per occurrence, e.g. {0, 0, 2} is {0^2, 2}.
    static Cluster from_terms(const std::vector<int> &terms);

    const std::vector<std::pair<int, int>> &entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    int weight() const;
    /// W! = prod_a mu(a)!
    double factorial() const;
    int multiplicity(int term) const;
    /// Distinct terms in increasing order.
    std::vector<int> terms() const;
    /// Terms with repetition, in increasing order.
    std::vector<int> expanded() const;

    Cluster operator+(const Cluster &other) const;
    /// Multiset difference; throws if `other` is not contained in this cluster.
    Cluster operator-(const Cluster &other) const;
    bool contains(const Cluster &other) const;

    std::string str() const;

    bool operator==(const Cluster &other) const = default;
    auto operator<=>(const Cluster &other) const = default;

   private:
    std::vector<std::pair<int, int>> entries_;
};

/// Whether the distinct terms of w induce a connected subgraph of the dual graph (empty: false).
bool is_connected(const Cluster &w, const DualInteractionGraph &g);
/// Connected components of w, each keeping its multiplicities, ordered by smallest term.
std::vector<Cluster> connected_components(const Cluster &w, const DualInteractionGraph &g);
/// Whether some term of w touches `sites`.
bool touches(const Cluster &w, const DualInteractionGraph &g, const SiteSet &sites);
/// Connected and touching both A and C.
bool connects(const Cluster &w, const DualInteractionGraph &g, const SiteSet &a, const SiteSet &c);

inline constexpr std::size_t kDefaultMaxClusterWeight = 8;
inline constexpr std::size_t kDefaultMaxClusterCount = 2000000;

/// All connected clusters with 1 <= weight <= max_weight, sorted by (weight, entries). With an anchor,
/// only clusters having a term that touches an anchor site are kept.
std::vector<Cluster> enumerate_connected_clusters(const DualInteractionGraph &g, int max_weight,
                                                  const std::optional<SiteSet> &anchor = std::nullopt);
/// Every multiset of weight 1..max_weight (connected or not), sorted by (weight, entries).
std::vector<Cluster> enumerate_all_clusters(std::size_t num_terms, int max_weight);
/// Connected term subsets (no multiplicities) of size <= max_size, sorted.
std::vector<std::vector<int>> enumerate_connected_term_sets(const DualInteractionGraph &g, int max_size);

}  // namespace cmilab

#endif

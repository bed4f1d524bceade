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

#include "cmilab/cluster.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <set>

namespace cmilab {

namespace {

void check_count(std::size_t count) {
    std::size_t cap = env_cap("CMILAB_MAX_CLUSTERS", kDefaultMaxClusterCount);
    if (count > cap) {
        throw CapError("cluster enumeration exceeds CMILAB_MAX_CLUSTERS (" + std::to_string(cap) + ")");
    }
}

void check_weight(int max_weight) {
    std::size_t cap = env_cap("CMILAB_MAX_CLUSTER_WEIGHT", kDefaultMaxClusterWeight);
    if (max_weight < 0 || static_cast<std::size_t>(max_weight) > cap) {
        throw CapError("cluster weight " + std::to_string(max_weight) + " exceeds CMILAB_MAX_CLUSTER_WEIGHT (" +
                       std::to_string(cap) + ")");
    }
}

bool by_weight(const Cluster &a, const Cluster &b) {
    if (a.weight() != b.weight()) {
        return a.weight() < b.weight();
    }
    return a < b;
}

// Appends every way of giving each term of `terms` a multiplicity >= 1 with total weight <= max_weight.
void distribute(const std::vector<int> &terms, int max_weight, std::vector<Cluster> &out) {
    const int k = static_cast<int>(terms.size());
    if (k > max_weight) {
        return;
    }
    std::vector<int> mu(k, 1);
    int total = k;
    while (true) {
        std::vector<std::pair<int, int>> entries;
        for (int i = 0; i < k; ++i) {
            entries.emplace_back(terms[i], mu[i]);
        }
        out.emplace_back(std::move(entries));
        // Odometer over multiplicities, bounded by the remaining weight.
        int i = k - 1;
        while (i >= 0) {
            if (total < max_weight) {
                ++mu[i];
                ++total;
                break;
            }
            total -= mu[i] - 1;
            mu[i] = 1;
            --i;
        }
        if (i < 0) {
            return;
        }
    }
}

}  // namespace

Cluster::Cluster(std::vector<std::pair<int, int>> entries) {
    std::map<int, int> merged;
    for (auto [term, mu] : entries) {
        if (term < 0 || mu < 0) {
            throw Error("cluster entries need nonnegative terms and multiplicities");
        }
        if (mu > 0) {
            merged[term] += mu;
        }
    }
    entries_.assign(merged.begin(), merged.end());
}

Cluster Cluster::from_terms(const std::vector<int> &terms) {
    std::vector<std::pair<int, int>> entries;
    for (int t : terms) {
        entries.emplace_back(t, 1);
    }
    return Cluster(std::move(entries));
}

int Cluster::weight() const {
    int w = 0;
    for (const auto &e : entries_) {
        w += e.second;
    }
    return w;
}

double Cluster::factorial() const {
    double f = 1;
    for (const auto &e : entries_) {
        for (int k = 2; k <= e.second; ++k) {
            f *= k;
        }
    }
    return f;
}

int Cluster::multiplicity(int term) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), std::make_pair(term, 0));
    return (it != entries_.end() && it->first == term) ? it->second : 0;
}

std::vector<int> Cluster::terms() const {
    std::vector<int> out;
    for (const auto &e : entries_) {
        out.push_back(e.first);
    }
    return out;
}

std::vector<int> Cluster::expanded() const {
    std::vector<int> out;
    for (const auto &e : entries_) {
        out.insert(out.end(), e.second, e.first);
    }
    return out;
}

Cluster Cluster::operator+(const Cluster &other) const {
    std::vector<std::pair<int, int>> all = entries_;
    all.insert(all.end(), other.entries_.begin(), other.entries_.end());
    return Cluster(std::move(all));
}

Cluster Cluster::operator-(const Cluster &other) const {
    if (!contains(other)) {
        throw Error("cluster difference of a non-contained multiset");
    }
    std::vector<std::pair<int, int>> out;
    for (const auto &[term, mu] : entries_) {
        out.emplace_back(term, mu - other.multiplicity(term));
    }
    return Cluster(std::move(out));
}

bool Cluster::contains(const Cluster &other) const {
    for (const auto &[term, mu] : other.entries_) {
        if (multiplicity(term) < mu) {
            return false;
        }
    }
    return true;
}

std::string Cluster::str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i) {
            s += ",";
        }
        s += std::to_string(entries_[i].first);
        if (entries_[i].second > 1) {
            s += "^" + std::to_string(entries_[i].second);
        }
    }
    return s + "}";
}

std::vector<Cluster> connected_components(const Cluster &w, const DualInteractionGraph &g) {
    std::vector<Cluster> out;
    std::vector<int> terms = w.terms();
    std::vector<bool> seen(terms.size(), false);
    for (std::size_t start = 0; start < terms.size(); ++start) {
        if (seen[start]) {
            continue;
        }
        std::vector<std::pair<int, int>> comp;
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            std::size_t i = stack.back();
            stack.pop_back();
            comp.emplace_back(terms[i], w.multiplicity(terms[i]));
            for (std::size_t j = 0; j < terms.size(); ++j) {
                if (!seen[j] && g.adjacent(terms[i], terms[j])) {
                    seen[j] = true;
                    stack.push_back(j);
                }
            }
        }
        out.emplace_back(std::move(comp));
    }
    return out;
}

bool is_connected(const Cluster &w, const DualInteractionGraph &g) {
    return !w.empty() && connected_components(w, g).size() == 1;
}

bool touches(const Cluster &w, const DualInteractionGraph &g, const SiteSet &sites) {
    for (int t : w.terms()) {
        if (sites_intersect(g.supports.at(t), sites)) {
            return true;
        }
    }
    return false;
}

bool connects(const Cluster &w, const DualInteractionGraph &g, const SiteSet &a, const SiteSet &c) {
    return is_connected(w, g) && touches(w, g, a) && touches(w, g, c);
}

std::vector<std::vector<int>> enumerate_connected_term_sets(const DualInteractionGraph &g, int max_size) {
    check_weight(max_size);
    std::set<std::vector<int>> found;
    std::vector<std::vector<int>> frontier;
    for (std::size_t a = 0; a < g.num_terms(); ++a) {
        frontier.push_back({static_cast<int>(a)});
        found.insert({static_cast<int>(a)});
    }
    if (max_size == 0) {
        return {};
    }
    for (int size = 2; size <= max_size; ++size) {
        std::vector<std::vector<int>> next;
        for (const auto &set : frontier) {
            for (int v : set) {
                for (int u : g.neighbors[v]) {
                    if (std::binary_search(set.begin(), set.end(), u)) {
                        continue;
                    }
                    std::vector<int> grown = set;
                    grown.insert(std::upper_bound(grown.begin(), grown.end(), u), u);
                    if (found.insert(grown).second) {
                        next.push_back(std::move(grown));
                    }
                }
            }
        }
        check_count(found.size());
        frontier = std::move(next);
    }
    return {found.begin(), found.end()};
}

std::vector<Cluster> enumerate_connected_clusters(const DualInteractionGraph &g, int max_weight,
                                                  const std::optional<SiteSet> &anchor) {
    check_weight(max_weight);
    std::vector<Cluster> out;
    for (const auto &set : enumerate_connected_term_sets(g, max_weight)) {
        if (anchor) {
            bool hit = false;
            for (int t : set) {
                hit = hit || sites_intersect(g.supports[t], *anchor);
            }
            if (!hit) {
                continue;
            }
        }
        distribute(set, max_weight, out);
        check_count(out.size());
    }
    std::sort(out.begin(), out.end(), by_weight);
    return out;
}

std::vector<Cluster> enumerate_all_clusters(std::size_t num_terms, int max_weight) {
    check_weight(max_weight);
    // Monomials in num_terms variables of degree 1..max_weight, built by nondecreasing term sequences.
    std::vector<Cluster> out;
    std::vector<int> seq;
    std::function<void(int)> rec = [&](int first) {
        if (!seq.empty()) {
            out.push_back(Cluster::from_terms(seq));
            check_count(out.size());
        }
        if (static_cast<int>(seq.size()) == max_weight) {
            return;
        }
        for (int t = first; t < static_cast<int>(num_terms); ++t) {
            seq.push_back(t);
            rec(t);
            seq.pop_back();
        }
    };
    rec(0);
    std::sort(out.begin(), out.end(), by_weight);
    return out;
}

}  // namespace cmilab

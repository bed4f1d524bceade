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

#include "cmilab/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

namespace cmilab {

namespace {

void check_lambda(double lambda) {
    if (!std::isfinite(lambda) || std::abs(lambda) > 1.0) {
        throw Error("term coefficient |lambda| must be <= 1, got " + std::to_string(lambda));
    }
}

std::size_t int_pow(int q, std::size_t k) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < k; i++) r *= static_cast<std::size_t>(q);
    return r;
}

}  // namespace

SiteGraph::SiteGraph(int n, int q, std::vector<std::pair<int, int>> e) : n_sites(n), local_dim(q), edges(std::move(e)) {
    if (n_sites < 1) {
        throw Error("SiteGraph needs at least one site");
    }
    if (local_dim < 2) {
        throw Error("local dimension must be at least 2");
    }
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n_sites || v >= n_sites) {
            throw Error("SiteGraph edge references a missing site");
        }
    }
}

HamiltonianTerm HamiltonianTerm::pauli(PauliString op, double lambda) {
    check_lambda(lambda);
    HamiltonianTerm t;
    t.support_ = op.support();
    t.op_ = std::move(op);
    t.lambda_ = lambda;
    return t;
}

HamiltonianTerm HamiltonianTerm::diagonal(std::vector<int> support, std::vector<double> values, int q, double lambda) {
    check_lambda(lambda);
    if (support.empty()) {
        throw Error("diagonal term needs a nonempty support");
    }
    if (values.size() != int_pow(q, support.size())) {
        throw Error("diagonal table has " + std::to_string(values.size()) + " entries, expected q^|support|");
    }
    for (double v : values) {
        if (!std::isfinite(v) || std::abs(v) > 1.0) {
            throw Error("diagonal table entries must lie in [-1, 1]");
        }
    }
    std::vector<std::size_t> order(support.size());
    for (std::size_t i = 0; i < order.size(); i++) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return support[i] < support[j]; });
    SiteSet sorted(support.size());
    for (std::size_t i = 0; i < order.size(); i++) sorted[i] = support[order[i]];
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error("duplicate site in diagonal term support");
    }
    const std::size_t k = support.size();
    std::vector<double> permuted(values.size());
    std::vector<int> digits(k);
    for (std::size_t idx = 0; idx < values.size(); idx++) {
        std::size_t rem = idx;
        for (std::size_t i = k; i-- > 0;) {
            digits[i] = static_cast<int>(rem % q);
            rem /= q;
        }
        // digits[i] belongs to sorted[i] = support[order[i]]; rebuild the index in the given order.
        std::vector<int> original(k);
        for (std::size_t i = 0; i < k; i++) original[order[i]] = digits[i];
        std::size_t old = 0;
        for (std::size_t i = 0; i < k; i++) old = old * q + original[i];
        permuted[idx] = values[old];
    }
    HamiltonianTerm t;
    t.support_ = std::move(sorted);
    t.op_ = std::move(permuted);
    t.lambda_ = lambda;
    return t;
}

bool HamiltonianTerm::is_diagonal() const {
    return !is_pauli() || std::get<PauliString>(op_).is_diagonal();
}

const PauliString &HamiltonianTerm::pauli_op() const {
    if (!is_pauli()) {
        throw Error("term is not a Pauli string");
    }
    return std::get<PauliString>(op_);
}

const std::vector<double> &HamiltonianTerm::table() const {
    if (is_pauli()) {
        throw Error("term is not a diagonal table");
    }
    return std::get<std::vector<double>>(op_);
}

double HamiltonianTerm::diagonal_value(const std::vector<int> &digits, int q) const {
    if (is_pauli()) {
        const PauliString &p = std::get<PauliString>(op_);
        if (!p.is_diagonal()) {
            throw Error("diagonal value requested for a non-diagonal term");
        }
        int parity = 0;
        for (int s : support_) parity ^= digits[s] & 1;
        return p.sign() * (parity ? -1.0 : 1.0);
    }
    std::size_t idx = 0;
    for (int s : support_) idx = idx * q + digits[s];
    return std::get<std::vector<double>>(op_)[idx];
}

Matrix HamiltonianTerm::local_matrix(const SiteSet &sites, int q) const {
    if (is_pauli()) {
        return std::get<PauliString>(op_).local_matrix(sites);
    }
    std::vector<int> pos;
    for (int s : support_) {
        auto it = std::find(sites.begin(), sites.end(), s);
        if (it == sites.end()) {
            throw Error("local_matrix sites do not cover the term support");
        }
        pos.push_back(static_cast<int>(it - sites.begin()));
    }
    const std::size_t dim = int_pow(q, sites.size());
    const auto &tab = std::get<std::vector<double>>(op_);
    Matrix m = Matrix::Zero(dim, dim);
    std::vector<int> digits(sites.size());
    for (std::size_t idx = 0; idx < dim; idx++) {
        std::size_t rem = idx;
        for (std::size_t i = sites.size(); i-- > 0;) {
            digits[i] = static_cast<int>(rem % q);
            rem /= q;
        }
        std::size_t t = 0;
        for (int p : pos) t = t * q + digits[p];
        m(idx, idx) = tab[t];
    }
    return m;
}

HamiltonianTerm HamiltonianTerm::with_lambda(double lambda) const {
    check_lambda(lambda);
    HamiltonianTerm t = *this;
    t.lambda_ = lambda;
    return t;
}

HamiltonianTerm HamiltonianTerm::permuted(const std::vector<int> &perm, int q) const {
    if (is_pauli()) {
        return pauli(std::get<PauliString>(op_).permuted(perm), lambda_);
    }
    std::vector<int> sup;
    for (int s : support_) sup.push_back(perm[s]);
    return diagonal(sup, std::get<std::vector<double>>(op_), q, lambda_);
}

bool terms_commute(const HamiltonianTerm &a, const HamiltonianTerm &b, int q) {
    if (!sites_intersect(a.support(), b.support())) {
        return true;
    }
    if (a.is_pauli() && b.is_pauli()) {
        return a.pauli_op().commutes_with(b.pauli_op());
    }
    if (a.is_diagonal() && b.is_diagonal()) {
        return true;
    }
    SiteSet joint = site_union(a.support(), b.support());
    Matrix ma = a.local_matrix(joint, q);
    Matrix mb = b.local_matrix(joint, q);
    return (ma * mb - mb * ma).cwiseAbs().maxCoeff() <= 1e-12;
}

LocalHamiltonian::LocalHamiltonian(SiteGraph graph, std::vector<HamiltonianTerm> terms)
    : graph_(std::move(graph)), terms_(std::move(terms)) {
    for (std::size_t a = 0; a < terms_.size(); a++) {
        const auto &t = terms_[a];
        if (t.is_pauli()) {
            if (graph_.local_dim != 2) {
                throw Error("Pauli terms require local dimension 2");
            }
            if (t.pauli_op().num_sites() != graph_.n_sites) {
                throw Error("Pauli term " + std::to_string(a) + " has the wrong site count");
            }
        }
        for (int s : t.support()) {
            if (s < 0 || s >= graph_.n_sites) {
                throw Error("term " + std::to_string(a) + " support outside the site range");
            }
        }
    }
    commuting_ = true;
    for (std::size_t a = 0; a < terms_.size() && commuting_; a++) {
        for (std::size_t b = a + 1; b < terms_.size(); b++) {
            if (!terms_commute(terms_[a], terms_[b], graph_.local_dim)) {
                commuting_ = false;
                break;
            }
        }
    }
}

bool LocalHamiltonian::all_pauli() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.is_pauli(); });
}

bool LocalHamiltonian::all_diagonal() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.is_diagonal(); });
}

double LocalHamiltonian::diagonal_energy(const std::vector<int> &digits) const {
    double e = 0;
    for (const auto &t : terms_) {
        e += t.lambda() * t.diagonal_value(digits, graph_.local_dim);
    }
    return e;
}

Matrix LocalHamiltonian::dense(std::size_t dim_cap) const {
    const std::size_t dim = checked_power(local_dim(), n_sites(), dim_cap, "dense_dim");
    SiteSet all(n_sites());
    for (int s = 0; s < n_sites(); s++) all[s] = s;
    Matrix m = Matrix::Zero(dim, dim);
    for (const auto &t : terms_) {
        if (t.is_pauli()) {
            m += t.lambda() * t.pauli_op().dense();
        } else {
            m += t.lambda() * t.local_matrix(all, local_dim());
        }
    }
    return m;
}

LocalHamiltonian LocalHamiltonian::with_lambdas(const std::vector<double> &lambdas) const {
    if (lambdas.size() != terms_.size()) {
        throw Error("with_lambdas: wrong number of coefficients");
    }
    std::vector<HamiltonianTerm> t;
    for (std::size_t a = 0; a < terms_.size(); a++) t.push_back(terms_[a].with_lambda(lambdas[a]));
    return LocalHamiltonian(graph_, std::move(t));
}

LocalHamiltonian LocalHamiltonian::permuted(const std::vector<int> &perm) const {
    if (static_cast<int>(perm.size()) != n_sites()) {
        throw Error("permutation size does not match site count");
    }
    std::vector<HamiltonianTerm> t;
    for (const auto &term : terms_) t.push_back(term.permuted(perm, local_dim()));
    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : graph_.edges) edges.emplace_back(perm[u], perm[v]);
    return LocalHamiltonian(SiteGraph(n_sites(), local_dim(), edges), std::move(t));
}

bool verify_commuting(const LocalHamiltonian &h) {
    for (std::size_t a = 0; a < h.size(); a++) {
        for (std::size_t b = a + 1; b < h.size(); b++) {
            if (!terms_commute(h.term(a), h.term(b), h.local_dim())) {
                return false;
            }
        }
    }
    return true;
}

Partition::Partition(SiteSet a_, SiteSet b_, SiteSet c_, int n_sites)
    : a(normalize_sites(std::move(a_), n_sites)),
      b(normalize_sites(std::move(b_), n_sites)),
      c(normalize_sites(std::move(c_), n_sites)) {
    if (a.empty() || c.empty()) {
        throw Error("partition regions A and C must be nonempty");
    }
    if (sites_intersect(a, b) || sites_intersect(b, c) || sites_intersect(a, c)) {
        throw Error("partition regions must be pairwise disjoint");
    }
}

Partition Partition::permuted(const std::vector<int> &perm, int n_sites) const {
    auto map = [&](const SiteSet &s) {
        SiteSet out;
        for (int v : s) out.push_back(perm[v]);
        return out;
    };
    return Partition(map(a), map(b), map(c), n_sites);
}

bool DualInteractionGraph::adjacent(int a, int b) const {
    const auto &nb = neighbors.at(a);
    return std::binary_search(nb.begin(), nb.end(), b);
}

std::size_t DualInteractionGraph::num_edges() const {
    std::size_t e = 0;
    for (const auto &nb : neighbors) e += nb.size();
    return e / 2;
}

DualInteractionGraph build_dual_graph(const LocalHamiltonian &h) {
    DualInteractionGraph g;
    const std::size_t m = h.size();
    g.neighbors.assign(m, {});
    for (const auto &t : h.terms()) g.supports.push_back(t.support());
    for (std::size_t a = 0; a < m; a++) {
        for (std::size_t b = a + 1; b < m; b++) {
            if (sites_intersect(g.supports[a], g.supports[b])) {
                g.neighbors[a].push_back(static_cast<int>(b));
                g.neighbors[b].push_back(static_cast<int>(a));
            }
        }
    }
    for (auto &nb : g.neighbors) std::sort(nb.begin(), nb.end());
    std::vector<int> count(h.n_sites(), 0);
    for (const auto &sup : g.supports) {
        for (int s : sup) count[s]++;
    }
    g.degree = count.empty() ? 0 : *std::max_element(count.begin(), count.end());
    return g;
}

std::size_t TermDistance::value() const {
    if (!value_) {
        throw Error("distance is infinite");
    }
    return *value_;
}

TermDistance graph_distance(const DualInteractionGraph &g, const Partition &p) {
    const std::size_t m = g.num_terms();
    std::vector<std::size_t> dist(m, 0);
    std::deque<int> queue;
    for (std::size_t a = 0; a < m; a++) {
        if (sites_intersect(g.supports[a], p.a)) {
            dist[a] = 1;
            queue.push_back(static_cast<int>(a));
        }
    }
    while (!queue.empty()) {
        int a = queue.front();
        queue.pop_front();
        if (sites_intersect(g.supports[a], p.c)) {
            return TermDistance::finite(dist[a]);
        }
        for (int b : g.neighbors[a]) {
            if (dist[b] == 0) {
                dist[b] = dist[a] + 1;
                queue.push_back(b);
            }
        }
    }
    return TermDistance::infinite();
}

TermDistance graph_distance(const LocalHamiltonian &h, const Partition &p) {
    return graph_distance(build_dual_graph(h), p);
}

}  // namespace cmilab

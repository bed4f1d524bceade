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

#include "cmilab/zoo.hpp"

#include <algorithm>
#include <regex>

namespace cmilab {

namespace {

SiteSet range_sites(int from, int to) {
    SiteSet s;
    for (int i = from; i < to; ++i) s.push_back(i);
    return s;
}

std::vector<std::pair<int, int>> path_edges(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return e;
}

}  // namespace

std::optional<SiteChannel> make_channel(const ChannelSpec &spec, int site, int q) {
    const std::string &k = spec.kind;
    if (k == "identity") return std::nullopt;
    if (k == "dephasing") return dephasing(site, spec.p);
    if (k == "bitflip") return bit_flip(site, spec.p);
    if (k == "depolarizing") return depolarizing(site, spec.p, q);
    if (k == "amplitude_damping") return amplitude_damping(site, spec.p);
    if (k == "transition") return SiteChannel::transition(site, spec.matrix);
    if (k == "kraus") return SiteChannel::kraus(site, spec.kraus);
    if (k == "parity") {
        if (q != 4) throw Error("parity channel needs local dimension 4");
        return parity_transition(site);
    }
    throw Error("unknown channel kind '" + k + "'");
}

ChannelLayer make_layer(const ChannelSpec &spec, const SiteSet &sites, int q) {
    ChannelLayer layer({}, sites);
    for (int s : sites) {
        if (auto c = make_channel(spec, s, q)) layer.set(*c);
    }
    return layer;
}

SiteChannel parity_transition(int site) {
    RealMatrix t = RealMatrix::Zero(4, 4);
    for (int v = 0; v < 4; ++v) {
        int l = v >> 1, r = v & 1;
        t(2 * (l ^ r), v) = 1.0;
    }
    return SiteChannel::transition(site, t);
}

LocalHamiltonian ising_chain(int n_sites, double lambda) {
    if (n_sites < 2) throw Error("ising chain needs at least 2 sites");
    std::vector<HamiltonianTerm> terms;
    for (int i = 0; i + 1 < n_sites; ++i) {
        terms.push_back(HamiltonianTerm::pauli(PauliString::from_ops(n_sites, "ZZ", {i, i + 1}), lambda));
    }
    return LocalHamiltonian(SiteGraph(n_sites, 2, path_edges(n_sites)), terms);
}

LocalHamiltonian parity_chain(int bulk, double lambda) {
    if (bulk < 0) throw Error("parity chain bulk length must be nonnegative");
    const int n = bulk + 2;
    // v = 2 l + r; +1 when r_i differs from l_{i+1}, -1 when they agree.
    std::vector<double> table(16);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) table[a * 4 + b] = ((a & 1) == (b >> 1)) ? -1.0 : 1.0;
    std::vector<HamiltonianTerm> terms;
    for (int i = 0; i + 1 < n; ++i) terms.push_back(HamiltonianTerm::diagonal({i, i + 1}, table, 4, lambda));
    return LocalHamiltonian(SiteGraph(n, 4, path_edges(n)), terms);
}

LocalHamiltonian bell_chain(int pairs, double lambda) {
    if (pairs < 0) throw Error("bell chain pair count must be nonnegative");
    const int n = 2 * pairs + 2;
    std::vector<HamiltonianTerm> terms;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; i += 2) {
        terms.push_back(HamiltonianTerm::pauli(PauliString::from_ops(n, "ZZ", {i, i + 1}), lambda));
        terms.push_back(HamiltonianTerm::pauli(PauliString::from_ops(n, "XX", {i, i + 1}), lambda));
        edges.emplace_back(i, i + 1);
    }
    return LocalHamiltonian(SiteGraph(n, 2, edges), terms);
}

LocalHamiltonian cluster_chain(int n_sites, double lambda) {
    if (n_sites < 2) throw Error("cluster chain needs at least 2 sites");
    std::vector<HamiltonianTerm> terms;
    for (int i = 0; i < n_sites; ++i) {
        std::string ops;
        std::vector<int> sites;
        if (i > 0) {
            ops += 'Z';
            sites.push_back(i - 1);
        }
        ops += 'X';
        sites.push_back(i);
        if (i + 1 < n_sites) {
            ops += 'Z';
            sites.push_back(i + 1);
        }
        terms.push_back(HamiltonianTerm::pauli(PauliString::from_ops(n_sites, ops, sites), lambda));
    }
    return LocalHamiltonian(SiteGraph(n_sites, 2, path_edges(n_sites)), terms);
}

LocalHamiltonian ising_lattice(int rows, int cols, double lambda) {
    if (rows < 1 || cols < 1 || rows * cols < 2) throw Error("lattice needs at least two sites");
    const int n = rows * cols;
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            int s = r * cols + c;
            if (c + 1 < cols) edges.emplace_back(s, s + 1);
            if (r + 1 < rows) edges.emplace_back(s, s + cols);
        }
    }
    std::sort(edges.begin(), edges.end());
    std::vector<HamiltonianTerm> terms;
    for (auto [a, b] : edges) terms.push_back(HamiltonianTerm::pauli(PauliString::from_ops(n, "ZZ", {a, b}), lambda));
    return LocalHamiltonian(SiteGraph(n, 2, edges), terms);
}

ModelInstance family_instance(const std::string &family, int distance, const std::optional<ChannelSpec> &bulk) {
    if (distance < 1) throw Error("distance must be at least 1");
    ModelInstance inst;
    inst.distance = distance;
    if (family == "ising_chain") {
        const int n = distance + 1;
        inst.id = family + "_n" + std::to_string(n);
        inst.h = ising_chain(n);
        inst.partition = Partition({0}, range_sites(1, n - 1), {n - 1}, n);
        inst.layer = make_layer(bulk.value_or(ChannelSpec{}), inst.partition.b, 2);
    } else if (family == "parity_chain") {
        const int bulk_sites = distance - 1;
        const int n = bulk_sites + 2;
        inst.id = family + "_n" + std::to_string(bulk_sites);
        inst.h = parity_chain(bulk_sites);
        inst.partition = Partition({0}, range_sites(1, n - 1), {n - 1}, n);
        ChannelSpec spec;
        spec.kind = "parity";
        inst.layer = make_layer(bulk.value_or(spec), inst.partition.b, 4);
    } else if (family == "bell_chain") {
        const int pairs = distance - 1;
        const int n = 2 * pairs + 2;
        inst.id = family + "_n" + std::to_string(pairs);
        inst.h = bell_chain(pairs);
        inst.partition = Partition({0}, range_sites(1, n - 1), {n - 1}, n);
        if (bulk) {
            inst.layer = make_layer(*bulk, inst.partition.b, 2);
        } else {
            inst.layer = ChannelLayer({}, inst.partition.b);
            for (int i = 1; i + 1 < n; i += 2) {
                inst.layer.add_pauli_measurement(PauliString::from_ops(n, "ZZ", {i, i + 1}));
                inst.layer.add_pauli_measurement(PauliString::from_ops(n, "XX", {i, i + 1}));
            }
        }
    } else if (family == "cluster_chain") {
        // n = 2d puts the nearest terms touching A and C exactly d_AC = d terms apart.
        const int n = 2 * distance;
        inst.id = family + "_n" + std::to_string(n);
        inst.h = cluster_chain(n);
        inst.partition = Partition({0}, range_sites(1, n - 1), {n - 1}, n);
        ChannelSpec spec;
        spec.kind = "bitflip";
        spec.p = 0.5;
        inst.layer = make_layer(bulk.value_or(spec), inst.partition.b, 2);
    } else {
        throw Error("unknown model family '" + family + "'");
    }
    return inst;
}

bool is_builtin_id(const std::string &id) {
    static const std::regex chain(R"((ising_chain|parity_chain|bell_chain|cluster_chain)_n(\d+))");
    static const std::regex lattice(R"(ising_lattice_(\d+)x(\d+))");
    return std::regex_match(id, chain) || std::regex_match(id, lattice);
}

ModelInstance builtin_instance(const std::string &id, const std::optional<ChannelSpec> &bulk) {
    static const std::regex chain(R"((ising_chain|parity_chain|bell_chain|cluster_chain)_n(\d+))");
    static const std::regex lattice(R"(ising_lattice_(\d+)x(\d+))");
    std::smatch m;
    if (std::regex_match(id, m, chain)) {
        const std::string family = m[1];
        const int n = std::stoi(m[2]);
        ModelInstance inst;
        if (family == "ising_chain") {
            inst = family_instance(family, n - 1, bulk);
        } else if (family == "parity_chain" || family == "bell_chain") {
            inst = family_instance(family, n + 1, bulk);
        } else {
            // Odd lengths are allowed for explicit ids; the partition rule is unchanged.
            if (n < 2) throw Error("cluster chain needs at least 2 sites");
            inst.id = id;
            inst.h = cluster_chain(n);
            inst.partition = Partition({0}, range_sites(1, n - 1), {n - 1}, n);
            ChannelSpec spec;
            spec.kind = "bitflip";
            spec.p = 0.5;
            inst.layer = make_layer(bulk.value_or(spec), inst.partition.b, 2);
            TermDistance d = graph_distance(inst.h, inst.partition);
            inst.distance = d.is_infinite() ? 0 : static_cast<int>(d.value());
        }
        inst.id = id;
        return inst;
    }
    if (std::regex_match(id, m, lattice)) {
        const int rows = std::stoi(m[1]);
        const int cols = std::stoi(m[2]);
        ModelInstance inst;
        inst.id = id;
        inst.h = ising_lattice(rows, cols);
        const int n = rows * cols;
        // A is the first column, C the last, B the rest.
        SiteSet a, b, c;
        for (int s = 0; s < n; ++s) {
            int col = s % cols;
            (col == 0 ? a : (col == cols - 1 ? c : b)).push_back(s);
        }
        inst.partition = Partition(a, b, c, n);
        inst.layer = make_layer(bulk.value_or(ChannelSpec{}), inst.partition.b, 2);
        TermDistance d = graph_distance(inst.h, inst.partition);
        inst.distance = d.is_infinite() ? 0 : static_cast<int>(d.value());
        return inst;
    }
    throw Error("unknown built-in model id '" + id + "'");
}

LocalHamiltonian random_stabilizer_model(int n_sites, int num_terms, int max_weight, std::mt19937_64 &rng) {
    if (n_sites < 1 || n_sites > 64 || num_terms < 0) throw Error("invalid random model size");
    std::uniform_int_distribution<int> site_dist(0, n_sites - 1);
    std::uniform_int_distribution<int> code_dist(1, 3);
    std::uniform_int_distribution<int> weight_dist(1, std::max(1, std::min(max_weight, n_sites)));
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::bernoulli_distribution use_product(0.2);
    std::vector<PauliString> ops;
    int attempts = 0;
    while (static_cast<int>(ops.size()) < num_terms && attempts < 20000) {
        ++attempts;
        PauliString cand(n_sites);
        if (ops.size() >= 2 && use_product(rng)) {
            std::uniform_int_distribution<std::size_t> pick(0, ops.size() - 1);
            std::size_t i = pick(rng), j = pick(rng);
            if (i == j) continue;
            cand = (ops[i] * ops[j]).unsigned_part();
        } else {
            const int w = weight_dist(rng);
            std::uint64_t x = 0, z = 0;
            for (int k = 0; k < w; ++k) {
                int s = site_dist(rng);
                int code = code_dist(rng);
                x &= ~(std::uint64_t{1} << s);
                z &= ~(std::uint64_t{1} << s);
                if (code == 1 || code == 2) x |= std::uint64_t{1} << s;
                if (code == 2 || code == 3) z |= std::uint64_t{1} << s;
            }
            cand = PauliString(n_sites, x, z, 1);
        }
        if (cand.is_identity()) continue;
        bool ok = true;
        for (const auto &o : ops) ok = ok && o.commutes_with(cand) && !(o.unsigned_part() == cand.unsigned_part());
        if (ok) ops.push_back(cand);
    }
    std::vector<HamiltonianTerm> terms;
    for (const auto &o : ops) terms.push_back(HamiltonianTerm::pauli(o, coef(rng)));
    return LocalHamiltonian(SiteGraph(n_sites, 2), terms);
}

ChannelLayer random_pauli_layer(const SiteSet &sites, std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> prob(0.0, 1.0);
    std::uniform_int_distribution<int> kind(0, 3);
    ChannelLayer layer({}, sites);
    for (int s : sites) {
        double p = prob(rng);
        switch (kind(rng)) {
            case 0: layer.set(dephasing(s, p)); break;
            case 1: layer.set(bit_flip(s, p)); break;
            case 2: layer.set(depolarizing(s, p)); break;
            default: break;
        }
    }
    return layer;
}

}  // namespace cmilab

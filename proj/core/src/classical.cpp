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

#include "cmilab/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cmilab {

std::size_t classical_config_cap() {
    return env_cap("CMILAB_MAX_CONFIGS", kDefaultMaxConfigs);
}

Distribution::Distribution(int n_sites, int local_dim, std::vector<double> probs)
    : n_(n_sites), q_(local_dim), probs_(std::move(probs)) {
    std::size_t expected = 1;
    for (int i = 0; i < n_; i++) expected *= static_cast<std::size_t>(q_);
    if (probs_.size() != expected) {
        throw Error("distribution has " + std::to_string(probs_.size()) + " entries, expected q^n");
    }
    double sum = 0;
    for (double &p : probs_) {
        if (!(p >= -1e-15)) {
            throw Error("distribution entries must be nonnegative");
        }
        p = std::max(p, 0.0);
        sum += p;
    }
    if (std::abs(sum - 1) > 1e-10) {
        throw Error("distribution does not sum to 1");
    }
    for (double &p : probs_) p /= sum;
}

std::vector<int> Distribution::digits(std::size_t index) const {
    std::vector<int> d(n_);
    for (int s = n_ - 1; s >= 0; s--) {
        d[s] = static_cast<int>(index % q_);
        index /= q_;
    }
    return d;
}

std::size_t Distribution::index(const std::vector<int> &digits) const {
    std::size_t idx = 0;
    for (int s = 0; s < n_; s++) idx = idx * q_ + digits[s];
    return idx;
}

std::vector<std::uint32_t> region_index_map(int n, int q, const SiteSet &region) {
    std::size_t total = 1;
    for (int i = 0; i < n; i++) total *= static_cast<std::size_t>(q);
    std::vector<std::uint32_t> contribution(n, 0);
    std::uint32_t stride = 1;
    for (int k = static_cast<int>(region.size()) - 1; k >= 0; k--) {
        contribution[region[k]] = stride;
        stride *= static_cast<std::uint32_t>(q);
    }
    std::vector<std::uint32_t> out(total);
    std::vector<int> digits(n, 0);
    std::uint32_t idx = 0;
    for (std::size_t x = 0; x < total; x++) {
        out[x] = idx;
        // Odometer increment, last site fastest.
        for (int s = n - 1; s >= 0; s--) {
            if (++digits[s] < q) {
                idx += contribution[s];
                break;
            }
            digits[s] = 0;
            idx -= contribution[s] * static_cast<std::uint32_t>(q - 1);
        }
    }
    return out;
}

Distribution Distribution::marginal(const SiteSet &region) const {
    const SiteSet r = normalize_sites(region, n_);
    if (r.empty()) {
        return Distribution(0, q_, {1.0});
    }
    if (static_cast<int>(r.size()) == n_) {
        return *this;
    }
    std::size_t size = 1;
    for (std::size_t i = 0; i < r.size(); i++) size *= static_cast<std::size_t>(q_);
    std::vector<double> out(size, 0.0);
    const auto map = region_index_map(n_, q_, r);
    for (std::size_t x = 0; x < probs_.size(); x++) out[map[x]] += probs_[x];
    return Distribution(static_cast<int>(r.size()), q_, std::move(out));
}

Distribution gibbs_distribution(const LocalHamiltonian &h, double beta) {
    if (!h.all_diagonal()) {
        throw Error("classical Gibbs distribution requires a diagonal Hamiltonian");
    }
    if (!(beta >= 0)) {
        throw Error("beta must be nonnegative");
    }
    const int n = h.n_sites();
    const int q = h.local_dim();
    const std::size_t total = checked_power(q, n, classical_config_cap(), "CMILAB_MAX_CONFIGS");
    std::vector<double> energy(total, 0.0);
    std::vector<int> digits(n, 0);
    for (std::size_t x = 0; x < total; x++) {
        double e = 0;
        for (const auto &t : h.terms()) e += t.lambda() * t.diagonal_value(digits, q);
        energy[x] = e;
        for (int s = n - 1; s >= 0 && ++digits[s] == q; s--) digits[s] = 0;
    }
    const double emin = *std::min_element(energy.begin(), energy.end());
    std::vector<double> probs(total);
    double sum = 0;
    for (std::size_t x = 0; x < total; x++) {
        double e = energy[x] - emin;
        if (std::isinf(beta)) {
            probs[x] = e <= 1e-9 ? 1.0 : 0.0;
        } else {
            probs[x] = std::exp(-beta * e);
        }
        sum += probs[x];
    }
    for (double &p : probs) p /= sum;
    return Distribution(n, q, std::move(probs));
}

Distribution apply_transitions(const Distribution &d, const ChannelLayer &layer) {
    if (!layer.pauli_measurements().empty()) {
        throw Error("the classical engine does not support multi-site Pauli measurements");
    }
    const int n = d.n_sites();
    const int q = d.local_dim();
    const auto strides = site_strides(n, q);
    std::vector<double> cur = d.probs();
    for (const auto &[s, c] : layer.channels()) {
        if (s < 0 || s >= n) throw Error("channel site out of range");
        if (c.dim() != q) throw Error("channel dimension does not match the local dimension");
        const RealMatrix t = c.classical_transition();
        const std::size_t stride = strides[s];
        const std::size_t block = stride * q;
        std::vector<double> next(cur.size());
        std::vector<double> v(q);
        for (std::size_t hi = 0; hi < cur.size(); hi += block) {
            for (std::size_t lo = 0; lo < stride; lo++) {
                const std::size_t base = hi + lo;
                for (int yp = 0; yp < q; yp++) v[yp] = cur[base + yp * stride];
                for (int y = 0; y < q; y++) {
                    double acc = 0;
                    for (int yp = 0; yp < q; yp++) acc += t(y, yp) * v[yp];
                    next[base + y * stride] = acc;
                }
            }
        }
        cur = std::move(next);
    }
    return Distribution(n, q, std::move(cur));
}

namespace {

double entropy_nats_of(const std::vector<double> &p) {
    double s = 0;
    for (double v : p) {
        if (v > 0) s -= v * std::log(v);
    }
    return s;
}

}  // namespace

double shannon_entropy(const Distribution &d, const SiteSet &region) {
    return entropy_nats_of(d.marginal(region).probs()) / kLn2;
}

double mutual_information(const Distribution &d, const SiteSet &a, const SiteSet &c) {
    const SiteSet ac = site_union(a, c);
    const Distribution m = d.marginal(ac);
    SiteSet la, lc;
    for (std::size_t k = 0; k < ac.size(); k++) {
        if (std::binary_search(a.begin(), a.end(), ac[k])) {
            la.push_back(static_cast<int>(k));
        } else {
            lc.push_back(static_cast<int>(k));
        }
    }
    const auto ma = region_index_map(m.n_sites(), m.local_dim(), la);
    const auto mc = region_index_map(m.n_sites(), m.local_dim(), lc);
    const Distribution pa = m.marginal(la), pc = m.marginal(lc);
    double s = 0;
    for (std::size_t x = 0; x < m.size(); x++) {
        double v = m[x];
        if (v > 0) s += v * std::log(v / (pa[ma[x]] * pc[mc[x]]));
    }
    return s / kLn2;
}

double cmi_raw(const Distribution &d, const Partition &p) {
    const SiteSet abc = p.abc();
    const Distribution m = d.marginal(abc);
    SiteSet lab, lbc, lb;
    for (std::size_t k = 0; k < abc.size(); k++) {
        const int s = abc[k];
        const bool in_a = std::binary_search(p.a.begin(), p.a.end(), s);
        const bool in_c = std::binary_search(p.c.begin(), p.c.end(), s);
        if (!in_c) lab.push_back(static_cast<int>(k));
        if (!in_a) lbc.push_back(static_cast<int>(k));
        if (!in_a && !in_c) lb.push_back(static_cast<int>(k));
    }
    const int n = m.n_sites(), q = m.local_dim();
    const auto iab = region_index_map(n, q, lab);
    const auto ibc = region_index_map(n, q, lbc);
    const auto ib = region_index_map(n, q, lb);
    std::vector<double> pab(*std::max_element(iab.begin(), iab.end()) + 1, 0.0);
    std::vector<double> pbc(*std::max_element(ibc.begin(), ibc.end()) + 1, 0.0);
    std::vector<double> pb(*std::max_element(ib.begin(), ib.end()) + 1, 0.0);
    for (std::size_t x = 0; x < m.size(); x++) {
        pab[iab[x]] += m[x];
        pbc[ibc[x]] += m[x];
        pb[ib[x]] += m[x];
    }
    double s = 0;
    for (std::size_t x = 0; x < m.size(); x++) {
        const double v = m[x];
        if (v > 0) s += v * std::log((v * pb[ib[x]]) / (pab[iab[x]] * pbc[ibc[x]]));
    }
    return s / kLn2;
}

double cmi(const Distribution &d, const Partition &p) {
    const double raw = cmi_raw(d, p);
    if (raw < -1e-10) {
        throw Error("negative classical CMI " + std::to_string(raw) + " indicates an internal inconsistency");
    }
    return std::max(raw, 0.0);
}

double cmi_from_entropies(const Distribution &d, const Partition &p) {
    return shannon_entropy(d, p.ab()) + shannon_entropy(d, p.bc()) - shannon_entropy(d, p.b) -
           shannon_entropy(d, p.abc());
}

std::vector<OutcomeTerm> post_select_decompose(const Distribution &d, const Partition &p) {
    if (p.b.empty()) {
        throw Error("post-selection needs a nonempty B");
    }
    const SiteSet abc = p.abc();
    const Distribution m = d.marginal(abc);
    SiteSet la, lb, lc;
    for (std::size_t k = 0; k < abc.size(); k++) {
        const int s = abc[k];
        if (std::binary_search(p.a.begin(), p.a.end(), s)) {
            la.push_back(static_cast<int>(k));
        } else if (std::binary_search(p.c.begin(), p.c.end(), s)) {
            lc.push_back(static_cast<int>(k));
        } else {
            lb.push_back(static_cast<int>(k));
        }
    }
    const int n = m.n_sites(), q = m.local_dim();
    const auto ia = region_index_map(n, q, la);
    const auto ib = region_index_map(n, q, lb);
    const auto ic = region_index_map(n, q, lc);
    std::size_t na = 1, nb = 1, nc = 1;
    for (std::size_t i = 0; i < la.size(); i++) na *= q;
    for (std::size_t i = 0; i < lb.size(); i++) nb *= q;
    for (std::size_t i = 0; i < lc.size(); i++) nc *= q;
    // joint[b][a * nc + c]
    std::vector<std::vector<double>> joint(nb, std::vector<double>(na * nc, 0.0));
    for (std::size_t x = 0; x < m.size(); x++) joint[ib[x]][ia[x] * nc + ic[x]] += m[x];

    std::vector<OutcomeTerm> out;
    for (std::size_t b = 0; b < nb; b++) {
        const auto &tab = joint[b];
        const double pb = std::accumulate(tab.begin(), tab.end(), 0.0);
        if (pb < 1e-15) continue;
        std::vector<double> pa(na, 0.0), pc(nc, 0.0);
        for (std::size_t a = 0; a < na; a++) {
            for (std::size_t c = 0; c < nc; c++) {
                pa[a] += tab[a * nc + c] / pb;
                pc[c] += tab[a * nc + c] / pb;
            }
        }
        double mi = 0;
        for (std::size_t a = 0; a < na; a++) {
            for (std::size_t c = 0; c < nc; c++) {
                const double v = tab[a * nc + c] / pb;
                if (v > 0) mi += v * std::log(v / (pa[a] * pc[c]));
            }
        }
        OutcomeTerm term;
        std::size_t rem = b;
        term.outcome.assign(lb.size(), 0);
        for (std::size_t k = lb.size(); k-- > 0;) {
            term.outcome[k] = static_cast<int>(rem % q);
            rem /= q;
        }
        term.probability = pb;
        term.mutual_information = mi / kLn2;
        out.push_back(std::move(term));
    }
    return out;
}

double total_variation(const Distribution &a, const Distribution &b) {
    if (a.size() != b.size()) {
        throw Error("total variation between distributions of different sizes");
    }
    double s = 0;
    for (std::size_t x = 0; x < a.size(); x++) s += std::abs(a[x] - b[x]);
    return 0.5 * s;
}

PinnedHamiltonian::PinnedHamiltonian(LocalHamiltonian base, double beta, SiteSet pinned_sites, std::vector<int> outcome,
                                     std::vector<std::vector<double>> pinning)
    : base_(std::move(base)),
      beta_(beta),
      sites_(std::move(pinned_sites)),
      outcome_(std::move(outcome)),
      pinning_(std::move(pinning)) {
    if (sites_.size() != outcome_.size() || sites_.size() != pinning_.size()) {
        throw Error("pinned Hamiltonian: sites, outcome and pinning tables must have equal length");
    }
    z0_ = 1;
    for (const auto &d : pinning_) {
        double z = 0;
        for (double v : d) z += std::exp(-v);
        z_sites_.push_back(z);
        z0_ *= z;
    }
}

double PinnedHamiltonian::energy(const std::vector<int> &digits) const {
    double e = beta_ == 0 ? 0.0 : beta_ * base_.diagonal_energy(digits);
    for (std::size_t k = 0; k < sites_.size(); k++) e += pinning_[k][digits[sites_[k]]];
    return e;
}

Distribution PinnedHamiltonian::gibbs() const {
    const int n = base_.n_sites();
    const int q = base_.local_dim();
    const std::size_t total = checked_power(q, n, classical_config_cap(), "CMILAB_MAX_CONFIGS");
    std::vector<double> e(total);
    std::vector<int> digits(n, 0);
    for (std::size_t x = 0; x < total; x++) {
        std::size_t rem = x;
        for (int s = n - 1; s >= 0; s--) {
            digits[s] = static_cast<int>(rem % q);
            rem /= q;
        }
        e[x] = energy(digits);
    }
    const double emin = *std::min_element(e.begin(), e.end());
    double sum = 0;
    for (double &v : e) {
        v = std::exp(-(v - emin));
        sum += v;
    }
    for (double &v : e) v /= sum;
    return Distribution(n, q, std::move(e));
}

Distribution PinnedHamiltonian::unpinned_marginal() const {
    return gibbs().marginal(complement(sites_, base_.n_sites()));
}

PinnedHamiltonian pinned_hamiltonian(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                     const std::vector<int> &y) {
    if (!h.all_diagonal()) {
        throw Error("pinned Hamiltonian requires a diagonal Hamiltonian");
    }
    const SiteSet sites = layer.channel_sites();
    if (y.size() != sites.size()) {
        throw Error("outcome must assign one value per channel site");
    }
    std::vector<std::vector<double>> pinning;
    for (std::size_t k = 0; k < sites.size(); k++) {
        const RealMatrix t = layer.find(sites[k])->classical_transition();
        const int q = static_cast<int>(t.rows());
        if (y[k] < 0 || y[k] >= q) {
            throw Error("outcome value out of range");
        }
        std::vector<double> d(q);
        for (int v = 0; v < q; v++) {
            if (!(t(y[k], v) > 0)) {
                throw Error("transition matrix on site " + std::to_string(sites[k]) +
                            " has a zero entry; mix it with a small amount of depolarization first");
            }
            d[v] = -std::log(t(y[k], v));
        }
        pinning.push_back(std::move(d));
    }
    return PinnedHamiltonian(h, beta, sites, y, std::move(pinning));
}

Distribution post_selected_conditional(const Distribution &gibbs, const ChannelLayer &layer,
                                       const std::vector<int> &y) {
    const Distribution out = apply_transitions(gibbs, layer);
    const SiteSet sites = layer.channel_sites();
    if (y.size() != sites.size()) {
        throw Error("outcome must assign one value per channel site");
    }
    const int n = gibbs.n_sites(), q = gibbs.local_dim();
    const SiteSet rest = complement(sites, n);
    const auto map = region_index_map(n, q, rest);
    std::size_t size = 1;
    for (std::size_t i = 0; i < rest.size(); i++) size *= q;
    std::vector<double> cond(size, 0.0);
    double total = 0;
    for (std::size_t x = 0; x < out.size(); x++) {
        const auto dg = out.digits(x);
        bool match = true;
        for (std::size_t k = 0; k < sites.size() && match; k++) match = dg[sites[k]] == y[k];
        if (match) {
            cond[map[x]] += out[x];
            total += out[x];
        }
    }
    if (total <= 0) {
        throw Error("post-selected outcome has zero probability");
    }
    for (double &v : cond) v /= total;
    return Distribution(static_cast<int>(rest.size()), q, std::move(cond));
}

}  // namespace cmilab

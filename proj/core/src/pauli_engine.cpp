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

#include "cmilab/pauli_engine.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

namespace cmilab {

namespace {

constexpr double kPrune = 1e-18;

// +1 or -1 with P_a P_b = sign * P_{a^b} for commuting unsigned Paulis.
int commuting_product_sign(const PauliKey &a, const PauliKey &b) {
    int k = product_phase_exponent(a.x, a.z, b.x, b.z);
    if (k & 1) {
        throw Error("internal error: anticommuting Paulis in an abelian expansion");
    }
    return k == 2 ? -1 : 1;
}

std::uint64_t region_mask(const SiteSet &region) {
    std::uint64_t m = 0;
    for (int s : region) {
        m |= std::uint64_t{1} << s;
    }
    return m;
}

// Walsh-Hadamard transform in place: f[s] <- sum_e f[e] (-1)^{popcount(e & s)}.
void walsh_hadamard(std::vector<double> &f) {
    for (std::size_t len = 1; len < f.size(); len <<= 1) {
        for (std::size_t i = 0; i < f.size(); i += 2 * len) {
            for (std::size_t j = i; j < i + len; ++j) {
                double u = f[j];
                double v = f[j + len];
                f[j] = u + v;
                f[j + len] = u - v;
            }
        }
    }
}

// Incremental F2 basis over 128-bit symplectic vectors with the combination of inserted
// generators that produced each reduced row.
class F2Basis {
   public:
    struct Row {
        PauliKey v;
        std::uint32_t combo;
    };

    // Reduces v; returns the leftover vector and the generator combination that was removed.
    std::pair<PauliKey, std::uint32_t> reduce(PauliKey v) const {
        std::uint32_t combo = 0;
        for (const Row &r : rows_) {
            if (has_bit(v, pivot(r.v))) {
                v.x ^= r.v.x;
                v.z ^= r.v.z;
                combo ^= r.combo;
            }
        }
        return {v, combo};
    }

    // Inserts a generator already known to be independent (leftover from reduce()).
    void insert(const PauliKey &leftover, std::uint32_t combo_of_removed, std::size_t generator_index) {
        Row row{leftover, combo_of_removed ^ (std::uint32_t{1} << generator_index)};
        int p = pivot(row.v);
        // Keep rows fully reduced with respect to each other's pivots.
        for (Row &r : rows_) {
            if (has_bit(r.v, p)) {
                r.v.x ^= row.v.x;
                r.v.z ^= row.v.z;
                r.combo ^= row.combo;
            }
        }
        rows_.push_back(row);
    }

   private:
    static int pivot(const PauliKey &v) {
        if (v.x != 0) {
            return std::countr_zero(v.x);
        }
        return 64 + std::countr_zero(v.z);
    }
    static bool has_bit(const PauliKey &v, int bit) {
        return bit < 64 ? ((v.x >> bit) & 1) != 0 : ((v.z >> (bit - 64)) & 1) != 0;
    }

    std::vector<Row> rows_;
};

struct CharacterTable {
    RestrictedGroup group;
    std::vector<double> f;  // f[e] = sum of c_g sigma_g over elements with generator exponents e
};

CharacterTable build_character_table(const PauliExpansion &e, const SiteSet &region) {
    const int n = e.n_sites();
    SiteSet sorted_region = normalize_sites(region, n);
    const std::uint64_t mask = region_mask(sorted_region);
    const std::size_t rank_cap = pauli_rank_cap();

    std::vector<std::pair<PauliKey, double>> elements;
    for (const auto &[key, c] : e.sorted()) {
        if (((key.x | key.z) & ~mask) == 0) {
            elements.emplace_back(key, c);
        }
    }

    CharacterTable table;
    table.group.region = sorted_region;
    F2Basis basis;
    std::vector<std::uint32_t> combos(elements.size());
    for (std::size_t i = 0; i < elements.size(); ++i) {
        auto [left, combo] = basis.reduce(elements[i].first);
        if (left.x == 0 && left.z == 0) {
            combos[i] = combo;
            continue;
        }
        std::size_t index = table.group.generators.size();
        if (index + 1 > rank_cap || index >= 31) {
            throw CapError("restricted Pauli group rank exceeds CMILAB_MAX_PAULI_RANK (" + std::to_string(rank_cap) +
                           ")");
        }
        table.group.generators.push_back(elements[i].first);
        basis.insert(left, combo, index);
        combos[i] = std::uint32_t{1} << index;
    }

    const std::size_t r = table.group.rank();
    table.f.assign(std::size_t{1} << r, 0.0);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        // sigma: product of the generators in combos[i] equals sigma * P_g.
        PauliKey acc{0, 0};
        int sigma = 1;
        for (std::uint32_t bits = combos[i]; bits != 0; bits &= bits - 1) {
            const PauliKey &gen = table.group.generators[std::countr_zero(bits)];
            sigma *= commuting_product_sign(acc, gen);
            acc.x ^= gen.x;
            acc.z ^= gen.z;
        }
        if (acc != elements[i].first) {
            throw Error("internal error: F2 elimination produced an inconsistent combination");
        }
        table.f[combos[i]] += sigma * elements[i].second;
    }
    return table;
}

}  // namespace

std::size_t pauli_term_cap() { return env_cap("CMILAB_MAX_PAULI_TERMS", kDefaultMaxPauliTerms); }
std::size_t pauli_rank_cap() { return env_cap("CMILAB_MAX_PAULI_RANK", kDefaultMaxPauliRank); }

PauliExpansion::PauliExpansion(int n_sites) : n_(n_sites) {
    if (n_sites < 0 || n_sites > 64) {
        throw Error("Pauli expansion supports 0..64 sites");
    }
    coeffs_[PauliKey{}] = 1.0;
}

PauliExpansion::PauliExpansion(int n_sites, Map coefficients, double log_scale)
    : n_(n_sites), coeffs_(std::move(coefficients)), log_scale_(log_scale) {
    auto it = coeffs_.find(PauliKey{});
    if (it == coeffs_.end() || !(it->second > 0)) {
        throw Error("Pauli expansion needs a positive identity coefficient");
    }
    double a = it->second;
    if (a != 1.0) {
        for (auto &kv : coeffs_) {
            kv.second /= a;
        }
        log_scale_ += std::log(a);
    }
}

double PauliExpansion::coefficient(const PauliString &p) const {
    auto it = coeffs_.find(PauliKey{p.x_bits(), p.z_bits()});
    return it == coeffs_.end() ? 0.0 : p.sign() * it->second;
}

std::vector<std::pair<PauliKey, double>> PauliExpansion::sorted() const {
    std::vector<std::pair<PauliKey, double>> out(coeffs_.begin(), coeffs_.end());
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
    return out;
}

Matrix PauliExpansion::to_dense() const {
    if (n_ > 12) {
        throw CapError("dense conversion of a Pauli expansion is limited to 12 sites");
    }
    const std::size_t dim = std::size_t{1} << n_;
    Matrix m = Matrix::Zero(dim, dim);
    const double scale = 1.0 / static_cast<double>(dim);
    for (const auto &[key, c] : sorted()) {
        PauliString p(n_, key.x, key.z);
        std::uint64_t xi = p.index_x_mask();
        for (std::uint64_t b = 0; b < dim; ++b) {
            m(b ^ xi, b) += scale * c * p.basis_phase(b);
        }
    }
    return m;
}

PauliExpansion expand_gibbs(const LocalHamiltonian &h, double beta) {
    if (!h.all_pauli()) {
        throw Error("the Pauli engine requires Pauli Hamiltonian terms");
    }
    if (!h.commuting()) {
        throw Error("the Pauli engine requires a commuting Hamiltonian");
    }
    if (h.size() > pauli_term_cap()) {
        throw CapError("term count " + std::to_string(h.size()) + " exceeds CMILAB_MAX_PAULI_TERMS (" +
                       std::to_string(pauli_term_cap()) + ")");
    }
    if (std::isnan(beta) || beta < 0) {
        throw Error("beta must be nonnegative");
    }
    const bool infinite = std::isinf(beta);
    const int n = h.n_sites();
    PauliExpansion::Map acc;
    acc[PauliKey{}] = 1.0;
    double log_scale = 0;
    for (const HamiltonianTerm &term : h.terms()) {
        const double bl = beta * term.lambda();
        double t;
        if (term.lambda() == 0) {
            t = 0;
        } else if (infinite) {
            t = term.lambda() > 0 ? 1.0 : -1.0;
        } else {
            t = std::tanh(bl);
            // log cosh(x) = |x| + log1p(exp(-2|x|)) - log 2
            log_scale += std::abs(bl) + std::log1p(std::exp(-2 * std::abs(bl))) - kLn2;
        }
        if (t == 0) {
            continue;
        }
        const PauliString &op = term.pauli_op();
        const PauliKey hk{op.x_bits(), op.z_bits()};
        const double factor = -t * op.sign();
        PauliExpansion::Map next;
        next.reserve(acc.size() * 2);
        for (const auto &[key, c] : acc) {
            next[key] += c;
            PauliKey prod{key.x ^ hk.x, key.z ^ hk.z};
            next[prod] += c * factor * commuting_product_sign(key, hk);
        }
        acc.clear();
        for (const auto &kv : next) {
            if (std::abs(kv.second) >= kPrune) {
                acc.insert(kv);
            }
        }
    }
    auto it = acc.find(PauliKey{});
    if (it == acc.end() || !(it->second > 0)) {
        throw Error("Gibbs expansion has a non-positive identity coefficient");
    }
    return PauliExpansion(n, std::move(acc), log_scale);
}

PauliExpansion apply_pauli_layer(const PauliExpansion &e, const ChannelLayer &layer) {
    const int n = e.n_sites();
    std::vector<std::pair<int, std::array<double, 4>>> profiles;
    for (const auto &[site, channel] : layer.channels()) {
        if (site >= n) {
            throw Error("channel site out of range for the Pauli expansion");
        }
        profiles.emplace_back(site, pauli_damping_profile(channel));
    }
    PauliExpansion::Map out;
    double identity = 1.0;
    for (const auto &[key, c] : e.coefficients()) {
        double v = c;
        for (const PauliString &m : layer.pauli_measurements()) {
            if (product_phase_exponent(key.x, key.z, m.x_bits(), m.z_bits()) & 1) {
                v = 0;
                break;
            }
        }
        for (const auto &[site, f] : profiles) {
            if (v == 0) {
                break;
            }
            int code = static_cast<int>(((key.x >> site) & 1) | (((key.z >> site) & 1) << 1));
            // code: 0 = I, 1 = X, 2 = Z, 3 = Y in (x, z) order; the profile is indexed I, X, Y, Z.
            static constexpr int kToProfile[4] = {0, 1, 3, 2};
            v *= f[kToProfile[code]];
        }
        if (key == PauliKey{}) {
            identity = v;
        }
        if (std::abs(v) >= kPrune) {
            out.emplace(key, v);
        }
    }
    if (!(identity > 0)) {
        throw Error("layer removed the identity component; it is not trace preserving");
    }
    return PauliExpansion(n, std::move(out), e.log_scale());
}

RestrictedGroup restricted_group(const PauliExpansion &e, const SiteSet &region) {
    return build_character_table(e, region).group;
}

MarginalSpectrum marginal_spectrum(const PauliExpansion &e, const SiteSet &region) {
    CharacterTable table = build_character_table(e, region);
    const std::size_t size_l = table.group.region.size();
    const std::size_t r = table.group.rank();
    walsh_hadamard(table.f);
    MarginalSpectrum spec;
    spec.degeneracy = std::ldexp(1.0, static_cast<int>(size_l - r));
    const double scale = std::ldexp(1.0, -static_cast<int>(size_l));
    spec.eigenvalues.reserve(table.f.size());
    for (double v : table.f) {
        double lambda = scale * v;
        if (lambda < -1e-10) {
            throw Error("Pauli marginal has a negative eigenvalue " + std::to_string(lambda));
        }
        spec.eigenvalues.push_back(std::max(lambda, 0.0));
    }
    return spec;
}

double marginal_entropy(const PauliExpansion &e, const SiteSet &region) {
    if (region.empty()) {
        return 0.0;
    }
    MarginalSpectrum spec = marginal_spectrum(e, region);
    double s = 0;
    for (double lambda : spec.eigenvalues) {
        if (lambda > 1e-15) {
            s -= spec.degeneracy * lambda * std::log(lambda);
        }
    }
    return s / kLn2;
}

double pauli_cmi(const PauliExpansion &e, const Partition &p) {
    double v = marginal_entropy(e, p.ab()) + marginal_entropy(e, p.bc()) - marginal_entropy(e, p.b) -
               marginal_entropy(e, p.abc());
    if (v < -1e-8) {
        throw Error("Pauli CMI is negative beyond tolerance: " + std::to_string(v));
    }
    return std::max(v, 0.0);
}

}  // namespace cmilab

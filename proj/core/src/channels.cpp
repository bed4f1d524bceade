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

#include "cmilab/channels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace cmilab {

namespace {

constexpr double kChannelTol = 1e-12;

Matrix basis_op(int q, int i, int j) {
    Matrix m = Matrix::Zero(q, q);
    m(i, j) = 1;
    return m;
}

bool is_diagonal_matrix(const Matrix &m, double tol) {
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        for (Eigen::Index j = 0; j < m.cols(); j++) {
            if (i != j && std::abs(m(i, j)) > tol) {
                return false;
            }
        }
    }
    return true;
}

// Generalized Pauli (clock and shift) operators for q > 2.
std::vector<Matrix> weyl_operators(int q) {
    const double pi = std::acos(-1.0);
    std::vector<Matrix> out;
    for (int a = 0; a < q; a++) {
        for (int b = 0; b < q; b++) {
            Matrix w = Matrix::Zero(q, q);
            for (int k = 0; k < q; k++) {
                w((k + a) % q, k) = std::polar(1.0, 2 * pi * b * k / q);
            }
            out.push_back(w);
        }
    }
    return out;
}

}  // namespace

SiteChannel SiteChannel::transition(int site, RealMatrix t) {
    if (t.rows() != t.cols() || t.rows() < 2) {
        throw Error("transition matrix must be square with dimension >= 2");
    }
    for (Eigen::Index j = 0; j < t.cols(); j++) {
        double sum = 0;
        for (Eigen::Index i = 0; i < t.rows(); i++) {
            if (!(t(i, j) >= -1e-15)) {
                throw Error("transition matrix entries must be nonnegative");
            }
            t(i, j) = std::max(t(i, j), 0.0);
            sum += t(i, j);
        }
        if (std::abs(sum - 1) > kChannelTol) {
            throw Error("transition matrix columns must sum to 1");
        }
    }
    SiteChannel c;
    c.site_ = site;
    c.dim_ = static_cast<int>(t.rows());
    c.data_ = std::move(t);
    c.classify();
    return c;
}

SiteChannel SiteChannel::kraus(int site, std::vector<Matrix> ops) {
    if (ops.empty()) {
        throw Error("Kraus channel needs at least one operator");
    }
    const Eigen::Index q = ops.front().rows();
    if (q < 2) {
        throw Error("Kraus operators must have dimension >= 2");
    }
    Matrix sum = Matrix::Zero(q, q);
    for (const auto &k : ops) {
        if (k.rows() != q || k.cols() != q) {
            throw Error("Kraus operators must all be q x q");
        }
        sum += k.adjoint() * k;
    }
    if ((sum - Matrix::Identity(q, q)).cwiseAbs().maxCoeff() > kChannelTol) {
        throw Error("Kraus operators violate completeness sum K^dagger K = I");
    }
    SiteChannel c;
    c.site_ = site;
    c.dim_ = static_cast<int>(q);
    c.data_ = std::move(ops);
    c.classify();
    return c;
}

SiteChannel SiteChannel::pauli_mixture(int site, std::array<double, 4> probs) {
    double sum = 0;
    for (double &p : probs) {
        if (!(p >= -1e-15)) {
            throw Error("Pauli mixture probabilities must be nonnegative");
        }
        p = std::max(p, 0.0);
        sum += p;
    }
    if (std::abs(sum - 1) > kChannelTol) {
        throw Error("Pauli mixture probabilities must sum to 1");
    }
    SiteChannel c;
    c.site_ = site;
    c.dim_ = 2;
    c.data_ = probs;
    c.classify();
    return c;
}

ChannelKind SiteChannel::kind() const {
    switch (data_.index()) {
        case 0:
            return ChannelKind::kTransition;
        case 1:
            return ChannelKind::kKraus;
        default:
            return ChannelKind::kPauliMixture;
    }
}

const RealMatrix &SiteChannel::transition_matrix() const {
    if (kind() != ChannelKind::kTransition) throw Error("channel is not a transition matrix");
    return std::get<RealMatrix>(data_);
}

const std::vector<Matrix> &SiteChannel::kraus_ops() const {
    if (kind() != ChannelKind::kKraus) throw Error("channel is not given by Kraus operators");
    return std::get<std::vector<Matrix>>(data_);
}

const std::array<double, 4> &SiteChannel::pauli_probs() const {
    if (kind() != ChannelKind::kPauliMixture) throw Error("channel is not a Pauli mixture");
    return std::get<std::array<double, 4>>(data_);
}

std::vector<Matrix> SiteChannel::kraus_form() const {
    std::vector<Matrix> out;
    switch (kind()) {
        case ChannelKind::kTransition: {
            const auto &t = std::get<RealMatrix>(data_);
            for (int y = 0; y < dim_; y++) {
                for (int yp = 0; yp < dim_; yp++) {
                    if (t(y, yp) > 0) out.push_back(std::sqrt(t(y, yp)) * basis_op(dim_, y, yp));
                }
            }
            break;
        }
        case ChannelKind::kKraus:
            out = std::get<std::vector<Matrix>>(data_);
            break;
        case ChannelKind::kPauliMixture: {
            const auto &p = std::get<std::array<double, 4>>(data_);
            for (int k = 0; k < 4; k++) {
                if (p[k] > 0) out.push_back(std::sqrt(p[k]) * single_qubit_pauli(k));
            }
            break;
        }
    }
    return out;
}

Matrix SiteChannel::apply(const Matrix &op) const {
    Matrix out = Matrix::Zero(dim_, dim_);
    for (const auto &k : kraus_form()) {
        out += k * op * k.adjoint();
    }
    return out;
}

void SiteChannel::classify() {
    complete_depolarizing_ = true;
    preserves_diagonal_ = true;
    for (int i = 0; i < dim_; i++) {
        for (int j = 0; j < dim_; j++) {
            Matrix img = apply(basis_op(dim_, i, j));
            Matrix expect = i == j ? Matrix(Matrix::Identity(dim_, dim_) / dim_) : Matrix(Matrix::Zero(dim_, dim_));
            if ((img - expect).cwiseAbs().maxCoeff() > kChannelTol) {
                complete_depolarizing_ = false;
            }
            if (i == j && !is_diagonal_matrix(img, kChannelTol)) {
                preserves_diagonal_ = false;
            }
        }
    }
}

RealMatrix SiteChannel::classical_transition() const {
    if (!preserves_diagonal_) {
        throw Error("channel on site " + std::to_string(site_) + " does not act classically on diagonal states");
    }
    if (kind() == ChannelKind::kTransition) {
        return std::get<RealMatrix>(data_);
    }
    RealMatrix t(dim_, dim_);
    for (int yp = 0; yp < dim_; yp++) {
        Matrix img = apply(basis_op(dim_, yp, yp));
        for (int y = 0; y < dim_; y++) t(y, yp) = img(y, y).real();
    }
    return t;
}

SiteChannel SiteChannel::on_site(int site) const {
    SiteChannel c = *this;
    c.site_ = site;
    return c;
}

SiteChannel dephasing(int site, double p) {
    return SiteChannel::pauli_mixture(site, {1 - p, 0, 0, p});
}

SiteChannel bit_flip(int site, double p) {
    return SiteChannel::pauli_mixture(site, {1 - p, p, 0, 0});
}

SiteChannel depolarizing(int site, double p, int q) {
    if (p < 0 || p > 1) {
        throw Error("depolarizing probability must lie in [0, 1]");
    }
    if (q == 2) {
        return SiteChannel::pauli_mixture(site, {1 - 0.75 * p, 0.25 * p, 0.25 * p, 0.25 * p});
    }
    std::vector<Matrix> ops = weyl_operators(q);
    const double qq = static_cast<double>(q) * q;
    ops[0] *= std::sqrt(1 - p + p / qq);
    for (std::size_t k = 1; k < ops.size(); k++) ops[k] *= std::sqrt(p / qq);
    return SiteChannel::kraus(site, std::move(ops));
}

SiteChannel complete_depolarizing(int site, int q) {
    if (q == 2) {
        return SiteChannel::pauli_mixture(site, {0.25, 0.25, 0.25, 0.25});
    }
    return uniform_transition(site, q);
}

SiteChannel amplitude_damping(int site, double gamma) {
    Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(1 - gamma);
    k1(0, 1) = std::sqrt(gamma);
    return SiteChannel::kraus(site, {k0, k1});
}

SiteChannel transition_bit_flip(int site, double p) {
    RealMatrix t(2, 2);
    t << 1 - p, p, p, 1 - p;
    return SiteChannel::transition(site, t);
}

SiteChannel uniform_transition(int site, int q) {
    return SiteChannel::transition(site, RealMatrix::Constant(q, q, 1.0 / q));
}

ChannelLayer::ChannelLayer(const std::vector<SiteChannel> &channels, SiteSet region) {
    std::sort(region.begin(), region.end());
    region.erase(std::unique(region.begin(), region.end()), region.end());
    region_ = std::move(region);
    for (const auto &c : channels) {
        if (channels_.count(c.site())) {
            throw Error("two channels on site " + std::to_string(c.site()));
        }
        if (!region_.empty() && !std::binary_search(region_.begin(), region_.end(), c.site())) {
            throw Error("channel on site " + std::to_string(c.site()) + " lies outside the layer region");
        }
        channels_.emplace(c.site(), c);
    }
}

void ChannelLayer::set(const SiteChannel &c) {
    channels_.insert_or_assign(c.site(), c);
}

const SiteChannel *ChannelLayer::find(int site) const {
    auto it = channels_.find(site);
    return it == channels_.end() ? nullptr : &it->second;
}

SiteSet ChannelLayer::channel_sites() const {
    SiteSet out;
    for (const auto &[s, c] : channels_) out.push_back(s);
    return out;
}

SiteSet ChannelLayer::region() const {
    SiteSet r = site_union(region_, channel_sites());
    for (const auto &p : measurements_) r = site_union(r, p.support());
    return r;
}

void ChannelLayer::add_pauli_measurement(const PauliString &p) {
    for (const auto &other : measurements_) {
        if (!other.commutes_with(p)) {
            throw Error("Pauli measurements in one layer must commute");
        }
    }
    measurements_.push_back(p.unsigned_part());
}

ChannelLayer ChannelLayer::permuted(const std::vector<int> &perm) const {
    ChannelLayer out;
    for (const auto &[s, c] : channels_) out.channels_.emplace(perm[s], c.on_site(perm[s]));
    for (int s : region_) out.region_.push_back(perm[s]);
    std::sort(out.region_.begin(), out.region_.end());
    for (const auto &p : measurements_) out.measurements_.push_back(p.permuted(perm));
    return out;
}

bool is_unital(const SiteChannel &c) {
    const int q = c.dim();
    Matrix img = c.apply(Matrix::Identity(q, q));
    return (img - Matrix::Identity(q, q)).cwiseAbs().maxCoeff() <= kChannelTol;
}

bool is_unital(const ChannelLayer &layer) {
    for (const auto &[s, c] : layer.channels()) {
        if (!is_unital(c)) return false;
    }
    return true;
}

ChannelLayer compose_with_trace(const ChannelLayer &layer, const SiteSet &traced, int q) {
    ChannelLayer out = layer;
    for (int s : traced) {
        const SiteChannel *existing = layer.find(s);
        if (q != 2 || (existing != nullptr && existing->kind() == ChannelKind::kTransition)) {
            out.set(uniform_transition(s, q));
        } else {
            out.set(complete_depolarizing(s, q));
        }
    }
    return out;
}

std::array<double, 4> pauli_damping_profile(const SiteChannel &c) {
    if (c.dim() != 2) {
        throw Error("Pauli damping profile requires a qubit channel");
    }
    std::array<double, 4> f{};
    for (int k = 0; k < 4; k++) {
        Matrix p = single_qubit_pauli(k);
        Matrix img = c.apply(p);
        Complex coef = (p * img).trace() / 2.0;
        if ((img - coef * p).cwiseAbs().maxCoeff() > kChannelTol || std::abs(coef.imag()) > kChannelTol) {
            throw Error("channel on site " + std::to_string(c.site()) +
                        " is not diagonal in the Pauli basis; use the dense engine");
        }
        f[k] = coef.real();
    }
    return f;
}

bool is_pauli_diagonal(const SiteChannel &c) {
    try {
        pauli_damping_profile(c);
        return true;
    } catch (const Error &) {
        return false;
    }
}

namespace {

// out(.. y .., .. y ..) = sum_{y'} T(y, y') m(.. y' .., .. y' ..); off-diagonal digits vanish.
Matrix apply_transition_dense(const Matrix &m, const RealMatrix &t, int site, int n, int q) {
    const std::size_t stride = site_strides(n, q)[site];
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    const std::size_t block = stride * static_cast<std::size_t>(q);
    std::vector<std::size_t> bases;
    for (std::size_t hi = 0; hi < dim; hi += block) {
        for (std::size_t lo = 0; lo < stride; lo++) bases.push_back(hi + lo);
    }
    Matrix out = Matrix::Zero(dim, dim);
    std::vector<Complex> v(q);
    for (std::size_t cb : bases) {
        for (std::size_t rb : bases) {
            for (int yp = 0; yp < q; yp++) v[yp] = m(rb + yp * stride, cb + yp * stride);
            for (int y = 0; y < q; y++) {
                Complex acc = 0;
                for (int yp = 0; yp < q; yp++) acc += t(y, yp) * v[yp];
                out(rb + y * stride, cb + y * stride) = acc;
            }
        }
    }
    return out;
}

}  // namespace

Matrix apply_site_channel(const Matrix &m, const SiteChannel &c, int n, int q) {
    if (c.dim() != q) {
        throw Error("channel dimension does not match the local dimension");
    }
    if (c.site() < 0 || c.site() >= n) {
        throw Error("channel site out of range");
    }
    if (c.is_complete_depolarizing()) {
        return apply_transition_dense(m, RealMatrix::Constant(q, q, 1.0 / q), c.site(), n, q);
    }
    if (c.kind() == ChannelKind::kTransition) {
        return apply_transition_dense(m, c.transition_matrix(), c.site(), n, q);
    }
    Matrix out = Matrix::Zero(m.rows(), m.cols());
    for (const auto &k : c.kraus_form()) {
        Matrix t = m;
        apply_local_left(t, k, c.site(), n, q);
        apply_local_right_adjoint(t, k, c.site(), n, q);
        out += t;
    }
    return out;
}

Matrix apply_pauli_measurement(const Matrix &m, const PauliString &p) {
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    if (dim != (std::size_t{1} << p.num_sites())) {
        throw Error("Pauli measurement dimension mismatch");
    }
    const std::uint64_t flip = p.index_x_mask();
    std::vector<Complex> phase(dim);
    for (std::uint64_t b = 0; b < dim; b++) phase[b] = p.basis_phase(b);
    // (P m P)(a ^ flip, c ^ flip) = phase(a) m(a, c) conj(phase(c)).
    Matrix out(dim, dim);
    for (std::uint64_t c = 0; c < dim; c++) {
        for (std::uint64_t a = 0; a < dim; a++) {
            out(a ^ flip, c ^ flip) = 0.5 * (m(a ^ flip, c ^ flip) + phase[a] * m(a, c) * std::conj(phase[c]));
        }
    }
    return out;
}

Matrix apply_layer(const Matrix &m, const ChannelLayer &layer, int n, int q) {
    Matrix out = m;
    for (const auto &[s, c] : layer.channels()) {
        out = apply_site_channel(out, c, n, q);
    }
    for (const auto &p : layer.pauli_measurements()) {
        out = apply_pauli_measurement(out, p);
    }
    return out;
}

ComplexVector apply_layer_diagonal(const ComplexVector &diag, const ChannelLayer &layer, int n, int q) {
    ComplexVector out = diag;
    const auto strides = site_strides(n, q);
    const std::size_t dim = static_cast<std::size_t>(diag.size());
    for (const auto &[s, c] : layer.channels()) {
        const RealMatrix t = c.classical_transition();
        const std::size_t stride = strides[s];
        const std::size_t block = stride * q;
        ComplexVector next(dim);
        std::vector<Complex> v(q);
        for (std::size_t hi = 0; hi < dim; hi += block) {
            for (std::size_t lo = 0; lo < stride; lo++) {
                const std::size_t base = hi + lo;
                for (int yp = 0; yp < q; yp++) v[yp] = out[base + yp * stride];
                for (int y = 0; y < q; y++) {
                    Complex acc = 0;
                    for (int yp = 0; yp < q; yp++) acc += t(y, yp) * v[yp];
                    next[base + y * stride] = acc;
                }
            }
        }
        out = std::move(next);
    }
    for (const auto &p : layer.pauli_measurements()) {
        const std::uint64_t flip = p.index_x_mask();
        ComplexVector next(dim);
        for (std::size_t b = 0; b < dim; b++) next[b] = 0.5 * (out[b] + out[b ^ flip]);
        out = std::move(next);
    }
    return out;
}

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kTrue:
            return "true";
        case Verdict::kFalse:
            return "false";
        default:
            return "inconclusive-within-cap";
    }
}

std::size_t default_subset_cap(int n_sites) {
    return n_sites <= 6 ? static_cast<std::size_t>(n_sites) : 3;
}

CommutationCheck is_commutation_preserving(const ChannelLayer &layer, const LocalHamiltonian &h,
                                           std::size_t subset_cap, std::size_t multiplicity_cap,
                                           std::size_t budget) {
    if (!h.commuting()) {
        throw Error("commutation-preservation check requires a commuting Hamiltonian");
    }
    if (subset_cap < 1 || multiplicity_cap < 1) {
        throw Error("commutation-preservation caps must be >= 1");
    }
    CommutationCheck result;
    bool pauli_diagonal = h.all_pauli();
    for (const auto &[s, c] : layer.channels()) {
        pauli_diagonal = pauli_diagonal && is_pauli_diagonal(c);
    }
    if (pauli_diagonal) {
        // Every image E_S[O_m] is a multiple of the Pauli product O_m, and those products commute.
        result.verdict = Verdict::kTrue;
        result.detail = "Pauli-diagonal channels rescale commuting Pauli products";
        return result;
    }

    const int n = h.n_sites();
    const int q = h.local_dim();
    std::size_t dim;
    try {
        dim = checked_power(q, n, 256, "commutation_check_dim");
    } catch (const CapError &e) {
        result.detail = e.what();
        return result;
    }

    SiteSet all(n);
    for (int s = 0; s < n; s++) all[s] = s;
    std::vector<Matrix> term_ops;
    std::vector<std::size_t> caps;
    for (const auto &t : h.terms()) {
        term_ops.push_back(t.is_pauli() ? t.pauli_op().dense() : t.local_matrix(all, q));
        caps.push_back(t.is_pauli() ? 1 : multiplicity_cap);
    }

    // Products O_m over all exponent vectors within the caps.
    std::vector<Matrix> products{Matrix::Identity(dim, dim)};
    for (std::size_t a = 0; a < term_ops.size(); a++) {
        if (products.size() * (caps[a] + 1) > 4096) {
            result.detail = "product enumeration exceeds 4096 operators";
            return result;
        }
        std::vector<Matrix> next;
        for (const auto &p : products) {
            Matrix cur = p;
            next.push_back(cur);
            for (std::size_t k = 1; k <= caps[a]; k++) {
                cur = cur * term_ops[a];
                next.push_back(cur);
            }
        }
        products = std::move(next);
    }

    const SiteSet sites = layer.channel_sites();
    std::vector<std::vector<int>> subsets;
    const std::size_t ns = sites.size();
    if (ns > 20) {
        result.detail = "too many channel sites to enumerate subsets";
        return result;
    }
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << ns); mask++) {
        if (static_cast<std::size_t>(std::popcount(mask)) > subset_cap) continue;
        std::vector<int> sub;
        for (std::size_t i = 0; i < ns; i++) {
            if ((mask >> i) & 1) sub.push_back(sites[i]);
        }
        subsets.push_back(sub);
    }

    const std::size_t np = products.size();
    for (const auto &sub : subsets) {
        std::vector<Matrix> images;
        images.reserve(np);
        for (const auto &p : products) {
            Matrix img = p;
            for (int s : sub) img = apply_site_channel(img, *layer.find(s), n, q);
            for (const auto &meas : layer.pauli_measurements()) {
                const SiteSet ms = meas.support();
                if (std::includes(sub.begin(), sub.end(), ms.begin(), ms.end())) {
                    img = apply_pauli_measurement(img, meas);
                }
            }
            images.push_back(std::move(img));
        }
        for (std::size_t i = 0; i < np; i++) {
            for (std::size_t j = i + 1; j < np; j++) {
                if (result.pairs_checked >= budget) {
                    result.verdict = Verdict::kInconclusive;
                    result.detail = "commutator budget of " + std::to_string(budget) + " exhausted";
                    return result;
                }
                result.pairs_checked++;
                Matrix comm = images[i] * images[j] - images[j] * images[i];
                if (comm.cwiseAbs().maxCoeff() <= 1e-13) continue;
                if (spectral_norm(Complex(0, 1) * comm) > 1e-10) {
                    result.verdict = Verdict::kFalse;
                    result.detail = "noncommuting images for products " + std::to_string(i) + " and " +
                                    std::to_string(j) + " on a subset of size " + std::to_string(sub.size());
                    return result;
                }
            }
        }
    }
    result.verdict = Verdict::kTrue;
    result.detail = "all image pairs commute within caps";
    return result;
}

}  // namespace cmilab

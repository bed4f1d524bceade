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

#include "cmilab/cluster_expansion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "cmilab/dense.hpp"

namespace cmilab {

namespace {

constexpr std::size_t kMaxSeriesDenseDim = 256;

std::vector<std::vector<int>> all_digits(int n, int q, std::size_t dim) {
    std::vector<std::vector<int>> out(dim, std::vector<int>(n, 0));
    for (std::size_t x = 0; x < dim; ++x) {
        std::size_t r = x;
        for (int s = n - 1; s >= 0; --s) {
            out[x][s] = static_cast<int>(r % q);
            r /= q;
        }
    }
    return out;
}

bool layer_preserves_diagonal(const ChannelLayer &layer) {
    for (const auto &[site, c] : layer.channels()) {
        if (!c.preserves_diagonal()) {
            return false;
        }
    }
    return true;
}

// Generic builder: the coefficient of monomial e is (-beta)^{|e|}/e! E[weight * prod_a h_a^{e_a}], where
// `weight` is an optional diagonal operator multiplying every coefficient.
TruncatedSeries build_series(const LocalHamiltonian &h, double beta, const ChannelLayer &layer, int max_degree,
                             const RealVector *weight) {
    if (!h.commuting()) {
        throw Error("cluster series require a commuting Hamiltonian");
    }
    if (!is_unital(layer)) {
        throw Error("cluster series require a unital layer (the constant term must be I)");
    }
    if (max_degree < 0) {
        throw Error("series degree must be nonnegative");
    }
    if (!std::isfinite(beta) || beta < 0) {
        throw Error("cluster series need a finite nonnegative beta");
    }
    const int n = h.n_sites();
    const int q = h.local_dim();
    const bool diagonal = h.all_diagonal() && layer_preserves_diagonal(layer);
    const std::size_t cap = diagonal ? classical_config_cap() : std::min(kMaxSeriesDenseDim, dense_dim_cap());
    const std::size_t dim = checked_power(q, n, cap, diagonal ? "series_configs" : "series_dense_dim");
    const std::size_t num_terms = h.size();
    TruncatedSeries out(num_terms, max_degree, dim, diagonal);

    if (diagonal) {
        const auto digits = all_digits(n, q, dim);
        std::vector<ComplexVector> hv(num_terms, ComplexVector(dim));
        for (std::size_t a = 0; a < num_terms; ++a) {
            for (std::size_t x = 0; x < dim; ++x) {
                hv[a][x] = h.term(a).diagonal_value(digits[x], q);
            }
        }
        ComplexVector base = ComplexVector::Ones(dim);
        if (weight) {
            base = weight->cast<Complex>();
        }
        std::vector<int> seq;
        std::function<void(int, const ComplexVector &, double)> rec = [&](int first, const ComplexVector &prod,
                                                                          double scale) {
            ComplexVector img = apply_layer_diagonal(prod, layer, n, q);
            out.add(Cluster::from_terms(seq), scale * img);
            if (static_cast<int>(seq.size()) == max_degree) {
                return;
            }
            for (int t = first; t < static_cast<int>(num_terms); ++t) {
                seq.push_back(t);
                // Dividing by the running multiplicity of t accumulates 1/e!.
                int mult = static_cast<int>(std::count(seq.begin(), seq.end(), t));
                rec(t, prod.cwiseProduct(hv[t]), scale * (-beta) / mult);
                seq.pop_back();
            }
        };
        rec(0, base, 1.0);
        return out;
    }

    SiteSet all(n);
    for (int s = 0; s < n; ++s) {
        all[s] = s;
    }
    std::vector<Matrix> hm(num_terms);
    for (std::size_t a = 0; a < num_terms; ++a) {
        const HamiltonianTerm &t = h.term(a);
        hm[a] = t.is_pauli() ? t.pauli_op().dense() : t.local_matrix(all, q);
    }
    Matrix base = Matrix::Identity(dim, dim);
    if (weight) {
        base = weight->cast<Complex>().asDiagonal();
    }
    std::vector<int> seq;
    std::function<void(int, const Matrix &, double)> rec = [&](int first, const Matrix &prod, double scale) {
        Matrix img = apply_layer(prod, layer, n, q);
        out.add(Cluster::from_terms(seq), scale * img);
        if (static_cast<int>(seq.size()) == max_degree) {
            return;
        }
        for (int t = first; t < static_cast<int>(num_terms); ++t) {
            seq.push_back(t);
            int mult = static_cast<int>(std::count(seq.begin(), seq.end(), t));
            rec(t, prod * hm[t], scale * (-beta) / mult);
            seq.pop_back();
        }
    };
    rec(0, base, 1.0);
    return out;
}

ChannelLayer depolarize_sites(const ChannelLayer &layer, const SiteSet &sites, int q) {
    return compose_with_trace(layer, sites, q);
}

double log_derivative_bound(int degree, double beta, int weight) {
    return std::pow(2 * std::numbers::e * (degree + 1) * beta, weight + 1);
}

void certify(CertificateReport &report, const TruncatedSeries &series, const TruncatedSeries &log,
             const DualInteractionGraph &g, int max_weight, double beta) {
    constexpr double kSlack = 1e-12;
    for (const Cluster &w : enumerate_connected_clusters(g, max_weight)) {
        CertificateEntry log_entry;
        log_entry.kind = "log";
        log_entry.cluster = w;
        log_entry.norm = log.coefficient_norm(w);
        log_entry.bound = log_derivative_bound(report.degree, beta, w.weight());
        log_entry.pass = log_entry.norm <= log_entry.bound * (1 + 1e-9) + kSlack;
        CertificateEntry d_entry;
        d_entry.kind = "derivative";
        d_entry.cluster = w;
        d_entry.norm = spectral_norm(cluster_derivative(series, w));
        d_entry.bound = std::pow(beta, w.weight());
        d_entry.pass = d_entry.norm <= d_entry.bound * (1 + 1e-9) + kSlack;
        report.violations += !log_entry.pass + !d_entry.pass;
        report.entries.push_back(std::move(log_entry));
        report.entries.push_back(std::move(d_entry));
    }
    for (const auto &[m, c] : log.coefficients()) {
        if (!m.empty() && !is_connected(m, g)) {
            report.max_vanishing_norm = std::max(report.max_vanishing_norm, log.coefficient_norm(m));
        }
    }
    if (report.max_vanishing_norm > 1e-9) {
        ++report.violations;
    }
}

}  // namespace

double beta_critical(int degree) {
    if (degree < 1) {
        throw Error("dual-graph degree must be at least 1");
    }
    const double e = std::numbers::e;
    return 1.0 / (2 * e * (degree + 1) * (1 + e * (degree - 1)));
}

TruncatedSeries::TruncatedSeries(std::size_t num_terms, int max_degree, std::size_t dim, bool diagonal)
    : num_terms_(num_terms), max_degree_(max_degree), dim_(dim), diagonal_(diagonal) {}

TruncatedSeries TruncatedSeries::identity(std::size_t num_terms, int max_degree, std::size_t dim, bool diagonal) {
    TruncatedSeries s(num_terms, max_degree, dim, diagonal);
    s.add(Cluster(), diagonal ? Matrix(Matrix::Ones(dim, 1)) : Matrix(Matrix::Identity(dim, dim)));
    return s;
}

Matrix TruncatedSeries::raw_coefficient(const Cluster &m) const {
    auto it = coeffs_.find(m);
    if (it != coeffs_.end()) {
        return it->second;
    }
    return diagonal_ ? Matrix::Zero(dim_, 1) : Matrix::Zero(dim_, dim_);
}

Matrix TruncatedSeries::coefficient(const Cluster &m) const {
    Matrix raw = raw_coefficient(m);
    if (!diagonal_) {
        return raw;
    }
    return raw.col(0).asDiagonal();
}

double TruncatedSeries::coefficient_norm(const Cluster &m) const {
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) {
        return 0.0;
    }
    if (diagonal_) {
        return it->second.cwiseAbs().maxCoeff();
    }
    return spectral_norm(it->second);
}

void TruncatedSeries::add(const Cluster &m, const Matrix &raw) {
    if (m.weight() > max_degree_) {
        return;
    }
    for (const auto &[t, mu] : m.entries()) {
        if (t >= static_cast<int>(num_terms_)) {
            throw Error("series monomial references an unknown term");
        }
    }
    const std::size_t cols = diagonal_ ? 1 : dim_;
    if (static_cast<std::size_t>(raw.rows()) != dim_ || static_cast<std::size_t>(raw.cols()) != cols) {
        throw Error("series coefficient has the wrong shape");
    }
    auto it = coeffs_.find(m);
    if (it == coeffs_.end()) {
        coeffs_.emplace(m, raw);
    } else {
        it->second += raw;
    }
}

void TruncatedSeries::check_compatible(const TruncatedSeries &other) const {
    if (num_terms_ != other.num_terms_ || dim_ != other.dim_ || diagonal_ != other.diagonal_) {
        throw Error("incompatible series");
    }
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries &other) const {
    check_compatible(other);
    TruncatedSeries out(num_terms_, std::min(max_degree_, other.max_degree_), dim_, diagonal_);
    for (const auto &[m, c] : coeffs_) {
        out.add(m, c);
    }
    for (const auto &[m, c] : other.coeffs_) {
        out.add(m, c);
    }
    return out;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries &other) const {
    return *this + other.scaled(-1.0);
}

TruncatedSeries TruncatedSeries::scaled(double s) const {
    TruncatedSeries out = *this;
    for (auto &kv : out.coeffs_) {
        kv.second *= s;
    }
    return out;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries &other) const {
    check_compatible(other);
    const int degree = std::min(max_degree_, other.max_degree_);
    TruncatedSeries out(num_terms_, degree, dim_, diagonal_);
    std::vector<std::vector<const std::pair<const Cluster, Matrix> *>> right(degree + 1);
    for (const auto &kv : other.coeffs_) {
        int w = kv.first.weight();
        if (w <= degree) {
            right[w].push_back(&kv);
        }
    }
    for (const auto &[m1, c1] : coeffs_) {
        const int w1 = m1.weight();
        for (int w2 = 0; w1 + w2 <= degree; ++w2) {
            for (const auto *kv : right[w2]) {
                Matrix prod = diagonal_ ? Matrix(c1.cwiseProduct(kv->second)) : Matrix(c1 * kv->second);
                out.add(m1 + kv->first, prod);
            }
        }
    }
    return out;
}

Matrix TruncatedSeries::evaluate(const std::vector<double> &lambda) const {
    if (lambda.size() != num_terms_) {
        throw Error("evaluate needs one coefficient per term");
    }
    Matrix acc = diagonal_ ? Matrix::Zero(dim_, 1) : Matrix::Zero(dim_, dim_);
    for (const auto &[m, c] : coeffs_) {
        double mono = 1;
        for (const auto &[t, mu] : m.entries()) {
            mono *= std::pow(lambda[t], mu);
        }
        acc += mono * c;
    }
    if (diagonal_) {
        return acc.col(0).asDiagonal();
    }
    return acc;
}

TruncatedSeries log_series(const TruncatedSeries &s) {
    const Matrix id = s.diagonal() ? Matrix(Matrix::Ones(s.dim(), 1)) : Matrix(Matrix::Identity(s.dim(), s.dim()));
    const Matrix c0 = s.raw_coefficient(Cluster());
    if ((c0 - id).cwiseAbs().maxCoeff() > 1e-12) {
        throw Error("log_series needs a constant term equal to the identity");
    }
    TruncatedSeries a(s.num_terms(), s.max_degree(), s.dim(), s.diagonal());
    for (const auto &[m, c] : s.coefficients()) {
        if (!m.empty()) {
            a.add(m, c);
        }
    }
    TruncatedSeries out = a;
    TruncatedSeries power = a;
    for (int k = 2; k <= s.max_degree(); ++k) {
        power = power * a;
        out = out + power.scaled((k % 2 == 0 ? -1.0 : 1.0) / k);
    }
    return out;
}

TruncatedSeries exp_series(const TruncatedSeries &s) {
    const Matrix c0 = s.raw_coefficient(Cluster());
    if (c0.cwiseAbs().maxCoeff() > 1e-12) {
        throw Error("exp_series needs a series without constant term");
    }
    TruncatedSeries out = TruncatedSeries::identity(s.num_terms(), s.max_degree(), s.dim(), s.diagonal());
    TruncatedSeries power = out;
    double fact = 1;
    for (int k = 1; k <= s.max_degree(); ++k) {
        power = power * s;
        fact *= k;
        out = out + power.scaled(1.0 / fact);
    }
    return out;
}

Matrix cluster_derivative(const TruncatedSeries &s, const Cluster &w) {
    if (w.weight() > s.max_degree()) {
        throw Error("cluster weight " + std::to_string(w.weight()) + " exceeds the truncation degree " +
                    std::to_string(s.max_degree()));
    }
    return w.factorial() * s.coefficient(w);
}

TruncatedSeries series_of_channelled_gibbs(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                           int max_degree) {
    return build_series(h, beta, layer, max_degree, nullptr);
}

TruncatedSeries region_series(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                              const SiteSet &region, int max_degree) {
    const SiteSet traced = complement(normalize_sites(region, h.n_sites()), h.n_sites());
    return build_series(h, beta, depolarize_sites(layer, traced, h.local_dim()), max_degree, nullptr);
}

TruncatedSeries cmi_operator_series(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                    const Partition &p, int max_degree) {
    TruncatedSeries ab = log_series(region_series(h, beta, layer, p.ab(), max_degree));
    TruncatedSeries bc = log_series(region_series(h, beta, layer, p.bc(), max_degree));
    TruncatedSeries b = log_series(region_series(h, beta, layer, p.b, max_degree));
    TruncatedSeries abc = log_series(region_series(h, beta, layer, p.abc(), max_degree));
    return ab + bc - b - abc;
}

TruncatedSeries pinned_series(const PinnedHamiltonian &ph, const SiteSet &region, int max_degree) {
    const LocalHamiltonian &h = ph.base();
    const int n = h.n_sites();
    const int q = h.local_dim();
    if (!h.all_diagonal()) {
        throw Error("pinned series require a diagonal Hamiltonian");
    }
    const std::size_t dim = checked_power(q, n, classical_config_cap(), "series_configs");
    const auto digits = all_digits(n, q, dim);
    // exp(-sum_i d_i(x_i)) q^{|Y|} / Z_0 = prod_i q exp(-d_i(x_i)) / Z_i
    RealVector weight(dim);
    for (std::size_t x = 0; x < dim; ++x) {
        double w = 1;
        for (std::size_t k = 0; k < ph.pinned_sites().size(); ++k) {
            int site = ph.pinned_sites()[k];
            w *= q * std::exp(-ph.pinning()[k][digits[x][site]]) / ph.site_normalizers()[k];
        }
        weight[x] = w;
    }
    SiteSet gamma = site_union(ph.pinned_sites(), complement(normalize_sites(region, n), n));
    ChannelLayer trace;
    for (int s : gamma) {
        trace.set(uniform_transition(s, q));
    }
    return build_series(h, ph.beta(), trace, max_degree, &weight);
}

TruncatedSeries pinned_cmi_operator_series(const PinnedHamiltonian &ph, const Partition &p, int max_degree) {
    TruncatedSeries ab = log_series(pinned_series(ph, p.ab(), max_degree));
    TruncatedSeries bc = log_series(pinned_series(ph, p.bc(), max_degree));
    TruncatedSeries b = log_series(pinned_series(ph, p.b, max_degree));
    TruncatedSeries abc = log_series(pinned_series(ph, p.abc(), max_degree));
    return ab + bc - b - abc;
}

CertificateReport derivative_norm_certificate(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                              int max_weight) {
    CertificateReport report;
    report.name = "derivative_norm";
    report.beta = beta;
    report.max_weight = max_weight;
    const DualInteractionGraph g = build_dual_graph(h);
    report.degree = g.degree;
    report.beta_c = beta_critical(std::max(g.degree, 1));
    CommutationCheck check = is_commutation_preserving(layer, h, default_subset_cap(h.n_sites()), 2);
    report.commutation_verdict = verdict_name(check.verdict);
    if (check.verdict == Verdict::kFalse) {
        throw Error("layer is not commutation-preserving: " + check.detail);
    }
    TruncatedSeries series = series_of_channelled_gibbs(h, beta, layer, max_weight);
    certify(report, series, log_series(series), g, max_weight, beta);
    return report;
}

CertificateReport pinned_series_check(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                      const std::vector<int> &y, int max_degree) {
    CertificateReport report;
    report.name = "pinned_series";
    report.beta = beta;
    report.max_weight = max_degree;
    const DualInteractionGraph g = build_dual_graph(h);
    report.degree = g.degree;
    report.beta_c = beta_critical(std::max(g.degree, 1));
    report.commutation_verdict = "true";
    PinnedHamiltonian ph = pinned_hamiltonian(h, beta, layer, y);
    SiteSet all(h.n_sites());
    for (int s = 0; s < h.n_sites(); ++s) {
        all[s] = s;
    }
    TruncatedSeries series = pinned_series(ph, all, max_degree);
    const Matrix c0 = series.raw_coefficient(Cluster());
    report.constant_term_error = (c0 - Matrix::Ones(c0.rows(), c0.cols())).cwiseAbs().maxCoeff();
    if (report.constant_term_error > 1e-12) {
        ++report.violations;
    }
    certify(report, series, log_series(series), g, max_degree, beta);
    return report;
}

}  // namespace cmilab

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

#ifndef CMILAB_CLUSTER_EXPANSION_HPP
#define CMILAB_CLUSTER_EXPANSION_HPP

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cmilab/channels.hpp"
#include "cmilab/classical.hpp"
#include "cmilab/cluster.hpp"
#include "cmilab/linalg.hpp"
#include "cmilab/model.hpp"

namespace cmilab {

/// 1 / (2e(d+1)(1 + e(d-1))) for dual-graph degree d.
double beta_critical(int degree);

/// Polynomial in the term coefficients lambda_a with dim x dim matrix coefficients, truncated at
/// total degree max_degree. In diagonal mode every coefficient is diagonal and stored as a dim x 1 column.
class TruncatedSeries {
   public:
    TruncatedSeries() = default;
    TruncatedSeries(std::size_t num_terms, int max_degree, std::size_t dim, bool diagonal);
    static TruncatedSeries identity(std::size_t num_terms, int max_degree, std::size_t dim, bool diagonal);

    std::size_t num_terms() const { return num_terms_; }
    int max_degree() const { return max_degree_; }
    std::size_t dim() const { return dim_; }
    bool diagonal() const { return diagonal_; }
    const std::map<Cluster, Matrix> &coefficients() const { return coeffs_; }

    /// Stored form (a column in diagonal mode); zero if absent.
    Matrix raw_coefficient(const Cluster &m) const;
    /// Full dim x dim coefficient; zero if absent.
    Matrix coefficient(const Cluster &m) const;
    /// Spectral norm of the coefficient.
    double coefficient_norm(const Cluster &m) const;
    /// Adds to a coefficient; monomials above the truncation degree are ignored.
    void add(const Cluster &m, const Matrix &raw);

    TruncatedSeries operator+(const TruncatedSeries &other) const;
    TruncatedSeries operator-(const TruncatedSeries &other) const;
    TruncatedSeries scaled(double s) const;
    /// Product truncated at max_degree; the left factor stays on the left.
    TruncatedSeries operator*(const TruncatedSeries &other) const;

    /// sum_m coefficient(m) prod_a lambda_a^{m_a}, as a full matrix.
    Matrix evaluate(const std::vector<double> &lambda) const;

   private:
    void check_compatible(const TruncatedSeries &other) const;

    std::size_t num_terms_ = 0;
    int max_degree_ = 0;
    std::size_t dim_ = 0;
    bool diagonal_ = false;
    std::map<Cluster, Matrix> coeffs_;
};

/// log(I + A) = sum_k (-1)^{k-1} A^k / k with A = s - I; the constant term must be I to 1e-12.
TruncatedSeries log_series(const TruncatedSeries &s);
/// exp(s) = sum_k s^k / k!; s must have no constant term.
TruncatedSeries exp_series(const TruncatedSeries &s);
/// D_W = W! times the coefficient of W.
Matrix cluster_derivative(const TruncatedSeries &s, const Cluster &w);

/// Series of E[exp(-beta sum_a lambda_a h_a)] in the lambda_a around 0: the coefficient of monomial e is
/// (-beta)^{|e|} / e! E[prod_a h_a^{e_a}]. Requires a unital layer and a commuting Hamiltonian.
TruncatedSeries series_of_channelled_gibbs(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                           int max_degree);
/// Same with complete depolarization composed on the complement of `region`, so the constant term is I.
TruncatedSeries region_series(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                              const SiteSet &region, int max_degree);
/// log E[r_AB] + log E[r_BC] - log E[r_B] - log E[r_ABC], each traced region realized by depolarization.
TruncatedSeries cmi_operator_series(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                    const Partition &p, int max_degree);

/// Pinned state exp(-H^{(y)}) q^{|Y|} / Z_0 with the pinned sites and the complement of `region`
/// traced by depolarization; the pinning fields are fixed, only the lambda_a are expanded.
TruncatedSeries pinned_series(const PinnedHamiltonian &ph, const SiteSet &region, int max_degree);
TruncatedSeries pinned_cmi_operator_series(const PinnedHamiltonian &ph, const Partition &p, int max_degree);

struct CertificateEntry {
    std::string kind;  // "log" or "derivative"
    Cluster cluster;
    double norm = 0;
    double bound = 0;
    bool pass = true;
};

struct CertificateReport {
    std::string name;
    double beta = 0;
    int degree = 0;
    double beta_c = 0;
    int max_weight = 0;
    std::string commutation_verdict;
    std::vector<CertificateEntry> entries;
    std::size_t violations = 0;
    /// Largest norm among monomials that must vanish (disconnected clusters); 0 if none checked.
    double max_vanishing_norm = 0;
    /// |constant term - I|, for pinned checks.
    double constant_term_error = 0;

    bool passed() const { return violations == 0; }
};

/// For every connected cluster W with |W| <= max_weight: (1/W!) ||D_W log E[r]|| <= (2e(d+1)beta)^{|W|+1}
/// and ||D_W E[r]|| <= beta^{|W|}. Also records the largest disconnected log-derivative.
CertificateReport derivative_norm_certificate(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                              int max_weight);

/// The pinned analogue: constant term I, vanishing disconnected log-derivatives, ||D_V E[r^(y)]|| <= beta^{|V|}
/// and the log-derivative bound, for the traced region Gamma = Y.
CertificateReport pinned_series_check(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                      const std::vector<int> &y, int max_degree);

}  // namespace cmilab

#endif

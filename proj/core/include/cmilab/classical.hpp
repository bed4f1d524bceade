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

#ifndef CMILAB_CLASSICAL_HPP
#define CMILAB_CLASSICAL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cmilab/channels.hpp"
#include "cmilab/linalg.hpp"
#include "cmilab/model.hpp"

namespace cmilab {

/// Default cap on q^n for classical tables; override with CMILAB_MAX_CONFIGS.
inline constexpr std::size_t kDefaultMaxConfigs = std::size_t{1} << 22;
std::size_t classical_config_cap();

/// Probability table over q^n configurations in lexicographic order (site 0 most significant).
class Distribution {
   public:
    Distribution() = default;
    /// Validates nonnegativity and normalization to 1e-10, then renormalizes exactly.
    Distribution(int n_sites, int local_dim, std::vector<double> probs);

    int n_sites() const { return n_; }
    int local_dim() const { return q_; }
    std::size_t size() const { return probs_.size(); }
    const std::vector<double> &probs() const { return probs_; }
    double operator[](std::size_t i) const { return probs_[i]; }

    std::vector<int> digits(std::size_t index) const;
    std::size_t index(const std::vector<int> &digits) const;
    /// Marginal on the sorted `region`, as a distribution over |region| sites.
    Distribution marginal(const SiteSet &region) const;

   private:
    int n_ = 0;
    int q_ = 2;
    std::vector<double> probs_;
};

/// Index of every configuration's restriction to `region` (sorted), as a lexicographic index over region.
std::vector<std::uint32_t> region_index_map(int n, int q, const SiteSet &region);

/// probs[x] proportional to exp(-beta sum_a lambda_a h_a(x)). beta = +infinity gives the uniform
/// distribution on ground states (energies within 1e-9 of the minimum).
Distribution gibbs_distribution(const LocalHamiltonian &h, double beta);
/// Applies each site's stochastic map. Channels must act classically (map diagonal states to diagonal states).
Distribution apply_transitions(const Distribution &d, const ChannelLayer &layer);

double shannon_entropy(const Distribution &d, const SiteSet &region);
double mutual_information(const Distribution &d, const SiteSet &a, const SiteSet &c);
/// I(A:C|B) in bits, evaluated as sum p(abc) log[p(abc) p(b) / (p(ab) p(bc))], which equals the
/// four-entropy combination without cancelling large entropies.
double cmi_raw(const Distribution &d, const Partition &p);
/// cmi_raw clamped at zero; throws if the raw value is below -1e-10.
double cmi(const Distribution &d, const Partition &p);
/// H(AB) + H(BC) - H(B) - H(ABC), for cross-checks.
double cmi_from_entropies(const Distribution &d, const Partition &p);

struct OutcomeTerm {
    std::vector<int> outcome;
    double probability = 0;
    double mutual_information = 0;
};

/// One entry per outcome on B with probability >= 1e-15.
std::vector<OutcomeTerm> post_select_decompose(const Distribution &d, const Partition &p);

double total_variation(const Distribution &a, const Distribution &b);

/// beta H plus diagonal pinning fields d_i(y'_i) = -log T_i(y_i, y'_i) on the channel sites Y.
class PinnedHamiltonian {
   public:
    PinnedHamiltonian(LocalHamiltonian base, double beta, SiteSet pinned_sites, std::vector<int> outcome,
                      std::vector<std::vector<double>> pinning);

    const LocalHamiltonian &base() const { return base_; }
    double beta() const { return beta_; }
    const SiteSet &pinned_sites() const { return sites_; }
    const std::vector<int> &outcome() const { return outcome_; }
    /// pinning()[k][v] = d^{(i)}(v) for i = pinned_sites()[k].
    const std::vector<std::vector<double>> &pinning() const { return pinning_; }
    const std::vector<double> &site_normalizers() const { return z_sites_; }
    double normalizer() const { return z0_; }

    /// H^{(y)}(x) = beta H(x) + sum_i d_i(x_i).
    double energy(const std::vector<int> &digits) const;
    /// Normalized exp(-H^{(y)}) over all sites.
    Distribution gibbs() const;
    /// Marginal of exp(-H^{(y)}) on the unpinned sites.
    Distribution unpinned_marginal() const;

   private:
    LocalHamiltonian base_;
    double beta_;
    SiteSet sites_;
    std::vector<int> outcome_;
    std::vector<std::vector<double>> pinning_;
    std::vector<double> z_sites_;
    double z0_ = 1;
};

/// Requires strictly positive transition entries on every channel site.
PinnedHamiltonian pinned_hamiltonian(const LocalHamiltonian &h, double beta, const ChannelLayer &layer,
                                     const std::vector<int> &y);

/// Conditional distribution of the unpinned sites given outcome y on the channel sites, from the
/// joint (x, T[x]) distribution.
Distribution post_selected_conditional(const Distribution &gibbs, const ChannelLayer &layer, const std::vector<int> &y);

}  // namespace cmilab

#endif

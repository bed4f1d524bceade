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

#ifndef CMILAB_CHANNELS_HPP
#define CMILAB_CHANNELS_HPP

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "cmilab/linalg.hpp"
#include "cmilab/model.hpp"
#include "cmilab/pauli.hpp"

namespace cmilab {

enum class ChannelKind { kTransition, kKraus, kPauliMixture };

/// A channel acting on one site.
///
/// Transition matrices use t(out, in), so columns sum to one. As a quantum map a transition
/// matrix measures in the computational basis and then applies the stochastic map.
class SiteChannel {
   public:
    static SiteChannel transition(int site, RealMatrix t);
    static SiteChannel kraus(int site, std::vector<Matrix> ops);
    /// Probabilities of I, X, Y, Z (qubits only).
    static SiteChannel pauli_mixture(int site, std::array<double, 4> probs);

    int site() const { return site_; }
    int dim() const { return dim_; }
    ChannelKind kind() const;
    const RealMatrix &transition_matrix() const;
    const std::vector<Matrix> &kraus_ops() const;
    const std::array<double, 4> &pauli_probs() const;

    /// rho -> Tr(rho) I / q.
    bool is_complete_depolarizing() const { return complete_depolarizing_; }
    /// Maps computational-basis projectors to diagonal operators.
    bool preserves_diagonal() const { return preserves_diagonal_; }
    /// T(y, y') = <y| E[|y'><y'|] |y>; requires preserves_diagonal().
    RealMatrix classical_transition() const;
    std::vector<Matrix> kraus_form() const;
    /// Action on a single-site operator.
    Matrix apply(const Matrix &op) const;
    SiteChannel on_site(int site) const;

   private:
    void classify();

    int site_ = 0;
    int dim_ = 2;
    std::variant<RealMatrix, std::vector<Matrix>, std::array<double, 4>> data_;
    bool complete_depolarizing_ = false;
    bool preserves_diagonal_ = false;
};

// Conventions used throughout: dephasing is (1-p) rho + p Z rho Z, bit flip is (1-p) rho + p X rho X,
// depolarizing is (1-p) rho + p I/q.
SiteChannel dephasing(int site, double p);
SiteChannel bit_flip(int site, double p);
SiteChannel depolarizing(int site, double p, int q = 2);
SiteChannel complete_depolarizing(int site, int q = 2);
SiteChannel amplitude_damping(int site, double gamma);
SiteChannel transition_bit_flip(int site, double p);
SiteChannel uniform_transition(int site, int q);

/// Product of site channels (identity where absent), optionally followed by Pauli measurements
/// rho -> (rho + P rho P) / 2 for commuting multi-site Pauli strings P.
class ChannelLayer {
   public:
    ChannelLayer() = default;
    explicit ChannelLayer(const std::vector<SiteChannel> &channels, SiteSet region = {});

    /// Adds or replaces the channel on c.site().
    void set(const SiteChannel &c);
    const SiteChannel *find(int site) const;
    const std::map<int, SiteChannel> &channels() const { return channels_; }
    SiteSet channel_sites() const;
    /// Declared region united with the channel sites.
    SiteSet region() const;
    bool empty() const { return channels_.empty() && measurements_.empty(); }

    /// Models instruments such as a Bell-basis measurement on a pair of qubits.
    void add_pauli_measurement(const PauliString &p);
    const std::vector<PauliString> &pauli_measurements() const { return measurements_; }

    ChannelLayer permuted(const std::vector<int> &perm) const;

   private:
    std::map<int, SiteChannel> channels_;
    SiteSet region_;
    std::vector<PauliString> measurements_;
};

bool is_unital(const SiteChannel &c);
bool is_unital(const ChannelLayer &layer);

/// Complete depolarization on every traced site, composed after any existing channel there.
ChannelLayer compose_with_trace(const ChannelLayer &layer, const SiteSet &traced, int q);

/// Factor f(P) with E[P] = f(P) P for P = I, X, Y, Z. Throws if the channel is not Pauli-diagonal.
std::array<double, 4> pauli_damping_profile(const SiteChannel &c);
bool is_pauli_diagonal(const SiteChannel &c);

/// Dense application of channels to an operator on n sites of dimension q.
Matrix apply_site_channel(const Matrix &m, const SiteChannel &c, int n, int q);
Matrix apply_pauli_measurement(const Matrix &m, const PauliString &p);
Matrix apply_layer(const Matrix &m, const ChannelLayer &layer, int n, int q);
/// Same for a diagonal operator stored as its diagonal; every channel must preserve diagonals.
ComplexVector apply_layer_diagonal(const ComplexVector &diag, const ChannelLayer &layer, int n, int q);

enum class Verdict { kTrue, kFalse, kInconclusive };
const char *verdict_name(Verdict v);

struct CommutationCheck {
    Verdict verdict = Verdict::kInconclusive;
    std::size_t pairs_checked = 0;
    std::string detail;
};

std::size_t default_subset_cap(int n_sites);

/// Falsifier for commutation preservation: enumerates products O_m of Hamiltonian terms (exponents
/// reduced mod 2 for Pauli terms, otherwise up to multiplicity_cap) and channel-site subsets S with
/// |S| <= subset_cap, and reports kFalse on the first pair with ||[E_S[O_m], E_S[O_n]]|| > 1e-10.
/// Returns kInconclusive when the enumeration would exceed `budget` commutator evaluations.
CommutationCheck is_commutation_preserving(const ChannelLayer &layer, const LocalHamiltonian &h,
                                           std::size_t subset_cap, std::size_t multiplicity_cap,
                                           std::size_t budget = 2000000);

}  // namespace cmilab

#endif

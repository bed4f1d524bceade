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

#ifndef CMILAB_PAULI_ENGINE_HPP
#define CMILAB_PAULI_ENGINE_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cmilab/channels.hpp"
#include "cmilab/linalg.hpp"
#include "cmilab/model.hpp"
#include "cmilab/pauli.hpp"

namespace cmilab {

inline constexpr std::size_t kDefaultMaxPauliTerms = 22;
inline constexpr std::size_t kDefaultMaxPauliRank = 24;
std::size_t pauli_term_cap();
std::size_t pauli_rank_cap();

/// Unsigned Pauli operator (x, z) used as an expansion key; signs live in the coefficients.
struct PauliKey {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    bool operator==(const PauliKey &other) const = default;
    auto operator<=>(const PauliKey &other) const = default;
};

struct PauliKeyHash {
    std::size_t operator()(const PauliKey &k) const noexcept {
        return std::hash<std::uint64_t>()(k.x * 0x9E3779B97F4A7C15ull ^ (k.z + 0x632BE59BD9B4E019ull));
    }
};

/// rho = 2^{-n} sum_g c_g P_g over unsigned Paulis P_g, with c_I = 1.
class PauliExpansion {
   public:
    using Map = std::unordered_map<PauliKey, double, PauliKeyHash>;

    explicit PauliExpansion(int n_sites = 0);
    PauliExpansion(int n_sites, Map coefficients, double log_scale);

    int n_sites() const { return n_; }
    std::size_t size() const { return coeffs_.size(); }
    const Map &coefficients() const { return coeffs_; }
    /// Coefficient of the signed Pauli p (the stored value times p's sign); 0 if absent.
    double coefficient(const PauliString &p) const;
    /// The unnormalized operator is exp(log_scale) * sum_g c_g P_g; finite beta only.
    double log_scale() const { return log_scale_; }
    /// Entries sorted by key, for deterministic iteration.
    std::vector<std::pair<PauliKey, double>> sorted() const;
    /// Normalized density matrix (n <= 12).
    Matrix to_dense() const;

   private:
    int n_;
    Map coeffs_;
    double log_scale_ = 0;
};

/// Expands prod_a [cosh(b l_a) I - sinh(b l_a) h_a], dividing each factor by cosh(b l_a); beta may be +infinity.
PauliExpansion expand_gibbs(const LocalHamiltonian &h, double beta);
/// c_g <- c_g prod_{i in supp g} f_i(g_i); Pauli measurements remove anticommuting g. Prunes |c| < 1e-18.
PauliExpansion apply_pauli_layer(const PauliExpansion &e, const ChannelLayer &layer);

/// Independent generators (F2 rank r) of the stored elements supported inside a region.
struct RestrictedGroup {
    SiteSet region;
    std::vector<PauliKey> generators;
    std::size_t rank() const { return generators.size(); }
};

RestrictedGroup restricted_group(const PauliExpansion &e, const SiteSet &region);

/// Distinct eigenvalues (one per character) of the marginal on a region, each with multiplicity `degeneracy`.
struct MarginalSpectrum {
    std::vector<double> eigenvalues;
    double degeneracy = 1;
};

MarginalSpectrum marginal_spectrum(const PauliExpansion &e, const SiteSet &region);
double marginal_entropy(const PauliExpansion &e, const SiteSet &region);
double pauli_cmi(const PauliExpansion &e, const Partition &p);

}  // namespace cmilab

#endif

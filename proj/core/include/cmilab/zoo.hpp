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

#ifndef CMILAB_ZOO_HPP
#define CMILAB_ZOO_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cmilab/channels.hpp"
#include "cmilab/linalg.hpp"
#include "cmilab/model.hpp"

namespace cmilab {

/// Recipe for a per-site channel, instantiated on each site of a region.
struct ChannelSpec {
    /// identity, dephasing, bitflip, depolarizing, amplitude_damping, transition, kraus, parity
    std::string kind = "identity";
    double p = 0;
    RealMatrix matrix;
    std::vector<Matrix> kraus;
};

/// nullopt for kind "identity".
std::optional<SiteChannel> make_channel(const ChannelSpec &spec, int site, int q);
ChannelLayer make_layer(const ChannelSpec &spec, const SiteSet &sites, int q);

/// Parity transition on a q = 4 site holding two bits v = 2l + r: (l, r) -> (l xor r, 0).
SiteChannel parity_transition(int site);

/// A model with its A/B/C partition and the layer applied to B.
struct ModelInstance {
    std::string id;
    LocalHamiltonian h;
    Partition partition;
    ChannelLayer layer;
    /// d_AC for chains with a finite term distance; the number of Bell pairs for the Bell chain.
    int distance = 0;
};

/// -Z_i Z_{i+1} on n sites (Pauli terms, also diagonal).
LocalHamiltonian ising_chain(int n_sites, double lambda = -1.0);
/// Sites 0 (X), 1..bulk (Y), bulk+1 (Z), each holding two bits; bond i penalizes r_i != l_{i+1}.
LocalHamiltonian parity_chain(int bulk, double lambda = 1.0);
/// Qubit A, `pairs` B pairs, qubit C; every bond carries -ZZ and -XX.
LocalHamiltonian bell_chain(int pairs, double lambda = -1.0);
/// Z_{i-1} X_i Z_{i+1} on an open chain (edge terms have weight 2).
LocalHamiltonian cluster_chain(int n_sites, double lambda = 1.0);
/// -Z Z on the edges of a rows x cols grid; sites numbered row-major.
LocalHamiltonian ising_lattice(int rows, int cols, double lambda = -1.0);

/// Chain families: "ising_chain", "parity_chain", "bell_chain", "cluster_chain". The default bulk layer
/// (used when `bulk` is nullopt) is: none, parity transitions, ZZ and XX pair measurements, complete bit flip.
ModelInstance family_instance(const std::string &family, int distance,
                              const std::optional<ChannelSpec> &bulk = std::nullopt);

/// Built-in ids "<family>_n<N>" (N: sites for ising and cluster, bulk sites for parity, pairs for bell)
/// and "ising_lattice_<R>x<C>".
ModelInstance builtin_instance(const std::string &id, const std::optional<ChannelSpec> &bulk = std::nullopt);
bool is_builtin_id(const std::string &id);

/// Commuting Pauli Hamiltonian with random terms of weight <= max_weight, some of them products of
/// earlier terms so that the generated group has relations. Coefficients uniform in [-1, 1].
LocalHamiltonian random_stabilizer_model(int n_sites, int num_terms, int max_weight, std::mt19937_64 &rng);
/// Random Pauli-diagonal layer (dephasing, bit flip, depolarizing) on a random subset of `sites`.
ChannelLayer random_pauli_layer(const SiteSet &sites, std::mt19937_64 &rng);

}  // namespace cmilab

#endif

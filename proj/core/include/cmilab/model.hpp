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

#ifndef CMILAB_MODEL_HPP
#define CMILAB_MODEL_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "cmilab/linalg.hpp"
#include "cmilab/pauli.hpp"

namespace cmilab {

struct SiteGraph {
    int n_sites = 0;
    int local_dim = 2;
    /// Optional geometry metadata; not used by any computation.
    std::vector<std::pair<int, int>> edges;

    SiteGraph() = default;
    SiteGraph(int n_sites, int local_dim, std::vector<std::pair<int, int>> edges = {});
};

/// One term lambda_a h_a. The operator is a Pauli string (q = 2) or a real diagonal table.
class HamiltonianTerm {
   public:
    static HamiltonianTerm pauli(PauliString op, double lambda);
    /// `values` is indexed lexicographically over `support` in the order given (first site most
    /// significant); the support is stored sorted and the table permuted to match.
    static HamiltonianTerm diagonal(std::vector<int> support, std::vector<double> values, int q, double lambda);

    const SiteSet &support() const { return support_; }
    double lambda() const { return lambda_; }
    bool is_pauli() const { return std::holds_alternative<PauliString>(op_); }
    /// True for diagonal tables and for Z-type Pauli strings.
    bool is_diagonal() const;
    const PauliString &pauli_op() const;
    const std::vector<double> &table() const;

    /// h evaluated on a diagonal basis state given by its per-site digits.
    double diagonal_value(const std::vector<int> &digits, int q) const;
    /// Operator on the ordered site list `sites` (must contain the support).
    Matrix local_matrix(const SiteSet &sites, int q) const;

    HamiltonianTerm with_lambda(double lambda) const;
    HamiltonianTerm permuted(const std::vector<int> &perm, int q) const;

   private:
    SiteSet support_;
    std::variant<PauliString, std::vector<double>> op_;
    double lambda_ = 0;
};

/// True iff the two operators commute (symplectic test for Paulis, commutator on the joint support otherwise).
bool terms_commute(const HamiltonianTerm &a, const HamiltonianTerm &b, int q);

class LocalHamiltonian {
   public:
    LocalHamiltonian() = default;
    LocalHamiltonian(SiteGraph graph, std::vector<HamiltonianTerm> terms);

    const SiteGraph &graph() const { return graph_; }
    int n_sites() const { return graph_.n_sites; }
    int local_dim() const { return graph_.local_dim; }
    const std::vector<HamiltonianTerm> &terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    const HamiltonianTerm &term(std::size_t a) const { return terms_.at(a); }

    /// Verified at construction.
    bool commuting() const { return commuting_; }
    bool all_pauli() const;
    bool all_diagonal() const;

    /// Energy sum_a lambda_a h_a(x) of a diagonal configuration.
    double diagonal_energy(const std::vector<int> &digits) const;
    Matrix dense(std::size_t dim_cap = 4096) const;

    LocalHamiltonian with_lambdas(const std::vector<double> &lambdas) const;
    /// Relabels site s to perm[s].
    LocalHamiltonian permuted(const std::vector<int> &perm) const;

   private:
    SiteGraph graph_;
    std::vector<HamiltonianTerm> terms_;
    bool commuting_ = true;
};

bool verify_commuting(const LocalHamiltonian &h);

/// A/B/C split of the sites. Sites outside A u B u C are traced out by every CMI computation.
struct Partition {
    SiteSet a;
    SiteSet b;
    SiteSet c;

    Partition() = default;
    Partition(SiteSet a, SiteSet b, SiteSet c, int n_sites);

    SiteSet ab() const { return site_union(a, b); }
    SiteSet bc() const { return site_union(b, c); }
    SiteSet abc() const { return site_union(ab(), c); }
    Partition permuted(const std::vector<int> &perm, int n_sites) const;
};

struct DualInteractionGraph {
    std::vector<SiteSet> supports;
    std::vector<std::vector<int>> neighbors;
    /// Maximum number of terms supported on any single site.
    int degree = 0;

    std::size_t num_terms() const { return supports.size(); }
    bool adjacent(int a, int b) const;
    std::size_t num_edges() const;
};

DualInteractionGraph build_dual_graph(const LocalHamiltonian &h);

/// Number of terms in the smallest connected term set touching both A and C, or infinity.
class TermDistance {
   public:
    static TermDistance finite(std::size_t value) { return TermDistance(value); }
    static TermDistance infinite() { return TermDistance(); }

    bool is_infinite() const { return !value_.has_value(); }
    /// Throws if infinite.
    std::size_t value() const;

    bool operator==(const TermDistance &other) const = default;

   private:
    TermDistance() = default;
    explicit TermDistance(std::size_t v) : value_(v) {}
    std::optional<std::size_t> value_;
};

TermDistance graph_distance(const DualInteractionGraph &g, const Partition &p);
TermDistance graph_distance(const LocalHamiltonian &h, const Partition &p);

}  // namespace cmilab

#endif

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

#ifndef CMILAB_DENSE_HPP
#define CMILAB_DENSE_HPP

#include <array>
#include <cstddef>

#include "cmilab/channels.hpp"
#include "cmilab/linalg.hpp"
#include "cmilab/model.hpp"

namespace cmilab {

/// Default cap on q^n for dense matrices; override with CMILAB_MAX_DENSE_DIM.
inline constexpr std::size_t kDefaultMaxDenseDim = 4096;
std::size_t dense_dim_cap();

class DensityMatrix {
   public:
    DensityMatrix() = default;
    /// Validates Hermiticity and unit trace to 1e-10.
    DensityMatrix(int n_sites, int local_dim, Matrix m);
    /// Divides by the trace first.
    static DensityMatrix normalized(int n_sites, int local_dim, Matrix m);

    int n_sites() const { return n_; }
    int local_dim() const { return q_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Matrix &matrix() const { return m_; }

   private:
    int n_ = 0;
    int q_ = 2;
    Matrix m_;
};

/// exp(-beta H) up to a positive scalar. Commuting Hamiltonians use a product of per-term factors;
/// others use a Hermitian eigendecomposition. beta = +infinity projects onto the ground space.
Matrix gibbs_operator(const LocalHamiltonian &h, double beta);
/// exp(-beta H) up to a positive scalar via eigendecomposition of the full Hamiltonian.
Matrix gibbs_operator_general(const LocalHamiltonian &h, double beta);
DensityMatrix gibbs_state(const LocalHamiltonian &h, double beta);

DensityMatrix apply_layer(const DensityMatrix &rho, const ChannelLayer &layer);
DensityMatrix partial_trace(const DensityMatrix &rho, const SiteSet &keep);

double von_neumann_entropy(const DensityMatrix &rho, const SiteSet &region);
double quantum_mutual_information(const DensityMatrix &rho, const SiteSet &a, const SiteSet &c);
/// S(AB) + S(BC) - S(B) - S(ABC) in bits.
double quantum_cmi(const DensityMatrix &rho, const Partition &p);

/// log E[rho_AB] + log E[rho_BC] - log E[rho_B] - log E[rho_ABC], each marginal embedded with the
/// identity on its complement (natural log). logs holds the four terms in that order.
struct CmiOperator {
    Matrix matrix;
    std::array<Matrix, 4> logs;
};

CmiOperator cmi_operator(const LocalHamiltonian &h, double beta, const ChannelLayer &layer, const Partition &p);

double trace_distance(const DensityMatrix &a, const DensityMatrix &b);
DensityMatrix permuted(const DensityMatrix &rho, const std::vector<int> &perm);

}  // namespace cmilab

#endif

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

#ifndef CMILAB_PAULI_HPP
#define CMILAB_PAULI_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cmilab/linalg.hpp"

namespace cmilab {

/// Hermitian Pauli operator on up to 64 qubits in binary symplectic form.
///
/// Bit s of x_bits/z_bits refers to site s. (x, z) = (1, 1) denotes the Hermitian Y, so the
/// operator is sign * prod_s i^{x_s z_s} X^{x_s} Z^{z_s}.
class PauliString {
   public:
    static constexpr int kMaxSites = 64;

    PauliString() = default;
    explicit PauliString(int num_sites);
    PauliString(int num_sites, std::uint64_t x_bits, std::uint64_t z_bits, int sign = 1);

    /// Places one character of `ops` (I, X, Y, Z) on each listed site.
    static PauliString from_ops(int num_sites, std::string_view ops, const std::vector<int> &sites, int sign = 1);
    /// Dense text form with one character per site and an optional leading sign, e.g. "-XIZY".
    static PauliString parse(std::string_view text);

    int num_sites() const { return n_; }
    std::uint64_t x_bits() const { return x_; }
    std::uint64_t z_bits() const { return z_; }
    int sign() const { return sign_; }

    /// 0 = I, 1 = X, 2 = Y, 3 = Z.
    int site_code(int site) const;
    char op(int site) const;
    SiteSet support() const;
    int weight() const;
    bool is_identity() const { return x_ == 0 && z_ == 0; }
    bool is_diagonal() const { return x_ == 0; }

    bool commutes_with(const PauliString &other) const;
    /// Product of two commuting Paulis. Throws if they anticommute (the result would not be Hermitian).
    PauliString operator*(const PauliString &other) const;
    PauliString operator-() const;
    /// Same operator with sign +1.
    PauliString unsigned_part() const { return PauliString(n_, x_, z_, 1); }

    /// Basis-index masks: P|b> = basis_phase(b) |b ^ index_x_mask()>, with site 0 the most significant bit.
    std::uint64_t index_x_mask() const;
    Complex basis_phase(std::uint64_t index) const;

    Matrix dense() const;
    /// Matrix on the ordered site list `sites`, which must contain the support.
    Matrix local_matrix(const SiteSet &sites) const;
    /// Relabels site s to perm[s].
    PauliString permuted(const std::vector<int> &perm) const;

    std::string str() const;

    bool operator==(const PauliString &other) const = default;
    auto operator<=>(const PauliString &other) const = default;

   private:
    int n_ = 0;
    std::uint64_t x_ = 0;
    std::uint64_t z_ = 0;
    int sign_ = 1;
};

/// Exponent k (mod 4) in P1 * P2 = i^k * (product of unsigned Paulis), for Hermitian convention.
int product_phase_exponent(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2, std::uint64_t z2);

/// 2x2 matrix of I, X, Y, Z for codes 0..3.
Matrix single_qubit_pauli(int code);

std::uint64_t site_mask_to_index_mask(std::uint64_t site_mask, int n);

}  // namespace cmilab

#endif

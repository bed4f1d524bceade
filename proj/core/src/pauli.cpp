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

#include "cmilab/pauli.hpp"

#include <bit>

namespace cmilab {

namespace {

std::uint64_t low_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

void check_num_sites(int n) {
    if (n < 0 || n > PauliString::kMaxSites) {
        throw Error("PauliString supports at most 64 sites, got " + std::to_string(n));
    }
}

}  // namespace

PauliString::PauliString(int num_sites) : n_(num_sites) {
    check_num_sites(num_sites);
}

PauliString::PauliString(int num_sites, std::uint64_t x_bits, std::uint64_t z_bits, int sign)
    : n_(num_sites), x_(x_bits), z_(z_bits), sign_(sign) {
    check_num_sites(num_sites);
    if (((x_ | z_) & ~low_mask(n_)) != 0) {
        throw Error("PauliString bits outside site range");
    }
    if (sign != 1 && sign != -1) {
        throw Error("PauliString sign must be +1 or -1");
    }
}

PauliString PauliString::from_ops(int num_sites, std::string_view ops, const std::vector<int> &sites, int sign) {
    if (ops.size() != sites.size()) {
        throw Error("Pauli string length does not match its support");
    }
    std::uint64_t x = 0, z = 0;
    for (std::size_t k = 0; k < ops.size(); k++) {
        int s = sites[k];
        if (s < 0 || s >= num_sites) {
            throw Error("Pauli site " + std::to_string(s) + " out of range");
        }
        std::uint64_t bit = std::uint64_t{1} << s;
        if ((x | z) & bit) {
            throw Error("duplicate site " + std::to_string(s) + " in Pauli support");
        }
        switch (ops[k]) {
            case 'I':
            case '_':
                break;
            case 'X':
                x |= bit;
                break;
            case 'Y':
                x |= bit;
                z |= bit;
                break;
            case 'Z':
                z |= bit;
                break;
            default:
                throw Error(std::string("invalid Pauli character '") + ops[k] + "'");
        }
    }
    return PauliString(num_sites, x, z, sign);
}

PauliString PauliString::parse(std::string_view text) {
    int sign = 1;
    if (!text.empty() && (text[0] == '+' || text[0] == '-')) {
        sign = text[0] == '-' ? -1 : 1;
        text.remove_prefix(1);
    }
    std::vector<int> sites(text.size());
    for (std::size_t k = 0; k < text.size(); k++) {
        sites[k] = static_cast<int>(k);
    }
    return from_ops(static_cast<int>(text.size()), text, sites, sign);
}

int PauliString::site_code(int site) const {
    int xb = (x_ >> site) & 1;
    int zb = (z_ >> site) & 1;
    if (xb && zb) return 2;
    if (xb) return 1;
    if (zb) return 3;
    return 0;
}

char PauliString::op(int site) const {
    return "IXYZ"[site_code(site)];
}

SiteSet PauliString::support() const {
    SiteSet out;
    std::uint64_t m = x_ | z_;
    while (m) {
        int s = std::countr_zero(m);
        out.push_back(s);
        m &= m - 1;
    }
    return out;
}

int PauliString::weight() const {
    return std::popcount(x_ | z_);
}

bool PauliString::commutes_with(const PauliString &other) const {
    return (std::popcount((x_ & other.z_) ^ (z_ & other.x_)) & 1) == 0;
}

int product_phase_exponent(std::uint64_t x1, std::uint64_t z1, std::uint64_t x2, std::uint64_t z2) {
    std::uint64_t x3 = x1 ^ x2;
    std::uint64_t z3 = z1 ^ z2;
    int k = std::popcount(x1 & z1) + std::popcount(x2 & z2) + 2 * std::popcount(z1 & x2) - std::popcount(x3 & z3);
    return ((k % 4) + 4) % 4;
}

PauliString PauliString::operator*(const PauliString &other) const {
    if (n_ != other.n_) {
        throw Error("Pauli product of strings with different site counts");
    }
    int k = product_phase_exponent(x_, z_, other.x_, other.z_);
    if (k & 1) {
        throw Error("product of anticommuting Paulis is not Hermitian");
    }
    int sign = sign_ * other.sign_ * (k == 2 ? -1 : 1);
    return PauliString(n_, x_ ^ other.x_, z_ ^ other.z_, sign);
}

PauliString PauliString::operator-() const {
    return PauliString(n_, x_, z_, -sign_);
}

std::uint64_t site_mask_to_index_mask(std::uint64_t site_mask, int n) {
    std::uint64_t out = 0;
    while (site_mask) {
        int s = std::countr_zero(site_mask);
        out |= std::uint64_t{1} << (n - 1 - s);
        site_mask &= site_mask - 1;
    }
    return out;
}

std::uint64_t PauliString::index_x_mask() const {
    return site_mask_to_index_mask(x_, n_);
}

Complex PauliString::basis_phase(std::uint64_t index) const {
    static const Complex kIPow[4] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    std::uint64_t zi = site_mask_to_index_mask(z_, n_);
    int k = std::popcount(x_ & z_) + 2 * (std::popcount(zi & index) & 1);
    if (sign_ < 0) {
        k += 2;
    }
    return kIPow[k % 4];
}

Matrix single_qubit_pauli(int code) {
    Matrix m = Matrix::Zero(2, 2);
    switch (code) {
        case 0:
            m(0, 0) = 1;
            m(1, 1) = 1;
            break;
        case 1:
            m(0, 1) = 1;
            m(1, 0) = 1;
            break;
        case 2:
            m(0, 1) = Complex(0, -1);
            m(1, 0) = Complex(0, 1);
            break;
        case 3:
            m(0, 0) = 1;
            m(1, 1) = -1;
            break;
        default:
            throw Error("invalid Pauli code");
    }
    return m;
}

Matrix PauliString::dense() const {
    const std::size_t dim = std::size_t{1} << n_;
    const std::uint64_t flip = index_x_mask();
    Matrix m = Matrix::Zero(dim, dim);
    for (std::uint64_t b = 0; b < dim; b++) {
        m(b ^ flip, b) = basis_phase(b);
    }
    return m;
}

Matrix PauliString::local_matrix(const SiteSet &sites) const {
    std::uint64_t covered = 0;
    for (int s : sites) {
        covered |= std::uint64_t{1} << s;
    }
    if (((x_ | z_) & ~covered) != 0) {
        throw Error("local_matrix sites do not cover the Pauli support");
    }
    Matrix m = Matrix::Identity(1, 1) * static_cast<double>(sign_);
    for (int s : sites) {
        m = kron(m, single_qubit_pauli(site_code(s)));
    }
    return m;
}

PauliString PauliString::permuted(const std::vector<int> &perm) const {
    std::uint64_t x = 0, z = 0;
    for (int s = 0; s < n_; s++) {
        if ((x_ >> s) & 1) x |= std::uint64_t{1} << perm[s];
        if ((z_ >> s) & 1) z |= std::uint64_t{1} << perm[s];
    }
    return PauliString(n_, x, z, sign_);
}

std::string PauliString::str() const {
    std::string out = sign_ < 0 ? "-" : "";
    for (int s = 0; s < n_; s++) {
        out.push_back(op(s));
    }
    return out;
}

}  // namespace cmilab

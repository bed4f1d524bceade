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

#ifndef CMILAB_LINALG_HPP
#define CMILAB_LINALG_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cmilab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Sorted, duplicate-free list of site indices.
using SiteSet = std::vector<int>;

inline constexpr double kLn2 = 0.69314718055994530942;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when a computation would exceed a configured size cap. The message names the cap.
class CapError : public Error {
   public:
    using Error::Error;
};

/// Reads a positive integer cap override from the environment, falling back to `fallback`.
std::size_t env_cap(const char *name, std::size_t fallback);

/// Returns q^n, throwing CapError (naming `cap_name`) if it exceeds `cap`.
std::size_t checked_power(int q, int n, std::size_t cap, const std::string &cap_name);

/// Sorts and deduplicates; throws if any site is outside [0, n).
SiteSet normalize_sites(SiteSet sites, int n);
SiteSet complement(const SiteSet &sites, int n);
SiteSet site_union(const SiteSet &a, const SiteSet &b);
bool sites_intersect(const SiteSet &a, const SiteSet &b);

/// Stride of each site in the lexicographic index (site 0 most significant).
std::vector<std::size_t> site_strides(int n, int q);

/// m <- O_site * m, where O acts on one site of an n-site, q-dim system.
void apply_local_left(Matrix &m, const Matrix &op, int site, int n, int q);
/// m <- m * O_site^dagger.
void apply_local_right_adjoint(Matrix &m, const Matrix &op, int site, int n, int q);

/// Partial trace keeping `keep` (sorted); output ordered by the kept sites.
Matrix partial_trace(const Matrix &m, const SiteSet &keep, int n, int q);
/// reduced (on `keep`) tensored with the identity on the complement, in site order.
Matrix embed_with_identity(const Matrix &reduced, const SiteSet &keep, int n, int q);

RealVector hermitian_eigenvalues(const Matrix &m);
/// -sum lambda ln lambda with eigenvalues below 1e-15 contributing zero.
double entropy_nats(const RealVector &eigenvalues);
/// Matrix logarithm of a Hermitian matrix; throws if any eigenvalue is below `floor`.
Matrix hermitian_log(const Matrix &m, double floor = 1e-12);
Matrix hermitian_exp(const Matrix &m);
bool is_hermitian(const Matrix &m, double tol = 1e-12);
/// Largest |eigenvalue| for Hermitian input, largest singular value otherwise.
double spectral_norm(const Matrix &m);
/// 0.5 * ||a - b||_1 for Hermitian a, b.
double trace_distance(const Matrix &a, const Matrix &b);
Matrix kron(const Matrix &a, const Matrix &b);

}  // namespace cmilab

#endif

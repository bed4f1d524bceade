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

#include "cmilab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace cmilab {

std::size_t env_cap(const char *name, std::size_t fallback) {
    const char *raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') {
        return fallback;
    }
    char *end = nullptr;
    unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || v == 0) {
        throw Error(std::string("environment variable ") + name + " must be a positive integer");
    }
    return static_cast<std::size_t>(v);
}

std::size_t checked_power(int q, int n, std::size_t cap, const std::string &cap_name) {
    std::size_t r = 1;
    for (int i = 0; i < n; i++) {
        if (r > cap / static_cast<std::size_t>(q)) {
            throw CapError(
                "size " + std::to_string(q) + "^" + std::to_string(n) + " exceeds cap " + cap_name + "=" +
                std::to_string(cap));
        }
        r *= static_cast<std::size_t>(q);
    }
    if (r > cap) {
        throw CapError(
            "size " + std::to_string(q) + "^" + std::to_string(n) + " exceeds cap " + cap_name + "=" +
            std::to_string(cap));
    }
    return r;
}

SiteSet normalize_sites(SiteSet sites, int n) {
    std::sort(sites.begin(), sites.end());
    sites.erase(std::unique(sites.begin(), sites.end()), sites.end());
    for (int s : sites) {
        if (s < 0 || s >= n) {
            throw Error("site " + std::to_string(s) + " out of range for " + std::to_string(n) + " sites");
        }
    }
    return sites;
}

SiteSet complement(const SiteSet &sites, int n) {
    SiteSet out;
    std::size_t k = 0;
    for (int s = 0; s < n; s++) {
        if (k < sites.size() && sites[k] == s) {
            k++;
        } else {
            out.push_back(s);
        }
    }
    return out;
}

SiteSet site_union(const SiteSet &a, const SiteSet &b) {
    SiteSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool sites_intersect(const SiteSet &a, const SiteSet &b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            return true;
        }
        if (a[i] < b[j]) {
            i++;
        } else {
            j++;
        }
    }
    return false;
}

std::vector<std::size_t> site_strides(int n, int q) {
    std::vector<std::size_t> strides(n);
    std::size_t s = 1;
    for (int i = n - 1; i >= 0; i--) {
        strides[i] = s;
        s *= static_cast<std::size_t>(q);
    }
    return strides;
}

void apply_local_left(Matrix &m, const Matrix &op, int site, int n, int q) {
    const std::size_t stride = site_strides(n, q)[site];
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    const std::size_t block = stride * static_cast<std::size_t>(q);
    Matrix rows(q, m.cols());
    for (std::size_t hi = 0; hi < dim; hi += block) {
        for (std::size_t lo = 0; lo < stride; lo++) {
            const std::size_t base = hi + lo;
            for (int d = 0; d < q; d++) {
                rows.row(d) = m.row(base + d * stride);
            }
            Matrix out = op * rows;
            for (int d = 0; d < q; d++) {
                m.row(base + d * stride) = out.row(d);
            }
        }
    }
}

void apply_local_right_adjoint(Matrix &m, const Matrix &op, int site, int n, int q) {
    const std::size_t stride = site_strides(n, q)[site];
    const std::size_t dim = static_cast<std::size_t>(m.cols());
    const std::size_t block = stride * static_cast<std::size_t>(q);
    Matrix cols(m.rows(), q);
    const Matrix adj = op.adjoint();
    for (std::size_t hi = 0; hi < dim; hi += block) {
        for (std::size_t lo = 0; lo < stride; lo++) {
            const std::size_t base = hi + lo;
            for (int d = 0; d < q; d++) {
                cols.col(d) = m.col(base + d * stride);
            }
            Matrix out = cols * adj;
            for (int d = 0; d < q; d++) {
                m.col(base + d * stride) = out.col(d);
            }
        }
    }
}

namespace {

// index_of[t][k]: full basis index whose kept digits encode k and traced digits encode t.
std::vector<std::vector<std::size_t>> split_indices(const SiteSet &keep, int n, int q) {
    const SiteSet traced = complement(keep, n);
    const auto strides = site_strides(n, q);
    std::size_t dk = 1, dt = 1;
    for (std::size_t i = 0; i < keep.size(); i++) dk *= q;
    for (std::size_t i = 0; i < traced.size(); i++) dt *= q;
    std::vector<std::size_t> keep_off(dk, 0), trace_off(dt, 0);
    for (std::size_t k = 0; k < dk; k++) {
        std::size_t rem = k;
        for (int i = static_cast<int>(keep.size()) - 1; i >= 0; i--) {
            keep_off[k] += (rem % q) * strides[keep[i]];
            rem /= q;
        }
    }
    for (std::size_t t = 0; t < dt; t++) {
        std::size_t rem = t;
        for (int i = static_cast<int>(traced.size()) - 1; i >= 0; i--) {
            trace_off[t] += (rem % q) * strides[traced[i]];
            rem /= q;
        }
    }
    std::vector<std::vector<std::size_t>> out(dt, std::vector<std::size_t>(dk));
    for (std::size_t t = 0; t < dt; t++) {
        for (std::size_t k = 0; k < dk; k++) {
            out[t][k] = trace_off[t] + keep_off[k];
        }
    }
    return out;
}

}  // namespace

Matrix partial_trace(const Matrix &m, const SiteSet &keep, int n, int q) {
    const auto idx = split_indices(keep, n, q);
    const std::size_t dk = idx.front().size();
    Matrix out = Matrix::Zero(dk, dk);
    for (const auto &row : idx) {
        for (std::size_t b = 0; b < dk; b++) {
            for (std::size_t a = 0; a < dk; a++) {
                out(a, b) += m(row[a], row[b]);
            }
        }
    }
    return out;
}

Matrix embed_with_identity(const Matrix &reduced, const SiteSet &keep, int n, int q) {
    const auto idx = split_indices(keep, n, q);
    const std::size_t dk = idx.front().size();
    const std::size_t dim = dk * idx.size();
    Matrix out = Matrix::Zero(dim, dim);
    for (const auto &row : idx) {
        for (std::size_t b = 0; b < dk; b++) {
            for (std::size_t a = 0; a < dk; a++) {
                out(row[a], row[b]) = reduced(a, b);
            }
        }
    }
    return out;
}

RealVector hermitian_eigenvalues(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigendecomposition failed");
    }
    return solver.eigenvalues();
}

double entropy_nats(const RealVector &eigenvalues) {
    double s = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); i++) {
        double v = eigenvalues[i];
        if (v > 1e-15) {
            s -= v * std::log(v);
        }
    }
    return s;
}

Matrix hermitian_log(const Matrix &m, double floor) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigendecomposition failed");
    }
    const RealVector &ev = solver.eigenvalues();
    if (ev.minCoeff() < floor) {
        throw Error("temperature too low for operator-log form: eigenvalue below floor");
    }
    RealVector logs = ev.array().log();
    return solver.eigenvectors() * logs.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix hermitian_exp(const Matrix &m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigendecomposition failed");
    }
    RealVector e = solver.eigenvalues().array().exp();
    return solver.eigenvectors() * e.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

bool is_hermitian(const Matrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

double spectral_norm(const Matrix &m) {
    if (m.size() == 0) {
        return 0;
    }
    if (is_hermitian(m)) {
        Matrix h = 0.5 * (m + m.adjoint());
        RealVector ev = hermitian_eigenvalues(h);
        return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double trace_distance(const Matrix &a, const Matrix &b) {
    Matrix d = a - b;
    d = 0.5 * (d + d.adjoint());
    RealVector ev = hermitian_eigenvalues(d);
    return 0.5 * ev.cwiseAbs().sum();
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace cmilab

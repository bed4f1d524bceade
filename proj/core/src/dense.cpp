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

#include "cmilab/dense.hpp"

#include <cmath>
#include <limits>

namespace cmilab {

std::size_t dense_dim_cap() {
    return env_cap("CMILAB_MAX_DENSE_DIM", kDefaultMaxDenseDim);
}

DensityMatrix::DensityMatrix(int n_sites, int local_dim, Matrix m) : n_(n_sites), q_(local_dim), m_(std::move(m)) {
    std::size_t expected = 1;
    for (int i = 0; i < n_; i++) expected *= static_cast<std::size_t>(q_);
    if (static_cast<std::size_t>(m_.rows()) != expected || m_.rows() != m_.cols()) {
        throw Error("density matrix dimension does not match q^n");
    }
    if (!is_hermitian(m_, 1e-10)) {
        throw Error("density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1, 0)) > 1e-10) {
        throw Error("density matrix trace differs from 1");
    }
    m_ = 0.5 * (m_ + m_.adjoint()).eval();
}

DensityMatrix DensityMatrix::normalized(int n_sites, int local_dim, Matrix m) {
    Complex tr = m.trace();
    if (!(tr.real() > 0)) {
        throw Error("cannot normalize an operator with nonpositive trace");
    }
    return DensityMatrix(n_sites, local_dim, m / tr.real());
}

namespace {

// m <- m - t * P m, i.e. (I - t P) m.
void multiply_pauli_factor(Matrix &m, const PauliString &p, double t) {
    const std::size_t dim = static_cast<std::size_t>(m.rows());
    const std::uint64_t flip = p.index_x_mask();
    Matrix pm(m.rows(), m.cols());
    for (std::uint64_t b = 0; b < dim; b++) {
        pm.row(b ^ flip) = p.basis_phase(b) * m.row(b);
    }
    m -= t * pm;
}

Matrix ground_projector(const Matrix &hmat) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hmat);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigendecomposition failed");
    }
    const RealVector &ev = solver.eigenvalues();
    const double emin = ev.minCoeff();
    Matrix proj = Matrix::Zero(hmat.rows(), hmat.cols());
    for (Eigen::Index k = 0; k < ev.size(); k++) {
        if (ev[k] <= emin + 1e-9) {
            proj += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).adjoint();
        }
    }
    return proj;
}

}  // namespace

Matrix gibbs_operator_general(const LocalHamiltonian &h, double beta) {
    checked_power(h.local_dim(), h.n_sites(), dense_dim_cap(), "CMILAB_MAX_DENSE_DIM");
    if (!(beta >= 0)) {
        throw Error("beta must be nonnegative");
    }
    const Matrix hmat = h.dense(dense_dim_cap());
    if (std::isinf(beta)) {
        return ground_projector(hmat);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(hmat);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigendecomposition failed");
    }
    const RealVector &ev = solver.eigenvalues();
    const double emin = ev.minCoeff();
    RealVector w = (-beta * (ev.array() - emin)).exp();
    return solver.eigenvectors() * w.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

Matrix gibbs_operator(const LocalHamiltonian &h, double beta) {
    const int n = h.n_sites();
    const int q = h.local_dim();
    const std::size_t dim = checked_power(q, n, dense_dim_cap(), "CMILAB_MAX_DENSE_DIM");
    if (!(beta >= 0)) {
        throw Error("beta must be nonnegative");
    }
    if (!h.commuting()) {
        return gibbs_operator_general(h, beta);
    }
    // Each factor is divided by a positive constant: exp(-b l P) / cosh(b l) = I - tanh(b l) P and
    // exp(-b l (h - min h)) for diagonal tables.
    Matrix m = Matrix::Identity(dim, dim);
    SiteSet all(n);
    for (int s = 0; s < n; s++) all[s] = s;
    for (const auto &t : h.terms()) {
        const double bl = beta * t.lambda();
        if (t.lambda() == 0 || beta == 0) continue;
        if (t.is_pauli()) {
            const double th = std::isinf(bl) ? (bl > 0 ? 1.0 : -1.0) : std::tanh(bl);
            multiply_pauli_factor(m, t.pauli_op(), th);
        } else {
            const Matrix local = t.local_matrix(all, q);
            RealVector e = local.diagonal().real() * t.lambda();
            const double emin = e.minCoeff();
            for (std::size_t i = 0; i < dim; i++) {
                double v = e[i] - emin;
                double f = std::isinf(beta) ? (v <= 1e-9 ? 1.0 : 0.0) : std::exp(-beta * v);
                m.row(i) *= f;
            }
        }
    }
    if (std::isinf(beta) && !(m.trace().real() > 1e-9)) {
        // Frustrated terms: no common ground state of the individual terms.
        return gibbs_operator_general(h, beta);
    }
    return m;
}

DensityMatrix gibbs_state(const LocalHamiltonian &h, double beta) {
    return DensityMatrix::normalized(h.n_sites(), h.local_dim(), gibbs_operator(h, beta));
}

DensityMatrix apply_layer(const DensityMatrix &rho, const ChannelLayer &layer) {
    return DensityMatrix::normalized(rho.n_sites(), rho.local_dim(),
                                     apply_layer(rho.matrix(), layer, rho.n_sites(), rho.local_dim()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, const SiteSet &keep) {
    const SiteSet k = normalize_sites(keep, rho.n_sites());
    return DensityMatrix::normalized(static_cast<int>(k.size()), rho.local_dim(),
                                     partial_trace(rho.matrix(), k, rho.n_sites(), rho.local_dim()));
}

double von_neumann_entropy(const DensityMatrix &rho, const SiteSet &region) {
    const SiteSet k = normalize_sites(region, rho.n_sites());
    if (k.empty()) {
        return 0;
    }
    const Matrix reduced = partial_trace(rho.matrix(), k, rho.n_sites(), rho.local_dim());
    return entropy_nats(hermitian_eigenvalues(reduced)) / kLn2;
}

double quantum_mutual_information(const DensityMatrix &rho, const SiteSet &a, const SiteSet &c) {
    return von_neumann_entropy(rho, a) + von_neumann_entropy(rho, c) - von_neumann_entropy(rho, site_union(a, c));
}

double quantum_cmi(const DensityMatrix &rho, const Partition &p) {
    return von_neumann_entropy(rho, p.ab()) + von_neumann_entropy(rho, p.bc()) - von_neumann_entropy(rho, p.b) -
           von_neumann_entropy(rho, p.abc());
}

CmiOperator cmi_operator(const LocalHamiltonian &h, double beta, const ChannelLayer &layer, const Partition &p) {
    if (!is_unital(layer)) {
        throw Error("cmi_operator requires a unital layer");
    }
    const int n = h.n_sites();
    const int q = h.local_dim();
    const Matrix rho = gibbs_state(h, beta).matrix();
    const std::array<SiteSet, 4> regions{p.ab(), p.bc(), p.b, p.abc()};
    CmiOperator out;
    out.matrix = Matrix::Zero(rho.rows(), rho.cols());
    for (std::size_t k = 0; k < 4; k++) {
        const ChannelLayer traced = compose_with_trace(layer, complement(regions[k], n), q);
        Matrix img = apply_layer(rho, traced, n, q);
        img = 0.5 * (img + img.adjoint()).eval();
        out.logs[k] = hermitian_log(img);
        out.matrix += (k < 2 ? 1.0 : -1.0) * out.logs[k];
    }
    return out;
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    return trace_distance(a.matrix(), b.matrix());
}

DensityMatrix permuted(const DensityMatrix &rho, const std::vector<int> &perm) {
    const int n = rho.n_sites(), q = rho.local_dim();
    const auto strides = site_strides(n, q);
    const std::size_t dim = rho.dim();
    std::vector<std::size_t> map(dim);
    for (std::size_t i = 0; i < dim; i++) {
        std::size_t j = 0;
        for (int s = 0; s < n; s++) j += ((i / strides[s]) % q) * strides[perm[s]];
        map[i] = j;
    }
    Matrix out(dim, dim);
    for (std::size_t c = 0; c < dim; c++) {
        for (std::size_t r = 0; r < dim; r++) out(map[r], map[c]) = rho.matrix()(r, c);
    }
    return DensityMatrix(n, q, out);
}

}  // namespace cmilab

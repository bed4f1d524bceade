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

#include "cmilab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "cmilab/classical.hpp"
#include "cmilab/dense.hpp"
#include "cmilab/pauli_engine.hpp"

namespace cmilab {

namespace {

// Runs task(i) for i in [0, count) on `threads` workers; rethrows the first failure by index.
template <typename Task>
void parallel_for(std::size_t count, int threads, Task task) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto &t : pool) t.join();
    }
    for (auto &e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

ComplexVector cluster_state_vector(int n) {
    const std::size_t dim = checked_power(2, n, dense_dim_cap(), "dense_dim");
    ComplexVector psi(dim);
    const double amp = std::pow(2.0, -0.5 * n);
    for (std::size_t b = 0; b < dim; ++b) {
        int sign = 1;
        // CZ on neighbouring sites; site s is index bit n-1-s.
        for (int s = 0; s + 1 < n; ++s) {
            if (((b >> (n - 1 - s)) & 1) && ((b >> (n - 2 - s)) & 1)) sign = -sign;
        }
        // Z on every site maps the +1 eigenstate of each K_i to the -1 eigenstate.
        if (std::popcount(static_cast<std::uint64_t>(b)) & 1) sign = -sign;
        psi[b] = amp * sign;
    }
    return psi;
}

ChannelLayer dephase_all(int n, double p) {
    ChannelLayer layer;
    for (int s = 0; s < n; ++s) layer.set(dephasing(s, p));
    return layer;
}

}  // namespace

Engine parse_engine(const std::string &name) {
    if (name == "classical") return Engine::kClassical;
    if (name == "dense") return Engine::kDense;
    if (name == "pauli") return Engine::kPauli;
    throw Error("unknown engine '" + name + "' (expected classical, dense or pauli)");
}

const char *engine_name(Engine e) {
    switch (e) {
        case Engine::kClassical: return "classical";
        case Engine::kDense: return "dense";
        default: return "pauli";
    }
}

double instance_cmi(const ModelInstance &inst, double beta, Engine engine) {
    switch (engine) {
        case Engine::kClassical: {
            Distribution d = apply_transitions(gibbs_distribution(inst.h, beta), inst.layer);
            return cmi(d, inst.partition);
        }
        case Engine::kDense: {
            DensityMatrix rho = apply_layer(gibbs_state(inst.h, beta), inst.layer);
            return quantum_cmi(rho, inst.partition);
        }
        default: {
            PauliExpansion e = apply_pauli_layer(expand_gibbs(inst.h, beta), inst.layer);
            return pauli_cmi(e, inst.partition);
        }
    }
}

std::vector<std::pair<double, double>> DecayCurve::series(double beta) const {
    std::vector<std::pair<double, double>> out;
    for (const auto &p : points) {
        if (p.beta == beta) out.emplace_back(p.distance, p.cmi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

MarkovLengthFit fit_markov_length(const std::vector<std::pair<double, double>> &points, double floor) {
    MarkovLengthFit fit;
    std::vector<std::pair<double, double>> used;
    for (const auto &[d, c] : points) {
        if (c > floor) {
            used.emplace_back(d, std::log(c));
        } else {
            ++fit.censored;
        }
    }
    fit.used = used.size();
    if (used.size() < 3) {
        throw Error("Markov-length fit needs at least 3 points above the floor, got " + std::to_string(used.size()));
    }
    double mx = 0, my = 0;
    for (const auto &[x, y] : used) {
        mx += x;
        my += y;
    }
    mx /= used.size();
    my /= used.size();
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto &[x, y] : used) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0) throw Error("Markov-length fit needs at least two distinct distances");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0;
    for (const auto &[x, y] : used) {
        double r = y - (fit.intercept + fit.slope * x);
        ss_res += r * r;
    }
    fit.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
    fit.divergent = fit.slope >= -1e-3;
    fit.xi = fit.divergent ? std::numeric_limits<double>::infinity() : -1.0 / fit.slope;
    return fit;
}

DecayCurve decay_curve(const std::string &family, const std::vector<int> &distances, const std::vector<double> &betas,
                       Engine engine, const std::optional<ChannelSpec> &bulk, int threads) {
    std::vector<int> ds = distances;
    std::sort(ds.begin(), ds.end());
    if (std::adjacent_find(ds.begin(), ds.end()) != ds.end()) {
        throw Error("decay curve distances must be distinct");
    }
    DecayCurve curve;
    curve.family = family;
    curve.engine = engine_name(engine);
    curve.points.resize(ds.size() * betas.size());
    parallel_for(curve.points.size(), threads, [&](std::size_t i) {
        const double beta = betas[i / ds.size()];
        const int d = ds[i % ds.size()];
        ModelInstance inst = family_instance(family, d, bulk);
        curve.points[i] = CurvePoint{beta, d, instance_cmi(inst, beta, engine)};
    });
    return curve;
}

EquivalenceReport cluster_gibbs_equivalence(int n, double beta, Engine engine) {
    if (std::isnan(beta) || beta < 0) throw Error("beta must be nonnegative");
    EquivalenceReport rep;
    rep.n = n;
    rep.beta = beta;
    rep.p = std::isinf(beta) ? 0.0 : 1.0 / (std::exp(2 * beta) + 1);
    rep.engine = engine_name(engine);
    const LocalHamiltonian h = cluster_chain(n);
    if (engine == Engine::kDense) {
        if (n > 10) throw CapError("dense cluster equivalence is limited to n <= 10");
        ComplexVector psi = cluster_state_vector(n);
        Matrix pure = psi * psi.adjoint();
        DensityMatrix noisy = apply_layer(DensityMatrix(n, 2, pure), dephase_all(n, rep.p));
        rep.deviation = trace_distance(noisy, gibbs_state(h, beta));
    } else if (engine == Engine::kPauli) {
        if (n > 16) throw CapError("Pauli cluster equivalence is limited to n <= 16");
        PauliExpansion noisy = apply_pauli_layer(expand_gibbs(h, std::numeric_limits<double>::infinity()),
                                                 dephase_all(n, rep.p));
        PauliExpansion thermal = expand_gibbs(h, beta);
        double dev = 0;
        for (const auto &[k, c] : noisy.coefficients()) {
            auto it = thermal.coefficients().find(k);
            dev = std::max(dev, std::abs(c - (it == thermal.coefficients().end() ? 0.0 : it->second)));
        }
        for (const auto &[k, c] : thermal.coefficients()) {
            if (!noisy.coefficients().count(k)) dev = std::max(dev, std::abs(c));
        }
        rep.deviation = dev;
    } else {
        throw Error("cluster equivalence runs on the dense or Pauli engine");
    }
    rep.pass = rep.deviation <= 1e-10;
    return rep;
}

double binary_entropy(double d) {
    if (!(d >= 0 && d <= 1)) throw Error("binary entropy needs an argument in [0, 1]");
    auto term = [](double x) { return x > 0 ? -x * std::log2(x) : 0.0; };
    return term(d) + term(1 - d);
}

double theorem3_bound(int k, double q) {
    if (k < 1) throw Error("logical qubit count must be at least 1");
    if (!(q >= 0 && q <= 1)) throw Error("logical error rate must lie in [0, 1]");
    const double v = 2.0 * k - 4.0 * k * std::sqrt(q) - 3.0 * std::pow(1.5, 2.0 / 3.0) * std::pow(q, 1.0 / 6.0);
    return std::max(v, 0.0);
}

DecayCurve low_temperature_chain_demo(const std::string &family, const std::vector<int> &distances,
                                      const std::vector<double> &betas, int threads) {
    Engine engine;
    if (family == "parity_chain") {
        engine = Engine::kClassical;
    } else if (family == "bell_chain" || family == "cluster_chain") {
        engine = Engine::kPauli;
    } else {
        throw Error("low-temperature demo supports parity_chain, bell_chain and cluster_chain");
    }
    return decay_curve(family, distances, betas, engine, std::nullopt, threads);
}

}  // namespace cmilab

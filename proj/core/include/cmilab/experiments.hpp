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

#ifndef CMILAB_EXPERIMENTS_HPP
#define CMILAB_EXPERIMENTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cmilab/zoo.hpp"

namespace cmilab {

enum class Engine { kClassical, kDense, kPauli };
Engine parse_engine(const std::string &name);
const char *engine_name(Engine e);

/// CMI in bits of E[rho] for the instance's Gibbs state at beta (beta may be +infinity).
double instance_cmi(const ModelInstance &inst, double beta, Engine engine);

struct CurvePoint {
    double beta = 0;
    int distance = 0;
    double cmi = 0;
};

struct DecayCurve {
    std::string family;
    std::string engine;
    std::vector<CurvePoint> points;

    /// (distance, cmi) for one beta, in increasing distance.
    std::vector<std::pair<double, double>> series(double beta) const;
};

struct MarkovLengthFit {
    double xi = 0;
    double slope = 0;
    double intercept = 0;
    double r_squared = 0;
    std::size_t used = 0;
    std::size_t censored = 0;
    /// Slope >= -1e-3 per unit distance: no finite Markov length.
    bool divergent = false;
};

inline constexpr double kFitFloor = 1e-12;

/// Least squares of ln(cmi) against distance over points with cmi > floor; xi = -1 / slope.
MarkovLengthFit fit_markov_length(const std::vector<std::pair<double, double>> &points, double floor = kFitFloor);

/// One point per (beta, distance), computed on independent tasks with `threads` workers.
DecayCurve decay_curve(const std::string &family, const std::vector<int> &distances, const std::vector<double> &betas,
                       Engine engine, const std::optional<ChannelSpec> &bulk = std::nullopt, int threads = 1);

struct EquivalenceReport {
    int n = 0;
    double beta = 0;
    double p = 0;
    std::string engine;
    /// Trace distance (dense) or largest coefficient difference (Pauli).
    double deviation = 0;
    bool pass = false;
};

/// Gibbs state of the cluster chain against the ground state dephased at p = 1 / (e^{2 beta} + 1).
EquivalenceReport cluster_gibbs_equivalence(int n, double beta, Engine engine);

/// -D log2 D - (1 - D) log2 (1 - D)
double binary_entropy(double d);
/// max(0, 2k - 4k sqrt(q) - 3 (3/2)^{2/3} q^{1/6}), the proof-constant bound.
double theorem3_bound(int k, double q);

/// CMI against distance for each beta; the parity chain runs on the classical engine, the Bell and
/// cluster chains on the Pauli engine.
DecayCurve low_temperature_chain_demo(const std::string &family, const std::vector<int> &distances,
                                      const std::vector<double> &betas, int threads = 1);

}  // namespace cmilab

#endif

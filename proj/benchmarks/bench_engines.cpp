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

#include <benchmark/benchmark.h>

#include <string>

#include "cmilab/cluster_expansion.hpp"
#include "cmilab/combinatorics.hpp"
#include "cmilab/experiments.hpp"

namespace {

using namespace cmilab;

void BM_ClassicalIsingCmi(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    ModelInstance inst = builtin_instance("ising_chain_n" + std::to_string(n), ChannelSpec{"bitflip", 0.2});
    for (auto _ : state) benchmark::DoNotOptimize(instance_cmi(inst, 0.1, Engine::kClassical));
}
BENCHMARK(BM_ClassicalIsingCmi)->DenseRange(4, 12, 4)->Unit(benchmark::kMillisecond);

void BM_DenseClusterCmi(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    ModelInstance inst = builtin_instance("cluster_chain_n" + std::to_string(n), ChannelSpec{"bitflip", 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(instance_cmi(inst, 0.05, Engine::kDense));
}
BENCHMARK(BM_DenseClusterCmi)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_PauliBellCmi(benchmark::State &state) {
    const int pairs = static_cast<int>(state.range(0));
    ModelInstance inst = builtin_instance("bell_chain_n" + std::to_string(pairs));
    for (auto _ : state) benchmark::DoNotOptimize(instance_cmi(inst, 1.0, Engine::kPauli));
}
BENCHMARK(BM_PauliBellCmi)->DenseRange(2, 8, 3)->Unit(benchmark::kMillisecond);

void BM_CmiOperatorSeries(benchmark::State &state) {
    const int weight = static_cast<int>(state.range(0));
    ModelInstance inst = builtin_instance("ising_chain_n6", ChannelSpec{"bitflip", 0.2});
    for (auto _ : state) {
        TruncatedSeries s = cmi_operator_series(inst.h, 0.1, inst.layer, inst.partition, weight);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_CmiOperatorSeries)->DenseRange(2, 4, 1)->Unit(benchmark::kMillisecond);

// Polynomials are memoized per process, so after the first iteration this measures the lookup.
void BM_ChromaticPolynomialLookup(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if ((u + v) % 3 != 0) edges.emplace_back(u, v);
    SimpleGraph g(n, edges);
    for (auto _ : state) benchmark::DoNotOptimize(chromatic_polynomial(g));
}
BENCHMARK(BM_ChromaticPolynomialLookup)->DenseRange(5, 9, 2);

void BM_AnchoredClusterCounts(benchmark::State &state) {
    const int weight = static_cast<int>(state.range(0));
    LocalHamiltonian h = ising_lattice(3, 3);
    DualInteractionGraph g = build_dual_graph(h);
    for (auto _ : state) benchmark::DoNotOptimize(anchored_cluster_counts(g, h.n_sites(), weight));
}
BENCHMARK(BM_AnchoredClusterCounts)->DenseRange(3, 5, 1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

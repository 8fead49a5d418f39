// SPDX-License-Identifier: Apache-2.0
//
// mamcast - movable-antenna two-user multicast beamforming
// Copyright (C) 2026 The mamcast Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <benchmark/benchmark.h>

#include "mamcast/mamcast.hpp"

using namespace mamcast;

namespace {

SystemConfig with_n(int n) {
    SystemConfig cfg;
    cfg.n_antennas = n;
    cfg.span_l = 5.0;
    return cfg;
}

void BM_OptimalT(benchmark::State& state) {
    const SystemConfig cfg = with_n(static_cast<int>(state.range(0)));
    const auto x = uniform_positions(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(optimal_beamformer(x, cfg));
    }
}
BENCHMARK(BM_OptimalT)->DenseRange(4, 8, 2);

void BM_ThetaClosedForm(benchmark::State& state) {
    const SystemConfig cfg = with_n(5);
    const double f = channel_correlation(uniform_positions(cfg), cfg);
    double t = 0.0;
    for (auto _ : state) {
        t = t >= 1.0 ? 0.0 : t + 1e-3;
        benchmark::DoNotOptimize(theta_simplified(t, f, cfg));
    }
}
BENCHMARK(BM_ThetaClosedForm);

void BM_Sca(benchmark::State& state) {
    const SystemConfig cfg = with_n(static_cast<int>(state.range(0)));
    const auto init = uniform_positions(cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sca_optimize(cfg, init));
    }
}
BENCHMARK(BM_Sca)->DenseRange(4, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_Proposed(benchmark::State& state) {
    const SystemConfig cfg = with_n(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scheme(Scheme::Proposed, cfg));
    }
}
BENCHMARK(BM_Proposed)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Ao(benchmark::State& state) {
    const SystemConfig cfg = with_n(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scheme(Scheme::AO, cfg));
    }
}
BENCHMARK(BM_Ao)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Aps(benchmark::State& state) {
    const SystemConfig cfg = with_n(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_scheme(Scheme::APS, cfg));
    }
}
BENCHMARK(BM_Aps)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_BruteForceJoint(benchmark::State& state) {
    SystemConfig cfg;
    cfg.n_antennas = 2;
    cfg.span_l = 3.0;
    GridSpec grid;
    grid.position_step = 0.05;
    grid.t_step = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force_joint(cfg, grid));
    }
}
BENCHMARK(BM_BruteForceJoint)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

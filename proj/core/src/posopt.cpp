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

#include "mamcast/posopt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mamcast/error.hpp"
#include "mamcast/parallel.hpp"

namespace mamcast {

namespace {

// kappa below this is treated as exactly zero (sin theta_1 == sin theta_2).
constexpr double kZeroKappa = 1e-12;

} // namespace

CorrelationObjective correlation_objective(const SystemConfig& cfg) {
    return {cfg.spatial_frequency(1) - cfg.spatial_frequency(0), cfg.n_antennas};
}

double f1(std::span<const double> x, const CorrelationObjective& obj) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) s += std::cos(obj.kappa * (x[i] - x[j]));
    }
    return 2.0 * s;
}

double f1(const AntennaPositions& x, const CorrelationObjective& obj) {
    return f1(x.values(), obj);
}

std::vector<double> grad_f1(std::span<const double> x, const CorrelationObjective& obj) {
    std::vector<double> g(x.size(), 0.0);
    for (std::size_t n = 0; n < x.size(); ++n) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += std::sin(obj.kappa * (x[i] - x[n]));
        g[n] = 2.0 * obj.kappa * s;
    }
    return g;
}

std::vector<double> grad_f1(const AntennaPositions& x, const CorrelationObjective& obj) {
    return grad_f1(x.values(), obj);
}

double delta_bound(const CorrelationObjective& obj) {
    const double n = obj.n;
    const double k4 = std::pow(obj.kappa, 4);
    return std::sqrt(4.0 * k4 * n * (n - 1) * (n - 1) + 4.0 * n * (n - 1) * k4);
}

double surrogate_value(std::span<const double> x, std::span<const double> x_k, double f1_k,
                       std::span<const double> g, double delta) {
    double lin = 0.0, sq = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        const double d = x[n] - x_k[n];
        lin += g[n] * d;
        sq += d * d;
    }
    return f1_k + lin - 0.5 * delta * sq;
}

void isotonic_regression(std::span<double> v) {
    // Blocks of (mean, weight); merged while the previous mean exceeds the last.
    std::vector<double> mean;
    std::vector<std::size_t> weight;
    mean.reserve(v.size());
    weight.reserve(v.size());
    for (double value : v) {
        mean.push_back(value);
        weight.push_back(1);
        while (mean.size() > 1 && mean[mean.size() - 2] > mean.back()) {
            const double m2 = mean.back();
            const std::size_t w2 = weight.back();
            mean.pop_back();
            weight.pop_back();
            const std::size_t w = weight.back() + w2;
            mean.back() = (mean.back() * weight.back() + m2 * w2) / w;
            weight.back() = w;
        }
    }
    std::size_t pos = 0;
    for (std::size_t b = 0; b < mean.size(); ++b) {
        for (std::size_t k = 0; k < weight[b]; ++k) v[pos++] = mean[b];
    }
}

std::vector<double> project_to_polytope(std::span<const double> z, double span, double d_min) {
    const std::size_t n = z.size();
    if (n == 0) throw ValidationError("cannot project an empty vector");
    const double width = span - (n - 1) * d_min;
    if (width < -kFeasibilityTol) throw ValidationError("spacing polytope is empty");

    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = z[i] - i * d_min;
    isotonic_regression(u);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::clamp(u[i], 0.0, std::max(0.0, width)) + i * d_min;
    return u;
}

AntennaPositions solve_surrogate(const AntennaPositions& x_k, std::span<const double> g,
                                 double delta, const SystemConfig& cfg) {
    if (!(delta > 0.0)) {
        throw DegenerateObjective("surrogate curvature is zero; every feasible point is optimal");
    }
    if (g.size() != x_k.size()) throw ValidationError("gradient length mismatch");
    std::vector<double> z(x_k.size());
    for (std::size_t n = 0; n < z.size(); ++n) z[n] = x_k[n] + g[n] / delta;
    return {project_to_polytope(z, cfg.span_l, cfg.d_min), cfg};
}

ScaResult sca_optimize(const SystemConfig& cfg, const AntennaPositions& init, const ScaOptions& opts) {
    if (!(opts.tol > 0.0)) throw ValidationError("SCA tolerance must be > 0");
    if (init.size() != static_cast<std::size_t>(cfg.n_antennas)) {
        throw ValidationError("initial layout has the wrong antenna count");
    }
    const CorrelationObjective obj = correlation_objective(cfg);

    ScaResult res{init, {}};
    double value = f1(init, obj);
    res.trace.iterates.push_back({init.vector(), value});
    if (std::abs(obj.kappa) <= kZeroKappa) {
        res.trace.converged = true;
        return res;
    }

    const double delta = delta_bound(obj);
    for (int k = 0; k < opts.max_iter; ++k) {
        const auto g = grad_f1(res.x, obj);
        AntennaPositions next = solve_surrogate(res.x, g, delta, cfg);
        const double next_value = f1(next, obj);
        ++res.trace.iterations;
        if (next_value < value) {
            // Only reachable through rounding at a stationary point.
            res.trace.converged = true;
            break;
        }
        const double gain = next_value - value;
        res.x = std::move(next);
        value = next_value;
        res.trace.iterates.push_back({res.x.vector(), value});
        if (gain < opts.tol) {
            res.trace.converged = true;
            break;
        }
    }
    return res;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

AntennaPositions random_feasible_positions(const SystemConfig& cfg, std::mt19937_64& rng) {
    const int n = cfg.n_antennas;
    const double width = std::max(0.0, cfg.slack_span());
    std::vector<double> u(n);
    for (double& v : u) v = width * uniform01(rng);
    std::sort(u.begin(), u.end());
    for (int i = 0; i < n; ++i) u[i] += i * cfg.d_min;
    return {std::move(u), cfg};
}

std::vector<AntennaPositions> initial_layouts(const SystemConfig& cfg, int n_starts, std::uint64_t seed) {
    if (n_starts < 1) throw ValidationError("n_starts must be >= 1");
    std::vector<AntennaPositions> inits;
    inits.reserve(n_starts);
    inits.push_back(uniform_positions(cfg));
    std::mt19937_64 rng(seed);
    for (int s = 1; s < n_starts; ++s) inits.push_back(random_feasible_positions(cfg, rng));
    return inits;
}

ScaResult multi_start_sca(const SystemConfig& cfg, int n_starts, std::uint64_t seed,
                          const ScaOptions& opts) {
    if (n_starts < 1) throw ValidationError("n_starts must be >= 1");
    cfg.validate();
    if (std::abs(correlation_objective(cfg).kappa) <= kZeroKappa) {
        return sca_optimize(cfg, uniform_positions(cfg), opts);
    }

    const std::vector<AntennaPositions> inits = initial_layouts(cfg, n_starts, seed);
    auto runs = parallel_map(inits.size(), [&](std::size_t i) { return sca_optimize(cfg, inits[i], opts); });

    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        const double vi = runs[i].trace.iterates.back().f1;
        const double vb = runs[best].trace.iterates.back().f1;
        if (vi > vb + 1e-12 || (vi >= vb - 1e-12 && runs[i].x.vector() < runs[best].x.vector())) {
            best = i;
        }
    }
    return std::move(runs[best]);
}

} // namespace mamcast

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

#include "mamcast/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "mamcast/beamformer.hpp"
#include "mamcast/error.hpp"
#include "mamcast/parallel.hpp"
#include "mamcast/posopt.hpp"

namespace mamcast {

namespace {

/// t-grid {0, t_step, ..., 1} with sqrt(1 - t^2) alongside.
struct TGrid {
    std::vector<double> t;
    std::vector<double> s;
};

TGrid t_grid(double t_step) {
    TGrid g;
    const auto k = static_cast<std::size_t>(std::floor(1.0 / t_step + 1e-9));
    g.t.reserve(k + 2);
    for (std::size_t i = 0; i <= k; ++i) g.t.push_back(std::min(1.0, static_cast<double>(i) * t_step));
    if (g.t.back() < 1.0) g.t.push_back(1.0);
    g.s.reserve(g.t.size());
    for (double t : g.t) g.s.push_back(std::sqrt(std::max(0.0, 1.0 - t * t)));
    return g;
}

// Same expression as theta_from_terms with the SNR scales hoisted.
GridT best_on_grid(const ProjectionTerms& terms, double c1, double c2, const TGrid& grid) {
    const double k1 = c1 * terms.a * terms.a;
    GridT best{0.0, -1.0};
    for (std::size_t i = 0; i < grid.t.size(); ++i) {
        const double t = grid.t[i];
        const double amp = terms.b * t + terms.c * grid.s[i];
        const double v = std::min(k1 * t * t, c2 * amp * amp);
        if (v > best.theta) best = {t, v};
    }
    return best;
}

/// Number of layouts enumerate_grid_layouts would return: with a minimum
/// index gap g the count is C(M - (N-1)(g-1), N).
double count_grid_layouts(const SystemConfig& cfg, double step) {
    const double m = std::floor(cfg.span_l / step + 1e-9) + 1.0;
    double gap = 1.0;
    while (gap * step < cfg.d_min - kFeasibilityTol) gap += 1.0;
    const double pool = m - (cfg.n_antennas - 1) * (gap - 1.0);
    if (pool < cfg.n_antennas) return 0.0;
    double c = 1.0;
    for (int k = 1; k <= cfg.n_antennas; ++k) c = c * (pool - cfg.n_antennas + k) / k;
    return c;
}

SystemConfig random_config(std::mt19937_64& rng, int n_lo, int n_hi) {
    SystemConfig cfg;
    cfg.n_antennas = n_lo + static_cast<int>(rng() % static_cast<std::uint64_t>(n_hi - n_lo + 1));
    cfg.span_l = (cfg.n_antennas - 1) * cfg.d_min + 3.0 * uniform01(rng);
    cfg.theta_su = {std::numbers::pi * uniform01(rng), std::numbers::pi * uniform01(rng)};
    cfg.d_su = {30.0 + 270.0 * uniform01(rng), 30.0 + 270.0 * uniform01(rng)};
    return cfg;
}

} // namespace

std::vector<std::vector<double>> enumerate_grid_layouts(const SystemConfig& cfg, double step) {
    cfg.validate();
    if (!(step > 0.0)) throw ValidationError("position_step must be > 0");
    const int n = cfg.n_antennas;
    const auto m = static_cast<std::size_t>(std::floor(cfg.span_l / step + 1e-9)) + 1;

    std::vector<std::vector<double>> out;
    std::vector<double> cur(n);
    auto dfs = [&](auto&& self, int depth, std::size_t from) -> void {
        if (depth == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = from; i < m; ++i) {
            const double xi = static_cast<double>(i) * step;
            if (depth > 0 && xi - cur[depth - 1] < cfg.d_min - kFeasibilityTol) continue;
            cur[depth] = xi;
            self(self, depth + 1, i + 1);
        }
    };
    dfs(dfs, 0, 0);
    return out;
}

JointOptimum brute_force_joint(const SystemConfig& cfg, const GridSpec& grid) {
    cfg.validate();
    if (cfg.n_antennas > grid.n_max) {
        throw ValidationError("joint brute force is limited to N <= " + std::to_string(grid.n_max));
    }
    if (!(grid.t_step > 0.0 && grid.t_step <= 1.0)) throw ValidationError("t_step must lie in (0, 1]");

    if (!(grid.position_step > 0.0)) throw ValidationError("position_step must be > 0");
    const TGrid ts = t_grid(grid.t_step);
    const double layout_count = std::round(count_grid_layouts(cfg, grid.position_step));
    const double evaluations = layout_count * static_cast<double>(ts.t.size());
    if (evaluations > grid.max_evaluations) {
        std::ostringstream msg;
        msg << "joint search needs " << evaluations << " evaluations, over the limit of "
            << grid.max_evaluations << "; use a coarser grid";
        throw EnumerationLimit(msg.str());
    }
    const auto layouts = enumerate_grid_layouts(cfg, grid.position_step);
    if (layouts.empty()) throw ValidationError("no feasible layout on the position grid");

    const auto per_layout = parallel_map(layouts.size(), [&](std::size_t i) {
        const AntennaPositions x(layouts[i], cfg);
        return best_on_grid(projection_terms(x, cfg), cfg.snr_scale(0), cfg.snr_scale(1), ts);
    });

    std::size_t best = 0;
    for (std::size_t i = 1; i < per_layout.size(); ++i) {
        if (per_layout[i].theta > per_layout[best].theta) best = i;
    }
    JointOptimum out{AntennaPositions(layouts[best], cfg), per_layout[best].t, per_layout[best].theta,
                     std::log2(1.0 + per_layout[best].theta), layouts.size()};
    return out;
}

GridT grid_best_t(const AntennaPositions& x, const SystemConfig& cfg, double t_step) {
    if (!(t_step > 0.0 && t_step <= 0.01)) throw ValidationError("t_step must lie in (0, 0.01]");
    return best_on_grid(projection_terms(x, cfg), cfg.snr_scale(0), cfg.snr_scale(1), t_grid(t_step));
}

double grid_resolution_bound(const SystemConfig& cfg, const GridSpec& grid, double theta) {
    const double sqrt_n = std::sqrt(static_cast<double>(cfg.n_antennas));
    const double w_shift = std::numbers::pi / std::sqrt(2.0) * std::sqrt(grid.t_step / 2.0);
    double amp_loss = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double k = std::abs(cfg.spatial_frequency(i));
        amp_loss = std::max(amp_loss, std::sqrt(cfg.snr_scale(i)) *
                                          (k * sqrt_n * grid.position_step / 2.0 + sqrt_n * w_shift));
    }
    const double reduced = std::max(0.0, std::sqrt(theta) - amp_loss);
    return std::log2(1.0 + theta) - std::log2(1.0 + reduced * reduced);
}

SeparationCertificate certify_separation(const SystemConfig& cfg, const GridSpec& grid,
                                         const ProposedOptions& opts) {
    const JointOptimum joint = brute_force_joint(cfg, grid);
    const SchemeResult decoupled = proposed_scheme(cfg, opts);
    const double theta = std::min(decoupled.snr.gamma_u1, decoupled.snr.gamma_u2);

    SeparationCertificate cert;
    cert.cfg = cfg;
    cert.joint_rate = joint.min_rate;
    cert.decoupled_rate = decoupled.snr.min_rate;
    cert.epsilon = grid_resolution_bound(cfg, grid, std::max(theta, joint.theta));
    cert.passed = cert.decoupled_rate >= cert.joint_rate - cert.epsilon;
    return cert;
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

nlohmann::ordered_json ValidationReport::to_json() const {
    nlohmann::ordered_json j;
    j["passed"] = passed();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["passed"] = c.passed;
        e["detail"] = c.detail;
        j["checks"].push_back(std::move(e));
    }
    return j;
}

ValidationReport run_validation(bool quick, std::uint64_t seed) {
    ValidationReport report;
    std::mt19937_64 rng(seed);

    {
        const int count = quick ? 100 : 1000;
        double worst = 0.0;
        for (int i = 0; i < count; ++i) {
            const SystemConfig cfg = random_config(rng, 2, 8);
            const AntennaPositions x = random_feasible_positions(cfg, rng);
            const double t = uniform01(rng);
            const double a = theta_simplified(t, channel_correlation(x, cfg), cfg);
            const double b = theta_via_projections(t, x, cfg);
            worst = std::max(worst, std::abs(a - b) / std::max(std::abs(b), 1e-300));
        }
        ValidationCheck c{"theta_equivalence", worst <= 1e-9, {}};
        c.detail["instances"] = count;
        c.detail["max_relative_error"] = worst;
        c.detail["tolerance"] = 1e-9;
        report.checks.push_back(std::move(c));
    }

    {
        const int count = quick ? 40 : 200;
        const double t_step = 1e-5;
        double worst_gap = 0.0, worst_excess = 0.0, worst_offset = 0.0;
        bool in_range = true;
        for (int i = 0; i < count; ++i) {
            SystemConfig cfg = random_config(rng, 2, 8);
            if (i % 10 == 0) cfg.theta_su[1] = cfg.theta_su[0];  // parallel channels
            const AntennaPositions x = random_feasible_positions(cfg, rng);
            const double f = channel_correlation(x, cfg);
            const OptimalT opt = optimal_t(theta_coefficients(f, cfg), cfg.n_antennas);
            const double closed = theta_simplified(opt.t, f, cfg);
            const GridT g = grid_best_t(x, cfg, t_step);
            worst_gap = std::max(worst_gap, (closed - g.theta) / g.theta);
            worst_excess = std::max(worst_excess, (g.theta - closed) / closed);
            worst_offset = std::max(worst_offset, std::abs(g.t - opt.t));
            in_range = in_range && g.t >= f / cfg.n_antennas - t_step;
        }
        // At a crossing Theta has a kink, so the best grid point trails the
        // closed form by up to slope * t_step. What must hold is that the grid
        // never beats t* and its maximizer sits within one step of t*.
        const bool ok = worst_excess <= 1e-12 && worst_offset <= t_step * (1.0 + 1e-9) && in_range;
        ValidationCheck c{"optimal_t_vs_grid", ok, {}};
        c.detail["instances"] = count;
        c.detail["t_step"] = t_step;
        c.detail["max_relative_gap"] = worst_gap;
        c.detail["max_grid_excess"] = worst_excess;
        c.detail["max_argmax_offset"] = worst_offset;
        c.detail["grid_maximizer_in_range"] = in_range;
        report.checks.push_back(std::move(c));
    }

    {
        const int pairs = quick ? 3 : 20;
        GridSpec grid;
        if (quick) {
            grid.position_step = 0.1;
            grid.t_step = 1e-3;
        }
        bool ok = true;
        double worst_margin = std::numeric_limits<double>::infinity();
        nlohmann::ordered_json cases = nlohmann::ordered_json::array();
        for (int n : {2, 3}) {
            for (int p = 0; p < pairs; ++p) {
                SystemConfig cfg;
                cfg.n_antennas = n;
                cfg.span_l = n == 2 ? 3.0 : 2.5;
                cfg.theta_su = {std::numbers::pi * uniform01(rng), std::numbers::pi * uniform01(rng)};
                const SeparationCertificate cert = certify_separation(cfg, grid);
                ok = ok && cert.passed;
                worst_margin = std::min(worst_margin, cert.decoupled_rate - cert.joint_rate + cert.epsilon);
                nlohmann::ordered_json e;
                e["n"] = n;
                e["theta_su"] = {cfg.theta_su[0], cfg.theta_su[1]};
                e["joint_rate"] = cert.joint_rate;
                e["decoupled_rate"] = cert.decoupled_rate;
                e["epsilon"] = cert.epsilon;
                e["passed"] = cert.passed;
                cases.push_back(std::move(e));
            }
        }
        ValidationCheck c{"separation_certificate", ok, {}};
        c.detail["position_step"] = grid.position_step;
        c.detail["t_step"] = grid.t_step;
        c.detail["worst_margin"] = worst_margin;
        c.detail["cases"] = std::move(cases);
        report.checks.push_back(std::move(c));
    }

    return report;
}

} // namespace mamcast

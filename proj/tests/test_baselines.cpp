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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mamcast/baselines.hpp"
#include "mamcast/error.hpp"
#include "mamcast/oracle.hpp"
#include "support/oracles.hpp"

using namespace mamcast;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

SystemConfig fig2b(int n) {
    SystemConfig cfg;
    cfg.n_antennas = n;
    cfg.span_l = 5.0;
    return cfg;
}

void expect_consistent(const SchemeResult& r, const SystemConfig& cfg) {
    const SnrPair s = snr_pair(r.beamformer.w, r.x, cfg);
    EXPECT_LE(rel(s.gamma_u1, r.snr.gamma_u1), 1e-9);
    EXPECT_LE(rel(s.gamma_u2, r.snr.gamma_u2), 1e-9);
    EXPECT_NEAR(s.min_rate, r.snr.min_rate, 1e-9);
    EXPECT_NEAR(r.correlation, channel_correlation(r.x, cfg), 1e-12);
    EXPECT_TRUE(is_feasible(r.x.values(), cfg.span_l, cfg.d_min));
}

} // namespace

TEST(SchemeNames, RoundTrip) {
    for (Scheme s : {Scheme::Proposed, Scheme::AO, Scheme::APS, Scheme::MaMrt, Scheme::Fpa}) {
        EXPECT_EQ(parse_scheme(to_string(s)), s);
    }
    EXPECT_FALSE(parse_scheme("mrt").has_value());
    EXPECT_FALSE(parse_scheme("").has_value());
}

TEST(Proposed, DefaultConfiguration) {
    SystemConfig cfg;
    const auto r = proposed_scheme(cfg);
    expect_consistent(r, cfg);
    EXPECT_EQ(r.beamformer.case_label, BeamCase::Crossing);
    EXPECT_GT(r.snr.min_rate, 23.0);
    EXPECT_LE(rel(r.snr.gamma_u1, r.snr.gamma_u2), 1e-9);
}

TEST(Proposed, CloseToFineGridSelection) {
    SystemConfig cfg;
    const auto r = proposed_scheme(cfg);
    const auto fine = aps_search(cfg, 0.05, 1e8);
    EXPECT_GE(r.correlation, fine.correlation * 0.99);
}

TEST(Ao, FixedPointAtProposedLayout) {
    SystemConfig cfg;
    const auto p = proposed_scheme(cfg);
    const auto a = ao_optimize(cfg, p.x);
    EXPECT_EQ(a.iterations, 1);
    EXPECT_NEAR(a.snr.min_rate, p.snr.min_rate, 1e-9);
}

TEST(Ao, TraceNeverDecreases) {
    oracle::Sampler rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const SystemConfig cfg = rng.config(2, 8);
        const auto r = ao_optimize(cfg, AntennaPositions(rng.positions(cfg), cfg));
        expect_consistent(r, cfg);
        ASSERT_FALSE(r.trace.empty());
        for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_GE(r.trace[k], r.trace[k - 1] - 1e-9);
        EXPECT_NEAR(r.trace.back(), r.snr.min_rate, 1e-9);
        EXPECT_LE(r.iterations, AoOptions{}.max_outer);
    }
}

TEST(Ao, MatchesProposedOnAntennaSweep) {
    for (int n = 4; n <= 8; ++n) {
        const SystemConfig cfg = fig2b(n);
        const double p = proposed_scheme(cfg).snr.min_rate;
        const double a = run_scheme(Scheme::AO, cfg).snr.min_rate;
        EXPECT_LE(std::abs(p - a) / p, 0.01) << "N = " << n;
    }
}

TEST(Ao, BoundedByJointGridWhenGridHoldsOptimum) {
    // kappa = 2 pi: spacing 1 aligns both channels, which the 0.5 grid contains.
    SystemConfig cfg;
    cfg.n_antennas = 2;
    cfg.span_l = 1.0;
    cfg.theta_su = {0.0, pi / 2.0};
    GridSpec grid;
    grid.position_step = 0.5;
    grid.t_step = 1e-4;
    const auto joint = brute_force_joint(cfg, grid);
    const auto ao = ao_optimize(cfg, uniform_positions(cfg));
    EXPECT_LE(ao.snr.min_rate, joint.min_rate + 1e-6);
    EXPECT_NEAR(ao.snr.min_rate, joint.min_rate, 1e-6);
}

TEST(Ao, BoundedByJointGridPlusResolution) {
    oracle::Sampler rng(32);
    GridSpec grid;
    grid.position_step = 0.1;
    grid.t_step = 1e-3;
    for (int trial = 0; trial < 5; ++trial) {
        SystemConfig cfg;
        cfg.n_antennas = 2;
        cfg.span_l = 2.0;
        cfg.theta_su = {rng.uniform(0.0, pi), rng.uniform(0.0, pi)};
        const auto joint = brute_force_joint(cfg, grid);
        const auto ao = ao_optimize(cfg, uniform_positions(cfg));
        EXPECT_LE(ao.snr.min_rate, joint.min_rate + grid_resolution_bound(cfg, grid, joint.theta) + 1e-6);
    }
}

TEST(Ao, CurvatureBound) {
    SystemConfig cfg;
    const double kmax = 2.0 * pi * std::sin(pi / 4.0);
    EXPECT_NEAR(ao_curvature(cfg), 2.0 * kmax * kmax * 5.0, 1e-12);
}

TEST(Ao, WrongLayoutSizeRejected) {
    SystemConfig cfg;
    EXPECT_THROW(ao_optimize(cfg, AntennaPositions({0.0, 1.0}, cfg)), ValidationError);
}

TEST(Ao, MultiStartNoWorseThanUniformStart) {
    const SystemConfig cfg = fig2b(5);
    const auto single = ao_optimize(cfg, uniform_positions(cfg));
    const auto multi = ao_multi_start(cfg, {});
    EXPECT_GE(multi.snr.min_rate, single.snr.min_rate - 1e-12);
}

TEST(Aps, SingletonGrid) {
    SystemConfig cfg;
    cfg.span_l = 2.0;
    const auto r = aps_search(cfg, 0.5);
    EXPECT_EQ(r.iterations, 1);
    for (int n = 0; n < 5; ++n) EXPECT_NEAR(r.x[n], 0.5 * n, 1e-12);
}

TEST(Aps, MatchesIndependentEnumeration) {
    SystemConfig cfg;
    cfg.n_antennas = 3;
    cfg.span_l = 3.0;
    const auto r = aps_search(cfg, 0.5);

    // Every 3-subset of the 7 grid points, lexicographic, first strict maximum.
    std::vector<double> best_x;
    double best_f = -1.0;
    for (int a = 0; a < 7; ++a)
        for (int b = a + 1; b < 7; ++b)
            for (int c = b + 1; c < 7; ++c) {
                const std::vector<double> x{a * 0.5, b * 0.5, c * 0.5};
                const double f = oracle::correlation(x, cfg);
                if (f > best_f + 1e-12) {
                    best_f = f;
                    best_x = x;
                }
            }
    EXPECT_EQ(r.x.vector(), best_x);
    EXPECT_NEAR(r.correlation, best_f, 1e-12);
    expect_consistent(r, cfg);
}

TEST(Aps, GuardRejectsHugeEnumerations) {
    SystemConfig cfg;
    cfg.n_antennas = 8;
    cfg.span_l = 10.0;
    EXPECT_THROW(aps_search(cfg, 0.01), EnumerationLimit);
    EXPECT_THROW(aps_search(cfg, 0.0), ValidationError);
}

TEST(MaMrt, UserOneGetsMatchedFilter) {
    SystemConfig cfg;
    cfg.d_su = {80.0, 120.0};
    const auto r = ma_mrt(cfg);
    expect_consistent(r, cfg);
    EXPECT_LE(rel(r.snr.gamma_u1, cfg.snr_scale(0) * 5.0), 1e-9);
}

TEST(MaMrt, ParallelChannelsServeBoth) {
    SystemConfig cfg;
    cfg.theta_su = {0.4, pi - 0.4};
    const auto r = ma_mrt(cfg);
    EXPECT_LE(rel(r.snr.gamma_u2, cfg.snr_scale(1) * 5.0), 1e-9);
}

TEST(Fpa, HalfWavelengthLayout) {
    SystemConfig cfg;
    cfg.n_antennas = 2;
    const auto r = fpa_scheme(cfg);
    EXPECT_EQ(r.x.vector(), (std::vector<double>{0.0, 0.5}));
}

TEST(Fpa, IndependentOfSpan) {
    SystemConfig cfg;
    cfg.span_l = 3.0;
    const double base = fpa_scheme(cfg).snr.min_rate;
    for (double l = 4.0; l <= 10.0; l += 1.0) {
        cfg.span_l = l;
        EXPECT_EQ(fpa_scheme(cfg).snr.min_rate, base);
    }
}

TEST(Fpa, InfeasibleLayoutsRejected) {
    SystemConfig cfg;
    cfg.d_min = 0.6;
    cfg.span_l = 4.0;
    EXPECT_THROW(fpa_scheme(cfg), ValidationError);
    SystemConfig narrow;
    narrow.n_antennas = 5;
    narrow.d_min = 0.2;
    narrow.span_l = 1.0;
    EXPECT_THROW(fpa_scheme(narrow), ValidationError);
}

TEST(Dominance, ProposedBeatsFixedBaselines) {
    std::vector<SystemConfig> cfgs;
    for (int n = 4; n <= 8; ++n) cfgs.push_back(fig2b(n));
    for (double l = 3.0; l <= 10.0; l += 1.0) {
        SystemConfig cfg;
        cfg.span_l = l;
        cfgs.push_back(cfg);
    }
    for (const auto& cfg : cfgs) {
        const double p = proposed_scheme(cfg).snr.min_rate;
        const double aps = aps_search(cfg, 0.5).snr.min_rate;
        EXPECT_GE(p, aps - 1e-9);
        EXPECT_GE(p, ma_mrt(cfg).snr.min_rate - 1e-9);
        EXPECT_GE(p, fpa_scheme(cfg).snr.min_rate - 1e-9);
        EXPECT_GE(aps, 0.95 * p);
    }
}

TEST(RunScheme, DispatchesEveryScheme) {
    SystemConfig cfg;
    for (Scheme s : {Scheme::Proposed, Scheme::AO, Scheme::APS, Scheme::MaMrt, Scheme::Fpa}) {
        const auto r = run_scheme(s, cfg);
        EXPECT_EQ(r.scheme, s);
        expect_consistent(r, cfg);
    }
}

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

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mamcast/beamformer.hpp"
#include "mamcast/posopt.hpp"
#include "mamcast/sysmodel.hpp"

namespace mamcast {

enum class Scheme { Proposed, AO, APS, MaMrt, Fpa };

std::string_view to_string(Scheme s);
/// Accepts "proposed", "ao", "aps", "ma_mrt", "fpa".
std::optional<Scheme> parse_scheme(std::string_view name);

struct SchemeResult {
    Scheme scheme = Scheme::Proposed;
    AntennaPositions x;
    Beamformer beamformer;
    SnrPair snr;
    double correlation = 0.0;      ///< f(x)
    std::vector<double> trace;     ///< f1 per SCA iterate, or min-rate per AO outer iteration
    int iterations = 0;
};

struct ProposedOptions {
    int n_starts = 16;
    std::uint64_t seed = 1;
    ScaOptions sca;
};

/// Decoupled design: positions maximizing f(x) by multi-start SCA, then the
/// closed-form optimal beamformer at those positions.
SchemeResult proposed_scheme(const SystemConfig& cfg, const ProposedOptions& opts = {});

struct AoOptions {
    double outer_tol = 1e-8;
    int max_outer = 100;
    int max_inner = 100;          ///< SCA iterations per position step
    int dual_steps = 100;         ///< golden-section steps on the surrogate's dual
    bool check_curvature = true;  ///< finite-difference check of the curvature bound
};

/// Curvature bound 2 kappa_max^2 N for |h_i(x)^T w|^2 with fixed unit w,
/// kappa_max = (2 pi / lambda) max_i |sin theta_i|.
double ao_curvature(const SystemConfig& cfg);

/// Alternating optimization: closed-form w for the current x, then SCA on
/// min_i c_i |h_i(x)^T w|^2 with w fixed. Each max-min surrogate (two concave
/// quadratics sharing curvature) is solved through its one-dimensional dual.
/// When that step cannot move (both users bind and their gradients oppose),
/// the position step follows the beamforming Lagrangian
/// mu c1 |h1^T w|^2 + (1 - mu) c2 |h2^T w|^2 instead and is kept only if the
/// min-rate improves. The outer min-rate trace is nondecreasing.
SchemeResult ao_optimize(const SystemConfig& cfg, const AntennaPositions& init_x,
                         const AoOptions& opts = {});

/// AO from every layout of initial_layouts(cfg, starts.n_starts, starts.seed);
/// returns the run with the largest min-rate (ties: lexicographically
/// smallest x).
SchemeResult ao_multi_start(const SystemConfig& cfg, const ProposedOptions& starts,
                            const AoOptions& opts = {});

inline constexpr double kApsMaxCombinations = 1e7;

/// Exhaustive selection of N grid points {0, step, 2 step, ...} <= L with
/// spacing >= d_min maximizing f(x). Ties go to the lexicographically
/// smallest subset. Throws EnumerationLimit when C(M, N) exceeds the guard.
SchemeResult aps_search(const SystemConfig& cfg, double grid_step,
                        double max_combinations = kApsMaxCombinations);

/// SCA positions with maximum-ratio transmission toward U1.
SchemeResult ma_mrt(const SystemConfig& cfg, const ProposedOptions& opts = {});

inline constexpr double kFpaSpacing = 0.5;

/// Fixed half-wavelength-style layout x_n = (n-1) * 0.5 with the optimal beamformer.
SchemeResult fpa_scheme(const SystemConfig& cfg);

struct SchemeOptions {
    ProposedOptions proposed;
    AoOptions ao;
    int ao_starts = 1;  ///< above 1, AO runs from initial_layouts(cfg, ao_starts, proposed.seed)
    double aps_grid_step = 0.5;
};

SchemeResult run_scheme(Scheme s, const SystemConfig& cfg, const SchemeOptions& opts = {});

} // namespace mamcast

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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mamcast/baselines.hpp"
#include "mamcast/sysmodel.hpp"

namespace mamcast {

/// Resolution of the brute-force references.
struct GridSpec {
    double position_step = 0.05;
    double t_step = 1e-4;
    int n_max = 3;
    double max_evaluations = 1e8;  ///< layouts x t-points
};

/// All feasible layouts whose coordinates lie on {0, step, 2 step, ...},
/// in lexicographic order.
std::vector<std::vector<double>> enumerate_grid_layouts(const SystemConfig& cfg, double step);

struct JointOptimum {
    AntennaPositions x;
    double t = 0.0;
    double theta = 0.0;     ///< min-SNR
    double min_rate = 0.0;
    std::size_t layouts = 0;
};

/// Joint grid search of Theta(t, x) over grid layouts and a t-grid on [0, 1],
/// evaluated through the projection terms. Ties go to the lexicographically
/// first layout and the smallest t.
JointOptimum brute_force_joint(const SystemConfig& cfg, const GridSpec& grid = {});

struct GridT {
    double t = 0.0;
    double theta = 0.0;
};

/// Grid search of Theta(., x) on {0, t_step, ..., 1}. Requires t_step in (0, 0.01].
GridT grid_best_t(const AntennaPositions& x, const SystemConfig& cfg, double t_step);

/// Upper bound, in bits/s/Hz, on how far the best grid point can sit below
/// the continuous optimum with min-SNR `theta`.
///
/// Snapping the optimal layout to the grid moves every coordinate by at most
/// h_x / 2, which changes |h_i^T w| by at most |k_i| sqrt(N) h_x / 2 for fixed w.
/// Snapping t = cos(phi) moves w along a unit circle by at most
/// (pi / sqrt 2) sqrt(h_t / 2), changing |h_i^T w| by sqrt(N) times that.
double grid_resolution_bound(const SystemConfig& cfg, const GridSpec& grid, double theta);

struct SeparationCertificate {
    SystemConfig cfg;
    double joint_rate = 0.0;
    double decoupled_rate = 0.0;
    double epsilon = 0.0;
    bool passed = false;
};

/// Compares the decoupled pipeline against the joint brute force for one
/// configuration: passes when decoupled >= joint - epsilon.
SeparationCertificate certify_separation(const SystemConfig& cfg, const GridSpec& grid,
                                         const ProposedOptions& opts = {});

struct ValidationCheck {
    std::string name;
    bool passed = false;
    nlohmann::ordered_json detail;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool passed() const;
    nlohmann::ordered_json to_json() const;
};

/// Oracle-backed self checks used by `mamcast validate`. `quick` trims the
/// number of random instances and coarsens the joint grid.
ValidationReport run_validation(bool quick, std::uint64_t seed = 7);

} // namespace mamcast

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

enum class SweepKind { None, OverN, OverL, BeamPattern };

struct Sweep {
    SweepKind kind = SweepKind::None;
    int n_min = 4;
    int n_max = 8;
    double l_min = 3.0;
    double l_max = 10.0;
    double l_step = 1.0;
    int points = 361;  ///< beam-pattern angle count
};

struct OutputPaths {
    std::string json;
    std::string csv;
};

/// One experiment: base system, schemes to run, sweep and seed.
///
/// JSON form (all keys optional, snake_case):
///
///     {
///       "base": {"n_antennas": 5, "span_l": 4, "d_min": 0.5, "lambda": 1,
///                "tau": 2, "ps_dbm": 25, "sigma2_dbm": -80,
///                "d_su": [100, 100], "theta_su": [0.785398..., 2.827433...]},
///       "schemes": ["proposed", "ao", "aps", "ma_mrt", "fpa"],
///       "sweep": {"kind": "over_n", "n_min": 4, "n_max": 8},
///       "seed": 1, "n_starts": 16, "ao_starts": 1, "aps_grid_step": 0.5,
///       "output": {"json": "report.json", "csv": "table.csv"}
///     }
struct ExperimentConfig {
    SystemConfig base;
    std::vector<Scheme> schemes{Scheme::Proposed, Scheme::AO, Scheme::APS, Scheme::MaMrt, Scheme::Fpa};
    Sweep sweep;
    std::uint64_t seed = 1;
    int n_starts = 16;
    int ao_starts = 1;  ///< 1: AO from the uniform layout only
    double aps_grid_step = 0.5;
    OutputPaths output;

    SchemeOptions scheme_options() const;
};

/// Throws ConfigError naming the offending field path.
ExperimentConfig parse_experiment_config(const nlohmann::json& doc);
ExperimentConfig load_experiment_config(const std::string& path);
nlohmann::ordered_json to_json(const ExperimentConfig& cfg);
nlohmann::ordered_json to_json(const SystemConfig& cfg);

struct BeamPatternRow {
    double theta = 0.0;
    Scheme scheme = Scheme::Proposed;
    double gain = 0.0;
};

struct SweepRow {
    double key = 0.0;  ///< N or L
    Scheme scheme = Scheme::Proposed;
    double min_rate = 0.0;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    std::vector<std::string> skipped;  ///< one message per (point, scheme) left out
};

/// Beam gain of every scheme's design on `angle_count` angles spread
/// uniformly over [0, pi].
std::vector<BeamPatternRow> run_beampattern(const ExperimentConfig& cfg, int angle_count);

/// Min-rate for N in [n_min, n_max] at the base span. Infeasible points are skipped.
SweepTable run_sweep_n(const ExperimentConfig& cfg, int n_min, int n_max);

/// Min-rate for L = l_min + k l_step <= l_max at the base N.
SweepTable run_sweep_l(const ExperimentConfig& cfg, double l_min, double l_max, double l_step);

std::vector<SchemeResult> run_single(const ExperimentConfig& cfg);

/// Positions, weights, t, case, SNRs and min-rate per scheme. Contains no
/// timing data so equal inputs serialize to equal bytes.
nlohmann::ordered_json report_json(const ExperimentConfig& cfg, const std::vector<SchemeResult>& results);

/// 12 significant digits, '.' separator.
std::string format_number(double v);

std::string beampattern_csv(const std::vector<BeamPatternRow>& rows);
std::string sweep_csv(const SweepTable& table, const std::string& key_column);

} // namespace mamcast

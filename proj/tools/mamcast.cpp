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

// mamcast command-line harness.
//
//   mamcast optimize    --config cfg.json --out report.json
//   mamcast beampattern --config cfg.json --points 361 --out pattern.csv
//   mamcast sweep-n     --config cfg.json --n-min 4 --n-max 8 --out rate_vs_n.csv
//   mamcast sweep-l     --config cfg.json --l-min 3 --l-max 10 --l-step 1 --out rate_vs_l.csv
//   mamcast validate    [--quick] [--out report.json]
//
// Exit codes: 0 success, 1 configuration or input error, 2 validation failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mamcast/mamcast.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitValidation = 2;

mamcast::ExperimentConfig load(const std::string& path) {
    if (path.empty()) return {};
    return mamcast::load_experiment_config(path);
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw mamcast::ConfigError("--out", "cannot open '" + path + "' for writing");
    out << content;
}

void report_skips(const mamcast::SweepTable& table) {
    for (const auto& s : table.skipped) std::cerr << "warning: skipped " << s << "\n";
}

std::string pick(const std::string& flag, const std::string& from_config) {
    return flag.empty() ? from_config : flag;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Movable-antenna two-user multicast: position optimization, beamforming, baselines"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;

    auto* optimize = app.add_subcommand("optimize", "Run the configured schemes once and write a JSON report");
    optimize->add_option("--config", config_path, "Experiment JSON (defaults when omitted)");
    optimize->add_option("--out", out_path, "Report path ('-' for stdout)");

    int points = 0;
    auto* beampattern = app.add_subcommand("beampattern", "Beam gain of each scheme over [0, pi]");
    beampattern->add_option("--config", config_path, "Experiment JSON");
    beampattern->add_option("--points", points, "Number of angles")->check(CLI::Range(2, 1000000));
    beampattern->add_option("--out", out_path, "CSV path ('-' for stdout)");

    std::optional<int> n_min, n_max;
    auto* sweep_n = app.add_subcommand("sweep-n", "Min-rate versus antenna count");
    sweep_n->add_option("--config", config_path, "Experiment JSON");
    sweep_n->add_option("--n-min", n_min, "Smallest N");
    sweep_n->add_option("--n-max", n_max, "Largest N");
    sweep_n->add_option("--out", out_path, "CSV path ('-' for stdout)");

    std::optional<double> l_min, l_max, l_step;
    auto* sweep_l = app.add_subcommand("sweep-l", "Min-rate versus movement span");
    sweep_l->add_option("--config", config_path, "Experiment JSON");
    sweep_l->add_option("--l-min", l_min, "Smallest span");
    sweep_l->add_option("--l-max", l_max, "Largest span");
    sweep_l->add_option("--l-step", l_step, "Span increment");
    sweep_l->add_option("--out", out_path, "CSV path ('-' for stdout)");

    bool quick = false;
    std::uint64_t seed = 7;
    auto* validate = app.add_subcommand("validate", "Oracle-backed self checks; exit 2 on failure");
    validate->add_flag("--quick", quick, "Fewer instances and coarser grids");
    validate->add_option("--seed", seed, "Seed for random instances");
    validate->add_option("--out", out_path, "JSON report path ('-' for stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*optimize) {
            const auto exp = load(config_path);
            const auto results = mamcast::run_single(exp);
            emit(pick(out_path, exp.output.json), mamcast::report_json(exp, results).dump(2) + "\n");
        } else if (*beampattern) {
            const auto exp = load(config_path);
            const int k = points > 0 ? points : exp.sweep.points;
            emit(pick(out_path, exp.output.csv), mamcast::beampattern_csv(mamcast::run_beampattern(exp, k)));
        } else if (*sweep_n) {
            const auto exp = load(config_path);
            const auto table =
                mamcast::run_sweep_n(exp, n_min.value_or(exp.sweep.n_min), n_max.value_or(exp.sweep.n_max));
            report_skips(table);
            emit(pick(out_path, exp.output.csv), mamcast::sweep_csv(table, "n"));
        } else if (*sweep_l) {
            const auto exp = load(config_path);
            const auto table = mamcast::run_sweep_l(exp, l_min.value_or(exp.sweep.l_min),
                                                    l_max.value_or(exp.sweep.l_max),
                                                    l_step.value_or(exp.sweep.l_step));
            report_skips(table);
            emit(pick(out_path, exp.output.csv), mamcast::sweep_csv(table, "l"));
        } else if (*validate) {
            const auto report = mamcast::run_validation(quick, seed);
            emit(out_path, report.to_json().dump(2) + "\n");
            for (const auto& c : report.checks) {
                std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
            }
            return report.passed() ? 0 : kExitValidation;
        }
    } catch (const mamcast::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const mamcast::ValidationError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const mamcast::EnumerationLimit& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    }
    return 0;
}

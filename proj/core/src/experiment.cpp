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

#include "mamcast/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "mamcast/error.hpp"
#include "mamcast/parallel.hpp"

namespace mamcast {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string join(const std::string& base, const std::string& key) {
    return base.empty() ? key : base + "." + key;
}

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw ConfigError(join(path, key), "unknown field");
    }
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    return j;
}

double read_number(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(join(path, key), "expected a finite number");
    return d;
}

long long read_integer(const json& obj, const std::string& path, const char* key, long long fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ConfigError(join(path, key), "expected an integer");
    return v.get<long long>();
}

std::array<double, 2> read_pair(const json& obj, const std::string& path, const char* key,
                                std::array<double, 2> fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    const std::string p = join(path, key);
    if (!v.is_array() || v.size() != 2) throw ConfigError(p, "expected an array of two numbers");
    std::array<double, 2> out{};
    for (int i = 0; i < 2; ++i) {
        if (!v[i].is_number()) throw ConfigError(p + "[" + std::to_string(i) + "]", "expected a number");
        out[i] = v[i].get<double>();
    }
    return out;
}

std::string read_string(const json& obj, const std::string& path, const char* key, std::string fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
    return v.get<std::string>();
}

SystemConfig parse_system(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"n_antennas", "span_l", "d_min", "lambda", "tau", "ps_dbm", "sigma2_dbm",
                             "d_su", "theta_su"});
    SystemConfig cfg;
    const long long n = read_integer(j, path, "n_antennas", cfg.n_antennas);
    if (n < 2 || n > 4096) throw ConfigError(join(path, "n_antennas"), "must be an integer in [2, 4096]");
    cfg.n_antennas = static_cast<int>(n);
    cfg.span_l = read_number(j, path, "span_l", cfg.span_l);
    cfg.d_min = read_number(j, path, "d_min", cfg.d_min);
    cfg.lambda = read_number(j, path, "lambda", cfg.lambda);
    cfg.tau = read_number(j, path, "tau", cfg.tau);
    cfg.ps_dbm = read_number(j, path, "ps_dbm", cfg.ps_dbm);
    cfg.sigma2_dbm = read_number(j, path, "sigma2_dbm", cfg.sigma2_dbm);
    cfg.d_su = read_pair(j, path, "d_su", cfg.d_su);
    cfg.theta_su = read_pair(j, path, "theta_su", cfg.theta_su);
    try {
        cfg.validate();
    } catch (const ValidationError& e) {
        throw ConfigError(path, e.what());
    }
    return cfg;
}

Sweep parse_sweep(const json& j, const std::string& path) {
    require_object(j, path);
    reject_unknown(j, path, {"kind", "n_min", "n_max", "l_min", "l_max", "l_step", "points"});
    Sweep s;
    const std::string kind = read_string(j, path, "kind", "none");
    if (kind == "none") s.kind = SweepKind::None;
    else if (kind == "over_n") s.kind = SweepKind::OverN;
    else if (kind == "over_l") s.kind = SweepKind::OverL;
    else if (kind == "beampattern") s.kind = SweepKind::BeamPattern;
    else throw ConfigError(join(path, "kind"), "expected one of none, over_n, over_l, beampattern");

    s.n_min = static_cast<int>(read_integer(j, path, "n_min", s.n_min));
    s.n_max = static_cast<int>(read_integer(j, path, "n_max", s.n_max));
    if (s.n_min < 2) throw ConfigError(join(path, "n_min"), "must be >= 2");
    if (s.n_max < s.n_min) throw ConfigError(join(path, "n_max"), "must be >= n_min");
    s.l_min = read_number(j, path, "l_min", s.l_min);
    s.l_max = read_number(j, path, "l_max", s.l_max);
    s.l_step = read_number(j, path, "l_step", s.l_step);
    if (!(s.l_min > 0.0)) throw ConfigError(join(path, "l_min"), "must be > 0");
    if (s.l_max < s.l_min) throw ConfigError(join(path, "l_max"), "must be >= l_min");
    if (!(s.l_step > 0.0)) throw ConfigError(join(path, "l_step"), "must be > 0");
    s.points = static_cast<int>(read_integer(j, path, "points", s.points));
    if (s.points < 2) throw ConfigError(join(path, "points"), "must be >= 2");
    return s;
}

std::string_view sweep_kind_name(SweepKind k) {
    switch (k) {
    case SweepKind::None: return "none";
    case SweepKind::OverN: return "over_n";
    case SweepKind::OverL: return "over_l";
    case SweepKind::BeamPattern: return "beampattern";
    }
    return "none";
}

double to_db(double v) { return 10.0 * std::log10(v); }

/// One (point, scheme) task of a sweep; empty row with a message when skipped.
struct SweepCell {
    std::optional<SweepRow> row;
    std::string skipped;
};

SweepTable run_cells(const ExperimentConfig& exp, const std::vector<std::pair<double, SystemConfig>>& points,
                     const std::vector<std::string>& point_errors, const std::string& key_name) {
    const std::size_t ns = exp.schemes.size();
    const SchemeOptions opts = exp.scheme_options();
    auto cells = parallel_map(points.size() * ns, [&](std::size_t idx) {
        const std::size_t p = idx / ns;
        const Scheme scheme = exp.schemes[idx % ns];
        const auto& [key, cfg] = points[p];
        SweepCell cell;
        const std::string label = key_name + "=" + format_number(key) + " " + std::string(to_string(scheme));
        if (!point_errors[p].empty()) {
            cell.skipped = label + ": " + point_errors[p];
            return cell;
        }
        try {
            const SchemeResult r = run_scheme(scheme, cfg, opts);
            cell.row = SweepRow{key, scheme, r.snr.min_rate};
        } catch (const ValidationError& e) {
            cell.skipped = label + ": " + e.what();
        }
        return cell;
    });
    SweepTable table;
    for (auto& c : cells) {
        if (c.row) table.rows.push_back(*c.row);
        else table.skipped.push_back(std::move(c.skipped));
    }
    return table;
}

} // namespace

SchemeOptions ExperimentConfig::scheme_options() const {
    SchemeOptions o;
    o.proposed.n_starts = n_starts;
    o.proposed.seed = seed;
    o.ao_starts = ao_starts;
    o.aps_grid_step = aps_grid_step;
    return o;
}

ExperimentConfig parse_experiment_config(const json& doc) {
    require_object(doc, "");
    reject_unknown(doc, "", {"base", "schemes", "sweep", "seed", "n_starts", "ao_starts", "aps_grid_step", "output"});
    ExperimentConfig exp;
    if (doc.contains("base")) exp.base = parse_system(doc.at("base"), "base");

    if (doc.contains("schemes")) {
        const json& s = doc.at("schemes");
        if (!s.is_array() || s.empty()) throw ConfigError("schemes", "expected a non-empty array");
        exp.schemes.clear();
        for (std::size_t i = 0; i < s.size(); ++i) {
            const std::string p = "schemes[" + std::to_string(i) + "]";
            if (!s[i].is_string()) throw ConfigError(p, "expected a string");
            const auto parsed = parse_scheme(s[i].get<std::string>());
            if (!parsed) throw ConfigError(p, "unknown scheme '" + s[i].get<std::string>() + "'");
            if (std::find(exp.schemes.begin(), exp.schemes.end(), *parsed) != exp.schemes.end()) {
                throw ConfigError(p, "duplicate scheme");
            }
            exp.schemes.push_back(*parsed);
        }
    }

    if (doc.contains("sweep")) exp.sweep = parse_sweep(doc.at("sweep"), "sweep");

    const long long seed = read_integer(doc, "", "seed", static_cast<long long>(exp.seed));
    if (seed < 0) throw ConfigError("seed", "must be >= 0");
    exp.seed = static_cast<std::uint64_t>(seed);
    exp.n_starts = static_cast<int>(read_integer(doc, "", "n_starts", exp.n_starts));
    if (exp.n_starts < 1) throw ConfigError("n_starts", "must be >= 1");
    exp.ao_starts = static_cast<int>(read_integer(doc, "", "ao_starts", exp.ao_starts));
    if (exp.ao_starts < 1) throw ConfigError("ao_starts", "must be >= 1");
    exp.aps_grid_step = read_number(doc, "", "aps_grid_step", exp.aps_grid_step);
    if (!(exp.aps_grid_step > 0.0)) throw ConfigError("aps_grid_step", "must be > 0");

    if (doc.contains("output")) {
        const json& o = require_object(doc.at("output"), "output");
        reject_unknown(o, "output", {"json", "csv"});
        exp.output.json = read_string(o, "output", "json", "");
        exp.output.csv = read_string(o, "output", "csv", "");
    }
    return exp;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("<file>", "cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("<file>", std::string("invalid JSON: ") + e.what());
    }
    return parse_experiment_config(doc);
}

ordered_json to_json(const SystemConfig& cfg) {
    ordered_json j;
    j["n_antennas"] = cfg.n_antennas;
    j["span_l"] = cfg.span_l;
    j["d_min"] = cfg.d_min;
    j["lambda"] = cfg.lambda;
    j["tau"] = cfg.tau;
    j["ps_dbm"] = cfg.ps_dbm;
    j["sigma2_dbm"] = cfg.sigma2_dbm;
    j["d_su"] = {cfg.d_su[0], cfg.d_su[1]};
    j["theta_su"] = {cfg.theta_su[0], cfg.theta_su[1]};
    return j;
}

ordered_json to_json(const ExperimentConfig& exp) {
    ordered_json j;
    j["base"] = to_json(exp.base);
    j["schemes"] = ordered_json::array();
    for (Scheme s : exp.schemes) j["schemes"].push_back(std::string(to_string(s)));
    ordered_json sw;
    sw["kind"] = std::string(sweep_kind_name(exp.sweep.kind));
    sw["n_min"] = exp.sweep.n_min;
    sw["n_max"] = exp.sweep.n_max;
    sw["l_min"] = exp.sweep.l_min;
    sw["l_max"] = exp.sweep.l_max;
    sw["l_step"] = exp.sweep.l_step;
    sw["points"] = exp.sweep.points;
    j["sweep"] = std::move(sw);
    j["seed"] = exp.seed;
    j["n_starts"] = exp.n_starts;
    j["ao_starts"] = exp.ao_starts;
    j["aps_grid_step"] = exp.aps_grid_step;
    return j;
}

std::vector<BeamPatternRow> run_beampattern(const ExperimentConfig& exp, int angle_count) {
    if (angle_count < 2) throw ValidationError("angle_count must be >= 2");
    const SchemeOptions opts = exp.scheme_options();
    const auto results = parallel_map(exp.schemes.size(),
                                      [&](std::size_t i) { return run_scheme(exp.schemes[i], exp.base, opts); });

    std::vector<BeamPatternRow> rows;
    rows.reserve(results.size() * angle_count);
    for (const SchemeResult& r : results) {
        for (int k = 0; k < angle_count; ++k) {
            const double theta = std::numbers::pi * k / (angle_count - 1);
            rows.push_back({theta, r.scheme, beam_gain(r.beamformer.w, r.x, theta, exp.base.lambda)});
        }
    }
    return rows;
}

SweepTable run_sweep_n(const ExperimentConfig& exp, int n_min, int n_max) {
    if (n_min < 2 || n_max < n_min) throw ValidationError("N range must satisfy 2 <= n_min <= n_max");
    std::vector<std::pair<double, SystemConfig>> points;
    std::vector<std::string> errors;
    for (int n = n_min; n <= n_max; ++n) {
        SystemConfig cfg = exp.base;
        cfg.n_antennas = n;
        std::string err;
        try {
            cfg.validate();
        } catch (const ValidationError& e) {
            err = e.what();
        }
        points.emplace_back(n, cfg);
        errors.push_back(std::move(err));
    }
    return run_cells(exp, points, errors, "n");
}

SweepTable run_sweep_l(const ExperimentConfig& exp, double l_min, double l_max, double l_step) {
    if (!(l_min > 0.0 && l_max >= l_min && l_step > 0.0)) {
        throw ValidationError("L range must satisfy 0 < l_min <= l_max and l_step > 0");
    }
    std::vector<std::pair<double, SystemConfig>> points;
    std::vector<std::string> errors;
    const auto count = static_cast<int>(std::floor((l_max - l_min) / l_step + 1e-9)) + 1;
    for (int k = 0; k < count; ++k) {
        SystemConfig cfg = exp.base;
        cfg.span_l = l_min + k * l_step;
        std::string err;
        try {
            cfg.validate();
        } catch (const ValidationError& e) {
            err = e.what();
        }
        points.emplace_back(cfg.span_l, cfg);
        errors.push_back(std::move(err));
    }
    return run_cells(exp, points, errors, "l");
}

std::vector<SchemeResult> run_single(const ExperimentConfig& exp) {
    exp.base.validate();
    const SchemeOptions opts = exp.scheme_options();
    return parallel_map(exp.schemes.size(), [&](std::size_t i) { return run_scheme(exp.schemes[i], exp.base, opts); });
}

ordered_json report_json(const ExperimentConfig& exp, const std::vector<SchemeResult>& results) {
    ordered_json j;
    j["config"] = to_json(exp);
    j["results"] = ordered_json::array();
    for (const SchemeResult& r : results) {
        ordered_json e;
        e["scheme"] = std::string(to_string(r.scheme));
        e["positions"] = r.x.vector();
        ordered_json bf;
        bf["t"] = r.beamformer.t;
        bf["case"] = std::string(to_string(r.beamformer.case_label));
        bf["weights"] = ordered_json::array();
        for (const Complex& c : r.beamformer.w) bf["weights"].push_back({c.real(), c.imag()});
        e["beamformer"] = std::move(bf);
        e["correlation_f"] = r.correlation;
        ordered_json snr;
        snr["gamma_u1"] = r.snr.gamma_u1;
        snr["gamma_u2"] = r.snr.gamma_u2;
        snr["gamma_u1_db"] = to_db(r.snr.gamma_u1);
        snr["gamma_u2_db"] = to_db(r.snr.gamma_u2);
        e["snr"] = std::move(snr);
        e["min_rate_bps_hz"] = r.snr.min_rate;
        e["iterations"] = r.iterations;
        e["trace"] = r.trace;
        j["results"].push_back(std::move(e));
    }
    return j;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string beampattern_csv(const std::vector<BeamPatternRow>& rows) {
    std::string out = "theta_rad,scheme,gain\n";
    for (const auto& r : rows) {
        out += format_number(r.theta) + "," + std::string(to_string(r.scheme)) + "," + format_number(r.gain) + "\n";
    }
    return out;
}

std::string sweep_csv(const SweepTable& table, const std::string& key_column) {
    std::string out = key_column + ",scheme,min_rate_bps_hz\n";
    for (const auto& r : table.rows) {
        out += format_number(r.key) + "," + std::string(to_string(r.scheme)) + "," + format_number(r.min_rate) + "\n";
    }
    return out;
}

} // namespace mamcast

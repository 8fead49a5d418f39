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

// Acceptance suite: one PASS/FAIL line per criterion, tolerances pinned.
//
//   mamcast_acceptance [--cli <path>] [--workdir <dir>] [--expect-fail 5,8]
//
// Criteria listed in --expect-fail still print FAIL; they only stop counting
// toward the exit code. An expected failure that passes is reported and
// counts as an error so the list cannot go stale.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mamcast/mamcast.hpp"
#include "support/oracles.hpp"

using namespace mamcast;
using std::numbers::pi;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Theta(t) for one layout through the explicit projection split: with
/// w(t) = t p^ + s q^, h_i^T w = t (h_i^T p^) + s (h_i^T q^).
struct ThetaProbe {
    double c1 = 0.0, c2 = 0.0;
    oracle::cplx h1p, h1q, h2p, h2q;

    ThetaProbe(const std::vector<double>& x, const SystemConfig& cfg) {
        c1 = oracle::snr_factor(cfg, 0);
        c2 = oracle::snr_factor(cfg, 1);
        const auto h1 = oracle::steering(x, cfg.theta_su[0], cfg.lambda);
        const auto h2 = oracle::steering(x, cfg.theta_su[1], cfg.lambda);
        const std::size_t n = x.size();
        oracle::cplx uv = 0.0;
        for (std::size_t i = 0; i < n; ++i) uv += h1[i] * std::conj(h2[i]);  // (conj h1)^H conj h2
        std::vector<oracle::cplx> p(n), q(n);
        double pp = 0.0, qq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = std::conj(h1[i]) * uv / static_cast<double>(n);
            q[i] = std::conj(h2[i]) - p[i];
            pp += std::norm(p[i]);
            qq += std::norm(q[i]);
        }
        if (pp < 1e-24) {  // orthogonal channels: p vanishes, use conj(h1)
            for (std::size_t i = 0; i < n; ++i) p[i] = std::conj(h1[i]);
            pp = static_cast<double>(n);
        }
        const double ip = 1.0 / std::sqrt(pp);
        const double iq = qq > 1e-14 * n ? 1.0 / std::sqrt(qq) : 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            h1p += h1[i] * p[i] * ip;
            h1q += h1[i] * q[i] * iq;
            h2p += h2[i] * p[i] * ip;
            h2q += h2[i] * q[i] * iq;
        }
    }

    double operator()(double t) const {
        const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
        return std::min(c1 * std::norm(t * h1p + s * h1q), c2 * std::norm(t * h2p + s * h2q));
    }
};

SystemConfig at_span5(int n) {
    SystemConfig cfg;
    cfg.n_antennas = n;
    cfg.span_l = 5.0;
    return cfg;
}

// 1 ------------------------------------------------------------------------
Verdict theta_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    oracle::Sampler rng(101);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SystemConfig cfg = rng.config(2, 8);
        const auto xs = rng.positions(cfg);
        const double t = rng.uniform(0.0, 1.0);
        const ThetaProbe probe(xs, cfg);
        const double simplified = theta_simplified(t, channel_correlation(AntennaPositions(xs, cfg), cfg), cfg);
        worst = std::max(worst, rel(simplified, probe(t)));
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-9 && secs < 5.0,
            "max rel err " + fmt(worst) + " (tol 1e-9) over 1000 (x,t), N 2..8; " + fmt(secs) + " s (limit 5)"};
}

// 2 ------------------------------------------------------------------------
Verdict projection_identities() {
    oracle::Sampler rng(102);
    double worst_a = 0.0, worst_bc = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const SystemConfig cfg = rng.config(2, 8);
        const AntennaPositions x(rng.positions(cfg), cfg);
        const auto terms = projection_terms(x, cfg);
        const double n = cfg.n_antennas;
        worst_a = std::max(worst_a, std::abs(terms.a - std::sqrt(n)));
        worst_bc = std::max(worst_bc, std::abs(terms.b * terms.b + terms.c * terms.c - n));
    }
    return {worst_a <= 1e-9 && worst_bc <= 1e-9,
            "max |a - sqrt N| " + fmt(worst_a) + ", max |b^2 + c^2 - N| " + fmt(worst_bc) + " (tol 1e-9), 1000 x"};
}

// 3 ------------------------------------------------------------------------
Verdict minorization_and_curvature() {
    oracle::Sampler rng(103);
    double worst_gap = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < 10000; ++i) {
        const SystemConfig cfg = rng.config(2, 8);
        const auto obj = correlation_objective(cfg);
        const auto xk = rng.positions(cfg), x = rng.positions(cfg);
        const double f2 = surrogate_value(x, xk, f1(xk, obj), grad_f1(xk, obj), delta_bound(obj));
        worst_gap = std::max(worst_gap, f2 - oracle::f1(x, obj.kappa));
    }
    double worst_ratio = 0.0;
    bool curvature_ok = true;
    for (int n = 2; n <= 6; ++n) {
        for (int i = 0; i < 100; ++i) {
            const SystemConfig cfg = rng.config(n, n);
            const auto obj = correlation_objective(cfg);
            const auto xs = rng.positions(cfg);
            const double norm = oracle::spectral_norm(
                oracle::hessian([&](const std::vector<double>& p) { return oracle::f1(p, obj.kappa); }, xs));
            const double delta = delta_bound(obj);
            if (norm > delta * (1.0 + 1e-6) + 1e-6) curvature_ok = false;
            if (delta > 1.0) worst_ratio = std::max(worst_ratio, norm / delta);  // tiny kappa is all fd noise
        }
    }
    return {worst_gap <= 1e-9 && curvature_ok,
            "max f2 - f1 " + fmt(worst_gap) + " (tol 1e-9) over 1e4 pairs; max ||H_fd|| / delta " + fmt(worst_ratio) +
                " (delta > 1) over 100 x per N 2..6"};
}

// 4 ------------------------------------------------------------------------
Verdict sca_monotone() {
    oracle::Sampler rng(104);
    int traces = 0;
    double worst_drop = 0.0;
    bool final_ok = true;
    auto check = [&](const ScaTrace& tr) {
        ++traces;
        for (std::size_t k = 1; k < tr.iterates.size(); ++k) {
            worst_drop = std::max(worst_drop, tr.iterates[k - 1].f1 - tr.iterates[k].f1);
        }
        if (tr.iterates.back().f1 < tr.iterates.front().f1) final_ok = false;
    };
    for (int i = 0; i < 300; ++i) {
        const SystemConfig cfg = rng.config(2, 8);
        check(sca_optimize(cfg, AntennaPositions(rng.positions(cfg), cfg)).trace);
    }
    for (int n = 2; n <= 8; ++n) check(sca_optimize(at_span5(n), uniform_positions(at_span5(n))).trace);
    return {worst_drop <= 1e-9 && final_ok,
            std::to_string(traces) + " traces, max f1 drop " + fmt(worst_drop) + " (slack 1e-9), final >= initial: " +
                (final_ok ? "yes" : "no")};
}

// 5 ------------------------------------------------------------------------
Verdict closed_form_t() {
    oracle::Sampler rng(105);
    const double step = 1e-5;
    std::vector<double> grid_t;
    for (int i = 0; i <= 100000; ++i) grid_t.push_back(std::min(1.0, i * step));

    int counts[4] = {0, 0, 0, 0};
    const int quota = 50;
    double worst = 0.0;
    int over = 0;
    bool in_range = true;
    double worst_excess = 0.0;
    for (int bucket = 0; bucket < 4; ++bucket) {
        int made = 0;
        while (made < quota) {
            SystemConfig cfg = rng.config(2, 8);
            if (bucket == 1) cfg.d_su = {rng.uniform(30, 60), rng.uniform(400, 2000)};
            if (bucket == 2) cfg.d_su = {rng.uniform(400, 2000), rng.uniform(30, 60)};
            if (bucket == 3) cfg.theta_su[1] = rng.uniform(0, 1) < 0.5 ? cfg.theta_su[0] : pi - cfg.theta_su[0];
            const auto xs = rng.positions(cfg);
            const AntennaPositions x(xs, cfg);
            const double f = channel_correlation(x, cfg);
            const OptimalT opt = optimal_t(theta_coefficients(f, cfg), cfg.n_antennas);
            if (static_cast<int>(opt.case_label) != bucket) continue;
            ++made;
            ++counts[bucket];
            const ThetaProbe probe(xs, cfg);
            double best = -1.0, best_t = 0.0;
            for (double t : grid_t) {
                const double v = probe(t);
                if (v > best) {
                    best = v;
                    best_t = t;
                }
            }
            const double closed = probe(opt.t);
            const double gap = std::abs(closed - best) / best;
            worst = std::max(worst, gap);
            worst_excess = std::max(worst_excess, (best - closed) / closed);
            if (gap > 1e-6) ++over;
            if (best_t < f / cfg.n_antennas - step) in_range = false;
        }
    }
    std::ostringstream d;
    d << "max |dTheta| " << fmt(worst) << " rel (tol 1e-6), " << over << "/200 over tol; grid beats t* by at most "
      << fmt(worst_excess) << "; grid argmax in [f/N - 1e-5, 1]: " << (in_range ? "yes" : "no") << "; cases c/l/r/d "
      << counts[0] << "/" << counts[1] << "/" << counts[2] << "/" << counts[3];
    return {worst <= 1e-6 && in_range, d.str()};
}

// 6 ------------------------------------------------------------------------
Verdict separation() {
    const auto t0 = std::chrono::steady_clock::now();
    oracle::Sampler rng(106);
    GridSpec grid;
    grid.position_step = 0.05;
    grid.t_step = 1e-4;
    bool ok = true;
    double min_margin = std::numeric_limits<double>::infinity();
    double min_lead = std::numeric_limits<double>::infinity();
    double max_eps = 0.0;
    for (int n : {2, 3}) {
        for (int p = 0; p < 20; ++p) {
            SystemConfig cfg;
            cfg.n_antennas = n;
            cfg.span_l = n == 2 ? 3.0 : 2.5;
            cfg.theta_su = {rng.uniform(0.0, pi), rng.uniform(0.0, pi)};
            const auto cert = certify_separation(cfg, grid);
            ok = ok && cert.passed;
            min_margin = std::min(min_margin, cert.decoupled_rate - (cert.joint_rate - cert.epsilon));
            min_lead = std::min(min_lead, cert.decoupled_rate - cert.joint_rate);
            max_eps = std::max(max_eps, cert.epsilon);
        }
    }
    const double secs = seconds_since(t0);
    return {ok && secs <= 60.0, "40 angle pairs; min (decoupled - joint) " + fmt(min_lead) + " bps/Hz, max eps " +
                                    fmt(max_eps) + ", min margin " + fmt(min_margin) + "; " + fmt(secs) +
                                    " s (limit 60)"};
}

// 7 ------------------------------------------------------------------------
Verdict proposed_vs_ao() {
    double worst = 0.0;
    std::string per_n;
    for (int n = 4; n <= 8; ++n) {
        const SystemConfig cfg = at_span5(n);
        const double p = run_scheme(Scheme::Proposed, cfg).snr.min_rate;
        const double a = run_scheme(Scheme::AO, cfg).snr.min_rate;
        const double d = std::abs(p - a) / p;
        worst = std::max(worst, d);
        per_n += " N" + std::to_string(n) + ":" + fmt(d);
    }
    return {worst <= 0.01, "max rel diff " + fmt(worst) + " (tol 0.01);" + per_n};
}

// 8 ------------------------------------------------------------------------
Verdict trends() {
    std::vector<std::string> failed;
    std::vector<double> prop_n, mrt_n, aps_n, fpa_n;
    for (int n = 4; n <= 8; ++n) {
        const SystemConfig cfg = at_span5(n);
        prop_n.push_back(run_scheme(Scheme::Proposed, cfg).snr.min_rate);
        mrt_n.push_back(run_scheme(Scheme::MaMrt, cfg).snr.min_rate);
        aps_n.push_back(run_scheme(Scheme::APS, cfg).snr.min_rate);
        fpa_n.push_back(run_scheme(Scheme::Fpa, cfg).snr.min_rate);
    }
    std::vector<double> prop_l, mrt_l, aps_l, fpa_l;
    for (int l = 3; l <= 10; ++l) {
        SystemConfig cfg;
        cfg.span_l = l;
        prop_l.push_back(run_scheme(Scheme::Proposed, cfg).snr.min_rate);
        mrt_l.push_back(run_scheme(Scheme::MaMrt, cfg).snr.min_rate);
        aps_l.push_back(run_scheme(Scheme::APS, cfg).snr.min_rate);
        fpa_l.push_back(run_scheme(Scheme::Fpa, cfg).snr.min_rate);
    }
    for (std::size_t i = 1; i < prop_n.size(); ++i) {
        if (!(prop_n[i] > prop_n[i - 1])) failed.push_back("proposed N" + std::to_string(i + 3) + "->" + std::to_string(i + 4));
        if (mrt_n[i] > mrt_n[i - 1]) {
            failed.push_back("ma_mrt rises N" + std::to_string(i + 3) + "->" + std::to_string(i + 4) + " (" +
                             fmt(mrt_n[i - 1]) + " -> " + fmt(mrt_n[i]) + ")");
        }
    }
    for (double v : fpa_l)
        if (v != fpa_l.front()) failed.push_back("fpa varies with L");
    const double l_change = std::abs(prop_l[7] - prop_l[6]) / prop_l[6];
    if (l_change > 0.005) failed.push_back("proposed L9->10 change " + fmt(l_change));
    double worst_aps = 0.0;
    auto dominance = [&](const std::vector<double>& p, const std::vector<double>& other, const char* name) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (p[i] < other[i] - 1e-9) failed.push_back(std::string("proposed below ") + name);
        }
    };
    for (const auto* pair : {&prop_n, &prop_l}) {
        const auto& p = *pair;
        const auto& a = pair == &prop_n ? aps_n : aps_l;
        for (std::size_t i = 0; i < p.size(); ++i) worst_aps = std::max(worst_aps, (p[i] - a[i]) / p[i]);
    }
    if (worst_aps > 0.05) failed.push_back("aps gap " + fmt(worst_aps));
    dominance(prop_n, aps_n, "aps");
    dominance(prop_n, mrt_n, "ma_mrt");
    dominance(prop_n, fpa_n, "fpa");
    dominance(prop_l, aps_l, "aps");
    dominance(prop_l, mrt_l, "ma_mrt");
    dominance(prop_l, fpa_l, "fpa");

    std::string detail = "L9->10 change " + fmt(l_change) + " (tol 0.005), max aps gap " + fmt(worst_aps) + " (tol 0.05)";
    if (failed.empty()) {
        detail += "; all trend clauses hold";
    } else {
        detail += "; failing:";
        for (const auto& f : failed) detail += " [" + f + "]";
    }
    return {failed.empty(), detail};
}

// 9 ------------------------------------------------------------------------
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Verdict cli_determinism(const std::string& cli, const std::filesystem::path& workdir) {
    if (cli.empty()) return {false, "no CLI path given (--cli)"};
    std::filesystem::create_directories(workdir);
    const auto cfg_path = workdir / "config.json";
    {
        std::ofstream out(cfg_path);
        out << to_json(ExperimentConfig{}).dump(2) << "\n";
    }
    const std::vector<std::pair<std::string, std::string>> commands{
        {"optimize", "optimize --config " + cfg_path.string()},
        {"beampattern", "beampattern --config " + cfg_path.string() + " --points 181"},
        {"sweep-n", "sweep-n --config " + cfg_path.string() + " --n-min 4 --n-max 8"},
        {"sweep-l", "sweep-l --config " + cfg_path.string() + " --l-min 3 --l-max 10 --l-step 1"},
        {"validate", "validate --quick"},
    };
    std::vector<std::string> differing;
    for (const auto& [name, args] : commands) {
        std::string outputs[2];
        for (int run = 0; run < 2; ++run) {
            const auto out = workdir / (name + "." + std::to_string(run));
            // Different worker counts on the two runs.
            const std::string cmd = std::string(kMaxWorkersEnv) + "=" + (run == 0 ? "1" : "4") + " \"" + cli + "\" " +
                                    args + " --out \"" + out.string() + "\" 2>/dev/null";
            const int rc = std::system(cmd.c_str());
            if (rc != 0) differing.push_back(name + " exit " + std::to_string(rc));
            outputs[run] = slurp(out);
        }
        if (outputs[0].empty() || outputs[0] != outputs[1]) differing.push_back(name);
    }
    std::string detail = "optimize, beampattern, sweep-n, sweep-l, validate run twice (1 vs 4 workers)";
    if (!differing.empty()) {
        detail += "; mismatch:";
        for (const auto& d : differing) detail += " " + d;
    } else {
        detail += "; byte-identical";
    }
    return {differing.empty(), detail};
}

// 10 -----------------------------------------------------------------------
Verdict surrogate_projection() {
    oracle::Sampler rng(110);
    SystemConfig cfg;
    cfg.n_antennas = 4;
    cfg.span_l = 1.7;  // shifted box width 0.2 keeps the 1e-3 grid tractable
    double worst = 0.0;
    const int instances = 8;
    for (int i = 0; i < instances; ++i) {
        const AntennaPositions xk(rng.positions(cfg), cfg);
        std::vector<double> g(4);
        for (double& v : g) v = rng.uniform(-30.0, 30.0);
        const double delta = rng.uniform(50.0, 150.0);
        const auto x = solve_surrogate(xk, g, delta, cfg);
        std::vector<double> z(4);
        for (int n = 0; n < 4; ++n) z[n] = xk[n] + g[n] / delta;
        const auto ref = oracle::grid_projection4(z, cfg.span_l, cfg.d_min, 1e-3);
        double d2 = 0.0;
        for (int n = 0; n < 4; ++n) d2 += (x[n] - ref[n]) * (x[n] - ref[n]);
        worst = std::max(worst, std::sqrt(d2));
    }
    bool fixed = true;
    for (int i = 0; i < 20; ++i) {
        const SystemConfig c = rng.config(2, 8);
        const AntennaPositions xk(rng.positions(c), c);
        const std::vector<double> zero(c.n_antennas, 0.0);
        if (!(solve_surrogate(xk, zero, 10.0, c) == xk)) fixed = false;
    }
    return {worst <= 2e-3 && fixed, "max distance to 1e-3 grid projection " + fmt(worst) + " (tol 2e-3) over " +
                                        std::to_string(instances) + " N=4 instances; zero gradient returns x_k: " +
                                        (fixed ? "yes" : "no")};
}

std::set<int> parse_list(const std::string& s) {
    std::set<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.insert(std::stoi(item));
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    std::string cli;
    std::filesystem::path workdir = std::filesystem::temp_directory_path() / "mamcast_acceptance";
    std::set<int> expected;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--cli" && i + 1 < argc) cli = argv[++i];
        else if (a == "--workdir" && i + 1 < argc) workdir = argv[++i];
        else if (a == "--expect-fail" && i + 1 < argc) expected = parse_list(argv[++i]);
        else {
            std::cerr << "usage: mamcast_acceptance [--cli <path>] [--workdir <dir>] [--expect-fail 5,8]\n";
            return 2;
        }
    }

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"theta equivalence", theta_equivalence},
        {"projection identities", projection_identities},
        {"minorization and curvature", minorization_and_curvature},
        {"SCA monotone ascent", sca_monotone},
        {"closed-form t* vs 1e-5 grid", closed_form_t},
        {"separation certificate", separation},
        {"proposed matches AO", proposed_vs_ao},
        {"trend suite", trends},
        {"CLI determinism", [&] { return cli_determinism(cli, workdir); }},
        {"surrogate projection", surrogate_projection},
    };

    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const bool known = expected.count(id) > 0;
        std::string note;
        if (!v.pass && known) note = " [known failure, see decisions ledger]";
        if (v.pass && known) note = " [listed as expected failure but passed]";
        if (v.pass == known) ++unexpected;
        std::cout << (v.pass ? "PASS" : "FAIL") << "  " << id << ". " << criteria[i].first << ": " << v.detail << note
                  << std::endl;
    }
    std::cout << (unexpected == 0 ? "acceptance: ok" : "acceptance: " + std::to_string(unexpected) + " unexpected result(s)")
              << std::endl;
    return unexpected == 0 ? 0 : 1;
}

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

#include "mamcast/baselines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "mamcast/error.hpp"
#include "mamcast/parallel.hpp"

namespace mamcast {

namespace {

SchemeResult assemble(Scheme scheme, const SystemConfig& cfg, AntennaPositions x, Beamformer bf) {
    SnrPair snr = snr_pair(bf.w, x, cfg);
    const double f = channel_correlation(x, cfg);
    return SchemeResult{scheme, std::move(x), std::move(bf), snr, f, {}, 0};
}

/// |s|^2 with s = h(x)^T w for one user, and its gradient in x.
struct BranchEval {
    double value = 0.0;
    std::vector<double> grad;
};

BranchEval branch(std::span<const double> x, std::span<const Complex> w, double k) {
    BranchEval out;
    out.grad.resize(x.size());
    std::vector<Complex> terms(x.size());
    Complex s{0.0, 0.0};
    for (std::size_t n = 0; n < x.size(); ++n) {
        terms[n] = w[n] * std::polar(1.0, k * x[n]);
        s += terms[n];
    }
    out.value = std::norm(s);
    const Complex jk{0.0, k};
    for (std::size_t n = 0; n < x.size(); ++n) out.grad[n] = 2.0 * std::real(std::conj(s) * jk * terms[n]);
    return out;
}

double branch_value(std::span<const double> x, std::span<const Complex> w, double k) {
    Complex s{0.0, 0.0};
    for (std::size_t n = 0; n < x.size(); ++n) s += w[n] * std::polar(1.0, k * x[n]);
    return std::norm(s);
}

/// Largest |eigenvalue| of a symmetric matrix by power iteration.
double spectral_norm(const std::vector<std::vector<double>>& h) {
    const std::size_t n = h.size();
    std::vector<double> v(n), hv(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.1 * static_cast<double>(i);
    double lambda = 0.0;
    for (int it = 0; it < 500; ++it) {
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            hv[i] = 0.0;
            for (std::size_t j = 0; j < n; ++j) hv[i] += h[i][j] * v[j];
            norm += hv[i] * hv[i];
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;
        double vn = 0.0;
        for (double c : v) vn += c * c;
        lambda = norm / std::sqrt(vn);
        for (std::size_t i = 0; i < n; ++i) v[i] = hv[i] / norm;
    }
    return lambda;
}

void check_curvature(std::span<const double> x, std::span<const Complex> w, double k, double bound) {
    const std::size_t n = x.size();
    const double step = 1e-4;
    std::vector<double> probe(x.begin(), x.end());
    auto eval = [&](std::size_t i, double di, std::size_t j, double dj) {
        probe[i] += di;
        probe[j] += dj;
        const double v = branch_value(probe, w, k);
        probe[i] -= di;
        probe[j] -= dj;
        return v;
    };
    std::vector<std::vector<double>> h(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double v = (eval(i, step, j, step) - eval(i, step, j, -step) - eval(i, -step, j, step) +
                              eval(i, -step, j, -step)) /
                             (4.0 * step * step);
            h[i][j] = h[j][i] = v;
        }
    }
    const double norm = spectral_norm(h);
    if (norm > bound * (1.0 + 1e-6) + 1e-6) {
        std::ostringstream msg;
        msg << "AO curvature bound violated: finite-difference Hessian norm " << norm
            << " exceeds delta_w = " << bound;
        throw std::logic_error(msg.str());
    }
}

/// One position step of AO: SCA on min_i chat_i |h_i(x)^T w|^2 with w fixed,
/// chat_i = c_i / max(c_1, c_2).
std::vector<double> ao_position_step(const SystemConfig& cfg, std::vector<double> x,
                                     std::span<const Complex> w, const AoOptions& opts) {
    const double delta = ao_curvature(cfg);
    const std::array<double, 2> k{cfg.spatial_frequency(0), cfg.spatial_frequency(1)};
    const double cmax = std::max(cfg.snr_scale(0), cfg.snr_scale(1));
    const std::array<double, 2> scale{cfg.snr_scale(0) / cmax, cfg.snr_scale(1) / cmax};
    const std::size_t n = x.size();

    if (opts.check_curvature) {
        for (int i = 0; i < 2; ++i) check_curvature(x, w, k[i], delta);
    }

    double current = std::numeric_limits<double>::lowest();
    for (int it = 0; it < opts.max_inner; ++it) {
        std::array<BranchEval, 2> b{branch(x, w, k[0]), branch(x, w, k[1])};
        std::array<double, 2> v{scale[0] * b[0].value, scale[1] * b[1].value};
        const double start = std::min(v[0], v[1]);
        if (it > 0 && start - current < 1e-13 * std::max(1.0, start)) break;
        current = start;

        // Surrogate q_i(y) = v_i + g_i.(y - x) - (scale_i delta / 2) ||y - x||^2.
        auto surrogate = [&](int i, std::span<const double> y) {
            double lin = 0.0, sq = 0.0;
            for (std::size_t m = 0; m < n; ++m) {
                const double d = y[m] - x[m];
                lin += scale[i] * b[i].grad[m] * d;
                sq += d * d;
            }
            return v[i] + lin - 0.5 * scale[i] * delta * sq;
        };

        // max_y min(q0, q1) = min_mu max_y [mu q0 + (1 - mu) q1]. For fixed mu the
        // inner problem is one concave quadratic with identity curvature, so its
        // maximizer is a polytope projection; the dual is convex in mu.
        std::vector<double> z(n);
        auto inner = [&](double mu) {
            const double curv = (mu * scale[0] + (1.0 - mu) * scale[1]) * delta;
            for (std::size_t m = 0; m < n; ++m) {
                const double g = mu * scale[0] * b[0].grad[m] + (1.0 - mu) * scale[1] * b[1].grad[m];
                z[m] = x[m] + g / curv;
            }
            return project_to_polytope(z, cfg.span_l, cfg.d_min);
        };
        auto dual = [&](double mu) {
            const auto y = inner(mu);
            return mu * surrogate(0, y) + (1.0 - mu) * surrogate(1, y);
        };

        double lo = 0.0, hi = 1.0;
        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        double m1 = hi - ratio * (hi - lo), m2 = lo + ratio * (hi - lo);
        double d1 = dual(m1), d2 = dual(m2);
        for (int s = 0; s < opts.dual_steps; ++s) {
            if (d1 <= d2) {
                hi = m2;
                m2 = m1;
                d2 = d1;
                m1 = hi - ratio * (hi - lo);
                d1 = dual(m1);
            } else {
                lo = m1;
                m1 = m2;
                d1 = d2;
                m2 = lo + ratio * (hi - lo);
                d2 = dual(m2);
            }
        }

        std::vector<double> best = x;
        double best_value = start;
        for (double mu : {0.5 * (lo + hi), 0.0, 1.0}) {
            auto y = inner(mu);
            const double q = std::min(surrogate(0, y), surrogate(1, y));
            if (q > best_value) {
                best_value = q;
                best = std::move(y);
            }
        }
        if (best == x) break;
        x = std::move(best);
    }
    return x;
}

/// Multiplier mu of the beamforming step, i.e. the weight for which w is the
/// principal eigenvector of mu c1 h1* h1^T + (1 - mu) c2 h2* h2^T. Only U2
/// binds at the left endpoint (mu = 0), only U1 at the right endpoint (mu = 1).
double beam_multiplier(const Beamformer& bf, double f, int n) {
    switch (bf.case_label) {
    case BeamCase::LeftEndpoint: return 0.0;
    case BeamCase::RightEndpoint:
    case BeamCase::DegenerateParallel: return 1.0;
    case BeamCase::Crossing: break;
    }
    const double t = bf.t;
    const double s = std::sqrt(std::max(0.0, 1.0 - t * t));
    const double v2 = std::sqrt(std::max(0.0, n - f * f / n));
    if (v2 <= 0.0) return 1.0;
    const double g = f / std::sqrt(static_cast<double>(n)) * t + v2 * s;
    return std::clamp(1.0 - s * g / v2, 0.0, 1.0);
}

/// Rate of the closed-form optimal beamformer at `x`.
double optimal_rate(const SystemConfig& cfg, std::span<const double> x) {
    const AntennaPositions pos(std::vector<double>(x.begin(), x.end()), cfg);
    return snr_pair(optimal_beamformer(pos, cfg).w, pos, cfg).min_rate;
}

/// Fallback position step on the Lagrangian mu c1 |h1^T w|^2 + (1 - mu) c2 |h2^T w|^2
/// with w fixed. Accepted only when the re-optimized min-rate improves;
/// otherwise the curvature is doubled and a single step retried.
std::optional<std::vector<double>> weighted_position_step(const SystemConfig& cfg, const std::vector<double>& x0,
                                                          std::span<const Complex> w, double mu,
                                                          double rate0, const AoOptions& opts) {
    const double delta = ao_curvature(cfg);
    const std::array<double, 2> k{cfg.spatial_frequency(0), cfg.spatial_frequency(1)};
    const double cmax = std::max(cfg.snr_scale(0), cfg.snr_scale(1));
    const std::array<double, 2> weight{mu * cfg.snr_scale(0) / cmax, (1.0 - mu) * cfg.snr_scale(1) / cmax};
    const double curvature = (weight[0] + weight[1]) * delta;
    if (!(curvature > 0.0)) return std::nullopt;
    const std::size_t n = x0.size();

    auto step = [&](const std::vector<double>& x, double scale) {
        const BranchEval b0 = branch(x, w, k[0]), b1 = branch(x, w, k[1]);
        std::vector<double> z(n);
        for (std::size_t m = 0; m < n; ++m) {
            z[m] = x[m] + (weight[0] * b0.grad[m] + weight[1] * b1.grad[m]) / (scale * curvature);
        }
        return project_to_polytope(z, cfg.span_l, cfg.d_min);
    };
    auto lagrangian = [&](const std::vector<double>& x) {
        return weight[0] * branch_value(x, w, k[0]) + weight[1] * branch_value(x, w, k[1]);
    };

    std::vector<double> x = x0;
    double value = lagrangian(x);
    for (int it = 0; it < opts.max_inner; ++it) {
        std::vector<double> next = step(x, 1.0);
        const double next_value = lagrangian(next);
        if (next_value - value <= 1e-13 * std::max(1.0, value)) break;
        x = std::move(next);
        value = next_value;
    }
    if (x != x0 && optimal_rate(cfg, x) > rate0) return x;

    for (double scale = 2.0; scale <= 1048576.0; scale *= 2.0) {
        std::vector<double> y = step(x0, scale);
        if (y != x0 && optimal_rate(cfg, y) > rate0) return y;
    }
    return std::nullopt;
}

} // namespace

std::string_view to_string(Scheme s) {
    switch (s) {
    case Scheme::Proposed: return "proposed";
    case Scheme::AO: return "ao";
    case Scheme::APS: return "aps";
    case Scheme::MaMrt: return "ma_mrt";
    case Scheme::Fpa: return "fpa";
    }
    return "unknown";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
    for (Scheme s : {Scheme::Proposed, Scheme::AO, Scheme::APS, Scheme::MaMrt, Scheme::Fpa}) {
        if (name == to_string(s)) return s;
    }
    return std::nullopt;
}

SchemeResult proposed_scheme(const SystemConfig& cfg, const ProposedOptions& opts) {
    ScaResult sca = multi_start_sca(cfg, opts.n_starts, opts.seed, opts.sca);
    Beamformer bf = optimal_beamformer(sca.x, cfg);
    SchemeResult res = assemble(Scheme::Proposed, cfg, std::move(sca.x), std::move(bf));
    for (const auto& it : sca.trace.iterates) res.trace.push_back(it.f1);
    res.iterations = sca.trace.iterations;
    return res;
}

double ao_curvature(const SystemConfig& cfg) {
    const double kmax = 2.0 * std::numbers::pi / cfg.lambda *
                        std::max(std::abs(std::sin(cfg.theta_su[0])), std::abs(std::sin(cfg.theta_su[1])));
    return 2.0 * kmax * kmax * cfg.n_antennas;
}

SchemeResult ao_optimize(const SystemConfig& cfg, const AntennaPositions& init_x, const AoOptions& opts) {
    cfg.validate();
    if (init_x.size() != static_cast<std::size_t>(cfg.n_antennas)) {
        throw ValidationError("initial layout has the wrong antenna count");
    }
    AntennaPositions x = init_x;
    Beamformer bf = optimal_beamformer(x, cfg);
    std::vector<double> trace{snr_pair(bf.w, x, cfg).min_rate};
    // trace[k] is the min-rate of (x_k, optimal w(x_k)).
    int outer = 0;

    if (ao_curvature(cfg) > 0.0) {
        while (outer < opts.max_outer) {
            ++outer;
            const double rate = trace.back();
            std::vector<double> next = ao_position_step(cfg, x.vector(), bf.w, opts);
            double next_rate = optimal_rate(cfg, next);
            if (!(next_rate > rate)) {
                // The fixed-w max-min step is stationary whenever both users
                // bind; step along the beamforming Lagrangian instead.
                const double mu = beam_multiplier(bf, channel_correlation(x, cfg), cfg.n_antennas);
                if (auto alt = weighted_position_step(cfg, x.vector(), bf.w, mu, rate, opts)) {
                    next = std::move(*alt);
                    next_rate = optimal_rate(cfg, next);
                } else {
                    next = x.vector();
                    next_rate = rate;
                }
            }
            x = AntennaPositions(std::move(next), cfg);
            bf = optimal_beamformer(x, cfg);
            trace.push_back(std::max(rate, next_rate));
            if (next_rate - rate < opts.outer_tol) break;
        }
    }

    bf = optimal_beamformer(x, cfg);
    SchemeResult res = assemble(Scheme::AO, cfg, std::move(x), std::move(bf));
    res.trace = std::move(trace);
    res.iterations = outer;
    return res;
}

SchemeResult ao_multi_start(const SystemConfig& cfg, const ProposedOptions& starts, const AoOptions& opts) {
    cfg.validate();
    const auto inits = initial_layouts(cfg, starts.n_starts, starts.seed);
    auto runs = parallel_map(inits.size(), [&](std::size_t i) { return ao_optimize(cfg, inits[i], opts); });
    std::size_t best = 0;
    for (std::size_t i = 1; i < runs.size(); ++i) {
        const double ri = runs[i].snr.min_rate, rb = runs[best].snr.min_rate;
        if (ri > rb + 1e-12 || (ri >= rb - 1e-12 && runs[i].x.vector() < runs[best].x.vector())) best = i;
    }
    return std::move(runs[best]);
}

SchemeResult aps_search(const SystemConfig& cfg, double grid_step, double max_combinations) {
    cfg.validate();
    if (!(grid_step > 0.0)) throw ValidationError("grid_step must be > 0");
    const int n = cfg.n_antennas;
    const auto m = static_cast<std::size_t>(std::floor(cfg.span_l / grid_step + 1e-9)) + 1;

    double combos = 1.0;
    for (int i = 0; i < n; ++i) combos = combos * static_cast<double>(m - i) / (i + 1);
    if (static_cast<std::size_t>(n) > m) combos = 0.0;
    if (combos > max_combinations) {
        std::ostringstream msg;
        msg << "APS grid has C(" << m << ", " << n << ") = " << combos
            << " candidate subsets, over the limit of " << max_combinations << "; use a coarser grid";
        throw EnumerationLimit(msg.str());
    }

    const double kappa = correlation_objective(cfg).kappa;
    std::vector<double> grid(m);
    std::vector<Complex> phasor(m);
    for (std::size_t i = 0; i < m; ++i) {
        grid[i] = static_cast<double>(i) * grid_step;
        phasor[i] = std::polar(1.0, kappa * grid[i]);
    }

    std::vector<std::size_t> pick(n), best_pick;
    double best = -1.0;
    // Depth-first in lexicographic order; strict improvement keeps the first optimum.
    auto dfs = [&](auto&& self, int depth, std::size_t from, Complex partial) -> void {
        if (depth == n) {
            const double v = std::norm(partial);
            if (v > best + 1e-12 * n * n) {
                best = v;
                best_pick = pick;
            }
            return;
        }
        for (std::size_t i = from; i + static_cast<std::size_t>(n - depth) <= m; ++i) {
            if (depth > 0 && grid[i] - grid[pick[depth - 1]] < cfg.d_min - kFeasibilityTol) continue;
            pick[depth] = i;
            self(self, depth + 1, i + 1, partial + phasor[i]);
        }
    };
    dfs(dfs, 0, 0, Complex{0.0, 0.0});
    if (best_pick.empty()) throw ValidationError("no APS grid subset satisfies the spacing constraint");

    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = grid[best_pick[i]];
    AntennaPositions x(std::move(xs), cfg);
    Beamformer bf = optimal_beamformer(x, cfg);
    SchemeResult res = assemble(Scheme::APS, cfg, std::move(x), std::move(bf));
    res.iterations = static_cast<int>(combos);
    return res;
}

SchemeResult ma_mrt(const SystemConfig& cfg, const ProposedOptions& opts) {
    ScaResult sca = multi_start_sca(cfg, opts.n_starts, opts.seed, opts.sca);
    Beamformer bf = mrt_beamformer(sca.x, cfg);
    SchemeResult res = assemble(Scheme::MaMrt, cfg, std::move(sca.x), std::move(bf));
    for (const auto& it : sca.trace.iterates) res.trace.push_back(it.f1);
    res.iterations = sca.trace.iterations;
    return res;
}

SchemeResult fpa_scheme(const SystemConfig& cfg) {
    cfg.validate();
    const int n = cfg.n_antennas;
    if ((n - 1) * kFpaSpacing > cfg.span_l + kFeasibilityTol) {
        throw ValidationError("fixed layout with spacing 0.5 does not fit in span_l");
    }
    if (kFpaSpacing < cfg.d_min - kFeasibilityTol) {
        throw ValidationError("fixed spacing 0.5 is below d_min");
    }
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = i * kFpaSpacing;
    AntennaPositions x(std::move(xs), cfg);
    Beamformer bf = optimal_beamformer(x, cfg);
    return assemble(Scheme::Fpa, cfg, std::move(x), std::move(bf));
}

SchemeResult run_scheme(Scheme s, const SystemConfig& cfg, const SchemeOptions& opts) {
    switch (s) {
    case Scheme::Proposed: return proposed_scheme(cfg, opts.proposed);
    case Scheme::AO:
        if (opts.ao_starts > 1) {
            ProposedOptions starts = opts.proposed;
            starts.n_starts = opts.ao_starts;
            return ao_multi_start(cfg, starts, opts.ao);
        }
        return ao_optimize(cfg, uniform_positions(cfg), opts.ao);
    case Scheme::APS: return aps_search(cfg, opts.aps_grid_step);
    case Scheme::MaMrt: return ma_mrt(cfg, opts.proposed);
    case Scheme::Fpa: return fpa_scheme(cfg);
    }
    throw ValidationError("unknown scheme");
}

} // namespace mamcast

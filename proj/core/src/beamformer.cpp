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

#include "mamcast/beamformer.hpp"

#include <algorithm>
#include <cmath>

#include "mamcast/error.hpp"

namespace mamcast {

namespace {

// Below this (relative to sqrt(N)) a projection component is treated as zero.
// Rounding leaves ||q|| around 1e-8 for exactly parallel channels.
constexpr double kVanishingComponent = 1e-7;
constexpr double kCaseSlack = 1e-12;

double clamp_unit(double t, const char* what) {
    if (!(t >= -kCaseSlack && t <= 1.0 + kCaseSlack)) {
        throw ValidationError(std::string(what) + " must lie in [0, 1]");
    }
    return std::clamp(t, 0.0, 1.0);
}

ComplexVector conj_of(std::span<const Complex> v) {
    ComplexVector out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](Complex c) { return std::conj(c); });
    return out;
}

} // namespace

std::string_view to_string(BeamCase c) {
    switch (c) {
    case BeamCase::Crossing: return "crossing";
    case BeamCase::LeftEndpoint: return "left_endpoint";
    case BeamCase::RightEndpoint: return "right_endpoint";
    case BeamCase::DegenerateParallel: return "degenerate_parallel";
    }
    return "unknown";
}

ThetaCoefficients theta_coefficients(double f, const SystemConfig& cfg) {
    const double n = cfg.n_antennas;
    if (!(f >= -1e-9 * n && f <= n * (1.0 + 1e-9))) {
        throw ValidationError("correlation f must lie in [0, N]");
    }
    f = std::clamp(f, 0.0, n);
    const double c1 = cfg.snr_scale(0);
    const double c2 = cfg.snr_scale(1);
    ThetaCoefficients k;
    k.a1 = c1 * n;
    k.a2 = std::sqrt(c2) * f / std::sqrt(n);
    k.a3 = std::sqrt(c2 * std::max(0.0, n - f * f / n));
    k.f_max = f;
    return k;
}

ComplexVector project_onto(std::span<const Complex> v, std::span<const Complex> u) {
    const double vv = norm_squared(v);
    if (!(vv > 0.0)) throw ValidationError("cannot project onto a zero vector");
    const Complex s = dot_h(v, u) / vv;
    ComplexVector out(v.size());
    for (std::size_t n = 0; n < v.size(); ++n) out[n] = v[n] * s;
    return out;
}

ComplexVector project_onto_complement(std::span<const Complex> v, std::span<const Complex> u) {
    ComplexVector out = project_onto(v, u);
    for (std::size_t n = 0; n < u.size(); ++n) out[n] = u[n] - out[n];
    return out;
}

double theta_simplified(double t, double f, const SystemConfig& cfg) {
    t = clamp_unit(t, "t");
    const ThetaCoefficients k = theta_coefficients(f, cfg);
    const double y1 = k.a1 * t * t;
    const double amp = k.a2 * t + k.a3 * std::sqrt(1.0 - t * t);
    return std::min(y1, amp * amp);
}

ProjectionTerms projection_terms(const AntennaPositions& x, const SystemConfig& cfg) {
    const auto h1 = steering_vector(x, cfg.theta_su[0], cfg.lambda).entries;
    const auto h2 = steering_vector(x, cfg.theta_su[1], cfg.lambda).entries;
    const double vanish = kVanishingComponent * std::sqrt(static_cast<double>(x.size()));

    ProjectionTerms terms;
    terms.b = std::sqrt(norm_squared(project_onto(h1, h2)));
    terms.c = std::sqrt(norm_squared(project_onto_complement(h1, h2)));

    const ComplexVector h1c = conj_of(h1);
    const ComplexVector p = project_onto(h1c, conj_of(h2));
    if (terms.b > vanish) {
        terms.a = std::abs(dot(h1, p)) / terms.b;
    } else {
        // f = 0: the normalized projection direction tends to conj(h1)/||h1||.
        terms.a = std::abs(dot(h1, h1c)) / std::sqrt(norm_squared(h1c));
    }
    if (terms.c <= vanish) {
        terms.c = 0.0;
        terms.degenerate = true;
    }
    return terms;
}

double theta_from_terms(double t, const ProjectionTerms& terms, const SystemConfig& cfg) {
    const double y1 = cfg.snr_scale(0) * terms.a * terms.a * t * t;
    const double amp = terms.b * t + terms.c * std::sqrt(std::max(0.0, 1.0 - t * t));
    return std::min(y1, cfg.snr_scale(1) * amp * amp);
}

double theta_via_projections(double t, const AntennaPositions& x, const SystemConfig& cfg) {
    t = clamp_unit(t, "t");
    return theta_from_terms(t, projection_terms(x, cfg), cfg);
}

OptimalT optimal_t(const ThetaCoefficients& k, int n) {
    if (n < 1) throw ValidationError("antenna count must be positive");
    if (!(k.f_max >= 0.0 && k.f_max <= n * (1.0 + 1e-9))) {
        throw ValidationError("f_max must lie in [0, N]");
    }
    if (k.a3 <= 1e-9 * std::sqrt(k.a2 * k.a2 + k.a3 * k.a3)) {
        return {1.0, BeamCase::DegenerateParallel};
    }

    const double left = std::min(1.0, k.f_max / n);
    auto y1 = [&](double t) { return k.a1 * t * t; };
    auto y2 = [&](double t) {
        const double amp = k.a2 * t + k.a3 * std::sqrt(std::max(0.0, 1.0 - t * t));
        return amp * amp;
    };

    const double y1l = y1(left), y2l = y2(left);
    if (y2l < y1l - kCaseSlack * std::max(y1l, y2l)) return {left, BeamCase::LeftEndpoint};

    const double y1r = y1(1.0), y2r = y2(1.0);
    if (y2r > y1r + kCaseSlack * std::max(y1r, y2r)) return {1.0, BeamCase::RightEndpoint};

    const double d = k.a2 - std::sqrt(k.a1);
    const double t = k.a3 / std::sqrt(d * d + k.a3 * k.a3);
    return {std::clamp(t, left, 1.0), BeamCase::Crossing};
}

void normalize_global_phase(ComplexVector& w) {
    for (const Complex& c : w) {
        const double mag = std::abs(c);
        if (mag > 1e-12) {
            const Complex rot = std::conj(c) / mag;
            for (Complex& v : w) v *= rot;
            // The pivot itself becomes exactly real.
            return;
        }
    }
}

Beamformer construct_w(const AntennaPositions& x, double t, const SystemConfig& cfg,
                       BeamCase label) {
    t = clamp_unit(t, "t");
    const std::size_t n = x.size();
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double vanish = kVanishingComponent * sqrt_n;

    const ComplexVector h1c = conj_of(steering_vector(x, cfg.theta_su[0], cfg.lambda).entries);
    const ComplexVector h2c = conj_of(steering_vector(x, cfg.theta_su[1], cfg.lambda).entries);
    ComplexVector p = project_onto(h1c, h2c);
    ComplexVector q = project_onto_complement(h1c, h2c);
    const double p_norm = std::sqrt(norm_squared(p));
    const double q_norm = std::sqrt(norm_squared(q));

    Beamformer bf;
    if (q_norm <= vanish) {
        bf.w = h1c;
        for (Complex& c : bf.w) c /= sqrt_n;
        bf.t = 1.0;
        bf.case_label = BeamCase::DegenerateParallel;
    } else {
        if (p_norm <= vanish) {
            p = h1c;
        }
        const double p_scale = t / std::sqrt(norm_squared(p));
        const double q_scale = std::sqrt(1.0 - t * t) / q_norm;
        bf.w.resize(n);
        for (std::size_t i = 0; i < n; ++i) bf.w[i] = p_scale * p[i] + q_scale * q[i];
        bf.t = t;
        bf.case_label = label;
    }
    const double norm = std::sqrt(norm_squared(bf.w));
    for (Complex& c : bf.w) c /= norm;
    normalize_global_phase(bf.w);
    return bf;
}

Beamformer optimal_beamformer(const AntennaPositions& x, const SystemConfig& cfg) {
    const double f = channel_correlation(x, cfg);
    const OptimalT opt = optimal_t(theta_coefficients(f, cfg), static_cast<int>(x.size()));
    return construct_w(x, opt.t, cfg, opt.case_label);
}

Beamformer mrt_beamformer(const AntennaPositions& x, const SystemConfig& cfg) {
    Beamformer bf;
    const double sqrt_n = std::sqrt(static_cast<double>(x.size()));
    bf.w = conj_of(steering_vector(x, cfg.theta_su[0], cfg.lambda).entries);
    for (Complex& c : bf.w) c /= sqrt_n;
    normalize_global_phase(bf.w);
    bf.t = 1.0;
    bf.case_label = BeamCase::RightEndpoint;
    return bf;
}

} // namespace mamcast

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

#include "mamcast/sysmodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mamcast/error.hpp"

namespace mamcast {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

void check_unit_norm(std::span<const Complex> w) {
    const double n2 = norm_squared(w);
    require(std::abs(n2 - 1.0) <= kUnitNormTol,
            "beamformer must have unit norm, got ||w||^2 = " + std::to_string(n2));
}

int checked_user(int user) {
    if (user != 0 && user != 1) throw ValidationError("user index must be 0 or 1");
    return user;
}

} // namespace

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void SystemConfig::validate() const {
    require(n_antennas >= 2, "n_antennas must be >= 2");
    require(std::isfinite(span_l) && span_l > 0.0, "span_l must be > 0");
    require(std::isfinite(d_min) && d_min > 0.0, "d_min must be > 0");
    require((n_antennas - 1) * d_min <= span_l + kFeasibilityTol,
            "(n_antennas - 1) * d_min exceeds span_l; feasible region is empty");
    require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
    require(std::isfinite(tau) && tau > 0.0, "tau must be > 0");
    require(std::isfinite(ps_dbm) && std::isfinite(sigma2_dbm), "powers must be finite");
    for (int i = 0; i < 2; ++i) {
        require(std::isfinite(d_su[i]) && d_su[i] > 0.0, "d_su entries must be > 0");
        require(std::isfinite(theta_su[i]) && theta_su[i] >= 0.0 && theta_su[i] <= std::numbers::pi,
                "theta_su entries must lie in [0, pi]");
    }
    require(ps_w() > 0.0 && sigma2_w() > 0.0, "linear powers must be positive");
}

double SystemConfig::snr_scale(int user) const {
    return ps_w() / (std::pow(d_su[checked_user(user)], tau) * sigma2_w());
}

double SystemConfig::spatial_frequency(int user) const {
    return 2.0 * std::numbers::pi / lambda * std::sin(theta_su[checked_user(user)]);
}

bool is_feasible(std::span<const double> x, double span, double d_min, double tol) {
    if (x.empty()) return false;
    if (!std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); })) return false;
    if (x.front() < -tol || x.back() > span + tol) return false;
    for (std::size_t n = 1; n < x.size(); ++n) {
        if (x[n] - x[n - 1] < d_min - tol) return false;
    }
    return true;
}

AntennaPositions::AntennaPositions(std::vector<double> x, double span, double d_min)
    : x_(std::move(x)) {
    require(x_.size() >= 1, "antenna position vector is empty");
    require(is_feasible(x_, span, d_min),
            "antenna positions violate 0 <= x_1, x_n - x_{n-1} >= d_min, x_N <= L");
}

AntennaPositions uniform_positions(const SystemConfig& cfg) {
    const int n = cfg.n_antennas;
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = i * (cfg.span_l / (n - 1));
    x.back() = cfg.span_l;
    return {std::move(x), cfg};
}

ChannelVector steering_vector(const AntennaPositions& x, double theta, double lambda) {
    require(std::isfinite(lambda) && lambda > 0.0, "lambda must be > 0");
    require(std::isfinite(theta), "angle must be finite");
    const double k = 2.0 * std::numbers::pi / lambda * std::sin(theta);
    ChannelVector h;
    h.entries.reserve(x.size());
    for (double xn : x.values()) h.entries.push_back(std::polar(1.0, k * xn));
    return h;
}

ChannelVector channel_vector(const AntennaPositions& x, const SystemConfig& cfg, int user) {
    ChannelVector h = steering_vector(x, cfg.theta_su[checked_user(user)], cfg.lambda);
    h.gain = 1.0 / std::sqrt(std::pow(cfg.d_su[user], cfg.tau));
    return h;
}

double min_rate(double gamma_u1, double gamma_u2) {
    return std::log2(1.0 + std::min(gamma_u1, gamma_u2));
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
    Complex s{0.0, 0.0};
    for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * b[n];
    return s;
}

Complex dot_h(std::span<const Complex> a, std::span<const Complex> b) {
    Complex s{0.0, 0.0};
    for (std::size_t n = 0; n < a.size(); ++n) s += std::conj(a[n]) * b[n];
    return s;
}

double norm_squared(std::span<const Complex> v) {
    double s = 0.0;
    for (const Complex& c : v) s += std::norm(c);
    return s;
}

SnrPair snr_pair(std::span<const Complex> w, const AntennaPositions& x, const SystemConfig& cfg) {
    require(w.size() == x.size(), "beamformer and position vector differ in length");
    check_unit_norm(w);
    SnrPair out;
    const double g1 = std::norm(dot(steering_vector(x, cfg.theta_su[0], cfg.lambda).entries, w));
    const double g2 = std::norm(dot(steering_vector(x, cfg.theta_su[1], cfg.lambda).entries, w));
    out.gamma_u1 = cfg.snr_scale(0) * g1;
    out.gamma_u2 = cfg.snr_scale(1) * g2;
    out.min_rate = min_rate(out.gamma_u1, out.gamma_u2);
    return out;
}

double beam_gain(std::span<const Complex> w, const AntennaPositions& x, double theta,
                 double lambda) {
    require(w.size() == x.size(), "beamformer and position vector differ in length");
    check_unit_norm(w);
    return std::norm(dot(steering_vector(x, theta, lambda).entries, w));
}

double channel_correlation(const AntennaPositions& x, const SystemConfig& cfg) {
    const auto h1 = steering_vector(x, cfg.theta_su[0], cfg.lambda);
    const auto h2 = steering_vector(x, cfg.theta_su[1], cfg.lambda);
    return std::abs(dot_h(h1.entries, h2.entries));
}

} // namespace mamcast

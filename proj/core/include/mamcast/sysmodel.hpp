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

#include <array>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

namespace mamcast {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Absolute slack on spacing and span bounds when checking feasibility.
inline constexpr double kFeasibilityTol = 1e-9;
/// Allowed deviation of ||w||^2 from one.
inline constexpr double kUnitNormTol = 1e-12;

/// dBm to watts: 10^((dBm - 30) / 10).
double dbm_to_watt(double dbm);

/// Physical and problem constants for the two-user multicast link.
///
/// Lengths (span, spacing, positions) are in the same unit as `lambda`.
/// Index 0 of the per-user arrays refers to U1, index 1 to U2.
struct SystemConfig {
    int n_antennas = 5;
    double span_l = 4.0;
    double d_min = 0.5;
    double lambda = 1.0;
    double tau = 2.0;
    double ps_dbm = 25.0;
    double sigma2_dbm = -80.0;
    std::array<double, 2> d_su{100.0, 100.0};
    std::array<double, 2> theta_su{std::numbers::pi / 4.0, 9.0 * std::numbers::pi / 10.0};

    /// Throws ValidationError on the first violated invariant.
    void validate() const;

    double ps_w() const { return dbm_to_watt(ps_dbm); }
    double sigma2_w() const { return dbm_to_watt(sigma2_dbm); }

    /// P_s / (d_i^tau * sigma^2), the factor mapping |h_i^T w|^2 to SNR.
    double snr_scale(int user) const;

    /// Spatial frequency (2 pi / lambda) sin(theta_i) of user i.
    double spatial_frequency(int user) const;

    /// Width of the shifted box u_n = x_n - (n-1) d_min, i.e. L - (N-1) d_min.
    double slack_span() const { return span_l - (n_antennas - 1) * d_min; }
};

bool is_feasible(std::span<const double> x, double span, double d_min,
                 double tol = kFeasibilityTol);

/// Antenna coordinates satisfying 0 <= x_1, x_n - x_{n-1} >= d_min, x_N <= L.
class AntennaPositions {
public:
    /// Throws ValidationError if `x` is outside the spacing polytope.
    AntennaPositions(std::vector<double> x, double span, double d_min);
    AntennaPositions(std::vector<double> x, const SystemConfig& cfg)
        : AntennaPositions(std::move(x), cfg.span_l, cfg.d_min) {}

    std::size_t size() const noexcept { return x_.size(); }
    double operator[](std::size_t n) const { return x_[n]; }
    std::span<const double> values() const noexcept { return x_; }
    const std::vector<double>& vector() const noexcept { return x_; }

    friend bool operator==(const AntennaPositions&, const AntennaPositions&) = default;

private:
    std::vector<double> x_;
};

/// Uniform spacing (n-1) L / (N-1) across the whole span.
AntennaPositions uniform_positions(const SystemConfig& cfg);

struct ChannelVector {
    ComplexVector entries;
    /// Large-scale amplitude 1/sqrt(d^tau); 1 for the phase-only vector.
    double gain = 1.0;
};

/// Phase-only response [exp(j (2 pi / lambda) x_n sin theta)]_n.
ChannelVector steering_vector(const AntennaPositions& x, double theta, double lambda);

/// Full channel of user `user` (0 or 1), carrying 1/sqrt(d^tau) in `gain`.
ChannelVector channel_vector(const AntennaPositions& x, const SystemConfig& cfg, int user);

struct SnrPair {
    double gamma_u1 = 0.0;
    double gamma_u2 = 0.0;
    double min_rate = 0.0;  ///< log2(1 + min(gamma_u1, gamma_u2)), bits/s/Hz
};

double min_rate(double gamma_u1, double gamma_u2);

/// a^T b (no conjugation).
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
/// a^H b.
Complex dot_h(std::span<const Complex> a, std::span<const Complex> b);
double norm_squared(std::span<const Complex> v);

/// Received SNRs for unit-norm `w`. Throws ValidationError if ||w||^2 != 1.
SnrPair snr_pair(std::span<const Complex> w, const AntennaPositions& x, const SystemConfig& cfg);

/// |h(theta)^T w|^2 for the phase-only steering vector h. In [0, N].
double beam_gain(std::span<const Complex> w, const AntennaPositions& x, double theta,
                 double lambda = 1.0);

/// Channel correlation f(x) = |h1^H h2| of the two phase-only channels.
double channel_correlation(const AntennaPositions& x, const SystemConfig& cfg);

} // namespace mamcast

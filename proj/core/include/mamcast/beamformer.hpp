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

#include <span>
#include <string_view>

#include "mamcast/sysmodel.hpp"

namespace mamcast {

/// Which branch of the max-min problem over t produced the optimum.
enum class BeamCase {
    Crossing,           ///< y1(t) = y2(t) inside [f/N, 1]
    LeftEndpoint,       ///< t = f/N, U2 already weaker at the left end
    RightEndpoint,      ///< t = 1, U1 still weaker at the right end
    DegenerateParallel, ///< channels parallel (f = N): w = conj(h1)/sqrt(N)
};

std::string_view to_string(BeamCase c);

/// Unit-norm transmit beamformer w(t) = t p/|p| + sqrt(1-t^2) q/|q| where p
/// and q split conj(h2) along and orthogonal to conj(h1).
struct Beamformer {
    ComplexVector w;
    double t = 1.0;
    BeamCase case_label = BeamCase::Crossing;
};

/// Coefficients of Theta(t) = min(A1 t^2, (A2 t + A3 sqrt(1-t^2))^2) for a
/// fixed correlation value.
struct ThetaCoefficients {
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;
    double f_max = 0.0;
};

/// A1 = c1 N, A2 = sqrt(c2) f / sqrt(N), A3 = sqrt(c2 (N - f^2/N)) with
/// c_i = P_s / (d_i^tau sigma^2). `f` is clamped into [0, N] after a
/// rounding-sized tolerance; larger violations throw.
ThetaCoefficients theta_coefficients(double f, const SystemConfig& cfg);

/// v (v^H u) / ||v||^2. Throws ValidationError for a zero `v`.
ComplexVector project_onto(std::span<const Complex> v, std::span<const Complex> u);
/// u - project_onto(v, u).
ComplexVector project_onto_complement(std::span<const Complex> v, std::span<const Complex> u);

/// Min-SNR as a function of t and the correlation f only.
double theta_simplified(double t, double f, const SystemConfig& cfg);

/// a(x), b(x), c(x) computed from explicit rank-one projections of the
/// phase-only channels. `degenerate` is set when c(x) vanishes (parallel
/// channels); c is then reported as 0.
struct ProjectionTerms {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    bool degenerate = false;
};

ProjectionTerms projection_terms(const AntennaPositions& x, const SystemConfig& cfg);

/// min(c1 a^2 t^2, c2 (b t + c sqrt(1-t^2))^2) for precomputed terms.
double theta_from_terms(double t, const ProjectionTerms& terms, const SystemConfig& cfg);

/// Min-SNR at (t, x) evaluated through the projection terms; the
/// reference path for `theta_simplified`.
double theta_via_projections(double t, const AntennaPositions& x, const SystemConfig& cfg);

struct OptimalT {
    double t = 1.0;
    BeamCase case_label = BeamCase::Crossing;
};

/// Maximizes Theta(t) over [f/N, 1] by the three-case analysis.
OptimalT optimal_t(const ThetaCoefficients& coeffs, int n);

/// Builds w(t) at positions `x`. When the orthogonal component vanishes the
/// result is conj(h1)/sqrt(N) with t = 1 and DegenerateParallel.
Beamformer construct_w(const AntennaPositions& x, double t, const SystemConfig& cfg,
                       BeamCase label = BeamCase::Crossing);

/// Closed-form optimal beamformer for fixed positions.
Beamformer optimal_beamformer(const AntennaPositions& x, const SystemConfig& cfg);

/// Maximum-ratio transmission toward U1: conj(h1)/sqrt(N), i.e. w(1).
Beamformer mrt_beamformer(const AntennaPositions& x, const SystemConfig& cfg);

/// Rotates w so its first nonzero entry is real and nonnegative.
void normalize_global_phase(ComplexVector& w);

} // namespace mamcast

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
#include <random>
#include <span>
#include <vector>

#include "mamcast/sysmodel.hpp"

namespace mamcast {

/// f^2(x) = |sum_n exp(j kappa x_n)|^2 = N + f1(x), where
/// kappa = (2 pi / lambda)(sin theta_2 - sin theta_1).
struct CorrelationObjective {
    double kappa = 0.0;
    int n = 0;
};

CorrelationObjective correlation_objective(const SystemConfig& cfg);

/// f1(x) = sum_i sum_{j != i} cos(kappa (x_i - x_j)).
///
/// The span overloads accept arbitrary coordinates (no feasibility check) so
/// that finite-difference probes may step outside the polytope.
double f1(std::span<const double> x, const CorrelationObjective& obj);
double f1(const AntennaPositions& x, const CorrelationObjective& obj);

/// d f1 / d x_n = 2 kappa sum_i sin(kappa (x_i - x_n)).
std::vector<double> grad_f1(std::span<const double> x, const CorrelationObjective& obj);
std::vector<double> grad_f1(const AntennaPositions& x, const CorrelationObjective& obj);

/// delta = sqrt(4 kappa^4 N (N-1)^2 + 4 N (N-1) kappa^4), a Frobenius bound on
/// the Hessian of f1 so that delta * I dominates it everywhere.
double delta_bound(const CorrelationObjective& obj);

/// Quadratic minorant f2(x, x_k) = f1(x_k) + g.(x - x_k) - delta/2 ||x - x_k||^2.
double surrogate_value(std::span<const double> x, std::span<const double> x_k, double f1_k,
                       std::span<const double> g, double delta);

/// In-place least-squares nondecreasing fit (pool adjacent violators, unit weights).
void isotonic_regression(std::span<double> v);

/// Euclidean projection of `z` onto {0 <= x_1, x_n - x_{n-1} >= d_min, x_N <= span}.
///
/// Works in shifted coordinates u_n = x_n - (n-1) d_min where the set becomes
/// a monotone chain inside the box [0, span - (N-1) d_min]; the isotonic fit
/// clipped to the box is the exact projection there.
std::vector<double> project_to_polytope(std::span<const double> z, double span, double d_min);

/// Exact maximizer of the surrogate over the polytope: the projection of
/// x_k + g / delta. Throws DegenerateObjective when delta == 0.
AntennaPositions solve_surrogate(const AntennaPositions& x_k, std::span<const double> g,
                                 double delta, const SystemConfig& cfg);

struct ScaIterate {
    std::vector<double> x;
    double f1 = 0.0;
};

struct ScaTrace {
    std::vector<ScaIterate> iterates;  ///< includes the initial point
    bool converged = false;
    int iterations = 0;
};

struct ScaOptions {
    double tol = 1e-8;   ///< stop when the f1 improvement drops below this
    int max_iter = 500;
};

struct ScaResult {
    AntennaPositions x;
    ScaTrace trace;
};

/// Successive convex approximation for max f1 over the spacing polytope.
/// For kappa == 0 the objective is constant and `init` is returned with zero
/// iterations.
ScaResult sca_optimize(const SystemConfig& cfg, const AntennaPositions& init,
                       const ScaOptions& opts = {});

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw, so results
/// do not depend on the standard library's distribution implementation.
double uniform01(std::mt19937_64& rng);

/// N sorted uniforms on [0, L - (N-1) d_min] plus the spacing offsets.
AntennaPositions random_feasible_positions(const SystemConfig& cfg, std::mt19937_64& rng);

/// The uniform layout followed by n_starts - 1 layouts drawn from `seed`.
std::vector<AntennaPositions> initial_layouts(const SystemConfig& cfg, int n_starts, std::uint64_t seed);

/// Best of SCA runs from the uniform layout and n_starts - 1 seeded random
/// layouts. Ties in f1 go to the lexicographically smallest x.
ScaResult multi_start_sca(const SystemConfig& cfg, int n_starts, std::uint64_t seed,
                          const ScaOptions& opts = {});

} // namespace mamcast

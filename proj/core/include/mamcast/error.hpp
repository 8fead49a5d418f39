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

#include <stdexcept>
#include <string>

namespace mamcast {

/// Thrown when an input violates a documented precondition (infeasible
/// positions, non-unit beamformer, out-of-range parameters).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The correlation objective is constant (kappa == 0), so the surrogate has
/// zero curvature and every feasible point is optimal.
class DegenerateObjective : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An enumeration would exceed its configured size guard.
class EnumerationLimit : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Configuration document errors. `path()` names the offending field,
/// e.g. "base.n_antennas".
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace mamcast

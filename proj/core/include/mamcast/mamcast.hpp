// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "mamcast/baselines.hpp"
#include "mamcast/beamformer.hpp"
#include "mamcast/error.hpp"
#include "mamcast/experiment.hpp"
#include "mamcast/oracle.hpp"
#include "mamcast/parallel.hpp"
#include "mamcast/posopt.hpp"
#include "mamcast/sysmodel.hpp"

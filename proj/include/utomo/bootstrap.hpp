// Copyright 2026 The utomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "utomo/base_tomography.hpp"

// Heisenberg-limited refinement: repeatedly estimate the residual
// (Z V_j^dag)^{p_j} to constant accuracy and fold its p_j-th root into V_j.

namespace utomo {

struct BootstrapStep {
    int j = 0;
    int power = 1;
    double eta_j = 0.0;
    /// Base output for the residual, rephased so its eigenphase arc is centered at 0.
    UnitaryMatrix residual_estimate;
    UnitaryMatrix next;
    std::int64_t queries_at_step = 0;
};

struct BootstrapTrace {
    std::vector<BootstrapStep> iterates;
    UnitaryMatrix final_estimate;
};

/// Constant-accuracy estimator for the residual behind `access` with failure
/// probability at most eta_j.
using BaseEstimator = std::function<UnitaryMatrix(const UnitaryAccess& access, double eta_j, Rng& rng)>;

/// The tomography base at pudist accuracy `base_eps`.
BaseEstimator tomography_base(double base_eps, BaseConfig config = {});

/// pudist target whose lie_dist image is 1/200: (2/pi) / 200.
double default_base_eps();

/// T = ceil(log2(1/eps)).
int bootstrap_rounds(double eps);

/// eta_j = eta * 8^(j - T - 1).
double bootstrap_eta(double eta, int j, int rounds);

struct BootstrapOptions {
    /// Power base; p_j = base^j.
    int power_base = 2;
};

/// Runs the refinement from V_0 = I for j = 0..T. Throws BranchCutError when a
/// centered residual estimate has an eigenphase at pi.
BootstrapTrace bootstrap(QueryOracle& oracle, double eps, double eta, const BaseEstimator& base, Rng& rng,
                         const BootstrapOptions& options = {});

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingPoint {
    double eps = 0.0;
    double queries = 0.0;
};

/// Slope of log Q against log(1/eps) over the medians per eps. Needs at least
/// three distinct eps values.
double heisenberg_slope(const std::vector<ScalingPoint>& points);

}  // namespace utomo

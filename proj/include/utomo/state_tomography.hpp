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

#include "utomo/query_oracle.hpp"

// Pure-state tomography with the uniform POVM, realized as a Haar-random
// orthonormal basis followed by a computational-basis measurement.

namespace utomo {

/// Calibrated constant in m = ceil(C_state * d / eps0). See tools/calibrate.
inline constexpr double kDefaultCState = 4.0;

/// The state |z> = Y pre |c> for an effective unitary Y behind `access`.
struct StatePrep {
    const UnitaryAccess* access = nullptr;
    UnitaryMatrix pre;
    int column = 0;

    int dim() const { return access->dim(); }
};

/// Draws the measurement basis for one copy. Empty means Haar.
using BasisSource = std::function<UnitaryMatrix(int d, Rng& rng)>;

struct PovmOutcome {
    UnitaryMatrix basis;
    int index = 0;

    /// The measured unit vector: column `index` of `basis`.
    Vector vector() const { return basis.matrix().col(index); }
};

struct PovmSampleSet {
    int dim = 0;
    std::vector<PovmOutcome> outcomes;

    std::int64_t count() const { return static_cast<std::int64_t>(outcomes.size()); }
};

/// Running sum of |v_j><v_j| over measured outcome vectors. Holds the same
/// information build_L needs without keeping every basis.
struct PovmMoment {
    explicit PovmMoment(int d) : sum(Matrix::Zero(d, d)) {}

    void add(const Eigen::Ref<const Vector>& v) {
        sum.noalias() += v * v.adjoint();
        ++count;
    }

    Matrix sum;
    std::int64_t count = 0;
};

struct StateEstimate {
    Vector vector;
    std::int64_t samples_used = 0;
    /// The top two projected eigenvalues tied within 1e-12; the lower index won.
    bool top_tie = false;
};

/// m runs, each with a fresh basis V (V2 = V^dag). Ledger grows by m * power.
PovmSampleSet collect_samples(const StatePrep& prep, std::int64_t m, Rng& rng, const BasisSource& source = {});

/// Streaming variant used by estimate_state.
PovmMoment collect_moment(const StatePrep& prep, std::int64_t m, Rng& rng, const BasisSource& source = {});

/// L = (d+1) * mean |v_j><v_j| - I.
Matrix build_L(const PovmSampleSet& samples);
Matrix build_L(const PovmMoment& moment);

/// Euclidean projection onto the probability simplex (sort and threshold).
RealVector project_to_simplex(const RealVector& x);

/// Rounds L to the nearest rank-one state: eigendecompose, project the
/// spectrum onto the simplex, keep the largest weight. The output phase makes
/// the largest-magnitude entry real positive.
StateEstimate round_to_state(const Matrix& l);

/// Number of copies used for accuracy eps0: ceil(c_state * d / eps0).
std::int64_t state_sample_count(int d, double eps0, double c_state = kDefaultCState);

/// collect + build_L + round with m = state_sample_count(d, eps0, c_state).
StateEstimate estimate_state(const StatePrep& prep, double eps0, Rng& rng, double c_state = kDefaultCState,
                             const BasisSource& source = {});

/// 1 - |<z|u>|^2 for unit vectors.
double state_infidelity(const Vector& z, const Vector& u);

}  // namespace utomo

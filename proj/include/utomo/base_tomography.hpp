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

#include <functional>
#include <vector>

#include "utomo/channel_metrics.hpp"
#include "utomo/state_tomography.hpp"

// Unitary estimation with O(d^2/eps^2) queries: learn every column of Z and
// of Z F^dag by pure-state tomography, project each to a unitary, recover the
// relative column phases from the Fourier pair, then take a central estimate
// over repetitions.

namespace utomo {

/// d estimated unit columns; generally not unitary.
struct ColumnEstimateMatrix {
    Matrix columns;
};

/// Diagonal of unit-modulus entries.
class PhaseDiagonal {
   public:
    explicit PhaseDiagonal(Vector entries);

    const Vector& entries() const { return entries_; }
    UnitaryMatrix as_unitary() const;

   private:
    Vector entries_;
};

struct BaseConfig {
    double c_state = kDefaultCState;
    /// eps0 = eps0_ratio * eps^2 for each column.
    double eps0_ratio = 1.0 / 64.0;
    /// Repetitions T(eta) = 2 * ceil(boost_c * ln(1/eta)) + 1.
    double boost_c = 24.0;
    /// Use the Hadamard transform instead of the DFT when d is a power of two.
    bool use_hadamard = false;
    /// Measurement-basis source for every copy (empty: Haar).
    BasisSource basis_source;
};

/// Column estimator plugged into learn_columns; the default is estimate_state.
using ColumnEstimator = std::function<StateEstimate(const StatePrep&, double eps0, Rng&)>;

/// Estimates each column (Y pre)|j>, j = 0..d-1. Total queries d * m * power.
ColumnEstimateMatrix learn_columns(const UnitaryAccess& access, const UnitaryMatrix& pre_rotation, double eps0,
                                   Rng& rng, const BaseConfig& config = {}, const ColumnEstimator& estimator = {});

/// Relative column phases Psi with V Psi^dag ~ Z (up to a global phase), from
/// V ~ Z Phi_V and G ~ Z F^dag Phi_G. psi_b is the coordinate-wise median of
/// P(a,b)/P(a,0) over rows a, with P = (G^dag V) ./ F, renormalized to |psi_b| = 1.
PhaseDiagonal fix_phases(const UnitaryMatrix& v, const UnitaryMatrix& g, const UnitaryMatrix& f);

struct BoostResult {
    UnitaryMatrix chosen;
    size_t index = 0;
    /// Candidates within 2 eps of the chosen one (itself included).
    int support = 0;
    /// No candidate reached ceil(0.505 T); the best-supported one was returned.
    bool degraded = false;
};

using UnitaryDistance = std::function<double(const UnitaryMatrix&, const UnitaryMatrix&)>;

/// Returns the first candidate within 2 eps of at least ceil(0.505 T) candidates.
BoostResult boost_confidence(const std::vector<UnitaryMatrix>& candidates, double eps,
                             const UnitaryDistance& metric = pudist);

/// T(eta) = 2 * ceil(c * ln(1/eta)) + 1.
int boost_repetitions(double eta, double boost_c);

struct BaseResult {
    UnitaryMatrix estimate;
    int repetitions = 0;
    bool degraded = false;
};

/// One unboosted run: columns of Y and Y F^dag, projection, phase fixing.
UnitaryMatrix base_estimate_once(const UnitaryAccess& access, double eps, Rng& rng, const BaseConfig& config = {});

/// The full estimator with median-trick boosting.
BaseResult base_estimate(const UnitaryAccess& access, double eps, double eta, Rng& rng,
                         const BaseConfig& config = {});

/// Queries base_estimate charges: T(eta) * 2 * d * m(eps) * power.
std::int64_t base_query_count(int d, double eps, double eta, int power, const BaseConfig& config = {});

}  // namespace utomo

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

#include <vector>

#include "utomo/unitary_core.hpp"

// Distances between unitary channels. Everything except the trace-based
// fidelities is a closed-form function of the spread: the length of the
// shortest arc of the unit circle holding every eigenvalue of U^dag V.

namespace utomo {

struct SpreadResult {
    double sigma = 0.0;       // in [0, 2pi)
    double arc_center = 0.0;  // midpoint of the minimal covering arc, in [0, 2pi)
};

/// Finite multiset of angles, each stored in [0, 2pi).
class PhaseSet {
   public:
    PhaseSet() = default;
    /// Angles are wrapped into [0, 2pi).
    explicit PhaseSet(std::vector<double> phases);

    const std::vector<double>& phases() const { return phases_; }
    size_t size() const { return phases_.size(); }
    bool empty() const { return phases_.empty(); }

    /// Every phase shifted by tau (mod 2pi).
    PhaseSet shifted(double tau) const;

   private:
    std::vector<double> phases_;
};

/// Minimal covering arc of a set of angles.
SpreadResult spread_of_phases(const std::vector<double>& phases);

/// Eigenphases of U^dag V in (-pi, pi].
std::vector<double> relative_phases(const UnitaryMatrix& u, const UnitaryMatrix& v);

SpreadResult spread(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// ||U(U) - U(V)||_diamond = 2 sin(sigma/2) for sigma < pi, else 2.
double diamond_norm(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// The diamond-norm *distance*, half of diamond_norm; lies in [0, 1].
double diamond_distance(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// min over unit-modulus phi of ||phi U - V||_op = 2 sin(sigma/4).
double pudist(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// Intrinsic operator-norm Lie metric modulo global phase: sigma/2.
double lie_dist(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// Lie metric without the phase minimization: the largest |eigenphase| of U^dag V.
double lie_dist_nonprojective(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// 1 - |Tr(U^dag V)/d|^2.
double ent_infidelity(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// (1/sqrt(2d)) min_phi ||U - phi V||_F = sqrt(1 - |Tr(U^dag V)|/d).
double frob_phase_metric(const UnitaryMatrix& u, const UnitaryMatrix& v);

/// Circular Hausdorff distance between A + tau and B, minimized over tau.
/// Throws EmptySetError if either set is empty.
double hausdorff_phase_dist(const PhaseSet& a, const PhaseSet& b);

/// Plain circular Hausdorff distance (no shift).
double circular_hausdorff(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace utomo

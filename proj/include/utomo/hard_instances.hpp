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

#include "utomo/bootstrap.hpp"

// Lower-bound constructions: reflection nets, fractional reflections, the
// controlled-reflection gadget, ancilla truncation, and identification.

namespace utomo {

/// U diag(+1 x floor(d/2), -1 x floor(d/2), +1 x (d mod 2)) U^dag for Haar U.
UnitaryMatrix sample_reflection(int d, Rng& rng);

/// ||R^2 - I||_op <= tol and ||R - R^dag||_op <= tol.
bool is_reflection(const UnitaryMatrix& r, double tol = 1e-10);

struct ReflectionNet {
    std::vector<UnitaryMatrix> elements;
    double separation = 0.0;
    /// The requested size was not reached.
    bool partial = false;
    std::int64_t attempts = 0;

    /// Smallest pairwise diamond norm; +inf for fewer than two elements.
    double min_pairwise() const;
};

/// Greedy rejection packing of sample_reflection draws.
ReflectionNet build_net(int d, double target_sep, int target_n, std::int64_t max_attempts, Rng& rng);

/// Greedy packing over a fixed candidate list, in order.
ReflectionNet build_net_from(const std::vector<UnitaryMatrix>& candidates, double target_sep);

/// The Pauli reflections X, Y, Z.
std::vector<UnitaryMatrix> pauli_reflections();

/// R^alpha = (I + R)/2 + e^{-i pi alpha} (I - R)/2 for alpha in [-1, 1].
UnitaryMatrix frac_reflection(const UnitaryMatrix& r, double alpha);

enum class GadgetSign { kPlus, kMinus };

/// gamma = cos(alpha pi / 2) / (cos(alpha pi / 2) + sin(alpha pi / 2)).
double gadget_gamma(double alpha);

/// P^{+-}_alpha = [[sqrt g, +-i sqrt(1-g)], [sqrt(1-g), -+i sqrt g]].
Matrix gadget_matrix(double alpha, GadgetSign sign);

/// e^{+-i pi alpha/2} / (cos(alpha pi/2) + sin(alpha pi/2)).
Complex gadget_amplitude(double alpha, GadgetSign sign);

struct GadgetResult {
    /// Ancilla-major: entry a * d + i for ancilla a, system i.
    Vector full_state;
    /// Ancilla-|0> block, unnormalized.
    Vector postselected;
    Complex nu;
};

/// Simulates (P x I) cR (P x I) on |0>|psi>, controlled on ancilla |1>.
GadgetResult gadget_apply(const UnitaryMatrix& r, double alpha, GadgetSign sign, const Vector& psi);

/// sqrt(sum_{|b| > K} gamma^{Q-|b|} (1-gamma)^{|b|}) over Q-bit strings b.
/// Returns 0 for K >= Q.
double ancilla_truncation_error(int q, double gamma, int k);

/// exp(-k^2 (1-gamma) Q / (2 (2 + k))) with k = K / ((1-gamma) Q).
double truncation_chernoff_bound(int q, double gamma, int k);

/// ceil(40 + 40 (1-gamma) Q).
int truncation_cutoff(int q, double gamma);

/// min(1, binom(Q + d^2 - 1, Q) / N).
double identification_bound(std::int64_t q, int d, std::int64_t n);

/// floor(1/(8 eps)); the hidden unitary is R^{1/n}.
int identification_power(double eps);

struct NearestResult {
    size_t index = 0;
    double distance = 0.0;
    /// Another element is equally near within 1e-12; the lowest index won.
    bool tie = false;
};

/// Diamond-nearest element, lowest index on ties.
NearestResult nearest_net_element(const ReflectionNet& net, const UnitaryMatrix& u);

/// Estimates the hidden unitary behind an oracle to accuracy eps with failure eta.
using UnitaryEstimator = std::function<UnitaryMatrix(QueryOracle& oracle, double eps, double eta, Rng& rng)>;

/// Bootstrap with the given base.
UnitaryEstimator bootstrap_estimator(BaseEstimator base);

struct IdentifyResult {
    NearestResult nearest;
    UnitaryMatrix powered;
};

/// Estimates Z = R^{1/n} for n = identification_power(eps), raises the
/// estimate to the n-th power and returns the nearest net element.
IdentifyResult identify_via_powering(QueryOracle& oracle, const ReflectionNet& net, double eps, double eta,
                                     const UnitaryEstimator& estimator, Rng& rng);

}  // namespace utomo

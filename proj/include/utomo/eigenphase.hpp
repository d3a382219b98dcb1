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
#include <vector>

#include "utomo/channel_metrics.hpp"

// Eigenphase estimation up to a global shift: a controlled-SWAP gadget turns
// an eigenphase difference into a qubit phase, iterative phase estimation
// reads it out, and coupon collection over random eigenvectors covers the
// spectrum.

namespace utomo {

/// Calibrated constants. See tools/calibrate.
inline constexpr double kDefaultCPe = 1.0;
inline constexpr double kDefaultCCc = 4.0;
/// Pinned C in queries <= C (d/eps) log^2 d.
inline constexpr double kEigenphaseQueryConstant = 150.0;

/// Gadget on a fixed eigenvector pair with hidden phase gap delta = beta - alpha.
class PhaseDiffSampler {
   public:
    PhaseDiffSampler(double delta, std::int64_t& ledger) : delta_(delta), ledger_(&ledger) {}

    /// One gadget run with Z^(2^k), then diag(1, e^{i omega}), Hadamard and a
    /// measurement. Returns the bit; P(0) = cos^2((2^k delta + omega)/2).
    /// Charges 2^k queries.
    int run(int k, double omega, Rng& rng) const;

    std::int64_t queries_used() const { return *ledger_; }

   private:
    double delta_;
    std::int64_t* ledger_;
};

/// M = ceil(log2(1/eps)) + 2.
int phase_bits(double eps);

/// ceil(c_pe ln(1/eta)), at least 1.
int phase_repetitions(double eta, double c_pe);

/// Iterative phase estimation, least significant bit first, with a per-bit
/// majority vote. Returns an angle in [0, 2pi).
double phase_diff_estimate(const PhaseDiffSampler& sampler, double eps, double eta, Rng& rng,
                           double c_pe = kDefaultCPe);

/// Queries one phase_diff_estimate call charges: R (2^M - 1).
std::int64_t phase_diff_queries(double eps, double eta, double c_pe = kDefaultCPe);

/// Holds the hidden unitary and charges queries for every gadget run.
class EigenphaseSimulator {
   public:
    explicit EigenphaseSimulator(const UnitaryMatrix& hidden);

    int dim() const { return static_cast<int>(phases_.size()); }
    std::int64_t queries_used() const { return ledger_; }

    /// Sampler for the eigenvector pair (a, b) of an eigenbasis of Z.
    PhaseDiffSampler pair_sampler(int a, int b);

   private:
    std::vector<double> phases_;
    std::int64_t ledger_ = 0;
};

struct EigenphaseConfig {
    double c_pe = kDefaultCPe;
    double c_cc = kDefaultCCc;
    /// Total failure budget, split evenly over the coupon draws.
    double failure = 0.05;
};

/// ceil(c_cc d ln d), at least 1.
int coupon_draws(int d, double c_cc);

struct EigenphaseResult {
    PhaseSet estimate;
    /// Recorded differences before clustering.
    std::vector<double> recorded;
    int reference = 0;
    std::int64_t queries = 0;
};

/// Draws a reference eigenindex once, then collects phase differences for
/// uniformly drawn eigenindices and clusters them at radius eps.
EigenphaseResult estimate_eigenphases(EigenphaseSimulator& sim, double eps, Rng& rng,
                                      const EigenphaseConfig& config = {});

/// Single-linkage clustering on the circle; each cluster becomes the midpoint
/// of its covering arc.
std::vector<double> cluster_phases(std::vector<double> phases, double radius);

struct SwapGadgetState {
    /// Qubit-major: index q * d^2 + i * d + j for qubit q, registers i and j.
    Vector full_state;
    /// Reduced density matrix of the control qubit.
    Matrix qubit_rho;
};

/// Statevector simulation of: |+> on the control, controlled-SWAP, Z^power on
/// register 1, controlled-SWAP, starting from |a> (x) |b>.
SwapGadgetState simulate_swap_gadget(const UnitaryMatrix& z, const Vector& a, const Vector& b, int power);

}  // namespace utomo

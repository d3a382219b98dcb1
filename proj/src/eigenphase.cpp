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

#include "utomo/eigenphase.hpp"

#include <algorithm>
#include <cmath>

namespace utomo {

int PhaseDiffSampler::run(int k, double omega, Rng& rng) const {
    if (k < 0 || k > 40) {
        throw InvariantError("PhaseDiffSampler: power exponent out of range");
    }
    const std::int64_t power = std::int64_t{1} << k;
    *ledger_ += power;
    // 2^k delta mod 2pi, computed without forming the large product directly.
    double phase = wrap_2pi(std::ldexp(delta_, k));
    double c = std::cos((phase + omega) / 2);
    std::bernoulli_distribution zero(c * c);
    return zero(rng) ? 0 : 1;
}

int phase_bits(double eps) {
    if (!(eps > 0) || !(eps < kPi)) {
        throw InvariantError("phase_bits: eps must lie in (0, pi)");
    }
    return static_cast<int>(std::ceil(std::log2(1.0 / eps) - 1e-12)) + 2;
}

int phase_repetitions(double eta, double c_pe) {
    if (!(eta > 0) || !(eta < 1)) {
        throw InvariantError("phase_repetitions: eta must lie in (0, 1)");
    }
    return std::max(1, static_cast<int>(std::ceil(c_pe * std::log(1.0 / eta) - 1e-12)));
}

double phase_diff_estimate(const PhaseDiffSampler& sampler, double eps, double eta, Rng& rng, double c_pe) {
    const int m = phase_bits(eps);
    const int reps = phase_repetitions(eta, c_pe);
    // Bits found so far, as the fraction 0.x_{k+1} x_{k+2} ... x_M.
    double tail = 0.0;
    for (int k = m - 1; k >= 0; --k) {
        const double omega = -kPi * tail;
        int ones = 0;
        for (int r = 0; r < reps; ++r) {
            ones += sampler.run(k, omega, rng);
        }
        // Ties go to 0.
        const int bit = 2 * ones > reps ? 1 : 0;
        tail = 0.5 * (bit + tail);
    }
    return wrap_2pi(kTwoPi * tail);
}

std::int64_t phase_diff_queries(double eps, double eta, double c_pe) {
    const int m = phase_bits(eps);
    return static_cast<std::int64_t>(phase_repetitions(eta, c_pe)) * ((std::int64_t{1} << m) - 1);
}

EigenphaseSimulator::EigenphaseSimulator(const UnitaryMatrix& hidden) : phases_(eig_unitary(hidden).phases) {}

PhaseDiffSampler EigenphaseSimulator::pair_sampler(int a, int b) {
    if (a < 0 || b < 0 || a >= dim() || b >= dim()) {
        throw InvariantError("pair_sampler: eigenindex out of range");
    }
    return PhaseDiffSampler(phases_[b] - phases_[a], ledger_);
}

int coupon_draws(int d, double c_cc) {
    if (d < 1) {
        throw InvariantError("coupon_draws: d must be positive");
    }
    return std::max(1, static_cast<int>(std::ceil(c_cc * d * std::log(static_cast<double>(d)) - 1e-12)));
}

std::vector<double> cluster_phases(std::vector<double> phases, double radius) {
    if (phases.empty()) {
        return {};
    }
    for (double& p : phases) {
        p = wrap_2pi(p);
    }
    std::sort(phases.begin(), phases.end());
    const size_t n = phases.size();

    // Start the sweep after the largest gap that exceeds the radius; if none
    // does, everything is one cluster.
    size_t start = 0;
    double widest = -1.0;
    for (size_t i = 0; i < n; ++i) {
        double gap = (i + 1 < n) ? phases[i + 1] - phases[i] : phases[0] + kTwoPi - phases[n - 1];
        if (gap > widest) {
            widest = gap;
            start = (i + 1) % n;
        }
    }
    if (widest <= radius) {
        return {spread_of_phases(phases).arc_center};
    }

    std::vector<double> out;
    std::vector<double> members{phases[start]};
    for (size_t step = 1; step <= n; ++step) {
        size_t i = (start + step) % n;
        size_t prev = (start + step - 1) % n;
        double gap = wrap_2pi(phases[i] - phases[prev]);
        if (step == n || gap > radius) {
            out.push_back(spread_of_phases(members).arc_center);
            members.clear();
        }
        if (step < n) {
            members.push_back(phases[i]);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

EigenphaseResult estimate_eigenphases(EigenphaseSimulator& sim, double eps, Rng& rng, const EigenphaseConfig& config) {
    if (!(eps > 0) || !(eps < kPi / 4)) {
        throw InvariantError("estimate_eigenphases: eps must lie in (0, pi/4)");
    }
    const int d = sim.dim();
    if (!(config.failure > 0) || !(config.failure < 1)) {
        throw InvariantError("estimate_eigenphases: failure budget must lie in (0, 1)");
    }
    const int draws = coupon_draws(d, config.c_cc);
    const double eta = config.failure / draws;
    const std::int64_t before = sim.queries_used();

    std::uniform_int_distribution<int> pick(0, d - 1);
    EigenphaseResult out;
    out.reference = pick(rng);
    out.recorded.reserve(draws);
    for (int t = 0; t < draws; ++t) {
        int b = pick(rng);
        out.recorded.push_back(phase_diff_estimate(sim.pair_sampler(out.reference, b), eps, eta, rng, config.c_pe));
    }
    out.estimate = PhaseSet(cluster_phases(out.recorded, eps));
    out.queries = sim.queries_used() - before;
    return out;
}

SwapGadgetState simulate_swap_gadget(const UnitaryMatrix& z, const Vector& a, const Vector& b, int power) {
    const int d = z.dim();
    if (a.size() != d || b.size() != d) {
        throw DimensionMismatch("simulate_swap_gadget: register dimension mismatch");
    }
    if (power < 1) {
        throw InvariantError("simulate_swap_gadget: power must be positive");
    }
    const Eigen::Index dd = static_cast<Eigen::Index>(d) * d;
    const Matrix zp = z.pow(power).matrix();

    // Registers as d x d matrices M(i, j) = <i|<j| psi>.
    Matrix reg = a * b.transpose();
    Matrix branch[2] = {reg / std::sqrt(2.0), reg / std::sqrt(2.0)};
    // Branch 1: swap, apply Z^p on register 1, swap back.
    branch[1] = branch[1].transpose().eval();
    for (auto& m : branch) {
        m = (zp * m).eval();
    }
    branch[1] = branch[1].transpose().eval();

    SwapGadgetState out;
    out.full_state.resize(2 * dd);
    for (int q = 0; q < 2; ++q) {
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                out.full_state(q * dd + i * d + j) = branch[q](i, j);
            }
        }
    }
    out.qubit_rho.resize(2, 2);
    for (int q = 0; q < 2; ++q) {
        for (int r = 0; r < 2; ++r) {
            out.qubit_rho(q, r) = out.full_state.segment(r * dd, dd).dot(out.full_state.segment(q * dd, dd));
        }
    }
    return out;
}

}  // namespace utomo

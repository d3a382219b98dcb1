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

#include "utomo/channel_metrics.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace utomo {

PhaseSet::PhaseSet(std::vector<double> phases) : phases_(std::move(phases)) {
    for (double& p : phases_) {
        p = wrap_2pi(p);
    }
}

PhaseSet PhaseSet::shifted(double tau) const {
    std::vector<double> out = phases_;
    for (double& p : out) {
        p += tau;
    }
    return PhaseSet(std::move(out));
}

SpreadResult spread_of_phases(const std::vector<double>& phases) {
    SpreadResult out;
    if (phases.empty()) {
        return out;
    }
    std::vector<double> sorted;
    sorted.reserve(phases.size());
    for (double p : phases) {
        sorted.push_back(wrap_2pi(p));
    }
    std::sort(sorted.begin(), sorted.end());
    const size_t n = sorted.size();

    // The gap from sorted[k] forward to sorted[k+1] (wrapping at the end).
    size_t best = n - 1;
    double best_gap = sorted[0] + kTwoPi - sorted[n - 1];
    for (size_t k = 0; k + 1 < n; ++k) {
        double gap = sorted[k + 1] - sorted[k];
        if (gap > best_gap) {
            best_gap = gap;
            best = k;
        }
    }
    out.sigma = std::max(0.0, kTwoPi - best_gap);
    double arc_start = sorted[(best + 1) % n];
    out.arc_center = wrap_2pi(arc_start + out.sigma / 2);
    return out;
}

std::vector<double> relative_phases(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    if (u.dim() != v.dim()) {
        throw DimensionMismatch("relative_phases: dimension mismatch");
    }
    Matrix w = u.matrix().adjoint() * v.matrix();
    std::vector<double> out(u.dim());
    if (u.dim() == 1) {
        out[0] = std::arg(w(0, 0));
        return out;
    }
    Eigen::ComplexEigenSolver<Matrix> solver(w, false);
    if (solver.info() != Eigen::Success) {
        throw DecompositionFailure("relative_phases: eigensolver did not converge");
    }
    for (int k = 0; k < u.dim(); ++k) {
        out[k] = std::arg(solver.eigenvalues()(k));
    }
    return out;
}

SpreadResult spread(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    return spread_of_phases(relative_phases(u, v));
}

double diamond_norm(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    double sigma = spread(u, v).sigma;
    return sigma < kPi ? 2.0 * std::sin(sigma / 2) : 2.0;
}

double diamond_distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    return 0.5 * diamond_norm(u, v);
}

double pudist(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    return 2.0 * std::sin(spread(u, v).sigma / 4);
}

double lie_dist(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    return spread(u, v).sigma / 2;
}

double lie_dist_nonprojective(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    double out = 0.0;
    for (double theta : relative_phases(u, v)) {
        out = std::max(out, std::abs(theta));
    }
    return out;
}

namespace {

Complex trace_overlap(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    if (u.dim() != v.dim()) {
        throw DimensionMismatch("trace overlap: dimension mismatch");
    }
    return (u.matrix().adjoint() * v.matrix()).trace();
}

}  // namespace

double ent_infidelity(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    double f = std::abs(trace_overlap(u, v)) / u.dim();
    return std::clamp(1.0 - f * f, 0.0, 1.0);
}

double frob_phase_metric(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    double f = std::abs(trace_overlap(u, v)) / u.dim();
    return std::sqrt(std::max(0.0, 1.0 - f));
}

namespace {

double distance_to_set(double x, const std::vector<double>& set) {
    double best = kPi;
    for (double s : set) {
        best = std::min(best, circular_distance(x, s));
    }
    return best;
}

// Circular midpoints between consecutive sorted angles (including the wrap).
std::vector<double> gap_midpoints(std::vector<double> sorted) {
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> mids;
    const size_t n = sorted.size();
    for (size_t k = 0; k < n; ++k) {
        double lo = sorted[k];
        double hi = (k + 1 < n) ? sorted[k + 1] : sorted[0] + kTwoPi;
        mids.push_back(wrap_2pi(0.5 * (lo + hi)));
    }
    return mids;
}

}  // namespace

double circular_hausdorff(const std::vector<double>& a, const std::vector<double>& b) {
    double out = 0.0;
    for (double x : a) {
        out = std::max(out, distance_to_set(x, b));
    }
    for (double y : b) {
        out = std::max(out, distance_to_set(y, a));
    }
    return out;
}

double hausdorff_phase_dist(const PhaseSet& a, const PhaseSet& b) {
    if (a.empty() || b.empty()) {
        throw EmptySetError("hausdorff_phase_dist: phase sets must be nonempty");
    }
    const auto& pa = a.phases();
    const auto& pb = b.phases();

    // f(tau) = d_H(A + tau, B) is a max of piecewise-linear terms with slopes
    // +-1. Its breakpoints are the alignments b - a and the points where a
    // term switches nearest neighbour (gap midpoints). Between two adjacent
    // breakpoints f = max(tau + c+, -tau + c-), whose minimum over [l, r] is
    // (f(l) + f(r) - (r - l)) / 2 exactly.
    std::vector<double> breaks;
    const auto mid_a = gap_midpoints(pa);
    const auto mid_b = gap_midpoints(pb);
    for (double x : pa) {
        for (double y : pb) {
            breaks.push_back(wrap_2pi(y - x));
        }
        for (double m : mid_b) {
            breaks.push_back(wrap_2pi(m - x));
        }
    }
    for (double y : pb) {
        for (double m : mid_a) {
            breaks.push_back(wrap_2pi(y - m));
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    std::vector<double> shifted(pa.size());
    auto objective = [&](double tau) {
        for (size_t k = 0; k < pa.size(); ++k) {
            shifted[k] = pa[k] + tau;
        }
        return circular_hausdorff(shifted, pb);
    };

    std::vector<double> values(breaks.size());
    double best = kPi;
    for (size_t k = 0; k < breaks.size(); ++k) {
        values[k] = objective(breaks[k]);
        best = std::min(best, values[k]);
    }
    const size_t n = breaks.size();
    for (size_t k = 0; k < n; ++k) {
        double l = breaks[k];
        double r = (k + 1 < n) ? breaks[k + 1] : breaks[0] + kTwoPi;
        double width = r - l;
        if (width <= 0) {
            continue;
        }
        double interior = 0.5 * (values[k] + values[(k + 1) % n] - width);
        best = std::min(best, std::max(0.0, interior));
    }
    return best;
}

}  // namespace utomo

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

#include "utomo/state_tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace utomo {

namespace {

void check_prep(const StatePrep& prep) {
    if (prep.access == nullptr) {
        throw InvariantError("StatePrep: no oracle access");
    }
    if (prep.pre.dim() != prep.dim()) {
        throw DimensionMismatch("StatePrep: pre-rotation dimension mismatch");
    }
    if (prep.column < 0 || prep.column >= prep.dim()) {
        throw InvariantError("StatePrep: column out of range");
    }
}

UnitaryMatrix draw_basis(const BasisSource& source, int d, Rng& rng) {
    return source ? source(d, rng) : haar_random(d, rng);
}

template <typename Sink>
void run_copies(const StatePrep& prep, std::int64_t m, Rng& rng, const BasisSource& source, Sink&& sink) {
    check_prep(prep);
    if (m < 1) {
        throw InvariantError("collect_samples: m must be at least 1");
    }
    const int d = prep.dim();
    UnitaryMatrix v0 = prep.pre * basis_shift(d, prep.column);
    for (std::int64_t j = 0; j < m; ++j) {
        UnitaryMatrix basis = draw_basis(source, d, rng);
        int k = prep.access->measure(v0, basis.adjoint());
        sink(std::move(basis), k);
    }
}

}  // namespace

PovmSampleSet collect_samples(const StatePrep& prep, std::int64_t m, Rng& rng, const BasisSource& source) {
    PovmSampleSet out;
    out.dim = prep.dim();
    out.outcomes.reserve(static_cast<size_t>(std::max<std::int64_t>(m, 0)));
    run_copies(prep, m, rng, source, [&](UnitaryMatrix basis, int k) {
        out.outcomes.push_back(PovmOutcome{std::move(basis), k});
    });
    return out;
}

PovmMoment collect_moment(const StatePrep& prep, std::int64_t m, Rng& rng, const BasisSource& source) {
    PovmMoment out(prep.dim());
    run_copies(prep, m, rng, source, [&](const UnitaryMatrix& basis, int k) { out.add(basis.matrix().col(k)); });
    return out;
}

Matrix build_L(const PovmMoment& moment) {
    if (moment.count < 1) {
        throw InsufficientData("build_L: no samples");
    }
    const auto d = moment.sum.rows();
    Matrix l = (static_cast<double>(d + 1) / static_cast<double>(moment.count)) * moment.sum -
               Matrix::Identity(d, d);
    return 0.5 * (l + l.adjoint());
}

Matrix build_L(const PovmSampleSet& samples) {
    PovmMoment moment(samples.dim);
    for (const auto& o : samples.outcomes) {
        moment.add(o.vector());
    }
    return build_L(moment);
}

RealVector project_to_simplex(const RealVector& x) {
    const auto n = x.size();
    std::vector<double> mu(x.data(), x.data() + n);
    std::sort(mu.begin(), mu.end(), std::greater<>());
    double cumulative = 0.0;
    double tau = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        cumulative += mu[j];
        double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
        if (mu[j] - candidate > 0) {
            tau = candidate;
        }
    }
    return (x.array() - tau).max(0.0).matrix();
}

StateEstimate round_to_state(const Matrix& l) {
    Matrix herm = 0.5 * (l + l.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
    if (solver.info() != Eigen::Success) {
        throw DecompositionFailure("round_to_state: eigensolver did not converge");
    }
    RealVector projected = project_to_simplex(solver.eigenvalues());

    // Largest projected weight; ties resolve to the lowest index.
    Eigen::Index top = 0;
    for (Eigen::Index k = 1; k < projected.size(); ++k) {
        if (projected(k) > projected(top)) {
            top = k;
        }
    }
    StateEstimate out;
    for (Eigen::Index k = 0; k < projected.size(); ++k) {
        if (k != top && std::abs(projected(k) - projected(top)) <= 1e-12) {
            out.top_tie = true;
        }
    }

    Vector v = solver.eigenvectors().col(top);
    v /= v.norm();
    Eigen::Index big = 0;
    v.cwiseAbs().maxCoeff(&big);
    v *= std::conj(v(big)) / std::abs(v(big));
    v(big) = std::abs(v(big));
    out.vector = std::move(v);
    return out;
}

std::int64_t state_sample_count(int d, double eps0, double c_state) {
    if (!(eps0 > 0) || eps0 > 1) {
        throw InvariantError("state_sample_count: eps0 must lie in (0, 1]");
    }
    return static_cast<std::int64_t>(std::ceil(c_state * d / eps0 - 1e-9));
}

StateEstimate estimate_state(const StatePrep& prep, double eps0, Rng& rng, double c_state, const BasisSource& source) {
    std::int64_t m = state_sample_count(prep.dim(), eps0, c_state);
    PovmMoment moment = collect_moment(prep, m, rng, source);
    StateEstimate out = round_to_state(build_L(moment));
    out.samples_used = m;
    return out;
}

double state_infidelity(const Vector& z, const Vector& u) {
    return std::max(0.0, 1.0 - std::norm(z.dot(u)));
}

}  // namespace utomo

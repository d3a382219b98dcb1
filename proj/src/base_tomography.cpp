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

#include "utomo/base_tomography.hpp"

#include <algorithm>
#include <cmath>

namespace utomo {

PhaseDiagonal::PhaseDiagonal(Vector entries) : entries_(std::move(entries)) {
    for (Eigen::Index k = 0; k < entries_.size(); ++k) {
        if (std::abs(std::abs(entries_(k)) - 1.0) > 1e-10) {
            throw InvariantError("PhaseDiagonal: entries must have unit modulus");
        }
    }
}

UnitaryMatrix PhaseDiagonal::as_unitary() const {
    return UnitaryMatrix::from_product(entries_.asDiagonal().toDenseMatrix());
}

ColumnEstimateMatrix learn_columns(const UnitaryAccess& access, const UnitaryMatrix& pre_rotation, double eps0,
                                   Rng& rng, const BaseConfig& config, const ColumnEstimator& estimator) {
    if (!(eps0 > 0) || eps0 > 1) {
        throw InvariantError("learn_columns: eps0 must lie in (0, 1]");
    }
    const int d = access.dim();
    ColumnEstimateMatrix out{Matrix(d, d)};
    for (int j = 0; j < d; ++j) {
        StatePrep prep{&access, pre_rotation, j};
        StateEstimate est = estimator ? estimator(prep, eps0, rng)
                                      : estimate_state(prep, eps0, rng, config.c_state, config.basis_source);
        out.columns.col(j) = est.vector;
    }
    return out;
}

namespace {

double median(std::vector<double> xs) {
    const size_t n = xs.size();
    std::sort(xs.begin(), xs.end());
    return (n % 2 == 1) ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

PhaseDiagonal fix_phases(const UnitaryMatrix& v, const UnitaryMatrix& g, const UnitaryMatrix& f) {
    const int d = v.dim();
    if (g.dim() != d || f.dim() != d) {
        throw DimensionMismatch("fix_phases: dimension mismatch");
    }
    Matrix p = (g.matrix().adjoint() * v.matrix()).cwiseQuotient(f.matrix());

    Vector psi(d);
    psi(0) = 1.0;
    std::vector<double> re;
    std::vector<double> im;
    for (int b = 1; b < d; ++b) {
        re.clear();
        im.clear();
        for (int a = 0; a < d; ++a) {
            if (std::abs(p(a, 0)) == 0.0) {
                continue;
            }
            Complex ratio = p(a, b) / p(a, 0);
            re.push_back(ratio.real());
            im.push_back(ratio.imag());
        }
        Complex med = re.empty() ? Complex(1.0) : Complex(median(re), median(im));
        double mag = std::abs(med);
        psi(b) = mag > 0 ? med / mag : Complex(1.0);
    }
    return PhaseDiagonal(std::move(psi));
}

BoostResult boost_confidence(const std::vector<UnitaryMatrix>& candidates, double eps, const UnitaryDistance& metric) {
    if (candidates.empty()) {
        throw InsufficientData("boost_confidence: no candidates");
    }
    const size_t t = candidates.size();
    const int needed = static_cast<int>(std::ceil(0.505 * static_cast<double>(t) - 1e-12));

    std::vector<std::vector<double>> dist(t, std::vector<double>(t, 0.0));
    for (size_t i = 0; i < t; ++i) {
        for (size_t j = i + 1; j < t; ++j) {
            dist[i][j] = dist[j][i] = metric(candidates[i], candidates[j]);
        }
    }
    size_t best = 0;
    int best_support = -1;
    for (size_t i = 0; i < t; ++i) {
        int support = 0;
        for (size_t j = 0; j < t; ++j) {
            if (dist[i][j] <= 2 * eps) {
                ++support;
            }
        }
        if (support >= needed) {
            return BoostResult{candidates[i], i, support, false};
        }
        if (support > best_support) {
            best_support = support;
            best = i;
        }
    }
    return BoostResult{candidates[best], best, best_support, true};
}

int boost_repetitions(double eta, double boost_c) {
    if (!(eta > 0) || !(eta < 1)) {
        throw InvariantError("boost_repetitions: eta must lie in (0, 1)");
    }
    return 2 * static_cast<int>(std::ceil(boost_c * std::log(1.0 / eta) - 1e-12)) + 1;
}

namespace {

UnitaryMatrix fourier_for(int d, const BaseConfig& config) {
    bool pow2 = d >= 1 && (d & (d - 1)) == 0;
    return (config.use_hadamard && pow2) ? hadamard_matrix(d) : dft_matrix(d);
}

double column_eps0(double eps, const BaseConfig& config) {
    return std::min(1.0, config.eps0_ratio * eps * eps);
}

}  // namespace

UnitaryMatrix base_estimate_once(const UnitaryAccess& access, double eps, Rng& rng, const BaseConfig& config) {
    const int d = access.dim();
    const UnitaryMatrix f = fourier_for(d, config);
    const double eps0 = column_eps0(eps, config);

    UnitaryMatrix v = project_to_unitary(learn_columns(access, UnitaryMatrix::identity(d), eps0, rng, config).columns);
    UnitaryMatrix g = project_to_unitary(learn_columns(access, f.adjoint(), eps0, rng, config).columns);
    PhaseDiagonal psi = fix_phases(v, g, f);
    return v * psi.as_unitary().adjoint();
}

BaseResult base_estimate(const UnitaryAccess& access, double eps, double eta, Rng& rng, const BaseConfig& config) {
    if (!(eps > 0)) {
        throw InvariantError("base_estimate: eps must be positive");
    }
    const int reps = boost_repetitions(eta, config.boost_c);
    std::vector<UnitaryMatrix> candidates;
    candidates.reserve(reps);
    for (int r = 0; r < reps; ++r) {
        candidates.push_back(base_estimate_once(access, eps, rng, config));
    }
    BoostResult boosted = boost_confidence(candidates, eps);
    return BaseResult{boosted.chosen, reps, boosted.degraded};
}

std::int64_t base_query_count(int d, double eps, double eta, int power, const BaseConfig& config) {
    std::int64_t m = state_sample_count(d, column_eps0(eps, config), config.c_state);
    return static_cast<std::int64_t>(boost_repetitions(eta, config.boost_c)) * 2 * d * m * power;
}

}  // namespace utomo

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

#include "utomo/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace utomo {

BaseEstimator tomography_base(double base_eps, BaseConfig config) {
    return [base_eps, config = std::move(config)](const UnitaryAccess& access, double eta_j, Rng& rng) {
        return base_estimate(access, base_eps, eta_j, rng, config).estimate;
    };
}

double default_base_eps() { return (2.0 / kPi) / 200.0; }

int bootstrap_rounds(double eps) {
    if (!(eps > 0) || !(eps < 1)) {
        throw InvariantError("bootstrap: eps must lie in (0, 1)");
    }
    return static_cast<int>(std::ceil(std::log2(1.0 / eps) - 1e-12));
}

double bootstrap_eta(double eta, int j, int rounds) { return eta * std::pow(8.0, j - rounds - 1); }

namespace {

UnitaryMatrix centered(const UnitaryMatrix& u) {
    const int d = u.dim();
    SpreadResult s = spread_of_phases(relative_phases(UnitaryMatrix::identity(d), u));
    return u.rephased(-s.arc_center);
}

}  // namespace

BootstrapTrace bootstrap(QueryOracle& oracle, double eps, double eta, const BaseEstimator& base, Rng& rng,
                         const BootstrapOptions& options) {
    if (!(eta > 0) || !(eta < 1)) {
        throw InvariantError("bootstrap: eta must lie in (0, 1)");
    }
    if (options.power_base < 2) {
        throw InvariantError("bootstrap: power base must be at least 2");
    }
    const int rounds = bootstrap_rounds(eps);
    const int d = oracle.dim();

    BootstrapTrace trace{{}, UnitaryMatrix::identity(d)};
    UnitaryMatrix v = UnitaryMatrix::identity(d);
    long long power = 1;
    for (int j = 0; j <= rounds; ++j) {
        if (power > (1LL << 30)) {
            throw InvariantError("bootstrap: power overflow");
        }
        const double eta_j = bootstrap_eta(eta, j, rounds);
        const std::int64_t before = oracle.queries_used();

        UnitaryAccess access = UnitaryAccess::residual(oracle, v, static_cast<int>(power));
        UnitaryMatrix u = centered(base(access, eta_j, rng));
        UnitaryMatrix next = frac_power(u, 1.0 / static_cast<double>(power)) * v;

        trace.iterates.push_back(
            BootstrapStep{j, static_cast<int>(power), eta_j, u, next, oracle.queries_used() - before});
        v = next;
        power *= options.power_base;
    }
    trace.final_estimate = v;
    return trace;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw InsufficientData("loglog_slope: need at least two paired points");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0;
    double my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) {
            throw InvariantError("loglog_slope: values must be positive");
        }
        mx += std::log(x[i]);
        my += std::log(y[i]);
    }
    mx /= n;
    my /= n;
    double sxy = 0;
    double sxx = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double dx = std::log(x[i]) - mx;
        sxy += dx * (std::log(y[i]) - my);
        sxx += dx * dx;
    }
    if (sxx == 0) {
        throw InsufficientData("loglog_slope: x values are all equal");
    }
    return sxy / sxx;
}

double heisenberg_slope(const std::vector<ScalingPoint>& points) {
    std::map<double, std::vector<double>> cells;
    for (const auto& p : points) {
        cells[p.eps].push_back(p.queries);
    }
    if (cells.size() < 3) {
        throw InsufficientData("heisenberg_slope: need at least three distinct eps values");
    }
    std::vector<double> inv_eps;
    std::vector<double> q;
    for (auto& [e, qs] : cells) {
        std::sort(qs.begin(), qs.end());
        size_t n = qs.size();
        double med = (n % 2 == 1) ? qs[n / 2] : 0.5 * (qs[n / 2 - 1] + qs[n / 2]);
        inv_eps.push_back(1.0 / e);
        q.push_back(med);
    }
    return loglog_slope(inv_eps, q);
}

}  // namespace utomo

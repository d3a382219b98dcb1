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

#include "utomo/hard_instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace utomo {

UnitaryMatrix sample_reflection(int d, Rng& rng) {
    if (d < 2) {
        throw InvariantError("sample_reflection: d must be at least 2");
    }
    const int half = d / 2;
    RealVector signs = RealVector::Ones(d);
    signs.segment(half, half).setConstant(-1.0);
    UnitaryMatrix u = haar_random(d, rng);
    Matrix r = u.matrix() * signs.cast<Complex>().asDiagonal() * u.matrix().adjoint();
    return UnitaryMatrix::from_product(0.5 * (r + r.adjoint()));
}

bool is_reflection(const UnitaryMatrix& r, double tol) {
    const Matrix& m = r.matrix();
    const auto d = m.rows();
    return op_norm(m * m - Matrix::Identity(d, d)) <= tol && op_norm(m - m.adjoint()) <= tol;
}

double ReflectionNet::min_pairwise() const {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < elements.size(); ++i) {
        for (size_t j = i + 1; j < elements.size(); ++j) {
            best = std::min(best, diamond_norm(elements[i], elements[j]));
        }
    }
    return best;
}

namespace {

bool far_from_all(const std::vector<UnitaryMatrix>& accepted, const UnitaryMatrix& c, double sep) {
    for (const auto& e : accepted) {
        if (diamond_norm(e, c) < sep) {
            return false;
        }
    }
    return true;
}

}  // namespace

ReflectionNet build_net(int d, double target_sep, int target_n, std::int64_t max_attempts, Rng& rng) {
    if (!(target_sep > 0)) {
        throw InvariantError("build_net: separation must be positive");
    }
    ReflectionNet net;
    net.separation = target_sep;
    while (static_cast<int>(net.elements.size()) < target_n && net.attempts < max_attempts) {
        ++net.attempts;
        UnitaryMatrix c = sample_reflection(d, rng);
        if (far_from_all(net.elements, c, target_sep)) {
            net.elements.push_back(std::move(c));
        }
    }
    net.partial = static_cast<int>(net.elements.size()) < target_n;
    return net;
}

ReflectionNet build_net_from(const std::vector<UnitaryMatrix>& candidates, double target_sep) {
    ReflectionNet net;
    net.separation = target_sep;
    for (const auto& c : candidates) {
        ++net.attempts;
        if (!is_reflection(c)) {
            throw InvariantError("build_net_from: candidate is not a reflection");
        }
        if (far_from_all(net.elements, c, target_sep)) {
            net.elements.push_back(c);
        }
    }
    net.partial = net.elements.size() < candidates.size();
    return net;
}

std::vector<UnitaryMatrix> pauli_reflections() {
    Matrix x(2, 2), y(2, 2), z(2, 2);
    x << 0, 1, 1, 0;
    y << 0, -kI, kI, 0;
    z << 1, 0, 0, -1;
    return {UnitaryMatrix(x), UnitaryMatrix(y), UnitaryMatrix(z)};
}

UnitaryMatrix frac_reflection(const UnitaryMatrix& r, double alpha) {
    if (!is_reflection(r)) {
        throw InvariantError("frac_reflection: input is not a reflection");
    }
    if (alpha < -1 || alpha > 1) {
        throw InvariantError("frac_reflection: alpha must lie in [-1, 1]");
    }
    const auto d = r.dim();
    Matrix id = Matrix::Identity(d, d);
    Matrix m = 0.5 * (id + r.matrix()) + std::polar(1.0, -kPi * alpha) * 0.5 * (id - r.matrix());
    return UnitaryMatrix::from_product(std::move(m));
}

double gadget_gamma(double alpha) {
    double c = std::cos(alpha * kPi / 2);
    double s = std::sin(alpha * kPi / 2);
    return c / (c + s);
}

Matrix gadget_matrix(double alpha, GadgetSign sign) {
    if (!(alpha > 0) || alpha > 1) {
        throw InvariantError("gadget_matrix: alpha must lie in (0, 1]");
    }
    const double g = std::max(0.0, gadget_gamma(alpha));
    const double a = std::sqrt(g);
    const double b = std::sqrt(std::max(0.0, 1.0 - g));
    const double s = sign == GadgetSign::kPlus ? 1.0 : -1.0;
    Matrix p(2, 2);
    p << a, s * kI * b, b, -s * kI * a;
    return p;
}

Complex gadget_amplitude(double alpha, GadgetSign sign) {
    const double s = sign == GadgetSign::kPlus ? 1.0 : -1.0;
    return std::polar(1.0, s * kPi * alpha / 2) / (std::cos(alpha * kPi / 2) + std::sin(alpha * kPi / 2));
}

GadgetResult gadget_apply(const UnitaryMatrix& r, double alpha, GadgetSign sign, const Vector& psi) {
    if (!is_reflection(r)) {
        throw InvariantError("gadget_apply: input is not a reflection");
    }
    const int d = r.dim();
    if (psi.size() != d) {
        throw DimensionMismatch("gadget_apply: state dimension mismatch");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw InvariantError("gadget_apply: state must be normalized");
    }
    const Matrix p = gadget_matrix(alpha, sign);
    const Matrix id = Matrix::Identity(d, d);

    Matrix p_full = Matrix::Zero(2 * d, 2 * d);
    Matrix c_r = Matrix::Zero(2 * d, 2 * d);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            p_full.block(a * d, b * d, d, d) = p(a, b) * id;
        }
    }
    c_r.block(0, 0, d, d) = id;
    c_r.block(d, d, d, d) = r.matrix();

    Vector in = Vector::Zero(2 * d);
    in.head(d) = psi;
    GadgetResult out;
    out.full_state = p_full * (c_r * (p_full * in));
    out.postselected = out.full_state.head(d);
    out.nu = gadget_amplitude(alpha, sign);
    return out;
}

namespace {

double log_binom(double n, double k) { return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1); }

}  // namespace

double ancilla_truncation_error(int q, double gamma, int k) {
    if (q < 0 || k < 0) {
        throw InvariantError("ancilla_truncation_error: Q and K must be nonnegative");
    }
    if (gamma < 0 || gamma > 1) {
        throw InvariantError("ancilla_truncation_error: gamma must lie in [0, 1]");
    }
    if (k >= q) {
        return 0.0;
    }
    if (gamma == 1.0) {
        return 0.0;
    }
    if (gamma == 0.0) {
        return 1.0;
    }
    const double lg = std::log(gamma);
    const double l1g = std::log1p(-gamma);
    std::vector<double> terms;
    for (int w = k + 1; w <= q; ++w) {
        terms.push_back(log_binom(q, w) + (q - w) * lg + w * l1g);
    }
    double top = *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) {
        acc += std::exp(t - top);
    }
    return std::exp(0.5 * (top + std::log(acc)));
}

double truncation_chernoff_bound(int q, double gamma, int k) {
    const double mean = (1.0 - gamma) * q;
    if (!(mean > 0)) {
        return 0.0;
    }
    const double kk = k / mean;
    return std::exp(-kk * kk * mean / (2.0 * (2.0 + kk)));
}

int truncation_cutoff(int q, double gamma) {
    return static_cast<int>(std::ceil(40.0 + 40.0 * (1.0 - gamma) * q - 1e-12));
}

double identification_bound(std::int64_t q, int d, std::int64_t n) {
    if (q < 0 || d < 1 || n < 1) {
        throw InvariantError("identification_bound: need Q >= 0, d >= 1, N >= 1");
    }
    // binom(Q + d^2 - 1, Q) = prod_{i=1}^{d^2-1} (Q + i) / i.
    const std::int64_t r = static_cast<std::int64_t>(d) * d - 1;
    long double value = 1.0L / static_cast<long double>(n);
    for (std::int64_t i = 1; i <= r; ++i) {
        value *= static_cast<long double>(q + i) / static_cast<long double>(i);
        if (value >= 1.0L) {
            return 1.0;
        }
    }
    return static_cast<double>(std::clamp(value, 0.0L, 1.0L));
}

int identification_power(double eps) {
    if (!(eps > 0) || eps > 0.125) {
        throw InvariantError("identification_power: eps must lie in (0, 1/8]");
    }
    return static_cast<int>(std::floor(1.0 / (8.0 * eps) + 1e-12));
}

NearestResult nearest_net_element(const ReflectionNet& net, const UnitaryMatrix& u) {
    if (net.elements.empty()) {
        throw EmptySetError("nearest_net_element: empty net");
    }
    NearestResult out{0, diamond_norm(net.elements[0], u), false};
    for (size_t i = 1; i < net.elements.size(); ++i) {
        double dist = diamond_norm(net.elements[i], u);
        if (dist < out.distance - 1e-12) {
            out = NearestResult{i, dist, false};
        } else if (std::abs(dist - out.distance) <= 1e-12) {
            out.tie = true;
        }
    }
    return out;
}

UnitaryEstimator bootstrap_estimator(BaseEstimator base) {
    return [base = std::move(base)](QueryOracle& oracle, double eps, double eta, Rng& rng) {
        return bootstrap(oracle, eps, eta, base, rng).final_estimate;
    };
}

IdentifyResult identify_via_powering(QueryOracle& oracle, const ReflectionNet& net, double eps, double eta,
                                     const UnitaryEstimator& estimator, Rng& rng) {
    const int n = identification_power(eps);
    UnitaryMatrix estimate = estimator(oracle, eps, eta, rng);
    UnitaryMatrix powered = estimate.pow(n);
    return IdentifyResult{nearest_net_element(net, powered), powered};
}

}  // namespace utomo

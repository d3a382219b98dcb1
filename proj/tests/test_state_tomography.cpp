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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "utomo/state_tomography.hpp"

namespace utomo {
namespace {

UnitaryMatrix identity_basis(int d, Rng&) { return UnitaryMatrix::identity(d); }

PovmSampleSet samples_of(const std::vector<Vector>& vectors) {
    PovmSampleSet s;
    s.dim = static_cast<int>(vectors.front().size());
    for (const auto& v : vectors) {
        // A basis whose column 0 is v.
        Matrix m = Matrix::Identity(s.dim, s.dim);
        m.col(0) = v;
        Eigen::HouseholderQR<Matrix> qr(m);
        Matrix q = qr.householderQ();
        q.col(0) = v;
        s.outcomes.push_back(PovmOutcome{project_to_unitary(q), 0});
    }
    return s;
}

Vector basis_vector(int d, int k) {
    Vector v = Vector::Zero(d);
    v(k) = 1;
    return v;
}

// Euclidean projection onto the simplex by enumerating every support set.
RealVector simplex_by_enumeration(const RealVector& y) {
    const int n = static_cast<int>(y.size());
    RealVector best;
    double best_dist = 1e300;
    for (int mask = 1; mask < (1 << n); ++mask) {
        double sum = 0;
        int size = 0;
        for (int i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                sum += y(i);
                ++size;
            }
        }
        const double tau = (sum - 1) / size;
        RealVector x = RealVector::Zero(n);
        bool feasible = true;
        for (int i = 0; i < n; ++i) {
            if (mask >> i & 1) {
                x(i) = y(i) - tau;
                feasible = feasible && x(i) >= 0;
            }
        }
        if (feasible && (x - y).norm() < best_dist) {
            best_dist = (x - y).norm();
            best = x;
        }
    }
    return best;
}

TEST(CollectSamples, SingleCopyAccounting) {
    Rng rng(1);
    QueryOracle o(haar_random(3, rng), 2);
    UnitaryAccess access = UnitaryAccess::residual(o, UnitaryMatrix::identity(3), 5);
    PovmSampleSet s = collect_samples(StatePrep{&access, UnitaryMatrix::identity(3), 0}, 1, rng);
    EXPECT_EQ(s.count(), 1);
    EXPECT_EQ(o.queries_used(), 5);
    EXPECT_THROW(collect_samples(StatePrep{&access, UnitaryMatrix::identity(3), 0}, 0, rng), InvariantError);
}

TEST(CollectSamples, AlignedBasisAlwaysZero) {
    Rng rng(2);
    QueryOracle o(UnitaryMatrix::identity(3), 3);
    UnitaryAccess access(o);
    PovmSampleSet s = collect_samples(StatePrep{&access, UnitaryMatrix::identity(3), 0}, 200, rng, identity_basis);
    for (const auto& out : s.outcomes) {
        EXPECT_EQ(out.index, 0);
    }
}

TEST(CollectSamples, UniformPovmFirstMoment) {
    Rng rng(3);
    QueryOracle o(UnitaryMatrix::identity(2), 4);
    UnitaryAccess access(o);
    PovmSampleSet s = collect_samples(StatePrep{&access, UnitaryMatrix::identity(2), 0}, 10000, rng);
    double sum = 0;
    for (const auto& out : s.outcomes) {
        sum += std::norm(out.vector()(0));
    }
    EXPECT_NEAR(sum / s.count(), 2.0 / 3.0, 0.02);
}

TEST(BuildL, SingleSample) {
    Matrix l = build_L(samples_of({basis_vector(2, 0)}));
    Matrix want = Matrix::Zero(2, 2);
    want(0, 0) = 2;
    want(1, 1) = -1;
    EXPECT_LE(op_norm(l - want), 1e-12);
}

TEST(BuildL, CompleteBasisAverages) {
    Matrix l = build_L(samples_of({basis_vector(2, 0), basis_vector(2, 1), basis_vector(2, 0), basis_vector(2, 1)}));
    EXPECT_LE(op_norm(l - 0.5 * Matrix::Identity(2, 2)), 1e-12);
}

TEST(BuildL, HermitianWithUnitTrace) {
    Rng rng(4);
    std::vector<Vector> vs;
    for (int i = 0; i < 17; ++i) vs.push_back(haar_random_vector(4, rng));
    Matrix l = build_L(samples_of(vs));
    EXPECT_LE(op_norm(l - l.adjoint()), 1e-12);
    EXPECT_NEAR(l.trace().real(), 1.0, 1e-12);
    EXPECT_THROW(build_L(PovmSampleSet{2, {}}), InsufficientData);
}

TEST(BuildL, ConcentratesOnTarget) {
    Rng rng(5);
    QueryOracle o(UnitaryMatrix::identity(2), 6);
    UnitaryAccess access(o);
    Matrix l = build_L(collect_moment(StatePrep{&access, UnitaryMatrix::identity(2), 0}, 100000, rng));
    Matrix target = Matrix::Zero(2, 2);
    target(0, 0) = 1;
    EXPECT_LE(op_norm(l - target), 0.05);
}

TEST(BuildL, UnbiasedEntrywise) {
    Rng rng(6);
    const int d = 3;
    UnitaryMatrix z = haar_random(d, rng);
    QueryOracle o(z, 7);
    UnitaryAccess access(o);
    const int m = 100000;
    PovmSampleSet s = collect_samples(StatePrep{&access, UnitaryMatrix::identity(d), 0}, m, rng);
    Matrix mean = Matrix::Zero(d, d);
    Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(d, d);
    Eigen::MatrixXd sq_im = Eigen::MatrixXd::Zero(d, d);
    for (const auto& out : s.outcomes) {
        Vector v = out.vector();
        Matrix x = static_cast<double>(d + 1) * v * v.adjoint() - Matrix::Identity(d, d);
        mean += x;
        sq_re += x.real().cwiseAbs2();
        sq_im += x.imag().cwiseAbs2();
    }
    mean /= m;
    Matrix target = z.matrix().col(0) * z.matrix().col(0).adjoint();
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            const double sd_re = std::sqrt((sq_re(a, b) / m - std::pow(mean(a, b).real(), 2)) / m);
            const double sd_im = std::sqrt((sq_im(a, b) / m - std::pow(mean(a, b).imag(), 2)) / m);
            EXPECT_LE(std::abs(mean(a, b).real() - target(a, b).real()), 3 * sd_re + 1e-12);
            EXPECT_LE(std::abs(mean(a, b).imag() - target(a, b).imag()), 3 * sd_im + 1e-12);
        }
    }
    EXPECT_LE(op_norm(build_L(s) - mean), 1e-10);
}

TEST(SimplexProjection, KnownCase) {
    RealVector y(2);
    y << 2, -1;
    RealVector x = project_to_simplex(y);
    EXPECT_NEAR(x(0), 1.0, 1e-15);
    EXPECT_NEAR(x(1), 0.0, 1e-15);
}

TEST(SimplexProjection, MatchesSupportEnumeration) {
    Rng rng(7);
    std::normal_distribution<double> g(0.2, 0.7);
    for (int i = 0; i < 1000; ++i) {
        RealVector y(5);
        for (int k = 0; k < 5; ++k) y(k) = g(rng);
        RealVector x = project_to_simplex(y);
        EXPECT_LE((x - simplex_by_enumeration(y)).norm(), 1e-9);
        EXPECT_NEAR(x.sum(), 1.0, 1e-12);
        EXPECT_GE(x.minCoeff(), 0.0);
    }
}

TEST(RoundToState, Examples) {
    Matrix l = Matrix::Zero(2, 2);
    l(0, 0) = 2;
    l(1, 1) = -1;
    StateEstimate a = round_to_state(l);
    EXPECT_NEAR(std::abs(a.vector(0)), 1.0, 1e-12);

    l(0, 0) = 0.6;
    l(1, 1) = 0.4;
    EXPECT_NEAR(std::abs(round_to_state(l).vector(0)), 1.0, 1e-12);

    Rng rng(8);
    Vector psi = haar_random_vector(4, rng);
    StateEstimate b = round_to_state(psi * psi.adjoint());
    EXPECT_NEAR(std::abs(psi.dot(b.vector)), 1.0, 1e-10);
    EXPECT_NEAR(b.vector.norm(), 1.0, 1e-10);
    EXPECT_FALSE(b.top_tie);
}

TEST(RoundToState, TieIsFlagged) {
    StateEstimate s = round_to_state(0.5 * Matrix::Identity(2, 2));
    EXPECT_TRUE(s.top_tie);
}

TEST(RoundToState, LargestEntryIsRealPositive) {
    Rng rng(9);
    Vector psi = haar_random_vector(3, rng) * std::exp(kI * 1.1);
    StateEstimate s = round_to_state(psi * psi.adjoint());
    Eigen::Index big = 0;
    s.vector.cwiseAbs().maxCoeff(&big);
    EXPECT_NEAR(s.vector(big).imag(), 0.0, 1e-12);
    EXPECT_GT(s.vector(big).real(), 0.0);
}

TEST(EstimateState, DimensionOne) {
    Rng rng(10);
    QueryOracle o(UnitaryMatrix::diagonal_phases({0.4}), 11);
    UnitaryAccess access(o);
    StateEstimate s = estimate_state(StatePrep{&access, UnitaryMatrix::identity(1), 0}, 0.1, rng);
    EXPECT_NEAR(std::abs(s.vector(0)), 1.0, 1e-12);
}

TEST(EstimateState, QubitSuccessRate) {
    int ok = 0;
    for (int seed = 0; seed < 100; ++seed) {
        Rng rng(1000 + seed);
        QueryOracle o(UnitaryMatrix::identity(2), rng());
        UnitaryAccess access(o);
        StateEstimate s = estimate_state(StatePrep{&access, UnitaryMatrix::identity(2), 0}, 0.05, rng);
        ok += state_infidelity(basis_vector(2, 0), s.vector) <= 0.05 ? 1 : 0;
    }
    EXPECT_GE(ok, 90);
}

TEST(EstimateState, SampleCountMatchesLedger) {
    Rng rng(12);
    QueryOracle o(haar_random(4, rng), 13);
    UnitaryAccess access(o);
    StateEstimate s = estimate_state(StatePrep{&access, UnitaryMatrix::identity(4), 0}, 0.02, rng);
    const auto want = static_cast<std::int64_t>(std::ceil(kDefaultCState * 200));
    EXPECT_EQ(s.samples_used, want);
    EXPECT_EQ(o.queries_used(), want);
}

TEST(EstimateState, ErrorIsIsotropic) {
    const int d = 3;
    const int trials = 2000;
    Matrix cov = Matrix::Zero(d - 1, d - 1);
    Rng rng(14);
    for (int t = 0; t < trials; ++t) {
        QueryOracle o(UnitaryMatrix::identity(d), rng());
        UnitaryAccess access(o);
        StateEstimate s = estimate_state(StatePrep{&access, UnitaryMatrix::identity(d), 0}, 0.1, rng);
        Vector w = s.vector.tail(d - 1);
        // Align the global phase to the target component.
        w *= std::conj(s.vector(0)) / std::abs(s.vector(0));
        w /= w.norm();
        cov += w * w.adjoint();
    }
    cov /= trials;
    const double scale = cov.trace().real() / (d - 1);
    for (int a = 0; a < d - 1; ++a) {
        EXPECT_NEAR(cov(a, a).real() / scale, 1.0, 0.1);
        for (int b = 0; b < d - 1; ++b) {
            if (a != b) {
                EXPECT_LE(std::abs(cov(a, b)) / scale, 0.1);
            }
        }
    }
}

TEST(EstimateState, MoreSamplesDoNotHurtMedian) {
    std::vector<double> at_m;
    std::vector<double> at_2m;
    for (int seed = 0; seed < 50; ++seed) {
        Rng shared(2000 + seed);
        UnitaryMatrix z = haar_random(3, shared);
        for (int mult = 1; mult <= 2; ++mult) {
            Rng rng(3000 + seed);
            QueryOracle o(z, rng());
            UnitaryAccess access(o);
            StateEstimate s = estimate_state(StatePrep{&access, UnitaryMatrix::identity(3), 0}, 0.1, rng,
                                             kDefaultCState * mult);
            (mult == 1 ? at_m : at_2m).push_back(state_infidelity(z.matrix().col(0), s.vector));
        }
    }
    auto median = [](std::vector<double> v) {
        std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
        return v[v.size() / 2];
    };
    EXPECT_LE(median(at_2m), median(at_m));
}

TEST(EstimateState, RejectsBadTarget) {
    EXPECT_THROW(state_sample_count(2, 0.0), InvariantError);
    EXPECT_THROW(state_sample_count(2, 1.5), InvariantError);
}

}  // namespace
}  // namespace utomo

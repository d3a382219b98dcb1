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

#include <cmath>
#include <vector>

#include "test_support.hpp"
#include "utomo/query_oracle.hpp"

namespace utomo {
namespace {

// The oracle exposes outcomes and the ledger only.
template <typename T>
concept ExposesHidden = requires(const T& o) { o.hidden(); } || requires(const T& o) { o.matrix(); } ||
                        requires(const T& o) { o.unitary(); } || requires(const T& o) { o.hidden_; };
static_assert(!ExposesHidden<QueryOracle>);

Matrix pattern_matrix(const Matrix& z, const OraclePattern& pat) {
    Matrix block = Matrix::Identity(z.rows(), z.cols());
    for (int k = 0; k < pat.power; ++k) {
        block = (z * pat.v1.matrix() * block).eval();
    }
    return pat.v2.matrix() * block * pat.v0.matrix();
}

TEST(QueryOracle, FixedPointAndBitFlip) {
    UnitaryMatrix id = UnitaryMatrix::identity(2);
    QueryOracle trivial(id, 1);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(trivial.run_pattern(id, id, id, 1), 0);
    }
    QueryOracle flip(testing::pauli_x(), 2);
    for (int i = 0; i < 100; ++i) {
        EXPECT_EQ(flip.run_pattern(id, id, id, 1), 1);
    }
}

TEST(QueryOracle, LedgerAccounting) {
    UnitaryMatrix id = UnitaryMatrix::identity(3);
    QueryOracle o(id, 3);
    EXPECT_EQ(o.queries_used(), 0);
    o.run_pattern(id, id, id, 3);
    o.run_pattern(id, id, id, 2);
    EXPECT_EQ(o.queries_used(), 5);
    QueryOracle o7(id, 4);
    o7.run_pattern(id, id, id, 7);
    EXPECT_EQ(o7.queries_used(), 7);
    QueryOracle on(id, 5);
    for (int i = 0; i < 37; ++i) on.run_pattern(id, id, id, 1);
    EXPECT_EQ(on.queries_used(), 37);
}

TEST(QueryOracle, BudgetExceededDoesNotCharge) {
    UnitaryMatrix id = UnitaryMatrix::identity(2);
    QueryOracle o(id, 6, 10);
    o.run_pattern(id, id, id, 8);
    EXPECT_THROW(o.run_pattern(id, id, id, 3), BudgetExceeded);
    EXPECT_EQ(o.queries_used(), 8);
    o.run_pattern(id, id, id, 2);
    EXPECT_EQ(o.queries_used(), 10);
}

TEST(QueryOracle, RejectsBadInputs) {
    UnitaryMatrix id2 = UnitaryMatrix::identity(2);
    QueryOracle o(id2, 7);
    EXPECT_THROW(o.run_pattern(id2, id2, id2, 0), InvariantError);
    UnitaryMatrix id3 = UnitaryMatrix::identity(3);
    EXPECT_THROW(o.run_pattern(id3, id2, id2, 1), DimensionMismatch);
}

TEST(QueryOracle, BornRuleFrequencies) {
    Rng rng(8);
    const int d = 3;
    UnitaryMatrix z = haar_random(d, rng);
    UnitaryMatrix v0 = haar_random(d, rng);
    UnitaryMatrix v1 = haar_random(d, rng);
    UnitaryMatrix v2 = haar_random(d, rng);
    const int p = 3;
    Matrix full = pattern_matrix(z.matrix(), OraclePattern{v0, v1, v2, p});
    QueryOracle o(z, 9);
    const int n = 100000;
    std::vector<int> counts(d, 0);
    for (int i = 0; i < n; ++i) {
        ++counts[o.run_pattern(v0, v1, v2, p)];
    }
    for (int j = 0; j < d; ++j) {
        const double prob = std::norm(full(j, 0));
        const double sigma = std::sqrt(n * prob * (1 - prob));
        EXPECT_LE(std::abs(counts[j] - n * prob), 3 * sigma + 1) << j;
    }
    EXPECT_EQ(o.queries_used(), static_cast<std::int64_t>(n) * p);
}

TEST(QueryOracle, DeterministicUnderSeed) {
    Rng rng(10);
    UnitaryMatrix z = haar_random(4, rng);
    UnitaryMatrix b = haar_random(4, rng);
    UnitaryMatrix id = UnitaryMatrix::identity(4);
    QueryOracle a(z, 77);
    QueryOracle c(z, 77);
    for (int i = 0; i < 500; ++i) {
        EXPECT_EQ(a.run_pattern(id, id, b, 1 + i % 3), c.run_pattern(id, id, b, 1 + i % 3));
    }
}

TEST(DerivedPattern, IdentityResidual) {
    UnitaryMatrix id = UnitaryMatrix::identity(3);
    OraclePattern pat = derived_oracle_pattern(0, id, 1, id);
    EXPECT_LE(op_norm(pat.v0.matrix() - id.matrix()), 1e-15);
    EXPECT_LE(op_norm(pat.v1.matrix() - id.matrix()), 1e-15);
    EXPECT_LE(op_norm(pat.v2.matrix() - id.matrix()), 1e-15);
}

TEST(DerivedPattern, ColumnExtraction) {
    Rng rng(11);
    UnitaryMatrix z = haar_random(3, rng);
    UnitaryMatrix basis = haar_random(3, rng);
    OraclePattern pat = derived_oracle_pattern(1, UnitaryMatrix::identity(3), 1, basis);
    Vector state = pattern_matrix(z.matrix(), pat).col(0);
    Vector want = basis.matrix().adjoint() * z.matrix().col(1);
    EXPECT_LE((state - want).norm(), 1e-12);
}

TEST(DerivedPattern, ResidualPowerIdentity) {
    Rng rng(12);
    for (int i = 0; i < 20; ++i) {
        UnitaryMatrix z = haar_random(4, rng);
        UnitaryMatrix vj = haar_random(4, rng);
        UnitaryMatrix basis = haar_random(4, rng);
        const int c = i % 4;
        OraclePattern pat = derived_oracle_pattern(c, vj, 3, basis);
        Matrix res = z.matrix() * vj.matrix().adjoint();
        Matrix want = basis.matrix().adjoint() * res * res * res * basis_shift(4, c).matrix();
        EXPECT_LE(op_norm(pattern_matrix(z.matrix(), pat) - want), 1e-12);
    }
}

TEST(UnitaryAccess, PatternRealizesPostInnerPower) {
    Rng rng(13);
    UnitaryMatrix z = haar_random(3, rng);
    UnitaryMatrix inner = haar_random(3, rng);
    UnitaryMatrix post = haar_random(3, rng);
    UnitaryMatrix pre = haar_random(3, rng);
    UnitaryMatrix basis = haar_random(3, rng);
    QueryOracle o(z, 14);
    UnitaryAccess access(o, inner, 4, post);
    OraclePattern pat = access.pattern(pre, 2, basis);
    Matrix y = post.matrix() * (z * inner).pow(4).matrix();
    Matrix want = basis.matrix().adjoint() * y * pre.matrix() * basis_shift(3, 2).matrix();
    EXPECT_LE(op_norm(pattern_matrix(z.matrix(), pat) - want), 1e-12);
    EXPECT_EQ(access.power(), 4);
}

TEST(UnitaryAccess, MeasureChargesPower) {
    Rng rng(15);
    UnitaryMatrix z = haar_random(2, rng);
    QueryOracle o(z, 16);
    UnitaryAccess access = UnitaryAccess::residual(o, haar_random(2, rng), 8);
    UnitaryMatrix id = UnitaryMatrix::identity(2);
    access.measure(id, id);
    access.measure(id, id);
    EXPECT_EQ(o.queries_used(), 16);
}

}  // namespace
}  // namespace utomo

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
#include <optional>

#include "utomo/unitary_core.hpp"

namespace utomo {

/// One state-preparation pattern V2 (Z V1)^p V0 |0>.
struct OraclePattern {
    UnitaryMatrix v0;
    UnitaryMatrix v1;
    UnitaryMatrix v2;
    int power = 1;
};

/// Black-box access to a hidden unitary Z. The only observable outputs are
/// computational-basis measurement outcomes and the query ledger.
///
/// Not thread-safe: one oracle per trial.
class QueryOracle {
   public:
    QueryOracle(UnitaryMatrix hidden, std::uint64_t seed, std::optional<std::int64_t> budget = std::nullopt);

    QueryOracle(const QueryOracle&) = delete;
    QueryOracle& operator=(const QueryOracle&) = delete;
    QueryOracle(QueryOracle&&) = default;
    QueryOracle& operator=(QueryOracle&&) = default;

    int dim() const { return dim_; }

    /// Prepares V2 (Z V1)^p V0 |0>, measures in the computational basis and
    /// charges p queries. Throws BudgetExceeded (without charging) if the run
    /// would overrun the budget.
    int run_pattern(const UnitaryMatrix& v0, const UnitaryMatrix& v1, const UnitaryMatrix& v2, int p);
    int run_pattern(const OraclePattern& pattern);

    std::int64_t queries_used() const { return ledger_; }
    std::optional<std::int64_t> budget() const { return budget_; }

   private:
    // Returns (Z V1)^p V0 |0>, recomputed by repeated multiplication whenever
    // the (V1, p, V0) prefix changes.
    const Vector& prepared_state(const UnitaryMatrix& v0, const UnitaryMatrix& v1, int p);

    UnitaryMatrix hidden_;
    int dim_;
    std::int64_t ledger_ = 0;
    std::optional<std::int64_t> budget_;
    Rng rng_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};

    std::optional<Matrix> cached_v1_;
    int cached_power_ = 0;
    Matrix cached_block_;  // (Z V1)^p
    std::optional<Matrix> cached_v0_;
    Vector cached_state_;
    Vector amplitudes_;
    RealVector probs_;
};

/// Compiles "measure column c of basis^dag (Z residual^dag)^p" into a pattern:
/// V1 = residual^dag, V0 = X_c (|0> -> |c>), V2 = basis^dag.
OraclePattern derived_oracle_pattern(int target_column, const UnitaryMatrix& residual, int p,
                                     const UnitaryMatrix& basis);

/// Access to an effective unitary Y = post (Z inner)^power built on a shared
/// oracle. Measuring Y A |c> in a basis B is the pattern
/// (V0 = A X_c, V1 = inner, V2 = B^dag post, p = power).
class UnitaryAccess {
   public:
    UnitaryAccess(QueryOracle& oracle, UnitaryMatrix inner, int power, UnitaryMatrix post);
    /// Y = Z.
    explicit UnitaryAccess(QueryOracle& oracle);
    /// Y = (Z residual^dag)^p, the bootstrap residual.
    static UnitaryAccess residual(QueryOracle& oracle, const UnitaryMatrix& residual, int p);

    int dim() const { return oracle_->dim(); }
    int power() const { return power_; }
    QueryOracle& oracle() const { return *oracle_; }

    /// Measures basis^dag Y pre |c> in the computational basis.
    int measure(const UnitaryMatrix& pre_times_shift, const UnitaryMatrix& basis_adjoint) const;

    /// The pattern for measuring Y A|c> in basis B.
    OraclePattern pattern(const UnitaryMatrix& pre, int c, const UnitaryMatrix& basis) const;

   private:
    QueryOracle* oracle_;
    UnitaryMatrix inner_;
    int power_;
    UnitaryMatrix post_;
    bool post_is_identity_;
};

}  // namespace utomo

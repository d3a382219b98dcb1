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

#include "utomo/query_oracle.hpp"

#include <sstream>

namespace utomo {

namespace {

bool same_entries(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

void require_dim(const UnitaryMatrix& m, int d, const char* what) {
    if (m.dim() != d) {
        std::ostringstream msg;
        msg << "QueryOracle: " << what << " has dimension " << m.dim() << ", oracle has " << d;
        throw DimensionMismatch(msg.str());
    }
}

}  // namespace

QueryOracle::QueryOracle(UnitaryMatrix hidden, std::uint64_t seed, std::optional<std::int64_t> budget)
    : hidden_(std::move(hidden)), dim_(hidden_.dim()), budget_(budget), rng_(seed), amplitudes_(dim_), probs_(dim_) {}

const Vector& QueryOracle::prepared_state(const UnitaryMatrix& v0, const UnitaryMatrix& v1, int p) {
    bool block_valid = cached_v1_ && cached_power_ == p && same_entries(*cached_v1_, v1.matrix());
    if (!block_valid) {
        Matrix step = hidden_.matrix() * v1.matrix();
        Matrix block = Matrix::Identity(dim_, dim_);
        for (int i = 0; i < p; ++i) {
            block = step * block;
        }
        cached_block_ = std::move(block);
        cached_v1_ = v1.matrix();
        cached_power_ = p;
        cached_v0_.reset();
    }
    if (!cached_v0_ || !same_entries(*cached_v0_, v0.matrix())) {
        cached_state_ = cached_block_ * v0.matrix().col(0);
        cached_v0_ = v0.matrix();
    }
    return cached_state_;
}

int QueryOracle::run_pattern(const UnitaryMatrix& v0, const UnitaryMatrix& v1, const UnitaryMatrix& v2, int p) {
    if (p < 1) {
        throw InvariantError("QueryOracle::run_pattern: power must be positive");
    }
    require_dim(v0, dim_, "V0");
    require_dim(v1, dim_, "V1");
    require_dim(v2, dim_, "V2");
    if (budget_ && ledger_ + p > *budget_) {
        std::ostringstream msg;
        msg << "QueryOracle: running a power-" << p << " pattern would use " << (ledger_ + p)
            << " queries, budget is " << *budget_;
        throw BudgetExceeded(msg.str());
    }

    const Vector& state = prepared_state(v0, v1, p);
    amplitudes_.noalias() = v2.matrix() * state;
    double total = 0.0;
    for (int j = 0; j < dim_; ++j) {
        probs_(j) = std::norm(amplitudes_(j));
        total += probs_(j);
    }
    ledger_ += p;

    // Inverse CDF with a single uniform draw; normalizing by the total absorbs
    // rounding in the Born weights.
    double u = uniform_(rng_) * total;
    double acc = 0.0;
    for (int j = 0; j < dim_; ++j) {
        acc += probs_(j);
        if (u < acc) {
            return j;
        }
    }
    for (int j = dim_ - 1; j >= 0; --j) {
        if (probs_(j) > 0) {
            return j;
        }
    }
    return dim_ - 1;
}

int QueryOracle::run_pattern(const OraclePattern& pattern) {
    return run_pattern(pattern.v0, pattern.v1, pattern.v2, pattern.power);
}

OraclePattern derived_oracle_pattern(int target_column, const UnitaryMatrix& residual, int p,
                                     const UnitaryMatrix& basis) {
    if (residual.dim() != basis.dim()) {
        throw DimensionMismatch("derived_oracle_pattern: dimension mismatch");
    }
    return OraclePattern{basis_shift(residual.dim(), target_column), residual.adjoint(), basis.adjoint(), p};
}

UnitaryAccess::UnitaryAccess(QueryOracle& oracle, UnitaryMatrix inner, int power, UnitaryMatrix post)
    : oracle_(&oracle), inner_(std::move(inner)), power_(power), post_(std::move(post)) {
    if (power_ < 1) {
        throw InvariantError("UnitaryAccess: power must be positive");
    }
    if (inner_.dim() != oracle.dim() || post_.dim() != oracle.dim()) {
        throw DimensionMismatch("UnitaryAccess: dimension mismatch");
    }
    post_is_identity_ = post_.matrix().isIdentity(0.0);
}

UnitaryAccess::UnitaryAccess(QueryOracle& oracle)
    : UnitaryAccess(oracle, UnitaryMatrix::identity(oracle.dim()), 1, UnitaryMatrix::identity(oracle.dim())) {}

UnitaryAccess UnitaryAccess::residual(QueryOracle& oracle, const UnitaryMatrix& residual, int p) {
    return UnitaryAccess(oracle, residual.adjoint(), p, UnitaryMatrix::identity(oracle.dim()));
}

int UnitaryAccess::measure(const UnitaryMatrix& pre_times_shift, const UnitaryMatrix& basis_adjoint) const {
    if (post_is_identity_) {
        return oracle_->run_pattern(pre_times_shift, inner_, basis_adjoint, power_);
    }
    return oracle_->run_pattern(pre_times_shift, inner_, basis_adjoint * post_, power_);
}

OraclePattern UnitaryAccess::pattern(const UnitaryMatrix& pre, int c, const UnitaryMatrix& basis) const {
    return OraclePattern{pre * basis_shift(dim(), c), inner_, basis.adjoint() * post_, power_};
}

}  // namespace utomo

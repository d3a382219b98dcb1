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

#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace utomo {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// The random stream threaded explicitly through every sampling routine.
using Rng = std::mt19937_64;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Base class for every error raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Matrix that should be unitary / antihermitian / hermitian is not.
struct InvariantError : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

/// An eigenphase lies on (or within the guard of) the principal branch cut at -1.
struct BranchCutError : Error {
    using Error::Error;
};

struct DecompositionFailure : Error {
    using Error::Error;
};

struct RankDeficiencyError : Error {
    using Error::Error;
};

struct BudgetExceeded : Error {
    using Error::Error;
};

struct EmptySetError : Error {
    using Error::Error;
};

struct InsufficientData : Error {
    using Error::Error;
};

/// Largest singular value.
double op_norm(const Matrix& m);

/// Wraps an angle into (-pi, pi].
double wrap_pm_pi(double theta);

/// Wraps an angle into [0, 2*pi).
double wrap_2pi(double theta);

/// Shortest distance between two angles on the circle, in [0, pi].
double circular_distance(double a, double b);

}  // namespace utomo

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

#include <vector>

#include "utomo/types.hpp"

namespace utomo {

/// A d x d unitary matrix. Construction checks ||U^dag U - I||_op <= tolerance.
class UnitaryMatrix {
   public:
    static constexpr double kTolerance = 1e-10;

    explicit UnitaryMatrix(Matrix entries, double tolerance = kTolerance);

    static UnitaryMatrix identity(int d);
    /// Diagonal unitary diag(e^{i phases_k}).
    static UnitaryMatrix diagonal_phases(const std::vector<double>& phases);
    /// Wraps entries that are unitary by construction (e.g. products of
    /// unitaries) and only need the looser closure tolerance.
    static UnitaryMatrix from_product(Matrix entries);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }

    UnitaryMatrix adjoint() const;
    UnitaryMatrix operator*(const UnitaryMatrix& other) const;
    /// Integer power by repeated multiplication.
    UnitaryMatrix pow(int p) const;
    /// Multiplies by a global phase e^{i theta}.
    UnitaryMatrix rephased(double theta) const;

   private:
    friend UnitaryMatrix haar_random(int d, Rng& rng);

    struct Unchecked {};
    UnitaryMatrix(Matrix entries, Unchecked) : m_(std::move(entries)) {}

    Matrix m_;
};

/// X with X^dag = -X.
class AntiHermitianGenerator {
   public:
    static constexpr double kTolerance = 1e-10;

    explicit AntiHermitianGenerator(Matrix entries, double tolerance = kTolerance);
    static AntiHermitianGenerator zero(int d);
    /// i * H for a Hermitian H.
    static AntiHermitianGenerator from_hermitian(const Matrix& h);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    double norm() const { return op_norm(m_); }

    AntiHermitianGenerator scaled(double r) const;
    AntiHermitianGenerator operator+(const AntiHermitianGenerator& o) const;
    AntiHermitianGenerator operator-(const AntiHermitianGenerator& o) const;

   private:
    Matrix m_;
};

/// Spectral decomposition U = sum_k e^{i phases_k} |v_k><v_k|.
struct UnitaryEigensystem {
    std::vector<double> phases;  // each in (-pi, pi]
    Matrix vectors;              // columns are orthonormal eigenvectors

    Matrix reconstruct() const;
};

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// diagonal of R rotated onto the positive reals.
UnitaryMatrix haar_random(int d, Rng& rng);

/// Haar-random unit vector in C^d.
Vector haar_random_vector(int d, Rng& rng);

/// Eigendecomposition of a unitary. Eigenvector clusters whose phases agree
/// within 1e-7 are re-orthonormalized.
UnitaryEigensystem eig_unitary(const UnitaryMatrix& u);

/// Principal logarithm with spectrum in (-pi, pi). Throws BranchCutError when
/// any eigenphase lies within `guard` of pi.
AntiHermitianGenerator principal_log(const UnitaryMatrix& u, double guard = 1e-9);

/// expm(r * principal_log(u)).
UnitaryMatrix frac_power(const UnitaryMatrix& u, double r, double guard = 1e-9);

/// Matrix exponential of an antihermitian generator, via the spectral
/// decomposition of the Hermitian matrix -iX.
UnitaryMatrix expm(const AntiHermitianGenerator& x);

/// Nearest unitary in operator norm: X Y^dag for M = X S Y^dag.
/// Throws RankDeficiencyError if a singular value is <= 1e-12.
UnitaryMatrix project_to_unitary(const Matrix& m);

/// Unitary mapping |0> to |c> (the transposition of 0 and c).
UnitaryMatrix basis_shift(int d, int c);

/// DFT with <a|F|b> = e^{-2 pi i ab/d} / sqrt(d).
UnitaryMatrix dft_matrix(int d);

/// Sylvester-ordered Hadamard transform; d must be a power of two.
UnitaryMatrix hadamard_matrix(int d);

/// Standard complex Gaussian matrix (entries with E|z|^2 = 1).
Matrix ginibre(int d, Rng& rng);

}  // namespace utomo

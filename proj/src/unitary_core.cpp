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

#include "utomo/unitary_core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <boost/random/normal_distribution.hpp>

namespace utomo {

double op_norm(const Matrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

double wrap_pm_pi(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t <= -kPi) {
        t += kTwoPi;
    } else if (t > kPi) {
        t -= kTwoPi;
    }
    return t;
}

double wrap_2pi(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0) {
        t += kTwoPi;
    }
    // fmod of a value just below 0 can round up to exactly 2*pi.
    if (t >= kTwoPi) {
        t = 0.0;
    }
    return t;
}

double circular_distance(double a, double b) {
    return std::abs(wrap_pm_pi(a - b));
}

namespace {

// ||U^dag U - I||_op, skipping the SVD when the Frobenius norm (an upper
// bound) already certifies the tolerance.
double unitarity_defect(const Matrix& m, double tolerance) {
    Matrix gram = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
    double frob = gram.norm();
    if (frob <= tolerance) {
        return frob;
    }
    return op_norm(gram);
}

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        std::ostringstream msg;
        msg << what << ": expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
        throw InvariantError(msg.str());
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// UnitaryMatrix

UnitaryMatrix::UnitaryMatrix(Matrix entries, double tolerance) : m_(std::move(entries)) {
    require_square(m_, "UnitaryMatrix");
    double defect = unitarity_defect(m_, tolerance);
    if (!(defect <= tolerance)) {
        std::ostringstream msg;
        msg << "UnitaryMatrix: ||U^dag U - I||_op = " << defect << " exceeds " << tolerance;
        throw InvariantError(msg.str());
    }
}

UnitaryMatrix UnitaryMatrix::identity(int d) {
    return UnitaryMatrix(Matrix::Identity(d, d), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::diagonal_phases(const std::vector<double>& phases) {
    Matrix m = Matrix::Zero(phases.size(), phases.size());
    for (size_t k = 0; k < phases.size(); ++k) {
        m(k, k) = std::polar(1.0, phases[k]);
    }
    return UnitaryMatrix(std::move(m), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::from_product(Matrix entries) {
    return UnitaryMatrix(std::move(entries), 1e-8);
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
    return UnitaryMatrix(m_.adjoint(), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& other) const {
    if (dim() != other.dim()) {
        throw DimensionMismatch("UnitaryMatrix product: dimension mismatch");
    }
    return UnitaryMatrix(m_ * other.m_, Unchecked{});
}

UnitaryMatrix UnitaryMatrix::pow(int p) const {
    if (p < 0) {
        return adjoint().pow(-p);
    }
    Matrix acc = Matrix::Identity(dim(), dim());
    for (int i = 0; i < p; ++i) {
        acc = m_ * acc;
    }
    return UnitaryMatrix(std::move(acc), Unchecked{});
}

UnitaryMatrix UnitaryMatrix::rephased(double theta) const {
    return UnitaryMatrix(m_ * std::polar(1.0, theta), Unchecked{});
}

// ---------------------------------------------------------------------------
// AntiHermitianGenerator

AntiHermitianGenerator::AntiHermitianGenerator(Matrix entries, double tolerance) : m_(std::move(entries)) {
    require_square(m_, "AntiHermitianGenerator");
    Matrix sym = m_ + m_.adjoint();
    double defect = sym.norm();
    if (defect > tolerance) {
        defect = op_norm(sym);
    }
    if (!(defect <= tolerance)) {
        std::ostringstream msg;
        msg << "AntiHermitianGenerator: ||X + X^dag||_op = " << defect << " exceeds " << tolerance;
        throw InvariantError(msg.str());
    }
}

AntiHermitianGenerator AntiHermitianGenerator::zero(int d) {
    return AntiHermitianGenerator(Matrix::Zero(d, d));
}

AntiHermitianGenerator AntiHermitianGenerator::from_hermitian(const Matrix& h) {
    Matrix sym = 0.5 * (h + h.adjoint());
    return AntiHermitianGenerator(kI * sym);
}

AntiHermitianGenerator AntiHermitianGenerator::scaled(double r) const {
    return AntiHermitianGenerator(m_ * r);
}

AntiHermitianGenerator AntiHermitianGenerator::operator+(const AntiHermitianGenerator& o) const {
    if (dim() != o.dim()) {
        throw DimensionMismatch("AntiHermitianGenerator sum: dimension mismatch");
    }
    return AntiHermitianGenerator(m_ + o.m_);
}

AntiHermitianGenerator AntiHermitianGenerator::operator-(const AntiHermitianGenerator& o) const {
    if (dim() != o.dim()) {
        throw DimensionMismatch("AntiHermitianGenerator difference: dimension mismatch");
    }
    return AntiHermitianGenerator(m_ - o.m_);
}

// ---------------------------------------------------------------------------
// Spectral machinery

Matrix UnitaryEigensystem::reconstruct() const {
    Vector diag(static_cast<Eigen::Index>(phases.size()));
    for (size_t k = 0; k < phases.size(); ++k) {
        diag(k) = std::polar(1.0, phases[k]);
    }
    return vectors * diag.asDiagonal() * vectors.adjoint();
}

Matrix ginibre(int d, Rng& rng) {
    boost::random::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    Matrix g(d, d);
    for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) {
            double re = normal(rng);
            double im = normal(rng);
            g(r, c) = Complex(re, im);
        }
    }
    return g;
}

UnitaryMatrix haar_random(int d, Rng& rng) {
    if (d < 1) {
        throw InvariantError("haar_random: dimension must be positive");
    }
    // QR by Gram-Schmidt, which fixes diag(R) > 0 and so needs no phase
    // correction. Two passes keep the columns orthonormal to rounding.
    Matrix q = ginibre(d, rng);
    for (int k = 0; k < d; ++k) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int j = 0; j < k; ++j) {
                q.col(k) -= q.col(j) * q.col(j).dot(q.col(k));
            }
        }
        const double norm = q.col(k).norm();
        if (!(norm > 1e-12)) {
            throw RankDeficiencyError("haar_random: degenerate Gaussian sample");
        }
        q.col(k) /= norm;
    }
    return UnitaryMatrix(std::move(q), UnitaryMatrix::Unchecked{});
}

Vector haar_random_vector(int d, Rng& rng) {
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    Vector v(d);
    for (int k = 0; k < d; ++k) {
        double re = normal(rng);
        double im = normal(rng);
        v(k) = Complex(re, im);
    }
    return v / v.norm();
}

namespace {

// Groups indices whose phases agree (circularly) within tol.
std::vector<std::vector<int>> phase_clusters(const std::vector<double>& phases, double tol) {
    int n = static_cast<int>(phases.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            if (circular_distance(phases[a], phases[b]) <= tol) {
                parent[find(a)] = find(b);
            }
        }
    }
    std::vector<std::vector<int>> groups(n);
    for (int k = 0; k < n; ++k) {
        groups[find(k)].push_back(k);
    }
    std::erase_if(groups, [](const auto& g) { return g.empty(); });
    return groups;
}

}  // namespace

UnitaryEigensystem eig_unitary(const UnitaryMatrix& u) {
    const int d = u.dim();
    Eigen::ComplexEigenSolver<Matrix> solver(u.matrix(), true);
    if (solver.info() != Eigen::Success) {
        throw DecompositionFailure("eig_unitary: eigensolver did not converge");
    }
    UnitaryEigensystem out;
    out.phases.resize(d);
    for (int k = 0; k < d; ++k) {
        out.phases[k] = std::arg(solver.eigenvalues()(k));
        if (out.phases[k] == -kPi) {
            out.phases[k] = kPi;
        }
    }
    out.vectors = solver.eigenvectors();

    // Vectors from distinct, well-separated eigenvalues of a normal matrix are
    // orthogonal up to rounding; degenerate clusters come back as an arbitrary
    // basis of the eigenspace and need Gram-Schmidt.
    for (const auto& cluster : phase_clusters(out.phases, 1e-7)) {
        Matrix block(d, static_cast<Eigen::Index>(cluster.size()));
        for (size_t j = 0; j < cluster.size(); ++j) {
            block.col(j) = out.vectors.col(cluster[j]);
        }
        Eigen::HouseholderQR<Matrix> qr(block);
        Matrix q = qr.householderQ() * Matrix::Identity(d, block.cols());
        for (size_t j = 0; j < cluster.size(); ++j) {
            out.vectors.col(cluster[j]) = q.col(j);
        }
    }

    // One polishing pass: the nearest unitary to the eigenvector matrix, which
    // removes the O(eps/gap) skew between nearly-degenerate clusters.
    Eigen::JacobiSVD<Matrix> svd(out.vectors, Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.vectors = svd.matrixU() * svd.matrixV().adjoint();
    return out;
}

AntiHermitianGenerator principal_log(const UnitaryMatrix& u, double guard) {
    UnitaryEigensystem es = eig_unitary(u);
    for (double theta : es.phases) {
        if (circular_distance(theta, kPi) <= guard) {
            std::ostringstream msg;
            msg << "principal_log: eigenphase " << theta << " lies within " << guard << " of the branch cut at pi";
            throw BranchCutError(msg.str());
        }
    }
    Vector diag(u.dim());
    for (int k = 0; k < u.dim(); ++k) {
        diag(k) = kI * es.phases[k];
    }
    Matrix x = es.vectors * diag.asDiagonal() * es.vectors.adjoint();
    // Exact antihermitian symmetrization; the result differs by rounding only.
    x = 0.5 * (x - x.adjoint());
    return AntiHermitianGenerator(std::move(x));
}

UnitaryMatrix expm(const AntiHermitianGenerator& x) {
    Matrix h = -kI * x.matrix();
    h = 0.5 * (h + h.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw DecompositionFailure("expm: Hermitian eigensolver did not converge");
    }
    const RealVector& lambda = solver.eigenvalues();
    Vector diag(lambda.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        diag(k) = std::polar(1.0, lambda(k));
    }
    const Matrix& v = solver.eigenvectors();
    return UnitaryMatrix::from_product(v * diag.asDiagonal() * v.adjoint());
}

UnitaryMatrix frac_power(const UnitaryMatrix& u, double r, double guard) {
    if (!(r > 0)) {
        throw InvariantError("frac_power: exponent must be positive");
    }
    return expm(principal_log(u, guard).scaled(r));
}

UnitaryMatrix project_to_unitary(const Matrix& m) {
    require_square(m, "project_to_unitary");
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& s = svd.singularValues();
    if (s(s.size() - 1) <= 1e-12) {
        std::ostringstream msg;
        msg << "project_to_unitary: smallest singular value " << s(s.size() - 1) << " <= 1e-12";
        throw RankDeficiencyError(msg.str());
    }
    return UnitaryMatrix::from_product(svd.matrixU() * svd.matrixV().adjoint());
}

UnitaryMatrix basis_shift(int d, int c) {
    if (c < 0 || c >= d) {
        throw InvariantError("basis_shift: index out of range");
    }
    Matrix m = Matrix::Identity(d, d);
    if (c != 0) {
        m.col(0).swap(m.col(c));
    }
    return UnitaryMatrix::from_product(std::move(m));
}

UnitaryMatrix dft_matrix(int d) {
    Matrix f(d, d);
    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            // Reduce ab mod d before scaling to keep the angle small.
            int ab = (a * b) % d;
            f(a, b) = std::polar(scale, -kTwoPi * ab / d);
        }
    }
    return UnitaryMatrix::from_product(std::move(f));
}

UnitaryMatrix hadamard_matrix(int d) {
    if (d < 1 || (d & (d - 1)) != 0) {
        throw InvariantError("hadamard_matrix: dimension must be a power of two");
    }
    Matrix h(d, d);
    double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            h(a, b) = (std::popcount(static_cast<unsigned>(a & b)) % 2 == 0) ? scale : -scale;
        }
    }
    return UnitaryMatrix::from_product(std::move(h));
}

}  // namespace utomo

// Copyright 2026 The punif Authors
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

#include "punif/dense_operator.h"

#include <cmath>
#include <string>
#include <unsupported/Eigen/KroneckerProduct>

#include "punif/errors.h"
#include "punif/galois.h"

namespace punif {

namespace {

void check_same_space(const DenseOperator &a, const DenseOperator &b) {
    if (a.n() != b.n() || a.d() != b.d()) {
        throw ParameterMismatch("operators act on different spaces: (n=" + std::to_string(a.n()) +
                                ", d=" + std::to_string(a.d()) + ") vs (n=" + std::to_string(b.n()) +
                                ", d=" + std::to_string(b.d()) + ")");
    }
}

}  // namespace

DenseOperator::DenseOperator(int n, int d, Matrix entries) : n_(n), d_(d), entries_(std::move(entries)) {
    if (n < 1) {
        throw InvalidParameter("operator needs at least one qudit");
    }
    (void)PrimeModulus(d);
    const auto dim = static_cast<Eigen::Index>(int_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n)));
    if (entries_.rows() != dim || entries_.cols() != dim) {
        throw ParameterMismatch("operator on n=" + std::to_string(n) + ", d=" + std::to_string(d) +
                                " must be " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    if (!entries_.allFinite()) {
        throw InvalidParameter("operator has non-finite entries");
    }
}

DenseOperator identity(int n, int d) {
    const auto dim = static_cast<Eigen::Index>(int_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n)));
    return {n, d, Matrix::Identity(dim, dim)};
}

DenseOperator matmul(const DenseOperator &a, const DenseOperator &b) {
    check_same_space(a, b);
    return {a.n(), a.d(), a.matrix() * b.matrix()};
}

DenseOperator adjoint(const DenseOperator &a) {
    return {a.n(), a.d(), a.matrix().adjoint()};
}

DenseOperator tensor(const DenseOperator &a, const DenseOperator &b) {
    if (a.d() != b.d()) {
        throw ParameterMismatch("tensor factors have different local dimensions");
    }
    return {a.n() + b.n(), a.d(), Eigen::kroneckerProduct(a.matrix(), b.matrix()).eval()};
}

DenseOperator scalar_mul(Complex c, const DenseOperator &a) {
    return {a.n(), a.d(), c * a.matrix()};
}

DenseOperator add(const DenseOperator &a, const DenseOperator &b) {
    check_same_space(a, b);
    return {a.n(), a.d(), a.matrix() + b.matrix()};
}

DenseOperator subtract(const DenseOperator &a, const DenseOperator &b) {
    check_same_space(a, b);
    return {a.n(), a.d(), a.matrix() - b.matrix()};
}

Complex hs_inner(const DenseOperator &u, const DenseOperator &v) {
    check_same_space(u, v);
    // tr(U* V) = sum_ij conj(U_ij) V_ij
    return u.matrix().conjugate().cwiseProduct(v.matrix()).sum() / static_cast<double>(u.dim());
}

double frob_norm(const DenseOperator &u) {
    return u.matrix().norm() / std::sqrt(static_cast<double>(u.dim()));
}

double unitarity_defect(const DenseOperator &u) {
    const Matrix gram = u.matrix().adjoint() * u.matrix();
    return (gram - Matrix::Identity(u.dim(), u.dim())).norm() / std::sqrt(static_cast<double>(u.dim()));
}

UnitaryHandle::UnitaryHandle(DenseOperator op, double tolerance) : op_(std::move(op)), defect_(punif::unitarity_defect(op_)) {
    if (!(defect_ <= tolerance)) {
        throw NotUnitary("operator is not unitary: ||U*U - I||_2 = " + std::to_string(defect_) + " exceeds " +
                             std::to_string(tolerance),
                         defect_);
    }
}

PhaseDistance phase_min_distance(const UnitaryHandle &u, const UnitaryHandle &v) {
    const Complex overlap = hs_inner(u.op(), v.op());
    const double theta = std::abs(overlap) > 0 ? -std::arg(overlap) : 0.0;
    // Evaluated directly rather than as 2 - 2|<U,V>|, which loses half the digits near zero.
    const Matrix diff = u.matrix() - std::polar(1.0, theta) * v.matrix();
    return {diff.squaredNorm() / static_cast<double>(u.dim()), theta};
}

UnitaryHandle haar_random_unitary(int n, int d, std::mt19937_64 &rng) {
    const auto dim = static_cast<Eigen::Index>(int_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n)));
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix &r = qr.matrixQR();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        q.col(j) *= std::abs(rjj) > 0 ? rjj / std::abs(rjj) : Complex(1.0);
    }
    return UnitaryHandle(DenseOperator(n, d, std::move(q)));
}

UnitaryHandle haar_random_unitary(int n, int d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return haar_random_unitary(n, d, rng);
}

}  // namespace punif

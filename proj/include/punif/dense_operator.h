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

// Dense operators on (C^d)^{\otimes n} and the normalized Hilbert-Schmidt
// geometry. Basis states |x_0 ... x_{n-1}> are indexed with qudit 0 as the
// most significant digit, so tensor(A, B) acts with A on the leading qudits.

#ifndef PUNIF_DENSE_OPERATOR_H
#define PUNIF_DENSE_OPERATOR_H

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace punif {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kDefaultUnitarityTolerance = 1e-10;

class DenseOperator {
   public:
    /// Requires entries to be d^n x d^n with finite values; d must be prime.
    DenseOperator(int n, int d, Matrix entries);

    int n() const {
        return n_;
    }
    int d() const {
        return d_;
    }
    Eigen::Index dim() const {
        return entries_.rows();
    }
    const Matrix &matrix() const {
        return entries_;
    }
    Complex operator()(Eigen::Index row, Eigen::Index col) const {
        return entries_(row, col);
    }

   private:
    int n_;
    int d_;
    Matrix entries_;
};

DenseOperator identity(int n, int d);
DenseOperator matmul(const DenseOperator &a, const DenseOperator &b);
DenseOperator adjoint(const DenseOperator &a);
/// Kronecker product; n adds up, d must agree.
DenseOperator tensor(const DenseOperator &a, const DenseOperator &b);
DenseOperator scalar_mul(Complex c, const DenseOperator &a);
DenseOperator add(const DenseOperator &a, const DenseOperator &b);
DenseOperator subtract(const DenseOperator &a, const DenseOperator &b);

inline DenseOperator operator*(const DenseOperator &a, const DenseOperator &b) {
    return matmul(a, b);
}
inline DenseOperator operator*(Complex c, const DenseOperator &a) {
    return scalar_mul(c, a);
}
inline DenseOperator operator+(const DenseOperator &a, const DenseOperator &b) {
    return add(a, b);
}
inline DenseOperator operator-(const DenseOperator &a, const DenseOperator &b) {
    return subtract(a, b);
}

/// <U,V> = tr(U* V) / d^n
Complex hs_inner(const DenseOperator &u, const DenseOperator &v);
/// sqrt(<U,U>)
double frob_norm(const DenseOperator &u);
/// ||U* U - I||_2 in the normalized Frobenius norm.
double unitarity_defect(const DenseOperator &u);

/// An operator certified unitary up to a tolerance at construction time.
class UnitaryHandle {
   public:
    explicit UnitaryHandle(DenseOperator op, double tolerance = kDefaultUnitarityTolerance);

    const DenseOperator &op() const {
        return op_;
    }
    const Matrix &matrix() const {
        return op_.matrix();
    }
    int n() const {
        return op_.n();
    }
    int d() const {
        return op_.d();
    }
    Eigen::Index dim() const {
        return op_.dim();
    }
    double unitarity_defect() const {
        return defect_;
    }

   private:
    DenseOperator op_;
    double defect_;
};

struct PhaseDistance {
    /// min over theta of ||U - e^{i theta} V||_2^2
    double dist_sq;
    /// A minimizer: e^{i theta} <U,V> = |<U,V>|.
    double theta;
};

PhaseDistance phase_min_distance(const UnitaryHandle &u, const UnitaryHandle &v);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with R's diagonal phases removed.
UnitaryHandle haar_random_unitary(int n, int d, std::uint64_t seed);
UnitaryHandle haar_random_unitary(int n, int d, std::mt19937_64 &rng);

}  // namespace punif

#endif

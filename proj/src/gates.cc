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

#include "punif/gates.h"

#include <cmath>
#include <numbers>

#include "punif/galois.h"
#include "punif/pauli_group.h"

namespace punif::gates {

namespace {

DenseOperator qubit(std::initializer_list<Complex> entries) {
    Matrix m(2, 2);
    auto it = entries.begin();
    m << it[0], it[1], it[2], it[3];
    return {1, 2, m};
}

}  // namespace

DenseOperator I() {
    return identity(1, 2);
}

DenseOperator X() {
    return qubit({0, 1, 1, 0});
}

DenseOperator Y() {
    return qubit({0, Complex(0, -1), Complex(0, 1), 0});
}

DenseOperator Z() {
    return qubit({1, 0, 0, -1});
}

DenseOperator H() {
    const double r = 1 / std::numbers::sqrt2;
    return qubit({r, r, r, -r});
}

DenseOperator S() {
    return qubit({1, 0, 0, Complex(0, 1)});
}

DenseOperator T() {
    return phase_eighth(1);
}

DenseOperator phase_eighth(int m) {
    return qubit({1, 0, 0, std::polar(1.0, std::numbers::pi * m / 4)});
}

DenseOperator CZ() {
    Matrix m = Matrix::Identity(4, 4);
    m(3, 3) = -1;
    return {2, 2, m};
}

DenseOperator CNOT() {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return {2, 2, m};
}

DenseOperator shift(int d) {
    const PrimeModulus p(d);
    return weyl_matrix(SympVector({0}, {1}, p));
}

DenseOperator clock(int d) {
    const PrimeModulus p(d);
    return weyl_matrix(SympVector({1}, {0}, p));
}

DenseOperator fourier(int d) {
    const PrimeModulus p(d);
    Matrix m(d, d);
    for (int x = 0; x < d; ++x) {
        for (int y = 0; y < d; ++y) {
            m(y, x) = omega_power(x * y, p) / std::sqrt(static_cast<double>(d));
        }
    }
    return {1, d, m};
}

DenseOperator phase(int d) {
    const PrimeModulus p(d);
    if (d == 2) {
        return S();
    }
    Matrix m = Matrix::Zero(d, d);
    for (int x = 0; x < d; ++x) {
        m(x, x) = omega_power(x * (x - 1) / 2, p);
    }
    return {1, d, m};
}

std::vector<NamedGate> battery() {
    const PrimeModulus d2(2);
    std::vector<NamedGate> out;
    for (std::uint64_t i = 0; i < num_symp_vectors(1, 2); ++i) {
        const SympVector a = SympVector::from_index(i, 1, d2);
        out.push_back({"W" + a.str(), UnitaryHandle(weyl_matrix(a))});
    }
    out.push_back({"T", UnitaryHandle(T())});
    out.push_back({"H", UnitaryHandle(H())});
    out.push_back({"S", UnitaryHandle(S())});
    out.push_back({"CZ", UnitaryHandle(CZ())});
    out.push_back({"CNOT", UnitaryHandle(CNOT())});
    return out;
}

}  // namespace punif::gates

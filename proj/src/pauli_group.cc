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

#include "punif/pauli_group.h"

#include <cmath>
#include <numbers>

#include "punif/errors.h"

namespace punif {

namespace {

// e^{i pi m / d}, exact at multiples of pi/2.
Complex half_turn_fraction(std::int64_t m, int d) {
    const std::int64_t period = 2 * static_cast<std::int64_t>(d);
    m %= period;
    if (m < 0) {
        m += period;
    }
    if ((2 * m) % d == 0) {
        static constexpr Complex kQuarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        return kQuarter[(2 * m) / d];
    }
    return std::polar(1.0, std::numbers::pi * static_cast<double>(m) / d);
}

std::int64_t weight(std::span<const int> u, std::span<const int> v) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        s += static_cast<std::int64_t>(u[i]) * v[i];
    }
    return s;
}

}  // namespace

Complex tau_power(std::int64_t exponent, PrimeModulus d) {
    // tau = (-1)^d e^{i pi/d} = e^{i pi (d^2 + 1)/d}
    const std::int64_t dd = d.value();
    const std::int64_t period = 2 * dd;
    const std::int64_t e = ((exponent % period) + period) % period;
    return half_turn_fraction(e * (dd * dd + 1), d.value());
}

Complex omega_power(std::int64_t exponent, PrimeModulus d) {
    return half_turn_fraction(2 * (exponent % d.value()), d.value());
}

PhaseExponent beta(const SympVector &a, const SympVector &b) {
    const SympVector sum = vec_add(a, b);
    const std::int64_t cross = weight(a.v_lifts(), b.u_lifts());
    const std::int64_t e = weight(sum.u_lifts(), sum.v_lifts()) - weight(a.u_lifts(), a.v_lifts()) -
                           weight(b.u_lifts(), b.v_lifts()) - 2 * cross;
    return {e, a.prime()};
}

PauliElement pauli_mul(const PauliElement &g, const PauliElement &h) {
    return {g.t + h.t + beta(g.a, h.a), vec_add(g.a, h.a)};
}

PauliElement pauli_inv(const PauliElement &g) {
    const SympVector neg = vec_neg(g.a);
    return {-g.t - beta(g.a, neg), neg};
}

FieldScalar commutator_phase(const SympVector &a, const SympVector &b) {
    return symplectic_form(a, b);
}

WeylAction::WeylAction(const SympVector &a) : label_(a) {
    const int n = a.n();
    const int d = a.modulus();
    const auto dim = int_pow(static_cast<std::uint64_t>(d), static_cast<unsigned>(n));
    target_.resize(dim);
    value_.resize(dim);
    const std::int64_t s = weight(a.u_lifts(), a.v_lifts());
    std::vector<int> digits(n, 0);
    for (std::uint64_t x = 0; x < dim; ++x) {
        // digits holds x in base d, qudit 0 most significant.
        std::uint64_t row = 0;
        std::int64_t phase = 0;
        for (int i = 0; i < n; ++i) {
            const int shifted = (digits[i] + a.v_lifts()[i]) % d;
            row = row * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(shifted);
            phase += static_cast<std::int64_t>(a.u_lifts()[i]) * shifted;
        }
        target_[x] = static_cast<Eigen::Index>(row);
        // tau^{-s} omega^{u.(x+v)} = tau^{2 u.(x+v) - s}
        value_[x] = tau_power(2 * phase - s, a.prime());
        for (int i = n - 1; i >= 0; --i) {
            if (++digits[i] < d) {
                break;
            }
            digits[i] = 0;
        }
    }
}

Matrix WeylAction::conjugate(const Matrix &m) const {
    const Eigen::Index dim = this->dim();
    if (m.rows() != dim || m.cols() != dim) {
        throw ParameterMismatch("Weyl conjugation dimension mismatch");
    }
    Matrix out(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex cj = std::conj(value_[j]);
        const Eigen::Index tj = target_[j];
        for (Eigen::Index i = 0; i < dim; ++i) {
            out(target_[i], tj) = value_[i] * m(i, j) * cj;
        }
    }
    return out;
}

Complex WeylAction::trace_adjoint_product(const Matrix &m) const {
    Complex acc = 0;
    for (Eigen::Index j = 0; j < dim(); ++j) {
        acc += std::conj(value_[j]) * m(target_[j], j);
    }
    return acc;
}

Matrix WeylAction::to_matrix() const {
    Matrix out = Matrix::Zero(dim(), dim());
    for (Eigen::Index j = 0; j < dim(); ++j) {
        out(target_[j], j) = value_[j];
    }
    return out;
}

DenseOperator weyl_matrix(const SympVector &a) {
    return {a.n(), a.modulus(), WeylAction(a).to_matrix()};
}

DenseOperator weil_rep(const PauliElement &g) {
    if (g.t.field_modulus() != g.a.modulus()) {
        throw ParameterMismatch("phase and label of a Pauli element use different moduli");
    }
    return scalar_mul(tau_power(g.t.value(), g.a.prime()), weyl_matrix(g.a));
}

std::optional<PhaseExponent> extract_tau_power(const DenseOperator &lhs, const DenseOperator &rhs,
                                               double snap_tolerance) {
    if (lhs.n() != rhs.n() || lhs.d() != rhs.d()) {
        throw ParameterMismatch("phase extraction between operators on different spaces");
    }
    Eigen::Index row = 0, col = 0;
    const double pivot = rhs.matrix().cwiseAbs().maxCoeff(&row, &col);
    if (pivot == 0.0) {
        return std::nullopt;
    }
    const Complex ratio = lhs(row, col) / rhs(row, col);
    const PrimeModulus d(lhs.d());
    int best = 0;
    double best_gap = std::abs(ratio - tau_power(0, d));
    for (int p = 1; p < d.phase_order(); ++p) {
        const double gap = std::abs(ratio - tau_power(p, d));
        if (gap < best_gap) {
            best_gap = gap;
            best = p;
        }
    }
    if (best_gap > snap_tolerance) {
        return std::nullopt;
    }
    const Matrix residual = lhs.matrix() - tau_power(best, d) * rhs.matrix();
    if (residual.cwiseAbs().maxCoeff() > snap_tolerance) {
        return std::nullopt;
    }
    return PhaseExponent(best, d);
}

}  // namespace punif

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

// The Heisenberg group Z_D x F_d^{2n} and its Weil representation by Weyl
// operators W_a = tau^{-(|u_1 v_1| + ... + |u_n v_n|)} Z^u X^v, where
// X^v|x> = |x+v>, Z^u|x> = omega^{u.x}|x>, omega = e^{2 pi i/d} and
// tau = (-1)^d e^{i pi/d}.

#ifndef PUNIF_PAULI_GROUP_H
#define PUNIF_PAULI_GROUP_H

#include <optional>
#include <vector>

#include "punif/dense_operator.h"
#include "punif/galois.h"

namespace punif {

/// tau^exponent, with quarter turns returned exactly.
Complex tau_power(std::int64_t exponent, PrimeModulus d);
/// omega^exponent.
Complex omega_power(std::int64_t exponent, PrimeModulus d);

inline Complex tau(PrimeModulus d) {
    return tau_power(1, d);
}
inline Complex omega(PrimeModulus d) {
    return omega_power(1, d);
}

/// Element (t, a) of the Heisenberg group.
struct PauliElement {
    PhaseExponent t;
    SympVector a;

    static PauliElement identity(int n, PrimeModulus d) {
        return {PhaseExponent(0, d), SympVector::zero(n, d)};
    }
    bool operator==(const PauliElement &) const = default;
};

/// The cocycle with W_a W_b = tau^{beta(a,b)} W_{a+b}. Closed form obtained by moving X^v past Z^{u'}:
/// beta = s(a+b) - s(a) - s(b) - 2 sum_i |v_i||u'_i|  (mod D), with s(u,v) = sum_i |u_i||v_i|.
PhaseExponent beta(const SympVector &a, const SympVector &b);

/// (t,a).(t',a') = (t + t' + beta(a,a'), a + a')
PauliElement pauli_mul(const PauliElement &g, const PauliElement &h);
PauliElement pauli_inv(const PauliElement &g);

/// [a,b], the exponent in W_a W_b = omega^{[a,b]} W_b W_a.
FieldScalar commutator_phase(const SympVector &a, const SympVector &b);

/// Sparse (monomial) form of W_a: column x has its single nonzero entry in row target[x].
class WeylAction {
   public:
    explicit WeylAction(const SympVector &a);

    const SympVector &label() const {
        return label_;
    }
    Eigen::Index dim() const {
        return static_cast<Eigen::Index>(target_.size());
    }
    Eigen::Index target(Eigen::Index col) const {
        return target_[static_cast<std::size_t>(col)];
    }
    Complex value(Eigen::Index col) const {
        return value_[static_cast<std::size_t>(col)];
    }

    /// W_a M W_a^*
    Matrix conjugate(const Matrix &m) const;
    /// tr(W_a^* M)
    Complex trace_adjoint_product(const Matrix &m) const;
    Matrix to_matrix() const;

   private:
    SympVector label_;
    std::vector<Eigen::Index> target_;
    std::vector<Complex> value_;
};

DenseOperator weyl_matrix(const SympVector &a);

/// rho(t, a) = tau^t W_a
DenseOperator weil_rep(const PauliElement &g);

/// Finds p with lhs = tau^p rhs. The ratio at the largest entry of rhs is snapped to the nearest power of tau
/// when within snap_tolerance; every entry must then agree to the same tolerance.
std::optional<PhaseExponent> extract_tau_power(const DenseOperator &lhs, const DenseOperator &rhs,
                                               double snap_tolerance = 1e-9);

}  // namespace punif

#endif

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
#include <random>

#include "gtest/gtest.h"

using namespace punif;

namespace {

constexpr double kTol = 1e-12;

// Z^u X^v built from the defining action on basis states, independent of WeylAction.
Matrix weyl_by_definition(const SympVector &a) {
    const int d = a.modulus();
    const Complex w = std::exp(Complex(0, 2 * std::numbers::pi / d));
    const Complex t = std::pow(-1.0, d) * std::exp(Complex(0, std::numbers::pi / d));
    Matrix result = Matrix::Identity(1, 1);
    int s = 0;
    for (int i = 0; i < a.n(); ++i) {
        const int u = a.u_lifts()[i];
        const int v = a.v_lifts()[i];
        Matrix z = Matrix::Zero(d, d), x = Matrix::Zero(d, d);
        for (int k = 0; k < d; ++k) {
            z(k, k) = std::pow(w, u * k);
            x((k + v) % d, k) = 1;
        }
        const Matrix local = z * x;
        Matrix next(result.rows() * d, result.cols() * d);
        for (Eigen::Index r = 0; r < result.rows(); ++r) {
            for (Eigen::Index c = 0; c < result.cols(); ++c) {
                next.block(r * d, c * d, d, d) = result(r, c) * local;
            }
        }
        result = next;
        s += u * v;
    }
    return std::pow(t, -s) * result;
}

double dist(const Matrix &a, const Matrix &b) {
    return (a - b).norm() / std::sqrt(static_cast<double>(a.rows()));
}

SympVector random_vector(std::mt19937_64 &rng, int n, PrimeModulus d) {
    std::uniform_int_distribution<std::uint64_t> pick(0, num_symp_vectors(n, d.value()) - 1);
    return SympVector::from_index(pick(rng), n, d);
}

PauliElement random_element(std::mt19937_64 &rng, int n, PrimeModulus d) {
    std::uniform_int_distribution<int> t(0, d.phase_order() - 1);
    return {PhaseExponent(t(rng), d), random_vector(rng, n, d)};
}

}  // namespace

TEST(pauli_group, tau_branch) {
    for (int d : {2, 3, 5, 7}) {
        const PrimeModulus p(d);
        const Complex t = tau(p);
        EXPECT_NEAR(std::abs(t - std::pow(-1.0, d) * std::exp(Complex(0, std::numbers::pi / d))), 0, kTol);
        EXPECT_NEAR(std::abs(t * t - omega(p)), 0, kTol);
        EXPECT_NEAR(std::abs(omega(p) - std::exp(Complex(0, 2 * std::numbers::pi / d))), 0, kTol);
        // order of tau is exactly D
        EXPECT_NEAR(std::abs(tau_power(p.phase_order(), p) - 1.0), 0, kTol);
        for (int j = 1; j < p.phase_order(); ++j) {
            EXPECT_GT(std::abs(tau_power(j, p) - 1.0), 0.1) << "d=" << d << " j=" << j;
        }
    }
    EXPECT_EQ(tau(PrimeModulus(2)), Complex(0, 1));
}

TEST(pauli_group, weyl_matrix_examples) {
    const PrimeModulus d2(2);
    EXPECT_EQ(weyl_matrix(SympVector::zero(2, PrimeModulus(3))).matrix(), Matrix::Identity(9, 9));
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    EXPECT_EQ(weyl_matrix(SympVector({0}, {1}, d2)).matrix(), x);
    // W_(1,1) = tau^{-1} Z X = Y
    Matrix y(2, 2);
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    EXPECT_LT(dist(weyl_matrix(SympVector({1}, {1}, d2)).matrix(), y), kTol);
}

TEST(pauli_group, weyl_matches_definition) {
    for (int d : {2, 3, 5}) {
        const PrimeModulus p(d);
        for (int n : {1, 2}) {
            for (std::uint64_t i = 0; i < num_symp_vectors(n, d); ++i) {
                const SympVector a = SympVector::from_index(i, n, p);
                EXPECT_LT(dist(weyl_matrix(a).matrix(), weyl_by_definition(a)), kTol) << a;
            }
        }
    }
}

TEST(pauli_group, character_unitarity_orthonormality) {
    for (int d : {2, 3}) {
        const PrimeModulus p(d);
        for (int n : {1, 2}) {
            const std::uint64_t count = num_symp_vectors(n, d);
            std::vector<DenseOperator> ws;
            for (std::uint64_t i = 0; i < count; ++i) {
                ws.push_back(weyl_matrix(SympVector::from_index(i, n, p)));
            }
            const double dim = static_cast<double>(ws[0].dim());
            for (std::uint64_t i = 0; i < count; ++i) {
                const Complex tr = ws[i].matrix().trace();
                EXPECT_NEAR(std::abs(tr - (i == 0 ? dim : 0.0)), 0, kTol);
                EXPECT_LT(unitarity_defect(ws[i]), kTol);
                for (std::uint64_t j = 0; j < count; ++j) {
                    EXPECT_NEAR(std::abs(hs_inner(ws[i], ws[j]) - (i == j ? 1.0 : 0.0)), 0, kTol);
                }
            }
        }
    }
}

TEST(pauli_group, beta_matches_matrix_extraction_exhaustive) {
    for (auto [n, d] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{1, 5}, std::pair{2, 2}}) {
        const PrimeModulus p(d);
        const std::uint64_t count = num_symp_vectors(n, d);
        for (std::uint64_t i = 0; i < count; ++i) {
            const SympVector a = SympVector::from_index(i, n, p);
            const DenseOperator wa = weyl_matrix(a);
            for (std::uint64_t j = 0; j < count; ++j) {
                const SympVector b = SympVector::from_index(j, n, p);
                const auto extracted = extract_tau_power(wa * weyl_matrix(b), weyl_matrix(a + b));
                ASSERT_TRUE(extracted.has_value()) << a << " " << b;
                EXPECT_EQ(*extracted, beta(a, b)) << a << " " << b;
            }
        }
    }
}

TEST(pauli_group, beta_identity_row) {
    const PrimeModulus p(3);
    for (std::uint64_t j = 0; j < num_symp_vectors(2, 3); ++j) {
        EXPECT_EQ(beta(SympVector::zero(2, p), SympVector::from_index(j, 2, p)).value(), 0);
    }
}

TEST(pauli_group, cocycle_and_antisymmetry_defect) {
    // exhaustive for n = 1
    for (int d : {2, 3}) {
        const PrimeModulus p(d);
        const std::uint64_t count = num_symp_vectors(1, d);
        for (std::uint64_t i = 0; i < count; ++i) {
            for (std::uint64_t j = 0; j < count; ++j) {
                const SympVector a = SympVector::from_index(i, 1, p);
                const SympVector b = SympVector::from_index(j, 1, p);
                EXPECT_EQ(beta(a, b) - beta(b, a), PhaseExponent(2 * lift(symplectic_form(a, b)), p));
                for (std::uint64_t k = 0; k < count; ++k) {
                    const SympVector c = SympVector::from_index(k, 1, p);
                    EXPECT_EQ(beta(a, b + c) + beta(b, c), beta(a, b) + beta(a + b, c));
                }
            }
        }
    }
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        const PrimeModulus p(trial % 2 ? 3 : 2);
        const SympVector a = random_vector(rng, 2, p);
        const SympVector b = random_vector(rng, 2, p);
        const SympVector c = random_vector(rng, 2, p);
        EXPECT_EQ(beta(a, b + c) + beta(b, c), beta(a, b) + beta(a + b, c));
        EXPECT_EQ(beta(a, b) - beta(b, a), PhaseExponent(2 * lift(symplectic_form(a, b)), p));
    }
}

TEST(pauli_group, commutator_phase) {
    const PrimeModulus d2(2);
    EXPECT_EQ(lift(commutator_phase(SympVector({1}, {0}, d2), SympVector({0}, {1}, d2))), 1);
    EXPECT_EQ(lift(commutator_phase(SympVector({1}, {1}, d2), SympVector({1}, {1}, d2))), 0);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const PrimeModulus p(trial % 2 ? 3 : 2);
        const SympVector a = random_vector(rng, 2, p);
        const SympVector b = random_vector(rng, 2, p);
        const Matrix lhs = weyl_matrix(a).matrix() * weyl_matrix(b).matrix();
        const Matrix rhs =
            omega_power(lift(commutator_phase(a, b)), p) * weyl_matrix(b).matrix() * weyl_matrix(a).matrix();
        EXPECT_LT(dist(lhs, rhs), kTol);
    }
}

TEST(pauli_group, group_law) {
    const PrimeModulus d2(2);
    const auto id = PauliElement::identity(1, d2);
    const PauliElement z{PhaseExponent(0, d2), SympVector({1}, {0}, d2)};
    EXPECT_EQ(pauli_mul(z, id), z);
    EXPECT_EQ(pauli_mul(z, pauli_inv(z)), id);
    EXPECT_EQ(pauli_inv(id), id);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 500; ++trial) {
        const PrimeModulus p(std::array<int, 3>{2, 3, 5}[trial % 3]);
        const int n = 1 + trial % 2;
        const PauliElement g = random_element(rng, n, p);
        const PauliElement h = random_element(rng, n, p);
        const PauliElement k = random_element(rng, n, p);
        EXPECT_EQ(pauli_mul(g, pauli_inv(g)), PauliElement::identity(n, p));
        EXPECT_EQ(pauli_mul(pauli_inv(g), g), PauliElement::identity(n, p));
        EXPECT_EQ(pauli_mul(pauli_mul(g, h), k), pauli_mul(g, pauli_mul(h, k)));
        EXPECT_LT(dist(weil_rep(pauli_mul(g, h)).matrix(), weil_rep(g).matrix() * weil_rep(h).matrix()), kTol);
    }
}

TEST(pauli_group, weil_rep_basics_and_faithfulness) {
    const PrimeModulus d2(2);
    EXPECT_EQ(weil_rep(PauliElement::identity(1, d2)).matrix(), Matrix::Identity(2, 2));
    EXPECT_LT(dist(weil_rep({PhaseExponent(1, d2), SympVector::zero(1, d2)}).matrix(),
                   Complex(0, 1) * Matrix::Identity(2, 2)),
              kTol);
    for (int d : {2, 3}) {
        const PrimeModulus p(d);
        std::vector<Matrix> images;
        for (int t = 0; t < p.phase_order(); ++t) {
            for (std::uint64_t i = 0; i < num_symp_vectors(1, d); ++i) {
                images.push_back(weil_rep({PhaseExponent(t, p), SympVector::from_index(i, 1, p)}).matrix());
            }
        }
        for (std::size_t i = 0; i < images.size(); ++i) {
            for (std::size_t j = i + 1; j < images.size(); ++j) {
                EXPECT_GT(dist(images[i], images[j]), 0.1);
            }
        }
    }
}

TEST(pauli_group, extraction_rejects_non_multiples) {
    const PrimeModulus d2(2);
    const DenseOperator x = weyl_matrix(SympVector({0}, {1}, d2));
    const DenseOperator z = weyl_matrix(SympVector({1}, {0}, d2));
    EXPECT_FALSE(extract_tau_power(x, z).has_value());
    const DenseOperator rotated = scalar_mul(std::polar(1.0, 0.3), x);
    EXPECT_FALSE(extract_tau_power(rotated, x).has_value());
    EXPECT_EQ(extract_tau_power(scalar_mul(Complex(-1, 0), x), x)->value(), 2);
}

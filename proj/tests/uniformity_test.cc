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

#include "punif/uniformity.h"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "punif/errors.h"
#include "punif/gates.h"
#include "punif/pauli_group.h"

using namespace punif;

namespace {

// E_{h_1..h_k} tr(d_{h_k} ... d_{h_1} U) / d^n by enumerating every direction tuple with plain dense
// products. Exponential, test-only.
Complex definitional_pnorm(const Matrix &u, int n, int d, int k) {
    const PrimeModulus p(d);
    const std::uint64_t count = num_symp_vectors(n, d);
    std::vector<Matrix> ws;
    for (std::uint64_t i = 0; i < count; ++i) {
        ws.push_back(weyl_matrix(SympVector::from_index(i, n, p)).matrix());
    }
    const double dim = static_cast<double>(u.rows());
    std::uint64_t tuples = 1;
    for (int i = 0; i < k; ++i) {
        tuples *= count;
    }
    Complex acc = 0;
    for (std::uint64_t t = 0; t < tuples; ++t) {
        Matrix m = u;
        std::uint64_t rest = t;
        for (int i = 0; i < k; ++i) {
            const Matrix &w = ws[rest % count];
            rest /= count;
            m = (w * m * w.adjoint() * m.adjoint()).eval();
        }
        acc += m.trace() / dim;
    }
    return acc / static_cast<double>(tuples);
}

DenseOperator random_operator(std::mt19937_64 &rng, int n, int d) {
    std::normal_distribution<double> g;
    const auto dim = static_cast<Eigen::Index>(int_pow(d, n));
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            const double re = g(rng);
            const double im = g(rng);
            m(i, j) = Complex(re, im);
        }
    }
    return {n, d, m};
}

const UnitaryHandle &t_gate() {
    static const UnitaryHandle t(gates::T());
    return t;
}

}  // namespace

TEST(pauli_derivative, examples) {
    const PrimeModulus d2(2), d3(3);
    const UnitaryHandle u = haar_random_unitary(1, 3, 1);
    EXPECT_LT((pauli_derivative(u, SympVector::zero(1, d3)).matrix() - Matrix::Identity(3, 3)).norm(), 1e-12);

    for (std::uint64_t i = 0; i < 9; ++i) {
        for (std::uint64_t j = 0; j < 9; ++j) {
            const SympVector a = SympVector::from_index(i, 1, d3);
            const SympVector h = SympVector::from_index(j, 1, d3);
            const Matrix expected = omega_power(lift(symplectic_form(h, a)), d3) * Matrix::Identity(3, 3);
            EXPECT_LT((pauli_derivative(UnitaryHandle(weyl_matrix(a)), h).matrix() - expected).norm(), 1e-12);
        }
    }

    // d_X T = e^{i pi/4} diag(1, e^{-i pi/2})
    Matrix expected = Matrix::Zero(2, 2);
    expected(0, 0) = std::polar(1.0, std::numbers::pi / 4);
    expected(1, 1) = std::polar(1.0, -std::numbers::pi / 4);
    EXPECT_LT((pauli_derivative(t_gate(), SympVector({0}, {1}, d2)).matrix() - expected).norm(), 1e-12);

    EXPECT_THROW(pauli_derivative(t_gate(), SympVector::zero(1, d3)), ParameterMismatch);
}

TEST(pnorm_exact, t_gate_oracle_values) {
    // frozen from definitional_pnorm / the four Fourier coefficients of T
    EXPECT_NEAR(definitional_pnorm(gates::T().matrix(), 1, 2, 2).real(), 0.75, 1e-12);
    EXPECT_NEAR(definitional_pnorm(gates::T().matrix(), 1, 2, 3).real(), 0.75, 1e-12);
    EXPECT_NEAR(definitional_pnorm(gates::T().matrix(), 1, 2, 4).real(), 1.0, 1e-12);

    EXPECT_NEAR(pnorm_exact(t_gate(), 2).raw, 0.75, 1e-9);
    EXPECT_NEAR(pnorm_exact(t_gate(), 3).raw, 0.75, 1e-9);
    EXPECT_NEAR(pnorm_exact(t_gate(), 3).value, std::pow(0.75, 1.0 / 8), 1e-9);
    EXPECT_NEAR(pnorm_exact(t_gate(), 3).value, 0.96467, 1e-5);
    EXPECT_NEAR(pnorm_exact(t_gate(), 4).value, 1.0, 1e-9);
    // P^1: |tr T|^2 / 4 = (2 + sqrt 2) / 4
    EXPECT_NEAR(pnorm_exact(t_gate(), 1).raw, (2 + std::numbers::sqrt2) / 4, 1e-12);
}

TEST(pnorm_exact, identity_is_extremal) {
    for (int k = 1; k <= 5; ++k) {
        const NormReport r = pnorm_exact(UnitaryHandle(identity(1, 2)), k);
        EXPECT_NEAR(r.value, 1, 1e-12);
        EXPECT_EQ(r.order, k);
        EXPECT_EQ(r.mode, NormMode::exact);
    }
    EXPECT_NEAR(pnorm_exact(UnitaryHandle(identity(2, 3)), 3).value, 1, 1e-12);
}

TEST(pnorm_exact, matches_definition) {
    std::mt19937_64 rng(42);
    for (auto [n, d, kmax] : {std::tuple{1, 2, 4}, std::tuple{1, 3, 3}, std::tuple{2, 2, 3}}) {
        const UnitaryHandle u = haar_random_unitary(n, d, rng);
        for (int k = 1; k <= kmax; ++k) {
            const Complex oracle = definitional_pnorm(u.matrix(), n, d, k);
            EXPECT_NEAR(oracle.imag(), 0, 1e-12);
            EXPECT_NEAR(pnorm_exact(u, k).raw, oracle.real(), 1e-9) << "n=" << n << " d=" << d << " k=" << k;
        }
    }
}

TEST(pnorm_exact, nesting_identity) {
    std::mt19937_64 rng(43);
    for (auto [n, d] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
        const UnitaryHandle u = haar_random_unitary(n, d, rng);
        const PrimeModulus p(d);
        for (int k = 2; k <= 4; ++k) {
            if (n == 2 && k == 4) {
                continue;
            }
            double mean = 0;
            const std::uint64_t count = num_symp_vectors(n, d);
            for (std::uint64_t i = 0; i < count; ++i) {
                mean += pnorm_raw(pauli_derivative(u.op(), SympVector::from_index(i, n, p)), k - 1);
            }
            mean /= static_cast<double>(count);
            EXPECT_NEAR(pnorm_exact(u, k).raw, mean, 1e-9);
        }
    }
}

TEST(pnorm_exact, bounded_and_p1_closed_form) {
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = trial % 2 ? 3 : 2;
        const int n = trial % 4 < 2 ? 1 : 2;
        const UnitaryHandle u = haar_random_unitary(n, d, rng);
        const double dim = static_cast<double>(u.dim());
        EXPECT_NEAR(pnorm_exact(u, 1).raw, std::norm(u.matrix().trace()) / (dim * dim), 1e-12);
        for (int k = 1; k <= 3; ++k) {
            const NormReport r = pnorm_exact(u, k);
            EXPECT_GE(r.raw_unclamped, -1e-12);
            EXPECT_LE(r.raw_unclamped, 1 + 1e-9);
            EXPECT_NEAR(r.raw, std::pow(r.value, std::ldexp(1.0, k)), 1e-12);
        }
    }
}

TEST(pnorm_exact, pauli_and_adjoint_invariance) {
    std::mt19937_64 rng(45);
    for (auto [n, d] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
        const PrimeModulus p(d);
        std::uniform_int_distribution<std::uint64_t> pick(0, num_symp_vectors(n, d) - 1);
        for (int trial = 0; trial < 3; ++trial) {
            const UnitaryHandle u = haar_random_unitary(n, d, rng);
            const DenseOperator wa = weyl_matrix(SympVector::from_index(pick(rng), n, p));
            const DenseOperator wb = weyl_matrix(SympVector::from_index(pick(rng), n, p));
            const UnitaryHandle moved(wa * u.op() * wb);
            const UnitaryHandle adj(adjoint(u.op()));
            for (int k = 2; k <= 3; ++k) {
                const double base = pnorm_exact(u, k).value;
                EXPECT_NEAR(pnorm_exact(moved, k).value, base, 1e-9);
                EXPECT_NEAR(pnorm_exact(adj, k).value, base, 1e-9);
            }
        }
    }
}

TEST(pnorm_exact, triangle_inequality_spot_checks) {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = trial % 2 ? 3 : 2;
        const DenseOperator a = random_operator(rng, 1, d);
        const DenseOperator b = random_operator(rng, 1, d);
        for (int k = 2; k <= 3; ++k) {
            const double root = 1.0 / std::ldexp(1.0, k);
            const double na = std::pow(pnorm_raw(a, k), root);
            const double nb = std::pow(pnorm_raw(b, k), root);
            const double nab = std::pow(pnorm_raw(a + b, k), root);
            EXPECT_LE(nab, na + nb + 1e-9);
            // homogeneity
            EXPECT_NEAR(std::pow(pnorm_raw(scalar_mul(Complex(0, 2.5), a), k), root), 2.5 * na, 1e-9);
        }
    }
}

TEST(pnorm_exact, budget_guard) {
    const UnitaryHandle u = haar_random_unitary(2, 3, 1);
    EXPECT_EQ(exact_term_count(2, 3, 1), 1u);
    EXPECT_EQ(exact_term_count(2, 3, 3), 81u * 81u);
    EXPECT_THROW(pnorm_exact(u, 5), BudgetExceeded);
    ExactNormOptions tight;
    tight.max_terms = 50;
    EXPECT_THROW(pnorm_exact(u, 2, tight), BudgetExceeded);
    EXPECT_THROW(exact_term_count(1, 2, 0), InvalidParameter);
}

TEST(pnorm_exact, thread_count_does_not_change_value) {
    const UnitaryHandle u = haar_random_unitary(2, 2, 9);
    ExactNormOptions one, four;
    one.threads = 1;
    four.threads = 4;
    EXPECT_EQ(pnorm_exact(u, 4, one).raw, pnorm_exact(u, 4, four).raw);
}

TEST(pnorm_sampled, estimates) {
    const NormReport id = pnorm_sampled(UnitaryHandle(identity(1, 2)), 4, 100, 1);
    EXPECT_EQ(id.raw, 1.0);
    EXPECT_EQ(id.stderr_estimate, 0.0);
    EXPECT_EQ(id.samples, 100u);
    EXPECT_EQ(id.mode, NormMode::sampled);

    const NormReport t = pnorm_sampled(t_gate(), 4, 10000, 3);
    EXPECT_NEAR(t.raw_unclamped, 1.0, 3 * t.stderr_estimate + 1e-12);

    const UnitaryHandle u = haar_random_unitary(2, 2, 1234);
    const NormReport exact = pnorm_exact(u, 4);
    const NormReport est = pnorm_sampled(u, 4, 10000, 5);
    EXPECT_GT(est.stderr_estimate, 0);
    EXPECT_NEAR(est.raw_unclamped, exact.raw, 3 * est.stderr_estimate);

    // k = 2 has no outer directions to sample
    const NormReport k2 = pnorm_sampled(u, 2, 10, 5);
    EXPECT_NEAR(k2.raw, pnorm_exact(u, 2).raw, 1e-12);
    EXPECT_NEAR(k2.stderr_estimate, 0, 1e-15);

    EXPECT_THROW(pnorm_sampled(u, 1, 10, 1), InvalidParameter);
    EXPECT_THROW(pnorm_sampled(u, 3, 0, 1), InvalidParameter);
}

TEST(pnorm_sampled, deterministic_under_seed) {
    const UnitaryHandle u = haar_random_unitary(1, 3, 77);
    const NormReport a = pnorm_sampled(u, 4, 500, 11, 1);
    const NormReport b = pnorm_sampled(u, 4, 500, 11, 3);
    const NormReport c = pnorm_sampled(u, 4, 500, 12, 1);
    EXPECT_EQ(a.raw_unclamped, b.raw_unclamped);
    EXPECT_EQ(a.stderr_estimate, b.stderr_estimate);
    EXPECT_NE(a.raw_unclamped, c.raw_unclamped);
}

TEST(norm_report, json_fields) {
    const nlohmann::json exact = to_json(pnorm_exact(t_gate(), 3));
    EXPECT_EQ(exact["order"], 3);
    EXPECT_EQ(exact["mode"], "exact");
    EXPECT_EQ(exact["term_count"], 16);
    EXPECT_TRUE(exact.contains("runtime_ms"));
    EXPECT_FALSE(exact.contains("stderr"));
    EXPECT_NEAR(exact["raw"].get<double>(), 0.75, 1e-9);

    const nlohmann::json sampled = to_json(pnorm_sampled(t_gate(), 3, 10, 1));
    EXPECT_EQ(sampled["mode"], "sampled");
    EXPECT_EQ(sampled["samples"], 10);
    EXPECT_TRUE(sampled.contains("stderr"));
}

TEST(fourier, coefficients) {
    const PrimeModulus d2(2), d3(3);
    const SympVector b({1, 2}, {0, 1}, d3);
    const FourierTable wb = fourier_coeffs(weyl_matrix(b));
    for (std::uint64_t i = 0; i < wb.size(); ++i) {
        EXPECT_NEAR(std::abs(wb.at_index(i) - (i == b.index() ? 1.0 : 0.0)), 0, 1e-12);
    }
    EXPECT_EQ(wb.argmax(), b);

    const FourierTable t = fourier_coeffs(gates::T());
    const Complex e = std::polar(1.0, std::numbers::pi / 4);
    EXPECT_NEAR(std::abs(t[SympVector::zero(1, d2)] - (1.0 + e) / 2.0), 0, 1e-12);
    EXPECT_NEAR(std::abs(t[SympVector({1}, {0}, d2)] - (1.0 - e) / 2.0), 0, 1e-12);
    EXPECT_NEAR(std::abs(t[SympVector({0}, {1}, d2)]), 0, 1e-12);
    EXPECT_NEAR(std::abs(t[SympVector({1}, {1}, d2)]), 0, 1e-12);
    EXPECT_NEAR(t.l4_sum(), 0.75, 1e-12);
    EXPECT_THROW(t[SympVector::zero(1, d3)], ParameterMismatch);
}

TEST(fourier, reconstruction_and_parseval) {
    std::mt19937_64 rng(50);
    for (auto [n, d] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}, std::pair{2, 3}}) {
        const DenseOperator a = random_operator(rng, n, d);
        const FourierTable table = fourier_coeffs(a);
        EXPECT_LT((table.reconstruct().matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-10);
        EXPECT_NEAR(table.parseval_sum(), hs_inner(a, a).real(), 1e-10);
        const UnitaryHandle u = haar_random_unitary(n, d, rng);
        EXPECT_NEAR(fourier_coeffs(u.op()).parseval_sum(), 1, 1e-12);
    }
}

TEST(fourier, p2_identity_on_haar_unitaries) {
    std::mt19937_64 rng(51);
    double worst = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int d = trial % 2 ? 3 : 2;
        const int n = trial % 4 < 2 ? 1 : 2;
        const UnitaryHandle u = haar_random_unitary(n, d, rng);
        worst = std::max(worst, std::abs(p2_via_fourier(u) - pnorm_exact(u, 2).raw));
    }
    EXPECT_LE(worst, 1e-9);
    EXPECT_NEAR(p2_via_fourier(UnitaryHandle(weyl_matrix(SympVector({1}, {1}, PrimeModulus(2))))), 1, 1e-12);
    EXPECT_NEAR(p2_via_fourier(t_gate()), 0.75, 1e-12);
}

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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "punif/concurrency.h"
#include "punif/errors.h"
#include "punif/pauli_group.h"

namespace punif {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::vector<WeylAction> all_weyl_actions(int n, int d) {
    const PrimeModulus p(d);
    const std::uint64_t count = num_symp_vectors(n, d);
    std::vector<WeylAction> actions;
    actions.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        actions.emplace_back(SympVector::from_index(i, n, p));
    }
    return actions;
}

// Shared state for one norm evaluation: Weyl actions for every direction.
class NormKernel {
   public:
    NormKernel(int n, int d) : actions_(all_weyl_actions(n, d)) {
    }

    std::size_t directions() const {
        return actions_.size();
    }

    Matrix derivative(const Matrix &m, std::size_t h) const {
        return actions_[h].conjugate(m) * m.adjoint();
    }

    static double p1_raw(const Matrix &m) {
        const double dim = static_cast<double>(m.rows());
        return std::norm(m.trace()) / (dim * dim);
    }

    // E_h |tr(d_h M)|^2 / d^{2n}; tr(W M W^* M^*) = sum_ij (W M W^*)_ij conj(M_ij).
    double p2_raw(const Matrix &m) const {
        const double dim = static_cast<double>(m.rows());
        double acc = 0;
        for (const auto &w : actions_) {
            const Complex tr = w.conjugate(m).cwiseProduct(m.conjugate()).sum();
            acc += std::norm(tr);
        }
        return acc / (static_cast<double>(actions_.size()) * dim * dim);
    }

    double raw(const Matrix &m, int k) const {
        if (k == 1) {
            return p1_raw(m);
        }
        if (k == 2) {
            return p2_raw(m);
        }
        // Each derivative is built once and reused for its whole subtree.
        double acc = 0;
        for (std::size_t h = 0; h < actions_.size(); ++h) {
            acc += raw(derivative(m, h), k - 1);
        }
        return acc / static_cast<double>(actions_.size());
    }

    double raw_parallel(const Matrix &m, int k, unsigned threads) const {
        if (k <= 2 || resolve_threads(threads) <= 1) {
            return raw(m, k);
        }
        std::vector<double> partial(actions_.size());
        parallel_for(actions_.size(), threads, [&](std::size_t h) { partial[h] = raw(derivative(m, h), k - 1); });
        double acc = 0;
        for (double x : partial) {
            acc += x;
        }
        return acc / static_cast<double>(actions_.size());
    }

   private:
    std::vector<WeylAction> actions_;
};

void finish_report(NormReport &report) {
    report.raw = std::clamp(report.raw_unclamped, 0.0, 1.0);
    report.value = std::pow(report.raw, 1.0 / std::ldexp(1.0, report.order));
}

}  // namespace

nlohmann::json to_json(const NormReport &report) {
    nlohmann::json j{{"order", report.order},
                     {"value", report.value},
                     {"raw", report.raw},
                     {"raw_unclamped", report.raw_unclamped},
                     {"mode", report.mode == NormMode::exact ? "exact" : "sampled"}};
    if (report.mode == NormMode::exact) {
        j["term_count"] = report.term_count;
    } else {
        j["samples"] = report.samples;
        j["stderr"] = report.stderr_estimate;
    }
    j["runtime_ms"] = report.runtime_ms;
    return j;
}

DenseOperator pauli_derivative(const DenseOperator &u, const SympVector &h) {
    if (h.n() != u.n() || h.modulus() != u.d()) {
        throw ParameterMismatch("derivative direction " + h.str() + " does not match the operator's space");
    }
    return {u.n(), u.d(), WeylAction(h).conjugate(u.matrix()) * u.matrix().adjoint()};
}

UnitaryHandle pauli_derivative(const UnitaryHandle &u, const SympVector &h) {
    return UnitaryHandle(pauli_derivative(u.op(), h));
}

std::uint64_t exact_term_count(int n, int d, int k) {
    if (k < 1) {
        throw InvalidParameter("norm order must be at least 1");
    }
    if (k == 1) {
        return 1;
    }
    const long double directions = static_cast<long double>(num_symp_vectors(n, d));
    const long double terms = std::pow(directions, static_cast<long double>(k - 1));
    if (terms >= static_cast<long double>(std::numeric_limits<std::uint64_t>::max())) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(terms);
}

double pnorm_raw(const DenseOperator &a, int k, const ExactNormOptions &options) {
    const std::uint64_t terms = exact_term_count(a.n(), a.d(), k);
    if (terms > options.max_terms) {
        throw BudgetExceeded("exact P^" + std::to_string(k) + " norm needs " + std::to_string(terms) +
                             " trace evaluations (budget " + std::to_string(options.max_terms) +
                             "); use the sampled estimator instead");
    }
    const NormKernel kernel(a.n(), a.d());
    return kernel.raw_parallel(a.matrix(), k, options.threads);
}

NormReport pnorm_exact(const UnitaryHandle &u, int k, const ExactNormOptions &options) {
    const auto start = Clock::now();
    NormReport report;
    report.order = k;
    report.mode = NormMode::exact;
    report.raw_unclamped = pnorm_raw(u.op(), k, options);
    report.term_count = exact_term_count(u.n(), u.d(), k);
    finish_report(report);
    report.runtime_ms = elapsed_ms(start);
    return report;
}

NormReport pnorm_sampled(const UnitaryHandle &u, int k, std::uint64_t num_samples, std::uint64_t seed,
                         unsigned threads) {
    if (k < 2) {
        throw InvalidParameter("sampled norm needs k >= 2");
    }
    if (num_samples < 1) {
        throw InvalidParameter("sampled norm needs at least one sample");
    }
    const auto start = Clock::now();
    const NormKernel kernel(u.n(), u.d());
    std::vector<double> values(num_samples);
    parallel_for(num_samples, threads, [&](std::size_t i) {
        std::mt19937_64 rng(split_seed(seed, i));
        std::uniform_int_distribution<std::size_t> pick(0, kernel.directions() - 1);
        Matrix m = u.matrix();
        for (int level = 0; level < k - 2; ++level) {
            m = kernel.derivative(m, pick(rng));
        }
        values[i] = kernel.p2_raw(m);
    });

    double mean = 0;
    for (double x : values) {
        mean += x;
    }
    mean /= static_cast<double>(num_samples);
    double var = 0;
    if (num_samples > 1) {
        for (double x : values) {
            var += (x - mean) * (x - mean);
        }
        var /= static_cast<double>(num_samples - 1);
    }

    NormReport report;
    report.order = k;
    report.mode = NormMode::sampled;
    report.raw_unclamped = mean;
    report.samples = num_samples;
    report.stderr_estimate = std::sqrt(var / static_cast<double>(num_samples));
    finish_report(report);
    report.runtime_ms = elapsed_ms(start);
    return report;
}

FourierTable::FourierTable(int n, int d, std::vector<Complex> coefficients)
    : n_(n), d_(d), coefficients_(std::move(coefficients)) {
    if (coefficients_.size() != num_symp_vectors(n, d)) {
        throw ParameterMismatch("Fourier table must hold d^{2n} coefficients");
    }
}

Complex FourierTable::operator[](const SympVector &a) const {
    if (a.n() != n_ || a.modulus() != d_) {
        throw ParameterMismatch("Fourier label " + a.str() + " does not match the table");
    }
    return coefficients_[a.index()];
}

double FourierTable::parseval_sum() const {
    double acc = 0;
    for (const auto &c : coefficients_) {
        acc += std::norm(c);
    }
    return acc;
}

double FourierTable::l4_sum() const {
    double acc = 0;
    for (const auto &c : coefficients_) {
        const double w = std::norm(c);
        acc += w * w;
    }
    return acc;
}

SympVector FourierTable::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < coefficients_.size(); ++i) {
        if (std::abs(coefficients_[i]) > std::abs(coefficients_[best])) {
            best = i;
        }
    }
    return SympVector::from_index(best, n_, PrimeModulus(d_));
}

DenseOperator FourierTable::reconstruct() const {
    const PrimeModulus p(d_);
    const auto dim = static_cast<Eigen::Index>(int_pow(static_cast<std::uint64_t>(d_), static_cast<unsigned>(n_)));
    Matrix out = Matrix::Zero(dim, dim);
    for (std::uint64_t i = 0; i < coefficients_.size(); ++i) {
        if (coefficients_[i] == Complex{}) {
            continue;
        }
        const WeylAction w(SympVector::from_index(i, n_, p));
        for (Eigen::Index j = 0; j < dim; ++j) {
            out(w.target(j), j) += coefficients_[i] * w.value(j);
        }
    }
    return {n_, d_, std::move(out)};
}

FourierTable fourier_coeffs(const DenseOperator &u) {
    const PrimeModulus p(u.d());
    const std::uint64_t count = num_symp_vectors(u.n(), u.d());
    std::vector<Complex> coefficients(count);
    const double dim = static_cast<double>(u.dim());
    for (std::uint64_t i = 0; i < count; ++i) {
        coefficients[i] = WeylAction(SympVector::from_index(i, u.n(), p)).trace_adjoint_product(u.matrix()) / dim;
    }
    return {u.n(), u.d(), std::move(coefficients)};
}

double p2_via_fourier(const UnitaryHandle &u) {
    return fourier_coeffs(u.op()).l4_sum();
}

}  // namespace punif

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

// Pauli derivatives, the Pauli uniformity norms ||U||_{P^k} and Fourier
// analysis in the Weyl basis.
//
//   d_h U          = W_h U W_h^* U^*
//   ||U||_{P^k}^{2^k} = E_{h_1..h_k} tr(d_{h_k} ... d_{h_1} U) / d^n
//
// Exact evaluation recurses E_h ||d_h U||_{P^{k-1}}^{2^{k-1}} down to the
// closed forms ||U||_{P^1}^2 = |tr U|^2 / d^{2n} and
// ||U||_{P^2}^4 = E_h |tr d_h U|^2 / d^{2n}.

#ifndef PUNIF_UNIFORMITY_H
#define PUNIF_UNIFORMITY_H

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "punif/dense_operator.h"
#include "punif/galois.h"

namespace punif {

enum class NormMode { exact, sampled };

struct NormReport {
    int order = 0;
    /// ||U||_{P^k}, computed from the clamped raw value.
    double value = 0;
    /// ||U||_{P^k}^{2^k}, clamped to [0, 1].
    double raw = 0;
    /// The expectation before clamping.
    double raw_unclamped = 0;
    NormMode mode = NormMode::exact;
    /// Exact mode: number of trace evaluations.
    std::uint64_t term_count = 0;
    /// Sampled mode.
    std::uint64_t samples = 0;
    double stderr_estimate = 0;
    double runtime_ms = 0;
};

nlohmann::json to_json(const NormReport &report);

struct ExactNormOptions {
    /// Refuse exact evaluation past this many trace evaluations.
    std::uint64_t max_terms = 10'000'000;
    unsigned threads = 0;
};

DenseOperator pauli_derivative(const DenseOperator &u, const SympVector &h);
UnitaryHandle pauli_derivative(const UnitaryHandle &u, const SympVector &h);

/// Trace evaluations needed for exact ||.||_{P^k} on n qudits of dimension d.
std::uint64_t exact_term_count(int n, int d, int k);

/// Unclamped ||A||_{P^k}^{2^k} for any operator A (real part of the expectation).
/// Throws BudgetExceeded when exact_term_count exceeds options.max_terms.
double pnorm_raw(const DenseOperator &a, int k, const ExactNormOptions &options = {});

NormReport pnorm_exact(const UnitaryHandle &u, int k, const ExactNormOptions &options = {});

/// Monte-Carlo estimate: samples the outer k-2 directions uniformly and evaluates the P^2 base exactly.
/// Deterministic for a given seed regardless of thread count.
NormReport pnorm_sampled(const UnitaryHandle &u, int k, std::uint64_t num_samples, std::uint64_t seed,
                         unsigned threads = 0);

/// Coefficients U^(a) = <W_a, U>, indexed by SympVector::index().
class FourierTable {
   public:
    FourierTable(int n, int d, std::vector<Complex> coefficients);

    int n() const {
        return n_;
    }
    int d() const {
        return d_;
    }
    std::size_t size() const {
        return coefficients_.size();
    }
    Complex operator[](const SympVector &a) const;
    Complex at_index(std::uint64_t index) const {
        return coefficients_.at(index);
    }
    const std::vector<Complex> &coefficients() const {
        return coefficients_;
    }

    /// sum_a |U^(a)|^2
    double parseval_sum() const;
    /// sum_a |U^(a)|^4
    double l4_sum() const;
    /// Label of the coefficient of largest modulus (first in index order on ties).
    SympVector argmax() const;
    /// sum_a U^(a) W_a
    DenseOperator reconstruct() const;

   private:
    int n_;
    int d_;
    std::vector<Complex> coefficients_;
};

FourierTable fourier_coeffs(const DenseOperator &u);

/// ||U||_{P^2}^4 computed as sum_a |U^(a)|^4.
double p2_via_fourier(const UnitaryHandle &u);

}  // namespace punif

#endif

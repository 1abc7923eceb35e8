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

// Measurement-statistics simulation of the swap-test norm estimator and the
// third-level tester built on it, with exact oracle query accounting.

#ifndef PUNIF_TESTER_H
#define PUNIF_TESTER_H

#include <atomic>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "json.hpp"
#include "punif/dense_operator.h"
#include "punif/galois.h"

namespace punif {

/// Shared between an oracle and everything derived from it.
struct QueryCounter {
    std::atomic<std::uint64_t> u{0};
    std::atomic<std::uint64_t> u_adj{0};
};

struct QueryCost {
    std::uint64_t u = 0;
    std::uint64_t u_adj = 0;

    std::uint64_t total() const {
        return u + u_adj;
    }
    bool operator==(const QueryCost &) const = default;
};

/// Query access to U, U* and operators built from them by Pauli derivatives and adjoints. The matrix is
/// materialized lazily and cached; queries are counted symbolically, once per apply().
class OracleHandle {
   public:
    explicit OracleHandle(UnitaryHandle u);

    /// Oracle for d_h V = W_h V W_h* V*, where V is this oracle.
    OracleHandle derivative(const SympVector &h) const;
    OracleHandle adjoint() const;

    int n() const;
    int d() const;
    Eigen::Index dim() const;
    /// Number of derivatives between this oracle and the underlying unitary.
    int depth() const;
    /// Queries to U and U* consumed by one application.
    QueryCost cost() const;

    const Matrix &matrix() const;
    /// Applies the operator to the columns of m and charges cost() to the shared counter.
    Matrix apply(const Matrix &m) const;

    QueryCost queries_used() const;
    std::shared_ptr<QueryCounter> counter() const;

   private:
    struct Node;
    explicit OracleHandle(std::shared_ptr<const Node> node);
    std::shared_ptr<const Node> node_;
};

/// Amplitudes on two n-qudit registers; index i * d^n + j holds <i, j|psi>.
class EntangledState {
   public:
    EntangledState(int n, int d, Eigen::VectorXcd amplitudes);

    int n() const {
        return n_;
    }
    int d() const {
        return d_;
    }
    const Eigen::VectorXcd &amplitudes() const {
        return amplitudes_;
    }

   private:
    int n_;
    int d_;
    Eigen::VectorXcd amplitudes_;
};

/// (1 / sqrt(d^n)) sum_i |i, i>
EntangledState prepare_max_entangled(int n, int d);

/// (V (x) I)|psi>, one application of the oracle.
EntangledState apply_first_register(const OracleHandle &v, const EntangledState &psi);

enum class SwapTestMode {
    /// Bernoulli draw with the exactly computed acceptance probability.
    exact,
    /// Builds the control (x) psi (x) phi state, applies H, controlled-SWAP, H and measures the control.
    circuit,
};

/// (1 + |<psi|phi>|^2) / 2
double swap_test_accept_probability(const EntangledState &psi, const EntangledState &phi);

/// Returns 1 when the control qubit is measured in |0>.
int swap_test(const EntangledState &psi, const EntangledState &phi, std::mt19937_64 &rng,
              SwapTestMode mode = SwapTestMode::exact);

/// One run of the recursive estimator; Pr[1] = (1 + ||U||_{P^k}^{2^k}) / 2.
int pnorm_bias(const OracleHandle &u, int k, std::mt19937_64 &rng, SwapTestMode mode = SwapTestMode::exact);

struct BiasRuns {
    std::vector<std::uint8_t> outcomes;
    std::uint64_t ones = 0;
    QueryCost queries;

    double rate() const {
        return outcomes.empty() ? 0.0 : static_cast<double>(ones) / static_cast<double>(outcomes.size());
    }
};

/// Independent runs; run i draws from split_seed(seed, i), so outcomes do not depend on the thread count.
BiasRuns run_pnorm_bias(const UnitaryHandle &u, int k, std::uint64_t runs, std::uint64_t seed, unsigned threads = 0,
                        SwapTestMode mode = SwapTestMode::exact);

struct TesterConfig {
    double epsilon = 0.02;
    /// Probability that the estimate lands within epsilon of ||U||_{P^4}^16.
    double confidence = 0.9;
    /// 0 means derive from epsilon and confidence.
    std::uint64_t repetitions = 0;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    SwapTestMode mode = SwapTestMode::exact;
};

/// Runs needed so that E = 2 * rate - 1 is within epsilon of its mean with the given confidence. The rate must
/// be within epsilon / 2; Hoeffding with a one-sided failure of (1 - confidence) / 2 per side gives
/// ceil(2 ln(2 / (1 - confidence)) / epsilon^2).
std::uint64_t tester_repetitions(double epsilon, double confidence);

struct TesterReport {
    int n = 0;
    int d = 0;
    int k = 4;
    double epsilon = 0;
    std::uint64_t repetitions = 0;
    std::uint64_t ones = 0;
    double estimate = 0;
    double threshold = 0;
    int decision = 0;
    std::uint64_t queries_u = 0;
    std::uint64_t queries_u_adj = 0;
    std::uint64_t seed = 0;
    double runtime_ms = 0;
};

nlohmann::json to_json(const TesterReport &report);

/// 0 iff estimate <= 1 - 17 epsilon.
int c3_decision(double estimate, double epsilon);

/// Estimates ||U||_{P^4}^16 by E = 2 * rate - 1 and outputs 0 iff E <= 1 - 17 epsilon. Requires 0 < epsilon <= 0.04.
TesterReport c3_tester(const UnitaryHandle &u, const TesterConfig &config = {});

}  // namespace punif

#endif

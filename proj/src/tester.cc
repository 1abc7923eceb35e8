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

#include "punif/tester.h"

#include <chrono>
#include <cmath>
#include <mutex>
#include <numbers>
#include <optional>

#include "punif/concurrency.h"
#include "punif/errors.h"
#include "punif/pauli_group.h"

namespace punif {

struct OracleHandle::Node {
    enum class Kind { base, derivative, adjoint };

    Kind kind = Kind::base;
    std::shared_ptr<QueryCounter> counter;
    std::shared_ptr<const UnitaryHandle> base;
    std::shared_ptr<const Node> parent;
    std::optional<WeylAction> weyl;
    int depth = 0;
    QueryCost cost;

    mutable std::once_flag materialized;
    mutable Matrix cache;

    const Matrix &matrix() const {
        std::call_once(materialized, [this] {
            switch (kind) {
                case Kind::base:
                    cache = base->matrix();
                    break;
                case Kind::derivative: {
                    const Matrix &p = parent->matrix();
                    cache = weyl->conjugate(p) * p.adjoint();
                    break;
                }
                case Kind::adjoint:
                    cache = parent->matrix().adjoint();
                    break;
            }
        });
        return cache;
    }
};

OracleHandle::OracleHandle(UnitaryHandle u) {
    auto node = std::make_shared<Node>();
    node->counter = std::make_shared<QueryCounter>();
    node->base = std::make_shared<const UnitaryHandle>(std::move(u));
    node->cost = {1, 0};
    node_ = std::move(node);
}

OracleHandle::OracleHandle(std::shared_ptr<const Node> node) : node_(std::move(node)) {
}

OracleHandle OracleHandle::derivative(const SympVector &h) const {
    if (h.n() != n() || h.modulus() != d()) {
        throw ParameterMismatch("direction does not match the oracle's (n, d)");
    }
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::derivative;
    node->counter = node_->counter;
    node->base = node_->base;
    node->parent = node_;
    node->weyl.emplace(h);
    node->depth = node_->depth + 1;
    // W_h V W_h* V* uses V once and V* once.
    const std::uint64_t per_side = node_->cost.u + node_->cost.u_adj;
    node->cost = {per_side, per_side};
    return OracleHandle(std::move(node));
}

OracleHandle OracleHandle::adjoint() const {
    auto node = std::make_shared<Node>();
    node->kind = Node::Kind::adjoint;
    node->counter = node_->counter;
    node->base = node_->base;
    node->parent = node_;
    node->depth = node_->depth;
    node->cost = {node_->cost.u_adj, node_->cost.u};
    return OracleHandle(std::move(node));
}

int OracleHandle::n() const {
    return node_->base->n();
}

int OracleHandle::d() const {
    return node_->base->d();
}

Eigen::Index OracleHandle::dim() const {
    return node_->base->dim();
}

int OracleHandle::depth() const {
    return node_->depth;
}

QueryCost OracleHandle::cost() const {
    return node_->cost;
}

const Matrix &OracleHandle::matrix() const {
    return node_->matrix();
}

Matrix OracleHandle::apply(const Matrix &m) const {
    if (m.rows() != dim()) {
        throw ParameterMismatch("operand dimension does not match the oracle");
    }
    node_->counter->u.fetch_add(node_->cost.u, std::memory_order_relaxed);
    node_->counter->u_adj.fetch_add(node_->cost.u_adj, std::memory_order_relaxed);
    return node_->matrix() * m;
}

QueryCost OracleHandle::queries_used() const {
    return {node_->counter->u.load(), node_->counter->u_adj.load()};
}

std::shared_ptr<QueryCounter> OracleHandle::counter() const {
    return node_->counter;
}

EntangledState::EntangledState(int n, int d, Eigen::VectorXcd amplitudes)
    : n_(n), d_(d), amplitudes_(std::move(amplitudes)) {
    (void)PrimeModulus(d);
    const auto dim = static_cast<Eigen::Index>(int_pow(d, n));
    if (amplitudes_.size() != dim * dim) {
        throw ParameterMismatch("amplitude vector does not match two registers of n qudits");
    }
    if (std::abs(amplitudes_.norm() - 1) > 1e-9) {
        throw InvalidParameter("state is not normalized");
    }
}

EntangledState prepare_max_entangled(int n, int d) {
    const auto dim = static_cast<Eigen::Index>(int_pow(d, n));
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim * dim);
    const double a = 1 / std::sqrt(static_cast<double>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) {
        amps(i * dim + i) = a;
    }
    return {n, d, std::move(amps)};
}

EntangledState apply_first_register(const OracleHandle &v, const EntangledState &psi) {
    if (v.n() != psi.n() || v.d() != psi.d()) {
        throw ParameterMismatch("oracle and state disagree on (n, d)");
    }
    const Eigen::Index dim = v.dim();
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    // Row i of the reshaped state is the first-register index.
    const RowMajor m = Eigen::Map<const RowMajor>(psi.amplitudes().data(), dim, dim);
    const RowMajor out = v.apply(m);
    return {psi.n(), psi.d(), Eigen::Map<const Eigen::VectorXcd>(out.data(), dim * dim)};
}

double swap_test_accept_probability(const EntangledState &psi, const EntangledState &phi) {
    if (psi.amplitudes().size() != phi.amplitudes().size()) {
        throw ParameterMismatch("swap test on states of different dimension");
    }
    return (1 + std::norm(psi.amplitudes().dot(phi.amplitudes()))) / 2;
}

namespace {

double circuit_accept_probability(const EntangledState &psi, const EntangledState &phi) {
    const Eigen::Index dim = psi.amplitudes().size();
    const Eigen::Index half = dim * dim;
    // Control qubit is the most significant index bit; then psi's register, then phi's.
    Eigen::VectorXcd state(2 * half);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            state(i * dim + j) = psi.amplitudes()(i) * phi.amplitudes()(j);
        }
    }
    state.tail(half).setZero();

    const double r = 1 / std::numbers::sqrt2;
    auto hadamard = [&] {
        const Eigen::VectorXcd zero = state.head(half);
        const Eigen::VectorXcd one = state.tail(half);
        state.head(half) = r * (zero + one);
        state.tail(half) = r * (zero - one);
    };
    hadamard();
    Eigen::VectorXcd swapped(half);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            swapped(j * dim + i) = state(half + i * dim + j);
        }
    }
    state.tail(half) = swapped;
    hadamard();
    return state.head(half).squaredNorm();
}

}  // namespace

int swap_test(const EntangledState &psi, const EntangledState &phi, std::mt19937_64 &rng, SwapTestMode mode) {
    const double p = mode == SwapTestMode::exact ? swap_test_accept_probability(psi, phi)
                                                 : circuit_accept_probability(psi, phi);
    return std::uniform_real_distribution<double>(0, 1)(rng) < p ? 1 : 0;
}

int pnorm_bias(const OracleHandle &u, int k, std::mt19937_64 &rng, SwapTestMode mode) {
    if (k < 1) {
        throw InvalidParameter("k must be at least 1");
    }
    if (k == 1) {
        const EntangledState phi = prepare_max_entangled(u.n(), u.d());
        return swap_test(phi, apply_first_register(u, phi), rng, mode);
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, num_symp_vectors(u.n(), u.d()) - 1);
    const SympVector h = SympVector::from_index(pick(rng), u.n(), PrimeModulus(u.d()));
    return pnorm_bias(u.derivative(h), k - 1, rng, mode);
}

BiasRuns run_pnorm_bias(const UnitaryHandle &u, int k, std::uint64_t runs, std::uint64_t seed, unsigned threads,
                        SwapTestMode mode) {
    const OracleHandle oracle(u);
    BiasRuns out;
    out.outcomes.assign(runs, 0);
    parallel_for(runs, threads, [&](std::size_t i) {
        std::mt19937_64 rng(split_seed(seed, i));
        out.outcomes[i] = static_cast<std::uint8_t>(pnorm_bias(oracle, k, rng, mode));
    });
    for (std::uint8_t b : out.outcomes) {
        out.ones += b;
    }
    out.queries = oracle.queries_used();
    return out;
}

std::uint64_t tester_repetitions(double epsilon, double confidence) {
    if (!(epsilon > 0) || !(confidence > 0 && confidence < 1)) {
        throw InvalidParameter("need epsilon > 0 and confidence in (0, 1)");
    }
    return static_cast<std::uint64_t>(std::ceil(2 * std::log(2 / (1 - confidence)) / (epsilon * epsilon)));
}

nlohmann::json to_json(const TesterReport &report) {
    return {
        {"n", report.n},
        {"d", report.d},
        {"k", report.k},
        {"epsilon", report.epsilon},
        {"repetitions", report.repetitions},
        {"ones", report.ones},
        {"E", report.estimate},
        {"threshold", report.threshold},
        {"decision", report.decision},
        {"queries_U", report.queries_u},
        {"queries_Uadj", report.queries_u_adj},
        {"seed", report.seed},
        {"runtime_ms", report.runtime_ms},
    };
}

int c3_decision(double estimate, double epsilon) {
    return estimate <= 1 - 17 * epsilon ? 0 : 1;
}

TesterReport c3_tester(const UnitaryHandle &u, const TesterConfig &config) {
    if (!(config.epsilon > 0 && config.epsilon <= 0.04)) {
        throw OutOfScope("the tester requires 0 < epsilon <= 0.04");
    }
    const auto start = std::chrono::steady_clock::now();
    TesterReport report;
    report.n = u.n();
    report.d = u.d();
    report.epsilon = config.epsilon;
    report.seed = config.seed;
    report.repetitions =
        config.repetitions > 0 ? config.repetitions : tester_repetitions(config.epsilon, config.confidence);

    const BiasRuns runs = run_pnorm_bias(u, report.k, report.repetitions, config.seed, config.threads, config.mode);
    report.ones = runs.ones;
    report.estimate = 2 * runs.rate() - 1;
    report.threshold = 1 - 17 * config.epsilon;
    report.decision = c3_decision(report.estimate, config.epsilon);
    report.queries_u = runs.queries.u;
    report.queries_u_adj = runs.queries.u_adj;
    report.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace punif

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

#include "punif/verify.h"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "punif/concurrency.h"
#include "punif/errors.h"
#include "punif/gates.h"
#include "punif/hierarchy.h"
#include "punif/pauli_group.h"
#include "punif/tester.h"
#include "punif/uniformity.h"

namespace punif {

namespace {

struct CheckOutcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char *format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), format, args...);
    return buf;
}

double normalized_distance(const Matrix &a, const Matrix &b) {
    return std::sqrt((a - b).squaredNorm() / static_cast<double>(a.rows()));
}

EnumerateOptions enumerate_options(const SuiteOptions &options) {
    EnumerateOptions e;
    e.cache_dir = options.cache_dir;
    e.threads = options.threads;
    return e;
}

ExactNormOptions norm_options(const SuiteOptions &options) {
    ExactNormOptions n;
    n.threads = options.threads;
    return n;
}

CheckOutcome check_weyl_algebra(const SuiteOptions &options) {
    double worst_product = 0;
    double worst_commutator = 0;
    std::uint64_t identity_failures = 0;
    for (int d : {2, 3}) {
        const PrimeModulus p(d);
        const std::uint64_t count = num_symp_vectors(1, d);
        std::vector<SympVector> labels;
        std::vector<Matrix> ws;
        for (std::uint64_t i = 0; i < count; ++i) {
            labels.push_back(SympVector::from_index(i, 1, p));
            ws.push_back(weyl_matrix(labels.back()).matrix());
        }
        for (std::uint64_t i = 0; i < count; ++i) {
            for (std::uint64_t j = 0; j < count; ++j) {
                const SympVector &a = labels[i];
                const SympVector &b = labels[j];
                const Matrix ab = ws[i] * ws[j];
                const Matrix sum = tau_power(beta(a, b).value(), p) * ws[(a + b).index()];
                worst_product = std::max(worst_product, normalized_distance(ab, sum));
                const Matrix ba = omega_power(lift(symplectic_form(a, b)), p) * ws[j] * ws[i];
                worst_commutator = std::max(worst_commutator, normalized_distance(ab, ba));
                identity_failures += beta(a, b) - beta(b, a) != PhaseExponent(2 * lift(symplectic_form(a, b)), p);
                for (std::uint64_t k = 0; k < count; ++k) {
                    const SympVector &c = labels[k];
                    identity_failures += beta(a, b + c) + beta(b, c) != beta(a, b) + beta(a + b, c);
                }
            }
        }
    }
    std::mt19937_64 rng(split_seed(options.seed, 1));
    constexpr int kTriples = 10000;
    for (int t = 0; t < kTriples; ++t) {
        const int d = t % 2 ? 3 : 2;
        const PrimeModulus p(d);
        std::uniform_int_distribution<std::uint64_t> pick(0, num_symp_vectors(2, d) - 1);
        const SympVector a = SympVector::from_index(pick(rng), 2, p);
        const SympVector b = SympVector::from_index(pick(rng), 2, p);
        const SympVector c = SympVector::from_index(pick(rng), 2, p);
        identity_failures += beta(a, b + c) + beta(b, c) != beta(a, b) + beta(a + b, c);
        identity_failures += beta(a, b) - beta(b, a) != PhaseExponent(2 * lift(symplectic_form(a, b)), p);
    }
    const bool ok = worst_product <= 1e-12 && worst_commutator <= 1e-12 && identity_failures == 0;
    return {ok, fmt("max product defect %.2e, max commutation defect %.2e, cocycle/antisymmetry failures %llu",
                    worst_product, worst_commutator, static_cast<unsigned long long>(identity_failures))};
}

CheckOutcome check_fourier_identity(const SuiteOptions &options) {
    std::mt19937_64 rng(split_seed(options.seed, 2));
    constexpr std::pair<int, int> kShapes[] = {{1, 2}, {1, 3}, {2, 2}, {2, 3}};
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        const auto [n, d] = kShapes[i % 4];
        const UnitaryHandle u = haar_random_unitary(n, d, rng);
        const double l4 = fourier_coeffs(u.op()).l4_sum();
        const double p2 = pnorm_exact(u, 2, norm_options(options)).raw_unclamped;
        worst = std::max(worst, std::abs(l4 - p2));
    }
    return {worst <= 1e-9, fmt("100 unitaries, max |sum|U^(a)|^4 - ||U||_P2^4| = %.2e", worst)};
}

CheckOutcome check_extremizers(const SuiteOptions &options) {
    const LevelSet cliffords = enumerate_level(1, 2, 2, enumerate_options(options));
    double worst_clifford = 0;
    for (const UnitaryHandle &c : cliffords.representatives) {
        worst_clifford = std::max(worst_clifford, std::abs(pnorm_exact(c, 3, norm_options(options)).value - 1));
    }
    const UnitaryHandle t(gates::T());
    const double t4 = pnorm_exact(t, 4, norm_options(options)).value;
    const double t3 = pnorm_exact(t, 3, norm_options(options)).raw;
    const double t2 = pnorm_exact(t, 2, norm_options(options)).raw;
    const bool ok = cliffords.representatives.size() == 24 && worst_clifford <= 1e-9 && std::abs(t4 - 1) <= 1e-9 &&
                    std::abs(t3 - 0.75) <= 1e-9 && std::abs(t2 - 0.75) <= 1e-9;
    return {ok, fmt("%zu Cliffords, max |norm_P3 - 1| = %.2e; T: norm_P4 = %.12f, raw_P3 = %.12f, raw_P2 = %.12f",
                    cliffords.representatives.size(), worst_clifford, t4, t3, t2)};
}

// Shared by the direct and inverse-P2 checks: the same 100 Haar single-qubit unitaries.
std::vector<UnitaryHandle> haar_battery(const SuiteOptions &options) {
    std::mt19937_64 rng(split_seed(options.seed, 4));
    std::vector<UnitaryHandle> out;
    for (int i = 0; i < 100; ++i) {
        out.push_back(haar_random_unitary(1, 2, rng));
    }
    return out;
}

CheckOutcome check_direct(const SuiteOptions &options) {
    const LevelSet paulis = enumerate_level(1, 2, 1, enumerate_options(options));
    const LevelSet cliffords = enumerate_level(1, 2, 2, enumerate_options(options));
    InverseBoundsOptions bounds;
    bounds.norm = norm_options(options);
    int violations = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    double min_gap_improved = std::numeric_limits<double>::infinity();
    for (const UnitaryHandle &u : haar_battery(options)) {
        for (const auto &[k, set] : {std::pair{2, &paulis}, std::pair{3, &cliffords}}) {
            const InverseBoundsReport r = verify_inverse_bounds(u, k, *set, bounds);
            violations += !r.direct.value_or(false);
            violations += !r.direct_improved.value_or(false);
            min_gap = std::min(min_gap, r.norm_value - r.fidelity);
            min_gap_improved = std::min(min_gap_improved, r.norm_value * r.norm_value - r.fidelity);
        }
    }
    return {violations == 0, fmt("200 comparisons, %d violations; min (norm - F) = %.3e, min (norm^2 - F) = %.3e",
                                 violations, min_gap, min_gap_improved)};
}

CheckOutcome check_inverse_p2(const SuiteOptions &options) {
    const LevelSet paulis = enumerate_level(1, 2, 1, enumerate_options(options));
    InverseBoundsOptions bounds;
    bounds.norm = norm_options(options);
    int violations = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (const UnitaryHandle &u : haar_battery(options)) {
        const InverseBoundsReport r = verify_inverse_bounds(u, 2, paulis, bounds);
        violations += !r.inverse_p2.value_or(false);
        min_gap = std::min(min_gap, r.fidelity - r.norm_raw);
    }
    return {violations == 0, fmt("100 unitaries, %d violations; min (F - norm^4) = %.3e", violations, min_gap)};
}

// e^{i delta H} for Hermitian H.
Matrix exp_i_hermitian(const Matrix &h, double delta) {
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    const Eigen::VectorXcd phases = (Complex(0, delta) * eig.eigenvalues().cast<Complex>()).array().exp();
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

Matrix random_hermitian(std::mt19937_64 &rng, Eigen::Index dim) {
    std::normal_distribution<double> g;
    Matrix a(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            a(i, j) = Complex(g(rng), g(rng));
        }
    }
    Matrix h = (a + a.adjoint()) / 2.0;
    // Unit operator norm.
    return h / Eigen::SelfAdjointEigenSolver<Matrix>(h).eigenvalues().cwiseAbs().maxCoeff();
}

CheckOutcome check_inverse_99(const SuiteOptions &options) {
    std::mt19937_64 rng(split_seed(options.seed, 6));
    InverseBoundsOptions bounds;
    bounds.norm = norm_options(options);
    std::ostringstream detail;
    bool ok = true;
    for (int k : {2, 3, 4}) {
        const LevelSet set = enumerate_level(1, 2, k - 1, enumerate_options(options));
        const double eps_k = inverse_epsilon(k);
        int violations = 0;
        int instances = 0;
        double worst_margin = std::numeric_limits<double>::infinity();
        std::uniform_int_distribution<std::size_t> pick(0, set.representatives.size() - 1);
        while (instances < 50) {
            const UnitaryHandle &v = set.representatives[pick(rng)];
            const Matrix h = random_hermitian(rng, v.dim());
            auto perturbed = [&](double delta) {
                return UnitaryHandle(DenseOperator(1, 2, exp_i_hermitian(h, delta) * v.matrix()), 1e-9);
            };
            auto epsilon = [&](double delta) { return 1 - pnorm_exact(perturbed(delta), k, bounds.norm).raw; };
            // Bisect delta until eps lands in [eps_k / 10, eps_k].
            double lo = 0;
            double hi = 1;
            std::optional<double> found;
            for (int it = 0; it < 200 && !found; ++it) {
                const double mid = (lo + hi) / 2;
                const double e = epsilon(mid);
                if (e > eps_k) {
                    hi = mid;
                } else if (e < eps_k / 10) {
                    lo = mid;
                } else {
                    found = mid;
                }
            }
            if (!found) {
                continue;  // a direction that barely moves the norm; draw another
            }
            ++instances;
            const InverseBoundsReport r = verify_inverse_bounds(perturbed(*found), k, set, bounds);
            if (!r.inverse_99.value_or(false)) {
                ++violations;
            }
            worst_margin = std::min(worst_margin, r.fidelity - (1 - r.c_k * r.epsilon));
        }
        ok = ok && violations == 0;
        detail << (k > 2 ? "; " : "") << "k=" << k << ": " << violations << "/50 violations, min margin "
               << fmt("%.3e", worst_margin) << (set.completeness == Completeness::exact ? "" : " (candidate family)");
    }
    return {ok, detail.str()};
}

CheckOutcome check_separation(const SuiteOptions &options) {
    std::ostringstream detail;
    bool ok = true;
    for (int k : {1, 2}) {
        const SeparationReport r = separation_check(enumerate_level(1, 2, k, enumerate_options(options)), k);
        ok = ok && r.consistent();
        detail << (k > 1 ? "; " : "") << "k=" << k << ": " << r.checked << " representatives, "
               << r.violations.size() << " violations, min non-phase distance "
               << fmt("%.6f >= %.6f", r.min_non_phase_distance, r.threshold);
    }
    return {ok, detail.str()};
}

CheckOutcome check_calibration(const SuiteOptions &options) {
    constexpr std::uint64_t kRuns = 100000;
    const BiasRuns runs = run_pnorm_bias(UnitaryHandle(gates::T()), 3, kRuns, split_seed(options.seed, 8),
                                         options.threads);
    const double p = 0.875;
    const double sigma = std::sqrt(p * (1 - p) / kRuns);
    const double z = (runs.rate() - p) / sigma;
    return {std::abs(z) <= 4, fmt("rate %.5f over %llu runs, %.2f sigma from 0.875", runs.rate(),
                                  static_cast<unsigned long long>(kRuns), z)};
}

CheckOutcome check_tester(const SuiteOptions &options) {
    constexpr double kEps = 0.02;
    std::mt19937_64 rng(split_seed(options.seed, 9));
    std::optional<UnitaryHandle> far;
    double far_raw = 1;
    for (int attempt = 0; attempt < 100 && !far; ++attempt) {
        UnitaryHandle u = haar_random_unitary(2, 2, rng);
        far_raw = pnorm_exact(u, 4, norm_options(options)).raw;
        if (far_raw <= 1 - 18 * kEps) {
            far = std::move(u);
        }
    }
    if (!far) {
        return {false, "no Haar instance certified far"};
    }
    int accept_t = 0;
    int reject_far = 0;
    const UnitaryHandle t(gates::T());
    for (int trial = 0; trial < 100; ++trial) {
        TesterConfig cfg;
        cfg.epsilon = kEps;
        cfg.threads = options.threads;
        cfg.seed = split_seed(options.seed, 1000 + trial);
        accept_t += c3_tester(t, cfg).decision;
        cfg.seed = split_seed(options.seed, 2000 + trial);
        reject_far += 1 - c3_tester(*far, cfg).decision;
    }
    return {accept_t >= 85 && reject_far >= 85,
            fmt("T accepted %d/100; far unitary (raw_P4 = %.4f) rejected %d/100; %llu repetitions per run", accept_t,
                far_raw, reject_far, static_cast<unsigned long long>(tester_repetitions(kEps, 0.9)))};
}

CheckOutcome check_non_closure(const SuiteOptions &) {
    const DenseOperator ht = gates::H() * gates::T();
    const UnitaryHandle htht(ht * ht);
    std::string levels;
    bool all_rejected = true;
    for (int k = 0; k <= 5; ++k) {
        const Verdict v = in_level(htht, k);
        all_rejected = all_rejected && v.outcome == Outcome::reject;
        levels += (k ? "," : "") + to_string(v.outcome);
    }
    const bool ht_in = in_level(UnitaryHandle(ht), 3).accepted();
    return {all_rejected && ht_in, "(HT)^2 at k=0..5: " + levels + "; HT at k=3: " + (ht_in ? "accept" : "reject")};
}

using CheckFn = std::function<CheckOutcome(const SuiteOptions &)>;

const std::vector<std::pair<CheckInfo, CheckFn>> &registry() {
    static const std::vector<std::pair<CheckInfo, CheckFn>> checks = {
        {{1, "weyl-algebra", "Weyl products, commutation and cocycle identities", 5}, check_weyl_algebra},
        {{2, "fourier-identity", "sum |U^(a)|^4 equals ||U||_P2^4 on Haar unitaries", 30}, check_fourier_identity},
        {{3, "extremizers", "Cliffords have unit P3 norm; T values at k = 2, 3, 4", 10}, check_extremizers},
        {{4, "direct-inequality", "F <= ||U||_Pk and F <= ||U||_Pk^2 at k = 2, 3", 60}, check_direct},
        {{5, "inverse-p2", "F over Paulis >= ||U||_P2^4", 60}, check_inverse_p2},
        {{6, "inverse-99", "near-extremal norm forces F >= 1 - 24^(k-1) eps at k = 2, 3, 4", 300}, check_inverse_99},
        {{7, "separation", "non-phase members sit at distance >= 2^(-k+3/2) from I", 60}, check_separation},
        {{8, "calibration", "estimator 1-rate for T at k = 3 is within 4 sigma of 0.875", 120}, check_calibration},
        {{9, "tester", "third-level tester accepts T and rejects a certified far unitary", 600}, check_tester},
        {{10, "non-closure", "(HT)^2 rejected at every level up to 5; HT in level 3", 60}, check_non_closure},
    };
    return checks;
}

}  // namespace

const std::vector<CheckInfo> &verification_checks() {
    static const std::vector<CheckInfo> infos = [] {
        std::vector<CheckInfo> out;
        for (const auto &entry : registry()) {
            out.push_back(entry.first);
        }
        return out;
    }();
    return infos;
}

std::vector<CheckInfo> select_checks(const std::string &selector) {
    if (selector == "all") {
        return verification_checks();
    }
    for (const CheckInfo &info : verification_checks()) {
        if (info.name == selector || std::to_string(info.id) == selector) {
            return {info};
        }
    }
    throw InvalidParameter("unknown check '" + selector + "'");
}

CheckResult run_check(const CheckInfo &check, const SuiteOptions &options) {
    CheckResult result;
    result.info = check;
    const auto start = std::chrono::steady_clock::now();
    try {
        for (const auto &[info, fn] : registry()) {
            if (info.id == check.id) {
                const CheckOutcome o = fn(options);
                result.passed = o.passed;
                result.detail = o.detail;
            }
        }
    } catch (const std::exception &e) {
        result.passed = false;
        result.detail = std::string("error: ") + e.what();
    }
    result.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (result.runtime_ms > 1000 * check.budget_seconds) {
        result.passed = false;
        result.detail += fmt("; over the %.0f s budget", check.budget_seconds);
    }
    return result;
}

nlohmann::json to_json(const CheckResult &result) {
    return {
        {"id", result.info.id},
        {"name", result.info.name},
        {"passed", result.passed},
        {"detail", result.detail},
        {"runtime_ms", result.runtime_ms},
        {"budget_s", result.info.budget_seconds},
    };
}

std::string format_result_line(const CheckResult &result) {
    return fmt("%s %2d %-18s %s (%.1f ms)", result.passed ? "PASS" : "FAIL", result.info.id,
               result.info.name.c_str(), result.detail.c_str(), result.runtime_ms);
}

}  // namespace punif

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

#include "punif/hierarchy.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "punif/concurrency.h"
#include "punif/errors.h"
#include "punif/gates.h"
#include "punif/matrix_json.h"
#include "punif/pauli_group.h"

namespace punif {

namespace {

constexpr int kCacheVersion = 1;

struct PhaseFit {
    double distance;
    double theta;
};

// min over theta of ||M - e^{i theta} I||_2 for an arbitrary square matrix.
PhaseFit fit_phase_identity(const Matrix &m) {
    const double dim = static_cast<double>(m.rows());
    const Complex tr = m.trace() / dim;
    const Complex phase = std::abs(tr) > 0 ? tr / std::abs(tr) : Complex(1);
    Matrix diff = m;
    diff.diagonal().array() -= phase;
    return {std::sqrt(diff.squaredNorm() / dim), std::arg(phase)};
}

struct Budget {
    std::uint64_t used = 0;
    std::uint64_t max = 0;
};

struct LevelCheck {
    Outcome outcome;
    double defect;
};

class MembershipKernel {
   public:
    MembershipKernel(int n, int d) {
        const PrimeModulus p(d);
        const std::uint64_t count = num_symp_vectors(n, d);
        actions_.reserve(count);
        for (std::uint64_t i = 0; i < count; ++i) {
            actions_.emplace_back(SympVector::from_index(i, n, p));
        }
    }

    LevelCheck check(const Matrix &m, int k, double tolerance, Budget &budget) const {
        if (k == 0) {
            const double defect = fit_phase_identity(m).distance;
            return {defect <= tolerance ? Outcome::accept : Outcome::reject, defect};
        }
        double worst = 0;
        const Matrix m_adj = m.adjoint();
        for (const WeylAction &w : actions_) {
            if (budget.used >= budget.max) {
                return {Outcome::undecided_budget, worst};
            }
            ++budget.used;
            const Matrix derivative = w.conjugate(m) * m_adj;
            const LevelCheck sub = check(derivative, k - 1, 2 * tolerance, budget);
            worst = std::max(worst, sub.defect);
            if (sub.outcome != Outcome::accept) {
                return {sub.outcome, worst};
            }
        }
        return {Outcome::accept, worst};
    }

   private:
    std::vector<WeylAction> actions_;
};

std::uint64_t fnv1a(const std::string &s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

bool same_up_to_phase(const UnitaryHandle &a, const UnitaryHandle &b, double tolerance) {
    // |<A,B>| close to 1 is necessary; skip the full distance otherwise.
    if (std::abs(hs_inner(a.op(), b.op())) < 0.5) {
        return false;
    }
    return std::sqrt(std::max(0.0, phase_min_distance(a, b).dist_sq)) <= tolerance;
}

bool contains_up_to_phase(const std::vector<UnitaryHandle> &set, const UnitaryHandle &u, double tolerance) {
    for (const UnitaryHandle &v : set) {
        if (same_up_to_phase(u, v, tolerance)) {
            return true;
        }
    }
    return false;
}

std::string construction_for(int n, int d, int k) {
    std::ostringstream out;
    switch (k) {
        case 1:
            out << "weyl-operators;n=" << n << ";d=" << d;
            break;
        case 2:
            out << "closure{fourier,phase,shift,clock};n=" << n << ";d=" << d;
            break;
        default:
            out << "clifford*diag(1,exp(i*pi*m/4))*clifford,m=0..7,filtered-by-membership;n=" << n << ";d=" << d;
            break;
    }
    return out.str();
}

void check_scope(int n, int d, int k) {
    (void)PrimeModulus(d);
    if (n < 1) {
        throw InvalidParameter("n must be positive");
    }
    bool ok = false;
    if (k == 1) {
        ok = n <= 6 && num_symp_vectors(n, d) <= 4096;
    } else if (k == 2) {
        ok = n == 1 && (d == 2 || d == 3);
    } else if (k == 3) {
        ok = n == 1 && d == 2;
    }
    if (!ok) {
        std::ostringstream msg;
        msg << "enumeration of level " << k << " is not supported for n=" << n << ", d=" << d;
        throw OutOfScope(msg.str());
    }
}

std::vector<UnitaryHandle> enumerate_paulis(int n, int d) {
    const PrimeModulus p(d);
    std::vector<UnitaryHandle> out;
    for (std::uint64_t i = 0; i < num_symp_vectors(n, d); ++i) {
        out.emplace_back(weyl_matrix(SympVector::from_index(i, n, p)));
    }
    return out;
}

std::vector<UnitaryHandle> enumerate_single_qudit_cliffords(int d, double tolerance, unsigned threads) {
    const std::vector<DenseOperator> generators = {gates::fourier(d), gates::phase(d), gates::shift(d),
                                                   gates::clock(d)};
    std::vector<UnitaryHandle> found = {UnitaryHandle(identity(1, d))};
    std::vector<UnitaryHandle> frontier = found;
    while (!frontier.empty()) {
        std::vector<std::optional<UnitaryHandle>> products(frontier.size() * generators.size());
        parallel_for(products.size(), threads, [&](std::size_t i) {
            products[i].emplace(generators[i % generators.size()] * frontier[i / generators.size()].op());
        });
        std::vector<UnitaryHandle> next;
        for (auto &candidate : products) {
            if (!contains_up_to_phase(found, *candidate, tolerance)) {
                found.push_back(*candidate);
                next.push_back(*candidate);
            }
        }
        frontier = std::move(next);
    }
    const std::size_t expected = static_cast<std::size_t>(d) * d * d * (d * d - 1);
    if (found.size() != expected) {
        std::ostringstream msg;
        msg << "Clifford closure for d=" << d << " produced " << found.size() << " elements, expected " << expected;
        throw std::logic_error(msg.str());
    }
    return found;
}

std::vector<UnitaryHandle> enumerate_level3_candidates(double tolerance, unsigned threads) {
    const std::vector<UnitaryHandle> cliffords = enumerate_single_qudit_cliffords(2, tolerance, threads);
    std::vector<UnitaryHandle> unique;
    for (int m = 0; m < 8; ++m) {
        const DenseOperator diag = gates::phase_eighth(m);
        for (const UnitaryHandle &c1 : cliffords) {
            const DenseOperator left = c1.op() * diag;
            for (const UnitaryHandle &c2 : cliffords) {
                UnitaryHandle candidate(left * c2.op());
                if (!contains_up_to_phase(unique, candidate, tolerance)) {
                    unique.push_back(std::move(candidate));
                }
            }
        }
    }
    std::vector<char> keep(unique.size(), 0);
    parallel_for(unique.size(), threads, [&](std::size_t i) { keep[i] = in_level(unique[i], 3).accepted(); });
    std::vector<UnitaryHandle> out;
    for (std::size_t i = 0; i < unique.size(); ++i) {
        if (keep[i]) {
            out.push_back(unique[i]);
        }
    }
    return out;
}

std::optional<LevelSet> load_cached(const std::filesystem::path &path, int n, int d, int k,
                                    const std::string &construction) {
    std::ifstream in(path);
    if (!in) {
        return std::nullopt;
    }
    try {
        const nlohmann::json j = nlohmann::json::parse(in);
        if (j.at("version").get<int>() != kCacheVersion || j.at("construction").get<std::string>() != construction) {
            return std::nullopt;
        }
        LevelSet set = level_set_from_json(j);
        if (set.n != n || set.d != d || set.level != k) {
            return std::nullopt;
        }
        return set;
    } catch (const std::exception &) {
        // A corrupt or foreign cache file is rebuilt, not trusted.
        return std::nullopt;
    }
}

void store_cached(const std::filesystem::path &path, const LevelSet &set) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) {
            return;
        }
        out << to_json(set).dump();
    }
    std::filesystem::rename(tmp, path, ec);
}

}  // namespace

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::accept:
            return "accept";
        case Outcome::reject:
            return "reject";
        case Outcome::undecided_budget:
            return "undecided-budget";
    }
    return "?";
}

std::string to_string(Completeness completeness) {
    return completeness == Completeness::exact ? "exact" : "candidate-family";
}

nlohmann::json to_json(const Verdict &verdict) {
    nlohmann::json j = {
        {"accepted", verdict.accepted()},     {"outcome", to_string(verdict.outcome)},
        {"level", verdict.level},             {"tolerance", verdict.tolerance},
        {"defect", verdict.defect},           {"evaluations", verdict.evaluations},
    };
    if (verdict.theta) {
        j["theta"] = *verdict.theta;
    }
    if (verdict.label) {
        j["label"] = verdict.label->str();
    }
    return j;
}

Verdict is_phase_identity(const UnitaryHandle &u, double tolerance) {
    const PhaseFit fit = fit_phase_identity(u.matrix());
    Verdict v;
    v.level = 0;
    v.tolerance = tolerance;
    v.defect = fit.distance;
    v.outcome = fit.distance <= tolerance ? Outcome::accept : Outcome::reject;
    if (v.accepted()) {
        v.theta = fit.theta;
    }
    return v;
}

Verdict is_pauli(const UnitaryHandle &u, double tolerance) {
    const FourierTable table = fourier_coeffs(u.op());
    std::size_t heavy = 0;
    double best = 0;
    for (const Complex &c : table.coefficients()) {
        const double m = std::abs(c);
        best = std::max(best, m);
        if (m >= 1 - tolerance) {
            ++heavy;
        }
    }
    Verdict v;
    v.level = 1;
    v.tolerance = tolerance;
    v.defect = std::max(0.0, 1 - best);
    v.outcome = heavy == 1 ? Outcome::accept : Outcome::reject;
    if (v.accepted()) {
        v.label = table.argmax();
    }
    return v;
}

Verdict in_level(const UnitaryHandle &u, int k, const MembershipOptions &options) {
    if (k < 0) {
        throw InvalidParameter("level must be non-negative");
    }
    if (k == 0) {
        return is_phase_identity(u, options.tolerance);
    }
    const MembershipKernel kernel(u.n(), u.d());
    Budget budget{0, options.max_evaluations};
    const LevelCheck result = kernel.check(u.matrix(), k, options.tolerance, budget);
    Verdict v;
    v.outcome = result.outcome;
    v.level = k;
    v.tolerance = options.tolerance;
    v.defect = result.defect;
    v.evaluations = budget.used;
    if (v.accepted() && k == 1) {
        v.label = fourier_coeffs(u.op()).argmax();
    }
    return v;
}

nlohmann::json to_json(const LevelSet &set) {
    nlohmann::json reps = nlohmann::json::array();
    for (const UnitaryHandle &u : set.representatives) {
        reps.push_back(operator_to_json(u.op()));
    }
    return {
        {"version", kCacheVersion},
        {"n", set.n},
        {"d", set.d},
        {"level", set.level},
        {"completeness", to_string(set.completeness)},
        {"construction", set.construction},
        {"construction_hash", fnv1a(set.construction)},
        {"size", set.representatives.size()},
        {"representatives", reps},
    };
}

LevelSet level_set_from_json(const nlohmann::json &j) {
    LevelSet set;
    set.n = j.at("n").get<int>();
    set.d = j.at("d").get<int>();
    set.level = j.at("level").get<int>();
    const std::string completeness = j.at("completeness").get<std::string>();
    if (completeness == "exact") {
        set.completeness = Completeness::exact;
    } else if (completeness == "candidate-family") {
        set.completeness = Completeness::candidate_family;
    } else {
        throw InvalidParameter("unknown completeness '" + completeness + "'");
    }
    set.construction = j.at("construction").get<std::string>();
    for (const nlohmann::json &r : j.at("representatives")) {
        set.representatives.push_back(unitary_from_json(r));
    }
    return set;
}

std::string level_cache_file_name(int n, int d, int k, const std::string &construction) {
    char hash[17];
    std::snprintf(hash, sizeof(hash), "%016llx", static_cast<unsigned long long>(fnv1a(construction)));
    std::ostringstream out;
    out << "level_n" << n << "_d" << d << "_k" << k << "_" << hash << ".json";
    return out.str();
}

LevelSet enumerate_level(int n, int d, int k, const EnumerateOptions &options) {
    check_scope(n, d, k);
    const std::string construction = construction_for(n, d, k);
    std::optional<std::filesystem::path> cache_path;
    if (options.cache_dir) {
        cache_path = *options.cache_dir / level_cache_file_name(n, d, k, construction);
        if (auto cached = load_cached(*cache_path, n, d, k, construction)) {
            return *std::move(cached);
        }
    }

    LevelSet set;
    set.n = n;
    set.d = d;
    set.level = k;
    set.construction = construction;
    switch (k) {
        case 1:
            set.representatives = enumerate_paulis(n, d);
            break;
        case 2:
            set.representatives = enumerate_single_qudit_cliffords(d, options.dedup_tolerance, options.threads);
            break;
        default:
            set.representatives = enumerate_level3_candidates(options.dedup_tolerance, options.threads);
            set.completeness = Completeness::candidate_family;
            break;
    }
    if (cache_path) {
        store_cached(*cache_path, set);
    }
    return set;
}

nlohmann::json to_json(const FidelityResult &result) {
    return {
        {"value", result.value},
        {"argmax_index", result.argmax_index},
        {"level", result.level},
        {"completeness", to_string(result.completeness)},
        {"lower_bound_only", result.completeness != Completeness::exact},
    };
}

FidelityResult fidelity(const UnitaryHandle &u, int k, const LevelSet &level_set) {
    if (level_set.level != k) {
        throw InvalidParameter("level set is for level " + std::to_string(level_set.level) + ", not " +
                               std::to_string(k));
    }
    if (level_set.representatives.empty()) {
        throw InvalidParameter("empty level set");
    }
    if (level_set.n != u.n() || level_set.d != u.d()) {
        throw ParameterMismatch("level set and operator disagree on (n, d)");
    }
    FidelityResult result;
    result.level = k;
    result.completeness = level_set.completeness;
    result.value = -1;
    for (std::size_t i = 0; i < level_set.representatives.size(); ++i) {
        const double f = std::norm(hs_inner(level_set.representatives[i].op(), u.op()));
        if (f > result.value) {
            result.value = f;
            result.argmax_index = i;
        }
    }
    return result;
}

nlohmann::json to_json(const SeparationReport &report) {
    return {
        {"level", report.level},
        {"threshold", report.threshold},
        {"checked", report.checked},
        {"phase_identities", report.phase_identities},
        {"min_non_phase_distance", report.min_non_phase_distance},
        {"consistent", report.consistent()},
        {"violations", report.violations},
    };
}

SeparationReport separation_check(const LevelSet &level_set, int k) {
    constexpr double kSlack = 1e-12;
    constexpr double kPhaseTolerance = 1e-8;
    SeparationReport report;
    report.level = k;
    report.threshold = std::pow(2.0, -k + 1.5);
    report.min_non_phase_distance = std::numeric_limits<double>::infinity();

    // Levels are closed under global phase, so every e^{i phi} U must respect the distance bound; checking the
    // phase-minimized distance covers all of them at once for non-phase representatives.
    auto check_phase = [&](double theta, std::size_t index) {
        const double delta = std::abs(std::polar(1.0, theta) - 1.0);
        if (delta < report.threshold && std::abs(theta) > 2 * delta + kSlack) {
            std::ostringstream msg;
            msg << "representative " << index << ": phase " << theta << " exceeds 2*" << delta;
            report.violations.push_back(msg.str());
        }
    };
    for (std::size_t i = 0; i < level_set.representatives.size(); ++i) {
        const UnitaryHandle &u = level_set.representatives[i];
        ++report.checked;
        const PhaseFit fit = fit_phase_identity(u.matrix());
        if (fit.distance <= kPhaseTolerance) {
            ++report.phase_identities;
            check_phase(fit.theta, i);
            for (int step = -32; step < 32; ++step) {
                check_phase(std::remainder(fit.theta + std::numbers::pi * step / 32, 2 * std::numbers::pi), i);
            }
            continue;
        }
        report.min_non_phase_distance = std::min(report.min_non_phase_distance, fit.distance);
        if (fit.distance < report.threshold - kSlack) {
            std::ostringstream msg;
            msg << "representative " << i << " is not a phase but lies at distance " << fit.distance << " < "
                << report.threshold;
            report.violations.push_back(msg.str());
        }
    }
    return report;
}

double inverse_epsilon(int k) {
    return std::pow(24.0, -k);
}

double inverse_constant(int k) {
    return std::pow(24.0, k - 1);
}

bool InverseBoundsReport::all_passed() const {
    for (const auto &check : {direct, direct_improved, inverse_p2, inverse_99}) {
        if (check && !*check) {
            return false;
        }
    }
    return true;
}

nlohmann::json to_json(const InverseBoundsReport &report) {
    auto opt = [](const std::optional<bool> &b) -> nlohmann::json { return b ? nlohmann::json(*b) : nullptr; };
    return {
        {"k", report.k},
        {"norm_value", report.norm_value},
        {"norm_raw", report.norm_raw},
        {"fidelity", report.fidelity},
        {"completeness", to_string(report.completeness)},
        {"direct", opt(report.direct)},
        {"direct_improved", opt(report.direct_improved)},
        {"inverse_p2", opt(report.inverse_p2)},
        {"inverse_99", opt(report.inverse_99)},
        {"epsilon", report.epsilon},
        {"epsilon_k", report.epsilon_k},
        {"c_k", report.c_k},
        {"all_passed", report.all_passed()},
    };
}

InverseBoundsReport verify_inverse_bounds(const UnitaryHandle &u, int k, const LevelSet &level_set,
                                          const InverseBoundsOptions &options) {
    if (k < 2 || k > 4) {
        throw InvalidParameter("inverse bounds are checked for k in {2, 3, 4}");
    }
    InverseBoundsReport report;
    report.k = k;
    const NormReport norm = pnorm_exact(u, k, options.norm);
    const FidelityResult f = fidelity(u, k - 1, level_set);
    report.norm_value = norm.value;
    report.norm_raw = norm.raw;
    report.fidelity = f.value;
    report.completeness = f.completeness;
    report.epsilon = 1 - norm.raw;
    report.epsilon_k = inverse_epsilon(k);
    report.c_k = inverse_constant(k);

    if (f.completeness == Completeness::exact) {
        report.direct = f.value <= norm.value + options.slack;
        report.direct_improved = f.value <= norm.value * norm.value + options.slack;
    }
    if (k == 2) {
        report.inverse_p2 = f.value >= norm.raw - options.slack;
    }
    if (report.epsilon <= report.epsilon_k) {
        report.inverse_99 = f.value >= 1 - report.c_k * report.epsilon - options.inverse_99_slack;
    }
    return report;
}

}  // namespace punif

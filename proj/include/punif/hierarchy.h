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

// Clifford hierarchy membership, desk-scale enumeration of its low levels,
// Clifford fidelity, and checks of the inequalities relating fidelity to the
// Pauli uniformity norms.
//
// Level 0 is the phases e^{i theta} I; U is in level k >= 1 iff every Pauli
// derivative d_h U is in level k - 1. Membership quantifies over all
// h in F_d^{2n}, never just over generators.

#ifndef PUNIF_HIERARCHY_H
#define PUNIF_HIERARCHY_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "punif/dense_operator.h"
#include "punif/galois.h"
#include "punif/uniformity.h"

namespace punif {

enum class Outcome { accept, reject, undecided_budget };

std::string to_string(Outcome outcome);

struct Verdict {
    Outcome outcome = Outcome::reject;
    int level = 0;
    double tolerance = 0;
    /// Worst residual seen: phase-identity distance at the leaves, or 1 - max|U^(a)| for is_pauli.
    double defect = 0;
    std::optional<double> theta;
    std::optional<SympVector> label;
    /// Derivatives evaluated (membership recursion only).
    std::uint64_t evaluations = 0;

    bool accepted() const {
        return outcome == Outcome::accept;
    }
};

nlohmann::json to_json(const Verdict &verdict);

struct MembershipOptions {
    /// Base tolerance at the top level; doubled at each derivative level.
    double tolerance = 1e-8;
    std::uint64_t max_evaluations = 1'000'000;
};

/// Accepts iff min_theta ||U - e^{i theta} I||_2 <= tol. Witness: the minimizing theta.
Verdict is_phase_identity(const UnitaryHandle &u, double tolerance = 1e-8);

/// Accepts iff exactly one Fourier coefficient has modulus >= 1 - tol. Witness: its label.
Verdict is_pauli(const UnitaryHandle &u, double tolerance = 1e-8);

/// Recursive membership test. Returns Outcome::undecided_budget rather than rejecting when the derivative budget
/// runs out before a decision.
Verdict in_level(const UnitaryHandle &u, int k, const MembershipOptions &options = {});

enum class Completeness { exact, candidate_family };

std::string to_string(Completeness completeness);

struct LevelSet {
    int level = 0;
    int n = 0;
    int d = 0;
    /// Pairwise distinct up to global phase.
    std::vector<UnitaryHandle> representatives;
    Completeness completeness = Completeness::exact;
    std::string construction;
};

nlohmann::json to_json(const LevelSet &set);
LevelSet level_set_from_json(const nlohmann::json &j);

struct EnumerateOptions {
    /// When set, enumerations are read from / written to this directory.
    std::optional<std::filesystem::path> cache_dir;
    /// Identify representatives whose phase-minimized distance is at most this.
    double dedup_tolerance = 1e-8;
    unsigned threads = 0;
};

/// Supported: k = 1 with d^{2n} <= 4096 (exact); k = 2 with n = 1, d in {2, 3} (exact, closure of
/// {F, S, X, Z} checked against |C_1(d)| / U(1) = d^3 (d^2 - 1)); k = 3 with n = 1, d = 2 (candidate family
/// C_1 diag(1, e^{i pi m/4}) C_2). Anything else throws OutOfScope.
LevelSet enumerate_level(int n, int d, int k, const EnumerateOptions &options = {});

/// Stable cache key for an enumeration: file name derived from (n, d, k) and a hash of the construction.
std::string level_cache_file_name(int n, int d, int k, const std::string &construction);

struct FidelityResult {
    double value = 0;
    std::size_t argmax_index = 0;
    int level = 0;
    Completeness completeness = Completeness::exact;
};

nlohmann::json to_json(const FidelityResult &result);

/// max over the set of |<V, U>|^2. A lower bound on the true fidelity for candidate families.
FidelityResult fidelity(const UnitaryHandle &u, int k, const LevelSet &level_set);

struct SeparationReport {
    int level = 0;
    /// 2^{-k + 3/2}
    double threshold = 0;
    std::size_t checked = 0;
    std::size_t phase_identities = 0;
    /// Smallest min_theta ||e^{i theta} U - I||_2 over representatives that are not phases.
    double min_non_phase_distance = 0;
    std::vector<std::string> violations;

    bool consistent() const {
        return violations.empty();
    }
};

nlohmann::json to_json(const SeparationReport &report);

/// Every non-phase representative must sit at distance >= 2^{-k+3/2} from every phase of I; phase
/// representatives e^{i theta} I (and a sweep of theta) with ||U - I||_2 = delta below the threshold must have
/// |theta| <= 2 delta.
SeparationReport separation_check(const LevelSet &level_set, int k);

struct InverseBoundsOptions {
    double slack = 1e-9;
    double inverse_99_slack = 1e-8;
    ExactNormOptions norm;
};

struct InverseBoundsReport {
    int k = 0;
    double norm_value = 0;
    double norm_raw = 0;
    double fidelity = 0;
    Completeness completeness = Completeness::exact;
    /// F <= ||U||_{P^k}; only asserted for complete level sets.
    std::optional<bool> direct;
    /// F <= ||U||_{P^k}^2
    std::optional<bool> direct_improved;
    /// k = 2 only: F >= ||U||_{P^2}^4
    std::optional<bool> inverse_p2;
    /// When 1 - ||U||_{P^k}^{2^k} = eps <= eps_k: F >= 1 - C_k eps.
    std::optional<bool> inverse_99;
    double epsilon = 0;
    double epsilon_k = 0;
    double c_k = 0;

    bool all_passed() const;
};

nlohmann::json to_json(const InverseBoundsReport &report);

/// eps_k = 24^{-k}, C_k = 24^{k-1}
double inverse_epsilon(int k);
double inverse_constant(int k);

/// k in {2, 3, 4}; level_set must be for level k - 1.
InverseBoundsReport verify_inverse_bounds(const UnitaryHandle &u, int k, const LevelSet &level_set,
                                          const InverseBoundsOptions &options = {});

}  // namespace punif

#endif

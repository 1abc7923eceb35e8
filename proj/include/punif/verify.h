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

// End-to-end property checks at desk scale. Shared by `punif verify` and the
// acceptance test binary.

#ifndef PUNIF_VERIFY_H
#define PUNIF_VERIFY_H

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace punif {

struct CheckInfo {
    int id;
    std::string name;
    std::string summary;
    /// Wall-clock budget; exceeding it fails the check.
    double budget_seconds;
};

struct CheckResult {
    CheckInfo info;
    bool passed = false;
    std::string detail;
    double runtime_ms = 0;
};

nlohmann::json to_json(const CheckResult &result);

struct SuiteOptions {
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::optional<std::filesystem::path> cache_dir;
};

const std::vector<CheckInfo> &verification_checks();

/// Accepts "all", a check name, or a check id. Throws InvalidParameter for anything else.
std::vector<CheckInfo> select_checks(const std::string &selector);

/// Runs one check; an exception inside the check is reported as a failure.
CheckResult run_check(const CheckInfo &check, const SuiteOptions &options);

/// One line per result: "PASS  3 extremizers  ... (12.0 ms)".
std::string format_result_line(const CheckResult &result);

}  // namespace punif

#endif

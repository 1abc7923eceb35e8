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

// punif: command-line front end. Reports go to stdout, diagnostics to stderr.
//
// Exit codes: 0 ok, 1 a verify check failed, 2 bad input (usage, gate
// expression, matrix file, non-unitary), 3 exact evaluation over budget,
// 4 parameters outside the supported range.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "punif/errors.h"
#include "punif/gate_expr.h"
#include "punif/hierarchy.h"
#include "punif/matrix_json.h"
#include "punif/tester.h"
#include "punif/uniformity.h"
#include "punif/verify.h"

namespace {

using nlohmann::json;
using namespace punif;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitBudget = 3;
constexpr int kExitOutOfScope = 4;

constexpr const char *kGateHelp =
    "Gate expression. Names: I X Y Z H S T CZ CNOT, W[u..;v..] for Weyl operators; 'x' or '⊗' for tensor, "
    "'*' for product, postfix ' for adjoint, exp(i*theta) for a phase (theta may use pi, + - * /). "
    "Adjoint binds tighter than tensor, tensor tighter than product. For d > 2 only I, X, Z and W[..] exist.";

struct Globals {
    std::string format = "json";
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string cache_dir;
};

struct GateArgs {
    std::string expression;
    std::string matrix_file;
    int d = 2;
    double tolerance = kDefaultUnitarityTolerance;
    std::string dump_matrix;
};

void add_gate_options(CLI::App *cmd, GateArgs &args) {
    auto *gate = cmd->add_option("-g,--gate", args.expression, kGateHelp);
    auto *file = cmd->add_option("-m,--matrix", args.matrix_file, "Matrix JSON file {\"n\",\"d\",\"re\",\"im\"}");
    gate->excludes(file);
    file->excludes(gate);
    cmd->add_option("-d,--qudit-dim", args.d, "Qudit dimension for --gate (prime)")->capture_default_str();
    cmd->add_option("--unitarity-tol", args.tolerance, "Largest accepted ||U*U - I||_2")->capture_default_str();
    cmd->add_option("--dump-matrix", args.dump_matrix, "Write the parsed matrix as JSON to this file ('-' for stderr)");
}

UnitaryHandle load_gate(const GateArgs &args) {
    std::optional<UnitaryHandle> u;
    if (!args.matrix_file.empty()) {
        u.emplace(read_unitary_file(args.matrix_file, args.tolerance));
    } else if (!args.expression.empty()) {
        u.emplace(parse_gate_expression(args.expression, args.d), args.tolerance);
    } else {
        throw ParseError("one of --gate or --matrix is required");
    }
    if (args.dump_matrix == "-") {
        std::cerr << operator_to_json(u->op()).dump() << "\n";
    } else if (!args.dump_matrix.empty()) {
        write_operator_file(args.dump_matrix, u->op());
    }
    return *u;
}

std::string scalar_text(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_null()) {
        return "";
    }
    return v.dump();
}

bool is_scalar(const json &v) {
    return !v.is_object() && !v.is_array();
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

// json: the report verbatim. csv: a header and one row of the report's scalar fields, or, when the report has a
// "rows" array, one row per element. human: aligned "key: value" lines, rows indented below.
void emit(const json &report, const std::string &format) {
    if (format == "json") {
        std::cout << report.dump(2) << "\n";
        return;
    }
    const bool tabular = report.contains("rows") && report["rows"].is_array();
    if (format == "csv") {
        const json &rows = tabular ? report["rows"] : json::array({report});
        if (rows.empty()) {
            return;
        }
        std::string header;
        for (const auto &[key, value] : rows[0].items()) {
            if (is_scalar(value)) {
                header += (header.empty() ? "" : ",") + csv_field(key);
            }
        }
        std::cout << header << "\n";
        for (const json &row : rows) {
            std::string line;
            bool first = true;
            for (const auto &[key, value] : row.items()) {
                if (is_scalar(value)) {
                    line += (first ? "" : ",") + csv_field(scalar_text(value));
                    first = false;
                }
            }
            std::cout << line << "\n";
        }
        return;
    }
    std::size_t width = 0;
    for (const auto &[key, value] : report.items()) {
        width = std::max(width, key.size());
    }
    for (const auto &[key, value] : report.items()) {
        if (key == "rows") {
            continue;
        }
        std::cout << key << std::string(width - key.size(), ' ') << "  "
                  << (is_scalar(value) ? scalar_text(value) : value.dump()) << "\n";
    }
    if (tabular) {
        for (const json &row : report["rows"]) {
            std::string line = " ";
            for (const auto &[key, value] : row.items()) {
                line += " " + key + "=" + scalar_text(value);
            }
            std::cout << line << "\n";
        }
    }
}

json gate_fields(const UnitaryHandle &u) {
    return {{"n", u.n()}, {"d", u.d()}, {"unitarity_defect", u.unitarity_defect()}};
}

EnumerateOptions enumerate_options(const Globals &g) {
    EnumerateOptions e;
    if (!g.cache_dir.empty()) {
        e.cache_dir = g.cache_dir;
    }
    e.threads = g.threads;
    return e;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Pauli uniformity norms, Clifford hierarchy membership and the third-level tester"};
    app.require_subcommand(1);
    // Global options may also follow the subcommand.
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "human"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed")->envname("PUNIF_SEED")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads, 0 = hardware concurrency")
        ->envname("PUNIF_THREADS")
        ->capture_default_str();
    app.add_option("--cache-dir", g.cache_dir, "Directory for cached level enumerations")->envname("PUNIF_CACHE_DIR");

    // norm
    GateArgs norm_gate;
    int norm_k = 2;
    std::string norm_mode = "exact";
    std::uint64_t norm_samples = 10000;
    std::uint64_t norm_max_terms = ExactNormOptions{}.max_terms;
    auto *norm = app.add_subcommand("norm", "Pauli uniformity norm ||U||_{P^k}");
    add_gate_options(norm, norm_gate);
    norm->add_option("-k,--k", norm_k, "Order k >= 1")->required();
    norm->add_option("--mode", norm_mode, "exact or sampled")
        ->check(CLI::IsMember({"exact", "sampled"}))
        ->capture_default_str();
    norm->add_option("--samples", norm_samples, "Samples in sampled mode")->capture_default_str();
    norm->add_option("--max-terms", norm_max_terms, "Exact-mode budget in trace evaluations")->capture_default_str();

    // fourier
    GateArgs fourier_gate;
    double fourier_cutoff = 0;
    auto *fourier = app.add_subcommand("fourier", "Coefficients U^(a) = <W_a, U>");
    add_gate_options(fourier, fourier_gate);
    fourier->add_option("--min-abs", fourier_cutoff, "Omit coefficients with smaller modulus")->capture_default_str();

    // membership
    GateArgs member_gate;
    int member_k = 1;
    MembershipOptions member_opts;
    auto *membership = app.add_subcommand("membership", "Decide whether U is in level k of the Clifford hierarchy");
    add_gate_options(membership, member_gate);
    membership->add_option("-k,--k", member_k, "Level k >= 0")->required();
    membership->add_option("--tol", member_opts.tolerance, "Tolerance at the top level, doubled per derivative")
        ->capture_default_str();
    membership->add_option("--max-evaluations", member_opts.max_evaluations, "Derivative budget")
        ->capture_default_str();

    // fidelity
    GateArgs fid_gate;
    int fid_k = 1;
    auto *fid = app.add_subcommand("fidelity", "max |<V, U>|^2 over an enumerated level");
    add_gate_options(fid, fid_gate);
    fid->add_option("-k,--k", fid_k, "Level 1, 2 or 3")->required();

    // enumerate
    int enum_n = 1;
    int enum_d = 2;
    int enum_k = 2;
    bool enum_full = false;
    auto *enumerate = app.add_subcommand("enumerate", "Enumerate a low level of the hierarchy up to phase");
    enumerate->add_option("-n,--n", enum_n, "Qudits")->capture_default_str();
    enumerate->add_option("-d,--qudit-dim", enum_d, "Qudit dimension")->capture_default_str();
    enumerate->add_option("-k,--k", enum_k, "Level")->capture_default_str();
    enumerate->add_flag("--full", enum_full, "Include every representative's matrix (json only)");

    // test-c3
    GateArgs c3_gate;
    TesterConfig c3_config;
    bool c3_circuit = false;
    auto *test_c3 = app.add_subcommand("test-c3", "Run the third-level tester on U");
    add_gate_options(test_c3, c3_gate);
    test_c3->add_option("--epsilon", c3_config.epsilon, "Accuracy parameter in (0, 0.04]")->capture_default_str();
    test_c3->add_option("--confidence", c3_config.confidence, "Target confidence of the estimate")
        ->capture_default_str();
    test_c3->add_option("--repetitions", c3_config.repetitions, "Override the repetition count (0 = derived)")
        ->capture_default_str();
    test_c3->add_flag("--circuit", c3_circuit, "Simulate the swap-test circuit instead of sampling exact amplitudes");

    // verify
    std::string verify_selector = "all";
    auto *verify = app.add_subcommand("verify", "Run property checks; nonzero exit if any fails");
    verify->add_option("check", verify_selector, "'all', a check name, or its number")->capture_default_str();
    verify->add_flag_callback(
        "--list",
        [] {
            for (const CheckInfo &c : verification_checks()) {
                std::cout << c.id << " " << c.name << ": " << c.summary << "\n";
            }
            std::exit(0);
        },
        "List checks and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadInput;
    }

    try {
        if (norm->parsed()) {
            const UnitaryHandle u = load_gate(norm_gate);
            NormReport r;
            if (norm_mode == "exact") {
                ExactNormOptions opts;
                opts.max_terms = norm_max_terms;
                opts.threads = g.threads;
                r = pnorm_exact(u, norm_k, opts);
            } else {
                r = pnorm_sampled(u, norm_k, norm_samples, g.seed, g.threads);
            }
            json report = gate_fields(u);
            report.update(to_json(r));
            if (norm_mode == "sampled") {
                report["seed"] = g.seed;
            }
            emit(report, g.format);
        } else if (fourier->parsed()) {
            const UnitaryHandle u = load_gate(fourier_gate);
            const FourierTable table = fourier_coeffs(u.op());
            const PrimeModulus p(u.d());
            json rows = json::array();
            for (std::uint64_t i = 0; i < table.size(); ++i) {
                const Complex c = table.at_index(i);
                if (std::abs(c) < fourier_cutoff) {
                    continue;
                }
                rows.push_back({{"label", SympVector::from_index(i, u.n(), p).str()},
                                {"re", c.real()},
                                {"im", c.imag()},
                                {"abs2", std::norm(c)}});
            }
            json report = gate_fields(u);
            report["parseval_sum"] = table.parseval_sum();
            report["l4_sum"] = table.l4_sum();
            report["argmax"] = table.argmax().str();
            report["rows"] = rows;
            emit(report, g.format);
        } else if (membership->parsed()) {
            const UnitaryHandle u = load_gate(member_gate);
            json report = gate_fields(u);
            report.update(to_json(in_level(u, member_k, member_opts)));
            emit(report, g.format);
        } else if (fid->parsed()) {
            const UnitaryHandle u = load_gate(fid_gate);
            const LevelSet set = enumerate_level(u.n(), u.d(), fid_k, enumerate_options(g));
            const FidelityResult f = fidelity(u, fid_k, set);
            json report = gate_fields(u);
            report.update(to_json(f));
            report["argmax"] = operator_to_json(set.representatives[f.argmax_index].op());
            emit(report, g.format);
        } else if (enumerate->parsed()) {
            const LevelSet set = enumerate_level(enum_n, enum_d, enum_k, enumerate_options(g));
            json report = to_json(set);
            if (!enum_full) {
                report.erase("representatives");
            }
            emit(report, g.format);
        } else if (test_c3->parsed()) {
            const UnitaryHandle u = load_gate(c3_gate);
            c3_config.seed = g.seed;
            c3_config.threads = g.threads;
            c3_config.mode = c3_circuit ? SwapTestMode::circuit : SwapTestMode::exact;
            if (c3_circuit && u.n() != 1) {
                throw OutOfScope("--circuit is limited to single-qudit unitaries");
            }
            emit(to_json(c3_tester(u, c3_config)), g.format);
        } else if (verify->parsed()) {
            SuiteOptions opts;
            opts.seed = g.seed;
            opts.threads = g.threads;
            if (!g.cache_dir.empty()) {
                opts.cache_dir = g.cache_dir;
            }
            json rows = json::array();
            bool all_passed = true;
            for (const CheckInfo &check : select_checks(verify_selector)) {
                const CheckResult r = run_check(check, opts);
                std::cerr << format_result_line(r) << "\n";
                all_passed = all_passed && r.passed;
                rows.push_back(to_json(r));
            }
            emit({{"passed", all_passed}, {"seed", opts.seed}, {"rows", rows}}, g.format);
            return all_passed ? 0 : kExitVerifyFailed;
        }
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const NotUnitary &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const ParameterMismatch &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const BudgetExceeded &e) {
        std::cerr << "error: " << e.what() << "\nhint: use --mode sampled, or raise --max-terms\n";
        return kExitBudget;
    } catch (const OutOfScope &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOutOfScope;
    } catch (const InvalidParameter &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOutOfScope;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    return 0;
}

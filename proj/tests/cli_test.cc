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

// Drives the punif binary end to end.

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"
#include "punif/gate_expr.h"
#include "punif/matrix_json.h"

namespace {

namespace fs = std::filesystem;

struct CliRun {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("punif_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

CliRun run(const std::string &args, const std::string &env = "") {
    const fs::path out = scratch() / "stdout";
    const fs::path err = scratch() / "stderr";
    const std::string cmd =
        env + " " + PUNIF_CLI_PATH + " " + args + " > " + out.string() + " 2> " + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

nlohmann::json run_json(const std::string &args, const std::string &env = "") {
    const CliRun r = run(args, env);
    EXPECT_EQ(r.exit_code, 0) << args << "\n" << r.err;
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST(cli, norm_of_t) {
    const nlohmann::json j = run_json("norm --gate T --k 3");
    EXPECT_NEAR(j["value"].get<double>(), std::pow(0.75, 1.0 / 8), 1e-12);
    EXPECT_NEAR(j["raw"].get<double>(), 0.75, 1e-12);
    EXPECT_EQ(j["mode"], "exact");
    EXPECT_NEAR(run_json("norm --gate I --k 4")["value"].get<double>(), 1, 1e-12);
}

TEST(cli, sampled_is_reproducible) {
    auto strip = [](nlohmann::json j) {
        j.erase("runtime_ms");
        return j.dump();
    };
    const std::string args = "norm --gate \"H*T\" --k 4 --mode sampled --samples 10000 --seed 7";
    const std::string a = strip(run_json(args));
    EXPECT_EQ(a, strip(run_json(args + " --threads 1")));
    EXPECT_EQ(a, strip(run_json(args + " --threads 5")));
    EXPECT_NE(a, strip(run_json("norm --gate \"H*T*H*T\" --k 4 --mode sampled --samples 10000 --seed 7")));
    const nlohmann::json j = nlohmann::json::parse(a);
    EXPECT_EQ(j["samples"], 10000);
    EXPECT_TRUE(j.contains("stderr"));
}

TEST(cli, membership_and_fidelity) {
    const nlohmann::json m = run_json("membership --gate \"(H*T)*(H*T)\" --k 4");
    EXPECT_EQ(m["outcome"], "reject");
    EXPECT_EQ(m["accepted"], false);
    EXPECT_EQ(run_json("membership --gate \"H*T\" --k 3")["outcome"], "accept");
    const nlohmann::json budget = run_json("membership --gate T --k 3 --max-evaluations 3");
    EXPECT_EQ(budget["outcome"], "undecided-budget");

    const nlohmann::json f = run_json("fidelity --gate T --k 1");
    EXPECT_NEAR(f["value"].get<double>(), (2 + std::sqrt(2.0)) / 4, 1e-12);
    EXPECT_EQ(f["argmax_index"], 0);
    const nlohmann::json f3 = run_json("fidelity --gate T --k 3");
    EXPECT_NEAR(f3["value"].get<double>(), 1, 1e-12);
    EXPECT_EQ(f3["lower_bound_only"], true);
}

TEST(cli, fourier_and_enumerate) {
    const nlohmann::json f = run_json("fourier --gate T");
    EXPECT_EQ(f["rows"].size(), 4u);
    EXPECT_NEAR(f["l4_sum"].get<double>(), 0.75, 1e-12);
    EXPECT_NEAR(f["parseval_sum"].get<double>(), 1, 1e-12);
    EXPECT_EQ(run_json("enumerate -d 3 -k 2")["size"], 216);
    EXPECT_EQ(run_json("enumerate -n 2 -k 1")["size"], 16);
}

TEST(cli, cache_dir_from_environment) {
    const fs::path cache = scratch() / "cache";
    fs::remove_all(cache);
    run_json("enumerate -k 2", "PUNIF_CACHE_DIR=" + cache.string());
    ASSERT_TRUE(fs::exists(cache));
    EXPECT_FALSE(fs::is_empty(cache));
}

TEST(cli, tester) {
    const nlohmann::json j = run_json("test-c3 --gate T --repetitions 500", "PUNIF_SEED=11");
    EXPECT_EQ(j["decision"], 1);
    EXPECT_EQ(j["seed"], 11);
    EXPECT_EQ(j["queries_U"], 2000);
    EXPECT_EQ(j["queries_Uadj"], 2000);
    EXPECT_EQ(run_json("test-c3 --gate T")["repetitions"], 14979);
    EXPECT_EQ(run("test-c3 --gate T --epsilon 0.1").exit_code, 4);
}

TEST(cli, exit_codes) {
    EXPECT_EQ(run("norm --gate \"H*\" --k 2").exit_code, 2);
    EXPECT_EQ(run("norm --gate Q --k 2").exit_code, 2);
    EXPECT_EQ(run("norm --k 2").exit_code, 2);
    EXPECT_EQ(run("norm --gate T").exit_code, 2);
    EXPECT_EQ(run("frobnicate").exit_code, 2);
    EXPECT_EQ(run("norm --matrix /nonexistent/m.json --k 2").exit_code, 2);
    const CliRun budget = run("norm --gate \"CZ x CZ x CZ\" --k 4");
    EXPECT_EQ(budget.exit_code, 3);
    EXPECT_NE(budget.err.find("sampled"), std::string::npos);
    EXPECT_TRUE(budget.out.empty());
    EXPECT_EQ(run("fidelity --gate CZ --k 2").exit_code, 4);
    EXPECT_EQ(run("enumerate -d 3 -k 3").exit_code, 4);
    EXPECT_EQ(run("verify no-such-check").exit_code, 4);
}

TEST(cli, non_unitary_matrix_file) {
    const fs::path p = scratch() / "bad.json";
    std::ofstream(p) << R"({"d": 2, "re": [[1, 1], [0, 1]]})";
    EXPECT_EQ(run("norm --k 2 --matrix " + p.string()).exit_code, 2);
}

TEST(cli, dump_matrix_round_trip) {
    for (const std::string expr : {"T", "H*T", "H x T' * CNOT", "exp(i*pi/3)*CZ", "W[1;2]", "X*Z"}) {
        const std::string d = expr == "W[1;2]" || expr == "X*Z" ? "3" : "2";
        const fs::path p = scratch() / "dump.json";
        fs::remove(p);
        run_json("membership -k 0 -d " + d + " --gate \"" + expr + "\" --dump-matrix " + p.string());
        const punif::UnitaryHandle back = punif::read_unitary_file(p);
        const punif::DenseOperator original = punif::parse_gate_expression(expr, std::stoi(d));
        EXPECT_LT((back.matrix() - original.matrix()).cwiseAbs().maxCoeff(), 1e-12) << expr;
        // The dumped file is itself a valid --matrix input.
        EXPECT_EQ(run("norm --k 2 --matrix " + p.string()).exit_code, 0);
    }
}

TEST(cli, formats) {
    const CliRun csv = run("--format csv norm --gate T --k 2");
    ASSERT_EQ(csv.exit_code, 0);
    std::istringstream lines(csv.out);
    std::string header, row, extra;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_FALSE(std::getline(lines, extra));
    EXPECT_NE(header.find("value"), std::string::npos);
    EXPECT_EQ(std::count(header.begin(), header.end(), ','), std::count(row.begin(), row.end(), ','));

    const CliRun fourier_csv = run("fourier --gate H --format csv");
    EXPECT_EQ(std::count(fourier_csv.out.begin(), fourier_csv.out.end(), '\n'), 5);

    const CliRun human = run("norm --gate T --k 2 --format human");
    EXPECT_NE(human.out.find("value"), std::string::npos);
    EXPECT_EQ(run("norm --gate T --k 2 --format yaml").exit_code, 2);
}

TEST(cli, verify) {
    const CliRun r = run("verify non-closure --seed 1");
    EXPECT_EQ(r.exit_code, 0);
    const nlohmann::json j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["passed"], true);
    EXPECT_NE(r.err.find("PASS"), std::string::npos);
}

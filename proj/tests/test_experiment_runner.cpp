/* Copyright 2026 The cudtaus Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cudtaus/experiment_runner.hpp"
#include "cudtaus/reference_data.hpp"

using namespace cudtaus;

namespace {

ExperimentConfig config_from(const std::string& text) {
    std::istringstream in(text);
    return parse_experiment_config(in);
}

std::filesystem::path write_reference_params(unsigned m) {
    const auto dir = std::filesystem::temp_directory_path() / "cudtaus_runner_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / ("f4_m" + std::to_string(m) + ".params");
    std::ofstream out(path, std::ios::trunc);
    out << format_param_record(record_from_params(f4_reference_params(m)));
    return path;
}

}  // namespace

TEST_CASE("IID gaussian experiment output is byte-identical across runs") {
    const auto cfg = config_from(
        "experiment gaussian\n"
        "driver iid\n"
        "n 256\n"
        "r 4\n"
        "seed 97\n");
    std::ostringstream a, b;
    run_experiment_from_config(cfg, a, 2);
    run_experiment_from_config(cfg, b, 1);  // thread count must not matter
    const std::string sa = a.str();
    CHECK(sa == b.str());
    CHECK(sa.rfind("driver,n,r,estimand,rmse\n", 0) == 0);
    // 7 estimands, one row each plus the header
    CHECK(std::count(sa.begin(), sa.end(), '\n') == 8);
}

TEST_CASE("CUD queue experiment consumes a parameter file") {
    const auto path = write_reference_params(5);
    const auto cfg = config_from(
        "experiment queue\n"
        "driver cud\n"
        "params " + path.string() + "\n"
        "n 1024\n"
        "r 8\n"
        "seed 5\n");
    std::ostringstream out;
    run_experiment_from_config(cfg, out);
    CHECK(out.str().find("cud,1024,8,E[W],") != std::string::npos);
}

TEST_CASE("chain length above the period bound is rejected with the period in the message") {
    const auto path = write_reference_params(5);  // b^m = 1024
    const auto cfg = config_from(
        "experiment queue\n"
        "driver cud\n"
        "params " + path.string() + "\n"
        "n 2048\n"
        "r 2\n");
    std::ostringstream out;
    CHECK_THROWS_MATCHES(run_experiment_from_config(cfg, out), std::invalid_argument,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("1024")));
}

TEST_CASE("regression experiment emits one variance row per coefficient plus tau2") {
    // synthetic k = 13 gives 14 coefficients + tau2 = 15 estimand rows
    const auto cfg = config_from(
        "experiment regression\n"
        "driver iid\n"
        "n 64\n"
        "r 2\n"
        "seed 11\n"
        "burn_in 50\n"
        "synthetic_n 120\n"
        "synthetic_k 13\n");
    std::ostringstream out;
    run_experiment_from_config(cfg, out);
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "driver,n,r,estimand,variance");
    int rows = 0;
    while (std::getline(lines, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 15);
    CHECK(out.str().find("tau2") != std::string::npos);
}

TEST_CASE("regression RMSE mode uses an on-demand IID reference run") {
    const auto cfg = config_from(
        "experiment regression\n"
        "driver iid\n"
        "n 128\n"
        "r 2\n"
        "seed 13\n"
        "burn_in 50\n"
        "synthetic_n 80\n"
        "synthetic_k 2\n"
        "truth_ref_n 4096\n");
    std::ostringstream out;
    run_experiment_from_config(cfg, out);
    CHECK(out.str().rfind("driver,n,r,estimand,rmse\n", 0) == 0);
}

TEST_CASE("chain_out dumps the raw state series") {
    const auto dir = std::filesystem::temp_directory_path() / "cudtaus_runner_test";
    std::filesystem::create_directories(dir);
    const auto chain_path = dir / "chain.csv";
    const auto cfg = config_from(
        "experiment gaussian\n"
        "driver iid\n"
        "n 100\n"
        "r 1\n"
        "seed 3\n"
        "chain_out " + chain_path.string() + "\n");
    std::ostringstream out;
    run_experiment_from_config(cfg, out);
    std::ifstream chain(chain_path);
    REQUIRE(chain.good());
    std::string header;
    std::getline(chain, header);
    CHECK(header == "x1,x2,x3");
    int rows = 0;
    std::string line;
    while (std::getline(chain, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 100);
}

TEST_CASE("sample autocorrelation utility") {
    // lag-0 is 1 by construction
    std::vector<double> series = {1.0, 2.0, 3.0, 4.0, 3.0, 2.0, 1.0, 2.0, 3.0, 4.0};
    CHECK(sample_autocorrelation(series, 0) == Catch::Approx(1.0));
    // an IID stream has near-zero lag-1 autocorrelation
    std::mt19937_64 rng(17);
    std::vector<double> iid(20000);
    for (auto& v : iid) v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    CHECK(std::fabs(sample_autocorrelation(iid, 1)) < 0.05);
    // a slowly mixing AR(1) chain keeps high lag-1 correlation
    std::vector<double> ar(20000);
    double x = 0.0;
    std::normal_distribution<double> normal;
    std::mt19937_64 rng2(18);
    for (auto& v : ar) {
        x = 0.9 * x + normal(rng2);
        v = x;
    }
    CHECK(sample_autocorrelation(ar, 1) > 0.8);
    CHECK_THROWS_AS(sample_autocorrelation(series, 10), std::invalid_argument);
}

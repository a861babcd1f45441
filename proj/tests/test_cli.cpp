// Copyright 2026 The npovm Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "npovm/cli.hpp"
#include "npovm/json_io.hpp"

using namespace npovm;
using json::Json;

namespace {

const std::string kData = NPOVM_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
    Json report() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "npovm");
    std::vector<const char *> argv;
    for (const auto &a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string &name, const std::string &content) {
    const auto path = std::filesystem::temp_directory_path() / ("npovm_test_" + name);
    std::ofstream(path) << content;
    return path.string();
}

} // namespace

TEST_CASE("demo-pt succeeds and is deterministic") {
    const Result a = run({"demo-pt"});
    REQUIRE(a.code == 0);
    const Json r = a.report();
    CHECK(r["ok"] == true);
    CHECK(r["tool"]["version"] == cli::kVersion);
    CHECK(r["seed"] == 42);
    CHECK(r["povm"]["c"].get<double>() == doctest::Approx(2.0));
    CHECK(run({"demo-pt"}).out == a.out);

    const Result tight = run({"demo-pt", "--tol-ratio", "1e-15"});
    CHECK((tight.code == 0 || tight.code == 4));
}

TEST_CASE("implement") {
    const Result ok = run({"implement", kData + "/pt_decomposition.json", "--reject", "2"});
    REQUIRE(ok.code == 0);
    const Json r = ok.report();
    CHECK(r["povm"]["c"].get<double>() == doctest::Approx(2.0));
    CHECK(r["povm"]["acceptance"].get<double>() == doctest::Approx(0.5));
    CHECK(r["domain"]["dim"] == 12);
    CHECK(r["inverse"]["condition_i"]["holds"] == true);

    const std::string not_psd = temp_file("notpsd.json", R"({"outcomes": [
        {"label": "a", "terms": [{"map": {"builtin": "identity", "dim": 2}, "S": {"dim": 2, "entries": [[1.5, 0], [0, -0.5]]}}]},
        {"label": "b", "terms": [{"map": {"builtin": "identity", "dim": 2}, "S": {"dim": 2, "entries": [[-0.5, 0], [0, 1.5]]}}]}]})");
    CHECK(run({"implement", not_psd}).code == 3);
    const std::string bad_sum = temp_file("badsum.json", R"({"outcomes": [
        {"label": "a", "terms": [{"map": {"builtin": "identity", "dim": 2}, "S": {"dim": 2, "entries": [[1, 0], [0, 0]]}}]}]})");
    const Result r3 = run({"implement", bad_sum});
    CHECK(r3.code == 3);
    CHECK(r3.err.find("residual") != std::string::npos);
    CHECK(run({"implement", temp_file("garbage.json", "{oops")}).code == 2);
    CHECK(run({"implement", kData + "/does_not_exist.json"}).code == 2);
}

TEST_CASE("invert") {
    const std::string povm = kData + "/pt_povm.json";
    const std::string k = kData + "/pt_gamma_spanning.json";
    const Result ok = run({"invert", povm, "--reject", "2", "--subspace", k, "--c0", "2"});
    REQUIRE(ok.code == 0);
    CHECK(ok.report()["npovm_class"]["kind"] == "N-POVM");
    CHECK(run({"invert", povm, "--reject", "2", "--subspace", kData + "/pt_gamma_fixed.json"}).code == 0);

    const Result bad = run({"invert", povm, "--reject", "2", "--subspace", k, "--c0", "3"});
    CHECK(bad.code == 5);
    CHECK(bad.report()["condition_i"]["projection_norm"].get<double>() > 1e-3);

    const std::string trivial = temp_file("trivial.json", R"({"outcomes": [
        {"label": "a", "effect": {"dim": 2, "entries": [[1, 0], [0, 1]]}},
        {"label": "r", "effect": {"dim": 2, "entries": [[0, 0], [0, 0]]}}]})");
    const std::string full = temp_file("full.json", R"({"dim": 2, "fixed_by": []})");
    CHECK(run({"invert", trivial, "--reject", "r", "--subspace", full}).code == 6);
}

TEST_CASE("verify and simulate") {
    const Result v = run({"verify", kData + "/pt_npovm.json", kData + "/pt_povm.json",
                          kData + "/pt_gamma_fixed.json", "--reject", "2", "--samples", "50"});
    REQUIRE(v.code == 0);
    CHECK(v.report()["verification"]["samples_used"] == 50);

    const Result s = run({"simulate", kData + "/pt_povm.json", "--state", kData + "/pt_rho0.json",
                          "--reject", "2", "--shots", "20000", "--seed", "7"});
    REQUIRE(s.code == 0);
    const Json r = s.report();
    CHECK(r["outcomes"][0]["frequency"].get<double>() == 1.0);
    CHECK(std::abs(r["acceptance_rate"].get<double>() - 0.5) <= 4 * r["acceptance_sigma"].get<double>());
}

TEST_CASE("asd") {
    const Result z2 = run({"asd", kData + "/z2_rep.json"});
    REQUIRE(z2.code == 0);
    const Json r = z2.report();
    CHECK(r["c"].get<double>() == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(r["conversion"]["max_delta_error"].get<double>() <= 1e-9);

    const Result ortho = run({"asd", kData + "/family_orthonormal.json"});
    REQUIRE(ortho.code == 0);
    CHECK(ortho.report()["m0_norm"].get<double>() <= 1e-12);
    CHECK(ortho.report()["conversion"]["npovm"].is_null());

    CHECK(run({"asd", kData + "/s3_rep.json"}).code == 0);

    const std::string near = temp_file("near.json", R"({"states": [[1, 0], [1, 1e-12]]})");
    CHECK(run({"asd", near}).code == 3);
    const std::string uneven = temp_file("uneven.json", R"({"states": [[1, 0], [0.6, 0.8]], "c": [0.2, 0.1]})");
    CHECK(run({"asd", uneven}).code == 5);
}

TEST_CASE("auto-implement and argument errors") {
    const Result a = run({"auto-implement", kData + "/witness_npovm.json", "--basis", kData + "/basis4.json"});
    REQUIRE(a.code == 0);
    CHECK(a.report()["dim_bound_ok"] == true);
    CHECK(run({"auto-implement", kData + "/pt_npovm.json", "--basis", kData + "/basis4.json"}).code == 3);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

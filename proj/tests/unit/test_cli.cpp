// Copyright 2026 The qeclie Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "qeclie/error.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using qeclie::cli::kCheckFailed;
using qeclie::cli::kInvalidInput;
using qeclie::cli::kOk;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qeclie");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = qeclie::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path tmpdir(const std::string& name) {
  const fs::path p = fs::path(QECLIE_TEST_TMPDIR) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("closure report for spin 7/2 at grade 2") {
  const Run r = run({"closure", "--spin", "7/2", "--grade", "2"});
  REQUIRE(r.code == kOk);
  const json j = json::parse(r.out);
  CHECK(j["input_dim"] == 9);
  CHECK(j["ambient"] == 8);
  CHECK(j["closure_dim"] == 64);
  CHECK(j["universal"] == true);
  CHECK(j["closed"] == false);
  CHECK(r.out == run({"closure", "--spin", "3.5", "--grade", "2"}).out);
}

TEST_CASE("closure of the multiplicative set") {
  const Run r = run({"closure", "--spin", "5/2", "--generators", "1,Jz,Jx^2"});
  REQUIRE(r.code == kOk);
  CHECK(json::parse(r.out)["universal"] == false);
}

TEST_CASE("code check exit codes") {
  const Run ok = run({"code", "check", "--code", "builtin:spin25", "--errors", "spin:grade=2",
                      "--expect", "correctable"});
  CHECK(ok.code == kOk);
  const json j = json::parse(ok.out);
  CHECK(j["correctable"] == true);
  CHECK(j["expectation_met"] == true);
  const Run bad = run({"code", "check", "--code", "builtin:spin25", "--errors", "spin:grade=3",
                       "--expect", "correctable"});
  CHECK(bad.code == kCheckFailed);
  CHECK(json::parse(bad.out)["correctable"] == false);
  const Run det = run({"code", "check", "--code", "builtin:spin25", "--errors", "spin:grade=4",
                       "--expect", "detectable"});
  CHECK(det.code == kOk);
  const Run dist = run({"code", "check", "--code", "builtin:code422", "--errors", "pauli:weight=1",
                        "--t-max", "1"});
  CHECK(dist.code == kOk);
  CHECK(json::parse(dist.out)["correctable"] == false);
}

TEST_CASE("invalid input exits with 2") {
  CHECK(run({"closure", "--spin", "7/2", "--bogus"}).code == kInvalidInput);
  CHECK(run({}).code == kInvalidInput);
  CHECK(run({"closure", "--spin", "-1"}).code == kInvalidInput);
  CHECK(run({"closure", "--spin", "1/3"}).code == kInvalidInput);
  CHECK(run({"code", "check", "--code", "nope:1", "--errors", "spin:grade=1"}).code == kInvalidInput);
  CHECK(run({"code", "check", "--code", "builtin:spin25", "--errors", "spin:grade=x"}).code ==
        kInvalidInput);
  CHECK(run({"sim", "sweep", "--family", "w_state", "--J", "4", "--gamma-t", "0.1"}).code ==
        kInvalidInput);
  CHECK(run({"bounds", "rate", "--n", "2", "--p", "2", "--t", "1"}).code == kInvalidInput);
  CHECK(run({"--threads", "x", "bounds", "grade", "--dims", "4", "--K", "2"}).code == kInvalidInput);
  const Run missing = run({"code", "check", "--code", "file:/nonexistent/code.json", "--errors",
                           "spin:grade=1"});
  CHECK(missing.code == kInvalidInput);
  CHECK(missing.err.find("error:") != std::string::npos);
}

TEST_CASE("json emitter rejects non-finite values") {
  CHECK_THROWS_AS(qeclie::cli::to_json_text(json{{"x", std::nan("")}}), qeclie::InvalidInput);
  CHECK_THROWS_AS(
      qeclie::cli::to_json_text(json{{"x", {1.0, std::numeric_limits<double>::infinity()}}}),
      qeclie::InvalidInput);
  const std::string text = qeclie::cli::to_json_text(json{{"x", 0.1}, {"v", {1, 2}}});
  CHECK(text.find("0.10000000000000001") != std::string::npos);
  CHECK(json::parse(text)["x"].get<double>() == 0.1);
}

TEST_CASE("spin and uri parsing") {
  CHECK(qeclie::cli::parse_spin_value("7/2") == 3.5);
  CHECK(qeclie::cli::parse_spin_value("12.5") == 12.5);
  CHECK_THROWS_AS(qeclie::cli::parse_spin_value("0.3"), qeclie::InvalidInput);
  CHECK_THROWS_AS(qeclie::cli::parse_spin_value("abc"), qeclie::InvalidInput);
  CHECK(qeclie::cli::parse_code_uri("builtin:spin25").physical_dim() == 26);
  CHECK(qeclie::cli::parse_code_uri("builtin:w_state:2,2").physical_dim() == 25);
  CHECK(qeclie::cli::parse_code_uri("builtin:spin_cat:5/2").physical_dim() == 6);
  CHECK(qeclie::cli::parse_code_uri("builtin:code422").physical_dim() == 16);
  CHECK(qeclie::cli::parse_generators("1,Jz,Jx^2", qeclie::Spin(5)).size() == 3);
  CHECK_THROWS_AS(qeclie::cli::parse_generators("1,Jq", qeclie::Spin(5)), qeclie::InvalidInput);
}

TEST_CASE("--out writes atomically") {
  const fs::path dir = tmpdir("cli_out");
  const fs::path target = dir / "report.json";
  const Run r = run({"--out", target.string(), "bounds", "singleton", "--N", "26", "--K", "2",
                     "--e-dim", "9"});
  CHECK(r.code == kOk);
  CHECK(r.out.empty());
  const json j = json::parse(slurp(target));
  CHECK(j["slack"] == 352.0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(dir)) {
    (void)e;
    ++files;
  }
  CHECK(files == 1);
  const Run bad = run({"--out", (dir / "missing" / "x.json").string(), "bounds", "singleton",
                       "--N", "26", "--K", "2", "--e-dim", "9"});
  CHECK(bad.code == kInvalidInput);
}

TEST_CASE("config file with command-line precedence") {
  const fs::path dir = tmpdir("cli_config");
  const fs::path cfg = dir / "run.json";
  std::ofstream(cfg) << R"({"bounds": {"rate": {"n": 4, "p": 0.1, "t": 2, "mode": "correlated"}}})";
  const Run a = run({"--config", cfg.string(), "bounds", "rate"});
  REQUIRE(a.code == kOk);
  CHECK(json::parse(a.out)["upper_bound"].get<double>() == doctest::Approx(1e-3).epsilon(1e-15));
  const Run b = run({"--config", cfg.string(), "bounds", "rate", "--mode", "local"});
  REQUIRE(b.code == kOk);
  CHECK(json::parse(b.out)["upper_bound"].get<double>() ==
        doctest::Approx(6.25e-5).epsilon(1e-15));
  std::ofstream(dir / "extra.json") << R"({"bounds": {"rate": {"n": 4, "zzz": 1}}})";
  CHECK(run({"--config", (dir / "extra.json").string(), "bounds", "rate", "--p", "0.1", "--t",
             "1"})
            .code == kInvalidInput);
  std::ofstream(dir / "broken.json") << "{not json";
  CHECK(run({"--config", (dir / "broken.json").string(), "bounds", "rate"}).code == kInvalidInput);
}

TEST_CASE("sweep output") {
  const Run empty = run({"sim", "sweep", "--family", "w_state", "--gamma-t", "0.1"});
  REQUIRE(empty.code == kOk);
  CHECK(empty.out == "family,n,J,gamma,T,gamma_T,fidelity,infidelity\n");
  const Run one = run({"sim", "sweep", "--family", "w_state", "--J", "1", "--gamma-t", "0.01",
                       "--T", "2"});
  REQUIRE(one.code == kOk);
  CHECK(one.out.find("\nw_state,2,1.00000000000000000e+00,5.00000000000000010e-03,") !=
        std::string::npos);
  const Run js = run({"sim", "sweep", "--family", "w_state", "--J", "1", "--log-grid",
                      "1e-3,1e-1,3", "--format", "json"});
  REQUIRE(js.code == kOk);
  CHECK(json::parse(js.out)["rows"].size() == 3);
}

TEST_CASE("gates and bounds subcommands") {
  const Run sx = run({"gates", "synth", "--gate", "sx"});
  REQUIRE(sx.code == kOk);
  CHECK(json::parse(sx.out)["logical_fidelity"].get<double>() >= 1.0 - 1e-8);
  const Run grade = run({"bounds", "grade", "--dims", "26", "--K", "2"});
  REQUIRE(grade.code == kOk);
  CHECK(json::parse(grade.out)["min_grade"] == 2);
  const Run measured = run({"bounds", "singleton", "--spin", "25/2", "--t", "2", "--K", "2"});
  REQUIRE(measured.code == kOk);
  CHECK(json::parse(measured.out)["e_t_dim"] == 9);
}

TEST_CASE("version and determinism") {
  const Run v = run({"--version"});
  CHECK(v.code == kOk);
  CHECK(v.out.find("0.1.0") != std::string::npos);
  const std::vector<std::string> args{"code", "check", "--code", "builtin:w_state:2,2", "--errors",
                                      "spin:grade=1,axes=x"};
  std::vector<std::string> a1{"--threads", "1"};
  std::vector<std::string> a4{"--threads", "4"};
  a1.insert(a1.end(), args.begin(), args.end());
  a4.insert(a4.end(), args.begin(), args.end());
  CHECK(run(a1).out == run(a4).out);
}

// Copyright 2026 The qcorr Authors
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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qcorr/cli.hpp"
#include "qcorr/json_io.hpp"

using namespace qcorr;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace

TEST(Parsers, Dims) {
  EXPECT_EQ(cli::parse_dims("2x2x2"), (Dims{2, 2, 2}));
  EXPECT_EQ(cli::parse_dims("3"), (Dims{3}));
  for (const char* bad : {"", "2x", "x2", "2xx2", "2x0", "2y2", "-2"}) {
    EXPECT_THROW(cli::parse_dims(bad), std::invalid_argument) << bad;
  }
}

TEST(Parsers, RangeIsInclusive) {
  const auto xs = cli::parse_range("-0.9:-0.1:5");
  ASSERT_EQ(xs.size(), 5u);
  EXPECT_DOUBLE_EQ(xs.front(), -0.9);
  EXPECT_DOUBLE_EQ(xs.back(), -0.1);
  EXPECT_NEAR(xs[2], -0.5, 1e-15);
  EXPECT_EQ(cli::parse_range("-0.9:-0.9:1"), std::vector<double>{-0.9});
  for (const char* bad : {"-0.9", "-0.9:-0.1", "a:b:3", "-0.9:-0.1:0", "-0.9:-0.1:1", "-0.9:-0.1:2x"}) {
    EXPECT_THROW(cli::parse_range(bad), std::invalid_argument) << bad;
  }
}

TEST(Parsers, FamilyAliases) {
  EXPECT_EQ(cli::parse_family("example4"), Family::werner_2qubit);
  EXPECT_EQ(cli::parse_family("werner"), Family::werner_qudit);
  EXPECT_EQ(cli::parse_family("haar_pure"), Family::haar_pure);
  EXPECT_THROW(cli::parse_family("gibbs"), std::invalid_argument);
}

TEST(Run, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"verify"}).code, cli::kUsageError);  // --suite is required
  EXPECT_EQ(invoke({"verify", "--suite", "eq99"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"compute", "--format", "xml", "--family", "example4"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"compute"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"example", "example9"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"hunt", "--x", "0.2:0.2:1"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"compute", "--family", "random_mixed", "--dims", "2x1x2"}).code, cli::kUsageError);

  const auto missing = invoke({"compute", "--state", "/nonexistent/state.json"});
  EXPECT_EQ(missing.code, cli::kUsageError);
  EXPECT_NE(missing.err.find("cannot open"), std::string::npos) << missing.err;
}

TEST(Run, HelpDocumentsColumnsAndExitCodes) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, cli::kSuccess);
  EXPECT_NE(r.out.find("Exit codes"), std::string::npos);
  EXPECT_NE(r.out.find(kSuiteCsvHeader), std::string::npos);
}

TEST(Run, Example4Json) {
  const auto r = invoke({"example", "example4", "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto j = Json::parse(r.out);
  ASSERT_EQ(j["rows"].size(), 4u);
  const double d = j["rows"][0]["computed"];
  const double jc = j["rows"][1]["computed"];
  EXPECT_GE(d, 0.121);
  EXPECT_LE(d, 0.131);
  EXPECT_GE(jc, 0.077);
  EXPECT_LE(jc, 0.087);
  EXPECT_EQ(j["rows"][2]["computed"].get<double>(), 0.0);
  EXPECT_TRUE(j["lindblad_violated"].get<bool>());
}

TEST(Run, Example3AndExample2Pass) {
  EXPECT_EQ(invoke({"example", "example3"}).code, cli::kSuccess);
  const auto r = invoke({"example", "example2", "--dims", "2x3", "--seed", "4", "--format", "csv"});
  EXPECT_EQ(r.code, cli::kSuccess) << r.out;
  EXPECT_EQ(r.out.rfind("quantity,reference,computed,delta,tol,ok\n", 0), 0u);
}

TEST(Run, ComputeFromStateFile) {
  const std::string path = ::testing::TempDir() + "qcorr_cli_state.json";
  {
    std::ofstream f(path);
    f << to_json(werner_2qubit_example4()).dump();
  }
  const auto r = invoke({"compute", "--state", path, "--format", "csv"});
  std::remove(path.c_str());
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_EQ(r.out.rfind(std::string(kReportCsvHeader) + "\n", 0), 0u);
}

TEST(Run, VerifyCsvOnStdoutSummaryOnStderr) {
  const auto r = invoke({"verify", "--suite", "eq5,eq12", "--samples", "4", "--dims", "2x2", "--format", "csv"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 9);
  EXPECT_NE(r.err.find("result: PASS"), std::string::npos);
}

TEST(Run, VerifyFailureExitsOne) {
  // a starved optimizer leaves the classical correlation far below its
  // optimum, so the identity misses its tolerance
  const auto r = invoke({"verify", "--suite", "kw", "--samples", "5", "--family", "random_mixed", "--dims", "2x2",
                         "--rank", "2", "--restarts", "1", "--max-iter", "1"});
  EXPECT_EQ(r.code, cli::kVerificationFailure) << r.out;
  EXPECT_NE(r.out.find("FAILED kw"), std::string::npos) << r.out;
}

TEST(Run, HuntReportsLabelAndMonotoneTrajectory) {
  const auto r = invoke({"hunt", "--d", "3", "--x", "-0.8:-0.4:2", "--restarts", "4", "--format", "json"});
  ASSERT_EQ(r.code, cli::kSuccess) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_NE(j["label"].get<std::string>().find("non-certifying"), std::string::npos);
  ASSERT_EQ(j["points"].size(), 2u);
  for (const auto& p : j["points"]) {
    const auto traj = p["trajectory"].get<std::vector<double>>();
    ASSERT_EQ(traj.size(), 4u);
    for (std::size_t i = 1; i < traj.size(); ++i) EXPECT_LE(traj[i], traj[i - 1]);
    EXPECT_DOUBLE_EQ(p["gap"].get<double>(), p["d_a_upper"].get<double>() - p["s_b"].get<double>());
  }
  EXPECT_NE(r.err.find("hunt: d=3"), std::string::npos);
}

TEST(Run, RepeatedRunsAreByteIdentical) {
  const std::string a = ::testing::TempDir() + "qcorr_rep_a.json";
  const std::string b = ::testing::TempDir() + "qcorr_rep_b.json";
  for (const auto& path : {a, b}) {
    const auto r = invoke({"verify", "--suite", "kw,thm1", "--samples", "3", "--dims", "2x2", "--rank", "2",
                           "--seed", "7", "--format", "json", "--out", path, "--jobs", "2"});
    ASSERT_EQ(r.code, cli::kSuccess) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
  const auto ta = slurp(a);
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, slurp(b));
  EXPECT_EQ(Json::parse(ta)["family"]["seed"], 7);
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST(Run, UnwritableOutputIsAnError) {
  const auto r = invoke({"example", "example4", "--out", "/nonexistent/dir/report.txt"});
  EXPECT_EQ(r.code, cli::kUsageError);
}

// Copyright 2026 The qmargulis Authors
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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>

#include "commands.h"
#include "json.hpp"
#include "qmargulis/io.h"

namespace qmargulis::cli {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "qmargulis");
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qmargulis_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string dir() const { return dir_.string(); }

  fs::path dir_;
};

TEST_F(CliTest, WalkWritesFourFramesFromOrigin) {
  const CliResult r = run({"--out-dir", dir(), "walk", "--N", "7", "--steps", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (int k = 0; k <= 3; ++k) {
    EXPECT_TRUE(fs::exists(path("step_" + std::to_string(k) + ".pgm")));
    EXPECT_TRUE(fs::exists(path("step_" + std::to_string(k) + ".csv")));
  }
  const GridDist g0 = grid_from_csv(read_file(path("step_0.csv")));
  EXPECT_EQ(g0(0, 0), 1.0);
  EXPECT_EQ(g0.total(), 1.0);
  const std::string pgm = read_file(path("step_0.pgm"));
  EXPECT_EQ(pgm.rfind("P2\n7 7\n255\n255 0 0", 0), 0u);
}

TEST_F(CliTest, WalkOneStepValues) {
  ASSERT_EQ(run({"walk", "--N", "7", "--steps", "1", "--out-dir", dir()}).code, kExitOk);
  const GridDist g = grid_from_csv(read_file(path("step_1.csv")));
  std::vector<double> nonzero;
  for (double v : g.values()) {
    if (v != 0.0) nonzero.push_back(v);
  }
  std::sort(nonzero.begin(), nonzero.end());
  EXPECT_EQ(nonzero, (std::vector<double>{0.125, 0.125, 0.125, 0.125, 0.5}));
}

TEST_F(CliTest, WalkZeroStepsEchoesInput) {
  ASSERT_EQ(run({"walk", "--N", "5", "--steps", "0", "--start-p", "2", "--start-q", "1", "--out-dir", dir()}).code,
            kExitOk);
  EXPECT_FALSE(fs::exists(path("step_1.csv")));
  const GridDist g = grid_from_csv(read_file(path("step_0.csv")));
  EXPECT_EQ(g(2, 1), 1.0);
}

TEST_F(CliTest, WalkQuantumMatchesClassical) {
  ASSERT_EQ(run({"walk", "--N", "5", "--steps", "3", "--out-dir", path("c")}).code, kExitOk);
  ASSERT_EQ(run({"walk", "--N", "5", "--steps", "3", "--quantum", "--out-dir", path("q")}).code, kExitOk);
  const GridDist c = grid_from_csv(read_file(path("c/step_3.csv")));
  const GridDist q = grid_from_csv(read_file(path("q/step_3.csv")));
  for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(c.values()[i], q.values()[i], 1e-12);
}

TEST_F(CliTest, WalkFixedScaleAndEnvDirectory) {
  ::setenv(kOutDirEnv, dir().c_str(), 1);
  const CliResult r = run({"walk", "--N", "7", "--steps", "2", "--fixed-scale", "--json"});
  ::unsetenv(kOutDirEnv);
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out).size(), 3u);
  // Step 1 on the shared scale: 1/2 -> 128 rather than 255.
  EXPECT_EQ(read_file(path("step_1.pgm")).rfind("P2\n7 7\n255\n128 32 0", 0), 0u);
}

TEST_F(CliTest, EvenNIsUsageError) {
  EXPECT_EQ(run({"walk", "--N", "8", "--out-dir", dir()}).code, kExitUsage);
  EXPECT_FALSE(fs::exists(path("step_0.csv")));
  EXPECT_EQ(run({"verify", "--N", "8"}).code, kExitUsage);
  EXPECT_EQ(run({"spectrum", "--N-list", "3,4"}).code, kExitUsage);
}

TEST_F(CliTest, SpectrumBothModesAgree) {
  const CliResult r = run({"spectrum", "--N-list", "3,5,7", "--mode", "both", "--out-dir", dir()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto lambdas = lambda_from_csv(read_file(path("lambda.csv")));
  ASSERT_EQ(lambdas.size(), 6u);
  for (std::size_t i = 0; i < lambdas.size(); i += 2) {
    EXPECT_EQ(lambdas[i].kind, "classical");
    EXPECT_NEAR(lambdas[i].lambda, lambdas[i + 1].lambda, 1e-8);
    EXPECT_LE(lambdas[i].lambda, 0.8839);
    EXPECT_NEAR(lambdas[i].bound, 0.883883, 1e-6);
  }
  // Per-N spectra agree entrywise after sorting.
  std::map<std::pair<int64_t, std::string>, std::vector<double>> spectra;
  std::istringstream in(read_file(path("spectrum.csv")));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "N,kind,index,eigenvalue");
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string n, kind, idx, value;
    std::getline(ss, n, ',');
    std::getline(ss, kind, ',');
    std::getline(ss, idx, ',');
    std::getline(ss, value, ',');
    spectra[{std::stoll(n), kind}].push_back(std::stod(value));
  }
  for (int64_t n : {3, 5, 7}) {
    auto c = spectra[{n, "classical"}], q = spectra[{n, "quantum"}];
    ASSERT_EQ(c.size(), static_cast<std::size_t>(n * n));
    ASSERT_EQ(q.size(), c.size());
    std::sort(c.begin(), c.end());
    std::sort(q.begin(), q.end());
    for (std::size_t i = 0; i < c.size(); ++i) EXPECT_NEAR(c[i], q[i], 1e-8);
  }
}

TEST_F(CliTest, SpectrumClassicalN9) {
  ASSERT_EQ(run({"spectrum", "--N-list", "9", "--mode", "classical", "--out-dir", dir()}).code, kExitOk);
  const std::string csv = read_file(path("spectrum.csv"));
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 82);
  EXPECT_NE(csv.find("9,classical,0,1"), std::string::npos);
}

TEST_F(CliTest, SpectrumCapNeedsOverride) {
  EXPECT_EQ(run({"spectrum", "--N-list", "11", "--out-dir", dir()}).code, kExitUsage);
  EXPECT_EQ(run({"spectrum", "--N-list", "11", "--mode", "classical", "--out-dir", dir()}).code, kExitOk);
  EXPECT_EQ(run({"spectrum", "--N-list", "51", "--mode", "classical", "--out-dir", dir()}).code, kExitUsage);
  EXPECT_EQ(run({"spectrum", "--N-list", "11", "--override-cap", "--out-dir", dir()}).code, kExitOk);
}

TEST_F(CliTest, VerifyDefaultPasses) {
  const CliResult r = run({"verify", "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["N"], 7);
  EXPECT_EQ(j["seed"], 42);
  EXPECT_TRUE(j["passed"].get<bool>());
  std::set<std::string> names;
  for (const auto& c : j["checks"]) names.insert(c["name"].get<std::string>());
  for (const char* want : {"orthonormality", "covariance", "weyl_translation", "intertwining", "circuit_equivalence"}) {
    EXPECT_TRUE(names.count(want)) << want;
  }
}

TEST_F(CliTest, VerifyUnreachableToleranceFails) {
  const CliResult r = run({"verify", "--tol", "1e-30"});
  EXPECT_EQ(r.code, kExitCheckFailed);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("max deviation"), std::string::npos);
}

TEST_F(CliTest, VerifyGoldenRoundTrip) {
  ASSERT_EQ(run({"verify", "--N", "5", "--dump", path("g")}).code, kExitOk);
  EXPECT_TRUE(fs::exists(path("g/N5_fourier.json")));
  EXPECT_EQ(run({"verify", "--N", "5", "--golden", path("g")}).code, kExitOk);
  write_file(path("g/N5_parity.json"), operator_to_json(CMatrix::Identity(5, 5)));
  EXPECT_EQ(run({"verify", "--N", "5", "--golden", path("g")}).code, kExitCheckFailed);
}

TEST_F(CliTest, VerifyCompositeModulusUsesQudits) {
  const CliResult r = run({"verify", "--N", "9", "--json"});
  ASSERT_EQ(r.code, kExitOk);
}

TEST_F(CliTest, CircuitCheck) {
  const CliResult r = run({"circuit", "--d", "3", "--qudits", "2", "--transform", "T1", "--check"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("{\"d\":3,\"n\":2,\"transform\":\"T1\"", 0), 0u);
  EXPECT_NE(r.out.find("equal up to phase: true"), std::string::npos);
  for (const char* t : {"T2", "T3inv", "T4", "F", "Uplus", "Uminus"}) {
    EXPECT_EQ(run({"circuit", "--d", "5", "--qudits", "2", "--transform", t, "--check"}).code, kExitOk) << t;
  }
}

TEST_F(CliTest, CircuitErrors) {
  EXPECT_EQ(run({"circuit", "--d", "4"}).code, kExitUsage);
  EXPECT_EQ(run({"circuit", "--transform", "T9"}).code, kExitUsage);
}

TEST_F(CliTest, MomentsClosedForm) {
  const CliResult r = run({"moments", "--gamma", "1,0,1", "--iters", "4", "--map", "g"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("\n4,81,0,81,0,0,162,6561\n"), std::string::npos);
  EXPECT_EQ(run({"moments", "--gamma", "1,0"}).code, kExitUsage);
  EXPECT_EQ(run({"moments", "--map", "h"}).code, kExitUsage);
}

TEST_F(CliTest, ContractionWithinSlack) {
  const CliResult r = run({"contraction", "--delta", "0.25"});
  ASSERT_EQ(r.code, kExitOk);
  std::istringstream in(r.out);
  std::string line;
  int seen = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_LE(j["ratio"].get<double>(), 0.894);
    ++seen;
  }
  EXPECT_EQ(seen, 2);
  EXPECT_EQ(run({"contraction", "--delta", "0.05"}).code, kExitUsage);
}

TEST_F(CliTest, Deterministic) {
  ASSERT_EQ(run({"spectrum", "--N-list", "3,5", "--out-dir", path("a")}).code, kExitOk);
  ASSERT_EQ(run({"spectrum", "--N-list", "3,5", "--out-dir", path("b")}).code, kExitOk);
  EXPECT_EQ(read_file(path("a/spectrum.csv")), read_file(path("b/spectrum.csv")));
  EXPECT_EQ(run({"verify", "--json"}).out, run({"verify", "--json"}).out);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"walk", "--steps", "x"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace qmargulis::cli

// Copyright 2026 The pcnhijack Authors
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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "support/oracles.h"

namespace pcnhijack {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult RunCli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string ReadFile(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pcnhijack_cli_" +
            std::string(::testing::UnitTest::GetInstance()
                            ->current_test_info()
                            ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(CliTest, StatsOnTwoNodes) {
  const RunResult r = RunCli(
      {"stats", "--graph", testing::FixturePath("two_node.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  int degree_rows = 0;
  for (const auto& row : ParseCsv(r.out)) {
    if (row[0] == "degree") {
      ++degree_rows;
      EXPECT_EQ(row[1], "1");
      EXPECT_EQ(row[2], "2");
    }
  }
  EXPECT_EQ(degree_rows, 1);
}

TEST_F(CliTest, AttackOnBridgeCapturesCrossTraffic) {
  const fs::path pairs = dir_ / "pairs.txt";
  {
    std::ofstream f(pairs);
    f << "# cross-cluster payments\n";
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        f << "l" << i << ",r" << j << "\n";
        f << "r" << j << ",l" << i << "\n";
      }
    }
  }
  const fs::path out = dir_ / "attack.csv";
  const RunResult r = RunCli(
      {"attack", "--graph", testing::FixturePath("bridge.json").string(), "--k",
       "5", "--pairs", "file:" + pairs.string(), "--trials", "2", "--out",
       out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = ParseCsv(ReadFile(out));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0][0], "k");
  EXPECT_EQ(rows[0][6], "fraction");
  EXPECT_EQ(rows.back()[0], "5");
  EXPECT_EQ(std::stod(rows.back()[6]), 1.0);

  const auto sidecar = nlohmann::json::parse(ReadFile(out.string() + ".json"));
  EXPECT_EQ(sidecar["seed"], 1);
  EXPECT_TRUE(sidecar.contains("config_hash"));
  EXPECT_TRUE(fs::exists(out.string() + ".plan.json"));
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> base = {
      "centrality", "--synthetic", "nodes=80,m=2,seed=3", "--policy",
      "clightning", "--pairs",     "sample:500",          "--k",
      "4",          "--seed",      "9"};
  std::vector<std::string> first = base, second = base;
  first.insert(first.end(), {"--out", (dir_ / "a.csv").string()});
  second.insert(second.end(), {"--out", (dir_ / "b.csv").string()});
  ASSERT_EQ(RunCli(first).code, 0);
  ASSERT_EQ(RunCli(second).code, 0);
  EXPECT_EQ(ReadFile(dir_ / "a.csv"), ReadFile(dir_ / "b.csv"));
  auto ja = nlohmann::json::parse(ReadFile(dir_ / "a.csv.json"));
  auto jb = nlohmann::json::parse(ReadFile(dir_ / "b.csv.json"));
  EXPECT_EQ(ja["config_hash"], jb["config_hash"]);
  EXPECT_EQ(ja["summary"], jb["summary"]);
}

TEST_F(CliTest, GameReportsClosedForm) {
  const RunResult r =
      RunCli({"game", "--H", "2", "--I", "0", "--V", "3", "--k", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["p"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(j["q"].get<double>(), 0.5);
  EXPECT_DOUBLE_EQ(j["attacker_value"].get<double>(), 1.0);
}

TEST_F(CliTest, BadArgumentsFail) {
  EXPECT_NE(RunCli({}).code, 0);
  EXPECT_NE(RunCli({"stats"}).code, 0);
  EXPECT_NE(RunCli({"stats", "--graph", (dir_ / "missing.json").string()}).code,
            0);
  EXPECT_NE(RunCli({"routes", "--synthetic", "nodes=20", "--policy", "bogus"})
                .code,
            0);
  EXPECT_NE(RunCli({"routes", "--synthetic", "nodes=20", "--pairs", "every"})
                .code,
            0);
  EXPECT_NE(RunCli({"game", "--V", "2"}).code, 0);
  EXPECT_NE(RunCli({"stats", "--graph", "x", "--synthetic", "nodes=5"}).code, 0);
}

}  // namespace
}  // namespace pcnhijack

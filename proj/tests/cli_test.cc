// Copyright 2026 The efce-dynamics Authors
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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int status = -1;
  std::string out;
};

// Runs the CLI with stderr merged into stdout.
Result cli(const std::string& args) {
  const std::string command = std::string(EFCE_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  Result result;
  if (!pipe) return result;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("efce_cli_test_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

TEST_F(CliTest, ValidateFig1) {
  const Result dump = cli("dump --builtin fig1 --builtin-seed 0");
  ASSERT_EQ(dump.status, 0) << dump.out;
  const fs::path file = write("fig1.efgt", dump.out);
  const Result r = cli("validate " + file.string());
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("player 1 infosets 4 sequences 8"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("nodes 15"), std::string::npos);
  EXPECT_NE(r.out.find("perfect_recall yes"), std::string::npos);
}

TEST_F(CliTest, ValidateKuhnDump) {
  const Result dump = cli("dump --builtin kuhn3");
  ASSERT_EQ(dump.status, 0) << dump.out;
  const Result r = cli("validate " + write("kuhn3.efgt", dump.out).string());
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("terminals 30"), std::string::npos) << r.out;
}

TEST_F(CliTest, MalformedFile) {
  const fs::path file = write("bad.efgt", "players 1\nroot r\nleaf r { 0\n");
  const Result r = cli("validate " + file.string());
  EXPECT_EQ(r.status, 3) << r.out;
  EXPECT_NE(r.out.find("line"), std::string::npos) << r.out;
}

TEST_F(CliTest, MissingFile) {
  EXPECT_EQ(cli("validate " + (dir_ / "absent.efgt").string()).status, 3);
}

TEST_F(CliTest, RunWritesLogAndSummary) {
  const std::string args = "run --builtin fig1 --builtin-seed 0 --iterations 1024 --seed 42 "
                           "--gap-every 128 --delta 0.01 --out ";
  const Result r = cli(args + (dir_ / "a").string());
  ASSERT_EQ(r.status, 0) << r.out;
  const std::string csv = read_file(dir_ / "a" / "log.csv");
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "t,player,phi_regret,phi_regret_bound,efce_gap,gap_bound");
  int rows[2] = {0, 0};
  int gaps[2] = {0, 0};
  while (std::getline(lines, line)) {
    std::istringstream fields(line);
    std::string t, player, regret, bound, gap, gbound;
    std::getline(fields, t, ',');
    std::getline(fields, player, ',');
    std::getline(fields, regret, ',');
    std::getline(fields, bound, ',');
    std::getline(fields, gap, ',');
    std::getline(fields, gbound, ',');
    const int p = std::stoi(player) - 1;
    ASSERT_TRUE(p == 0 || p == 1);
    ++rows[p];
    if (!gap.empty()) {
      ++gaps[p];
      EXPECT_FALSE(gbound.empty());
    }
  }
  for (int p = 0; p < 2; ++p) {
    EXPECT_EQ(rows[p], 1024);
    EXPECT_EQ(gaps[p], 8);
  }
  const std::string summary = read_file(dir_ / "a" / "summary.txt");
  EXPECT_NE(summary.find("efce_gap"), std::string::npos);
  EXPECT_EQ(summary, r.out);

  ASSERT_EQ(cli(args + (dir_ / "b").string()).status, 0);
  EXPECT_EQ(read_file(dir_ / "b" / "log.csv"), csv);
  EXPECT_EQ(read_file(dir_ / "b" / "summary.txt"), summary);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli("run --builtin fig1 --builtin-seed 0 --iterations 0").status, 2);
  EXPECT_EQ(cli("run --builtin fig1 --builtin-seed 0 --iterations 5 --delta 1.5").status, 2);
  EXPECT_EQ(cli("run --builtin fig1 --builtin-seed 0").status, 2);
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("run --builtin nonsense --iterations 5").status, 2);
}

}  // namespace

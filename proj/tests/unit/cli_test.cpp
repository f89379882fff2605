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
// limitations under the License

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ADAPTRR_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "adaptrr_cli_test";
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
    return (dir_ / name).string();
  }

  fs::path dir_;
};

TEST_F(Cli, Success) {
  const auto cfg = write("ok.ini", "[experiment]\nprofile = " ADAPTRR_PROFILES
                                   "/steady_nominal.csv\nalgo = p_iec\nout = out\n");
  EXPECT_EQ(run_cli("run --config " + cfg + " -q"), 0);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "table.csv"));
  EXPECT_EQ(run_cli("validate --profile " ADAPTRR_PROFILES "/turkey_like.csv"), 0);
  EXPECT_EQ(run_cli("list-profiles"), 0);
}

TEST_F(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run_cli(""), 2);
  EXPECT_EQ(run_cli("run"), 2);
  EXPECT_EQ(run_cli("run --config " + write("bad.ini", "[experiment]\nspeed = 1\n")), 2);
  EXPECT_EQ(run_cli("run --config " + (dir_ / "missing.ini").string()), 2);
  const auto cfg = write("rr.ini", "[experiment]\nprofile = " ADAPTRR_PROFILES
                                   "/steady_nominal.csv\nout = out\n");
  EXPECT_EQ(run_cli("run --config " + cfg + " --rr-in 30"), 2);
  EXPECT_EQ(run_cli("validate --profile " + write("p.csv", "quantity,t_s,value\nx,0,1\n")), 2);
}

TEST_F(Cli, NumericalErrors) {
  write("silent.csv",
        "quantity,t_s,value\namplitude_V,0,0\namplitude_V,1,0\n"
        "frequency_Hz,0,50\nfrequency_Hz,1,50\n");
  const auto cfg = write("silent.ini", "[experiment]\nprofile = silent.csv\nout = out\n");
  EXPECT_EQ(run_cli("run --config " + cfg), 3);
}

}  // namespace

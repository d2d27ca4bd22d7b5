#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string output;
};

CliRun run_cli(const std::string& args) {
  const fs::path log = fs::temp_directory_path() / "mdsa_cli_test.log";
  const std::string cmd = std::string(MDSA_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  std::ifstream in(log);
  std::string text(std::istreambuf_iterator<char>(in), {});
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mdsa_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string out(const std::string& sub = "") const { return (dir_ / sub).string(); }
  fs::path dir_;
};

TEST_F(Cli, RunWritesReport) {
  const CliRun r = run_cli("run --n 30 --seed 4 --out " + out());
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string csv = slurp(dir_ / "run_mdsa_n30.csv");
  EXPECT_EQ(csv.rfind("algorithm,n,buffer,policy,", 0), 0u);
  EXPECT_NE(csv.find("\nmdsa,30,3,drop,"), std::string::npos);
}

TEST_F(Cli, RunIsByteIdentical) {
  ASSERT_EQ(run_cli("run --n 25 --seed 9 --trace " + out("t1.txt") + " --out " + out("a")).code, 0);
  ASSERT_EQ(run_cli("run --n 25 --seed 9 --trace " + out("t2.txt") + " --out " + out("b")).code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "run_mdsa_n25.csv"), slurp(dir_ / "b" / "run_mdsa_n25.csv"));
  EXPECT_FALSE(slurp(dir_ / "t1.txt").empty());
  EXPECT_EQ(slurp(dir_ / "t1.txt"), slurp(dir_ / "t2.txt"));
}

TEST_F(Cli, SweepRequiresSeed) {
  const CliRun r = run_cli("sweep --n 20 --trials 2 --out " + out());
  EXPECT_EQ(r.code, 1) << r.output;
}

TEST_F(Cli, SweepIsByteIdentical) {
  ASSERT_EQ(run_cli("sweep --n 20 --trials 2 --seed 3 --out " + out("a")).code, 0);
  ASSERT_EQ(run_cli("sweep --n 20 --trials 2 --seed 3 --jobs 3 --out " + out("b")).code, 0);
  EXPECT_EQ(slurp(dir_ / "a" / "sweep_mdsa_n20.csv"), slurp(dir_ / "b" / "sweep_mdsa_n20.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "sweep_mdsa_n20.svg"), slurp(dir_ / "b" / "sweep_mdsa_n20.svg"));
}

TEST_F(Cli, Table1AndCompare) {
  ASSERT_EQ(run_cli("table1 --trials 2 --seed 1 --out " + out()).code, 0);
  const std::string table = slurp(dir_ / "table1.csv");
  EXPECT_EQ(table.rfind("algorithm,n,M,data_messages,percent_unused\n", 0), 0u);
  EXPECT_NE(table.find("\nmdsa,15,8,"), std::string::npos);
  ASSERT_EQ(run_cli("compare --n 20 --trials 2 --seed 1 --out " + out()).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "compare_n20.svg"));
}

TEST_F(Cli, ConfigFileAndOverrides) {
  std::ofstream(dir_ / "sim.cfg") << "# small network\nn = 18\nbuffer = 4\npolicy = forward\n";
  ASSERT_EQ(run_cli("run --config " + out("sim.cfg") + " --seed 2 --out " + out()).code, 0);
  EXPECT_NE(slurp(dir_ / "run_mdsa_n18.csv").find("\nmdsa,18,4,forward,"), std::string::npos);
  ASSERT_EQ(run_cli("run --config " + out("sim.cfg") + " --n 22 --seed 2 --out " + out()).code, 0);
  EXPECT_TRUE(fs::exists(dir_ / "run_mdsa_n22.csv"));
}

TEST_F(Cli, DumpTopology) {
  ASSERT_EQ(run_cli("dump-topology --n 12 --seed 5 --file " + out("topo.txt")).code, 0);
  const std::string text = slurp(dir_ / "topo.txt");
  EXPECT_EQ(text.rfind("12 ", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 13);
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("run --n 0 --seed 1 --out " + out()).code, 1);
  EXPECT_EQ(run_cli("run --policy sideways --seed 1 --out " + out()).code, 1);
  EXPECT_EQ(run_cli("run --failures 1.5 --seed 1 --out " + out()).code, 1);
  EXPECT_EQ(run_cli("frobnicate").code, 1);
  EXPECT_EQ(run_cli("run --config /nonexistent.cfg").code, 1);
  EXPECT_EQ(run_cli("run --n 10 --seed 1 --out /proc/mdsa-no-such-dir").code, 2);
  EXPECT_EQ(run_cli("--help").code, 0);
}

}  // namespace

// Drives the rocover binary through the shell.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result Cli(const std::string& args) {
  const std::string cmd = std::string(ROCOVER_CLI_PATH) + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Fixture(const std::string& name) {
  return std::string(ROCOVER_FIXTURE_DIR) + "/" + name;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rocover_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, GenPrintsPathAndMeta) {
  const Result r = Cli("gen --problem cip --n 6 --m 4 --seed 2 --out " + Path("c.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find(Path("c.json")), std::string::npos);
  EXPECT_NE(r.out.find("problem=cip"), std::string::npos);
  EXPECT_TRUE(fs::exists(Path("c.json")));
  const Result again = Cli("gen --problem cip --n 6 --m 4 --seed 2 --out " + Path("d.json"));
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(Slurp(Path("c.json")), Slurp(Path("d.json")));
}

TEST_F(CliTest, RunTriangle) {
  const Result r = Cli("run " + Fixture("triangle.json") + " --seed 3 --out " +
                       Path("trace.csv") + " --record-phi");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("baseline=integral opt_value=2 "), std::string::npos) << r.out;
  const std::string csv = Slurp(Path("trace.csv"));
  EXPECT_EQ(csv.rfind("t,element_id,kappa,backup_cost,n_sampled,sampling_cost,est,phase,phi\n", 0), 0u);
}

TEST_F(CliTest, RunWarmStartPrecovered) {
  const Result r = Cli("run " + Fixture("precovered.json") +
                       " --warm-start 0 --est-mode fixed:1");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("total_cost=0 ", 0), 0u) << r.out;
}

TEST_F(CliTest, BaselineValues) {
  Result r = Cli("baseline " + Fixture("triangle.json") + " --which integral --out " +
                 Path("w.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("value=2 exact=1", 0), 0u) << r.out;
  EXPECT_NE(Slurp(Path("w.json")).find("\"witness\""), std::string::npos);
  r = Cli("baseline " + Fixture("triangle.json") + " --which lp");
  ASSERT_EQ(r.code, 0) << r.out;
  const double v = std::stod(r.out.substr(6));
  EXPECT_NEAR(v, 1.5, 0.015);
  r = Cli("baseline " + Fixture("triangle.json") + " --which greedy");
  EXPECT_EQ(r.out.rfind("value=2 ", 0), 0u) << r.out;
  r = Cli("baseline " + Fixture("triangle.json") + " --subset ''");
  EXPECT_EQ(r.out.rfind("value=0 ", 0), 0u) << r.out;
}

TEST_F(CliTest, SweepRowsAndDeterminism) {
  const std::string args = "sweep --problem setcover --grid 6x6,8x8 --trials 3 --seed 4 --out ";
  ASSERT_EQ(Cli(args + Path("a.csv")).code, 0);
  ASSERT_EQ(Cli(args + Path("b.csv") + " --jobs 2").code, 0);
  const std::string a = Slurp(Path("a.csv"));
  EXPECT_EQ(a, Slurp(Path("b.csv")));
  std::istringstream in(a);
  std::string line;
  int data = 0, agg = 0;
  while (std::getline(in, line)) {
    data += line.rfind("data,", 0) == 0;
    agg += line.rfind("aggregate,", 0) == 0;
  }
  EXPECT_EQ(data, 6);
  EXPECT_EQ(agg, 2);
}

TEST_F(CliTest, VerifySuite) {
  const Result r = Cli("verify --suite appendix-b --budget 0.01");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("PASS appendix-b", 0), 0u) << r.out;
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  const std::string cmd = "ROCOVER_OUT_DIR=" + dir_.string() + " " +
                          ROCOVER_CLI_PATH + " gen --n 3 --m 3 --out e.json > /dev/null";
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  EXPECT_TRUE(fs::exists(dir_ / "e.json"));
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Cli("").code, 2);
  EXPECT_EQ(Cli("run").code, 2);
  EXPECT_EQ(Cli("run " + Fixture("triangle.json") + " --est-mode bogus").code, 2);
  EXPECT_EQ(Cli("run /nonexistent.json").code, 2);
  EXPECT_EQ(Cli("run " + Fixture("uncoverable.json")).code, 3);
  ASSERT_EQ(Cli("gen --n 40 --m 40 --density 0.3 --seed 1 --out " + Path("big.json")).code, 0);
  EXPECT_EQ(Cli("baseline " + Path("big.json") + " --which integral").code, 5);
}

}  // namespace

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args, const std::string& redirect = "> /dev/null 2>&1") {
  const std::string cmd = std::string(CVTELE_CLI_PATH) + " " + args + " " + redirect;
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cvtele_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  fs::path dir_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_F(CliTest, ListAndVersion) {
  EXPECT_EQ(run_cli("list-experiments"), 0);
  EXPECT_EQ(run_cli("--version"), 0);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run_cli(""), 1);
  EXPECT_EQ(run_cli("frobnicate"), 1);
  EXPECT_EQ(run_cli("run"), 1);
}

TEST_F(CliTest, ValidateGoodAndBad) {
  EXPECT_EQ(run_cli("validate " + write("good.yaml", "experiment: fig2\nr_grid: [0.1]\n")), 0);
  EXPECT_EQ(run_cli("validate " + write("bad.yaml", "experiment: fig2\nr_grid: [0.2, 0.1]\n")), 2);
  EXPECT_EQ(run_cli("validate " + (dir_ / "missing.yaml").string()), 2);
  EXPECT_EQ(run_cli("run " + write("bad2.yaml", "experiment: custom\n")), 2);
}

TEST_F(CliTest, RunWritesCsv) {
  const fs::path out = dir_ / "out.csv";
  const std::string cfg = write("run.yaml", "experiment: fig1\nr_grid: [0.0, 0.3]\noutput: " + out.string() + "\n");
  EXPECT_EQ(run_cli("run " + cfg), 0);
  const std::string text = slurp(out);
  EXPECT_NE(text.find("# generated:"), std::string::npos);
  EXPECT_NE(text.find("fig1,twb,coherent"), std::string::npos);
}

TEST_F(CliTest, RunToStdout) {
  const std::string cfg = write("stdout.yaml", "experiment: fig4\nr_grid: [0.0]\n");
  const fs::path captured = dir_ / "stdout.txt";
  EXPECT_EQ(run_cli("run " + cfg, "> " + captured.string() + " 2>/dev/null"), 0);
  EXPECT_NE(slurp(captured).find("fig4,cat,coherent"), std::string::npos);
}

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

namespace {

struct CliRun {
  int status;
  std::string out;
};

CliRun cli(const std::string& args) {
  const std::string cmd = std::string("\"") + TRACELAB_CLI + "\" " + args + " 2>/dev/null";
  CliRun r{-1, ""};
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

}  // namespace

TEST(Cli, ListPrintsEverySuite) {
  const CliRun r = cli("verify --list");
  EXPECT_EQ(r.status, 0);
  for (const char* name : {"jensen-eq1", "prop23-kubo-ando", "remark20-witness", "all"}) {
    EXPECT_NE(r.out.find(name), std::string::npos) << name;
  }
}

TEST(Cli, PassingSuiteExitsZeroWithJson) {
  const CliRun r = cli("verify --suite eq38-schatten --dims 2,3 --trials 5 --seed 7");
  EXPECT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["verdict"], "pass");
  EXPECT_EQ(j["config"]["dims"], nlohmann::json::array({2, 3}));
  EXPECT_EQ(j["config"]["seed"], 7);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli("verify --suite no-such-suite").status, 2);
  EXPECT_EQ(cli("verify").status, 2);
  EXPECT_EQ(cli("verify --suite jensen-eq1 --trials 0").status, 2);
  EXPECT_EQ(cli("verify --suite jensen-eq1 --arity 9").status, 2);
  EXPECT_EQ(cli("verify --suite jensen-eq1 --tensor-mode sideways").status, 2);
  EXPECT_EQ(cli("verify --suite jensen-eq1 --trials lots").status, 2);
  EXPECT_EQ(cli("verify --suite jensen-eq1 --trials 1 --report /nonexistent-dir/r.json").status, 2);
  EXPECT_EQ(cli("").status, 2);
}

TEST(Cli, ReportFileMatchesStdout) {
  const auto path = std::filesystem::temp_directory_path() / "tracelab_cli_test_report.json";
  const CliRun r = cli("verify --suite loglog-beyond-e --trials 3 --report \"" + path.string() + "\"");
  EXPECT_EQ(r.status, 0);
  std::ifstream in(path);
  const std::string file((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(file, r.out);
  std::filesystem::remove(path);
}

TEST(Cli, TensorModeOffIsEchoed) {
  const CliRun r = cli("verify --suite theorem2-convexity --trials 4 --tensor-mode off --arity 2");
  EXPECT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["config"]["tensorMode"], false);
  EXPECT_EQ(j["config"]["tupleArity"], 2);
}

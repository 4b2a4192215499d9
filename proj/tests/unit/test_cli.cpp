// Drives the built kframe executable end to end.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(KFRAME_CLI_PATH) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string scenario(const std::string& name) { return std::string(KFRAME_SCENARIO_DIR) + "/" + name; }

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(Cli, WorkedExample) {
  const CliRun r = run("paper-example --lambda 1");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["checks"][0]["result"]["B_opt"].get<double>(), 1.0 / 3, 1e-12);
  EXPECT_NEAR(j["checks"][0]["result"]["A_opt"].get<double>(), 4.0 / 3, 1e-9);
  EXPECT_EQ(j["checks"][1]["result"]["holds"], true);
}

TEST(Cli, WorkedExampleLargeLambdaBreaksTheChain) { EXPECT_EQ(run("paper-example --lambda 2").status, 1); }

TEST(Cli, CheckShippedScenarios) {
  EXPECT_EQ(run("check " + scenario("paper_example.json")).status, 0);
  const CliRun r = run("check " + scenario("example_suite.json") + " --tol-psd 1e-10");
  ASSERT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out)["tolerances"]["psd"], 1e-10);
}

TEST(Cli, CheckWritesReportFile) {
  const auto out = std::filesystem::temp_directory_path() / "kframe_cli_report.json";
  std::filesystem::remove(out);
  ASSERT_EQ(run("check " + scenario("paper_example.json") + " --timing --out " + out.string()).status, 0);
  std::ifstream in(out);
  const json j = json::parse(in);
  EXPECT_TRUE(j["checks"][0].contains("timing_ms"));
}

TEST(Cli, Bounds) {
  const CliRun r = run("bounds " + scenario("paper_example.json") + " --family Lambda --k K");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["status"], "KFrame");
  EXPECT_NEAR(j["A_opt"].get<double>(), 4.0 / 3, 1e-9);
}

TEST(Cli, Douglas) {
  const CliRun r = run("douglas " + scenario("example_suite.json") + " --k K --t I");
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["range_included"], true);
  EXPECT_NEAR(j["lambda"].get<double>(), 0.5, 1e-12);
}

TEST(Cli, BadInputExitsWithTwo) {
  EXPECT_EQ(run("check /nonexistent/file.json").status, 2);
  const auto empty = temp_file("kframe_cli_empty.json", "");
  EXPECT_EQ(run("check " + empty.string()).status, 2);
  EXPECT_EQ(run("bounds " + scenario("paper_example.json") + " --family Nope --k K").status, 2);
  EXPECT_EQ(run("fuzz --seed 1 --count 0").status, 2);
  EXPECT_EQ(run("fuzz --seed 1 --count 2 --dims 4..2").status, 2);
}

TEST(Cli, FailedAssertionExitsWithOne) {
  std::ifstream in(scenario("paper_example.json"));
  json j = json::parse(in);
  j["checks"][0]["expect"]["B_opt"] = 0.5;
  const auto path = temp_file("kframe_cli_wrong.json", j.dump());
  EXPECT_EQ(run("check " + path.string()).status, 1);
}

TEST(Cli, FuzzIsByteIdentical) {
  const CliRun a = run("fuzz --seed 42 --count 5 --theorems compose_right,douglas --dims 2..4 --nodes 1..5");
  const CliRun b = run("fuzz --seed 42 --count 5 --theorems compose_right,douglas --dims 2..4 --nodes 1..5");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  const json j = json::parse(a.out);
  EXPECT_EQ(j["config"]["theorems"].size(), 2u);
  EXPECT_EQ(j["theorems"]["compose_right"]["certified"], 5);
}

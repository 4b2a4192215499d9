#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kframe/checks.hpp"

using namespace kframe;
using nlohmann::json;

namespace {

Scenario with_check(Scenario s, const std::string& type, json params, json expect = json::object()) {
  s.checks = {CheckSpec{"c", type, std::move(params), std::move(expect)}};
  return s;
}

}  // namespace

TEST(RunChecks, WorkedExampleReport) {
  const RunResult run = run_checks(worked_example_scenario(1.0));
  EXPECT_TRUE(run.ok);
  ASSERT_EQ(run.outcomes.size(), 2u);
  const json& r = run.report;
  EXPECT_EQ(r["tool"], "kframe");
  EXPECT_EQ(r["summary"]["ok"], true);
  EXPECT_EQ(r["summary"]["errors"], 0);
  const json& bounds = r["checks"][0]["result"];
  EXPECT_EQ(bounds["status"], "KFrame");
  EXPECT_NEAR(bounds["B_opt"].get<double>(), 1.0 / 3, 1e-12);
  EXPECT_NEAR(bounds["A_opt"].get<double>(), 4.0 / 3, 1e-9);
  EXPECT_EQ(r["checks"][1]["result"]["holds"], true);
  EXPECT_FALSE(r["checks"][0].contains("timing_ms"));
}

TEST(RunChecks, TimingIsOptIn) {
  ReportOptions opts;
  opts.timing = true;
  const RunResult run = run_checks(worked_example_scenario(1.0), opts);
  EXPECT_TRUE(run.report["checks"][0].contains("timing_ms"));
}

TEST(RunChecks, ChainFailsOnceTheLowerConstantIsTooLarge) {
  // The chain with lower constant 1 needs 4/(3 lambda^2) >= 1.
  EXPECT_TRUE(run_checks(worked_example_scenario(1.15)).ok);
  const RunResult run = run_checks(worked_example_scenario(2.0));
  EXPECT_FALSE(run.ok);
  EXPECT_TRUE(run.outcomes[0].ok());
  EXPECT_FALSE(run.outcomes[1].ok());
}

TEST(RunChecks, ZeroTargetOnlyAsksForStatus) {
  Scenario s = worked_example_scenario(0.0);
  const RunResult run = run_checks(s);
  EXPECT_TRUE(run.ok);
  EXPECT_EQ(run.report["checks"][0]["result"]["status"], "Degenerate");
  EXPECT_EQ(run.report["checks"][0]["result"]["A_opt"], "inf");
}

TEST(RunChecks, ErrorsAreReportedPerCheck) {
  Scenario s = worked_example_scenario(1.0);
  s.operators["Z"] = LinOp::Zero(2, 2);
  s.checks.push_back(CheckSpec{"bad_product", "product", {{"family", "Lambda"}, {"k", "K"}, {"l", "Z"}}, {}});
  s.checks.push_back(CheckSpec{"expected_error", "product", {{"family", "Lambda"}, {"k", "K"}, {"l", "Z"}},
                               {{"error", "ZeroOperator"}}});
  const RunResult run = run_checks(s);
  EXPECT_FALSE(run.ok);
  ASSERT_EQ(run.outcomes.size(), 4u);
  EXPECT_TRUE(run.outcomes[0].ok());
  EXPECT_EQ(run.outcomes[2].error, ErrorCode::ZeroOperator);
  EXPECT_FALSE(run.outcomes[2].ok());
  EXPECT_TRUE(run.outcomes[3].ok());
  EXPECT_EQ(run.report["summary"]["errors"], 1);
}

TEST(RunChecks, FailedExpectationsAreListed) {
  const Scenario s = with_check(worked_example_scenario(1.0), "certify", {{"family", "Lambda"}, {"k", "K"}},
                                {{"B_opt", 0.5}, {"/status", "KFrame"}});
  const CheckOutcome o = run_check(s, s.checks[0], s.config());
  EXPECT_FALSE(o.ok());
  ASSERT_EQ(o.assertions.size(), 2u);
  int failed = 0;
  for (const auto& a : o.assertions) failed += a["pass"].get<bool>() ? 0 : 1;
  EXPECT_EQ(failed, 1);
}

TEST(RunChecks, ShippedSuiteHasNoFailures) {
  const RunResult run = run_checks(load_scenario(std::string(KFRAME_SCENARIO_DIR) + "/example_suite.json"));
  for (const auto& o : run.outcomes) EXPECT_TRUE(o.ok()) << o.name << " " << o.error_message;
  EXPECT_TRUE(run.ok);
}

TEST(RunChecks, FitSentinelUsesSharpestParameter) {
  Scenario s = worked_example_scenario(1.0);
  s.families["Scaled"] = FamilySpec{{}, {LinOp::Zero(2, 2), fixture::diag({1.1, 0.55})}, true};
  s.checks = {CheckSpec{"m", "stability_min", {{"family", "Lambda"}, {"perturbed", "Scaled"}, {"k", "K"}, {"M", "fit"}}, {}}};
  const RunResult run = run_checks(s);
  ASSERT_TRUE(run.ok);
  EXPECT_NEAR(run.report["checks"][0]["result"]["fit"].get<double>(), 0.01, 1e-12);
  EXPECT_TRUE(run.outcomes[0].certified);
}

TEST(RunChecks, ToleranceOverride) {
  ReportOptions opts;
  ToleranceConfig cfg;
  cfg.psd_tol = 1e-6;
  opts.tolerances = cfg;
  const RunResult run = run_checks(worked_example_scenario(1.0), opts);
  EXPECT_EQ(run.report["tolerances"]["psd"], 1e-6);
  cfg.psd_tol = -1.0;
  opts.tolerances = cfg;
  EXPECT_KFRAME_ERROR(run_checks(worked_example_scenario(1.0), opts), BadConfig);
}

TEST(BoundsReport, NamesFamilyAndTarget) {
  const json r = bounds_report(worked_example_scenario(1.0), "Lambda", "K", {});
  EXPECT_EQ(r["family"], "Lambda");
  EXPECT_EQ(r["status"], "KFrame");
  EXPECT_TRUE(r["tight"].get<bool>());
}
